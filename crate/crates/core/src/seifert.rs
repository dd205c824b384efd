//! Seifert matrices of positive braid closures and Tristram-Levine signatures
//! computed from them directly, with no reference to the `Sigma_{p,q}` count.
//! Used as ground truth for [`crate::signature`].
//!
//! Seifert's algorithm on a positive braid diagram gives one disk per strand
//! and one half-twisted band per crossing. Each pair of consecutive crossings
//! in the same column bounds a face, and the loops around these faces form a
//! basis of the surface's first homology.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    /// Generator indices, `i` for `sigma_i` and `-i` for its inverse.
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::invalid("a braid needs at least 2 strands"));
        }
        if let Some(bad) = letters.iter().find(|l| **l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::invalid(format!("generator {bad} out of range for {strands} strands")));
        }
        Ok(Self { strands, letters })
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        count
    }
}

/// `(sigma_1 sigma_2 ... sigma_{p-1})^q`, whose closure is `T(p,q)`.
pub fn torus_braid(p: u64, q: u64) -> Result<BraidWord> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::invalid(format!("(p,q) = ({p},{q}) must be coprime and at least 2")));
    }
    let letters = (0..q).flat_map(|_| 1..p as i32).collect();
    BraidWord::new(p as usize, letters)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    pub entries: DMatrix<i64>,
}

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    /// `S + S^T`, the classical signature form.
    pub fn symmetrised(&self) -> DMatrix<i64> {
        &self.entries + self.entries.transpose()
    }

    /// Exact integer determinant by fraction-free elimination (Bareiss).
    pub fn det_of(m: &DMatrix<i64>) -> BigInt {
        let n = m.nrows();
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| BigInt::from(m[(i, j)])).collect()).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

/// One loop of the surface basis: column `i` between the crossings at word
/// positions `start < end`.
#[derive(Debug, Clone, Copy)]
struct FaceLoop {
    column: usize,
    start: usize,
    end: usize,
}

/// Seifert matrix `V(x, y) = lk(x, y^+)` of the closure of a positive braid.
///
/// * `V(x, x) = -1`;
/// * consecutive loops in a column: `V(earlier, later) = 1`;
/// * loops in adjacent columns `i`, `i+1` whose spans interleave: `+1` from
///   the earlier loop to the later one when the earlier sits in column `i`,
///   `-1` when it sits in column `i+1`; nested or disjoint spans give 0.
pub fn seifert_matrix_from_braid(b: &BraidWord) -> Result<SeifertMatrix> {
    if !b.is_positive() {
        return Err(Error::invalid("only positive braid words are supported"));
    }
    let components = b.components();
    if components != 1 {
        return Err(Error::NotAKnot(components));
    }
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); b.strands - 1];
    for (pos, &l) in b.letters.iter().enumerate() {
        positions[l as usize - 1].push(pos);
    }
    let loops: Vec<FaceLoop> = positions
        .iter()
        .enumerate()
        .flat_map(|(column, ps)| {
            ps.windows(2).map(move |w| FaceLoop { column, start: w[0], end: w[1] })
        })
        .collect();

    let n = loops.len();
    let mut v = DMatrix::<i64>::zeros(n, n);
    for (x, lx) in loops.iter().enumerate() {
        v[(x, x)] = -1;
        for (y, ly) in loops.iter().enumerate() {
            if lx.column == ly.column && ly.start == lx.end {
                v[(x, y)] = 1;
            }
            if ly.column == lx.column + 1 {
                // lx in column i, ly in column i+1
                if lx.start < ly.start && ly.start < lx.end && lx.end < ly.end {
                    v[(x, y)] = 1;
                } else if ly.start < lx.start && lx.start < ly.end && ly.end < lx.end {
                    v[(y, x)] = -1;
                }
            }
        }
    }
    Ok(SeifertMatrix { entries: v })
}

/// Margin for certifying an eigenvalue sign, relative to the matrix norm.
pub const EIGEN_MARGIN: f64 = 1e-8;

/// Signature of `(1 - zeta) S + (1 - conj zeta) S^T` at `zeta = e^{2 pi i x}`,
/// from a Hermitian eigendecomposition. Fails as indeterminate when an
/// eigenvalue is too small to certify its sign.
pub fn tl_signature(s: &SeifertMatrix, x: &Rational) -> Result<i64> {
    if !rat::in_unit_interval(x) {
        return Err(Error::invalid("x must lie in [0, 1]"));
    }
    let theta = 2.0 * std::f64::consts::PI * rat::to_f64(x);
    let zeta = Complex64::from_polar(1.0, theta);
    let one = Complex64::new(1.0, 0.0);
    let n = s.size();
    let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
        (one - zeta) * s.entries[(i, j)] as f64 + (one - zeta.conj()) * s.entries[(j, i)] as f64
    });
    let norm = m.norm();
    let eigen = SymmetricEigen::new(m);
    let margin = EIGEN_MARGIN * norm.max(f64::MIN_POSITIVE);
    let mut signature = 0;
    for &lambda in eigen.eigenvalues.iter() {
        if lambda.abs() <= margin {
            return Err(Error::Indeterminate { x: rat::format(x), eigenvalue: lambda, margin });
        }
        signature += if lambda > 0.0 { 1 } else { -1 };
    }
    Ok(signature)
}

/// One `(p, q)` row of an oracle sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRow {
    pub p: u64,
    pub q: u64,
    pub matrix_size: usize,
    pub samples: usize,
    pub agree: usize,
    pub mismatches: Vec<(Rational, i64, i64)>,
    pub indeterminate: usize,
}

impl OracleRow {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.indeterminate == 0 && self.agree == self.samples
    }
}

/// Minimum distance of oracle sample points from the jump set of `s_{p,q}`.
pub const ORACLE_JUMP_GAP: f64 = 1e-3;

/// Compares [`tl_signature`] of the torus braid closure with
/// [`crate::signature::s_pq`] at `samples` random points per coprime pair
/// `2 <= p < q <= q_max`, `p <= p_max`, kept [`ORACLE_JUMP_GAP`] away from jumps.
pub fn oracle_check(p_max: u64, q_max: u64, samples: usize, seed: u64) -> Result<Vec<OracleRow>> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const DEN: i64 = 1 << 20;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for p in 2..=p_max {
        for q in p + 1..=q_max {
            if p.gcd(&q) != 1 {
                continue;
            }
            let matrix = seifert_matrix_from_braid(&torus_braid(p, q)?)?;
            let jumps: Vec<f64> = crate::signature::step_function_pqr(p, q, 1)?
                .breakpoints()
                .iter()
                .map(rat::to_f64)
                .collect();
            let mut row = OracleRow {
                p,
                q,
                matrix_size: matrix.size(),
                samples,
                agree: 0,
                mismatches: Vec::new(),
                indeterminate: 0,
            };
            let mut taken = 0;
            while taken < samples {
                let x = rat::rat(rng.gen_range(1..DEN), DEN);
                let xf = rat::to_f64(&x);
                if jumps.iter().any(|j| (j - xf).abs() < ORACLE_JUMP_GAP) {
                    continue;
                }
                taken += 1;
                let expected = crate::signature::s_pq(p, q, &x)?;
                match tl_signature(&matrix, &x) {
                    Ok(v) if v == expected => row.agree += 1,
                    Ok(v) => row.mismatches.push((x, v, expected)),
                    Err(Error::Indeterminate { .. }) => row.indeterminate += 1,
                    Err(e) => return Err(e),
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}
