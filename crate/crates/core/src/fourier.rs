//! Fourier transforms of signature step functions.
//!
//! For a triple `(p, q, r)` the normalised transform is
//!
//! ```text
//! n(t) = cot(t/(pqr)) cot(t/r) - cot(t/(pr)) cot(t/(qr))
//! ```
//!
//! and `integral_0^1 e^{pi i beta x} s_{p,q;r}(x) dx` equals
//! `2 e^{pi i beta/2} sin(pi beta/2) / (pi beta) * n(pi beta / 2)`.
//!
//! Every singular point of `n` lies at an integer multiple `N pi` of `pi`, so
//! poles are classified exactly by divisibility of `N`; only the cotangent
//! values themselves are floating point. Two sums of step functions agree
//! almost everywhere iff their transforms have equal values at the origin and
//! no residues left in one period.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::knot::CableTriple;
use crate::rat::{self, Rational};
use crate::rho::cable_weight;
use crate::signature::triple_sum;
use crate::step::StepFunction;

pub type Complex = Complex64;

/// Cot arguments closer than this (relative to pi) to `m pi` count as singular.
pub const SINGULAR_TOL: f64 = 1e-12;
/// `fourier_closed` rejects `beta` whose `t = pi beta / 2` is this close
/// (in units of pi) to a pole of a cot factor.
pub const BETA_EXCLUSION: f64 = 1e-6;
/// Below this `|beta|`, `fourier_numeric` returns the plain integral.
pub const BETA_ZERO: f64 = 1e-9;
/// Residues below `RESIDUE_TOL * (1 + scale)` are zero.
pub const RESIDUE_TOL: f64 = 1e-9;

/// `n(t)`, or at a pole the residue with `pole` set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformValue {
    pub value: Complex,
    pub pole: bool,
}

fn cot(z: Complex) -> Complex {
    z.cos() / z.sin()
}

/// The two cot products of `n_{p,q;r}` as `(sign, a, b)` for `cot(t/a) cot(t/b)`.
fn products(t: &CableTriple) -> [(f64, u64, u64); 2] {
    let (p, q, r) = (t.p, t.q, t.r);
    [(1.0, p * q * r, r), (-1.0, p * r, q * r)]
}

/// Taylor coefficients of the even function `cot(t/a) cot(t/b) - ab/t^2` at 0,
/// in powers `t^0, t^2, t^4`.
fn origin_series(a: f64, b: f64) -> [f64; 3] {
    [
        -(a / b + b / a) / 3.0,
        1.0 / (9.0 * a * b) - a / (45.0 * b.powi(3)) - b / (45.0 * a.powi(3)),
        -2.0 * a / (945.0 * b.powi(5)) - 2.0 * b / (945.0 * a.powi(5))
            + 1.0 / (135.0 * a * b.powi(3))
            + 1.0 / (135.0 * a.powi(3) * b),
    ]
}

/// `-(1/3)(p - 1/p)(q - 1/q)`, the value of `n` at the origin and at the
/// period translates `N pi` with `pqr | N`.
pub fn origin_value(p: u64, q: u64) -> f64 {
    rat::to_f64(&(-cable_weight(p, q) / rat::int(3)))
}

/// Splits `t = N pi + h` with `N` the nearest integer to `Re t / pi`.
fn split(t: Complex) -> (i64, Complex) {
    let n = (t.re / PI).round();
    (n as i64, t - Complex::new(n * PI, 0.0))
}

fn divides(a: u64, n: i64) -> bool {
    n.unsigned_abs().is_multiple_of(a)
}

/// Residue and constant term of `cot(t/a) cot(t/b)` at `t0 = N pi` when exactly
/// one factor is singular there; `None` if neither is. Both singular happens
/// only on the full lattice and is handled by the origin series.
fn single_pole_terms(a: u64, b: u64, n: i64) -> Option<(f64, f64)> {
    let (sa, sb) = (divides(a, n), divides(b, n));
    let (sing, reg) = match (sa, sb) {
        (true, false) => (a, b),
        (false, true) => (b, a),
        (false, false) => return None,
        (true, true) => unreachable!("both factors singular off the full lattice"),
    };
    let z = n as f64 * PI / reg as f64;
    let (s, c) = z.sin_cos();
    let residue = sing as f64 * c / s;
    let constant = -(sing as f64) / (reg as f64 * s * s);
    Some((residue, constant))
}

/// The residue of `n_{p,q;r}` at `N pi`: `a cot(N pi / b)` summed over the
/// products with exactly one singular factor `cot(t/a)`.
fn triple_residue(t: &CableTriple, n: i64) -> f64 {
    if divides(t.p * t.q * t.r, n) {
        return 0.0;
    }
    products(t)
        .iter()
        .filter_map(|&(sign, a, b)| single_pole_terms(a, b, n).map(|(res, _)| sign * res))
        .sum()
}

/// Constant term of the Laurent expansion of `n_{p,q;r}` at `N pi`.
fn finite_part(triple: &CableTriple, n: i64) -> f64 {
    if divides(triple.p * triple.q * triple.r, n) {
        return origin_value(triple.p, triple.q);
    }
    products(triple)
        .iter()
        .map(|&(sign, a, b)| match single_pole_terms(a, b, n) {
            Some((_, constant)) => sign * constant,
            None => {
                let x = n as f64 * PI;
                sign * (x / a as f64).tan().recip() * (x / b as f64).tan().recip()
            }
        })
        .sum()
}

pub fn n_pqr(p: u64, q: u64, r: u64, t: Complex) -> Result<TransformValue> {
    let triple = CableTriple::new(p, q, r)?;
    Ok(n_triple(&triple, t))
}

pub fn n_triple(triple: &CableTriple, t: Complex) -> TransformValue {
    let full = triple.p * triple.q * triple.r;
    let (n, h) = split(t);
    let rf = triple.r as f64;

    if divides(full, n) && h.norm() < 1e-2 * rf {
        // removable point: the ab/t^2 terms cancel, expand the rest
        let h2 = h * h;
        let value = products(triple)
            .iter()
            .map(|&(sign, a, b)| {
                let c = origin_series(a as f64, b as f64);
                ((h2 * c[2] + c[1]) * h2 + c[0]) * sign
            })
            .sum();
        return TransformValue { value, pole: false };
    }

    let singular = products(triple).iter().any(|&(_, a, b)| {
        (divides(a, n) && h.norm() < SINGULAR_TOL * a as f64 * PI)
            || (divides(b, n) && h.norm() < SINGULAR_TOL * b as f64 * PI)
    });
    if singular {
        let residue = triple_residue(triple, n);
        if residue.abs() > RESIDUE_TOL * (1.0 + full as f64) {
            return TransformValue { value: Complex::new(residue, 0.0), pole: true };
        }
        return TransformValue { value: Complex::new(finite_part(triple, n), 0.0), pole: false };
    }

    let value = products(triple)
        .iter()
        .map(|&(sign, a, b)| cot(t / a as f64) * cot(t / b as f64) * sign)
        .sum();
    TransformValue { value, pole: false }
}

/// `2 e^{pi i beta/2} sin(pi beta/2) / (pi beta) * n(pi beta/2)`.
pub fn fourier_closed(p: u64, q: u64, r: u64, beta: Complex) -> Result<Complex> {
    let triple = CableTriple::new(p, q, r)?;
    let t = beta * (PI / 2.0);
    for (_, a, b) in products(&triple) {
        for c in [a, b] {
            // poles of cot(t/c) at t = c m pi, m != 0
            let m = (t.re / (c as f64 * PI)).round();
            if m != 0.0 && (t - Complex::new(m * c as f64 * PI, 0.0)).norm() < BETA_EXCLUSION * PI {
                return Err(Error::SingularBeta { beta: beta.to_string(), divisor: c });
            }
        }
    }
    let half = t;
    let prefactor = if half.norm() < 1e-8 {
        // sin(z)/z -> 1
        (Complex::i() * half).exp() * (Complex::new(1.0, 0.0) - half * half / 6.0)
    } else {
        (Complex::i() * half).exp() * half.sin() / half
    };
    let n = n_triple(&triple, t);
    debug_assert!(!n.pole);
    Ok(prefactor * n.value)
}

/// `integral_0^1 e^{pi i beta x} f(x) dx`, summed interval by interval.
pub fn fourier_numeric(f: &StepFunction, beta: Complex) -> Complex {
    if beta.norm() < BETA_ZERO {
        return Complex::new(rat::to_f64(&f.integral()), 0.0);
    }
    let k = Complex::i() * beta * PI;
    f.intervals()
        .map(|(a, b, v)| {
            let ea = (k * rat::to_f64(a)).exp();
            let eb = (k * rat::to_f64(b)).exp();
            (eb - ea) * v as f64
        })
        .sum::<Complex>()
        / k
}

/// A signed multiset of triples, `sum_I s - sum_J s`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignedTriples {
    pub terms: Vec<(i64, CableTriple)>,
}

impl SignedTriples {
    pub fn difference(left: &[CableTriple], right: &[CableTriple]) -> Self {
        let terms = left
            .iter()
            .map(|t| (1, *t))
            .chain(right.iter().map(|t| (-1, *t)))
            .collect();
        Self { terms }
    }

    /// `lcm(p q r)` over all terms; `T pi` is a period of the transform.
    pub fn period_multiple(&self) -> u64 {
        self.terms.iter().fold(1u64, |acc, (_, t)| acc.lcm(&(t.p * t.q * t.r)))
    }

    /// Largest cot scale `p q r`, used to normalise residue tolerances.
    pub fn scale(&self) -> f64 {
        self.terms.iter().map(|(_, t)| (t.p * t.q * t.r) as f64).fold(0.0, f64::max)
    }

    /// Integers `N` in `(0, T)` such that `N pi` may be a pole of some cot
    /// factor of some term.
    pub fn candidate_poles(&self) -> Vec<u64> {
        let period = self.period_multiple();
        let mut divisors = BTreeSet::new();
        for (_, t) in &self.terms {
            for (_, a, b) in products(t) {
                divisors.insert(a);
                divisors.insert(b);
            }
        }
        let mut hit = vec![false; period as usize];
        for c in divisors {
            let mut n = c;
            while n < period {
                hit[n as usize] = true;
                n += c;
            }
        }
        hit.iter().enumerate().filter(|(_, &h)| h).map(|(n, _)| n as u64).collect()
    }

    fn on_lattice(&self, n: i64) -> bool {
        n != 0
            && self.terms.iter().any(|(_, t)| {
                let (p, q, r) = (t.p, t.q, t.r);
                [p * q * r, r, p * r, q * r].iter().any(|&c| divides(c, n))
            })
    }

    /// The transform difference `sum sign * n(t)`. At a lattice point the
    /// total residue decides; individual poles may cancel.
    pub fn transform(&self, t: Complex) -> TransformValue {
        let (n, h) = split(t);
        if h.norm() < SINGULAR_TOL * PI && self.on_lattice(n) {
            let res = self.residue_at_multiple(n);
            if res.abs() > RESIDUE_TOL * (1.0 + self.scale()) {
                return TransformValue { value: Complex::new(res, 0.0), pole: true };
            }
            let value = self.terms.iter().map(|(sign, tr)| *sign as f64 * finite_part(tr, n)).sum::<f64>();
            return TransformValue { value: Complex::new(value, 0.0), pole: false };
        }
        let value = self.terms.iter().map(|(sign, tr)| n_triple(tr, t).value * *sign as f64).sum();
        TransformValue { value, pole: false }
    }

    /// Residue at `N pi`, exact in the pole structure.
    pub fn residue_at_multiple(&self, n: i64) -> f64 {
        self.terms.iter().map(|(sign, t)| *sign as f64 * triple_residue(t, n)).sum()
    }

    /// Residue at a real `t0`, which must be a nonzero lattice point `N pi`.
    pub fn residue_at(&self, t0: f64) -> Result<f64> {
        let (n, h) = split(Complex::new(t0, 0.0));
        if h.norm() > 1e-9 * t0.abs().max(1.0) || !self.on_lattice(n) {
            return Err(Error::NotAPole(t0));
        }
        Ok(self.residue_at_multiple(n))
    }

    /// Numeric limit of `(t - t0) * transform(t)` from both sides at offsets
    /// `1e-4` and `1e-5`, Richardson-extrapolated. An independent check of
    /// [`SignedTriples::residue_at`]; `t0` is rounded to the nearest `N pi`.
    pub fn residue_numeric(&self, t0: f64) -> f64 {
        let n = (t0 / PI).round() as i64;
        let sym = |h: f64| {
            let up = self.direct_sum(n, h) * h;
            let down = self.direct_sum(n, -h) * (-h);
            (up + down) / 2.0
        };
        let (h1, h2) = (1e-4, 1e-5);
        let (a1, a2) = (sym(h1), sym(h2));
        // error is O(h^2)
        (a2 * h1 * h1 - a1 * h2 * h2) / (h1 * h1 - h2 * h2)
    }

    /// Plain cot-product evaluation at `N pi + h` with no pole handling.
    /// `N pi / a` is reduced mod `pi` in integers first; on a float `t` the
    /// argument error would be amplified by the cancelling double poles.
    fn direct_sum(&self, n: i64, h: f64) -> f64 {
        let cot = |a: u64| {
            let m = n.rem_euclid(a as i64) as f64;
            ((m * PI + h) / a as f64).tan().recip()
        };
        self.terms
            .iter()
            .flat_map(|(sign, tr)| products(tr).map(move |(s, a, b)| (*sign as f64 * s, a, b)))
            .map(|(s, a, b)| s * cot(a) * cot(b))
            .sum()
    }
}

/// Residue of `sum sign * n_{p,q;r}` at `t0`.
pub fn residue_at(terms: &SignedTriples, t0: f64) -> Result<f64> {
    terms.residue_at(t0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleResidue {
    /// the pole is `multiple * pi`
    pub multiple: u64,
    pub residue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualityVerdict {
    pub condition_a: bool,
    pub weight_left: Rational,
    pub weight_right: Rational,
    pub condition_b: bool,
    pub max_residue: f64,
    pub residue_tolerance: f64,
    pub period_multiple: u64,
    pub residues: Vec<PoleResidue>,
    pub pointwise_confirmed: bool,
    pub verdict: bool,
}

/// Decides whether `sum_I s` and `sum_J s` agree away from finitely many
/// points: (a) equal values at the origin, checked exactly; (b) no residue
/// in one period, checked numerically. The exact step-function comparison is
/// recorded alongside as `pointwise_confirmed`.
pub fn signatures_equal(left: &[CableTriple], right: &[CableTriple]) -> EqualityVerdict {
    let weight = |set: &[CableTriple]| {
        set.iter().fold(Rational::zero(), |acc, t| acc + cable_weight(t.p, t.q))
    };
    let weight_left = weight(left);
    let weight_right = weight(right);
    let condition_a = weight_left == weight_right;

    let diff = SignedTriples::difference(left, right);
    let residues: Vec<PoleResidue> = diff
        .candidate_poles()
        .into_iter()
        .map(|n| PoleResidue { multiple: n, residue: diff.residue_at_multiple(n as i64) })
        .collect();
    let max_residue = residues.iter().map(|r| r.residue.abs()).fold(0.0, f64::max);
    let residue_tolerance = RESIDUE_TOL * (1.0 + diff.scale());
    let condition_b = max_residue < residue_tolerance;

    let pointwise_confirmed = triple_sum(left) == triple_sum(right);
    EqualityVerdict {
        condition_a,
        weight_left,
        weight_right,
        condition_b,
        max_residue,
        residue_tolerance,
        period_multiple: diff.period_multiple(),
        residues,
        pointwise_confirmed,
        verdict: condition_a && condition_b,
    }
}
