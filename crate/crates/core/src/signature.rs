//! Signature step functions of torus knots, cables and iterated torus knots.
//!
//! For coprime `p, q` let `Sigma_{p,q} = { k/p + l/q : 1 <= k < p, 1 <= l < q }`.
//! The torus knot signature at `e^{2 pi i x}` is
//! `s_{p,q}(x) = #Sigma - 2 #(Sigma in (x, x+1))` away from the jump set, and a
//! cable at depth `k` contributes `s_{p,q}(frac(r_k x))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::knot::{CableTriple, IteratedTorusKnot};
use crate::rat::{self, Rational};
use crate::step::{PointValue, StepFunction};

fn check_pq(p: u64, q: u64) -> Result<()> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::invalid(format!("(p,q) = ({p},{q}) must be coprime and at least 2")));
    }
    Ok(())
}

fn check_unit(x: &Rational) -> Result<()> {
    if !rat::in_unit_interval(x) {
        return Err(Error::invalid(format!("x = {} is outside [0, 1]", rat::format(x))));
    }
    Ok(())
}

/// `#{(k,l) : x < k/p + l/q < x + 1}`, counted per `k` in `O(min(p, q))`.
pub fn sigma_window_count(p: u64, q: u64, x: &Rational) -> Result<u64> {
    check_pq(p, q)?;
    check_unit(x)?;
    // the set is symmetric in (p, q); loop over the smaller one
    let (outer, inner) = if p <= q { (p, q) } else { (q, p) };
    let inner_r = Rational::from_integer(inner.into());
    let mut count = 0u64;
    for k in 1..outer {
        let shift = x - rat::rat(k as i64, outer as i64);
        // l/inner in (shift, shift + 1)
        let lo = &shift * &inner_r;
        let hi = (&shift + Rational::one()) * &inner_r;
        let l_min: BigInt = lo.floor().to_integer() + 1;
        let l_min = l_min.max(BigInt::one());
        let l_max: BigInt = hi.ceil().to_integer() - 1;
        let l_max = l_max.min(BigInt::from(inner - 1));
        if l_max >= l_min {
            count += u64::try_from(l_max - l_min + 1).expect("count fits");
        }
    }
    Ok(count)
}

/// Signature of `T(p,q)` at `e^{2 pi i x}`, valid off the jump set.
pub fn s_pq(p: u64, q: u64, x: &Rational) -> Result<i64> {
    let count = sigma_window_count(p, q, x)? as i64;
    Ok(((p - 1) * (q - 1)) as i64 - 2 * count)
}

/// `s_{p,q}(frac(r x))`.
pub fn s_pqr(p: u64, q: u64, r: u64, x: &Rational) -> Result<i64> {
    if r < 1 {
        return Err(Error::invalid("r must be at least 1"));
    }
    check_unit(x)?;
    let y = rat::frac(&(x * Rational::from_integer(r.into())));
    s_pq(p, q, &y)
}

/// Elements of `Sigma_{p,q}` below 1, each with its sign: `+2` on `(a, 1-a)`
/// for `a < 1/2`, `-2` on `(1-a, a)` for `a > 1/2`. No element equals 1/2.
fn sigma_below_one(p: u64, q: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for k in 1..p {
        for l in 1..q {
            let num = (k * q + l * p) as i64;
            let den = (p * q) as i64;
            if num < den {
                out.push(rat::rat(num, den));
            }
        }
    }
    out
}

/// The exact step function of `s_{p,q;r}` assembled from indicator functions
/// of the intervals `((a+k)/r, (1-a+k)/r)`.
pub fn step_function_pqr(p: u64, q: u64, r: u64) -> Result<StepFunction> {
    check_pq(p, q)?;
    if r < 1 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let half = rat::rat(1, 2);
    let one = Rational::one();
    let r_rat = Rational::from_integer(r.into());
    let mut intervals = Vec::new();
    for a in sigma_below_one(p, q) {
        let (lo, hi, w) = if a < half { (a.clone(), &one - &a, 2) } else { (&one - &a, a.clone(), -2) };
        for k in 0..r {
            let k = Rational::from_integer(k.into());
            intervals.push(((&lo + &k) / &r_rat, (&hi + &k) / &r_rat, w));
        }
    }
    Ok(StepFunction::from_intervals(0, intervals))
}

pub fn step_function_triple(t: &CableTriple) -> StepFunction {
    step_function_pqr(t.p, t.q, t.r).expect("CableTriple is validated")
}

/// Sum of the triples' step functions.
pub fn triple_sum(triples: &[CableTriple]) -> StepFunction {
    triples.iter().map(step_function_triple).sum()
}

/// The signature function of an iterated torus knot, `sum_k s_{p_k,q_k;r_k}`.
pub fn knot_signature_function(knot: &IteratedTorusKnot) -> StepFunction {
    triple_sum(&knot.triples())
}

/// Signature at `e^{2 pi i x}`; at a jump, the mean of the one-sided limits
/// with `jump` set.
pub fn signature_at(knot: &IteratedTorusKnot, x: &Rational) -> Result<PointValue> {
    check_unit(x)?;
    Ok(knot_signature_function(knot).at(x))
}

/// The function `s_d` for the `(d,d)` torus link, including the constant
/// `-(d-1)` coming from the `d-1` copies of `1` in `Sigma_d`.
pub fn dd_link_step_function(d: u64) -> Result<StepFunction> {
    if d < 2 {
        return Err(Error::invalid(format!("d = {d} must be at least 2")));
    }
    let di = d as i64;
    let intervals = (1..di).filter(|&k| 2 * k != di).map(|k| {
        // k/d occurs k-1 times in Sigma_d, paired with 2 - k/d
        let w = 2 * (k - 1);
        if 2 * k < di {
            (rat::rat(k, di), rat::rat(di - k, di), w)
        } else {
            (rat::rat(di - k, di), rat::rat(k, di), -w)
        }
    });
    Ok(StepFunction::from_intervals(-(di - 1), intervals))
}

/// Canonical interior sample points of a step function: interval midpoints.
pub fn interval_midpoints(f: &StepFunction) -> Vec<Rational> {
    let two = Rational::from_integer(2.into());
    f.intervals().map(|(a, b, _)| (a + b) / &two).collect()
}

/// True when `x` is a jump of `s_{p,q}` (an element of `Sigma` or its
/// reflection, reduced into `[0, 1)`), or 0.
pub fn is_pq_jump(p: u64, q: u64, x: &Rational) -> bool {
    if x.is_zero() || x.is_one() {
        return true;
    }
    let den = Rational::from_integer((p * q).into());
    let scaled = x * &den;
    if !scaled.is_integer() {
        return false;
    }
    sigma_below_one(p, q).iter().any(|a| a == x || (Rational::one() - a) == *x)
}
