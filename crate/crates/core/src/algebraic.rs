//! Invariants of a unibranched plane curve singularity computed from its Newton
//! pairs: the self-intersections `(K+D)^2` and `H^2` on the minimal good
//! resolution, and the gap `-3 rho - H^2` between them and the rho invariant of
//! the link.
//!
//! Everything here is exact; ceilings are taken on exact rationals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::knot::NewtonPairSequence;
use crate::rat::{self, Rational};
use crate::rho::{rho_algebraic, rho_dd_link};

fn terms(np: &NewtonPairSequence) -> Vec<(Rational, Rational)> {
    let derived = np.derived();
    np.pairs()
        .iter()
        .zip(derived.a)
        .map(|(pair, a)| (Rational::from_integer(pair.p().into()), Rational::from_integer(a.into())))
        .collect()
}

/// `a_1 p_1 - ceil(a_1/p_1) - ceil(p_1/a_1) + sum_{k>=2} (a_k p_k - ceil(a_k/p_k))`.
pub fn kd_squared(np: &NewtonPairSequence) -> BigInt {
    let mut total = BigInt::zero();
    for (k, (p, a)) in terms(np).iter().enumerate() {
        total += (a * p).to_integer() - rat::ceil_int(&(a / p));
        if k == 0 {
            total -= rat::ceil_int(&(p / a));
        }
    }
    total
}

/// `a_1 p_1 - a_1/p_1 - p_1/a_1 + sum_{k>=2} (a_k p_k - a_k/p_k)`.
pub fn h_squared(np: &NewtonPairSequence) -> Rational {
    let mut total = Rational::zero();
    for (k, (p, a)) in terms(np).iter().enumerate() {
        total += a * p - a / p;
        if k == 0 {
            total -= p / a;
        }
    }
    total
}

/// Sum of `ceil(x) - x` over the ceiling terms of [`kd_squared`].
pub fn ceiling_excess(np: &NewtonPairSequence) -> Rational {
    let mut total = Rational::zero();
    for (k, (p, a)) in terms(np).iter().enumerate() {
        let mut fracs = vec![a / p];
        if k == 0 {
            fracs.push(p / a);
        }
        for x in fracs {
            total += Rational::from_integer(rat::ceil_int(&x)) - x;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityInvariants {
    pub kd_squared: BigInt,
    pub h_squared: Rational,
    pub rho: Rational,
    /// `-3 rho - H^2`
    pub delta: Rational,
    /// `4 / (3 a_1 p_1)`
    pub sharp_bound: Rational,
}

impl SingularityInvariants {
    pub fn delta_positive(&self) -> bool {
        self.delta.is_positive()
    }

    pub fn delta_below_two_ninths(&self) -> bool {
        self.delta < rat::rat(2, 9)
    }

    pub fn delta_below_sharp_bound(&self) -> bool {
        self.delta < self.sharp_bound
    }
}

/// Assembles the invariants and checks `0 < delta < 2/9` and
/// `delta < 4/(3 a_1 p_1)`. A violation is an internal error.
pub fn bound_report(np: &NewtonPairSequence) -> Result<SingularityInvariants> {
    let rho = rho_algebraic(np);
    let h_squared = h_squared(np);
    let delta = -rat::int(3) * &rho - &h_squared;
    let first = np.pairs()[0];
    let a1p1 = first.p() * first.q();
    let report = SingularityInvariants {
        kd_squared: kd_squared(np),
        h_squared,
        rho,
        delta,
        sharp_bound: rat::rat(4, 3 * a1p1 as i64),
    };
    if !report.delta_positive() || !report.delta_below_two_ninths() {
        return Err(Error::BoundViolation(format!(
            "{np}: delta = {} is outside (0, 2/9)",
            rat::format(&report.delta)
        )));
    }
    if !report.delta_below_sharp_bound() {
        return Err(Error::BoundViolation(format!(
            "{np}: delta = {} is not below 4/(3 a_1 p_1) = {}",
            rat::format(&report.delta),
            rat::format(&report.sharp_bound)
        )));
    }
    Ok(report)
}

/// The `(d,d)` torus link, where the analogous bound fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdCounterexample {
    pub d: u64,
    pub integral: Rational,
    pub h_squared: BigInt,
    pub delta: Rational,
}

impl DdCounterexample {
    pub fn delta_in_unibranch_range(&self) -> bool {
        self.delta.is_positive() && self.delta < rat::rat(2, 9)
    }
}

pub fn dd_counterexample(d: u64) -> Result<DdCounterexample> {
    let integral = rho_dd_link(d)?;
    let h = BigInt::from(d as i64 - 2).pow(2);
    let delta = -rat::int(3) * &integral - Rational::from_integer(h.clone());
    Ok(DdCounterexample { d, integral, h_squared: h, delta })
}

/// `(K+D)^2 <= H^2`: the ceilings only ever remove more.
pub fn kd_le_h_squared(np: &NewtonPairSequence) -> bool {
    Rational::from_integer(kd_squared(np)) <= h_squared(np)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse_newton_descriptor;
    use crate::rat::{int, rat};
    use proptest::prelude::*;

    fn np(s: &str) -> NewtonPairSequence {
        parse_newton_descriptor(s).unwrap()
    }

    #[test]
    fn kd_values() {
        assert_eq!(kd_squared(&np("N:(2,3)")), BigInt::from(3));
        assert_eq!(kd_squared(&np("N:(2,3);(2,1)")), BigInt::from(22));
        assert_eq!(kd_squared(&np("N:(2,5)")), BigInt::from(6));
    }

    #[test]
    fn h_values() {
        assert_eq!(h_squared(&np("N:(2,3)")), rat(23, 6));
        assert_eq!(h_squared(&np("N:(2,3);(2,1)")), rat(70, 3));
        assert_eq!(h_squared(&np("N:(2,5)")), rat(71, 10));
    }

    #[test]
    fn bound_reports() {
        let r = bound_report(&np("N:(2,3)")).unwrap();
        assert_eq!(r.delta, rat(1, 6));
        assert_eq!(r.rho, rat(-4, 3));
        let r = bound_report(&np("N:(2,3);(2,1)")).unwrap();
        assert_eq!(r.delta, rat(2, 39));
        let r = bound_report(&np("N:(2,5)")).unwrap();
        assert_eq!(-int(3) * &r.rho, rat(36, 5));
        assert_eq!(r.delta, rat(1, 10));
    }

    #[test]
    fn dd_family() {
        let c = dd_counterexample(2).unwrap();
        assert_eq!(c.delta, int(3));
        let c = dd_counterexample(3).unwrap();
        assert_eq!(c.delta, int(7));
        assert_eq!(c.integral, rat(-8, 3));
        assert_eq!(c.h_squared, BigInt::from(1));
        assert!(!c.delta_in_unibranch_range());
        for d in 2..=50u64 {
            assert_eq!(dd_counterexample(d).unwrap().delta, int(4 * d as i64 - 5));
        }
        assert!(dd_counterexample(1).is_err());
    }

    fn arb_newton() -> impl Strategy<Value = NewtonPairSequence> {
        let first = (2u64..7, 3u64..41).prop_filter("q>p, coprime", |(p, q)| q > p && num_integer::gcd(*p, *q) == 1);
        let rest = prop::collection::vec(
            (2u64..7, 1u64..41).prop_filter("coprime", |(p, q)| num_integer::gcd(*p, *q) == 1),
            0..4,
        );
        (first, rest).prop_map(|(f, r)| {
            let mut pairs = vec![f];
            pairs.extend(r);
            NewtonPairSequence::from_pairs(&pairs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn bound_holds(np in arb_newton()) {
            let r = bound_report(&np).unwrap();
            prop_assert!(r.delta_positive() && r.delta_below_two_ninths() && r.delta_below_sharp_bound());
        }

        #[test]
        fn ceilings_only_subtract(np in arb_newton()) {
            prop_assert!(kd_le_h_squared(&np));
            let excess = ceiling_excess(&np);
            prop_assert_eq!(h_squared(&np) - Rational::from_integer(kd_squared(&np)), excess.clone());
            prop_assert!(!excess.is_negative());
            prop_assert!(excess < int(np.pairs().len() as i64 + 1));
        }
    }
}
