//! The abelian rho invariant: the integral of the signature function over the
//! normalised circle, computed both by exact integration and in closed form.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::knot::{newton_to_cables, IteratedTorusKnot, NewtonPairSequence};
use crate::rat::{self, Rational};
use crate::signature::{dd_link_step_function, knot_signature_function};

pub use crate::step::integrate_step;

/// An exact rho value. Non-positive for every iterated torus knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoValue(pub Rational);

/// `(p - 1/p)(q - 1/q)`.
pub fn cable_weight(p: u64, q: u64) -> Rational {
    let (p, q) = (p as i64, q as i64);
    rat::rat(p * p - 1, p) * rat::rat(q * q - 1, q)
}

/// `-(1/3) sum_k (p_k - 1/p_k)(q_k - 1/q_k)`.
pub fn rho_closed(knot: &IteratedTorusKnot) -> Rational {
    let sum = knot
        .cables()
        .iter()
        .fold(Rational::zero(), |acc, c| acc + cable_weight(c.p(), c.q()));
    -sum / rat::int(3)
}

/// Integral of [`knot_signature_function`].
pub fn rho_integral(knot: &IteratedTorusKnot) -> Rational {
    integrate_step(&knot_signature_function(knot))
}

/// `-(1/3) sum_k (a_k p_k - a_k/p_k - p_k/a_k + 1/(p_k a_k))` with the
/// derived cable numbers `a_k`.
pub fn rho_algebraic(np: &NewtonPairSequence) -> Rational {
    let derived = np.derived();
    let sum = np
        .pairs()
        .iter()
        .zip(&derived.a)
        .map(|(pair, &a)| {
            let p = Rational::from_integer(pair.p().into());
            let a = Rational::from_integer(a.into());
            &a * &p - &a / &p - &p / &a + (&p * &a).recip()
        })
        .fold(Rational::zero(), |acc, t| acc + t);
    -sum / rat::int(3)
}

/// Closed form applied to the cable presentation of the singularity link.
pub fn rho_newton_closed(np: &NewtonPairSequence) -> Rational {
    rho_closed(&newton_to_cables(np).0)
}

/// `-(d-1)(d+1)/3`, the integral of `s_d`.
pub fn rho_dd_link(d: u64) -> Result<Rational> {
    if d < 2 {
        return Err(Error::invalid(format!("d = {d} must be at least 2")));
    }
    let d = d as i64;
    Ok(rat::rat(-(d - 1) * (d + 1), 3))
}

pub fn rho_dd_link_integral(d: u64) -> Result<Rational> {
    Ok(integrate_step(&dd_link_step_function(d)?))
}
