//! Exact computation of Tristram-Levine signature functions of iterated torus
//! knots, their integrals (the abelian rho invariant), their normalised Fourier
//! transforms, and the plane-curve-singularity invariants compared against them.
//!
//! All signature functions are handled as exact step functions on `[0, 1]` with
//! rational breakpoints; `x` stands for the point `e^{2 pi i x}` of the unit
//! circle. Floating point is confined to [`fourier`] and [`seifert`].

pub mod algebraic;
pub mod error;
pub mod fourier;
pub mod knot;
pub mod rat;
pub mod rho;
pub mod seifert;
pub mod signature;
pub mod step;

pub use error::{Error, Result};
pub use knot::{CablePair, CableTriple, DerivedCableNumbers, IteratedTorusKnot, NewtonPairSequence};
pub use rat::Rational;
pub use step::StepFunction;
