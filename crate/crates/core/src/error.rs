use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid parameters: {0}")]
    Invalid(String),

    #[error("beta = {beta} is too close to a singularity of the closed form (cot(t/{divisor}) with t = pi*beta/2)")]
    SingularBeta { beta: String, divisor: u64 },

    #[error("t0 = {0} is not on the candidate pole lattice")]
    NotAPole(f64),

    #[error("braid closure has {0} components, expected a knot")]
    NotAKnot(usize),

    #[error("signature is indeterminate at x = {x}: smallest eigenvalue {eigenvalue:e} is inside the margin {margin:e}")]
    Indeterminate { x: String, eigenvalue: f64, margin: f64 },

    #[error("bound violated: {0}")]
    BoundViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by bad input, false for broken internal invariants.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::BoundViolation(_))
    }
}
