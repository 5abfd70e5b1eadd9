use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("{name} = {value} is out of domain: expected {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// The configuration lies inside the guard band around the back-reaction
    /// time `t = 2d/c` where the force diverges.
    #[error(
        "a = ct/2d = {a} is within the guard band {guard} of the back-reaction time t = 2d/c \
         (|a - 1| = {distance})"
    )]
    Singular { a: f64, distance: f64, guard: f64 },

    /// The regularised quadrature could not certify its result.
    #[error("quadrature did not converge: {what} = {value:e} exceeds {limit:e}")]
    Convergence {
        what: &'static str,
        value: f64,
        limit: f64,
    },

    /// A finite-difference stencil could not be evaluated.
    #[error("finite-difference evaluation failed: {0}")]
    Evaluation(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}
