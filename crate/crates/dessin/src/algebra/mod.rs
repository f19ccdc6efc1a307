//! Exact algebra kernels: arbitrary-precision rationals, polynomials,
//! resultants, factorization over the rationals, and complex root finding.

pub mod factor;
pub mod mpoly;
pub mod poly;
pub mod rat;
pub mod roots;

pub use factor::{factor_over_q, Factorization};
pub use mpoly::{resultant, MPoly};
pub use poly::UPoly;
pub use rat::Rat;
pub use roots::{complex_roots, CRat};

use thiserror::Error;

/// Errors from the exact-algebra kernels.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("cannot parse polynomial `{0}`")]
    BadPolynomial(String),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("no elimination variable: both inputs are constant in the chosen variable")]
    NoEliminationVariable,
    #[error("unsupported degree {0} (factorization is supported up to degree {1})")]
    UnsupportedDegree(usize, usize),
    #[error("input is not squarefree; take the squarefree part first")]
    NotSquarefree,
    #[error("root finding did not converge within the precision escalation cap")]
    RootsDidNotConverge,
    #[error("multivariate coefficients remained after elimination")]
    NotUnivariate,
}
