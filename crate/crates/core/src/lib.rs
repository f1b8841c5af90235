//! Exact construction and verification of multivariate orthogonal polynomials:
//! Jacobi on the simplex, Hahn on the discrete simplex, multiple Laguerre and
//! multiple Meixner systems, and truncated stick-breaking (GEM) limits.

pub mod distributions;
pub mod error;
pub mod exact;
pub mod hahn;
pub mod index;
pub mod jacobi;
pub mod laguerre;
pub mod meixner;
pub mod oracle;
pub mod poly;
pub mod special;

pub use error::{Error, Result};
pub use exact::Exact;
pub use index::MultiIndex;
pub use poly::{ArithOp, Basis, Poly};
