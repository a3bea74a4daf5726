//! Exact finite-field computations for the map sending a tuple of square
//! matrices to the coefficients of `det(x_0 I + x_1 A_1 + ... + x_r A_r)`.

pub mod cli;
pub mod error;
pub mod fiber;
pub mod field;
pub mod grading;
pub mod matrix;
pub mod pencilmap;
pub mod poly;
pub mod qcomb;
pub mod report;
pub mod weylpair;

pub use error::{Error, Result};
pub use field::{FieldCtx, Fp};
pub use matrix::Matrix;
pub use pencilmap::{MatrixTuple, RankCertificate};
pub use poly::{Monomial, MultiPoly, PolyMatrix};
pub use qcomb::QContext;
pub use weylpair::WeylPair;
