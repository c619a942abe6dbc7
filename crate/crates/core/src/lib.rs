//! Exact computations for 3-Lie algebras: derivations, 3-pre-Lie products,
//! skew-symmetric solutions of the 3-Lie classical Yang-Baxter equation and the
//! local cocycle 3-Lie bialgebras they induce.
//!
//! All arithmetic is over arbitrary-precision rationals. Basis indices are
//! 0-based internally and rendered 1-based (`x1, x2, ...`).

pub mod algebra;
pub mod bialgebra;
pub mod catalog;
pub mod derivation;
pub mod error;
pub mod io;
pub mod linalg;
pub mod pipeline;
pub mod prelie;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use algebra::{verify_o_operator, verify_representation, AlgebraSpec, Representation};
pub use error::{Error, Result};
pub use linalg::{LinearMap, Subspace};
pub use report::{Report, Violation};
pub use scalar::{Scalar, Vector};
pub use tensor::Tensor;
