//! Exact scalar arithmetic and Z-graded linear algebra.

pub mod graded;
pub mod matrix;
pub mod scalar;
pub mod span;

pub use graded::{
    kernel_and_image, quotient, solve_affine, subspace_combine, AffineSolution, CombineOp, GradedMap,
    GradedSpace, GradedSubspace, Quotient,
};
pub use matrix::{Matrix, Vector};
pub use scalar::{FieldKind, FieldSpec, Scalar};
pub use span::Span;
