//! Exact computations for quantum complete intersections: the algebra itself,
//! membership certificates, finite-dimensional modules and the tower of
//! endomorphism algebras bounding representation dimension.

pub mod algebra;
pub mod cli;
pub mod certificates;
pub mod error;
pub mod fdalgebra;
pub mod linalg;
pub mod modules;
pub mod par;
pub mod scalars;
pub mod towers;

pub use algebra::{Element, Monomial, Qci};
pub use error::{Error, Result};
pub use modules::{FdModule, ModuleHom};
pub use linalg::{Matrix, Subspace, Vector};
pub use scalars::{Field, FieldSpec, Scalar};
