//! Exact enumeration and algebra for anisotropic self-avoiding polygons.

pub mod algebra;
pub mod diagnostics;
pub mod enumerator;
pub mod error;
pub mod haruspicy;
pub mod polygon;
pub mod twofourtwo;

pub use error::AlgebraError;
