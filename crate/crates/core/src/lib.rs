//! Exact windowed computation of centroids, super-biderivations and
//! commutative post-Lie products on Z-graded Lie superalgebras.

pub mod algebra;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod index;
pub mod linalg;
pub mod render;
pub mod scalar;
pub mod verifier;

pub use algebra::{AlgebraSpec, Element, FamilyInfo, GenId, Lattice, ModuleSpec, Window};
pub use catalog::{get_algebra, get_module, CatalogKey};
pub use error::{AlgebraError, CatalogError, EngineError, LinalgError, ParseError};
pub use index::{HalfInt, Parity};
pub use linalg::{SolutionSpace, SparseMatrix};
pub use scalar::Scalar;
