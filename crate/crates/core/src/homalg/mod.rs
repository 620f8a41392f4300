//! Exact linear algebra and bounded cochain complexes.

pub mod complex;
pub mod matrix;
pub mod product;
pub mod subspace;
pub mod vector;

pub use complex::{ChainMap, CochainComplex, Cohomology, MultiTensorLayout, TensorLayout};
pub use matrix::{Echelon, Matrix};
pub use product::{is_graded_commutative, product_table, twist, ProductTable};
pub use subspace::Subspace;
pub use vector::SparseVec;
