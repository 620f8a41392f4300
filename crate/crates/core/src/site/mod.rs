//! Finite poset sites and sheaves of cochain complexes on them.
//!
//! Opens are up-sets; the minimal open of `x` is `U_x = {y : y ≥ x}`, so stalks
//! are evaluations and restriction runs upward along `x ≤ y`.

mod oracle;
mod poset;
mod sheaf;

pub use oracle::{order_complex_oracle, OrderComplexRing};
pub use poset::{MonotoneMap, Open, PosetSite};
pub use sheaf::{direct_image_comparison, sections_comparison, sheafify, Presheaf, Sections, Sheaf, SheafMap};
