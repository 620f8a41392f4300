//! Polynomial forms on simplices, Whitney forms with the Dupont projection, and
//! the strictly graded-commutative Thom–Whitney product.

mod forms;
mod product;
mod whitney;

pub use forms::{monomial_integral, PolyForm};
pub use product::{compare_products, require_char_zero, tw_multi, tw_product, tw_product_map, ProductComparison};
pub use whitney::{dupont_project, product_coefficients, whitney_form, CoefficientCache, WhitneyBasis, WhitneyCoords};
