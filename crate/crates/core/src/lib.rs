//! Exact sheaf hypercohomology on finite poset sites.
//!
//! The crate builds Godement cosimplicial resolutions of sheaves of cochain
//! complexes on finite posets, collapses them with the total-complex or the
//! Thom–Whitney simple functor, and transports products and operad actions to
//! the resulting hypercohomology. Everything is computed with exact arithmetic.
//!
//! Layout:
//! - [`homalg`]: matrices, subspaces, cochain complexes and cohomology.
//! - [`cosimp`]: cosimplicial complexes, conormalization, total complexes,
//!   Alexander–Whitney and shuffle maps.
//! - [`thomwhitney`]: polynomial forms, Whitney forms, Dupont projection and the
//!   commutative product.
//! - [`filtered`]: filtered complexes, décalage and spectral sequence pages.
//! - [`site`]: finite posets, sheaves, sections, direct images and the
//!   order-complex oracle.
//! - [`godement`]: the Godement resolution, hypercohomology sheaves and the
//!   descent diagnostics.
//! - [`operads`]: dg operads, algebras and their transfer to hypercohomology.

#![no_std]

extern crate alloc;

use alloc::string::String;

pub mod combi;
pub mod cosimp;
pub mod field;
pub mod filtered;
#[cfg(feature = "gen")]
pub mod random;
pub mod godement;
pub mod homalg;
pub mod operads;
pub mod site;
pub mod thomwhitney;

pub use field::{Field, Fp, Rational};

/// Errors raised by constructors and operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {what} at degree {degree}")]
    DimensionMismatch { what: &'static str, degree: usize },
    #[error("d∘d ≠ 0 starting in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("map does not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("vector is not a cocycle in degree {degree}")]
    NotACocycle { degree: usize },
    #[error("insufficient truncation: need {needed} cosimplicial levels, have {available}")]
    InsufficientTruncation { needed: usize, available: usize },
    #[error("cosimplicial identity {identity} fails at level {level}")]
    CosimplicialIdentity { identity: String, level: usize },
    #[error("simplex levels differ: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("the cosimplicial object carries no level-wise product")]
    NoLevelwiseProduct,
    #[error("map does not preserve the filtration at level {level}, degree {degree}")]
    NotFiltrationPreserving { level: i64, degree: usize },
    #[error("subset is not up-closed: contains {inside} but not {missing}")]
    NotUpClosed { inside: String, missing: String },
    #[error("map is not monotone: {lo} ≤ {hi} but images are not ordered")]
    NotMonotone { lo: String, hi: String },
    #[error("arity cap {cap} exceeds the resource limit {limit}")]
    CapTooLarge { cap: usize, limit: usize },
    #[error("characteristic {0} is not supported here")]
    UnsupportedCharacteristic(u64),
    #[error("{0}")]
    Invalid(String),
}
