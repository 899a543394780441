//! Classification of complex vector bundles of rank 3 and 4 over closed,
//! simply connected spin^c manifolds of dimension 8.
//!
//! The crate works directly with cohomological data supplied as a
//! [`ManifoldData`]: integral cohomology groups, cup-product tables, the
//! maps `rho2`, `beta`, `Sq^2`, the first Pontryagin class and a spin^c
//! class. From this it decides which Chern tuples are realized by bundles
//! and computes the groups that count the isomorphism classes realizing them.

pub mod abelian;
pub mod builtins;
pub mod census;
pub mod charclass;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod format;

pub use abelian::{FGAbelianGroup, GroupElement, IntMatrix, SmithDecomposition};
pub use charclass::{
    chern_inverse, chern_product, rr_value, rr_value_series, ClassPolynomial, Symbol,
};
pub use classify::{
    check_rank3, check_rank4, compute_b, compute_t, count_classes, BundleRank, Census, ChernInput,
    Verdict,
};
pub use cohomology::{
    ChernTuple, Coefficients, CohomologyClass, Law, ManifoldData, OddGenerator, Operation, Outcome,
    ValidationReport,
};
pub use error::{Error, Result};
