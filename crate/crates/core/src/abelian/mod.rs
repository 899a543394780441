//! Exact linear algebra over Z and Z/2: Smith normal form, invariant-factor
//! presentations of finitely generated abelian groups, and subquotients.

mod f2;
mod group;
mod matrix;
mod snf;

pub use f2::BitMatrix;
pub use group::{
    cokernel_presentation, in_subgroup, integer_kernel, solve_integer, subgroup_quotient,
    FGAbelianGroup, GroupElement,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};
