//! Exact integer and mod-2 linear algebra.

mod f2;
mod lattice;
mod matrix;
mod smith;

pub use f2::{rank_f2, solve_f2, F2Matrix, F2Solution};
pub use lattice::{
    congruent_mod_lattice, in_row_lattice, integer_kernel, inverse_mod_lattice, kernel_mod_lattice,
    kernel_mod_lattice_structured, presentation_invariants, preserves_lattice, quotient_structure, solve_int,
    subquotient, CanonicalForm, Subquotient,
};
pub use matrix::{big_vec, IntMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("relation lattice is not contained in the generated subgroup")]
    LatticeNotContained,
}
