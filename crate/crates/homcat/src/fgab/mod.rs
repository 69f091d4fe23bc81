//! Finitely generated abelian groups as cokernels of integer matrices.
//!
//! Presentations follow the columns-are-relations convention: an `m × r`
//! matrix presents `Z^m / (column span)`. Elements are kept in a canonical
//! normal form (least nonnegative residues against a Hermite basis of the
//! relation lattice), so equal cosets compare equal coordinatewise.

mod group;
mod matrix;
mod morphism;

pub use group::{AbElement, FgAbGroup};
pub use matrix::{hermite_basis, hermite_reduce, smith_normal_form, IntMatrix, IntSolver, SmithDecomposition};
pub use morphism::{
    admits_surjection, cokernel, direct_sum, factor_through_epi, factor_through_mono, hom_group, image_factorization,
    iso_witness, kernel, tensor, tensor_element, tensor_map, tensor_map_between, tensor_map_right, AbMorphism,
    DirectSum, HomEvaluator,
};

pub(crate) use morphism::prime_factors;

/// Invariants from an explicit list of prime-power (or arbitrary) cyclic orders.
pub fn from_cyclic_orders(free: usize, orders: &[num_bigint::BigInt]) -> FgAbGroup {
    let n = orders.len() + free;
    FgAbGroup::from_presentation(IntMatrix::diagonal(n, orders.len(), orders))
}
