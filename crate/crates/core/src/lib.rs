//! Exact computations with the integral Burau representation, odd symplectic
//! groups, destabilisation complexes and type C representation theory.

pub mod burau;
pub mod complexes;
pub mod homology;
pub mod lattice;
pub mod orbits;
pub mod weights;

pub use lattice::{
    braiding, classify_element, distinguished_vector, form_pairing, is_partial_basis,
    monoidal_sum, phi, smith_normal_form, BraidingConvention, Classification, FormedModule,
    GroupElement, IntMatrix, IntVector, LatticeError, Level, SmithDecomposition,
};
