//! Prime-field arithmetic in symmetric representation.
//!
//! Field elements of `F_p` (p an odd prime, p ≥ 5) are stored as the unique
//! representative in `[-(p-1)/2, (p-1)/2]`. This makes the restricted
//! alphabet `{0, ±1}` literal and keeps negation a sign flip. Conversion to
//! the usual `[0, p-1]` range happens only at serialization boundaries (see
//! [`pack`]).

mod element;
mod linalg;
mod monomial;
pub mod pack;
mod sample;

pub use element::{FieldElement, FieldError, PrimeField};
pub use linalg::{
    partial_gaussian_elimination, syndrome, systematize, FieldMatrix, FieldVector, PgeResult,
};
pub use monomial::{GeneralMonomial, Permutation, RestrictedMonomial};
pub use sample::{
    sample_field_vector, sample_general_monomial, sample_matrix, sample_permutation,
    sample_restricted_monomial, sample_sign_vector, sample_weighted_vector, Seed, XofStream,
};
