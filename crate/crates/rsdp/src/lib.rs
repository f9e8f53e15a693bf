//! Restricted syndrome decoding over prime fields.
//!
//! This crate implements the restricted syndrome decoding problem (R-SDP):
//! decoding a random linear code over `F_p` when the error vector is
//! constrained to the alphabet `{0, ±1}` (more generally `{0, ±1, …, ±a}`),
//! together with everything built on top of it:
//!
//! * [`field`] — prime-field linear algebra in symmetric representation,
//!   permutations and monomial transformations, seeded sampling, and the
//!   bit-exact vector encodings used on the wire.
//! * [`rsdp`] — restricted weights and ball volumes, restricted
//!   Gilbert–Varshamov theory, planted instances, and the SDP → R-SDP
//!   reduction as executable maps.
//! * [`solver`] — brute-force and PGE+SS/Wagner solvers for full-weight
//!   instances, with closed-form cost estimators and an attack optimizer.
//! * [`protocol`] — the 5-pass zero-knowledge identification scheme on
//!   restricted errors, with commitment compression, a classical mode for
//!   comparison, and cheating-strategy simulators.
//! * [`signature`] — the Fiat–Shamir transform of the identification scheme.
//! * [`params`] — communication-cost calculators and a parameter designer.

pub mod field;
pub mod params;
pub mod protocol;
pub mod rsdp;
pub mod signature;
pub mod solver;

pub use field::{
    FieldElement, FieldMatrix, FieldVector, GeneralMonomial, Permutation, PrimeField,
    RestrictedMonomial, Seed,
};
