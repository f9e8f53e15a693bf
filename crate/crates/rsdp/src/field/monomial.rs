//! Permutations and monomial transformations.
//!
//! A monomial transformation acts as
//! `τ(a) = (v_{σ(0)}·a_{σ(0)}, …, v_{σ(n-1)}·a_{σ(n-1)})`.
//! Restricted monomials limit the scaling factors to ±1, which keeps the
//! alphabet `{0, ±1}` closed under the action.

use serde::{Deserialize, Serialize};

use super::element::{FieldElement, PrimeField};
use super::linalg::FieldVector;

/// A bijection of `[0, n-1]`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation after checking bijectivity.
    pub fn new(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(i)`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// The inverse bijection.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `σ(a) = (a_{σ(0)}, …, a_{σ(n-1)})`.
    pub fn apply(&self, a: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), a.len(), "permutation length mismatch");
        let field = a.field();
        let mut out = FieldVector::zeros(field, a.len());
        for i in 0..a.len() {
            out.set(i, a.get(self.image(i)));
        }
        out
    }

    /// Applies the inverse bijection to a vector.
    pub fn apply_inverse(&self, a: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), a.len(), "permutation length mismatch");
        let field = a.field();
        let mut out = FieldVector::zeros(field, a.len());
        for i in 0..a.len() {
            out.set(self.image(i), a.get(i));
        }
        out
    }

    /// Applies σ to a slice of sign entries (±1 or general small values).
    pub fn apply_signs(&self, a: &[i8]) -> Vec<i8> {
        assert_eq!(self.len(), a.len());
        (0..a.len()).map(|i| a[self.image(i)]).collect()
    }
}

/// A monomial transformation with scaling factors in {+1, -1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedMonomial {
    perm: Permutation,
    signs: Vec<i8>,
}

impl RestrictedMonomial {
    /// Builds from a permutation and ±1 signs of matching length.
    pub fn new(perm: Permutation, signs: Vec<i8>) -> Option<Self> {
        if perm.len() != signs.len() || signs.iter().any(|&s| s != 1 && s != -1) {
            return None;
        }
        Some(RestrictedMonomial { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        RestrictedMonomial {
            perm: Permutation::identity(n),
            signs: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `τ(a)[i] = v_{σ(i)} · a_{σ(i)}`.
    pub fn apply(&self, a: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), a.len(), "monomial length mismatch");
        let field = a.field();
        let mut out = FieldVector::zeros(field, a.len());
        for i in 0..a.len() {
            let j = self.perm.image(i);
            let e = a.get(j);
            out.set(i, if self.signs[j] == 1 { e } else { -e });
        }
        out
    }

    /// Inverse action: `apply_inverse(τ, apply(τ, a)) = a`.
    pub fn apply_inverse(&self, y: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), y.len(), "monomial length mismatch");
        let field = y.field();
        let mut out = FieldVector::zeros(field, y.len());
        for i in 0..y.len() {
            let j = self.perm.image(i);
            let e = y.get(i);
            out.set(j, if self.signs[j] == 1 { e } else { -e });
        }
        out
    }

    /// Action on a ±1/0 sign vector; the alphabet is preserved.
    pub fn apply_signs(&self, a: &[i8]) -> Vec<i8> {
        assert_eq!(self.len(), a.len());
        (0..a.len())
            .map(|i| {
                let j = self.perm.image(i);
                self.signs[j] * a[j]
            })
            .collect()
    }
}

/// A monomial transformation with arbitrary nonzero scaling factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralMonomial {
    field: PrimeField,
    perm: Permutation,
    scalars: Vec<i16>,
}

impl GeneralMonomial {
    /// Builds from a permutation and nonzero scalars of matching length.
    pub fn new(field: PrimeField, perm: Permutation, scalars: Vec<FieldElement>) -> Option<Self> {
        if perm.len() != scalars.len() || scalars.iter().any(|s| s.is_zero()) {
            return None;
        }
        Some(GeneralMonomial {
            field,
            perm,
            scalars: scalars.iter().map(|s| s.value() as i16).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn scalars(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.scalars
            .iter()
            .map(move |&v| self.field.symmetric_of(v as i64))
    }

    pub fn apply(&self, a: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), a.len(), "monomial length mismatch");
        let mut out = FieldVector::zeros(self.field, a.len());
        for i in 0..a.len() {
            let j = self.perm.image(i);
            let scalar = self.field.symmetric_of(self.scalars[j] as i64);
            out.set(i, scalar * a.get(j));
        }
        out
    }

    pub fn apply_inverse(&self, y: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), y.len(), "monomial length mismatch");
        let mut out = FieldVector::zeros(self.field, y.len());
        for i in 0..y.len() {
            let j = self.perm.image(i);
            let inv = self
                .field
                .symmetric_of(self.scalars[j] as i64)
                .inverse()
                .expect("scalars are nonzero");
            out.set(j, inv * y.get(i));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sample::{
        sample_field_vector, sample_general_monomial, sample_restricted_monomial, Seed,
    };

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_none());
        assert!(Permutation::new(vec![0, 3]).is_none());
        assert!(Permutation::new(vec![2, 0, 1]).is_some());
    }

    #[test]
    fn identity_monomial_is_identity() {
        let f = PrimeField::new(29).unwrap();
        let a = FieldVector::from_raw(f, &[3, -5, 0, 14, -1]);
        let tau = RestrictedMonomial::identity(5);
        assert_eq!(tau.apply(&a), a);
    }

    #[test]
    fn restricted_monomial_preserves_alphabet() {
        let seed = Seed::from_u64(3);
        let tau = sample_restricted_monomial(&seed, b"tau", 16);
        let signs: Vec<i8> = (0..16).map(|i| [0i8, 1, -1][i % 3]).collect();
        let out = tau.apply_signs(&signs);
        assert!(out.iter().all(|&v| v == 0 || v == 1 || v == -1));
        // Hamming weight is preserved.
        assert_eq!(
            signs.iter().filter(|&&v| v != 0).count(),
            out.iter().filter(|&&v| v != 0).count()
        );
    }

    #[test]
    fn monomial_roundtrip_many() {
        let f = PrimeField::new(31).unwrap();
        for trial in 0..1000u64 {
            let seed = Seed::from_u64(trial);
            let a = sample_field_vector(&seed, b"vec", f, 24);
            let tau = sample_restricted_monomial(&seed, b"tau", 24);
            assert_eq!(tau.apply_inverse(&tau.apply(&a)), a);
            let gen = sample_general_monomial(&seed, b"gen", f, 24);
            assert_eq!(gen.apply_inverse(&gen.apply(&a)), a);
        }
    }

    #[test]
    fn permutation_inverse_composes_to_identity() {
        let seed = Seed::from_u64(9);
        let f = PrimeField::new(11).unwrap();
        let tau = sample_restricted_monomial(&seed, b"tau", 12);
        let sigma = tau.permutation();
        let a = sample_field_vector(&seed, b"a", f, 12);
        assert_eq!(sigma.inverse().apply(&sigma.apply(&a)), a);
        assert_eq!(sigma.apply_inverse(&sigma.apply(&a)), a);
    }

    #[test]
    fn general_monomial_rejects_zero_scalar() {
        let f = PrimeField::new(7).unwrap();
        let perm = Permutation::identity(2);
        let scalars = vec![f.one(), f.zero()];
        assert!(GeneralMonomial::new(f, perm, scalars).is_none());
    }
}
