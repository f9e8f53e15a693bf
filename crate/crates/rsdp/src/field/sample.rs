//! Deterministic sampling from seeds.
//!
//! Every random object in the library is expanded from a [`Seed`] through
//! SHAKE-256 with a caller-chosen domain tag. Field elements and bounded
//! integers use rejection sampling on masked bit draws, permutations use
//! Fisher–Yates driven by the expanded stream, so all distributions are
//! exactly uniform over their target sets.

use serde::{Deserialize, Serialize};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use super::element::{ceil_log2, FieldElement, PrimeField};
use super::linalg::{FieldMatrix, FieldVector};
use super::monomial::{GeneralMonomial, Permutation, RestrictedMonomial};

/// An opaque seed of `l_seed / 8` bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    bytes: Vec<u8>,
}

impl Seed {
    /// Wraps raw bytes; lengths of 16, 20, and 32 cover the supported
    /// `l_seed` values of 128, 160, and 256 bits.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        assert!(
            !bytes.is_empty() && bytes.len() <= 64,
            "seed length out of range"
        );
        Seed {
            bytes: bytes.to_vec(),
        }
    }

    /// Expands a small integer into a 32-byte seed. Used for CLI `--seed`.
    pub fn from_u64(x: u64) -> Self {
        let mut hasher = Shake256::default();
        hasher.update(b"seed-from-u64");
        hasher.update(&x.to_le_bytes());
        let mut bytes = vec![0u8; 32];
        hasher.finalize_xof().read(&mut bytes);
        Seed { bytes }
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn bit_len(&self) -> usize {
        self.bytes.len() * 8
    }

    /// A sub-seed of `bits / 8` bytes drawn from this seed under `tag`.
    pub fn derive(&self, tag: &[u8], bits: usize) -> Seed {
        let mut stream = XofStream::new(self, tag);
        let mut bytes = vec![0u8; bits / 8];
        stream.fill(&mut bytes);
        Seed { bytes }
    }
}

/// A SHAKE-256 output stream bound to `(seed, domain tag)`.
///
/// Bits are consumed from each byte least-significant first, matching the
/// bit order of the packed wire encodings.
pub struct XofStream {
    reader: sha3::Shake256Reader,
    current: u8,
    bits_left: u32,
}

impl XofStream {
    pub fn new(seed: &Seed, tag: &[u8]) -> Self {
        Self::from_parts(&[seed.bytes(), tag])
    }

    /// Stream over the concatenation of arbitrary input parts. Each part is
    /// length-prefixed so distinct part boundaries never collide.
    pub fn from_parts(parts: &[&[u8]]) -> Self {
        let mut hasher = Shake256::default();
        for part in parts {
            hasher.update(&(part.len() as u64).to_le_bytes());
            hasher.update(part);
        }
        XofStream {
            reader: hasher.finalize_xof(),
            current: 0,
            bits_left: 0,
        }
    }

    pub fn fill(&mut self, out: &mut [u8]) {
        // Byte reads discard any partially consumed bit buffer.
        self.bits_left = 0;
        self.reader.read(out);
    }

    pub fn byte(&mut self) -> u8 {
        let mut b = [0u8; 1];
        self.fill(&mut b);
        b[0]
    }

    /// The next `count` bits (count ≤ 57), least-significant-first.
    pub fn bits(&mut self, count: u32) -> u64 {
        debug_assert!(count <= 57);
        let mut acc = 0u64;
        let mut have = 0u32;
        while have < count {
            if self.bits_left == 0 {
                let mut b = [0u8; 1];
                self.reader.read(&mut b);
                self.current = b[0];
                self.bits_left = 8;
            }
            let take = (count - have).min(self.bits_left);
            let mask = (1u16 << take) - 1;
            acc |= ((self.current as u64) & mask as u64) << have;
            self.current >>= take;
            self.bits_left -= take;
            have += take;
        }
        acc
    }

    /// A uniform integer in `[0, bound)` by rejection on masked bit draws.
    pub fn uniform(&mut self, bound: u64) -> u64 {
        assert!(bound >= 1);
        if bound == 1 {
            return 0;
        }
        let bits = ceil_log2(bound);
        loop {
            let draw = self.bits(bits);
            if draw < bound {
                return draw;
            }
        }
    }

    /// A uniform field element (including zero).
    pub fn field_element(&mut self, field: PrimeField) -> FieldElement {
        field.symmetric_of(self.uniform(field.p() as u64) as i64)
    }

    /// A uniform nonzero field element.
    pub fn nonzero_field_element(&mut self, field: PrimeField) -> FieldElement {
        field.symmetric_of(1 + self.uniform(field.p() as u64 - 1) as i64)
    }

    /// A uniform sign in {+1, -1}.
    pub fn sign(&mut self) -> i8 {
        if self.bits(1) == 0 {
            1
        } else {
            -1
        }
    }

    /// A uniform permutation of `[0, n-1]` by Fisher–Yates.
    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = self.uniform(i as u64 + 1) as usize;
            images.swap(i, j);
        }
        Permutation::new(images).expect("Fisher-Yates yields a bijection")
    }
}

/// A uniform vector over `F_p^n`.
pub fn sample_field_vector(seed: &Seed, tag: &[u8], field: PrimeField, n: usize) -> FieldVector {
    let mut stream = XofStream::new(seed, tag);
    let mut out = FieldVector::zeros(field, n);
    for i in 0..n {
        out.set(i, stream.field_element(field));
    }
    out
}

/// A uniform sign vector in `{±1}^n`.
pub fn sample_sign_vector(seed: &Seed, tag: &[u8], n: usize) -> Vec<i8> {
    let mut stream = XofStream::new(seed, tag);
    (0..n).map(|_| stream.sign()).collect()
}

/// A uniform permutation of `[0, n-1]`.
pub fn sample_permutation(seed: &Seed, tag: &[u8], n: usize) -> Permutation {
    XofStream::new(seed, tag).permutation(n)
}

/// A uniform monomial transformation with ±1 scaling factors.
pub fn sample_restricted_monomial(seed: &Seed, tag: &[u8], n: usize) -> RestrictedMonomial {
    let mut stream = XofStream::new(seed, tag);
    let perm = stream.permutation(n);
    let signs: Vec<i8> = (0..n).map(|_| stream.sign()).collect();
    RestrictedMonomial::new(perm, signs).expect("signs are ±1")
}

/// A uniform monomial transformation with nonzero scaling factors.
pub fn sample_general_monomial(
    seed: &Seed,
    tag: &[u8],
    field: PrimeField,
    n: usize,
) -> GeneralMonomial {
    let mut stream = XofStream::new(seed, tag);
    let perm = stream.permutation(n);
    let scalars: Vec<FieldElement> = (0..n).map(|_| stream.nonzero_field_element(field)).collect();
    GeneralMonomial::new(field, perm, scalars).expect("scalars are nonzero")
}

/// A uniform `rows × cols` matrix over `F_p`.
pub fn sample_matrix(
    seed: &Seed,
    tag: &[u8],
    field: PrimeField,
    rows: usize,
    cols: usize,
) -> FieldMatrix {
    let mut stream = XofStream::new(seed, tag);
    let mut out = FieldMatrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            out.set(r, c, stream.field_element(field));
        }
    }
    out
}

/// A uniform vector of Hamming weight exactly `w`: support chosen as the
/// first `w` points of a random permutation, values uniform over `F_p^*`.
pub fn sample_weighted_vector(
    seed: &Seed,
    tag: &[u8],
    field: PrimeField,
    n: usize,
    w: usize,
) -> FieldVector {
    assert!(w <= n);
    let mut stream = XofStream::new(seed, tag);
    let perm = stream.permutation(n);
    let mut out = FieldVector::zeros(field, n);
    for i in 0..w {
        out.set(perm.image(i), stream.nonzero_field_element(field));
    }
    out
}
