//! Decoding-problem instances and their interchange format.

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde::{Deserialize, Serialize};

use super::{RestrictedVector, RsdpError, Weight};
use crate::field::pack::{
    decode_field_vector, encode_field_vector, field_vector_byte_len, BitReader, BitWriter,
};
use crate::field::{sample_matrix, sample_sign_vector, syndrome, FieldMatrix, FieldVector,
    PrimeField, Seed};

const MAGIC: &[u8; 4] = b"RSDP";
const VERSION: u8 = 1;
const TEXT_PREFIX: &str = "RSDP1.";

/// An R-SDP instance `(H, s, t)` with restriction level `a`.
///
/// Asks for `e` with entries in `{0, ±x_1, …, ±x_a}`, Hamming weight ≤ t,
/// and `e·Hᵀ = s`. The solvers in this crate target the full-weight level-1
/// case (t = n, alphabet {±1}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsdpInstance {
    h: FieldMatrix,
    s: FieldVector,
    t: u32,
    a: u8,
}

impl RsdpInstance {
    /// Validates dimensions, full rank of `H`, and the restriction level.
    pub fn new(h: FieldMatrix, s: FieldVector, t: u32, a: u8) -> Result<Self, RsdpError> {
        if h.rows() != s.len() {
            return Err(RsdpError::Precondition(format!(
                "syndrome length {} does not match H rows {}",
                s.len(),
                h.rows()
            )));
        }
        if h.rows() > h.cols() {
            return Err(RsdpError::Precondition(
                "H has more rows than columns".into(),
            ));
        }
        let half = h.field().half() as u8;
        if a == 0 || a > half {
            return Err(RsdpError::Precondition(format!(
                "restriction level a = {a} outside [1, (p-1)/2]"
            )));
        }
        if h.rank() != h.rows() {
            return Err(RsdpError::NotFullRank);
        }
        Ok(RsdpInstance { h, s, t, a })
    }

    pub fn field(&self) -> PrimeField {
        self.h.field()
    }

    pub fn h(&self) -> &FieldMatrix {
        &self.h
    }

    pub fn s(&self) -> &FieldVector {
        &self.s
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn k(&self) -> usize {
        self.h.cols() - self.h.rows()
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    /// Checks a candidate against syndrome, alphabet level, and weight.
    pub fn is_solution(&self, e: &FieldVector) -> bool {
        if e.len() != self.n() {
            return false;
        }
        if e.values().any(|v| v.abs() > self.a as i32) {
            return false;
        }
        if e.hamming_weight() as u32 > self.t {
            return false;
        }
        syndrome(&self.h, e).map(|s| s == self.s).unwrap_or(false)
    }

    /// Checks a level-1 candidate.
    pub fn is_restricted_solution(&self, e: &RestrictedVector) -> bool {
        self.is_solution(&e.to_field_vector())
    }

    /// Binary interchange encoding: versioned header, then `H` row-major and
    /// `s`, each as one zero-padded bit-packed block.
    pub fn to_bytes(&self) -> Vec<u8> {
        let field = self.field();
        let bits = field.bits_per_element();
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&field.p().to_le_bytes());
        out.extend_from_slice(&(self.n() as u32).to_le_bytes());
        out.extend_from_slice(&(self.k() as u32).to_le_bytes());
        out.extend_from_slice(&self.t.to_le_bytes());
        out.push(self.a);
        let mut w = BitWriter::new();
        for v in self.h.values() {
            let u = if v < 0 { v + field.p() as i32 } else { v };
            w.push(u as u64, bits);
        }
        out.extend_from_slice(&w.finish());
        out.extend_from_slice(&encode_field_vector(&self.s));
        out
    }

    /// Inverse of [`Self::to_bytes`].
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, RsdpError> {
        let malformed = |msg: &str| RsdpError::MalformedFile(msg.into());
        if bytes.len() < 20 {
            return Err(malformed("truncated header"));
        }
        if &bytes[0..4] != MAGIC {
            return Err(malformed("bad magic"));
        }
        if bytes[4] != VERSION {
            return Err(malformed("unsupported version"));
        }
        let p = u16::from_le_bytes([bytes[5], bytes[6]]);
        let n = u32::from_le_bytes(bytes[7..11].try_into().unwrap()) as usize;
        let k = u32::from_le_bytes(bytes[11..15].try_into().unwrap()) as usize;
        let t = u32::from_le_bytes(bytes[15..19].try_into().unwrap());
        let a = bytes[19];
        let field = PrimeField::new(p).map_err(|e| malformed(&e.to_string()))?;
        if k >= n {
            return Err(malformed("k must be below n"));
        }
        let rows = n - k;
        let bits = field.bits_per_element();
        let h_bytes = (rows * n * bits as usize).div_ceil(8);
        let s_bytes = field_vector_byte_len(field, rows);
        let need = 20 + h_bytes + s_bytes;
        if bytes.len() != need {
            return Err(malformed(&format!(
                "expected {need} bytes, found {}",
                bytes.len()
            )));
        }
        let mut reader = BitReader::new(&bytes[20..20 + h_bytes]);
        let mut h = FieldMatrix::zeros(field, rows, n);
        for r in 0..rows {
            for c in 0..n {
                let raw = reader.read(bits).map_err(|e| malformed(&e.to_string()))?;
                if raw >= p as u64 {
                    return Err(malformed("matrix entry out of range"));
                }
                h.set(r, c, field.symmetric_of(raw as i64));
            }
        }
        reader
            .expect_zero_padding()
            .map_err(|e| malformed(&e.to_string()))?;
        let s = decode_field_vector(&bytes[20 + h_bytes..], field, rows)
            .map_err(|e| malformed(&e.to_string()))?;
        RsdpInstance::new(h, s, t, a)
    }

    /// Canonical single-line text wrapper for CLI interchange.
    pub fn to_text(&self) -> String {
        format!("{TEXT_PREFIX}{}", BASE64.encode(self.to_bytes()))
    }

    /// Parses either the text wrapper or raw binary.
    pub fn from_text_or_bytes(data: &[u8]) -> Result<Self, RsdpError> {
        if data.starts_with(MAGIC) {
            return Self::from_bytes(data);
        }
        let text = std::str::from_utf8(data)
            .map_err(|_| RsdpError::MalformedFile("neither binary nor text format".into()))?;
        let trimmed = text.trim();
        let b64 = trimmed
            .strip_prefix(TEXT_PREFIX)
            .ok_or_else(|| RsdpError::MalformedFile("missing text prefix".into()))?;
        let bytes = BASE64
            .decode(b64)
            .map_err(|e| RsdpError::MalformedFile(format!("base64: {e}")))?;
        Self::from_bytes(&bytes)
    }
}

/// A classical syndrome decoding instance: same triple, unrestricted
/// alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdpInstance {
    pub h: FieldMatrix,
    pub s: FieldVector,
    pub t: u32,
}

impl SdpInstance {
    pub fn new(h: FieldMatrix, s: FieldVector, t: u32) -> Result<Self, RsdpError> {
        if h.rows() != s.len() {
            return Err(RsdpError::Precondition(format!(
                "syndrome length {} does not match H rows {}",
                s.len(),
                h.rows()
            )));
        }
        Ok(SdpInstance { h, s, t })
    }

    pub fn field(&self) -> PrimeField {
        self.h.field()
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Checks Hamming weight ≤ t and syndrome equality.
    pub fn is_solution(&self, e: &FieldVector) -> bool {
        e.len() == self.n()
            && e.hamming_weight() as u32 <= self.t
            && syndrome(&self.h, e).map(|s| s == self.s).unwrap_or(false)
    }
}

/// Generates a satisfiable full-weight instance: `H` random of full rank,
/// the planted solution uniform over `{±1}^n`, `s = e·Hᵀ`, `t = n`.
/// Deterministic in the seed.
pub fn plant_instance(
    n: usize,
    k: usize,
    q: u16,
    seed: &Seed,
) -> Result<(RsdpInstance, RestrictedVector), RsdpError> {
    assert!(k < n, "need k < n");
    let field = PrimeField::new(q).map_err(|e| RsdpError::Precondition(e.to_string()))?;
    let rows = n - k;
    // Retry with a distinct tag until the sampled matrix has full rank;
    // for random matrices the first draw succeeds almost always.
    let mut h = None;
    for attempt in 0u8..64 {
        let tag: Vec<u8> = [b"plant-h".as_slice(), &[attempt]].concat();
        let candidate = sample_matrix(seed, &tag, field, rows, n);
        if candidate.rank() == rows {
            h = Some(candidate);
            break;
        }
    }
    let h = h.ok_or(RsdpError::NotFullRank)?;
    let planted = RestrictedVector::from_signs(field, &sample_sign_vector(seed, b"plant-e", n))?;
    let s = syndrome(&h, &planted.to_field_vector())
        .map_err(|e| RsdpError::Precondition(e.to_string()))?;
    let instance = RsdpInstance::new(h, s, n as u32, 1)?;
    debug_assert!(instance.is_restricted_solution(&planted));
    Ok((instance, planted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rsdp::expected_solutions;

    #[test]
    fn planted_instance_is_satisfied() {
        for t in 0..20u64 {
            let (inst, planted) = plant_instance(16, 8, 7, &Seed::from_u64(t)).unwrap();
            assert!(inst.is_restricted_solution(&planted));
            assert_eq!(inst.t(), 16);
            assert_eq!(inst.a(), 1);
        }
    }

    #[test]
    fn distinct_seeds_give_distinct_instances() {
        let (a, _) = plant_instance(12, 6, 11, &Seed::from_u64(1)).unwrap();
        let (b, _) = plant_instance(12, 6, 11, &Seed::from_u64(2)).unwrap();
        assert_ne!(a.h(), b.h());
        // Same seed reproduces bit-for-bit.
        let (c, _) = plant_instance(12, 6, 11, &Seed::from_u64(1)).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn solution_counts_match_expected_cardinality() {
        // Exhaustive count over all 2^10 sign vectors, 200 seeded
        // instances, compared to the closed-form expectation within 3σ.
        let (n, k, q) = (10usize, 5usize, 7u16);
        let seeds = 200u64;
        let mut total = 0u64;
        for t in 0..seeds {
            let (inst, _) = plant_instance(n, k, q, &Seed::from_u64(t)).unwrap();
            let field = inst.field();
            for mask in 0u32..(1 << n) {
                let signs: Vec<i8> = (0..n)
                    .map(|i| if mask >> i & 1 == 0 { 1i8 } else { -1i8 })
                    .collect();
                let e = RestrictedVector::from_signs(field, &signs).unwrap();
                if inst.is_restricted_solution(&e) {
                    total += 1;
                }
            }
        }
        let mean = total as f64 / seeds as f64;
        let expect = expected_solutions(n, k, q as u64);
        // Extra solutions are ≈ Poisson(M - 1), so Var ≈ M - 1 per seed.
        let sigma_mean = ((expect - 1.0) / seeds as f64).sqrt();
        assert!(
            (mean - expect).abs() <= 3.0 * sigma_mean,
            "mean count {mean}, expected {expect} ± {}",
            3.0 * sigma_mean
        );
    }

    #[test]
    fn file_roundtrip_binary_and_text() {
        let (inst, _) = plant_instance(20, 12, 29, &Seed::from_u64(5)).unwrap();
        let bytes = inst.to_bytes();
        assert_eq!(RsdpInstance::from_bytes(&bytes).unwrap(), inst);
        let text = inst.to_text();
        assert_eq!(
            RsdpInstance::from_text_or_bytes(text.as_bytes()).unwrap(),
            inst
        );
        assert_eq!(RsdpInstance::from_text_or_bytes(&bytes).unwrap(), inst);
    }

    #[test]
    fn file_rejects_corruption() {
        let (inst, _) = plant_instance(12, 6, 7, &Seed::from_u64(8)).unwrap();
        let mut bytes = inst.to_bytes();
        bytes[0] = b'X';
        assert!(RsdpInstance::from_bytes(&bytes).is_err());
        let mut truncated = inst.to_bytes();
        truncated.pop();
        assert!(RsdpInstance::from_bytes(&truncated).is_err());
    }

    #[test]
    fn instance_validation() {
        let f = PrimeField::new(7).unwrap();
        let h = FieldMatrix::from_raw(f, 2, 4, &[1, 2, 2, 4, 2, 4, 4, 1]);
        let s = FieldVector::from_raw(f, &[1, 2]);
        // Rank-deficient H is rejected (row 2 = 2·row 1).
        let degenerate = FieldMatrix::from_raw(f, 2, 4, &[1, 2, 3, 1, 2, 4, 6, 2]);
        assert!(matches!(
            RsdpInstance::new(degenerate, s.clone(), 4, 1),
            Err(RsdpError::NotFullRank)
        ));
        // Restriction level must fit the field.
        assert!(RsdpInstance::new(h.clone(), s.clone(), 4, 0).is_err());
        assert!(RsdpInstance::new(h.clone(), s.clone(), 4, 4).is_err());
        assert!(RsdpInstance::new(h, s, 4, 3).is_ok());
    }
}
