//! Bit-exact vector encodings.
//!
//! Field vectors are serialized by mapping each entry to `[0, p-1]` and
//! packing `⌈log2 p⌉` bits per entry, least-significant bit first within
//! each byte, zero-padded to a byte boundary. Sign vectors over `{±1}` use
//! one bit per entry with `0 ↦ +1` and `1 ↦ -1`. These encodings are the
//! hashing and wire contracts of the protocol layer.

use thiserror::Error;

use super::element::PrimeField;
use super::linalg::FieldVector;

/// Decoding errors for the packed encodings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackError {
    #[error("input truncated: need {need} bytes, have {have}")]
    Truncated { need: usize, have: usize },
    #[error("entry {index} out of range for F_{p}")]
    OutOfRange { index: usize, p: u16 },
    #[error("nonzero padding bits")]
    BadPadding,
}

/// Writes values of fixed bit width into a little-endian-bit byte stream.
pub struct BitWriter {
    bytes: Vec<u8>,
    bit_pos: u32,
}

impl BitWriter {
    pub fn new() -> Self {
        BitWriter {
            bytes: Vec::new(),
            bit_pos: 0,
        }
    }

    pub fn push(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 57);
        debug_assert!(width == 64 || value < (1u64 << width));
        let mut remaining = width;
        let mut v = value;
        while remaining > 0 {
            if self.bit_pos == 0 {
                self.bytes.push(0);
            }
            let free = 8 - self.bit_pos;
            let take = remaining.min(free);
            let mask = (1u64 << take) - 1;
            let last = self.bytes.last_mut().expect("byte pushed above");
            *last |= ((v & mask) as u8) << self.bit_pos;
            v >>= take;
            self.bit_pos = (self.bit_pos + take) % 8;
            remaining -= take;
        }
    }

    /// Pads to a byte boundary with zero bits and returns the buffer.
    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }

    pub fn bit_len(&self) -> usize {
        if self.bit_pos == 0 {
            self.bytes.len() * 8
        } else {
            (self.bytes.len() - 1) * 8 + self.bit_pos as usize
        }
    }
}

impl Default for BitWriter {
    fn default() -> Self {
        Self::new()
    }
}

/// Reads fixed-width values back from a little-endian-bit byte stream.
pub struct BitReader<'a> {
    bytes: &'a [u8],
    bit_pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, bit_pos: 0 }
    }

    pub fn read(&mut self, width: u32) -> Result<u64, PackError> {
        let end = self.bit_pos + width as usize;
        if end > self.bytes.len() * 8 {
            return Err(PackError::Truncated {
                need: end.div_ceil(8),
                have: self.bytes.len(),
            });
        }
        let mut acc = 0u64;
        let mut have = 0u32;
        while have < width {
            let byte = self.bytes[self.bit_pos / 8];
            let offset = (self.bit_pos % 8) as u32;
            let take = (width - have).min(8 - offset);
            let mask = ((1u16 << take) - 1) as u64;
            acc |= (((byte >> offset) as u64) & mask) << have;
            self.bit_pos += take as usize;
            have += take;
        }
        Ok(acc)
    }

    /// Checks that every remaining bit of the final partial byte is zero.
    pub fn expect_zero_padding(&mut self) -> Result<(), PackError> {
        while self.bit_pos % 8 != 0 {
            if self.read(1)? != 0 {
                return Err(PackError::BadPadding);
            }
        }
        Ok(())
    }

    pub fn bits_consumed(&self) -> usize {
        self.bit_pos
    }
}

/// Number of bytes occupied by a packed field vector of length `n`.
pub fn field_vector_byte_len(field: PrimeField, n: usize) -> usize {
    (n * field.bits_per_element() as usize).div_ceil(8)
}

/// Packs a field vector: entries in `[0, p-1]`, `⌈log2 p⌉` bits each.
pub fn encode_field_vector(v: &FieldVector) -> Vec<u8> {
    let bits = v.field().bits_per_element();
    let mut w = BitWriter::new();
    for i in 0..v.len() {
        w.push(v.get(i).to_unsigned() as u64, bits);
    }
    w.finish()
}

/// Inverse of [`encode_field_vector`] for a known length.
pub fn decode_field_vector(
    bytes: &[u8],
    field: PrimeField,
    n: usize,
) -> Result<FieldVector, PackError> {
    let need = field_vector_byte_len(field, n);
    if bytes.len() < need {
        return Err(PackError::Truncated {
            need,
            have: bytes.len(),
        });
    }
    let bits = field.bits_per_element();
    let mut r = BitReader::new(&bytes[..need]);
    let mut out = FieldVector::zeros(field, n);
    for i in 0..n {
        let raw = r.read(bits)?;
        if raw >= field.p() as u64 {
            return Err(PackError::OutOfRange { index: i, p: field.p() });
        }
        out.set(i, field.symmetric_of(raw as i64));
    }
    r.expect_zero_padding()?;
    Ok(out)
}

/// Packs a `{±1}` vector, one bit per entry: `0 ↦ +1`, `1 ↦ -1`.
pub fn encode_sign_vector(signs: &[i8]) -> Vec<u8> {
    let mut w = BitWriter::new();
    for &s in signs {
        debug_assert!(s == 1 || s == -1);
        w.push(if s == 1 { 0 } else { 1 }, 1);
    }
    w.finish()
}

/// Inverse of [`encode_sign_vector`] for a known length.
pub fn decode_sign_vector(bytes: &[u8], n: usize) -> Result<Vec<i8>, PackError> {
    let need = n.div_ceil(8);
    if bytes.len() < need {
        return Err(PackError::Truncated {
            need,
            have: bytes.len(),
        });
    }
    let mut r = BitReader::new(&bytes[..need]);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(if r.read(1)? == 0 { 1 } else { -1 });
    }
    r.expect_zero_padding()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sample::{sample_field_vector, sample_sign_vector, Seed};

    #[test]
    fn known_bit_layout() {
        // F_29 needs 5 bits per entry. Entries 1, -1 map to 1, 28;
        // packed LSB-first: 00001 then 11100 -> bytes 0b10000001, 0b00000011.
        let f = PrimeField::new(29).unwrap();
        let v = FieldVector::from_raw(f, &[1, -1]);
        assert_eq!(encode_field_vector(&v), vec![0b1000_0001, 0b0000_0011]);
    }

    #[test]
    fn sign_bit_layout() {
        // +1 -> 0, -1 -> 1; first entry in bit 0.
        assert_eq!(encode_sign_vector(&[1, -1, -1, 1]), vec![0b0000_0110]);
        assert_eq!(encode_sign_vector(&[-1; 9]), vec![0xff, 0x01]);
    }

    #[test]
    fn field_vector_roundtrip() {
        let f = PrimeField::new(31).unwrap();
        for t in 0..50u64 {
            let n = 1 + (t as usize * 7) % 40;
            let v = sample_field_vector(&Seed::from_u64(t), b"v", f, n);
            let bytes = encode_field_vector(&v);
            assert_eq!(bytes.len(), field_vector_byte_len(f, n));
            assert_eq!(decode_field_vector(&bytes, f, n).unwrap(), v);
        }
    }

    #[test]
    fn sign_vector_roundtrip() {
        for t in 0..50u64 {
            let n = 1 + (t as usize * 5) % 70;
            let signs = sample_sign_vector(&Seed::from_u64(t), b"s", n);
            let bytes = encode_sign_vector(&signs);
            assert_eq!(decode_sign_vector(&bytes, n).unwrap(), signs);
        }
    }

    #[test]
    fn decode_rejects_out_of_range() {
        let f = PrimeField::new(29).unwrap();
        // A single 5-bit entry of value 29 is out of range.
        assert_eq!(
            decode_field_vector(&[29u8], f, 1),
            Err(PackError::OutOfRange { index: 0, p: 29 })
        );
    }

    #[test]
    fn decode_rejects_bad_padding() {
        let f = PrimeField::new(29).unwrap();
        // One entry occupies 5 bits; a set bit in the padding is invalid.
        assert_eq!(
            decode_field_vector(&[0b0010_0001], f, 1),
            Err(PackError::BadPadding)
        );
    }

    #[test]
    fn decode_rejects_truncation() {
        let f = PrimeField::new(29).unwrap();
        assert!(matches!(
            decode_field_vector(&[0u8], f, 1000),
            Err(PackError::Truncated { .. })
        ));
    }
}
