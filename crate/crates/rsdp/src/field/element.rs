use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from field construction and dimension checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must be an odd prime >= 5")]
    ModulusTooSmall(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element {0} is not invertible")]
    NotInvertible(i64),
}

/// A prime field `F_p` with p an odd prime, 5 ≤ p < 2^16.
///
/// All protocol parameters use p ≤ 31; the upper bound exists so that
/// products of symmetric representatives always fit in an `i32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u16,
}

impl PrimeField {
    /// Constructs `F_p`, checking that p is an odd prime ≥ 5.
    pub fn new(p: u16) -> Result<Self, FieldError> {
        if p < 5 || p % 2 == 0 {
            return Err(FieldError::ModulusTooSmall(p as u64));
        }
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    /// The modulus p.
    pub fn p(&self) -> u16 {
        self.p
    }

    /// `(p-1)/2`, the largest symmetric representative.
    pub fn half(&self) -> i32 {
        (self.p as i32 - 1) / 2
    }

    /// Bits needed to encode one element, `⌈log2 p⌉`.
    pub fn bits_per_element(&self) -> u32 {
        ceil_log2(self.p as u64)
    }

    /// The unique representative of `raw` mod p in `[-(p-1)/2, (p-1)/2]`.
    pub fn symmetric_of(&self, raw: i64) -> FieldElement {
        let p = self.p as i64;
        let mut r = raw % p;
        if r < 0 {
            r += p;
        }
        if r > (p - 1) / 2 {
            r -= p;
        }
        FieldElement {
            value: r as i16,
            field: *self,
        }
    }

    /// The zero element.
    pub fn zero(&self) -> FieldElement {
        FieldElement {
            value: 0,
            field: *self,
        }
    }

    /// The one element.
    pub fn one(&self) -> FieldElement {
        FieldElement {
            value: 1,
            field: *self,
        }
    }

    /// All nonzero elements, in increasing symmetric absolute value:
    /// `1, -1, 2, -2, …`.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..=self.half()).flat_map(move |v| {
            [
                FieldElement {
                    value: v as i16,
                    field: *self,
                },
                FieldElement {
                    value: -v as i16,
                    field: *self,
                },
            ]
        })
    }

    /// All field elements `0, 1, -1, 2, -2, …`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(self.zero()).chain(self.nonzero_elements())
    }
}

/// `⌈log2 x⌉` for x ≥ 1.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1);
    if x == 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of `F_p` in symmetric representation.
///
/// The invariant `|value| ≤ (p-1)/2` holds for every constructed element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    value: i16,
    field: PrimeField,
}

impl FieldElement {
    /// The symmetric representative in `[-(p-1)/2, (p-1)/2]`.
    pub fn value(&self) -> i32 {
        self.value as i32
    }

    /// The field this element belongs to.
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The representative in `[0, p-1]`, used at serialization boundaries.
    pub fn to_unsigned(&self) -> u16 {
        if self.value < 0 {
            (self.value as i32 + self.field.p as i32) as u16
        } else {
            self.value as u16
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        if self.value == 0 {
            return Err(FieldError::NotInvertible(0));
        }
        let p = self.field.p as i64;
        let mut base = {
            let mut b = self.value as i64 % p;
            if b < 0 {
                b += p;
            }
            b
        };
        let mut exp = p - 2;
        let mut acc = 1i64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Ok(self.field.symmetric_of(acc))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn assert_same_field(a: &FieldElement, b: &FieldElement) {
    assert_eq!(
        a.field.p, b.field.p,
        "mixed-field arithmetic: F_{} vs F_{}",
        a.field.p, b.field.p
    );
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_same_field(&self, &rhs);
        self.field
            .symmetric_of(self.value as i64 + rhs.value as i64)
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        assert_same_field(&self, &rhs);
        self.field
            .symmetric_of(self.value as i64 - rhs.value as i64)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_same_field(&self, &rhs);
        self.field
            .symmetric_of(self.value as i64 * rhs.value as i64)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: -self.value,
            field: self.field,
        }
    }
}
