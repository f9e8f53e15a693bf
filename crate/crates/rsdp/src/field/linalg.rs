//! Vectors, matrices, and the two Gaussian-elimination shapes the solvers
//! need: full systematization `S·π(H) = [H' | I]` and the partial form
//! `S·π(H) = [[I, H'], [0, H'']]`.

use serde::{Deserialize, Serialize};

use super::element::{FieldElement, FieldError, PrimeField};
use super::monomial::Permutation;

/// A vector over `F_p`, entries stored as symmetric representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldVector {
    field: PrimeField,
    entries: Vec<i16>,
}

impl FieldVector {
    /// Zero vector of length n.
    pub fn zeros(field: PrimeField, n: usize) -> Self {
        FieldVector {
            field,
            entries: vec![0; n],
        }
    }

    /// Builds a vector from raw integers, reducing each mod p.
    pub fn from_raw(field: PrimeField, raw: &[i64]) -> Self {
        FieldVector {
            field,
            entries: raw
                .iter()
                .map(|&x| field.symmetric_of(x).value() as i16)
                .collect(),
        }
    }

    pub fn from_elements(field: PrimeField, elems: &[FieldElement]) -> Self {
        FieldVector {
            field,
            entries: elems.iter().map(|e| e.value() as i16).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.field.symmetric_of(self.entries[i] as i64)
    }

    pub fn set(&mut self, i: usize, e: FieldElement) {
        self.entries[i] = e.value() as i16;
    }

    /// Symmetric representatives of all entries.
    pub fn values(&self) -> impl Iterator<Item = i32> + '_ {
        self.entries.iter().map(|&v| v as i32)
    }

    pub fn iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.entries
            .iter()
            .map(move |&v| self.field.symmetric_of(v as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Number of nonzero entries.
    pub fn hamming_weight(&self) -> usize {
        self.entries.iter().filter(|&&v| v != 0).count()
    }

    /// Entrywise sum; lengths and fields must match.
    pub fn add(&self, rhs: &FieldVector) -> FieldVector {
        self.zip_with(rhs, |a, b| a + b)
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &FieldVector) -> FieldVector {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: FieldElement) -> FieldVector {
        let p = self.field.p() as i64;
        let c = c.value() as i64;
        FieldVector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .map(|&v| self.field.symmetric_of(v as i64 * c % p).value() as i16)
                .collect(),
        }
    }

    fn zip_with(
        &self,
        rhs: &FieldVector,
        f: impl Fn(FieldElement, FieldElement) -> FieldElement,
    ) -> FieldVector {
        assert_eq!(self.field, rhs.field, "mixed-field vectors");
        assert_eq!(self.len(), rhs.len(), "length mismatch");
        FieldVector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| {
                    f(
                        self.field.symmetric_of(a as i64),
                        self.field.symmetric_of(b as i64),
                    )
                    .value() as i16
                })
                .collect(),
        }
    }

    /// Concatenation of two vectors over the same field.
    pub fn concat(&self, rhs: &FieldVector) -> FieldVector {
        assert_eq!(self.field, rhs.field, "mixed-field vectors");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&rhs.entries);
        FieldVector {
            field: self.field,
            entries,
        }
    }

    /// The subvector at `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> FieldVector {
        FieldVector {
            field: self.field,
            entries: self.entries[range].to_vec(),
        }
    }
}

/// A row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<i16>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major raw integers, reducing mod p.
    pub fn from_raw(field: PrimeField, rows: usize, cols: usize, raw: &[i64]) -> Self {
        assert_eq!(raw.len(), rows * cols);
        FieldMatrix {
            field,
            rows,
            cols,
            data: raw
                .iter()
                .map(|&x| field.symmetric_of(x).value() as i16)
                .collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.symmetric_of(self.data[r * self.cols + c] as i64)
    }

    pub fn set(&mut self, r: usize, c: usize, e: FieldElement) {
        self.data[r * self.cols + c] = e.value() as i16;
    }

    /// Symmetric representative at (r, c) without constructing an element.
    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> i32 {
        self.data[r * self.cols + c] as i32
    }

    /// Row-major symmetric representatives.
    pub fn values(&self) -> impl Iterator<Item = i32> + '_ {
        self.data.iter().map(|&v| v as i32)
    }

    pub fn row(&self, r: usize) -> FieldVector {
        FieldVector {
            field: self.field,
            entries: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> FieldVector {
        FieldVector {
            field: self.field,
            entries: (0..self.rows)
                .map(|r| self.data[r * self.cols + c])
                .collect(),
        }
    }

    /// Matrix with columns permuted: column j of the result is column
    /// `perm(j)` of `self`.
    pub fn permute_columns(&self, perm: &Permutation) -> FieldMatrix {
        assert_eq!(perm.len(), self.cols, "permutation length mismatch");
        let mut out = FieldMatrix::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for j in 0..self.cols {
                out.data[r * self.cols + j] = self.data[r * self.cols + perm.image(j)];
            }
        }
        out
    }

    /// Matrix product; `self.cols` must equal `rhs.rows`.
    pub fn mul_matrix(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.field, rhs.field, "mixed-field matrices");
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let p = self.field.p() as i64;
        let mut out = FieldMatrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0i64;
                for t in 0..self.cols {
                    acc += self.data[i * self.cols + t] as i64 * rhs.data[t * rhs.cols + j] as i64;
                    acc %= p;
                }
                out.data[i * rhs.cols + j] = self.field.symmetric_of(acc).value() as i16;
            }
        }
        out
    }

    /// `v · selfᵀ`, i.e. the vector of inner products of `v` with each row.
    pub fn mul_vector_transposed(&self, v: &FieldVector) -> FieldVector {
        assert_eq!(self.field, v.field, "mixed-field operands");
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let p = self.field.p() as i64;
        let mut out = FieldVector::zeros(self.field, self.rows);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = 0i64;
            for (h, e) in row.iter().zip(&v.entries) {
                acc += *h as i64 * *e as i64;
            }
            out.entries[r] = self.field.symmetric_of(acc % p).value() as i16;
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hconcat(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.field, rhs.field);
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut out = FieldMatrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            out.data[r * cols + self.cols..(r + 1) * cols]
                .copy_from_slice(&rhs.data[r * rhs.cols..(r + 1) * rhs.cols]);
        }
        out
    }

    /// The submatrix of columns in `range`.
    pub fn column_block(&self, range: std::ops::Range<usize>) -> FieldMatrix {
        let cols = range.len();
        let mut out = FieldMatrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            for (jo, j) in range.clone().enumerate() {
                out.data[r * cols + jo] = self.data[r * self.cols + j];
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let p = self.field.p() as i64;
        let mut m: Vec<i64> = self.data.iter().map(|&v| v as i64).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let pivot = (rank..rows).find(|&r| m[r * cols + col] % p != 0);
            let Some(pr) = pivot else { continue };
            m.swap_with_slice_rows(rows, cols, rank, pr);
            let inv = mod_inverse(m[rank * cols + col], p);
            for j in col..cols {
                m[rank * cols + j] = m[rank * cols + j] * inv % p;
            }
            for r in 0..rows {
                if r != rank && m[r * cols + col] % p != 0 {
                    let f = m[r * cols + col] % p;
                    for j in col..cols {
                        m[r * cols + j] = (m[r * cols + j] - f * m[rank * cols + j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

trait SwapRows {
    fn swap_with_slice_rows(&mut self, rows: usize, cols: usize, a: usize, b: usize);
}

impl SwapRows for Vec<i64> {
    fn swap_with_slice_rows(&mut self, _rows: usize, cols: usize, a: usize, b: usize) {
        if a != b {
            for j in 0..cols {
                self.swap(a * cols + j, b * cols + j);
            }
        }
    }
}

fn mod_inverse(x: i64, p: i64) -> i64 {
    let mut base = x % p;
    if base < 0 {
        base += p;
    }
    assert!(base != 0, "zero has no inverse");
    let mut exp = p - 2;
    let mut acc = 1i64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// The syndrome `e·Hᵀ` of `e` under parity-check matrix `H`.
pub fn syndrome(h: &FieldMatrix, e: &FieldVector) -> Result<FieldVector, FieldError> {
    if h.cols() != e.len() {
        return Err(FieldError::DimensionMismatch {
            expected: h.cols(),
            got: e.len(),
        });
    }
    Ok(h.mul_vector_transposed(e))
}

/// Result of a partial Gaussian elimination.
#[derive(Debug, Clone)]
pub struct PgeResult {
    /// The invertible row transformation.
    pub transform: FieldMatrix,
    /// `H'`, of shape `(n-k-ℓ) × (k+ℓ)`.
    pub top_right: FieldMatrix,
    /// `H''`, of shape `ℓ × (k+ℓ)`.
    pub bottom_right: FieldMatrix,
}

/// Brings `π(H)` to systematic form `S·π(H) = [H' | I_{n-k}]`.
///
/// Returns `None` when the square block formed by the last `n-k` columns of
/// `π(H)` is singular; the caller re-samples the permutation.
pub fn systematize(h: &FieldMatrix, perm: &Permutation) -> Option<(FieldMatrix, FieldMatrix)> {
    let r = h.rows();
    let n = h.cols();
    assert!(r <= n, "parity-check matrix is overdetermined");
    let permuted = h.permute_columns(perm);
    let (s, reduced) = eliminate_block(&permuted, n - r, r, 0)?;
    Some((s, reduced.column_block(0..n - r)))
}

/// Partial Gaussian elimination: `S·π(H) = [[I_{n-k-ℓ}, H'], [0, H'']]`.
///
/// Returns `None` when the top-left `(n-k-ℓ)` square block of `π(H)` is
/// singular. Pivoting is confined to the top `n-k-ℓ` rows so that the
/// failure event is exactly the singularity of that block.
pub fn partial_gaussian_elimination(
    h: &FieldMatrix,
    perm: &Permutation,
    ell: usize,
) -> Option<PgeResult> {
    let r = h.rows();
    let n = h.cols();
    assert!(ell >= 1 && ell <= r, "ell out of range");
    let top = r - ell;
    let permuted = h.permute_columns(perm);
    let (s, reduced) = eliminate_block(&permuted, 0, top, ell)?;
    let top_right = reduced.column_block(top..n).column_block_rows(0, top);
    let bottom_right = reduced.column_block(top..n).column_block_rows(top, ell);
    Some(PgeResult {
        transform: s,
        top_right,
        bottom_right,
    })
}

impl FieldMatrix {
    /// The submatrix of `count` rows starting at `start`.
    fn column_block_rows(&self, start: usize, count: usize) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field, count, self.cols);
        for r in 0..count {
            let src = (start + r) * self.cols;
            out.data[r * self.cols..(r + 1) * self.cols]
                .copy_from_slice(&self.data[src..src + self.cols]);
        }
        out
    }
}

/// Gauss–Jordan on the square block of `block_size` columns starting at
/// `col_start`, pivoting only within the first `block_size` rows, then
/// clearing the remaining `extra_rows` rows below. Returns `(S, S·M)` or
/// `None` when the block restricted to the pivot rows is singular.
fn eliminate_block(
    m: &FieldMatrix,
    col_start: usize,
    block_size: usize,
    extra_rows: usize,
) -> Option<(FieldMatrix, FieldMatrix)> {
    let field = m.field();
    let p = field.p() as i64;
    let rows = m.rows();
    let cols = m.cols();
    debug_assert_eq!(rows, block_size + extra_rows);

    // Work on [M | I] so the accumulated transform falls out of the same
    // row operations.
    let aug_cols = cols + rows;
    let mut a: Vec<i64> = Vec::with_capacity(rows * aug_cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut v = m.at(r, c) as i64 % p;
            if v < 0 {
                v += p;
            }
            a.push(v);
        }
        for c in 0..rows {
            a.push(if r == c { 1 } else { 0 });
        }
    }
    let idx = |r: usize, c: usize| r * aug_cols + c;

    for step in 0..block_size {
        let col = col_start + step;
        // Pivot search restricted to the block rows.
        let pivot = (step..block_size).find(|&r| a[idx(r, col)] % p != 0)?;
        if pivot != step {
            for c in 0..aug_cols {
                a.swap(idx(step, c), idx(pivot, c));
            }
        }
        let inv = mod_inverse(a[idx(step, col)], p);
        for c in 0..aug_cols {
            a[idx(step, c)] = a[idx(step, c)] * inv % p;
        }
        for r in 0..rows {
            if r != step {
                let f = a[idx(r, col)] % p;
                if f != 0 {
                    for c in 0..aug_cols {
                        a[idx(r, c)] = ((a[idx(r, c)] - f * a[idx(step, c)]) % p + p) % p;
                    }
                }
            }
        }
    }

    let mut reduced = FieldMatrix::zeros(field, rows, cols);
    let mut transform = FieldMatrix::zeros(field, rows, rows);
    for r in 0..rows {
        for c in 0..cols {
            reduced.data[r * cols + c] = field.symmetric_of(a[idx(r, c)]).value() as i16;
        }
        for c in 0..rows {
            transform.data[r * rows + c] = field.symmetric_of(a[idx(r, cols + c)]).value() as i16;
        }
    }
    Some((transform, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sample::{sample_matrix, sample_permutation, Seed};

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn syndrome_identity_block() {
        // H = I_2 padded with a zero column; e = (1, -1, 1).
        let f = PrimeField::new(29).unwrap();
        let h = FieldMatrix::from_raw(f, 2, 3, &[1, 0, 0, 0, 1, 0]);
        let e = FieldVector::from_raw(f, &[1, -1, 1]);
        let s = syndrome(&h, &e).unwrap();
        assert_eq!(s, FieldVector::from_raw(f, &[1, -1]));
    }

    #[test]
    fn syndrome_row_sum() {
        let h = FieldMatrix::from_raw(f7(), 1, 3, &[1, 2, 3]);
        let e = FieldVector::from_raw(f7(), &[1, 1, 1]);
        let s = syndrome(&h, &e).unwrap();
        assert_eq!(s.get(0).value(), -1); // 6 ≡ -1 mod 7
    }

    #[test]
    fn syndrome_of_zero() {
        let f = f7();
        let h = FieldMatrix::from_raw(f, 2, 4, &[1, 2, 3, -1, 0, 3, 1, 2]);
        let e = FieldVector::zeros(f, 4);
        assert!(syndrome(&h, &e).unwrap().is_zero());
    }

    #[test]
    fn syndrome_dimension_mismatch() {
        let h = FieldMatrix::from_raw(f7(), 1, 3, &[1, 2, 3]);
        let e = FieldVector::from_raw(f7(), &[1, 1]);
        assert!(syndrome(&h, &e).is_err());
    }

    #[test]
    fn systematize_already_systematic() {
        let f = f7();
        // H = [0 | I_2]
        let h = FieldMatrix::from_raw(f, 2, 4, &[0, 0, 1, 0, 0, 0, 0, 1]);
        let perm = Permutation::identity(4);
        let (s, hprime) = systematize(&h, &perm).unwrap();
        assert_eq!(s, FieldMatrix::identity(f, 2));
        assert_eq!(hprime, FieldMatrix::zeros(f, 2, 2));
    }

    #[test]
    fn systematize_block_identity_exact() {
        let f = PrimeField::new(11).unwrap();
        let seed = Seed::from_u64(7);
        let h = sample_matrix(&seed, b"h", f, 4, 9);
        let perm = sample_permutation(&seed, b"perm", 9);
        if let Some((s, hprime)) = systematize(&h, &perm) {
            let sh = s.mul_matrix(&h.permute_columns(&perm));
            // S·π(H) = [H' | I]
            assert_eq!(sh.column_block(0..5), hprime);
            assert_eq!(sh.column_block(5..9), FieldMatrix::identity(f, 4));
            assert_eq!(s.rank(), 4);
        } else {
            panic!("random 4x9 over F_11 unexpectedly singular for this seed");
        }
    }

    #[test]
    fn systematize_rank_deficient_block() {
        let f = f7();
        // Duplicate columns in the pivot block (last two columns equal).
        let h = FieldMatrix::from_raw(f, 2, 4, &[1, 2, 3, 3, 0, 1, 2, 2]);
        assert!(systematize(&h, &Permutation::identity(4)).is_none());
    }

    #[test]
    fn systematize_success_rate_matches_nonsingularity_probability() {
        // Empirical success rate over random H within 3σ of ∏(1 - q^-j),
        // q = 7, n = 12, k = 6, 10^4 trials.
        let f = f7();
        let (n, r) = (12usize, 6usize);
        let trials = 10_000u32;
        let perm = Permutation::identity(n);
        let mut successes = 0u32;
        for t in 0..trials {
            let seed = Seed::from_u64(t as u64);
            let h = sample_matrix(&seed, b"trial", f, r, n);
            if systematize(&h, &perm).is_some() {
                successes += 1;
            }
        }
        let p_succ: f64 = (1..=r).map(|j| 1.0 - 7f64.powi(-(j as i32))).product();
        let sigma = (p_succ * (1.0 - p_succ) / trials as f64).sqrt();
        let observed = successes as f64 / trials as f64;
        assert!(
            (observed - p_succ).abs() <= 3.0 * sigma,
            "observed {observed}, expected {p_succ} ± {}",
            3.0 * sigma
        );
    }

    #[test]
    fn pge_block_shape() {
        let f = f7();
        let (n, k, ell) = (12usize, 6usize, 2usize);
        // Try seeds until the pivot block is nonsingular; the structural
        // assertions below are what matter.
        let (h, perm, res) = (0u64..50)
            .find_map(|t| {
                let seed = Seed::from_u64(t);
                let h = sample_matrix(&seed, b"h", f, n - k, n);
                let perm = sample_permutation(&seed, b"perm", n);
                partial_gaussian_elimination(&h, &perm, ell).map(|res| (h, perm, res))
            })
            .expect("some seed yields a nonsingular block");
        let top = n - k - ell;
        let sh = res.transform.mul_matrix(&h.permute_columns(&perm));
        // Block identity: S·π(H) = [[I, H'], [0, H'']].
        for r in 0..top {
            for c in 0..top {
                let want = if r == c { 1 } else { 0 };
                assert_eq!(sh.get(r, c).value(), want);
            }
        }
        for r in top..n - k {
            for c in 0..top {
                assert_eq!(sh.get(r, c).value(), 0);
            }
        }
        assert_eq!(sh.column_block(top..n).column_block_rows(0, top), res.top_right);
        assert_eq!(
            sh.column_block(top..n).column_block_rows(top, ell),
            res.bottom_right
        );
        assert_eq!(res.transform.rank(), n - k);
    }

    #[test]
    fn pge_degenerate_split_is_identity() {
        // ℓ = n-k: nothing to eliminate, S = I, H'' = π(H).
        let f = f7();
        let h = FieldMatrix::from_raw(f, 2, 4, &[1, 2, 3, 3, 0, 1, 2, 2]);
        let perm = Permutation::identity(4);
        let res = partial_gaussian_elimination(&h, &perm, 2).unwrap();
        assert_eq!(res.transform, FieldMatrix::identity(f, 2));
        assert_eq!(res.bottom_right, h);
        assert_eq!(res.top_right.rows(), 0);
    }

    #[test]
    fn pge_singular_top_block() {
        let f = f7();
        // Zero column in the pivot block forces singular H'_0.
        let h = FieldMatrix::from_raw(f, 3, 5, &[0, 1, 2, 3, 1, 0, 2, 1, 1, 4, 0, 3, 3, 2, 5]);
        assert!(partial_gaussian_elimination(&h, &Permutation::identity(5), 1).is_none());
    }

    #[test]
    fn rank_of_random_and_degenerate() {
        let f = f7();
        assert_eq!(FieldMatrix::identity(f, 4).rank(), 4);
        let degenerate = FieldMatrix::from_raw(f, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(degenerate.rank(), 1);
        assert_eq!(FieldMatrix::zeros(f, 3, 3).rank(), 0);
    }
}
