//! Restricted ball volumes, Gilbert–Varshamov distances, and solution
//! counting.
//!
//! Every bound here is a strict comparison between huge integers, so the
//! combinatorial quantities are computed with exact big-integer arithmetic;
//! only probabilities and expected counts use floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{RsdpError, Weight};
use crate::field::{FieldMatrix, FieldVector};

/// Binomial coefficient `C(n, k)` as an exact big integer.
pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Volume of the restricted ball of radius `t` in length `n`:
///
/// `Ṽ(n,t) = Σ_{i=0}^{t} Σ_{j=max(0,i-n)}^{⌊i/2⌋} C(n,j)·C(n-j,i-2j)·2^{i-j}`
///
/// counting vectors in `{0, ±1, ±2}^n` of restricted weight ≤ t. Requires
/// `t ≤ 2n`.
pub fn restricted_ball_volume(n: usize, t: u64) -> Result<BigUint, RsdpError> {
    let n64 = n as u64;
    if t > 2 * n64 {
        return Err(RsdpError::RadiusOutOfRange { t, n });
    }
    let mut total = BigUint::zero();
    for i in 0..=t {
        let j_lo = i.saturating_sub(n64);
        let j_hi = i / 2;
        for j in j_lo..=j_hi {
            let ones = i - 2 * j;
            let term = binomial(n64, j) * binomial(n64 - j, ones) * (BigUint::one() << (i - j));
            total += term;
        }
    }
    Ok(total)
}

/// The Gilbert–Varshamov distance in the Hamming metric:
/// the largest `d` with `Σ_{i=0}^{d-1} C(n,i)(q-1)^i < q^{n-k}`.
pub fn hamming_gv_distance(n: usize, k: usize, q: u64) -> u64 {
    assert!(k > 0 && k <= n, "need 0 < k <= n");
    let n64 = n as u64;
    let bound = BigUint::from(q).pow((n - k) as u32);
    let qm1 = BigUint::from(q - 1);
    let mut sum = BigUint::zero();
    let mut power = BigUint::one();
    let mut best = 0u64;
    for d in 1..=(n64 + 1) {
        // After this addition, sum = Σ_{i=0}^{d-1} C(n,i)(q-1)^i.
        sum += binomial(n64, d - 1) * &power;
        power *= &qm1;
        if sum < bound {
            best = d;
        } else {
            break;
        }
    }
    best
}

/// The restricted Gilbert–Varshamov distance: infinite when even the whole
/// wide alphabet is too small (`Ṽ(n,2n) < q^{n-k-1}`), otherwise the largest
/// `d̃ > 0` with `Ṽ(n,d̃) ≤ q^{n-k-1}` (0 if no positive radius qualifies).
pub fn restricted_gv_distance(n: usize, k: usize, q: u64) -> Weight {
    assert!(k > 0 && k < n, "need 0 < k < n");
    let bound = BigUint::from(q).pow((n - k - 1) as u32);
    let full = restricted_ball_volume(n, 2 * n as u64).expect("2n is in range");
    if full < bound {
        return Weight::Infinite;
    }
    let mut best = 0u64;
    for d in 1..=(2 * n as u64) {
        let vol = restricted_ball_volume(n, d).expect("d <= 2n");
        if vol <= bound {
            best = d;
        } else {
            break;
        }
    }
    Weight::Finite(best)
}

/// Lower bound `1 - q^{-εn}` on the probability that a random rate-`k/n`
/// code has infinite restricted minimum distance.
///
/// Preconditions: `q > 5`, `0 < ε < 1 - log_q 5`, and `k ≤ n(1 - log_q 5 - ε)`.
pub fn gv_infinite_probability_bound(
    n: usize,
    k: usize,
    q: u64,
    epsilon: f64,
) -> Result<f64, RsdpError> {
    if q <= 5 {
        return Err(RsdpError::Precondition(format!("q = {q} must exceed 5")));
    }
    let log_q_5 = 5f64.ln() / (q as f64).ln();
    if epsilon <= 0.0 || epsilon >= 1.0 - log_q_5 {
        return Err(RsdpError::Precondition(format!(
            "epsilon = {epsilon} outside (0, {})",
            1.0 - log_q_5
        )));
    }
    if (k as f64) > (n as f64) * (1.0 - log_q_5 - epsilon) {
        return Err(RsdpError::Precondition(format!(
            "k = {k} exceeds n(1 - log_q 5 - eps) = {}",
            (n as f64) * (1.0 - log_q_5 - epsilon)
        )));
    }
    Ok(1.0 - (q as f64).powf(-epsilon * n as f64))
}

/// Exact restricted minimum distance of the code spanned by `generator`,
/// by enumerating all `q^k` codewords. Infinite when no nonzero codeword
/// lies in `{0, ±1, ±2}^n`. Test-scale only; errors out beyond `10^7`
/// codewords.
pub fn restricted_min_distance(generator: &FieldMatrix) -> Result<Weight, RsdpError> {
    let field = generator.field();
    let q = field.p() as u128;
    let k = generator.rows();
    let n = generator.cols();
    let count = q.checked_pow(k as u32).filter(|&c| c <= 10_000_000);
    let Some(count) = count else {
        return Err(RsdpError::EnumerationTooLarge(
            q.checked_pow(k as u32).unwrap_or(u128::MAX),
        ));
    };

    // Odometer over message vectors. Every digit step is +1 mod q, and a
    // wrap from q-1 to 0 is also +1 mod q, so each touched position just
    // adds its generator row to the running codeword.
    let mut best = Weight::Infinite;
    let mut coeffs = vec![0u64; k];
    let mut word = FieldVector::zeros(field, n);
    let rows: Vec<FieldVector> = (0..k).map(|r| generator.row(r)).collect();
    for _ in 1..count {
        let mut pos = 0;
        loop {
            word = word.add(&rows[pos]);
            if coeffs[pos] == q as u64 - 1 {
                coeffs[pos] = 0;
                pos += 1;
            } else {
                coeffs[pos] += 1;
                break;
            }
        }
        if let Weight::Finite(w) = super::restricted_weight(&word) {
            if w > 0 && Weight::Finite(w) < best {
                best = Weight::Finite(w);
            }
        }
    }
    Ok(best)
}

/// Expected number of full-weight solutions of a planted instance:
/// `M = 1 + 2^{n(1 - (1-R) log2 q)}` with `R = k/n`, computed in the log
/// domain as `1 + 2^{n - (n-k) log2 q}`.
pub fn expected_solutions(n: usize, k: usize, q: u64) -> f64 {
    assert!(k > 0 && k < n, "need 0 < k < n");
    let exponent = n as f64 - (n - k) as f64 * (q as f64).log2();
    1.0 + exponent.exp2()
}
