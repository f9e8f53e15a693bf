//! The SDP → R-SDP reduction as executable maps.
//!
//! An SDP instance over `F_q` (q odd) maps to an R-SDP instance whose
//! parity-check matrix repeats each column of `H` scaled by a multiplier
//! set `U`, chosen so that every nonzero field element factors as `±x·u`
//! with `x` in the restricted alphabet and `u ∈ U`. Solutions transport in
//! both directions without weight growth, which is what makes the
//! restricted problem NP-complete.

use serde::{Deserialize, Serialize};

use super::instance::{RsdpInstance, SdpInstance};
use super::RsdpError;
use crate::field::{syndrome, FieldMatrix, FieldVector, PrimeField};

/// The data of one reduction: the multiplier set and the source instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionMap {
    field: PrimeField,
    a: u8,
    /// Multipliers in symmetric representation; `u_0 = 1` always.
    multipliers: Vec<i16>,
    source: SdpInstance,
}

impl ReductionMap {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    /// `v = |U|`.
    pub fn v(&self) -> usize {
        self.multipliers.len()
    }

    pub fn multipliers(&self) -> impl Iterator<Item = i32> + '_ {
        self.multipliers.iter().map(|&u| u as i32)
    }

    pub fn source(&self) -> &SdpInstance {
        &self.source
    }

    /// Source length n; the reduced instance has length `n·v`.
    pub fn source_len(&self) -> usize {
        self.source.n()
    }

    pub fn target_len(&self) -> usize {
        self.source.n() * self.v()
    }
}

/// Greedy multiplier set: walk `F_q^*` in increasing symmetric absolute
/// value (1, -1, 2, -2, …) and add any element not yet expressible as
/// `±x·u` with `x ∈ [1, a]`, `u` already chosen.
fn choose_multipliers(field: PrimeField, a: u8) -> Vec<i16> {
    let p = field.p() as i64;
    let mut covered = vec![false; p as usize]; // indexed by [0, p-1]
    let mut chosen = Vec::new();
    for b in field.nonzero_elements() {
        if covered[b.to_unsigned() as usize] {
            continue;
        }
        chosen.push(b.value() as i16);
        for x in 1..=(a as i64) {
            let prod = field.symmetric_of(b.value() as i64 * x);
            covered[prod.to_unsigned() as usize] = true;
            covered[(-prod).to_unsigned() as usize] = true;
        }
    }
    chosen
}

/// Maps an SDP instance to an R-SDP instance at restriction level `a`.
///
/// The reduced matrix has columns `h'_{iv+j} = u_j · h_i`; syndrome and
/// weight bound are unchanged. Requires odd q with `a ≤ (q-1)/2` and a
/// full-rank source matrix.
pub fn sdp_to_rsdp(
    inst: &SdpInstance,
    a: u8,
) -> Result<(RsdpInstance, ReductionMap), RsdpError> {
    let field = inst.field();
    if a == 0 || (a as i32) > field.half() {
        return Err(RsdpError::Precondition(format!(
            "restriction level a = {a} outside [1, (p-1)/2]"
        )));
    }
    let multipliers = choose_multipliers(field, a);
    let v = multipliers.len();
    let n = inst.n();
    let rows = inst.h.rows();
    let mut hprime = FieldMatrix::zeros(field, rows, n * v);
    for i in 0..n {
        for (j, &u) in multipliers.iter().enumerate() {
            let scaled = inst.h.column(i).scale(field.symmetric_of(u as i64));
            for r in 0..rows {
                hprime.set(r, i * v + j, scaled.get(r));
            }
        }
    }
    let reduced = RsdpInstance::new(hprime, inst.s.clone(), inst.t, a)?;
    let map = ReductionMap {
        field,
        a,
        multipliers,
        source: inst.clone(),
    };
    Ok((reduced, map))
}

/// Transports a solution of the reduced instance back to the source SDP:
/// `e_i = Σ_j e'_{iv+j} · u_j`. Errors unless `e'` actually solves the
/// reduced instance; the output solves the source with no greater weight.
pub fn lift_rsdp_solution(
    map: &ReductionMap,
    eprime: &FieldVector,
) -> Result<FieldVector, RsdpError> {
    let field = map.field;
    let v = map.v();
    let n = map.source_len();
    if eprime.len() != n * v {
        return Err(RsdpError::Precondition(format!(
            "expected length {}, got {}",
            n * v,
            eprime.len()
        )));
    }
    if eprime.values().any(|x| x.abs() > map.a as i32) {
        return Err(RsdpError::NotASolution);
    }
    let mut e = FieldVector::zeros(field, n);
    for i in 0..n {
        let mut acc = 0i64;
        for (j, &u) in map.multipliers.iter().enumerate() {
            acc += eprime.get(i * v + j).value() as i64 * u as i64;
        }
        e.set(i, field.symmetric_of(acc));
    }
    // Verifying against the source instance is equivalent to checking the
    // reduced syndrome, by construction of H'.
    if eprime.hamming_weight() as u32 > map.source.t || !map.source.is_solution(&e) {
        return Err(RsdpError::NotASolution);
    }
    Ok(e)
}

/// Transports a solution of the source SDP into the reduced instance:
/// every nonzero `β_i` factors as `λ·u·x` with one nonzero entry `λ·x`
/// placed in block `i` at the position of `u`.
pub fn push_sdp_solution(map: &ReductionMap, e: &FieldVector) -> Result<FieldVector, RsdpError> {
    let field = map.field;
    let v = map.v();
    let n = map.source_len();
    if e.len() != n {
        return Err(RsdpError::Precondition(format!(
            "expected length {n}, got {}",
            e.len()
        )));
    }
    let mut eprime = FieldVector::zeros(field, n * v);
    for i in 0..n {
        let beta = e.get(i);
        if beta.is_zero() {
            continue;
        }
        let (j, value) = decompose(field, map.a, &map.multipliers, beta.value())
            .expect("multiplier set covers F_q^* by construction");
        eprime.set(i * v + j, field.symmetric_of(value));
    }
    debug_assert_eq!(
        syndrome(&map.source.h, e).unwrap(),
        reduced_syndrome(map, &eprime)
    );
    Ok(eprime)
}

/// Finds `(j, λ·x)` with `beta = λ · u_j · x`, `x ∈ [1, a]`, `λ ∈ {±1}`.
fn decompose(field: PrimeField, a: u8, multipliers: &[i16], beta: i32) -> Option<(usize, i64)> {
    for (j, &u) in multipliers.iter().enumerate() {
        for x in 1..=(a as i64) {
            let prod = field.symmetric_of(u as i64 * x).value();
            if prod == beta {
                return Some((j, x));
            }
            if prod == -beta {
                return Some((j, -x));
            }
        }
    }
    None
}

/// Syndrome under the reduced matrix, computed blockwise from the source.
fn reduced_syndrome(map: &ReductionMap, eprime: &FieldVector) -> FieldVector {
    let field = map.field;
    let v = map.v();
    let n = map.source_len();
    let mut folded = FieldVector::zeros(field, n);
    for i in 0..n {
        let mut acc = 0i64;
        for (j, &u) in map.multipliers.iter().enumerate() {
            acc += eprime.get(i * v + j).value() as i64 * u as i64;
        }
        folded.set(i, field.symmetric_of(acc));
    }
    syndrome(&map.source.h, &folded).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{sample_field_vector, sample_matrix, sample_weighted_vector, Seed};

    #[test]
    fn multiplier_set_covers_field() {
        for (p, a) in [(5u16, 1u8), (7, 1), (7, 2), (11, 1), (11, 2), (29, 1), (31, 3)] {
            let field = PrimeField::new(p).unwrap();
            let u = choose_multipliers(field, a);
            let v = u.len();
            // ⌊(q-1)/(2a)⌋ ≤ v ≤ q-1.
            assert!(v as u64 >= ((p as u64 - 1) / (2 * a as u64)));
            assert!(v as u64 <= p as u64 - 1);
            for b in field.nonzero_elements() {
                assert!(
                    decompose(field, a, &u, b.value()).is_some(),
                    "{} not covered over F_{p} at a = {a}",
                    b.value()
                );
            }
        }
    }

    #[test]
    fn greedy_multipliers_for_f7_level1() {
        let field = PrimeField::new(7).unwrap();
        assert_eq!(choose_multipliers(field, 1), vec![1, 2, 3]);
    }

    #[test]
    fn worked_example_over_f7() {
        // H = [[1, 2]] over F_7, s = (3), t = 1, a = 1.
        let field = PrimeField::new(7).unwrap();
        let h = FieldMatrix::from_raw(field, 1, 2, &[1, 2]);
        let s = FieldVector::from_raw(field, &[3]);
        let inst = SdpInstance::new(h, s, 1).unwrap();
        let (reduced, map) = sdp_to_rsdp(&inst, 1).unwrap();
        assert_eq!(map.v(), 3);
        assert_eq!(reduced.n(), 6);
        // Columns are (1,2,3) ⊗-style scalings of (1) and (2): 1,2,3,2,4,6.
        let expect = FieldMatrix::from_raw(field, 1, 6, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(reduced.h(), &expect);
        // e' with a single 1 at index 2 picks column 3 = s.
        let eprime = FieldVector::from_raw(field, &[0, 0, 1, 0, 0, 0]);
        assert!(reduced.is_solution(&eprime));
        // Lifting gives e = (3, 0), and (3,0)·Hᵀ = 3.
        let e = lift_rsdp_solution(&map, &eprime).unwrap();
        assert_eq!(e, FieldVector::from_raw(field, &[3, 0]));
        // Pushing e = (3, 0) back: 3 = 1·3, so block 0 position 2.
        let pushed = push_sdp_solution(&map, &e).unwrap();
        assert_eq!(pushed, eprime);
    }

    #[test]
    fn q3_would_be_identity_like() {
        // For q = 3 the multiplier set is {1} and H' = H; our fields start
        // at 5, where the same collapse happens at a = (q-1)/2.
        let field = PrimeField::new(5).unwrap();
        assert_eq!(choose_multipliers(field, 2), vec![1]);
        let h = FieldMatrix::from_raw(field, 1, 3, &[1, 2, -2]);
        let s = FieldVector::from_raw(field, &[2]);
        let inst = SdpInstance::new(h.clone(), s, 2).unwrap();
        let (reduced, map) = sdp_to_rsdp(&inst, 2).unwrap();
        assert_eq!(map.v(), 1);
        assert_eq!(reduced.h(), &h);
    }

    #[test]
    fn column_count_is_n_times_v() {
        let field = PrimeField::new(11).unwrap();
        let h = sample_matrix(&Seed::from_u64(3), b"h", field, 3, 7);
        let s = FieldVector::zeros(field, 3);
        let inst = SdpInstance::new(h, s, 2).unwrap();
        let (reduced, map) = sdp_to_rsdp(&inst, 1).unwrap();
        assert_eq!(reduced.n(), 7 * map.v());
    }

    #[test]
    fn zero_maps_to_zero() {
        let field = PrimeField::new(7).unwrap();
        let h = sample_matrix(&Seed::from_u64(4), b"h", field, 2, 5);
        let s = FieldVector::zeros(field, 2);
        let inst = SdpInstance::new(h, s, 5).unwrap();
        let (_, map) = sdp_to_rsdp(&inst, 1).unwrap();
        let zero_src = FieldVector::zeros(field, 5);
        let pushed = push_sdp_solution(&map, &zero_src).unwrap();
        assert!(pushed.is_zero());
        let lifted = lift_rsdp_solution(&map, &pushed).unwrap();
        assert!(lifted.is_zero());
    }

    #[test]
    fn push_preserves_syndrome_and_weight_randomized() {
        for trial in 0..1000u64 {
            let seed = Seed::from_u64(trial);
            let q = [5u16, 7, 11][trial as usize % 3];
            let a = 1 + (trial % 2) as u8;
            let field = PrimeField::new(q).unwrap();
            let h = sample_matrix(&seed, b"h", field, 3, 6);
            let e = sample_weighted_vector(&seed, b"e", field, 6, (trial % 7) as usize % 6);
            let s = syndrome(&h, &e).unwrap();
            let t = e.hamming_weight() as u32;
            let inst = SdpInstance::new(h, s, t).unwrap();
            let (reduced, map) = sdp_to_rsdp(&inst, a).unwrap();
            let pushed = push_sdp_solution(&map, &e).unwrap();
            assert_eq!(pushed.hamming_weight(), e.hamming_weight());
            assert!(reduced.is_solution(&pushed), "trial {trial}");
            let lifted = lift_rsdp_solution(&map, &pushed).unwrap();
            assert!(inst.is_solution(&lifted));
        }
    }

    #[test]
    fn lift_rejects_non_solutions() {
        let field = PrimeField::new(7).unwrap();
        let h = sample_matrix(&Seed::from_u64(9), b"h", field, 2, 4);
        let e = sample_field_vector(&Seed::from_u64(9), b"e", field, 4);
        let s = syndrome(&h, &e).unwrap();
        let inst = SdpInstance::new(h, s, 4).unwrap();
        let (_, map) = sdp_to_rsdp(&inst, 1).unwrap();
        // The zero vector has the wrong syndrome unless s = 0.
        if !inst.s.is_zero() {
            let zero = FieldVector::zeros(field, map.target_len());
            assert_eq!(
                lift_rsdp_solution(&map, &zero),
                Err(RsdpError::NotASolution)
            );
        }
        // Out-of-alphabet entries are rejected outright.
        let mut bad = FieldVector::zeros(field, map.target_len());
        bad.set(0, field.symmetric_of(3));
        assert_eq!(lift_rsdp_solution(&map, &bad), Err(RsdpError::NotASolution));
    }
}
