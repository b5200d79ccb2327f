//! Minimal-code tests and secret-sharing access-structure summaries for the
//! dual-of-minimal-code construction.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{
    dual_code, for_each_codeword, linalg, CodesError, LinearCode, WeightDistribution,
};

/// Pairwise cover scans are capped at p^k <= 2^14 codewords.
pub const MINIMALITY_SCAN_CAP: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SharingError {
    #[error(transparent)]
    Codes(#[from] CodesError),
    #[error("weight distribution has no nonzero weights")]
    ZeroCode,
    #[error("no minimality evidence supplied for the dual of the base code")]
    DualNotMinimal,
}

impl SharingError {
    pub fn name(&self) -> &'static str {
        match self {
            SharingError::Codes(e) => e.name(),
            SharingError::ZeroCode => "ZeroCode",
            SharingError::DualNotMinimal => "DualNotMinimal",
        }
    }
}

/// Sufficient minimality test: w_min / w_max > (q−1)/q, compared exactly as
/// w_min · q > w_max · (q−1).
pub fn minimality_ratio(wd: &WeightDistribution, q: u64) -> Result<bool, SharingError> {
    let (Some(w_min), Some(w_max)) = (wd.min_nonzero_weight(), wd.max_nonzero_weight()) else {
        return Err(SharingError::ZeroCode);
    };
    Ok((w_min as u128) * (q as u128) > (w_max as u128) * ((q - 1) as u128))
}

/// A pair violating minimality: `covering` properly covers `covered` without
/// being a scalar multiple of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWitness {
    pub covering: Vec<u32>,
    pub covered: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub witness: Option<CoverWitness>,
}

fn support_mask(cw: &[u32]) -> Vec<u64> {
    let mut mask = vec![0u64; cw.len().div_ceil(64)];
    for (i, &e) in cw.iter().enumerate() {
        if e != 0 {
            mask[i / 64] |= 1 << (i % 64);
        }
    }
    mask
}

fn is_scalar_multiple(a: &[u32], b: &[u32], p: u64) -> bool {
    // assumes equal supports; derive the ratio at the first nonzero position
    let Some(pos) = a.iter().position(|&e| e != 0) else {
        return b.iter().all(|&e| e == 0);
    };
    if b[pos] == 0 {
        return false;
    }
    let ratio = b[pos] as u64 * linalg::inv_mod(a[pos] as u64, p) % p;
    a.iter()
        .zip(b)
        .all(|(&x, &y)| (x as u64 * ratio) % p == y as u64)
}

/// Exhaustive pairwise cover scan. Ground truth for minimality; the ratio
/// criterion is only sufficient.
pub fn is_minimal_bruteforce(code: &LinearCode) -> Result<MinimalityReport, SharingError> {
    let mut words: Vec<Vec<u32>> = Vec::new();
    for_each_codeword(code, MINIMALITY_SCAN_CAP, |cw| {
        if cw.iter().any(|&e| e != 0) {
            words.push(cw.to_vec());
        }
    })?;
    let masks: Vec<Vec<u64>> = words.iter().map(|w| support_mask(w)).collect();
    let p = code.p();
    for (i, big) in words.iter().enumerate() {
        for (j, small) in words.iter().enumerate() {
            if i == j {
                continue;
            }
            let contained = masks[j]
                .iter()
                .zip(&masks[i])
                .all(|(&s, &b)| s & b == s);
            if !contained {
                continue;
            }
            if masks[i] == masks[j] {
                if !is_scalar_multiple(big, small, p) {
                    return Ok(MinimalityReport {
                        minimal: false,
                        witness: Some(CoverWitness {
                            covering: big.clone(),
                            covered: small.clone(),
                        }),
                    });
                }
            } else {
                return Ok(MinimalityReport {
                    minimal: false,
                    witness: Some(CoverWitness {
                        covering: big.clone(),
                        covered: small.clone(),
                    }),
                });
            }
        }
    }
    Ok(MinimalityReport {
        minimal: true,
        witness: None,
    })
}

/// How the caller knows the dual of the base code is minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimalityEvidence {
    /// w_min/w_max > (q−1)/q held for the dual's weight distribution.
    RatioCriterion,
    /// An exhaustive pairwise cover scan passed.
    ExhaustiveScan,
    /// Asserted externally.
    External,
}

/// Per-group coverage of the minimal access sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverageRule {
    /// d ≥ 3: every group of t participants lies in the same number of
    /// minimal access sets, for 1 ≤ t ≤ min(n−k−1, d−2).
    Democratic { per_group: BTreeMap<usize, String> },
    /// d = 2: participants whose parity-check column is a scalar multiple of
    /// the secret's column sit in every minimal access set; all others lie in
    /// (q−1)·q^(n−k−2) of them.
    DistanceTwo {
        dictators: Vec<usize>,
        others_count: String,
    },
}

/// Counting summary of the secret-sharing scheme built on `base` (shares
/// from base, access sets from minimal codewords of its dual).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessStructureSummary {
    pub participants: usize,
    pub minimal_access_sets: String,
    pub base_distance: usize,
    pub democratic: bool,
    pub evidence: MinimalityEvidence,
    pub rule: CoverageRule,
}

impl AccessStructureSummary {
    pub fn minimal_access_sets_value(&self) -> BigUint {
        self.minimal_access_sets.parse().unwrap()
    }
}

/// Builds the access-structure summary for an [n, k, d] base code over GF(q)
/// whose dual is minimal. The caller supplies the evidence; `None` is
/// rejected. The base distance is computed through the dual side, which must
/// be small enough to enumerate.
pub fn access_structure(
    base: &LinearCode,
    evidence: Option<MinimalityEvidence>,
) -> Result<AccessStructureSummary, SharingError> {
    let evidence = evidence.ok_or(SharingError::DualNotMinimal)?;
    let q = base.p();
    let n = base.n();
    let k = base.dimension();
    let dual = dual_code(base);
    let dual_wd = crate::codes::enumerate_weight_distribution(&dual)?;
    let base_wd = crate::codes::dual_weight_distribution(&dual_wd, dual.dimension(), q)?;
    let d = base_wd.min_nonzero_weight().ok_or(SharingError::ZeroCode)?;
    let redundancy = n - k; // = dim of the dual
    let total = BigUint::from(q).pow(redundancy as u32 - 1);
    let rule = if d == 2 {
        // parity-check matrix = generator of the dual; compare columns to h0
        let h = dual.canonical_generators();
        let col = |i: usize| -> Vec<u32> { h.iter().map(|row| row[i]).collect() };
        let h0 = col(0);
        let dictators = (1..n)
            .filter(|&i| {
                let hi = col(i);
                support_mask(&hi) == support_mask(&h0) && is_scalar_multiple(&h0, &hi, q)
            })
            .collect();
        CoverageRule::DistanceTwo {
            dictators,
            others_count: (BigUint::from(q - 1)
                * BigUint::from(q).pow(redundancy as u32 - 2))
            .to_string(),
        }
    } else {
        let t_max = (redundancy - 1).min(d.saturating_sub(2));
        let mut per_group = BTreeMap::new();
        for t in 1..=t_max {
            let count = BigUint::from(q - 1).pow(t as u32)
                * BigUint::from(q).pow((redundancy - t - 1) as u32);
            per_group.insert(t, count.to_string());
        }
        CoverageRule::Democratic { per_group }
    };
    Ok(AccessStructureSummary {
        participants: n - 1,
        minimal_access_sets: total.to_string(),
        base_distance: d,
        democratic: d >= 3,
        evidence,
        rule,
    })
}

/// Direct enumeration of the minimal access sets: minimal codewords of the
/// dual of `base`, normalized to 1 at the secret coordinate 0, mapped to
/// their participant sets supp(c) \\ {0}.
#[derive(Clone, Debug)]
pub struct MasseyEnumeration {
    /// Participant index sets (1-based coordinates).
    pub access_sets: Vec<Vec<usize>>,
    /// Membership count per participant (index 1..n−1 used).
    pub memberships: Vec<u64>,
}

pub fn enumerate_minimal_access_sets(base: &LinearCode) -> Result<MasseyEnumeration, SharingError> {
    let dual = dual_code(base);
    // when the dual is minimal, every normalized codeword yields a minimal
    // access set and distinct codewords have distinct supports
    if !is_minimal_bruteforce(&dual)?.minimal {
        return Err(SharingError::DualNotMinimal);
    }
    let mut access_sets = Vec::new();
    let mut memberships = vec![0u64; base.n()];
    for_each_codeword(&dual, MINIMALITY_SCAN_CAP, |cw| {
        if cw[0] != 1 {
            return; // keep exactly one representative per scalar class
        }
        let set: Vec<usize> = cw
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect();
        for &i in &set {
            memberships[i] += 1;
        }
        access_sets.push(set);
    })?;
    access_sets.sort();
    Ok(MasseyEnumeration {
        access_sets,
        memberships,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_code, enumerate_weight_distribution, Provenance};
    use crate::functions::{FunctionSpec, NonlinearFunction};
    use crate::galois::{AdditiveSubgroup, Field};

    fn primal_code(p: u64, m: usize, r: usize) -> LinearCode {
        let f = Field::new(p, m).unwrap();
        let spec = if p == 2 {
            FunctionSpec::Gold { i: 1 }
        } else {
            FunctionSpec::DembowskiOstrom { t: 0 }
        };
        let g = NonlinearFunction::new(&f, spec).unwrap();
        let sub = AdditiveSubgroup::canonical(&f, r).unwrap();
        build_code(&g, &sub).unwrap()
    }

    #[test]
    fn ratio_criterion_values() {
        let wd = enumerate_weight_distribution(&primal_code(2, 5, 5)).unwrap();
        assert!(minimality_ratio(&wd, 2).unwrap()); // 12/20 > 1/2
        let wd = enumerate_weight_distribution(&primal_code(2, 3, 3)).unwrap();
        assert!(!minimality_ratio(&wd, 2).unwrap()); // 2/6 <= 1/2
        let wd = enumerate_weight_distribution(&primal_code(3, 3, 3)).unwrap();
        assert!(minimality_ratio(&wd, 3).unwrap()); // 15/21 > 2/3
        let zero = WeightDistribution::from_u64_counts(5, &[(0, 1)]);
        assert_eq!(minimality_ratio(&zero, 2).unwrap_err(), SharingError::ZeroCode);
    }

    #[test]
    fn bruteforce_agrees_with_ratio() {
        let report = is_minimal_bruteforce(&primal_code(2, 5, 5)).unwrap();
        assert!(report.minimal);
        let report = is_minimal_bruteforce(&primal_code(3, 3, 3)).unwrap();
        assert!(report.minimal);
    }

    #[test]
    fn bruteforce_finds_witness_at_m3() {
        let report = is_minimal_bruteforce(&primal_code(2, 3, 3)).unwrap();
        assert!(!report.minimal);
        let witness = report.witness.unwrap();
        let wt = |v: &[u32]| v.iter().filter(|&&e| e != 0).count();
        assert!(wt(&witness.covered) < wt(&witness.covering));
    }

    #[test]
    fn single_row_code_is_minimal() {
        let code = LinearCode::from_rows(
            3,
            4,
            vec![vec![1, 2, 0, 1]],
            Provenance::new("toy"),
        );
        assert!(is_minimal_bruteforce(&code).unwrap().minimal);
    }

    #[test]
    fn access_structure_binary_example() {
        // base = [31, 21, 5], the dual of the full-subgroup m=5 code
        let base = crate::codes::dual_code(&primal_code(2, 5, 5));
        assert_eq!((base.n(), base.dimension()), (31, 21));
        let summary =
            access_structure(&base, Some(MinimalityEvidence::RatioCriterion)).unwrap();
        assert_eq!(summary.participants, 30);
        assert_eq!(summary.base_distance, 5);
        assert_eq!(
            summary.minimal_access_sets_value(),
            BigUint::from(512u32)
        );
        match &summary.rule {
            CoverageRule::Democratic { per_group } => {
                assert_eq!(per_group.len(), 3); // t in 1..=min(9, 3)
                assert_eq!(per_group[&1], "256");
                assert_eq!(per_group[&2], "128");
                assert_eq!(per_group[&3], "64");
            }
            other => panic!("expected democratic rule, got {other:?}"),
        }
        assert!(summary.democratic);
    }

    #[test]
    fn access_structure_ternary_example() {
        let base = crate::codes::dual_code(&primal_code(3, 3, 3));
        assert_eq!((base.n(), base.dimension()), (26, 20));
        let summary =
            access_structure(&base, Some(MinimalityEvidence::RatioCriterion)).unwrap();
        assert_eq!(summary.participants, 25);
        assert_eq!(summary.base_distance, 4);
        assert_eq!(summary.minimal_access_sets_value(), BigUint::from(243u32));
        match &summary.rule {
            CoverageRule::Democratic { per_group } => {
                assert_eq!(per_group.len(), 2); // t in 1..=min(5, 2)
                assert_eq!(per_group[&1], "162");
                assert_eq!(per_group[&2], "108");
            }
            other => panic!("expected democratic rule, got {other:?}"),
        }
    }

    #[test]
    fn evidence_flag_is_required() {
        let base = crate::codes::dual_code(&primal_code(2, 5, 5));
        assert_eq!(
            access_structure(&base, None).unwrap_err(),
            SharingError::DualNotMinimal
        );
    }

    #[test]
    fn massey_enumeration_matches_counts() {
        let base = crate::codes::dual_code(&primal_code(2, 5, 5));
        let massey = enumerate_minimal_access_sets(&base).unwrap();
        assert_eq!(massey.access_sets.len(), 512);
        for i in 1..31 {
            assert_eq!(massey.memberships[i], 256);
        }

        let base = crate::codes::dual_code(&primal_code(3, 3, 3));
        let massey = enumerate_minimal_access_sets(&base).unwrap();
        assert_eq!(massey.access_sets.len(), 243);
        for i in 1..26 {
            assert_eq!(massey.memberships[i], 162);
        }
    }

    #[test]
    fn distance_two_branch_reports_dictators() {
        // base with d = 2: two proportional columns in the parity check
        let base = LinearCode::from_rows(
            2,
            4,
            vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]],
            Provenance::new("toy-d2"),
        );
        let summary = access_structure(&base, Some(MinimalityEvidence::External)).unwrap();
        assert_eq!(summary.base_distance, 2);
        assert!(!summary.democratic);
        match &summary.rule {
            CoverageRule::DistanceTwo { dictators, others_count } => {
                assert_eq!(dictators, &vec![1]);
                assert_eq!(others_count, "1");
            }
            other => panic!("expected distance-two rule, got {other:?}"),
        }
    }
}
