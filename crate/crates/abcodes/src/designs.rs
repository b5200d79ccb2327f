//! Combinatorial designs from fixed-weight codeword supports: parameter
//! derivation, block extraction, and brute-force verification.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::{binomial, Integer};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{
    for_each_codeword, theoretical_wd_ext_ab, CodesError, LinearCode, WeightDistribution,
    ENUMERATION_CAP,
};

/// Membership tests are capped at C(n, t) · |blocks| elementary checks.
pub const DESIGN_CHECK_CAP: u128 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error(transparent)]
    Codes(#[from] CodesError),
    #[error("weight {0} has no codewords (or is a trivial full/empty support)")]
    WeightNotRealized(usize),
    #[error("design index lambda is not integral")]
    NonIntegralLambda,
    #[error("distinct supports do not match the multiplicity for weight {weight}: expected {expected}, found {found}")]
    BlockCountMismatch {
        weight: usize,
        expected: String,
        found: usize,
    },
    #[error("verification refused: C(n, t) x blocks exceeds the work cap")]
    TooLarge,
    #[error("design strength t must satisfy 1 <= t <= block size")]
    InvalidStrength,
}

impl DesignError {
    pub fn name(&self) -> &'static str {
        match self {
            DesignError::Codes(e) => e.name(),
            DesignError::WeightNotRealized(_) => "WeightNotRealized",
            DesignError::NonIntegralLambda => "NonIntegralLambda",
            DesignError::BlockCountMismatch { .. } => "BlockCountMismatch",
            DesignError::TooLarge => "TooLarge",
            DesignError::InvalidStrength => "InvalidStrength",
        }
    }
}

/// Parameters of a t-(n, k, lambda) design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub t: usize,
    pub points: usize,
    pub block_size: usize,
    pub lambda: String,
}

impl DesignParams {
    pub fn new(t: usize, points: usize, block_size: usize, lambda: BigUint) -> Self {
        DesignParams {
            t,
            points,
            block_size,
            lambda: lambda.to_string(),
        }
    }

    pub fn lambda_value(&self) -> BigUint {
        self.lambda.parse().expect("lambda is a decimal string")
    }

    /// Necessary divisibility condition: C(k−i, t−i) divides
    /// lambda · C(n−i, t−i) for all 0 ≤ i ≤ t.
    pub fn divisibility_holds(&self) -> bool {
        let lambda = self.lambda_value();
        for i in 0..=self.t {
            let denom = binomial(
                BigUint::from((self.block_size - i) as u64),
                BigUint::from((self.t - i) as u64),
            );
            let numer = &lambda
                * binomial(
                    BigUint::from((self.points - i) as u64),
                    BigUint::from((self.t - i) as u64),
                );
            if !numer.mod_floor(&denom).is_zero() {
                return false;
            }
        }
        true
    }
}

/// Design parameters carried by the weight-k words of the binary
/// dual→extend→dual chain code: a 3-design when r = m, a 1-design otherwise,
/// with lambda from the block multiplicity. Division must be exact.
pub fn design_params_ab(m: usize, r: usize, k: usize) -> Result<DesignParams, DesignError> {
    let wd = theoretical_wd_ext_ab(m, r)?;
    let n = 1usize << m;
    if k == 0 || k == n {
        return Err(DesignError::WeightNotRealized(k));
    }
    let a_k = wd.count(k);
    if a_k.is_zero() {
        return Err(DesignError::WeightNotRealized(k));
    }
    let (t, numer, denom) = if r == m {
        (
            3usize,
            BigUint::from((k * (k - 1) * (k - 2)) as u64) * &a_k,
            BigUint::from((n * (n - 1) * (n - 2)) as u64),
        )
    } else {
        (
            1usize,
            BigUint::from(k as u64) * &a_k,
            BigUint::from(n as u64),
        )
    };
    let (lambda, rem) = numer.div_rem(&denom);
    if !rem.is_zero() {
        return Err(DesignError::NonIntegralLambda);
    }
    Ok(DesignParams::new(t, n, k, lambda))
}

/// Deduplicated supports of the weight-k codewords, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    n: usize,
    block_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockSet {
    pub fn new(n: usize, block_size: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.sort();
        BlockSet {
            n,
            block_size,
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn to_record(&self) -> BlockSetRecord {
        BlockSetRecord {
            n: self.n,
            k: self.block_size,
            blocks: self.blocks.clone(),
        }
    }

    fn bitmasks(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        self.blocks
            .iter()
            .map(|b| {
                let mut mask = vec![0u64; words];
                for &i in b {
                    mask[i / 64] |= 1 << (i % 64);
                }
                mask
            })
            .collect()
    }
}

/// JSON shape: {"n": .., "k": .., "blocks": [[..], ..]} with blocks sorted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockSetRecord {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

/// Extracts the supports of all weight-k codewords and checks the expected
/// dedup arithmetic: distinct supports = A_k for p = 2 and A_k/(p−1) for odd
/// p (scalar multiples share a support).
pub fn extract_blocks(code: &LinearCode, k: usize) -> Result<BlockSet, DesignError> {
    if k == 0 || k > code.n() {
        return Err(DesignError::WeightNotRealized(k));
    }
    let mut supports: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut words = BigUint::zero();
    for_each_codeword(code, ENUMERATION_CAP, |cw| {
        let weight = cw.iter().filter(|&&e| e != 0).count();
        if weight == k {
            words += 1u32;
            supports.insert(
                cw.iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, _)| i)
                    .collect(),
            );
        }
    })?;
    if words.is_zero() {
        return Err(DesignError::WeightNotRealized(k));
    }
    let p = code.p();
    let expected = if p == 2 {
        words.clone()
    } else {
        let (q, rem) = words.div_rem(&BigUint::from(p - 1));
        if !rem.is_zero() {
            return Err(DesignError::BlockCountMismatch {
                weight: k,
                expected: format!("{words}/(p-1)"),
                found: supports.len(),
            });
        }
        q
    };
    if BigUint::from(supports.len()) != expected {
        return Err(DesignError::BlockCountMismatch {
            weight: k,
            expected: expected.to_string(),
            found: supports.len(),
        });
    }
    Ok(BlockSet::new(code.n(), k, supports.into_iter().collect()))
}

/// Outcome of a brute-force design check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignVerdict {
    Design {
        lambda: u64,
    },
    /// Two t-subsets with different containment counts.
    NotADesign {
        first: Vec<usize>,
        first_count: u64,
        second: Vec<usize>,
        second_count: u64,
    },
}

impl DesignVerdict {
    pub fn lambda(&self) -> Option<u64> {
        match self {
            DesignVerdict::Design { lambda } => Some(*lambda),
            DesignVerdict::NotADesign { .. } => None,
        }
    }
}

fn subset_count(n: usize, t: usize) -> Option<u128> {
    binomial(BigUint::from(n as u64), BigUint::from(t as u64)).to_u128()
}

/// Counts, for every t-subset of the point set in lexicographic order, how
/// many blocks contain it; stops at the first disagreement and reports the
/// witness pair.
pub fn verify_design(blocks: &BlockSet, t: usize) -> Result<DesignVerdict, DesignError> {
    if t == 0 || t > blocks.block_size() {
        return Err(DesignError::InvalidStrength);
    }
    let n = blocks.n();
    let work = subset_count(n, t)
        .and_then(|c| c.checked_mul(blocks.len() as u128))
        .ok_or(DesignError::TooLarge)?;
    if work > DESIGN_CHECK_CAP {
        return Err(DesignError::TooLarge);
    }
    let masks = blocks.bitmasks();
    let words = n.div_ceil(64);
    let mut subset: Vec<usize> = (0..t).collect();
    let mut subset_mask = vec![0u64; words];
    let mut reference: Option<(Vec<usize>, u64)> = None;
    loop {
        subset_mask.iter_mut().for_each(|w| *w = 0);
        for &i in &subset {
            subset_mask[i / 64] |= 1 << (i % 64);
        }
        let count = masks
            .iter()
            .filter(|m| {
                m.iter()
                    .zip(&subset_mask)
                    .all(|(&block, &sub)| block & sub == sub)
            })
            .count() as u64;
        match &reference {
            None => reference = Some((subset.clone(), count)),
            Some((first, first_count)) => {
                if count != *first_count {
                    return Ok(DesignVerdict::NotADesign {
                        first: first.clone(),
                        first_count: *first_count,
                        second: subset,
                        second_count: count,
                    });
                }
            }
        }
        // next lexicographic t-subset
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(DesignVerdict::Design {
                    lambda: reference.unwrap().1,
                });
            }
            i -= 1;
            if subset[i] != i + n - t {
                subset[i] += 1;
                for j in i + 1..t {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Applicability test for deriving designs from the fixed-weight supports of
/// the code with distribution `wd`, whose dual has distribution `dual_wd`:
/// requires t < d(dual) and s ≤ d(dual) − t, where s counts the nonzero
/// weights of `wd` in (0, n−t].
pub fn assmus_mattson_applicable(
    wd: &WeightDistribution,
    dual_wd: &WeightDistribution,
    t: usize,
) -> bool {
    let n = wd.n();
    let Some(d) = dual_wd.min_nonzero_weight() else {
        return false;
    };
    if t >= d || t > n {
        return false;
    }
    let s = wd
        .counts()
        .keys()
        .filter(|&&w| w > 0 && w <= n - t)
        .count();
    s <= d - t
}
