//! Closed-form weight distributions of the constructed code families and
//! the low-weight dual coefficients, all in exact integers.
//!
//! The odd-characteristic three-weight forms are singular at r = 0 (they
//! carry a p^(r−1) term); that case degenerates to the one-weight
//! distribution of the linear-part code and is returned directly.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CodesError, WeightDistribution};

fn pow(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

fn to_uint(v: BigInt) -> BigUint {
    assert!(!v.is_negative(), "closed form produced a negative count");
    v.to_biguint().unwrap()
}

fn check_odd_m(m: usize) -> Result<(), CodesError> {
    if m.is_multiple_of(2) {
        return Err(CodesError::EvenM);
    }
    if m < 3 {
        return Err(CodesError::MTooSmall);
    }
    Ok(())
}

fn check_rank(r: usize, min: usize, m: usize) -> Result<(), CodesError> {
    if r < min || r > m {
        return Err(CodesError::RankOutOfRange { rank: r, min, max: m });
    }
    Ok(())
}

fn build(n: usize, entries: Vec<(usize, BigInt)>) -> WeightDistribution {
    let mut counts = BTreeMap::new();
    counts.insert(0, BigUint::one());
    for (w, c) in entries {
        if !c.is_zero() {
            counts.insert(w, to_uint(c));
        }
    }
    WeightDistribution::new(n, counts)
}

/// Three-weight distribution of the binary codes built from an almost bent
/// function and a rank-r subgroup: length 2^m − 1, dimension m + r.
pub fn theoretical_wd_ab(m: usize, r: usize) -> Result<WeightDistribution, CodesError> {
    check_odd_m(m)?;
    check_rank(r, 0, m)?;
    let h = ((m - 1) / 2) as u32;
    let m32 = m as u32;
    let w1 = (1usize << (m - 1)) - (1usize << (h as usize));
    let w2 = 1usize << (m - 1);
    let w3 = (1usize << (m - 1)) + (1usize << (h as usize));
    let two_r = pow(2, r as u32);
    let a1 = (&two_r - 1) * (pow(2, m32 - 2) + pow(2, h - 1));
    let a2 = pow(2, m32 - 1) * (&two_r + 1) - 1;
    let a3 = (&two_r - 1) * (pow(2, m32 - 2) - pow(2, h - 1));
    Ok(build((1 << m) - 1, vec![(w1, a1), (w2, a2), (w3, a3)]))
}

/// Distribution of the length-2^m code at the end of the
/// dual → extend → dual chain for the binary family; requires 1 ≤ r ≤ m.
pub fn theoretical_wd_ext_ab(m: usize, r: usize) -> Result<WeightDistribution, CodesError> {
    check_odd_m(m)?;
    check_rank(r, 1, m)?;
    let h = (m - 1) / 2;
    let m32 = m as u32;
    let w1 = (1usize << (m - 1)) - (1usize << h);
    let w2 = 1usize << (m - 1);
    let w3 = (1usize << (m - 1)) + (1usize << h);
    let wing: BigInt = pow(2, m32 - 1) * (pow(2, r as u32) - 1);
    let middle = pow(2, m32 + r as u32) + pow(2, m32) - 2;
    Ok(build(
        1 << m,
        vec![
            (w1, wing.clone()),
            (w2, middle),
            (w3, wing),
            (1 << m, BigInt::one()),
        ],
    ))
}

/// Weight of the nonzero words of the rank-0 (linear-part only) code.
fn simplex_weight(p: u64, m: usize) -> usize {
    ((p - 1) * p.pow(m as u32 - 1)) as usize
}

fn planar_weights(p: u64, m: usize) -> (usize, usize, usize) {
    let w2 = simplex_weight(p, m);
    let half = p.pow(((m - 1) / 2) as u32) as usize;
    (w2 - half, w2, w2 + half)
}

/// Three-weight distribution for the planar power map x^(p^t+1) family over
/// odd GF(p^m): length p^m − 1, dimension m + r. At r = 0 the code collapses
/// to the one-weight linear-part code.
pub fn theoretical_wd_planar_f1(
    p: u64,
    m: usize,
    r: usize,
) -> Result<WeightDistribution, CodesError> {
    if p == 2 {
        return Err(CodesError::EvenCharacteristic);
    }
    check_odd_m(m)?;
    check_rank(r, 0, m)?;
    let n = (p.pow(m as u32) - 1) as usize;
    let (w1, w2, w3) = planar_weights(p, m);
    if r == 0 {
        return Ok(build(n, vec![(w2, pow(p, m as u32) - 1)]));
    }
    let h = ((m - 1) / 2) as u32;
    let (m32, r32) = (m as u32, r as u32);
    let half_pm1 = BigInt::from((p - 1) / 2);
    let a1 = &half_pm1
        * (pow(p, h + r32) + pow(p, r32 - 1) * (pow(p, m32) + BigInt::from(p) - 2) - pow(p, h)
            - (p - 1) * pow(p, m32 - 1));
    let a2 = pow(p, m32 + r32 - 1) + pow(p, m32 + 1) - 2 * pow(p, m32) + pow(p, m32 - 1)
        - pow(p, r32 + 1)
        + 3 * pow(p, r32)
        - 2 * pow(p, r32 - 1)
        - 1;
    let a3 = &half_pm1
        * (pow(p, r32 - 1) * (pow(p, m32) + BigInt::from(p) - 2) - pow(p, h + r32) + pow(p, h)
            - (p - 1) * pow(p, m32 - 1));
    Ok(build(n, vec![(w1, a1), (w2, a2), (w3, a3)]))
}

/// The p = 3 three-weight form shared by the Coulter–Matthews and
/// Ding–Yuan families; identical to the x^(p^t+1) form at p = 3.
pub fn theoretical_wd_planar_p3(m: usize, r: usize) -> Result<WeightDistribution, CodesError> {
    check_odd_m(m)?;
    check_rank(r, 0, m)?;
    let n = (3u64.pow(m as u32) - 1) as usize;
    let (w1, w2, w3) = planar_weights(3, m);
    if r == 0 {
        return Ok(build(n, vec![(w2, pow(3, m as u32) - 1)]));
    }
    let h = ((m - 1) / 2) as u32;
    let (m32, r32) = (m as u32, r as u32);
    let a1 = pow(3, m32 + r32 - 1) - pow(3, h) - 2 * pow(3, m32 - 1)
        + pow(3, r32 - 1)
        + pow(3, h + r32);
    let a2 = pow(3, m32 + r32 - 1) - 2 * pow(3, r32 - 1) + 4 * pow(3, m32 - 1) - 1;
    let a3 = pow(3, h) - 2 * pow(3, m32 - 1) + pow(3, r32 - 1) - pow(3, h + r32)
        + pow(3, m32 + r32 - 1);
    Ok(build(n, vec![(w1, a1), (w2, a2), (w3, a3)]))
}

/// Distribution of the length-3^m code at the end of the
/// dual → extend → dual chain for the p = 3 planar family; 1 ≤ r ≤ m.
pub fn theoretical_wd_ext_p3(m: usize, r: usize) -> Result<WeightDistribution, CodesError> {
    check_odd_m(m)?;
    check_rank(r, 1, m)?;
    let n = 3usize.pow(m as u32);
    let (w1, w2, w3) = planar_weights(3, m);
    let (m32, r32) = (m as u32, r as u32);
    let wing: BigInt = pow(3, m32) * (pow(3, r32) - 1);
    let middle = pow(3, m32 + r32) + 2 * pow(3, m32) - 3;
    Ok(build(
        n,
        vec![
            (w1, wing.clone()),
            (w2, middle),
            (w3, wing),
            (n, BigInt::from(2)),
        ],
    ))
}

/// Scaled low-weight dual coefficients: `a3` and `a4` (and `a5` when the
/// chain provides one) equal the true coefficients multiplied by `scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDualWeights {
    pub scale: BigUint,
    pub a3: BigUint,
    pub a4: BigUint,
    pub a5: Option<BigUint>,
}

impl ScaledDualWeights {
    fn unscale(v: &BigUint, scale: &BigUint) -> Option<BigUint> {
        let (q, rem) = v.div_rem(scale);
        rem.is_zero().then_some(q)
    }

    /// True A3 coefficient when the scaled value divides exactly.
    pub fn a3_exact(&self) -> Option<BigUint> {
        Self::unscale(&self.a3, &self.scale)
    }

    pub fn a4_exact(&self) -> Option<BigUint> {
        Self::unscale(&self.a4, &self.scale)
    }

    pub fn a5_exact(&self) -> Option<BigUint> {
        self.a5.as_ref().and_then(|v| Self::unscale(v, &self.scale))
    }
}

/// Closed forms for 2^(m+r)·A3 and 2^(m+r)·A4 of the dual of the binary
/// code; both vanish exactly when r = m.
pub fn dual_low_weights_ab(m: usize, r: usize) -> Result<ScaledDualWeights, CodesError> {
    check_odd_m(m)?;
    check_rank(r, 0, m)?;
    let (m32, r32) = (m as u32, r as u32);
    let a3: BigInt = pow(2, m32 - 1) * (pow(2, m32) - pow(2, r32)) * (pow(2, m32) - 2);
    let a4: BigInt = pow(2, m32 - 3) * (pow(2, m32) - pow(2, r32)) * (pow(4, m32) - 3 * pow(2, m32 + 1) + 8);
    let (q3, rem3) = a3.div_rem(&BigInt::from(3));
    let (q4, rem4) = a4.div_rem(&BigInt::from(3));
    assert!(rem3.is_zero() && rem4.is_zero(), "thirds must divide exactly");
    Ok(ScaledDualWeights {
        scale: BigUint::from(2u64).pow(m32 + r32),
        a3: to_uint(q3),
        a4: to_uint(q4),
        a5: None,
    })
}

/// Which dual the closed forms describe for the p = 3 family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualChainVariant {
    /// Dual of the length-(3^m − 1) code; scale 3^(m+r).
    Code,
    /// Dual of the length-3^m chain code (the extended dual itself);
    /// scale 3^(m+r+1).
    Extended,
}

/// Closed forms for the scaled low-weight dual coefficients of the p = 3
/// family. For `Code`: A3 vanishes iff r = m and A4 never does. For
/// `Extended`: A3 and A4 vanish iff r = m; A5 never does.
pub fn dual_low_weights_p3(
    m: usize,
    r: usize,
    variant: DualChainVariant,
) -> Result<ScaledDualWeights, CodesError> {
    check_odd_m(m)?;
    check_rank(r, 0, m)?;
    let (m32, r32) = (m as u32, r as u32);
    match variant {
        DualChainVariant::Code => {
            let a3 = pow(3, m32 - 1) * (4 * pow(3, m32) - 3) * (pow(3, m32) - pow(3, r32));
            let a4: BigInt = pow(3, m32 - 1)
                * (14 * pow(3, m32 + 1) - pow(3, 3 + r32) + 14 * pow(3, m32 + r32 + 1)
                    - pow(3, 2 * m32 + r32 + 1)
                    - 62 * pow(9, m32)
                    + 8 * pow(27, m32));
            let (q4, rem4) = a4.div_rem(&BigInt::from(4));
            assert!(rem4.is_zero(), "quarter must divide exactly");
            Ok(ScaledDualWeights {
                scale: BigUint::from(3u64).pow(m32 + r32),
                a3: to_uint(a3),
                a4: to_uint(q4),
                a5: None,
            })
        }
        DualChainVariant::Extended => {
            check_rank(r, 1, m)?;
            let a3 = pow(9, m32) * (pow(3, m32) - pow(3, r32));
            let a4: BigInt = pow(3, 2 * m32 + 1) * (pow(3, m32) - 3) * (pow(3, m32) - pow(3, r32));
            let a5: BigInt = pow(9, m32)
                * (pow(3, m32) - 3)
                * (pow(9, m32) + 2 * pow(3, r32 + 1) - 7 * pow(3, m32));
            let (q4, rem4) = a4.div_rem(&BigInt::from(4));
            let (q5, rem5) = a5.div_rem(&BigInt::from(4));
            assert!(rem4.is_zero() && rem5.is_zero(), "quarters must divide exactly");
            Ok(ScaledDualWeights {
                scale: BigUint::from(3u64).pow(m32 + r32 + 1),
                a3: to_uint(a3),
                a4: to_uint(q4),
                a5: Some(to_uint(q5)),
            })
        }
    }
}
