//! Exact dual weight enumerators via the binomial form of the MacWilliams
//! identity.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CodesError, WeightDistribution, WeightEnumerator};

/// Pascal triangle up to row `n`, exact.
pub(crate) fn binomial_table(n: usize) -> Vec<Vec<BigUint>> {
    let mut table = Vec::with_capacity(n + 1);
    for row in 0..=n {
        let mut line = vec![BigUint::one(); row + 1];
        for col in 1..row {
            let prev: &Vec<BigUint> = &table[row - 1];
            line[col] = &prev[col - 1] + &prev[col];
        }
        table.push(line);
    }
    table
}

fn binom(table: &[Vec<BigUint>], n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        table[n][k].clone()
    }
}

/// Coefficient transform: p^k · A_j^dual = Σ_w A_w · U_w(j) with
/// U_w(j) = Σ_{i+l=j} (−1)^i C(w, i) C(n−w, l) (p−1)^l.
/// Every division by p^k must be exact; a remainder signals an inconsistent
/// input enumerator.
pub fn macwilliams_transform(
    a: &WeightEnumerator,
    n: usize,
    k: usize,
    p: u64,
) -> Result<WeightEnumerator, CodesError> {
    if a.coeffs().len() != n + 1 {
        return Err(CodesError::InvalidEnumerator);
    }
    let pk = BigUint::from(p).pow(k as u32);
    let total: BigUint = a.coeffs().iter().sum();
    if total != pk {
        return Err(CodesError::InvalidEnumerator);
    }
    let pk = BigInt::from(pk);
    let table = binomial_table(n);
    let mut pm1_pows = Vec::with_capacity(n + 1);
    let mut acc = BigUint::one();
    for _ in 0..=n {
        pm1_pows.push(acc.clone());
        acc *= p - 1;
    }
    let weights: Vec<(usize, BigInt)> = a
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| (w, BigInt::from(c.clone())))
        .collect();
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut sum = BigInt::zero();
        for (w, aw) in &weights {
            let mut u = BigInt::zero();
            for i in 0..=j.min(*w) {
                let l = j - i;
                if l > n - w {
                    continue;
                }
                let term = binom(&table, *w, i) * binom(&table, n - w, l) * &pm1_pows[l];
                let term = BigInt::from(term);
                if i % 2 == 0 {
                    u += term;
                } else {
                    u -= term;
                }
            }
            sum += aw * u;
        }
        let (q, rem) = sum.div_rem(&pk);
        if !rem.is_zero() || q.is_negative() {
            return Err(CodesError::NonIntegralResult);
        }
        out.push(q.to_biguint().unwrap());
    }
    Ok(WeightEnumerator::new(out))
}

/// Dual weight distribution of an [n, k] code over GF(p) from its primal
/// distribution.
pub fn dual_weight_distribution(
    wd: &WeightDistribution,
    k: usize,
    p: u64,
) -> Result<WeightDistribution, CodesError> {
    let dual = macwilliams_transform(&wd.enumerator(), wd.n(), k, p)?;
    Ok(dual.to_distribution())
}
