//! Exact arithmetic in GF(p^m) with a polynomial-basis representation,
//! the absolute trace map, and additive subgroups.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic {0} exceeds the supported bound 2^16")]
    CharacteristicTooLarge(u64),
    #[error("field order p^m does not fit in 64 bits")]
    FieldTooLarge,
    #[error("modulus must be monic of degree m with coefficients below p")]
    InvalidModulus,
    #[error("modulus is reducible over GF(p)")]
    ReducibleModulus,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis elements are linearly dependent over GF(p)")]
    DependentBasis,
    #[error("rank {rank} out of range for extension degree {degree}")]
    RankOutOfRange { rank: usize, degree: usize },
    #[error("encoding {0} is not in [0, p^m)")]
    EncodingOutOfRange(u64),
    #[error("coefficient vector must have length m with entries below p")]
    InvalidCoefficients,
}

impl GaloisError {
    /// Stable identifier for scripting against the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            GaloisError::NonPrime(_) => "NonPrime",
            GaloisError::CharacteristicTooLarge(_) => "CharacteristicTooLarge",
            GaloisError::FieldTooLarge => "FieldTooLarge",
            GaloisError::InvalidModulus => "InvalidModulus",
            GaloisError::ReducibleModulus => "ReducibleModulus",
            GaloisError::MixedFields => "MixedFields",
            GaloisError::DivisionByZero => "DivisionByZero",
            GaloisError::DependentBasis => "DependentBasis",
            GaloisError::RankOutOfRange { .. } => "RankOutOfRange",
            GaloisError::EncodingOutOfRange(_) => "EncodingOutOfRange",
            GaloisError::InvalidCoefficients => "InvalidCoefficients",
        }
    }
}

/// Parameters of GF(p^m): the prime, the extension degree, and the monic
/// irreducible modulus in little-endian coefficient order.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldParams {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
}

/// A handle to GF(p^m). Cheap to clone; two handles compare equal when they
/// carry the same (p, m, modulus).
#[derive(Clone)]
pub struct Field {
    params: Arc<FieldParams>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.params, &other.params) || *self.params == *other.params
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.m())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo a monic divisor, both little-endian over GF(p).
fn poly_rem(mut a: Vec<u64>, divisor: &[u64], p: u64) -> Vec<u64> {
    let dd = divisor.len() - 1;
    while a.len() > dd {
        let lead = *a.last().unwrap();
        if lead != 0 {
            let shift = a.len() - 1 - dd;
            for (i, &c) in divisor.iter().enumerate() {
                let cur = a[shift + i];
                a[shift + i] = (cur + (p - (lead * c) % p)) % p;
            }
        }
        a.pop();
    }
    a
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Trial-division irreducibility test over GF(p); fine at desk scale.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    let mut divisor = vec![0u64; 0];
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for e in 0..count {
            divisor.clear();
            let mut v = e;
            for _ in 0..d {
                divisor.push(v % p);
                v /= p;
            }
            divisor.push(1);
            let rem = poly_rem(modulus.to_vec(), &divisor, p);
            if poly_is_zero(&rem) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(p^m) with the deterministic modulus: the lexicographically smallest
    /// monic irreducible of degree m, ordered by the integer encoding of its
    /// lower coefficients.
    pub fn new(p: u64, m: usize) -> Result<Field, GaloisError> {
        Self::validate_pm(p, m)?;
        let count = checked_order(p, m).ok_or(GaloisError::FieldTooLarge)?;
        for e in 0..count {
            let mut modulus = decode_coeffs(e, p, m);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return Ok(Field {
                    params: Arc::new(FieldParams { p, m, modulus }),
                });
            }
        }
        unreachable!("an irreducible monic polynomial of each degree exists over GF(p)")
    }

    /// GF(p^m) with a caller-supplied monic irreducible modulus
    /// (little-endian, length m+1).
    pub fn with_modulus(p: u64, m: usize, modulus: Vec<u64>) -> Result<Field, GaloisError> {
        Self::validate_pm(p, m)?;
        checked_order(p, m).ok_or(GaloisError::FieldTooLarge)?;
        if modulus.len() != m + 1 || modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(GaloisError::InvalidModulus);
        }
        if !is_irreducible(&modulus, p) {
            return Err(GaloisError::ReducibleModulus);
        }
        Ok(Field {
            params: Arc::new(FieldParams { p, m, modulus }),
        })
    }

    fn validate_pm(p: u64, m: usize) -> Result<(), GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NonPrime(p));
        }
        if p > 1 << 16 {
            return Err(GaloisError::CharacteristicTooLarge(p));
        }
        if m == 0 {
            return Err(GaloisError::InvalidModulus);
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    /// p^m as a u64 (construction guarantees it fits).
    pub fn order(&self) -> u64 {
        checked_order(self.params.p, self.params.m).unwrap()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.params.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m()],
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.m()];
        coeffs[0] = 1;
        FieldElement {
            coeffs,
            field: self.clone(),
        }
    }

    /// The element with the given integer encoding enc(x) = Σ coeffs[i]·p^i.
    pub fn element_from_encoding(&self, enc: u64) -> Result<FieldElement, GaloisError> {
        if enc >= self.order() {
            return Err(GaloisError::EncodingOutOfRange(enc));
        }
        Ok(FieldElement {
            coeffs: decode_coeffs(enc, self.p(), self.m()),
            field: self.clone(),
        })
    }

    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, GaloisError> {
        if coeffs.len() != self.m() || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(GaloisError::InvalidCoefficients);
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
            field: self.clone(),
        })
    }

    /// All field elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |e| self.element_from_encoding(e).unwrap())
    }

    /// Nonzero elements in increasing encoding order; this is the coordinate
    /// order used by every code built downstream.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order()).map(move |e| self.element_from_encoding(e).unwrap())
    }

    /// Embeds a GF(p) scalar.
    pub fn from_scalar(&self, s: u64) -> FieldElement {
        let mut coeffs = vec![0; self.m()];
        coeffs[0] = s % self.p();
        FieldElement {
            coeffs,
            field: self.clone(),
        }
    }
}

fn checked_order(p: u64, m: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

fn decode_coeffs(mut e: u64, p: u64, m: usize) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(m);
    for _ in 0..m {
        coeffs.push(e % p);
        e /= p;
    }
    coeffs
}

/// An element of GF(p^m) in the polynomial basis; coefficient of x^i at
/// index i.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    field: Field,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{:?}", self.encoding(), self.field)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Integer encoding Σ coeffs[i]·p^i; a bijection onto [0, p^m).
    pub fn encoding(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, other: &FieldElement) -> Result<(), GaloisError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GaloisError::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.check_same_field(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.check_same_field(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p();
        FieldElement {
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.check_same_field(other)?;
        let p = self.field.p();
        let m = self.field.m();
        // schoolbook product then reduction; m is small throughout
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let mut rem = poly_rem(prod, self.field.modulus(), p);
        rem.resize(m, 0);
        Ok(FieldElement {
            coeffs: rem,
            field: self.field.clone(),
        })
    }

    /// Multiplies by a GF(p) scalar.
    pub fn scale(&self, s: u64) -> FieldElement {
        let p = self.field.p();
        let s = s % p;
        FieldElement {
            coeffs: self.coeffs.iter().map(|&a| (a * s) % p).collect(),
            field: self.field.clone(),
        }
    }

    /// x^exp by square-and-multiply; the exponent is applied as written and
    /// never reduced mod p^m − 1. x^0 = 1 for every x including 0.
    pub fn pow(&self, exp: &BigUint) -> FieldElement {
        let mut result = self.field.one();
        if exp.is_zero() {
            return result;
        }
        let mut base = self.clone();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                result = result.mul(&base).unwrap();
            }
            if i + 1 < bits {
                base = base.mul(&base).unwrap();
            }
        }
        result
    }

    pub fn pow_u64(&self, exp: u64) -> FieldElement {
        self.pow(&BigUint::from(exp))
    }

    /// Multiplicative inverse via x^(p^m − 2).
    pub fn inv(&self) -> Result<FieldElement, GaloisError> {
        if self.is_zero() {
            return Err(GaloisError::DivisionByZero);
        }
        let order = BigUint::from(self.field.order());
        Ok(self.pow(&(order - 2u32)))
    }

    /// Absolute trace Σ x^(p^i) for i = 0..m, returned as a GF(p) scalar.
    pub fn trace(&self) -> u64 {
        let p = self.field.p();
        let mut acc = self.field.zero();
        let mut power = self.clone();
        for i in 0..self.field.m() {
            acc = acc.add(&power).unwrap();
            if i + 1 < self.field.m() {
                power = power.pow_u64(p);
            }
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace not in GF(p)");
        acc.coeffs[0]
    }
}

/// An additive subgroup of (GF(p^m), +) of order p^r, stored as a GF(p)-basis
/// with all members materialized in increasing encoding order.
#[derive(Clone, Debug)]
pub struct AdditiveSubgroup {
    field: Field,
    basis: Vec<FieldElement>,
    elements: Vec<FieldElement>,
}

impl AdditiveSubgroup {
    /// Spans the given basis; rejects GF(p)-dependent sets.
    pub fn from_basis(field: &Field, basis: Vec<FieldElement>) -> Result<Self, GaloisError> {
        for b in &basis {
            if b.field() != field {
                return Err(GaloisError::MixedFields);
            }
        }
        if basis.len() > field.m() {
            return Err(GaloisError::DependentBasis);
        }
        let p = field.p();
        let mut encodings = vec![field.zero()];
        for b in &basis {
            let mut next = Vec::with_capacity(encodings.len() * p as usize);
            for e in &encodings {
                let mut shifted = e.clone();
                next.push(shifted.clone());
                for _ in 1..p {
                    shifted = shifted.add(b).unwrap();
                    next.push(shifted.clone());
                }
            }
            encodings = next;
        }
        let expected = (p as u128).pow(basis.len() as u32);
        let mut seen: Vec<u64> = encodings.iter().map(|e| e.encoding()).collect();
        seen.sort_unstable();
        seen.dedup();
        if (seen.len() as u128) != expected {
            return Err(GaloisError::DependentBasis);
        }
        let elements = seen
            .into_iter()
            .map(|e| field.element_from_encoding(e).unwrap())
            .collect();
        Ok(AdditiveSubgroup {
            field: field.clone(),
            basis,
            elements,
        })
    }

    /// The subgroup spanned by the first r polynomial-basis monomials
    /// {1, x, …, x^(r−1)}; r = m gives the whole additive group.
    pub fn canonical(field: &Field, r: usize) -> Result<Self, GaloisError> {
        if r > field.m() {
            return Err(GaloisError::RankOutOfRange {
                rank: r,
                degree: field.m(),
            });
        }
        let mut basis = Vec::with_capacity(r);
        for j in 0..r {
            let mut coeffs = vec![0; field.m()];
            coeffs[j] = 1;
            basis.push(field.element_from_coeffs(&coeffs).unwrap());
        }
        Self::from_basis(field, basis)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Members sorted by increasing integer encoding.
    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let enc = x.encoding();
        self.elements
            .binary_search_by_key(&enc, |e| e.encoding())
            .is_ok()
    }

    /// Short display of the basis encodings, e.g. "{1,3,9}".
    pub fn describe(&self) -> String {
        let encs: Vec<String> = self.basis.iter().map(|b| b.encoding().to_string()).collect();
        format!("{{{}}}", encs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducible_modulus_is_deterministic() {
        let f = Field::new(2, 3).unwrap();
        // x^3 + x + 1, encoding 11
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]); // plain x for the prime field
        let f = Field::new(2, 5).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 0, 0, 1]); // x^5 + x^2 + 1
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(Field::new(4, 2).unwrap_err(), GaloisError::NonPrime(4));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        let err = Field::with_modulus(2, 2, vec![1, 0, 1]).unwrap_err();
        assert_eq!(err, GaloisError::ReducibleModulus);
        assert!(Field::with_modulus(2, 2, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn gf8_alpha_cubed() {
        let f = Field::new(2, 3).unwrap();
        let alpha = f.element_from_encoding(2).unwrap();
        let cubed = alpha.mul(&alpha).unwrap().mul(&alpha).unwrap();
        // x^3 = x + 1 mod x^3+x+1
        assert_eq!(cubed.encoding(), 3);
    }

    #[test]
    fn inverse_roundtrip() {
        for (p, m) in [(2, 3), (3, 2), (5, 2), (7, 1)] {
            let f = Field::new(p, m).unwrap();
            for x in f.nonzero_elements() {
                let inv = x.inv().unwrap();
                assert_eq!(x.mul(&inv).unwrap(), f.one());
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.zero().inv().unwrap_err(), GaloisError::DivisionByZero);
    }

    #[test]
    fn pow_order_gives_one() {
        let f = Field::new(3, 2).unwrap();
        for x in f.nonzero_elements() {
            assert_eq!(x.pow_u64(f.order() - 1), f.one());
        }
    }

    #[test]
    fn pow_accepts_big_exponents() {
        let f = Field::new(2, 5).unwrap();
        let x = f.element_from_encoding(7).unwrap();
        // x^(2^100) = frobenius^100(x) = x^(2^(100 mod 5))
        let big = BigUint::from(2u32).pow(100);
        assert_eq!(x.pow(&big), x.pow_u64(1 << (100 % 5)));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f1 = Field::new(2, 3).unwrap();
        let f2 = Field::new(2, 5).unwrap();
        let a = f1.one();
        let b = f2.one();
        assert_eq!(a.add(&b).unwrap_err(), GaloisError::MixedFields);
        assert_eq!(a.mul(&b).unwrap_err(), GaloisError::MixedFields);
    }

    #[test]
    fn trace_examples() {
        let f = Field::new(2, 3).unwrap();
        let alpha = f.element_from_encoding(2).unwrap();
        assert_eq!(alpha.trace(), 0); // alpha + alpha^2 + alpha^4 = 0 in GF(8)
        assert_eq!(f.zero().trace(), 0);
        for (p, m) in [(2u64, 3usize), (3, 3), (5, 2)] {
            let f = Field::new(p, m).unwrap();
            assert_eq!(f.one().trace(), (m as u64) % p);
        }
    }

    #[test]
    fn trace_is_additive_and_balanced() {
        for (p, m) in [(2u64, 4usize), (3, 3), (5, 2)] {
            let f = Field::new(p, m).unwrap();
            let elems: Vec<_> = f.elements().collect();
            for x in elems.iter().take(12) {
                for y in elems.iter().take(12) {
                    let sum = x.add(y).unwrap();
                    assert_eq!(sum.trace(), (x.trace() + y.trace()) % p);
                }
            }
            let mut counts = vec![0u64; p as usize];
            for x in &elems {
                counts[x.trace() as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == p.pow(m as u32 - 1)));
        }
    }

    #[test]
    fn frobenius_matches_pow_p() {
        for (p, m) in [(2u64, 4usize), (3, 3)] {
            let f = Field::new(p, m).unwrap();
            for x in f.elements() {
                for y in f.elements().take(6) {
                    // (x+y)^p = x^p + y^p
                    let lhs = x.add(&y).unwrap().pow_u64(p);
                    let rhs = x.pow_u64(p).add(&y.pow_u64(p)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn subgroup_span_and_rejection() {
        let f = Field::new(2, 3).unwrap();
        let one = f.one();
        let alpha = f.element_from_encoding(2).unwrap();
        let sub = AdditiveSubgroup::from_basis(&f, vec![one.clone(), alpha.clone()]).unwrap();
        let encs: Vec<u64> = sub.elements().iter().map(|e| e.encoding()).collect();
        assert_eq!(encs, vec![0, 1, 2, 3]);

        let empty = AdditiveSubgroup::from_basis(&f, vec![]).unwrap();
        assert_eq!(empty.order(), 1);
        assert_eq!(empty.elements()[0].encoding(), 0);

        let dep = AdditiveSubgroup::from_basis(
            &f,
            vec![one.clone(), alpha.clone(), one.add(&alpha).unwrap()],
        );
        assert_eq!(dep.unwrap_err(), GaloisError::DependentBasis);
    }

    #[test]
    fn canonical_subgroups() {
        let f = Field::new(2, 5).unwrap();
        assert_eq!(AdditiveSubgroup::canonical(&f, 5).unwrap().order(), 32);
        assert_eq!(AdditiveSubgroup::canonical(&f, 0).unwrap().order(), 1);
        assert!(matches!(
            AdditiveSubgroup::canonical(&f, 6).unwrap_err(),
            GaloisError::RankOutOfRange { .. }
        ));
        let f27 = Field::new(3, 3).unwrap();
        let sub = AdditiveSubgroup::canonical(&f27, 2).unwrap();
        assert_eq!(sub.order(), 9);
        let encs: Vec<u64> = sub.elements().iter().map(|e| e.encoding()).collect();
        assert_eq!(encs, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn subgroup_closed_under_addition() {
        let f = Field::new(3, 3).unwrap();
        let basis = vec![
            f.element_from_encoding(4).unwrap(),
            f.element_from_encoding(10).unwrap(),
        ];
        let sub = AdditiveSubgroup::from_basis(&f, basis).unwrap();
        for u in sub.elements() {
            for v in sub.elements() {
                assert!(sub.contains(&u.add(v).unwrap()));
            }
        }
    }

    #[test]
    fn encoding_roundtrip_exhaustive() {
        for (p, m) in [(2u64, 5usize), (3, 3), (5, 2), (7, 1)] {
            let f = Field::new(p, m).unwrap();
            for e in 0..f.order() {
                assert_eq!(f.element_from_encoding(e).unwrap().encoding(), e);
            }
        }
    }
}
