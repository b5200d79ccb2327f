//! Catalog of almost bent and planar functions over GF(p^m), plus the
//! exhaustive spectral verifiers (Walsh/lambda spectra, planarity scans).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::galois::{Field, FieldElement, GaloisError};

/// Exhaustive scans refuse fields beyond these bounds instead of sampling.
pub const MAX_AB_DEGREE: usize = 9;
pub const MAX_PLANAR_ORDER: u64 = 2187; // 3^7

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctionError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("exhaustive scan refused: field too large")]
    FieldTooLarge,
    #[error("operation requires odd extension degree")]
    EvenDegree,
    #[error("invalid catalog parameters: {0}")]
    InvalidParameter(String),
    #[error("unknown function id {0:?}")]
    UnknownId(String),
}

impl FunctionError {
    pub fn name(&self) -> &'static str {
        match self {
            FunctionError::Galois(e) => e.name(),
            FunctionError::MixedFields => "MixedFields",
            FunctionError::OddCharacteristic => "OddCharacteristic",
            FunctionError::EvenCharacteristic => "EvenCharacteristic",
            FunctionError::FieldTooLarge => "FieldTooLarge",
            FunctionError::EvenDegree => "EvenDegree",
            FunctionError::InvalidParameter(_) => "InvalidParameter",
            FunctionError::UnknownId(_) => "UnknownId",
        }
    }
}

/// Which catalog entry a function instantiates, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpec {
    /// x^(2^i+1), gcd(i, m) = 1
    Gold { i: u32 },
    /// x^(2^(2i)−2^i+1), gcd(i, m) = 1
    Kasami { i: u32 },
    /// x^(2^((m−1)/2)+3)
    Welch,
    /// x^(2^((m−1)/2)+2^((m−1)/4)−1), m ≡ 1 (mod 4)
    Niho1,
    /// x^(2^((m−1)/2)+2^((3m−1)/4)−1), m ≡ 3 (mod 4)
    Niho2,
    /// x^(2^i+1) + (x^(2^i)+x)·Tr(x^(2^i+1)+x), m > 3, gcd(i, m) = 1
    GoldTrace { i: u32 },
    /// x^(p^t+1), m/gcd(m, t) odd
    DembowskiOstrom { t: u32 },
    /// x^((3^k+1)/2), p = 3, k odd, gcd(m, k) = 1
    CoulterMatthews { k: u32 },
    /// x^10 − u·x^6 − u^2·x^2, p = 3, m odd, u ≠ 0
    DingYuan { u: FieldElement },
    /// Plain power map, for probing non-catalog exponents
    Monomial { exponent: BigUint },
}

/// A catalog function bound to its field, evaluable at field elements.
#[derive(Clone, Debug)]
pub struct NonlinearFunction {
    field: Field,
    spec: FunctionSpec,
    /// Cached exponent for the pure power maps.
    exponent: Option<BigUint>,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

impl NonlinearFunction {
    pub fn new(field: &Field, spec: FunctionSpec) -> Result<Self, FunctionError> {
        let p = field.p();
        let m = field.m() as u64;
        let bad = |msg: &str| Err(FunctionError::InvalidParameter(msg.to_string()));
        let exponent = match &spec {
            FunctionSpec::Gold { i } | FunctionSpec::Kasami { i } => {
                if p != 2 {
                    return Err(FunctionError::OddCharacteristic);
                }
                if m < 3 || m.is_multiple_of(2) {
                    return bad("requires odd m >= 3");
                }
                if *i == 0 || gcd_u64(*i as u64, m) != 1 {
                    return bad("requires gcd(i, m) = 1 with i >= 1");
                }
                let two = BigUint::from(2u32);
                Some(match &spec {
                    FunctionSpec::Gold { i } => two.pow(*i) + 1u32,
                    _ => two.pow(2 * i) - two.pow(*i) + 1u32,
                })
            }
            FunctionSpec::Welch => {
                if p != 2 {
                    return Err(FunctionError::OddCharacteristic);
                }
                if m < 3 || m.is_multiple_of(2) {
                    return bad("requires odd m >= 3");
                }
                Some(BigUint::from(2u32).pow(((m - 1) / 2) as u32) + 3u32)
            }
            FunctionSpec::Niho1 => {
                if p != 2 {
                    return Err(FunctionError::OddCharacteristic);
                }
                if m % 4 != 1 || m < 5 {
                    return bad("requires m = 1 (mod 4), m >= 5");
                }
                let two = BigUint::from(2u32);
                Some(two.pow(((m - 1) / 2) as u32) + two.pow(((m - 1) / 4) as u32) - 1u32)
            }
            FunctionSpec::Niho2 => {
                if p != 2 {
                    return Err(FunctionError::OddCharacteristic);
                }
                if m % 4 != 3 {
                    return bad("requires m = 3 (mod 4)");
                }
                let two = BigUint::from(2u32);
                Some(two.pow(((m - 1) / 2) as u32) + two.pow(((3 * m - 1) / 4) as u32) - 1u32)
            }
            FunctionSpec::GoldTrace { i } => {
                if p != 2 {
                    return Err(FunctionError::OddCharacteristic);
                }
                if m <= 3 || m.is_multiple_of(2) {
                    return bad("requires odd m > 3");
                }
                if *i == 0 || gcd_u64(*i as u64, m) != 1 {
                    return bad("requires gcd(i, m) = 1 with i >= 1");
                }
                None
            }
            FunctionSpec::DembowskiOstrom { t } => {
                if p == 2 {
                    return Err(FunctionError::EvenCharacteristic);
                }
                let g = gcd_u64(*t as u64, m);
                if (m / g).is_multiple_of(2) {
                    return bad("requires m/gcd(m, t) odd");
                }
                Some(BigUint::from(p).pow(*t) + 1u32)
            }
            FunctionSpec::CoulterMatthews { k } => {
                if p != 3 {
                    return bad("requires p = 3");
                }
                if k % 2 == 0 || gcd_u64(*k as u64, m) != 1 {
                    return bad("requires odd k with gcd(m, k) = 1");
                }
                Some((BigUint::from(3u32).pow(*k) + 1u32) / 2u32)
            }
            FunctionSpec::DingYuan { u } => {
                if p != 3 {
                    return bad("requires p = 3");
                }
                if m.is_multiple_of(2) {
                    return Err(FunctionError::EvenDegree);
                }
                if u.field() != field {
                    return Err(FunctionError::MixedFields);
                }
                if u.is_zero() {
                    return bad("requires u != 0");
                }
                None
            }
            FunctionSpec::Monomial { exponent } => {
                if exponent.is_zero() {
                    return bad("monomial exponent must be >= 1 so that f(0) = 0");
                }
                Some(exponent.clone())
            }
        };
        Ok(NonlinearFunction {
            field: field.clone(),
            spec,
            exponent,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }

    /// Stable catalog id, e.g. "ab:gold" or "planar:dy".
    pub fn id(&self) -> &'static str {
        match self.spec {
            FunctionSpec::Gold { .. } => "ab:gold",
            FunctionSpec::Kasami { .. } => "ab:kasami",
            FunctionSpec::Welch => "ab:welch",
            FunctionSpec::Niho1 => "ab:niho1",
            FunctionSpec::Niho2 => "ab:niho2",
            FunctionSpec::GoldTrace { .. } => "ab:trace",
            FunctionSpec::DembowskiOstrom { .. } => "planar:do",
            FunctionSpec::CoulterMatthews { .. } => "planar:cm",
            FunctionSpec::DingYuan { .. } => "planar:dy",
            FunctionSpec::Monomial { .. } => "raw:monomial",
        }
    }

    /// Id plus parameters, e.g. "ab:gold{i=1}".
    pub fn describe(&self) -> String {
        match &self.spec {
            FunctionSpec::Gold { i } | FunctionSpec::Kasami { i } | FunctionSpec::GoldTrace { i } => {
                format!("{}{{i={}}}", self.id(), i)
            }
            FunctionSpec::Welch | FunctionSpec::Niho1 | FunctionSpec::Niho2 => self.id().to_string(),
            FunctionSpec::DembowskiOstrom { t } => format!("{}{{t={}}}", self.id(), t),
            FunctionSpec::CoulterMatthews { k } => format!("{}{{k={}}}", self.id(), k),
            FunctionSpec::DingYuan { u } => format!("{}{{u={}}}", self.id(), u.encoding()),
            FunctionSpec::Monomial { exponent } => format!("{}{{e={}}}", self.id(), exponent),
        }
    }

    /// True for the almost bent catalog entries.
    pub fn is_ab_kind(&self) -> bool {
        matches!(
            self.spec,
            FunctionSpec::Gold { .. }
                | FunctionSpec::Kasami { .. }
                | FunctionSpec::Welch
                | FunctionSpec::Niho1
                | FunctionSpec::Niho2
                | FunctionSpec::GoldTrace { .. }
        )
    }

    /// True for the planar catalog entries.
    pub fn is_planar_kind(&self) -> bool {
        matches!(
            self.spec,
            FunctionSpec::DembowskiOstrom { .. }
                | FunctionSpec::CoulterMatthews { .. }
                | FunctionSpec::DingYuan { .. }
        )
    }

    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement, FunctionError> {
        if x.field() != &self.field {
            return Err(FunctionError::MixedFields);
        }
        match &self.spec {
            FunctionSpec::GoldTrace { i } => {
                // x^(2^i+1) + (x^(2^i)+x)·Tr(x^(2^i+1)+x), trace lifted to {0,1}
                let xi = x.pow(&BigUint::from(2u32).pow(*i));
                let y = xi.mul(x)?;
                let s = y.add(x)?;
                let factor = xi.add(x)?;
                let lifted = self.field.from_scalar(s.trace());
                Ok(y.add(&factor.mul(&lifted)?)?)
            }
            FunctionSpec::DingYuan { u } => {
                let x2 = x.mul(x)?;
                let x4 = x2.mul(&x2)?;
                let x6 = x4.mul(&x2)?;
                let x10 = x6.mul(&x4)?;
                let u2 = u.mul(u)?;
                Ok(x10.sub(&u.mul(&x6)?)?.sub(&u2.mul(&x2)?)?)
            }
            _ => Ok(x.pow(self.exponent.as_ref().expect("power map has an exponent"))),
        }
    }

    /// Evaluates at every field element in encoding order.
    pub fn table(&self) -> Vec<FieldElement> {
        self.field
            .elements()
            .map(|x| self.evaluate(&x).unwrap())
            .collect()
    }
}

/// Parses a catalog id with parameters supplied separately (CLI surface).
pub fn function_from_id(
    field: &Field,
    id: &str,
    i: Option<u32>,
    t: Option<u32>,
    k: Option<u32>,
    u: Option<u64>,
) -> Result<NonlinearFunction, FunctionError> {
    let need = |opt: Option<u32>, what: &str| {
        opt.ok_or_else(|| FunctionError::InvalidParameter(format!("missing parameter {what}")))
    };
    let spec = match id {
        "ab:gold" => FunctionSpec::Gold { i: need(i, "i")? },
        "ab:kasami" => FunctionSpec::Kasami { i: need(i, "i")? },
        "ab:welch" => FunctionSpec::Welch,
        "ab:niho1" => FunctionSpec::Niho1,
        "ab:niho2" => FunctionSpec::Niho2,
        "ab:trace" => FunctionSpec::GoldTrace { i: need(i, "i")? },
        "planar:do" => FunctionSpec::DembowskiOstrom { t: need(t, "t")? },
        "planar:cm" => FunctionSpec::CoulterMatthews { k: need(k, "k")? },
        "planar:dy" => {
            let enc = u.ok_or_else(|| {
                FunctionError::InvalidParameter("missing parameter u".to_string())
            })?;
            let u = field.element_from_encoding(enc)?;
            FunctionSpec::DingYuan { u }
        }
        other => return Err(FunctionError::UnknownId(other.to_string())),
    };
    NonlinearFunction::new(field, spec)
}

/// Classification attached to a spectrum scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    AlmostBent,
    NotAlmostBent,
    Planar,
    NotPlanar,
    SemiBent,
    NotSemiBent,
}

/// Result of an exhaustive property scan: the observed value multiset and
/// the verdict.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub values: BTreeMap<i64, u64>,
    pub classification: Classification,
}

impl SpectrumReport {
    pub fn is_positive(&self) -> bool {
        matches!(
            self.classification,
            Classification::AlmostBent | Classification::Planar | Classification::SemiBent
        )
    }
}

/// λ_g(a, b) = Σ_x (−1)^(Tr(a·g(x) + b·x)) over all of GF(2^m).
pub fn lambda_value(
    g: &NonlinearFunction,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<i64, FunctionError> {
    let field = g.field();
    if field.p() != 2 {
        return Err(FunctionError::OddCharacteristic);
    }
    if a.field() != field || b.field() != field {
        return Err(FunctionError::MixedFields);
    }
    let mut sum = 0i64;
    for x in field.elements() {
        let gx = g.evaluate(&x)?;
        let bit = (a.mul(&gx)?.trace() + b.mul(&x)?.trace()) % 2;
        sum += if bit == 0 { 1 } else { -1 };
    }
    Ok(sum)
}

/// Gram matrix rows of the trace form in the polynomial basis: row j is the
/// bit vector (Tr(x^(j+k)))_k packed into a u32.
fn trace_gram_rows(field: &Field) -> Vec<u32> {
    let m = field.m();
    let x = {
        let mut coeffs = vec![0; m];
        if m > 1 {
            coeffs[1] = 1;
        } else {
            coeffs[0] = 0; // x reduces to 0 in the degree-1 field
        }
        field.element_from_coeffs(&coeffs).unwrap()
    };
    // powers x^0 .. x^(2m-2)
    let mut powers = Vec::with_capacity(2 * m - 1);
    let mut cur = field.one();
    for _ in 0..(2 * m - 1) {
        powers.push(cur.trace() & 1);
        cur = cur.mul(&x).unwrap();
    }
    (0..m)
        .map(|j| {
            let mut row = 0u32;
            for k in 0..m {
                row |= (powers[j + k] as u32) << k;
            }
            row
        })
        .collect()
}

/// Maps enc(x) to the Gram-transformed index so that Tr(b·x) becomes the
/// standard dot product of bit vectors.
fn gram_permutation(field: &Field) -> Vec<u32> {
    let gram = trace_gram_rows(field);
    let m = field.m();
    let q = field.order() as usize;
    (0..q)
        .map(|x| {
            let mut u = 0u32;
            for (j, row) in gram.iter().enumerate().take(m) {
                u |= ((row & x as u32).count_ones() & 1) << j;
            }
            u
        })
        .collect()
}

/// In-place fast Walsh–Hadamard transform over ±1 sums.
fn wht(buf: &mut [i64]) {
    let n = buf.len();
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for k in start..start + h {
                let (a, b) = (buf[k], buf[k + h]);
                buf[k] = a + b;
                buf[k + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Full Walsh spectrum of a bit table indexed by enc(x): returns
/// ŵ(w) = Σ_x (−1)^(table[x] + Tr(w·x)) indexed by enc(w).
pub fn walsh_spectrum(field: &Field, table: &[u8]) -> Result<Vec<i64>, FunctionError> {
    if field.p() != 2 {
        return Err(FunctionError::OddCharacteristic);
    }
    let q = field.order() as usize;
    if table.len() != q {
        return Err(FunctionError::InvalidParameter(format!(
            "bit table must have length {q}"
        )));
    }
    let perm = gram_permutation(field);
    let mut buf = vec![0i64; q];
    for (x, &bit) in table.iter().enumerate() {
        buf[perm[x] as usize] = if bit & 1 == 0 { 1 } else { -1 };
    }
    wht(&mut buf);
    Ok(buf)
}

/// Single Walsh value ŵ(w) by direct summation.
pub fn walsh_value(field: &Field, table: &[u8], w: &FieldElement) -> Result<i64, FunctionError> {
    if field.p() != 2 {
        return Err(FunctionError::OddCharacteristic);
    }
    if w.field() != field {
        return Err(FunctionError::MixedFields);
    }
    let q = field.order() as usize;
    if table.len() != q {
        return Err(FunctionError::InvalidParameter(format!(
            "bit table must have length {q}"
        )));
    }
    let mut sum = 0i64;
    for (x, &bit) in table.iter().enumerate() {
        let tr = w
            .mul(&field.element_from_encoding(x as u64).unwrap())
            .unwrap()
            .trace();
        let e = (bit as u64 + tr) % 2;
        sum += if e == 0 { 1 } else { -1 };
    }
    Ok(sum)
}

/// Exhaustively classifies g as almost bent: λ_g(a, b) ∈ {0, ±2^((m+1)/2)}
/// for every a ≠ 0, b.
pub fn is_almost_bent(g: &NonlinearFunction) -> Result<SpectrumReport, FunctionError> {
    let field = g.field();
    if field.p() != 2 {
        return Err(FunctionError::OddCharacteristic);
    }
    if field.m() > MAX_AB_DEGREE {
        return Err(FunctionError::FieldTooLarge);
    }
    let m = field.m();
    let q = field.order() as usize;
    let perm = gram_permutation(field);
    let gx: Vec<FieldElement> = g.table();
    let allowed: Option<i64> = if m % 2 == 1 {
        Some(1i64 << m.div_ceil(2))
    } else {
        None // even m cannot be almost bent; scan still reports the multiset
    };
    let mut values = BTreeMap::new();
    let mut ok = m % 2 == 1;
    let mut buf = vec![0i64; q];
    for a_enc in 1..field.order() {
        let a = field.element_from_encoding(a_enc).unwrap();
        for (x, gx_val) in gx.iter().enumerate() {
            let bit = a.mul(gx_val).unwrap().trace();
            buf[perm[x] as usize] = if bit == 0 { 1 } else { -1 };
        }
        wht(&mut buf);
        for &v in buf.iter() {
            *values.entry(v).or_insert(0u64) += 1;
            if ok && v != 0 && Some(v.abs()) != allowed {
                ok = false;
            }
        }
    }
    Ok(SpectrumReport {
        values,
        classification: if ok {
            Classification::AlmostBent
        } else {
            Classification::NotAlmostBent
        },
    })
}

/// Exhaustively classifies f as planar: x ↦ f(x+a) − f(x) is a bijection for
/// every a ≠ 0. The report's value multiset records the image size of each
/// difference map.
pub fn is_planar(f: &NonlinearFunction) -> Result<SpectrumReport, FunctionError> {
    let field = f.field();
    if field.p() == 2 {
        return Err(FunctionError::EvenCharacteristic);
    }
    if field.order() > MAX_PLANAR_ORDER {
        return Err(FunctionError::FieldTooLarge);
    }
    let q = field.order();
    let fx: Vec<FieldElement> = f.table();
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut values = BTreeMap::new();
    let mut planar = true;
    let mut seen = vec![false; q as usize];
    for a in field.nonzero_elements() {
        seen.iter_mut().for_each(|s| *s = false);
        let mut distinct = 0u64;
        for x in &elems {
            let shifted = f.evaluate(&x.add(&a).unwrap())?;
            let diff = shifted.sub(&fx[x.encoding() as usize]).unwrap();
            let enc = diff.encoding() as usize;
            if !seen[enc] {
                seen[enc] = true;
                distinct += 1;
            }
        }
        if distinct != q {
            planar = false;
        }
        *values.entry(distinct as i64).or_insert(0u64) += 1;
    }
    Ok(SpectrumReport {
        values,
        classification: if planar {
            Classification::Planar
        } else {
            Classification::NotPlanar
        },
    })
}

/// Classifies a boolean function table as semi-bent: every Walsh value lies
/// in {0, ±2^((m+1)/2)}; requires odd m.
pub fn is_semi_bent(field: &Field, table: &[u8]) -> Result<SpectrumReport, FunctionError> {
    if field.p() != 2 {
        return Err(FunctionError::OddCharacteristic);
    }
    if field.m().is_multiple_of(2) {
        return Err(FunctionError::EvenDegree);
    }
    if field.m() > MAX_AB_DEGREE {
        return Err(FunctionError::FieldTooLarge);
    }
    let spectrum = walsh_spectrum(field, table)?;
    let allowed = 1i64 << field.m().div_ceil(2);
    let mut values = BTreeMap::new();
    let mut ok = true;
    for &v in &spectrum {
        *values.entry(v).or_insert(0u64) += 1;
        if v != 0 && v.abs() != allowed {
            ok = false;
        }
    }
    Ok(SpectrumReport {
        values,
        classification: if ok {
            Classification::SemiBent
        } else {
            Classification::NotSemiBent
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::AdditiveSubgroup;

    fn gf(p: u64, m: usize) -> Field {
        Field::new(p, m).unwrap()
    }

    #[test]
    fn gold_cubes_in_gf8() {
        let f = gf(2, 3);
        let g = NonlinearFunction::new(&f, FunctionSpec::Gold { i: 1 }).unwrap();
        let alpha = f.element_from_encoding(2).unwrap();
        assert_eq!(g.evaluate(&alpha).unwrap().encoding(), 3); // alpha^3 = alpha + 1
        assert!(g.evaluate(&f.zero()).unwrap().is_zero());
    }

    #[test]
    fn do_is_square_in_prime_field() {
        let f = gf(3, 1);
        let g = NonlinearFunction::new(&f, FunctionSpec::DembowskiOstrom { t: 0 }).unwrap();
        let two = f.element_from_encoding(2).unwrap();
        assert_eq!(g.evaluate(&two).unwrap().encoding(), 1); // 4 mod 3
    }

    #[test]
    fn catalog_rejects_bad_parameters() {
        let f32 = gf(2, 5);
        assert!(NonlinearFunction::new(&f32, FunctionSpec::Gold { i: 5 }).is_err());
        assert!(NonlinearFunction::new(&f32, FunctionSpec::Niho2).is_err()); // m = 1 mod 4
        assert!(NonlinearFunction::new(&f32, FunctionSpec::Niho1).is_ok());
        let f16 = gf(2, 4);
        assert!(NonlinearFunction::new(&f16, FunctionSpec::Gold { i: 1 }).is_err()); // even m
        let f8 = gf(2, 3);
        assert!(NonlinearFunction::new(&f8, FunctionSpec::GoldTrace { i: 1 }).is_err()); // m > 3
        let f27 = gf(3, 3);
        assert!(NonlinearFunction::new(&f27, FunctionSpec::CoulterMatthews { k: 3 }).is_err());
        assert!(NonlinearFunction::new(&f27, FunctionSpec::CoulterMatthews { k: 5 }).is_ok());
        let u0 = f27.zero();
        assert!(NonlinearFunction::new(&f27, FunctionSpec::DingYuan { u: u0 }).is_err());
    }

    #[test]
    fn lambda_trivial_values() {
        let f = gf(2, 3);
        let g = NonlinearFunction::new(&f, FunctionSpec::Gold { i: 1 }).unwrap();
        let zero = f.zero();
        assert_eq!(lambda_value(&g, &zero, &zero).unwrap(), 8);
        for b in f.nonzero_elements() {
            assert_eq!(lambda_value(&g, &zero, &b).unwrap(), 0);
        }
        let one = f.one();
        let v = lambda_value(&g, &one, &zero).unwrap();
        assert!(v == 0 || v.abs() == 4, "lambda out of AB range: {v}");
    }

    #[test]
    fn gold_and_kasami_are_almost_bent() {
        for m in [3usize, 5] {
            let f = gf(2, m);
            for spec in [FunctionSpec::Gold { i: 1 }, FunctionSpec::Kasami { i: 1 }] {
                let g = NonlinearFunction::new(&f, spec).unwrap();
                let report = is_almost_bent(&g).unwrap();
                assert_eq!(report.classification, Classification::AlmostBent, "{}", g.describe());
            }
        }
    }

    #[test]
    fn ab_catalog_verifies_at_m3_m5_m7() {
        for m in [3usize, 5, 7] {
            let f = gf(2, m);
            let mut specs = vec![
                FunctionSpec::Gold { i: 1 },
                FunctionSpec::Kasami { i: 2 },
                FunctionSpec::Welch,
            ];
            specs.push(if m % 4 == 1 {
                FunctionSpec::Niho1
            } else {
                FunctionSpec::Niho2
            });
            if m > 3 {
                specs.push(FunctionSpec::GoldTrace { i: 1 });
            }
            for spec in specs {
                let g = NonlinearFunction::new(&f, spec).unwrap();
                assert_eq!(
                    is_almost_bent(&g).unwrap().classification,
                    Classification::AlmostBent,
                    "m={m} {}",
                    g.describe()
                );
            }
        }
    }

    #[test]
    fn planar_catalog_verifies_across_fields() {
        for (p, ms) in [(3u64, vec![1usize, 3, 5]), (5, vec![1, 3])] {
            for m in ms {
                let f = gf(p, m);
                let mut specs = vec![
                    FunctionSpec::DembowskiOstrom { t: 0 },
                    FunctionSpec::DembowskiOstrom { t: 1 },
                ];
                if p == 3 {
                    let k = match m {
                        3 => 5,
                        5 => 3,
                        _ => 1,
                    };
                    specs.push(FunctionSpec::CoulterMatthews { k });
                    specs.push(FunctionSpec::DingYuan {
                        u: f.element_from_encoding(1).unwrap(),
                    });
                }
                for spec in specs {
                    let g = NonlinearFunction::new(&f, spec).unwrap();
                    assert_eq!(
                        is_planar(&g).unwrap().classification,
                        Classification::Planar,
                        "p={p} m={m} {}",
                        g.describe()
                    );
                }
            }
        }
    }

    #[test]
    fn identity_is_not_almost_bent() {
        let f = gf(2, 3);
        let g = NonlinearFunction::new(
            &f,
            FunctionSpec::Monomial {
                exponent: BigUint::from(1u32),
            },
        )
        .unwrap();
        let report = is_almost_bent(&g).unwrap();
        assert_eq!(report.classification, Classification::NotAlmostBent);
        assert!(report.values.contains_key(&8)); // lambda(1,1) hits 2^m
    }

    #[test]
    fn corrected_trace_variant_is_almost_bent() {
        let f = gf(2, 5);
        let g = NonlinearFunction::new(&f, FunctionSpec::GoldTrace { i: 1 }).unwrap();
        assert_eq!(
            is_almost_bent(&g).unwrap().classification,
            Classification::AlmostBent
        );
    }

    #[test]
    fn square_is_planar_cube_is_not() {
        let f27 = gf(3, 3);
        let sq = NonlinearFunction::new(&f27, FunctionSpec::DembowskiOstrom { t: 0 }).unwrap();
        assert_eq!(is_planar(&sq).unwrap().classification, Classification::Planar);

        let f9 = gf(3, 2);
        let cube = NonlinearFunction::new(
            &f9,
            FunctionSpec::Monomial {
                exponent: BigUint::from(3u32),
            },
        )
        .unwrap();
        assert_eq!(
            is_planar(&cube).unwrap().classification,
            Classification::NotPlanar
        );
    }

    #[test]
    fn coulter_matthews_is_planar() {
        let f27 = gf(3, 3);
        let cm = NonlinearFunction::new(&f27, FunctionSpec::CoulterMatthews { k: 5 }).unwrap();
        assert_eq!(is_planar(&cm).unwrap().classification, Classification::Planar);
        let dy = NonlinearFunction::new(
            &f27,
            FunctionSpec::DingYuan {
                u: f27.element_from_encoding(1).unwrap(),
            },
        )
        .unwrap();
        assert_eq!(is_planar(&dy).unwrap().classification, Classification::Planar);
    }

    #[test]
    fn walsh_trivial_values() {
        let f = gf(2, 3);
        let zero_table = vec![0u8; 8];
        assert_eq!(walsh_value(&f, &zero_table, &f.zero()).unwrap(), 8);
        // f(x) = Tr(x) at w = 1 cancels the exponent
        let tr_table: Vec<u8> = f.elements().map(|x| x.trace() as u8).collect();
        assert_eq!(walsh_value(&f, &tr_table, &f.one()).unwrap(), 8);
        // spectrum agrees with direct summation
        let spectrum = walsh_spectrum(&f, &tr_table).unwrap();
        for w in f.elements() {
            assert_eq!(
                spectrum[w.encoding() as usize],
                walsh_value(&f, &tr_table, &w).unwrap()
            );
        }
    }

    #[test]
    fn semi_bent_from_ab_components() {
        let f = gf(2, 5);
        let g = NonlinearFunction::new(&f, FunctionSpec::Gold { i: 1 }).unwrap();
        for a in f.nonzero_elements() {
            let table: Vec<u8> = f
                .elements()
                .map(|x| (a.mul(&g.evaluate(&x).unwrap()).unwrap().trace()) as u8)
                .collect();
            let report = is_semi_bent(&f, &table).unwrap();
            assert_eq!(report.classification, Classification::SemiBent);
        }
        let zero_table = vec![0u8; 32];
        assert_eq!(
            is_semi_bent(&f, &zero_table).unwrap().classification,
            Classification::NotSemiBent
        );
        let tr_table: Vec<u8> = f.elements().map(|x| x.trace() as u8).collect();
        assert_eq!(
            is_semi_bent(&f, &tr_table).unwrap().classification,
            Classification::NotSemiBent
        );
    }

    #[test]
    fn parseval_holds_for_small_tables() {
        for m in [3usize, 5] {
            let f = gf(2, m);
            let q = f.order();
            // a few structured tables
            let tables: Vec<Vec<u8>> = vec![
                vec![0u8; q as usize],
                f.elements().map(|x| x.trace() as u8).collect(),
                f.elements()
                    .map(|x| (x.pow_u64(3).trace()) as u8)
                    .collect(),
            ];
            for t in tables {
                let spectrum = walsh_spectrum(&f, &t).unwrap();
                let total: i64 = spectrum.iter().map(|v| v * v).sum();
                assert_eq!(total, (q * q) as i64);
            }
        }
    }

    #[test]
    fn ab_scan_respects_caps() {
        let f = gf(3, 3);
        let sq = NonlinearFunction::new(&f, FunctionSpec::DembowskiOstrom { t: 0 }).unwrap();
        assert_eq!(
            is_almost_bent(&sq).unwrap_err(),
            FunctionError::OddCharacteristic
        );
        let f = gf(2, 5);
        let g = NonlinearFunction::new(&f, FunctionSpec::Gold { i: 1 }).unwrap();
        assert_eq!(
            is_planar(&g).unwrap_err(),
            FunctionError::EvenCharacteristic
        );
    }

    #[test]
    fn subgroup_orbit_of_semi_bent_components() {
        // All Tr(a·g(x)) components over a subgroup's nonzero members stay
        // semi-bent; spot check with the rank-2 canonical subgroup.
        let f = gf(2, 5);
        let g = NonlinearFunction::new(&f, FunctionSpec::Welch).unwrap();
        let sub = AdditiveSubgroup::canonical(&f, 2).unwrap();
        for a in sub.elements().iter().filter(|a| !a.is_zero()) {
            let table: Vec<u8> = f
                .elements()
                .map(|x| (a.mul(&g.evaluate(&x).unwrap()).unwrap().trace()) as u8)
                .collect();
            assert_eq!(
                is_semi_bent(&f, &table).unwrap().classification,
                Classification::SemiBent
            );
        }
    }
}
