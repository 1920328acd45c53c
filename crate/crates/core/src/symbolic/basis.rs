use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default ceiling on the working precision of certified evaluations.
pub const DEFAULT_MAX_BITS: u32 = 4096;

/// How the value of one basis constant is produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstantKind {
    /// `sqrt(n)` for a square-free `n > 1`.
    Sqrt { n: u64 },
    /// `offset + scale * sqrt(n)` for a square-free `n > 1` and `scale != 0`.
    ScaledSqrt {
        n: u64,
        scale: Rational,
        #[serde(default)]
        offset: Rational,
    },
    /// A user-supplied decimal expansion such as `"0.61803398874989484820"`.
    /// The last digit is treated as uncertain by one unit in either direction.
    Digits { digits: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElementSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: ConstantKind,
}

struct Cached {
    bits: u32,
    lo: BigInt,
    hi: BigInt,
}

pub struct BasisElement {
    name: String,
    kind: ConstantKind,
    digits: Option<(BigInt, u32)>,
    cache: RwLock<Option<Cached>>,
}

impl BasisElement {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ConstantKind {
        &self.kind
    }

    /// Integers `(lo, hi)` with `lo <= value * 2^bits <= hi`.
    ///
    /// For the square-root kinds `hi - lo` stays below 4; for digit strings
    /// the width is limited by the number of supplied digits.
    pub(crate) fn bounds(&self, bits: u32) -> (BigInt, BigInt) {
        {
            let cache = self.cache.read().expect("basis cache poisoned");
            if let Some(c) = cache.as_ref() {
                if c.bits >= bits {
                    let shift = c.bits - bits;
                    if shift == 0 {
                        return (c.lo.clone(), c.hi.clone());
                    }
                    let d = BigInt::one() << shift;
                    let lo = c.lo.div_floor(&d);
                    let hi = -((-&c.hi).div_floor(&d));
                    return (lo, hi);
                }
            }
        }
        // Refine generously so that nearby requests hit the cache.
        let target = {
            let cache = self.cache.read().expect("basis cache poisoned");
            cache.as_ref().map_or(bits.max(256), |c| bits.max(c.bits * 2))
        };
        let (lo, hi) = self.compute_bounds(target);
        let mut cache = self.cache.write().expect("basis cache poisoned");
        if cache.as_ref().is_none_or(|c| c.bits < target) {
            *cache = Some(Cached { bits: target, lo, hi });
        }
        drop(cache);
        self.bounds(bits)
    }

    fn compute_bounds(&self, bits: u32) -> (BigInt, BigInt) {
        match &self.kind {
            ConstantKind::Sqrt { n } => {
                let s = (BigInt::from(*n) << (2 * bits as usize)).sqrt();
                let hi = &s + 1;
                (s, hi)
            }
            ConstantKind::ScaledSqrt { n, scale, offset } => {
                // |u| sqrt(n) 2^g lies in [t, t + 1) with t = isqrt(u^2 n 4^g).
                let u = scale.numer().abs();
                let v = scale.denom();
                let guard = v.bits() as u32 + 2;
                let g = bits + guard;
                let prod: BigInt = &u * &u * BigInt::from(*n);
                let t = (prod << (2 * g as usize)).sqrt();
                let den = v << guard as usize;
                let a = Rational::new(t.clone(), den.clone()).expect("nonzero");
                let b = Rational::new(t + 1, den).expect("nonzero");
                let (a, b) = if scale.is_negative() { (-b, -a) } else { (a, b) };
                let shift = Rational::from_integer(BigInt::one() << bits as usize);
                let off = offset * &shift;
                ((&off + &a).floor(), (&off + &b).ceil())
            }
            ConstantKind::Digits { .. } => {
                let (m, d) = self.digits.as_ref().expect("digits parsed at construction");
                let scale: BigInt = BigInt::one() << bits as usize;
                let p10: BigInt = num_traits::pow(BigInt::from(10), *d as usize);
                let lo = ((m - 1i32) * &scale).div_floor(&p10);
                let hi = -((-(m + 1i32) * &scale).div_floor(&p10));
                (lo, hi)
            }
        }
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasisElement")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

/// A finite list of named real constants that are assumed, together with 1,
/// to be linearly independent over the rationals.
///
/// The assumption is an axiom of the basis. It is guaranteed for the
/// built-in square-root kinds when radicands are distinct and square-free;
/// digit strings are taken on trust.
pub struct IrrationalBasis {
    elements: Vec<BasisElement>,
    max_bits: u32,
}

impl fmt::Debug for IrrationalBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements.iter()).finish()
    }
}

impl PartialEq for IrrationalBasis {
    fn eq(&self, other: &Self) -> bool {
        self.elements.len() == other.elements.len()
            && self
                .elements
                .iter()
                .zip(&other.elements)
                .all(|(a, b)| a.name == b.name && a.kind == b.kind)
    }
}

fn is_square_free(n: u64) -> bool {
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

fn parse_digits(text: &str) -> Result<(BigInt, u32)> {
    let bad = || Error::invalid(format!("malformed digit string {text:?}"));
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac_part);
    let mut m: BigInt = joined.parse().map_err(|_| bad())?;
    if neg {
        m = -m;
    }
    Ok((m, frac_part.len() as u32))
}

impl IrrationalBasis {
    pub fn new(specs: Vec<BasisElementSpec>) -> Result<Arc<Self>> {
        Self::with_max_bits(specs, DEFAULT_MAX_BITS)
    }

    pub fn with_max_bits(specs: Vec<BasisElementSpec>, max_bits: u32) -> Result<Arc<Self>> {
        if max_bits < 64 {
            return Err(Error::invalid("maximum precision must be at least 64 bits"));
        }
        let mut elements = Vec::with_capacity(specs.len());
        let mut radicands = Vec::new();
        for spec in specs {
            let name = spec.name.trim().to_string();
            let ident_ok = !name.is_empty()
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !name.starts_with(|c: char| c.is_ascii_digit());
            if !ident_ok {
                return Err(Error::invalid(format!("basis name {name:?} is not an identifier")));
            }
            if elements.iter().any(|e: &BasisElement| e.name == name) {
                return Err(Error::invalid(format!("duplicate basis name {name:?}")));
            }
            let mut digits = None;
            match &spec.kind {
                ConstantKind::Sqrt { n } | ConstantKind::ScaledSqrt { n, .. } => {
                    if *n < 2 || !is_square_free(*n) {
                        return Err(Error::invalid(format!(
                            "basis element {name}: radicand {n} must be square-free and > 1"
                        )));
                    }
                    if radicands.contains(n) {
                        return Err(Error::invalid(format!(
                            "basis element {name}: radicand {n} already used, elements would be dependent"
                        )));
                    }
                    radicands.push(*n);
                    if let ConstantKind::ScaledSqrt { scale, .. } = &spec.kind {
                        if scale.is_zero() {
                            return Err(Error::invalid(format!("basis element {name}: zero scale")));
                        }
                    }
                }
                ConstantKind::Digits { digits: text } => {
                    digits = Some(parse_digits(text)?);
                }
            }
            elements.push(BasisElement {
                name,
                kind: spec.kind,
                digits,
                cache: RwLock::new(None),
            });
        }
        Ok(Arc::new(IrrationalBasis { elements, max_bits }))
    }

    /// `sqrt(n)` for each radicand, named `sqrt<n>`.
    pub fn sqrt(radicands: &[u64]) -> Result<Arc<Self>> {
        Self::new(
            radicands
                .iter()
                .map(|&n| BasisElementSpec { name: format!("sqrt{n}"), kind: ConstantKind::Sqrt { n } })
                .collect(),
        )
    }

    /// The single element `golden = (sqrt(5) - 1) / 2`.
    pub fn golden() -> Arc<Self> {
        Self::new(vec![BasisElementSpec {
            name: "golden".into(),
            kind: ConstantKind::ScaledSqrt {
                n: 5,
                scale: Rational::ratio(1, 2),
                offset: Rational::ratio(-1, 2),
            },
        }])
        .expect("golden basis is valid")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    pub fn specs(&self) -> Vec<BasisElementSpec> {
        self.elements
            .iter()
            .map(|e| BasisElementSpec { name: e.name.clone(), kind: e.kind.clone() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str, kind: ConstantKind) -> BasisElementSpec {
        BasisElementSpec { name: name.into(), kind }
    }

    #[test]
    fn sqrt2_bounds_bracket_the_value() {
        let b = IrrationalBasis::sqrt(&[2]).unwrap();
        let (lo, hi) = b.elements()[0].bounds(20);
        // sqrt(2) * 2^20 = 1482910.40...
        assert_eq!(lo, BigInt::from(1482910));
        assert!(hi >= BigInt::from(1482911));
        // served from the cache after a finer request
        let _ = b.elements()[0].bounds(600);
        assert_eq!(b.elements()[0].bounds(20).0, BigInt::from(1482910));
    }

    #[test]
    fn scaled_sqrt_bounds() {
        let b = IrrationalBasis::golden();
        let (lo, hi) = b.elements()[0].bounds(30);
        // golden * 2^30 = 663608942.37...
        assert!(lo <= BigInt::from(663608942) && hi >= BigInt::from(663608943));
        assert!(&hi - &lo <= BigInt::from(3));
    }

    #[test]
    fn rejects_bad_declarations() {
        assert!(IrrationalBasis::sqrt(&[4]).is_err());
        assert!(IrrationalBasis::sqrt(&[12]).is_err());
        assert!(IrrationalBasis::sqrt(&[1]).is_err());
        assert!(IrrationalBasis::sqrt(&[2, 2]).is_err());
        assert!(IrrationalBasis::new(vec![
            spec("a", ConstantKind::Sqrt { n: 2 }),
            spec("a", ConstantKind::Sqrt { n: 3 }),
        ])
        .is_err());
        assert!(IrrationalBasis::new(vec![spec(
            "z",
            ConstantKind::ScaledSqrt { n: 2, scale: Rational::zero(), offset: Rational::zero() }
        )])
        .is_err());
        assert!(IrrationalBasis::new(vec![spec("d", ConstantKind::Digits { digits: "0.1x".into() })]).is_err());
        assert!(IrrationalBasis::new(vec![spec("9a", ConstantKind::Sqrt { n: 2 })]).is_err());
    }

    #[test]
    fn digit_strings() {
        let b = IrrationalBasis::new(vec![spec("d", ConstantKind::Digits { digits: "0.4142135623".into() })])
            .unwrap();
        let (lo, hi) = b.elements()[0].bounds(16);
        // 0.4142135623 * 65536 = 27145.90...
        assert!(lo <= BigInt::from(27145) && hi >= BigInt::from(27146));
        assert_eq!(parse_digits("-1.5").unwrap(), (BigInt::from(-15), 1));
        assert_eq!(parse_digits(".25").unwrap(), (BigInt::from(25), 2));
    }

    #[test]
    fn spec_json_shape() {
        let s: BasisElementSpec = serde_json::from_str(r#"{"name":"t","kind":"scaled_sqrt","n":2,"scale":"1/10"}"#).unwrap();
        assert_eq!(
            s.kind,
            ConstantKind::ScaledSqrt { n: 2, scale: Rational::ratio(1, 10), offset: Rational::zero() }
        );
        let s: BasisElementSpec = serde_json::from_str(r#"{"name":"r","kind":"sqrt","n":3}"#).unwrap();
        assert_eq!(s.kind, ConstantKind::Sqrt { n: 3 });
    }
}
