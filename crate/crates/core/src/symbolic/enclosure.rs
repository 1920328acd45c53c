//! Certified numeric evaluation of symbolic reals.
//!
//! For `m * x` with `x = P/Q + sum(c_i e_i)` the routine below produces
//! integers `lo <= m x Q 2^b <= hi` from per-element bounds on `e_i 2^b`.
//! When `x` is irrational the value is strictly inside, so a floor is decided
//! as soon as no integer lies in the open interval `(lo/den, hi/den)`.
//! Undecided questions are retried at doubled precision up to the basis
//! maximum, after which [`Error::PrecisionExhausted`] is returned.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SymbolicReal;
use crate::error::{Error, Result};
use crate::rational::Rational;

const START_BITS: u32 = 64;

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::ratio(1, 2)
    }
}

/// The value of a fractional part: exact for rational arguments, otherwise
/// a certified enclosure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FracValue {
    Exact(Rational),
    Enclosed(Enclosure),
}

impl FracValue {
    pub fn enclosure(&self) -> Enclosure {
        match self {
            FracValue::Exact(r) => Enclosure { lo: r.clone(), hi: r.clone() },
            FracValue::Enclosed(e) => e.clone(),
        }
    }
}

/// `lo/den <= m x <= hi/den`.
struct Scaled {
    lo: BigInt,
    hi: BigInt,
    den: BigInt,
}

impl SymbolicReal {
    fn scaled(&self, m: &BigInt, bits: u32) -> Scaled {
        let q = self.rational.denom();
        let mut lo = (m * self.rational.numer()) << bits as usize;
        let mut hi = lo.clone();
        for (e, &c) in self.basis.elements().iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            let w = m * c * q;
            let (a, b) = e.bounds(bits);
            if w.is_positive() {
                lo += &w * a;
                hi += &w * b;
            } else {
                lo += &w * b;
                hi += &w * a;
            }
        }
        Scaled { lo, hi, den: q << bits as usize }
    }

    /// Bits needed on top of the requested precision to absorb the growth of
    /// the bound width with `m` and the coefficients.
    fn spread_bits(&self, m: &BigInt) -> u32 {
        let total: i64 = self.coeffs.iter().map(|c| c.abs()).sum();
        (m.bits() + BigInt::from(total).bits() + self.rational.denom().bits()) as u32 + 4
    }

    fn certify<T>(&self, m: &BigInt, first: u32, decide: impl Fn(&Scaled) -> Option<T>) -> Result<T> {
        let max = self.basis.max_bits();
        let mut bits = first.min(max);
        loop {
            if let Some(t) = decide(&self.scaled(m, bits)) {
                return Ok(t);
            }
            if bits >= max {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(max);
        }
    }

    /// `floor(m * self)`, certified.
    pub fn floor_mul(&self, m: impl Into<BigInt>) -> Result<BigInt> {
        let m = m.into();
        if self.is_rational() {
            return Ok(self.rational.mul_int(m).floor());
        }
        self.certify(&m, START_BITS, |s| {
            let f = s.lo.div_floor(&s.den);
            let g = -((-&s.hi).div_floor(&s.den)) - 1;
            (f == g).then_some(f)
        })
    }

    /// `ceil(m * self)`, certified.
    pub fn ceil_mul(&self, m: impl Into<BigInt>) -> Result<BigInt> {
        let m = m.into();
        if self.is_rational() {
            return Ok(self.rational.mul_int(m).ceil());
        }
        Ok(self.floor_mul(m)? + 1)
    }

    /// `floor(self)`.
    pub fn floor(&self) -> Result<BigInt> {
        self.floor_mul(1)
    }

    /// Sign of `self`, certified. `Equal` only when `self` is exactly zero.
    pub fn signum(&self) -> Result<Ordering> {
        if self.is_rational() {
            return Ok(self.rational.cmp(&Rational::zero()));
        }
        self.certify(&BigInt::one(), START_BITS, |s| {
            if !s.lo.is_negative() {
                Some(Ordering::Greater)
            } else if !s.hi.is_positive() {
                Some(Ordering::Less)
            } else {
                None
            }
        })
    }

    /// Certified comparison with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Result<Ordering> {
        self.add_rational(&-r).signum()
    }

    /// An enclosure of `self` of width at most `2^-bits`.
    pub fn enclose(&self, bits: u32) -> Result<Enclosure> {
        if let Some(r) = self.as_rational() {
            return Ok(Enclosure { lo: r.clone(), hi: r.clone() });
        }
        let one = BigInt::one();
        let target = Rational::new(1, BigInt::one() << bits as usize)?;
        self.certify(&one, bits + self.spread_bits(&one), |s| {
            let e = Enclosure {
                lo: Rational::new(s.lo.clone(), s.den.clone()).ok()?,
                hi: Rational::new(s.hi.clone(), s.den.clone()).ok()?,
            };
            (e.width() <= target).then_some(e)
        })
    }

    /// Certified enclosure of `{m * self}` of width at most `2^-precision_bits`,
    /// exact when `self` is rational.
    pub fn frac_eval(&self, m: impl Into<BigInt>, precision_bits: u32) -> Result<FracValue> {
        let m = m.into();
        if m.is_zero() || m.is_negative() {
            return Err(Error::invalid("multiplier must be positive"));
        }
        if self.is_rational() {
            return Ok(FracValue::Exact(self.rational.mul_int(m).frac()));
        }
        let f = self.floor_mul(m.clone())?;
        let target = Rational::new(1, BigInt::one() << precision_bits as usize)?;
        let shift = Rational::from_integer(f);
        let zero = Rational::zero();
        let one = Rational::one();
        self.certify(&m, precision_bits + self.spread_bits(&m), |s| {
            let lo = Rational::new(s.lo.clone(), s.den.clone()).ok()? - &shift;
            let hi = Rational::new(s.hi.clone(), s.den.clone()).ok()? - &shift;
            let e = Enclosure { lo: lo.max(zero.clone()), hi: hi.min(one.clone()) };
            (e.width() <= target).then_some(FracValue::Enclosed(e))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{BasisElementSpec, ConstantKind, IrrationalBasis};
    use std::sync::Arc;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sqrt2_minus_1() -> SymbolicReal {
        let b = IrrationalBasis::sqrt(&[2]).unwrap();
        SymbolicReal::from_parts(&b, q("-1"), vec![1]).unwrap()
    }

    /// floor(m * (sqrt(5) - 1) / 2 * 10^40) by integer square roots alone.
    fn golden_frac_oracle(m: u64) -> Rational {
        let scale = num_traits::pow(BigInt::from(10), 40);
        let s = (BigInt::from(5u64 * m * m) * &scale * &scale).sqrt();
        let v = (s - BigInt::from(m) * &scale) / 2u32;
        Rational::new(v.mod_floor(&scale), scale).unwrap()
    }

    #[test]
    fn rational_input_is_exact() {
        let b = IrrationalBasis::sqrt(&[2]).unwrap();
        let x = SymbolicReal::rational(&b, q("1/4"));
        assert_eq!(x.frac_eval(5, 64).unwrap(), FracValue::Exact(q("1/4")));
    }

    #[test]
    fn sqrt2_minus_one() {
        let e = sqrt2_minus_1().frac_eval(1, 64).unwrap().enclosure();
        assert!(e.width() <= Rational::new(1, BigInt::one() << 64).unwrap());
        // isqrt(2 * 10^60) / 10^30 - 1 agrees with the enclosure to 10^-30
        let scale = num_traits::pow(BigInt::from(10), 30);
        let s = (BigInt::from(2) * &scale * &scale).sqrt();
        let approx = Rational::new(s - &scale, scale.clone()).unwrap();
        let tol = Rational::new(1, scale).unwrap();
        assert!(&e.lo - &tol <= approx && approx <= &e.hi + &tol);
        assert!(e.contains(&e.midpoint()));
    }

    #[test]
    fn golden_seventeen() {
        let g = IrrationalBasis::golden();
        let x = SymbolicReal::element(&g, "golden").unwrap();
        let e = x.frac_eval(17, 64).unwrap().enclosure();
        let oracle = golden_frac_oracle(17);
        let tol = Rational::new(1, num_traits::pow(BigInt::from(10), 39)).unwrap();
        assert!(&e.lo - &tol <= oracle && oracle <= &e.hi + &tol);
        assert!(e.lo > q("5065/10000") && e.hi < q("5066/10000"));
    }

    #[test]
    fn floors_and_comparisons() {
        let x = sqrt2_minus_1();
        assert_eq!(x.floor_mul(1).unwrap(), BigInt::from(0));
        assert_eq!(x.floor_mul(100).unwrap(), BigInt::from(41));
        assert_eq!(x.ceil_mul(100).unwrap(), BigInt::from(42));
        assert_eq!(x.neg().floor().unwrap(), BigInt::from(-1));
        assert_eq!(x.cmp_rational(&q("41/100")).unwrap(), Ordering::Greater);
        assert_eq!(x.cmp_rational(&q("42/100")).unwrap(), Ordering::Less);
        assert_eq!(x.sub(&x).unwrap().signum().unwrap(), Ordering::Equal);
    }

    #[test]
    fn close_digit_strings_exhaust_precision() {
        // Two digit constants that agree to every supplied digit cannot be
        // separated: the difference has no certified sign.
        let b = IrrationalBasis::with_max_bits(
            vec![
                BasisElementSpec { name: "a".into(), kind: ConstantKind::Digits { digits: "0.123456".into() } },
                BasisElementSpec { name: "b".into(), kind: ConstantKind::Digits { digits: "0.123456".into() } },
            ],
            256,
        )
        .unwrap();
        let d = SymbolicReal::from_parts(&b, q("0"), vec![1, -1]).unwrap();
        assert_eq!(d.signum(), Err(Error::PrecisionExhausted { bits: 256 }));
    }

    #[test]
    fn finer_enclosure_is_inside() {
        let b: Arc<IrrationalBasis> = IrrationalBasis::sqrt(&[2, 3, 7]).unwrap();
        let x = SymbolicReal::from_parts(&b, q("3/11"), vec![2, -5, 1]).unwrap();
        for m in [1u64, 7, 1000, 123_456_789] {
            for bits in [64u32, 100, 300] {
                let coarse = x.frac_eval(m, bits).unwrap().enclosure();
                let fine = x.frac_eval(m, 2 * bits).unwrap().enclosure();
                assert!(coarse.width() <= Rational::new(1, BigInt::one() << bits).unwrap());
                assert!(coarse.contains(&fine.midpoint()));
            }
        }
    }
}
