use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PoincareNormalForm;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::symbolic::{IrrationalBasis, SymbolicReal, SymbolicRealSpec};

/// Index data of the minimal closed geodesic on `S^(2n+1)/G` under a bumpy
/// metric, reduced to `k` irrational rotation fractions `theta_hat`.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpyGeodesicConfig {
    n_half: u32,
    p_bar: u32,
    theta_hats: Vec<SymbolicReal>,
}

/// Where an iterate `m = p_bar (n + 1) l + p_bar L + 1` falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub l: i64,
    #[serde(rename = "L")]
    pub big_l: i64,
    /// Interval index in `[0, k - 1]`.
    pub interval: u32,
    pub index: i64,
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::invalid("integer result does not fit in 64 bits"))
}

impl BumpyGeodesicConfig {
    pub fn new(n_half: u32, p_bar: u32, theta_hats: Vec<SymbolicReal>) -> Result<Self> {
        let cfg = BumpyGeodesicConfig { n_half, p_bar, theta_hats };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let (n, p, k) = (self.n_half, self.p_bar, self.k());
        if n == 0 {
            return Err(Error::invalid("n_half must be positive"));
        }
        if p < 2 {
            return Err(Error::invalid("p_bar must be at least 2"));
        }
        if k < 2 || k > 2 * n {
            return Err(Error::invalid(format!("need 2 <= k <= 2n = {}, got k = {k}", 2 * n)));
        }
        if (k * p) % 2 != 0 {
            return Err(Error::invalid(format!("k * p_bar = {} must be even", k * p)));
        }
        let basis = self.theta_hats[0].basis();
        for t in &self.theta_hats {
            if !t.same_basis(&self.theta_hats[0]) {
                return Err(Error::MixedBases);
            }
            if t.is_rational() {
                return Err(Error::invalid(format!("theta_hat {t} must be irrational")));
            }
            if t.cmp_rational(&Rational::zero())? != Ordering::Greater
                || t.cmp_rational(&Rational::one())? != Ordering::Less
            {
                return Err(Error::invalid(format!("theta_hat {t} must lie in (0, 1)")));
            }
        }
        let sum = SymbolicReal::sum(&self.theta_hats)?;
        let target = self.theta_sum();
        if sum != SymbolicReal::rational(basis, target.clone()) {
            return Err(Error::invalid(format!(
                "theta_hats sum to {sum}, the mean-index constraint requires {target}"
            )));
        }
        Ok(())
    }

    pub fn n_half(&self) -> u32 {
        self.n_half
    }

    pub fn p_bar(&self) -> u32 {
        self.p_bar
    }

    pub fn k(&self) -> u32 {
        self.theta_hats.len() as u32
    }

    pub fn theta_hats(&self) -> &[SymbolicReal] {
        &self.theta_hats
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        self.theta_hats[0].basis()
    }

    /// `p_bar (n + 1)`, the length of one index period `2n`.
    pub fn block(&self) -> i64 {
        i64::from(self.p_bar) * (i64::from(self.n_half) + 1)
    }

    /// The required value of `sum(theta_hat)`: `k/2 + n / (p_bar (n + 1))`.
    pub fn theta_sum(&self) -> Rational {
        Rational::ratio(i64::from(self.k()), 2) + Rational::ratio(i64::from(self.n_half), self.block())
    }

    /// Mean index `2n / (p_bar (n + 1))`.
    pub fn mean_index(&self) -> Rational {
        Rational::ratio(2 * i64::from(self.n_half), self.block())
    }

    /// Index from the ceiling form `-mk - k + 2 sum E(m theta_hat)`.
    pub fn index_via_ceilings(&self, m: u64) -> Result<i64> {
        let k = i64::from(self.k());
        let mut total = -(m as i64) * k - k;
        for t in &self.theta_hats {
            total += 2 * to_i64(t.ceil_mul(m)?)?;
        }
        Ok(total)
    }

    /// Index from the fractional-part form
    /// `m * mean_index + k - 2 sum {m theta_hat}`, evaluated on certified
    /// enclosures of each fractional part and rounded to the unique integer
    /// in the resulting interval.
    pub fn index_via_fractions(&self, m: u64) -> Result<i64> {
        let mut lo = self.mean_index().mul_int(m) + Rational::from(i64::from(self.k()));
        let mut hi = lo.clone();
        for t in &self.theta_hats {
            let e = t.frac_eval(m, 8)?.enclosure();
            lo -= &e.hi.mul_int(2);
            hi -= &e.lo.mul_int(2);
        }
        let candidate = hi.floor();
        if Rational::from(candidate.clone()) < lo {
            return Err(Error::Inconsistent(format!(
                "no integer in the enclosure [{lo}, {hi}] of the index at m = {m}"
            )));
        }
        to_i64(candidate)
    }

    /// Morse index of the `m`-th iterate, computed by both formulas and
    /// cross-checked.
    pub fn index(&self, m: u64) -> Result<i64> {
        if m == 0 {
            return Err(Error::invalid("iterate number must be positive"));
        }
        let a = self.index_via_ceilings(m)?;
        let b = self.index_via_fractions(m)?;
        if a != b {
            return Err(Error::Inconsistent(format!(
                "index formulas disagree at m = {m}: {a} vs {b}"
            )));
        }
        Ok(a)
    }

    /// `Q_L = k/2 + (p_bar L + 1) n / (p_bar (n + 1))`.
    pub fn q_of_l(&self, big_l: i64) -> Rational {
        Rational::ratio(i64::from(self.k()), 2)
            + Rational::ratio((i64::from(self.p_bar) * big_l + 1) * i64::from(self.n_half), self.block())
    }

    /// The `k` open intervals `I_0(L), ..., I_{k-1}(L)` partitioning
    /// `(0, k - 1)` up to their endpoints.
    pub fn intervals(&self, big_l: i64) -> Vec<(Rational, Rational)> {
        let f = self.q_of_l(big_l).frac();
        let k = i64::from(self.k());
        (0..k)
            .map(|i| {
                let lo = if i == 0 { Rational::zero() } else { Rational::from(i - 1) + &f };
                let hi = if i == k - 1 { Rational::from(k - 1) } else { Rational::from(i) + &f };
                (lo, hi)
            })
            .collect()
    }

    /// Canonical `(l, L)` with `m = p_bar (n + 1) l + p_bar L + 1` and
    /// `0 <= L <= n`.
    pub fn decompose(&self, m: u64) -> Result<(i64, i64)> {
        let p = u64::from(self.p_bar);
        if m == 0 || !(m - 1).is_multiple_of(p) {
            return Err(Error::invalid(format!("m = {m} is not congruent to 1 mod {p}")));
        }
        let t = ((m - 1) / p) as i64;
        Ok(t.div_mod_floor(&(i64::from(self.n_half) + 1)))
    }

    /// `p_bar (n + 1) l + p_bar L + 1`.
    pub fn compose(&self, l: i64, big_l: i64) -> i64 {
        self.block() * l + i64::from(self.p_bar) * big_l + 1
    }

    /// `sum_{j >= 2} {m theta_hat_j}` as an exact symbolic value.
    pub fn tail_fraction_sum(&self, m: u64) -> Result<SymbolicReal> {
        let tail = &self.theta_hats[1..];
        let mut s = SymbolicReal::sum(tail)?.mul_int(m as i64);
        for t in tail {
            s = s.add_rational(&-Rational::from(t.floor_mul(m)?));
        }
        Ok(s)
    }

    /// Position of `s` among the intervals for `L`: the number of interior
    /// endpoints `t + {Q_L}` below it.
    pub fn interval_of(&self, big_l: i64, s: &SymbolicReal) -> Result<u32> {
        let f = self.q_of_l(big_l).frac();
        let mut interval = 0u32;
        for t in 0..i64::from(self.k()) - 1 {
            let endpoint = Rational::from(t) + &f;
            match s.cmp_rational(&endpoint)? {
                Ordering::Greater => interval += 1,
                Ordering::Less => break,
                Ordering::Equal => return Err(Error::Boundary(format!("value equals the endpoint {endpoint}"))),
            }
        }
        Ok(interval)
    }

    /// Interval classification with the canonical decomposition.
    pub fn classify_interval(&self, m: u64) -> Result<Classification> {
        let (l, big_l) = self.decompose(m)?;
        self.classify_with(m, l, big_l)
    }

    /// Interval classification for an arbitrary decomposition
    /// `m = p_bar (n + 1) l + p_bar L + 1`, `L` any integer.
    pub fn classify_with(&self, m: u64, l: i64, big_l: i64) -> Result<Classification> {
        if m == 0 || self.compose(l, big_l) != m as i64 {
            return Err(Error::invalid(format!(
                "m = {m} is not p_bar (n + 1) l + p_bar L + 1 for l = {l}, L = {big_l}"
            )));
        }
        let interval = self.interval_of(big_l, &self.tail_fraction_sum(m)?)?;
        let n = i64::from(self.n_half);
        let index = 2 * n * l + 2 * to_i64(self.q_of_l(big_l).floor())? - 2 * i64::from(interval);
        let direct = self.index(m)?;
        if index != direct {
            return Err(Error::Inconsistent(format!(
                "interval classification gives {index}, direct evaluation {direct} at m = {m}"
            )));
        }
        Ok(Classification { l, big_l, interval, index })
    }

    /// Checks `|index(m) - 2nl| > 2n` whenever `|m - p_bar (n + 1) l| > 2 p_bar (n + 1)`,
    /// for `1 <= l <= l_max` and `1 <= m <= m_max`.
    pub fn index_gap_check(&self, l_max: u64, m_max: u64) -> Result<bool> {
        let indices: Vec<i64> = (1..=m_max).into_par_iter().map(|m| self.index(m)).collect::<Result<_>>()?;
        let n = i64::from(self.n_half);
        let block = self.block();
        Ok((1..=l_max as i64).all(|l| {
            indices.iter().enumerate().all(|(pos, &i)| {
                let m = pos as i64 + 1;
                (m - block * l).abs() <= 2 * block || (i - 2 * n * l).abs() > 2 * n
            })
        }))
    }

    /// The same index function written as a general normal form: `k`
    /// rotations and `2n - k` hyperbolic blocks on a space of dimension `4n`.
    pub fn to_normal_form(&self) -> PoincareNormalForm {
        let mut nf = PoincareNormalForm::empty(self.basis(), 2 * self.n_half);
        nf.h = 2 * self.n_half - self.k();
        nf.rotations = self.theta_hats.clone();
        nf
    }

    pub fn to_spec(&self) -> BumpySpec {
        BumpySpec {
            n_half: self.n_half,
            p_bar: self.p_bar,
            k: Some(self.k()),
            theta_hats: self.theta_hats.iter().map(SymbolicReal::to_spec).collect(),
        }
    }
}

/// Serialized form of a [`BumpyGeodesicConfig`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpySpec {
    pub n_half: u32,
    pub p_bar: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub theta_hats: Vec<SymbolicRealSpec>,
}

impl BumpySpec {
    pub fn resolve(&self, basis: &Arc<IrrationalBasis>) -> Result<BumpyGeodesicConfig> {
        if let Some(k) = self.k {
            if k as usize != self.theta_hats.len() {
                return Err(Error::invalid(format!(
                    "k = {k} but {} theta_hats given",
                    self.theta_hats.len()
                )));
            }
        }
        let thetas = self.theta_hats.iter().map(|s| s.resolve(basis)).collect::<Result<_>>()?;
        BumpyGeodesicConfig::new(self.n_half, self.p_bar, thetas)
    }
}
