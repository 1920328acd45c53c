use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::symbolic::{IrrationalBasis, SymbolicReal, SymbolicRealSpec};

/// Block data of a symplectic normal form in `Sp(2N-2)`.
///
/// Angles are stored as fractions of a full turn, so a rotation by `theta`
/// radians is stored as `theta / 2pi`, a value in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoincareNormalForm {
    pub basis: Arc<IrrationalBasis>,
    /// Index of the underlying symplectic path.
    pub i_base: i64,
    pub p_minus: u32,
    pub p_zero: u32,
    pub p_plus: u32,
    pub q_minus: u32,
    pub q_zero: u32,
    pub q_plus: u32,
    pub h: u32,
    pub rotations: Vec<SymbolicReal>,
    pub nontrivial_angles: Vec<SymbolicReal>,
    pub trivial_angles: Vec<SymbolicReal>,
    /// `N - 1`: the form acts on a space of dimension `2(N - 1)`.
    pub ambient_half_dim: u32,
}

fn to_i64(x: num_bigint::BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::invalid("integer result does not fit in 64 bits"))
}

fn parity(m: u64) -> i64 {
    i64::from(m.is_multiple_of(2))
}

/// `phi(m x)` for an angle: 0 exactly when `m x` is an integer.
fn phi_mul(x: &SymbolicReal, m: u64) -> i64 {
    match x.as_rational() {
        Some(r) => i64::from(r.mul_int(m).phi()),
        None => 1,
    }
}

fn check_unit_interval(label: &str, x: &SymbolicReal) -> Result<()> {
    let inside = x.cmp_rational(&Rational::zero())? == Ordering::Greater
        && x.cmp_rational(&Rational::one())? == Ordering::Less;
    if !inside {
        return Err(Error::invalid(format!("{label} {x} must lie in (0, 1)")));
    }
    if x.as_rational() == Some(&Rational::ratio(1, 2)) {
        return Err(Error::invalid(format!("{label} equal to 1/2 is not a normal-form angle")));
    }
    Ok(())
}

impl PoincareNormalForm {
    /// A form with no blocks besides `h` hyperbolic ones filling the
    /// dimension; fields can then be adjusted before [`validate`](Self::validate).
    pub fn empty(basis: &Arc<IrrationalBasis>, ambient_half_dim: u32) -> Self {
        PoincareNormalForm {
            basis: basis.clone(),
            i_base: 0,
            p_minus: 0,
            p_zero: 0,
            p_plus: 0,
            q_minus: 0,
            q_zero: 0,
            q_plus: 0,
            h: ambient_half_dim,
            rotations: Vec::new(),
            nontrivial_angles: Vec::new(),
            trivial_angles: Vec::new(),
            ambient_half_dim,
        }
    }

    /// Number of two-dimensional blocks described by the counts and angle
    /// lists; two-angle blocks count twice.
    pub fn block_dimension(&self) -> u64 {
        [self.p_minus, self.p_zero, self.p_plus, self.q_minus, self.q_zero, self.q_plus, self.h]
            .iter()
            .map(|&c| u64::from(c))
            .sum::<u64>()
            + self.rotations.len() as u64
            + 2 * self.nontrivial_angles.len() as u64
            + 2 * self.trivial_angles.len() as u64
    }

    pub fn validate(&self) -> Result<()> {
        if self.ambient_half_dim == 0 {
            return Err(Error::invalid("ambient_half_dim must be positive"));
        }
        if self.block_dimension() != u64::from(self.ambient_half_dim) {
            return Err(Error::invalid(format!(
                "blocks account for {} two-dimensional summands but ambient_half_dim is {}",
                self.block_dimension(),
                self.ambient_half_dim
            )));
        }
        let lists = [
            ("rotation", &self.rotations),
            ("nontrivial angle", &self.nontrivial_angles),
            ("trivial angle", &self.trivial_angles),
        ];
        for (label, list) in lists {
            for x in list {
                if !x.same_basis(&SymbolicReal::rational(&self.basis, Rational::zero())) {
                    return Err(Error::MixedBases);
                }
                check_unit_interval(label, x)?;
            }
        }
        Ok(())
    }

    /// Number of rotations with angle in `(pi, 2pi)`.
    pub fn rotations_above_half(&self) -> Result<usize> {
        let half = Rational::ratio(1, 2);
        let mut count = 0;
        for x in &self.rotations {
            if x.cmp_rational(&half)? == Ordering::Greater {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Nullity of the path itself, from the blocks with eigenvalue 1.
    pub fn base_nullity(&self) -> u64 {
        u64::from(self.p_minus) + 2 * u64::from(self.p_zero) + u64::from(self.p_plus)
    }

    /// Morse index of the `m`-th iterate.
    pub fn index(&self, m: u64) -> Result<i64> {
        if m == 0 {
            return Err(Error::invalid("iterate number must be positive"));
        }
        let mi = m as i64;
        let r = self.rotations.len() as i64;
        let r_star = self.nontrivial_angles.len() as i64;
        let (pm, pz) = (i64::from(self.p_minus), i64::from(self.p_zero));
        let mut total = mi * (self.i_base + pm + pz - r) - (pm + pz + r)
            - parity(m) * i64::from(self.q_zero + self.q_plus)
            - 2 * r_star;
        for theta in &self.rotations {
            total += 2 * to_i64(theta.ceil_mul(m)?)?;
        }
        for alpha in &self.nontrivial_angles {
            total += 2 * phi_mul(alpha, m);
        }
        Ok(total)
    }

    /// Nullity of the `m`-th iterate.
    pub fn nullity(&self, m: u64) -> Result<u64> {
        if m == 0 {
            return Err(Error::invalid("iterate number must be positive"));
        }
        let sigma: i64 = self
            .rotations
            .iter()
            .chain(&self.nontrivial_angles)
            .chain(&self.trivial_angles)
            .map(|x| 1 - phi_mul(x, m))
            .sum();
        let q = u64::from(self.q_minus) + 2 * u64::from(self.q_zero) + u64::from(self.q_plus);
        Ok(self.base_nullity() + parity(m) as u64 * q + 2 * sigma as u64)
    }

    /// `lim index(m) / m`, exactly.
    pub fn mean_index(&self) -> SymbolicReal {
        let constant = self.i_base + i64::from(self.p_minus) + i64::from(self.p_zero)
            - self.rotations.len() as i64;
        self.rotations.iter().fold(
            SymbolicReal::rational(&self.basis, Rational::from(constant)),
            |acc, t| acc.add(&t.mul_int(2)).expect("rotations share the form's basis"),
        )
    }

    /// Largest possible `|index(m) - m * mean_index|` over all `m`.
    ///
    /// Every correction term in the index formula is bounded by one block,
    /// so the deviation never exceeds `ambient_half_dim`.
    pub fn iteration_bound(&self) -> i64 {
        i64::from(self.ambient_half_dim)
    }

    /// Whether `|index(m) - m * mean_index| <= iteration_bound()` for all
    /// `1 <= m <= m_max`.
    pub fn mean_index_bound_check(&self, m_max: u64) -> Result<bool> {
        self.bound_check_against(&self.mean_index(), m_max)
    }

    /// As [`mean_index_bound_check`](Self::mean_index_bound_check) with a
    /// caller-supplied mean index.
    pub fn bound_check_against(&self, mean: &SymbolicReal, m_max: u64) -> Result<bool> {
        let bound = self.iteration_bound();
        let violations: Result<Vec<bool>> = (1..=m_max)
            .into_par_iter()
            .map(|m| {
                let i = self.index(m)?;
                let scaled = mean.mul_int(m as i64);
                let lo = scaled.cmp_rational(&Rational::from(i - bound))? != Ordering::Less;
                let hi = scaled.cmp_rational(&Rational::from(i + bound))? != Ordering::Greater;
                Ok(!(lo && hi))
            })
            .collect();
        Ok(!violations?.into_iter().any(|v| v))
    }

    /// The smallest `j` in `2p N` at which the nullity reaches its maximum
    /// over all iterates.
    pub fn analytical_period(&self, p: u64) -> Result<u64> {
        if p < 2 {
            return Err(Error::invalid("group order p must be at least 2"));
        }
        let lcm = self
            .rotations
            .iter()
            .chain(&self.nontrivial_angles)
            .chain(&self.trivial_angles)
            .filter_map(|x| x.as_rational())
            .map(|r| r.denom().to_u64().expect("angle denominators fit in 64 bits"))
            .fold(1u64, |acc, d| acc.lcm(&d));
        let peak = self.nullity(2 * lcm)?;
        let mut j = 2 * p;
        loop {
            if self.nullity(j)? == peak {
                return Ok(j);
            }
            j += 2 * p;
        }
    }
}

/// Serialized form of a [`PoincareNormalForm`]; angles refer to the basis
/// declared alongside.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormSpec {
    #[serde(default)]
    pub i_base: i64,
    #[serde(default)]
    pub p_minus: u32,
    #[serde(default)]
    pub p_zero: u32,
    #[serde(default)]
    pub p_plus: u32,
    #[serde(default)]
    pub q_minus: u32,
    #[serde(default)]
    pub q_zero: u32,
    #[serde(default)]
    pub q_plus: u32,
    #[serde(default)]
    pub h: u32,
    #[serde(default)]
    pub rotations: Vec<SymbolicRealSpec>,
    #[serde(default)]
    pub nontrivial_angles: Vec<SymbolicRealSpec>,
    #[serde(default)]
    pub trivial_angles: Vec<SymbolicRealSpec>,
    pub ambient_half_dim: u32,
}

impl NormalFormSpec {
    pub fn resolve(&self, basis: &Arc<IrrationalBasis>) -> Result<PoincareNormalForm> {
        let list = |v: &[SymbolicRealSpec]| v.iter().map(|s| s.resolve(basis)).collect::<Result<Vec<_>>>();
        let nf = PoincareNormalForm {
            basis: basis.clone(),
            i_base: self.i_base,
            p_minus: self.p_minus,
            p_zero: self.p_zero,
            p_plus: self.p_plus,
            q_minus: self.q_minus,
            q_zero: self.q_zero,
            q_plus: self.q_plus,
            h: self.h,
            rotations: list(&self.rotations)?,
            nontrivial_angles: list(&self.nontrivial_angles)?,
            trivial_angles: list(&self.trivial_angles)?,
            ambient_half_dim: self.ambient_half_dim,
        };
        nf.validate()?;
        Ok(nf)
    }
}

impl From<&PoincareNormalForm> for NormalFormSpec {
    fn from(nf: &PoincareNormalForm) -> Self {
        let list = |v: &[SymbolicReal]| v.iter().map(SymbolicReal::to_spec).collect();
        NormalFormSpec {
            i_base: nf.i_base,
            p_minus: nf.p_minus,
            p_zero: nf.p_zero,
            p_plus: nf.p_plus,
            q_minus: nf.q_minus,
            q_zero: nf.q_zero,
            q_plus: nf.q_plus,
            h: nf.h,
            rotations: list(&nf.rotations),
            nontrivial_angles: list(&nf.nontrivial_angles),
            trivial_angles: list(&nf.trivial_angles),
            ambient_half_dim: nf.ambient_half_dim,
        }
    }
}
