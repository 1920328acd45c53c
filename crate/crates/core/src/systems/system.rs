use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::symbolic::{IrrationalBasis, SymbolicReal, SymbolicRealSpec};

/// A rank-one system `theta_hat_j = p_j theta + xi_j`.
///
/// Indices are zero-based throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrationalSystem {
    weights: Vec<i64>,
    offsets: Vec<Rational>,
    generator: SymbolicReal,
}

/// The sets `K0+`, `K0-` and `K1` of a system.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Partition {
    pub k0_plus: Vec<usize>,
    pub k0_minus: Vec<usize>,
    pub k1: Vec<usize>,
}

impl Partition {
    pub fn absolute_difference(&self) -> u64 {
        self.k0_plus.len().abs_diff(self.k0_minus.len()) as u64
    }
}

/// The effective difference number and the smallest `eta` in `[0, 1)`
/// attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EffectiveDifference {
    pub value: u64,
    pub witness: Rational,
}

impl IrrationalSystem {
    /// Builds a system, checking the shape, `sum p_j = 0`,
    /// `{sum xi_j} not in {0, 1/2}` and irrationality of the generator.
    pub fn new(weights: Vec<i64>, offsets: Vec<Rational>, generator: SymbolicReal) -> Result<Self> {
        let sys = Self::unchecked(weights, offsets, generator)?;
        if sys.weights.iter().sum::<i64>() != 0 {
            return Err(Error::invalid("weights must sum to zero"));
        }
        let s = sys.offset_sum();
        if s.is_zero() || s == Rational::ratio(1, 2) {
            return Err(Error::invalid(format!("fractional part of the offset sum is {s}, must avoid 0 and 1/2")));
        }
        if sys.generator.is_rational() {
            return Err(Error::invalid("generator must be irrational"));
        }
        Ok(sys)
    }

    /// Builds a system with only the shape checks: equal lengths, nonzero
    /// weights and offsets in `[0, 1)`. Used for control vectors.
    pub fn unchecked(weights: Vec<i64>, offsets: Vec<Rational>, generator: SymbolicReal) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("a system needs at least one equation"));
        }
        if weights.len() != offsets.len() {
            return Err(Error::invalid(format!(
                "{} weights but {} offsets",
                weights.len(),
                offsets.len()
            )));
        }
        if let Some(j) = weights.iter().position(|&p| p == 0) {
            return Err(Error::invalid(format!("weight {j} is zero")));
        }
        if let Some(j) = offsets.iter().position(|x| x.is_negative() || *x >= 1) {
            return Err(Error::invalid(format!("offset {j} = {} is outside [0, 1)", offsets[j])));
        }
        Ok(IrrationalSystem { weights, offsets, generator })
    }

    pub(crate) fn from_parts(weights: Vec<i64>, offsets: Vec<Rational>, generator: SymbolicReal) -> Self {
        IrrationalSystem { weights, offsets, generator }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn generator(&self) -> &SymbolicReal {
        &self.generator
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `{xi_1 + ... + xi_k}`.
    pub fn offset_sum(&self) -> Rational {
        self.offsets.iter().sum::<Rational>().frac()
    }

    /// The values `theta_hat_j = p_j theta + xi_j`.
    pub fn theta_hats(&self) -> Vec<SymbolicReal> {
        self.weights
            .iter()
            .zip(&self.offsets)
            .map(|(&p, xi)| self.generator.mul_int(p).add_rational(xi))
            .collect()
    }

    /// `theta -> theta + eta`, `xi_j -> {xi_j - p_j eta}`.
    pub fn eta_action(&self, eta: &Rational) -> Self {
        let offsets = self.shifted_offsets(eta);
        IrrationalSystem { weights: self.weights.clone(), offsets, generator: self.generator.add_rational(eta) }
    }

    fn shifted_offsets(&self, eta: &Rational) -> Vec<Rational> {
        self.weights
            .iter()
            .zip(&self.offsets)
            .map(|(&p, xi)| (xi - &eta.mul_int(p)).frac())
            .collect()
    }

    /// The partition of the system as given.
    pub fn partition(&self) -> Partition {
        partition_of(&self.weights, &self.offsets)
    }

    /// The partition after the `eta`-action.
    pub fn partition_at(&self, eta: &Rational) -> Partition {
        partition_of(&self.weights, &self.shifted_offsets(eta))
    }

    /// `|#K0+(eta) - #K0-(eta)|`.
    pub fn absolute_difference(&self, eta: &Rational) -> u64 {
        self.partition_at(eta).absolute_difference()
    }

    /// All `eta` in `[0, 1)` at which some offset vanishes, together with 0.
    pub fn candidates(&self) -> BTreeSet<Rational> {
        let mut out = BTreeSet::from([Rational::zero()]);
        for (&p, xi) in self.weights.iter().zip(&self.offsets) {
            for t in 0..p.abs() {
                let eta = (xi + &Rational::from(t)) * Rational::ratio(1, p);
                out.insert(eta.frac());
            }
        }
        out
    }

    /// The maximum of the absolute difference over rational `eta`.
    ///
    /// The absolute difference has period 1 in `eta` and is 0 unless some
    /// offset vanishes, so the maximum is attained on [`Self::candidates`].
    pub fn effective_difference(&self) -> EffectiveDifference {
        let mut best = EffectiveDifference { value: 0, witness: Rational::zero() };
        for eta in self.candidates() {
            let v = self.absolute_difference(&eta);
            if v > best.value {
                best = EffectiveDifference { value: v, witness: eta };
            }
        }
        best
    }

    /// Whether two systems have the same absolute difference at every
    /// rational `eta`. Finer than equality of effective differences.
    pub fn pointwise_equivalent(&self, other: &IrrationalSystem) -> bool {
        let mut etas = self.candidates();
        etas.extend(other.candidates());
        etas.iter().all(|eta| self.absolute_difference(eta) == other.absolute_difference(eta))
    }

    /// Whether two systems have the same effective difference number.
    pub fn equivalent(&self, other: &IrrationalSystem) -> bool {
        self.effective_difference().value == other.effective_difference().value
    }

    pub fn to_spec(&self) -> SystemSpec {
        SystemSpec {
            weights: self.weights.clone(),
            offsets: self.offsets.clone(),
            generator: self.generator.to_spec(),
        }
    }
}

fn partition_of(weights: &[i64], offsets: &[Rational]) -> Partition {
    let mut part = Partition::default();
    for (j, (&p, xi)) in weights.iter().zip(offsets).enumerate() {
        match (xi.is_zero(), p > 0) {
            (true, true) => part.k0_plus.push(j),
            (true, false) => part.k0_minus.push(j),
            (false, _) => part.k1.push(j),
        }
    }
    part
}

impl Serialize for IrrationalSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(serializer)
    }
}

/// Serialized form of an [`IrrationalSystem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub weights: Vec<i64>,
    pub offsets: Vec<Rational>,
    pub generator: SymbolicRealSpec,
}

impl SystemSpec {
    pub fn resolve(&self, basis: &Arc<IrrationalBasis>) -> Result<IrrationalSystem> {
        IrrationalSystem::new(self.weights.clone(), self.offsets.clone(), self.generator.resolve(basis)?)
    }

    pub fn resolve_unchecked(&self, basis: &Arc<IrrationalBasis>) -> Result<IrrationalSystem> {
        IrrationalSystem::unchecked(self.weights.clone(), self.offsets.clone(), self.generator.resolve(basis)?)
    }
}
