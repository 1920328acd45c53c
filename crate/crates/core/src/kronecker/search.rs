use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::symbolic::SymbolicReal;

/// Approximate `{m theta_i}` to `value_i` within `tolerance_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub value: Rational,
    pub tolerance: Rational,
}

/// Restricts the search to `m = residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub modulus: u64,
    pub residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTask {
    targets: Vec<Target>,
    generators: Vec<SymbolicReal>,
    m_max: u64,
    congruence: Option<Congruence>,
}

impl SearchTask {
    /// The generators are declared independent; only their irrationality is
    /// checked.
    pub fn new(
        targets: Vec<Target>,
        generators: Vec<SymbolicReal>,
        m_max: u64,
        congruence: Option<Congruence>,
    ) -> Result<Self> {
        if targets.is_empty() || targets.len() != generators.len() {
            return Err(Error::invalid(format!(
                "{} targets for {} generators",
                targets.len(),
                generators.len()
            )));
        }
        for t in &targets {
            if !t.tolerance.is_positive() {
                return Err(Error::invalid(format!("tolerance {} must be positive", t.tolerance)));
            }
            if t.value.is_negative() || t.value > 1 {
                return Err(Error::invalid(format!("target {} is outside [0, 1]", t.value)));
            }
        }
        if generators.iter().any(SymbolicReal::is_rational) {
            return Err(Error::invalid("generator not irrational"));
        }
        if m_max == 0 {
            return Err(Error::invalid("m_max must be positive"));
        }
        if let Some(c) = congruence {
            if c.modulus == 0 || c.residue >= c.modulus {
                return Err(Error::invalid(format!(
                    "congruence needs modulus >= 1 and 0 <= residue < modulus, got {} mod {}",
                    c.residue, c.modulus
                )));
            }
        }
        Ok(SearchTask { targets, generators, m_max, congruence })
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn generators(&self) -> &[SymbolicReal] {
        &self.generators
    }

    pub fn m_max(&self) -> u64 {
        self.m_max
    }

    pub fn congruence(&self) -> Option<Congruence> {
        self.congruence
    }

    /// Whether `m` satisfies every target, decided exactly.
    pub fn hits(&self, m: u64) -> Result<bool> {
        for (theta, t) in self.generators.iter().zip(&self.targets) {
            if !within(&frac_mul(theta, m)?, &t.value, &t.tolerance)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `{m theta}` as an exact symbolic value.
pub fn frac_mul(theta: &SymbolicReal, m: u64) -> Result<SymbolicReal> {
    let m_i64 = i64::try_from(m).map_err(|_| Error::invalid("multiplier too large"))?;
    let floor = theta.floor_mul(m)?;
    Ok(theta.mul_int(m_i64).add_rational(&-Rational::from(floor)))
}

/// `|x - value| < tolerance`.
fn within(x: &SymbolicReal, value: &Rational, tolerance: &Rational) -> Result<bool> {
    Ok(x.cmp_rational(&(value - tolerance))? == Ordering::Greater
        && x.cmp_rational(&(value + tolerance))? == Ordering::Less)
}

/// Smallest admissible `m <= m_max` meeting every target, scanning the
/// range in parallel.
pub fn kronecker_search(task: &SearchTask) -> Result<Option<u64>> {
    let (modulus, residue) = task.congruence.map_or((1, 0), |c| (c.modulus, c.residue));
    let first = if residue == 0 { modulus } else { residue };
    let count = if first > task.m_max { 0 } else { (task.m_max - first) / modulus + 1 };
    (0..count)
        .into_par_iter()
        .map(|i| first + i * modulus)
        .find_map_first(|m| match task.hits(m) {
            Ok(true) => Some(Ok(m)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()
}
