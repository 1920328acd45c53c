//! Real numbers of the form `rational + sum(c_i * e_i)` over a declared
//! basis of irrational constants `e_i`, with integer coefficients `c_i`.
//!
//! Equality and rationality are decided exactly from the coefficients.
//! Anything that needs the numeric value (floors, fractional parts,
//! comparisons) goes through certified enclosures, see [`enclosure`].

mod basis;
mod enclosure;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use basis::{BasisElement, BasisElementSpec, ConstantKind, IrrationalBasis, DEFAULT_MAX_BITS};
pub use enclosure::{Enclosure, FracValue};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone)]
pub struct SymbolicReal {
    basis: Arc<IrrationalBasis>,
    rational: Rational,
    coeffs: Vec<i64>,
}

impl SymbolicReal {
    pub fn rational(basis: &Arc<IrrationalBasis>, value: Rational) -> Self {
        SymbolicReal { basis: basis.clone(), rational: value, coeffs: vec![0; basis.len()] }
    }

    /// The basis element called `name`, with coefficient 1.
    pub fn element(basis: &Arc<IrrationalBasis>, name: &str) -> Result<Self> {
        Self::from_named(basis, Rational::zero(), &[(name, 1)])
    }

    pub fn from_parts(basis: &Arc<IrrationalBasis>, rational: Rational, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        Ok(SymbolicReal { basis: basis.clone(), rational, coeffs })
    }

    pub fn from_named(basis: &Arc<IrrationalBasis>, rational: Rational, terms: &[(&str, i64)]) -> Result<Self> {
        let mut coeffs = vec![0i64; basis.len()];
        for (name, c) in terms {
            let i = basis
                .index_of(name)
                .ok_or_else(|| Error::invalid(format!("unknown basis element {name:?}")))?;
            coeffs[i] = coeffs[i]
                .checked_add(*c)
                .ok_or_else(|| Error::invalid("coefficient overflow"))?;
        }
        Ok(SymbolicReal { basis: basis.clone(), rational, coeffs })
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn same_basis(&self, other: &SymbolicReal) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || *self.basis == *other.basis
    }

    fn zip_coeffs(&self, other: &SymbolicReal, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Vec<i64>> {
        if !self.same_basis(other) {
            return Err(Error::MixedBases);
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or_else(|| Error::invalid("coefficient overflow")))
            .collect()
    }

    pub fn add(&self, other: &SymbolicReal) -> Result<Self> {
        let coeffs = self.zip_coeffs(other, i64::checked_add)?;
        Ok(SymbolicReal { basis: self.basis.clone(), rational: &self.rational + &other.rational, coeffs })
    }

    pub fn sub(&self, other: &SymbolicReal) -> Result<Self> {
        let coeffs = self.zip_coeffs(other, i64::checked_sub)?;
        Ok(SymbolicReal { basis: self.basis.clone(), rational: &self.rational - &other.rational, coeffs })
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        SymbolicReal { basis: self.basis.clone(), rational: &self.rational + r, coeffs: self.coeffs.clone() }
    }

    /// `k * self`.
    ///
    /// # Panics
    /// If a coefficient overflows `i64`.
    pub fn mul_int(&self, k: i64) -> Self {
        SymbolicReal {
            basis: self.basis.clone(),
            rational: self.rational.mul_int(k),
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| c.checked_mul(k).expect("coefficient overflow"))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.mul_int(-1)
    }

    /// Sum of a non-empty sequence over one basis.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a SymbolicReal>) -> Result<Self> {
        let mut it = items.into_iter();
        let first = it.next().ok_or_else(|| Error::invalid("empty sum"))?.clone();
        it.try_fold(first, |acc, x| acc.add(x))
    }

    pub fn to_spec(&self) -> SymbolicRealSpec {
        SymbolicRealSpec {
            rational: self.rational.clone(),
            coeffs: self
                .basis
                .elements()
                .iter()
                .zip(&self.coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e.name().to_string(), c))
                .collect(),
        }
    }
}

impl PartialEq for SymbolicReal {
    fn eq(&self, other: &Self) -> bool {
        self.same_basis(other) && self.rational == other.rational && self.coeffs == other.coeffs
    }
}

impl Eq for SymbolicReal {}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (e, &c) in self.basis.elements().iter().zip(&self.coeffs) {
            match c {
                0 => {}
                1 => write!(f, " + {}", e.name())?,
                -1 => write!(f, " - {}", e.name())?,
                c if c < 0 => write!(f, " - {}*{}", -(c as i128), e.name())?,
                c => write!(f, " + {}*{}", c, e.name())?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized form of a [`SymbolicReal`]; resolved against a basis by name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicRealSpec {
    #[serde(default)]
    pub rational: Rational,
    #[serde(default)]
    pub coeffs: BTreeMap<String, i64>,
}

impl SymbolicRealSpec {
    pub fn resolve(&self, basis: &Arc<IrrationalBasis>) -> Result<SymbolicReal> {
        let terms: Vec<(&str, i64)> = self.coeffs.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        SymbolicReal::from_named(basis, self.rational.clone(), &terms)
    }
}

impl Serialize for SymbolicReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(serializer)
    }
}

/// Rank over the rationals of a rectangular matrix, by exact elimination.
pub(crate) fn matrix_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].checked_div(&pivot_row[col]).expect("nonzero pivot");
            for (x, p) in rows[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &(&factor * p);
            }
        }
        rank += 1;
    }
    rank
}

fn check_one_basis(set: &[SymbolicReal]) -> Result<()> {
    match set.first() {
        Some(first) if set.iter().any(|x| !x.same_basis(first)) => Err(Error::MixedBases),
        _ => Ok(()),
    }
}

/// Dimension of the span of `set` modulo the rationals, i.e. the rank of its
/// coefficient matrix.
pub fn rank(set: &[SymbolicReal]) -> Result<usize> {
    check_one_basis(set)?;
    let rows = set
        .iter()
        .map(|x| x.coeffs.iter().map(|&c| Rational::from(c)).collect())
        .collect();
    Ok(matrix_rank(rows))
}

/// Whether `sum(c_j * set_j)` is rational.
pub fn detect_dependence(set: &[SymbolicReal], c: &[Rational]) -> Result<bool> {
    if set.len() != c.len() {
        return Err(Error::invalid(format!(
            "{} elements but {} multipliers",
            set.len(),
            c.len()
        )));
    }
    check_one_basis(set)?;
    let Some(first) = set.first() else {
        return Ok(true);
    };
    Ok((0..first.basis.len()).all(|i| {
        set.iter()
            .zip(c)
            .map(|(x, cj)| cj.mul_int(x.coeffs[i]))
            .sum::<Rational>()
            .is_zero()
    }))
}
