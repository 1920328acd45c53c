//! Mean Euler numbers, Morse-type numbers and the resonance identity
//! `sum chi_hat(c_j) / i_hat(c_j) = B(Lambda_h M)` for the closed geodesics
//! of one non-trivial class `h` of order `p` on a space form.
//!
//! Only the iterates `c^(p(m-1)+1)` lie in the class of `h`, so residues
//! below are indexed by `m >= 1` and refer to the iterate `p(m - 1) + 1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iteration::{BumpyGeodesicConfig, BumpySpec, NormalFormSpec, PoincareNormalForm};
use crate::rational::Rational;
use crate::symbolic::{IrrationalBasis, SymbolicReal};
use crate::topology::{average_betti, SpaceFormSpec};

/// Where the iterated indices of a geodesic come from.
#[derive(Debug, Clone, PartialEq)]
pub enum IndexFunction {
    Bumpy(BumpyGeodesicConfig),
    NormalForm(PoincareNormalForm),
}

impl IndexFunction {
    pub fn index(&self, m: u64) -> Result<i64> {
        match self {
            IndexFunction::Bumpy(c) => c.index(m),
            IndexFunction::NormalForm(nf) => nf.index(m),
        }
    }

    pub fn nullity(&self, m: u64) -> Result<u64> {
        match self {
            IndexFunction::Bumpy(_) => Ok(0),
            IndexFunction::NormalForm(nf) => nf.nullity(m),
        }
    }

    pub fn mean_index(&self) -> SymbolicReal {
        match self {
            IndexFunction::Bumpy(c) => SymbolicReal::rational(c.basis(), c.mean_index()),
            IndexFunction::NormalForm(nf) => nf.mean_index(),
        }
    }

    /// Bound on `|index(m) - m * mean_index|`.
    pub fn iteration_bound(&self) -> i64 {
        match self {
            IndexFunction::Bumpy(c) => 2 * i64::from(c.n_half()),
            IndexFunction::NormalForm(nf) => nf.iteration_bound(),
        }
    }

    pub fn analytical_period(&self, p: u64) -> Result<u64> {
        match self {
            IndexFunction::Bumpy(c) => c.to_normal_form().analytical_period(p),
            IndexFunction::NormalForm(nf) => nf.analytical_period(p),
        }
    }
}

/// Local homological type numbers `k_l` of the iterates `c^(p(m-1)+1)` over
/// one analytical period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologicalTypeTable {
    period: u64,
    p: u64,
    entries: BTreeMap<(u64, u32), u64>,
}

impl HomologicalTypeTable {
    /// `entries` maps `(m, l)` to `k_l` for `1 <= m <= period / p`; missing
    /// entries are 0.
    pub fn new(period: u64, p: u64, entries: BTreeMap<(u64, u32), u64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::invalid("p must be at least 2"));
        }
        if period == 0 || !period.is_multiple_of(2 * p) {
            return Err(Error::invalid(format!("period {period} is not a positive multiple of 2p = {}", 2 * p)));
        }
        if let Some(&(m, _)) = entries.keys().find(|(m, _)| *m == 0 || *m > period / p) {
            return Err(Error::invalid(format!("residue m = {m} outside 1..={}", period / p)));
        }
        Ok(HomologicalTypeTable { period, p, entries })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of residues `period / p`.
    pub fn residues(&self) -> u64 {
        self.period / self.p
    }

    /// `k_l` of the iterate `c^(p(m-1)+1)`, for any `m >= 1`.
    pub fn get(&self, m: u64, l: u32) -> u64 {
        let r = (m - 1) % self.residues() + 1;
        self.entries.get(&(r, l)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(u64, u32), u64> {
        &self.entries
    }

    fn max_degree(&self) -> u32 {
        self.entries.keys().map(|&(_, l)| l).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeTable {
    /// Generated from the indices: `k_0 = 1` exactly at the residues where
    /// `index(p(m-1)+1) - minimal_index` is even. Requires every iterate in
    /// the class to be non-degenerate.
    NonDegenerate,
    Explicit(HomologicalTypeTable),
}

/// A homologically visible closed geodesic.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicRecord {
    pub name: String,
    pub index_fn: IndexFunction,
    pub type_table: TypeTable,
    /// Index of the underlying prime geodesic.
    pub minimal_index: i64,
}

impl GeodesicRecord {
    /// Validates that the mean index is positive.
    pub fn new(name: impl Into<String>, index_fn: IndexFunction, type_table: TypeTable, minimal_index: i64) -> Result<Self> {
        let rec = GeodesicRecord { name: name.into(), index_fn, type_table, minimal_index };
        if rec.index_fn.mean_index().signum()? != std::cmp::Ordering::Greater {
            return Err(Error::invalid(format!(
                "geodesic {}: mean index {} must be positive",
                rec.name,
                rec.index_fn.mean_index()
            )));
        }
        Ok(rec)
    }

    /// Index of the iterate `c^(p(m-1)+1)`.
    pub fn class_index(&self, p: u64, m: u64) -> Result<i64> {
        self.index_fn.index(p * (m - 1) + 1)
    }

    /// `(-1)^(index(p(m-1)+1) - minimal_index)`.
    pub fn epsilon(&self, p: u64, m: u64) -> Result<i8> {
        Ok(if (self.class_index(p, m)? - self.minimal_index) % 2 == 0 { 1 } else { -1 })
    }

    /// The type-number table, generating it for non-degenerate records.
    pub fn table(&self, p: u64) -> Result<HomologicalTypeTable> {
        match &self.type_table {
            TypeTable::Explicit(t) => {
                if t.p != p {
                    return Err(Error::invalid(format!(
                        "geodesic {}: table is for p = {}, space form has p = {p}",
                        self.name, t.p
                    )));
                }
                Ok(t.clone())
            }
            TypeTable::NonDegenerate => {
                let period = self.index_fn.analytical_period(p)?;
                let mut entries = BTreeMap::new();
                for m in 1..=period / p {
                    let j = p * (m - 1) + 1;
                    if self.index_fn.nullity(j)? != 0 {
                        return Err(Error::invalid(format!(
                            "geodesic {}: iterate {j} is degenerate, supply an explicit type table",
                            self.name
                        )));
                    }
                    if self.epsilon(p, m)? == 1 {
                        entries.insert((m, 0), 1);
                    }
                }
                HomologicalTypeTable::new(period, p, entries)
            }
        }
    }

    /// Mean index as an exact rational, if it is one.
    pub fn rational_mean_index(&self) -> Result<Rational> {
        self.index_fn.mean_index().as_rational().cloned().ok_or_else(|| {
            Error::invalid(format!("geodesic {}: mean index is not rational", self.name))
        })
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(1/n_c) sum_{m=1}^{n_c/p} sum_{l=0}^{2(dim-1)} (-1)^(l + i(c^(p(m-1)+1))) k_l(m)`.
pub fn mean_euler(rec: &GeodesicRecord, space: &SpaceFormSpec) -> Result<Rational> {
    let p = u64::from(space.p_order);
    let table = rec.table(p)?;
    let l_max = 2 * (space.n_dim - 1);
    if table.max_degree() > l_max {
        return Err(Error::invalid(format!(
            "geodesic {}: type numbers given in degree {} > {l_max}",
            rec.name,
            table.max_degree()
        )));
    }
    let mut total = 0i64;
    for m in 1..=table.residues() {
        let i = rec.class_index(p, m)?;
        for l in 0..=l_max {
            let k = table.get(m, l) as i64;
            if k != 0 {
                total += sign(i64::from(l) + i) * k;
            }
        }
    }
    Ok(Rational::ratio(total, table.period() as i64))
}

/// `sum chi_hat(c_j) / i_hat(c_j)`.
pub fn resonance_lhs(records: &[GeodesicRecord], space: &SpaceFormSpec) -> Result<Rational> {
    let mut total = Rational::zero();
    for rec in records {
        let chi = mean_euler(rec, space)?;
        total += &chi.checked_div(&rec.rational_mean_index()?)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs == rhs;
        IdentityCheck { lhs, rhs, holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResonanceReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    /// The form for bumpy metrics, present when every record is
    /// non-degenerate with period `2p`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple: Option<IdentityCheck>,
}

/// Right-hand side of the simple form: `p(n+1)/(n-1)` or `pn/(n-1)`.
pub fn simple_form_rhs(space: &SpaceFormSpec) -> Rational {
    let (n, p) = (i64::from(space.n_dim), i64::from(space.p_order));
    if n % 2 == 1 {
        Rational::ratio(p * (n + 1), n - 1)
    } else {
        Rational::ratio(p * n, n - 1)
    }
}

/// Evaluates both forms of the identity.
pub fn resonance_check(records: &[GeodesicRecord], space: &SpaceFormSpec) -> Result<ResonanceReport> {
    space.validate()?;
    let full = IdentityCheck::new(resonance_lhs(records, space)?, average_betti(space));
    let p = u64::from(space.p_order);
    let mut simple = None;
    if !records.is_empty() && records.iter().all(|r| r.type_table == TypeTable::NonDegenerate) {
        let mut lhs = Rational::zero();
        let mut applicable = true;
        for rec in records {
            let table = rec.table(p)?;
            if table.period() != 2 * p {
                applicable = false;
                break;
            }
            let first = sign(rec.class_index(p, 1)?) * table.get(1, 0) as i64;
            let second = sign(rec.class_index(p, 2)?) * table.get(2, 0) as i64;
            lhs += &Rational::from(first + second).checked_div(&rec.rational_mean_index()?)?;
        }
        if applicable {
            simple = Some(IdentityCheck::new(lhs, simple_form_rhs(space)));
        }
    }
    Ok(ResonanceReport { lhs: full.lhs, rhs: full.rhs, holds: full.holds, simple })
}

/// A rational lower bound for a positive mean index.
fn mean_index_floor(rec: &GeodesicRecord) -> Result<Rational> {
    let lo = rec.index_fn.mean_index().enclose(64)?.lo;
    if !lo.is_positive() {
        return Err(Error::PrecisionExhausted { bits: 64 });
    }
    Ok(lo)
}

/// Morse-type numbers `m_0, ..., m_{q_max}`: every iterate in the class
/// with index `i` adds its type number `k_l` to `m_{i+l}`.
pub fn morse_type_numbers(records: &[GeodesicRecord], space: &SpaceFormSpec, q_max: u64) -> Result<Vec<u64>> {
    let p = u64::from(space.p_order);
    let mut out = vec![0u64; q_max as usize + 1];
    for rec in records {
        let table = rec.table(p)?;
        let lo = mean_index_floor(rec)?;
        // index(j) >= j * i_hat - bound > q_max once j * lo > q_max + bound
        let reach = Rational::from(q_max as i64 + rec.index_fn.iteration_bound());
        let j_max = reach.checked_div(&lo)?.floor();
        let j_max: u64 = j_max.try_into().unwrap_or(0);
        let m_max = j_max / p + 2;
        let partial = (1..=m_max)
            .into_par_iter()
            .map(|m| -> Result<Vec<u64>> {
                let mut local = vec![0u64; q_max as usize + 1];
                let i = rec.class_index(p, m)?;
                for l in 0..=table.max_degree() {
                    let q = i + i64::from(l);
                    let k = table.get(m, l);
                    if k != 0 && (0..=q_max as i64).contains(&q) {
                        local[q as usize] += k;
                    }
                }
                Ok(local)
            })
            .try_reduce(
                || vec![0u64; q_max as usize + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    Ok(a)
                },
            )?;
        out.iter_mut().zip(partial).for_each(|(x, y)| *x += y);
    }
    Ok(out)
}

/// Upper bound on every `m_q`:
/// `sum_j sum_m sum_l k_l ((2 dim - 2) / (n_j i_hat_j) + 1)`.
pub fn morse_number_bound(records: &[GeodesicRecord], space: &SpaceFormSpec) -> Result<Rational> {
    let p = u64::from(space.p_order);
    let mut total = Rational::zero();
    for rec in records {
        let table = rec.table(p)?;
        let per = Rational::from(2 * i64::from(space.n_dim) - 2)
            .checked_div(&rec.rational_mean_index()?.mul_int(table.period() as i64))?
            + Rational::one();
        let mass: u64 = table.entries().values().sum();
        total += &per.mul_int(mass);
    }
    Ok(total)
}

fn alternating_sums(seq: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(seq.len());
    let mut acc = 0i64;
    for &x in seq {
        acc = x - acc;
        out.push(acc);
    }
    out
}

/// First `q` at which `m_q - m_{q-1} + ... +- m_0 >= b_q - b_{q-1} + ... +- b_0` fails.
pub fn first_morse_inequality_violation(m_seq: &[u64], betti_seq: &[u64]) -> Result<Option<usize>> {
    if m_seq.len() != betti_seq.len() {
        return Err(Error::invalid(format!(
            "{} Morse-type numbers but {} Betti numbers",
            m_seq.len(),
            betti_seq.len()
        )));
    }
    let to_i = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
    let a = alternating_sums(&to_i(m_seq));
    let b = alternating_sums(&to_i(betti_seq));
    Ok(a.iter().zip(&b).position(|(x, y)| x < y))
}

/// Whether every alternating partial-sum inequality holds.
pub fn morse_inequality_check(m_seq: &[u64], betti_seq: &[u64]) -> Result<bool> {
    Ok(first_morse_inequality_violation(m_seq, betti_seq)?.is_none())
}

/// First degree where the two sequences differ.
pub fn first_mismatch(m_seq: &[u64], betti_seq: &[u64]) -> Option<usize> {
    m_seq.iter().zip(betti_seq).position(|(a, b)| a != b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum IndexFunctionSpec {
    Bumpy(BumpySpec),
    NormalForm(NormalFormSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKeyword {
    NonDegenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeEntry {
    pub m: u64,
    pub l: u32,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub period: u64,
    pub p: u64,
    pub entries: Vec<TypeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TypeTableSpec {
    Keyword(TableKeyword),
    Explicit(TableSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordSpec {
    pub name: String,
    pub index_fn: IndexFunctionSpec,
    pub type_table: TypeTableSpec,
    #[serde(default)]
    pub minimal_index: i64,
}

impl RecordSpec {
    pub fn resolve(&self, basis: &Arc<IrrationalBasis>) -> Result<GeodesicRecord> {
        let index_fn = match &self.index_fn {
            IndexFunctionSpec::Bumpy(s) => IndexFunction::Bumpy(s.resolve(basis)?),
            IndexFunctionSpec::NormalForm(s) => IndexFunction::NormalForm(s.resolve(basis)?),
        };
        let type_table = match &self.type_table {
            TypeTableSpec::Keyword(TableKeyword::NonDegenerate) => TypeTable::NonDegenerate,
            TypeTableSpec::Explicit(t) => {
                let mut entries = BTreeMap::new();
                for e in &t.entries {
                    if entries.insert((e.m, e.l), e.k).is_some() {
                        return Err(Error::invalid(format!("duplicate type entry m = {}, l = {}", e.m, e.l)));
                    }
                }
                TypeTable::Explicit(HomologicalTypeTable::new(t.period, t.p, entries)?)
            }
        };
        GeodesicRecord::new(self.name.clone(), index_fn, type_table, self.minimal_index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{BasisElementSpec, ConstantKind};
    use crate::topology::betti;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn t_basis() -> Arc<IrrationalBasis> {
        IrrationalBasis::new(vec![BasisElementSpec {
            name: "t".into(),
            kind: ConstantKind::ScaledSqrt { n: 2, scale: q("1/10"), offset: q("0") },
        }])
        .unwrap()
    }

    /// `theta_hat_j = xi_j + w_j t`.
    fn bumpy(n_half: u32, p_bar: u32, parts: &[(&str, i64)]) -> BumpyGeodesicConfig {
        let b = t_basis();
        let thetas = parts
            .iter()
            .map(|&(r, w)| SymbolicReal::from_parts(&b, q(r), vec![w]).unwrap())
            .collect();
        BumpyGeodesicConfig::new(n_half, p_bar, thetas).unwrap()
    }

    fn record(cfg: BumpyGeodesicConfig) -> GeodesicRecord {
        GeodesicRecord::new("c", IndexFunction::Bumpy(cfg), TypeTable::NonDegenerate, 0).unwrap()
    }

    fn s3_case1() -> GeodesicRecord {
        record(bumpy(1, 2, &[("5/8", 1), ("5/8", -1)]))
    }

    /// S^5 with p = 3, p_bar = 6, k = 3: an odd step between c and c^4.
    fn s5_case2() -> GeodesicRecord {
        record(bumpy(2, 6, &[("1/2", 1), ("1/2", 1), ("11/18", -2)]))
    }

    #[test]
    fn case_one_on_s3() {
        let space = SpaceFormSpec::new(3, 2).unwrap();
        let rec = s3_case1();
        assert_eq!(mean_euler(&rec, &space).unwrap(), q("1/2"));
        let report = resonance_check(&[rec], &space).unwrap();
        assert_eq!((report.lhs.clone(), report.rhs.clone(), report.holds), (q("1"), q("1"), true));
        let simple = report.simple.unwrap();
        assert_eq!((simple.lhs, simple.rhs, simple.holds), (q("4"), q("4"), true));
    }

    #[test]
    fn case_two_on_s5() {
        let space = SpaceFormSpec::new(5, 3).unwrap();
        let rec = s5_case2();
        assert_eq!(rec.rational_mean_index().unwrap(), q("2/9"));
        assert_eq!(rec.epsilon(3, 2).unwrap(), -1);
        assert_eq!(mean_euler(&rec, &space).unwrap(), q("1/6"));
        let report = resonance_check(&[rec], &space).unwrap();
        assert!(report.holds);
        let simple = report.simple.unwrap();
        // (-1)^i(c) / i_hat = p(n+1)/n with n = 2
        assert_eq!(simple.lhs, q("9/2"));
        assert!(simple.holds);
    }

    #[test]
    fn wrong_mean_index_fails_the_identity() {
        let space = SpaceFormSpec::new(3, 2).unwrap();
        // p_bar = 3 gives i_hat = 1/3
        let rec = record(bumpy(1, 3, &[("7/12", 1), ("7/12", -1)]));
        assert_eq!(rec.rational_mean_index().unwrap(), q("1/3"));
        let report = resonance_check(&[rec], &space).unwrap();
        assert!(!report.holds);
        assert!(!report.simple.unwrap().holds);
        assert!(!resonance_check(&[], &space).unwrap().holds);
    }

    #[test]
    fn splitting_and_additivity() {
        let space = SpaceFormSpec::new(3, 2).unwrap();
        let rec = s3_case1();
        let one = resonance_lhs(&[rec.clone()], &space).unwrap();
        let two = resonance_lhs(&[rec.clone(), rec.clone()], &space).unwrap();
        assert_eq!(two, one.mul_int(2));
        // halving the type numbers of each of two copies restores the identity
        let entries = BTreeMap::from([((1, 0), 1), ((2, 0), 1)]);
        let half = HomologicalTypeTable::new(8, 2, entries).unwrap();
        let split = GeodesicRecord { type_table: TypeTable::Explicit(half), ..rec };
        let report = resonance_check(&[split.clone(), split], &space).unwrap();
        assert!(report.holds);
        assert!(report.simple.is_none());
    }

    #[test]
    fn zero_tables_and_periodicity() {
        let space = SpaceFormSpec::new(3, 2).unwrap();
        let rec = s3_case1();
        let zero = GeodesicRecord {
            type_table: TypeTable::Explicit(HomologicalTypeTable::new(4, 2, BTreeMap::new()).unwrap()),
            ..rec.clone()
        };
        assert_eq!(mean_euler(&zero, &space).unwrap(), q("0"));
        assert!(morse_type_numbers(&[zero], &space, 50).unwrap().iter().all(|&x| x == 0));
        // doubling the period with a repeated table leaves chi_hat unchanged
        let table = rec.table(2).unwrap();
        let mut doubled = BTreeMap::new();
        for (&(m, l), &k) in table.entries() {
            doubled.insert((m, l), k);
            doubled.insert((m + table.residues(), l), k);
        }
        let rec2 = GeodesicRecord {
            type_table: TypeTable::Explicit(HomologicalTypeTable::new(8, 2, doubled).unwrap()),
            ..rec.clone()
        };
        assert_eq!(mean_euler(&rec2, &space).unwrap(), mean_euler(&rec, &space).unwrap());
    }

    #[test]
    fn morse_numbers_of_a_single_geodesic() {
        let space = SpaceFormSpec::new(3, 2).unwrap();
        let rec = s3_case1();
        let ms = morse_type_numbers(&[rec.clone()], &space, 400).unwrap();
        assert!(ms.iter().skip(1).step_by(2).all(|&x| x == 0));
        let bound = morse_number_bound(&[rec], &space).unwrap();
        assert!(ms.iter().all(|&x| Rational::from(x as i64) <= bound));
        let bettis: Vec<u64> = (0..=400).map(|q| u64::from(betti(&space, q))).collect();
        // a single geodesic cannot reproduce every Betti number
        assert!(first_mismatch(&ms, &bettis).is_some());
    }

    #[test]
    fn morse_inequalities() {
        assert!(morse_inequality_check(&[1, 0, 2], &[1, 0, 2]).unwrap());
        assert_eq!(first_morse_inequality_violation(&[0, 0], &[1, 0]).unwrap(), Some(0));
        assert!(morse_inequality_check(&[1], &[1, 0]).is_err());
    }

    #[test]
    fn non_positive_mean_index_is_rejected() {
        let b = t_basis();
        let mut nf = PoincareNormalForm::empty(&b, 1);
        nf.i_base = 0;
        assert!(GeodesicRecord::new("flat", IndexFunction::NormalForm(nf), TypeTable::NonDegenerate, 0).is_err());
    }

    #[test]
    fn record_json() {
        let text = r#"{
            "name": "c",
            "index_fn": {"bumpy": {"n_half": 1, "p_bar": 2,
                "theta_hats": [{"rational": "5/8", "coeffs": {"t": 1}}, {"rational": "5/8", "coeffs": {"t": -1}}]}},
            "type_table": "non_degenerate"
        }"#;
        let spec: RecordSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.resolve(&t_basis()).unwrap(), s3_case1());
        let explicit = r#"{"period": 4, "p": 2, "entries": [{"m": 1, "l": 0, "k": 1}]}"#;
        let t: TypeTableSpec = serde_json::from_str(explicit).unwrap();
        assert!(matches!(t, TypeTableSpec::Explicit(_)));
    }
}
