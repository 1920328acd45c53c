//! JSON input schemas of the command-line tool.
//!
//! Every document names its irrational constants in a `basis` list; the
//! symbolic values elsewhere in the document refer to them by name.
//!
//! ```
//! use closed_geodesics::config::{self, SystemInput};
//!
//! let text = r#"{
//!     "basis": [{"name": "sqrt2", "kind": "sqrt", "n": 2}],
//!     "system": {"weights": [1, -1], "offsets": ["1/3", "1/3"], "generator": {"coeffs": {"sqrt2": 1}}}
//! }"#;
//! let input: SystemInput = config::parse(text).unwrap();
//! let sys = input.resolve(4096).unwrap();
//! assert_eq!(sys.effective_difference().value, 1);
//! ```

use std::fmt;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iteration::{BumpyGeodesicConfig, BumpySpec};
use crate::kronecker::{Congruence, SearchTask, Target};
use crate::resonance::{GeodesicRecord, IndexFunction, IndexFunctionSpec, RecordSpec};
use crate::symbolic::{BasisElementSpec, IrrationalBasis, SymbolicRealSpec};
use crate::systems::{IrrationalSystem, SystemSpec};
use crate::topology::SpaceFormSpec;

/// A schema mismatch located by its JSON field path and source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at `{}` (line {}, column {}): {}", self.path, self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Deserializes `text`, reporting the failing field path on error.
pub fn parse<T: DeserializeOwned>(text: &str) -> std::result::Result<T, ParseError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ParseError { path, line: inner.line(), column: inner.column(), message: inner.to_string() }
    })
}

fn basis(specs: &[BasisElementSpec], max_bits: u32) -> Result<Arc<IrrationalBasis>> {
    IrrationalBasis::with_max_bits(specs.to_vec(), max_bits)
}

/// Input of `index-iterate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexInput {
    #[serde(default)]
    pub basis: Vec<BasisElementSpec>,
    pub index_fn: IndexFunctionSpec,
}

impl IndexInput {
    pub fn resolve(&self, max_bits: u32) -> Result<IndexFunction> {
        let b = basis(&self.basis, max_bits)?;
        Ok(match &self.index_fn {
            IndexFunctionSpec::Bumpy(s) => IndexFunction::Bumpy(s.resolve(&b)?),
            IndexFunctionSpec::NormalForm(s) => IndexFunction::NormalForm(s.resolve(&b)?),
        })
    }
}

/// Input of `resonance-check` and `morse-series`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceInput {
    #[serde(default)]
    pub basis: Vec<BasisElementSpec>,
    pub space: SpaceFormSpec,
    pub records: Vec<RecordSpec>,
}

impl ResonanceInput {
    pub fn resolve(&self, max_bits: u32) -> Result<(SpaceFormSpec, Vec<GeodesicRecord>)> {
        self.space.validate()?;
        let b = basis(&self.basis, max_bits)?;
        let records = self.records.iter().map(|r| r.resolve(&b)).collect::<Result<_>>()?;
        Ok((self.space, records))
    }
}

/// Input of `reduce-system` and `effective-diff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemInput {
    #[serde(default)]
    pub basis: Vec<BasisElementSpec>,
    pub system: SystemSpec,
}

impl SystemInput {
    pub fn resolve(&self, max_bits: u32) -> Result<IrrationalSystem> {
        self.system.resolve(&basis(&self.basis, max_bits)?)
    }
}

/// Input of `kronecker`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KroneckerInput {
    #[serde(default)]
    pub basis: Vec<BasisElementSpec>,
    pub generators: Vec<SymbolicRealSpec>,
    pub targets: Vec<Target>,
    pub m_max: u64,
    #[serde(default)]
    pub congruence: Option<Congruence>,
}

impl KroneckerInput {
    pub fn resolve(&self, max_bits: u32) -> Result<SearchTask> {
        let b = basis(&self.basis, max_bits)?;
        let generators = self.generators.iter().map(|g| g.resolve(&b)).collect::<Result<_>>()?;
        SearchTask::new(self.targets.clone(), generators, self.m_max, self.congruence)
    }
}

/// Input of `scenario`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioInput {
    #[serde(default)]
    pub basis: Vec<BasisElementSpec>,
    pub config: BumpySpec,
}

impl ScenarioInput {
    pub fn resolve(&self, max_bits: u32) -> Result<BumpyGeodesicConfig> {
        self.config.resolve(&basis(&self.basis, max_bits)?)
    }
}

/// Basis element for a built-in constant name: `sqrtN` or `golden`.
pub fn named_constant(name: &str) -> Result<BasisElementSpec> {
    use crate::symbolic::ConstantKind;
    if name == "golden" {
        return Ok(IrrationalBasis::golden().specs().remove(0));
    }
    let n = name
        .strip_prefix("sqrt")
        .and_then(|n| n.parse::<u64>().ok())
        .ok_or_else(|| Error::invalid(format!("unknown constant {name:?}, expected sqrtN or golden")))?;
    Ok(BasisElementSpec { name: name.to_string(), kind: ConstantKind::Sqrt { n } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_rational_reports_its_path() {
        let text = r#"{"system": {"weights": [1, -1], "offsets": ["1/3", "1/0"], "generator": {}}}"#;
        let err = parse::<SystemInput>(text).unwrap_err();
        assert_eq!(err.path, "system.offsets[1]");
        assert_eq!(err.line, 1);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse::<ScenarioInput>(r#"{"config": {}, "extra": 1}"#).unwrap_err();
        assert!(err.message.contains("extra") || err.message.contains("missing"), "{err}");
    }

    #[test]
    fn named_constants() {
        assert!(matches!(named_constant("sqrt5").unwrap().kind, crate::symbolic::ConstantKind::Sqrt { n: 5 }));
        assert_eq!(named_constant("golden").unwrap().name, "golden");
        assert!(named_constant("pi").is_err());
    }

    #[test]
    fn precision_ceiling_is_applied() {
        let text = r#"{"basis": [{"name": "sqrt2", "kind": "sqrt", "n": 2}],
            "system": {"weights": [1, -1], "offsets": ["1/3", "1/3"], "generator": {"coeffs": {"sqrt2": 1}}}}"#;
        let input: SystemInput = parse(text).unwrap();
        assert_eq!(input.resolve(128).unwrap().generator().basis().max_bits(), 128);
    }
}
