//! Embedded catalog of classified nice nilpotent Lie algebras, the batch
//! driver that checks them against golden data, and table rendering.
//!
//! Catalog files are JSON, schema version 1:
//!
//! ```json
//! { "schema_version": 1,
//!   "entries": [ { "name": "741:6", "dim": 7,
//!                  "differential": ["0","0","0","(a-1)e^{12}","ae^{13}","e^{23}","e^{16}+e^{25}+e^{34}"],
//!                  "params": {}, "excluded": {"a": ["0","1"]},
//!                  "samples": [ {"params": {"a": "-1"}, "expected": {"S": ["∅","12357"]}} ],
//!                  "expected": {"N": "1/2(1,1,1,2,2,2,3)", "S": [], "S0": [], "obstruction": "H"} } ] }
//! ```
//!
//! A bare JSON array of entries is accepted as well. All `expected` fields are
//! optional. Families are classified once per sample; `expected` at the top
//! level applies to every run of the entry.
//!
//! The 7431:13b entry has de⁷ = −e^{15}+e^{26}+e^{34}; with +e^{15} the
//! equations fail Jacobi. The original classification files are not shipped.

mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_nice_algebra, AlgebraError, NiceLieAlgebra};
use crate::exactnum::rational::{fmt_rational, parse_rational, Rational};
use crate::nilsoliton::{classify, fmt_signature_set, ClassificationReport, Signature};

pub use table::{emit_table, read_table_json, TableFormat, TableRow};

pub const SCHEMA_VERSION: u64 = 1;

const BUILTIN: &str = include_str!("builtin.json");

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported schema_version {0}")]
    Version(u64),
    #[error("entry {index}: {msg}")]
    Schema { index: usize, msg: String },
    #[error("entry {name}: {source}")]
    Entry { name: String, source: AlgebraError },
    #[error("duplicate entry name {0}")]
    Duplicate(String),
    #[error("unknown table format {0:?}")]
    UnknownFormat(String),
}

/// Golden data; `None` fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    #[serde(rename = "S0", default, skip_serializing_if = "Option::is_none")]
    pub s0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sample {
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub differential: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    /// Parameter values that make a structure constant vanish.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub excluded: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<Sample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    /// Free-form grouping tag, e.g. "table1".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

impl CatalogEntry {
    pub fn notation(&self) -> String {
        format!("({})", self.differential.join(","))
    }

    /// Parameter symbols used by this entry.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.params.keys().cloned().collect();
        out.extend(self.excluded.keys().cloned());
        for s in &self.samples {
            out.extend(s.params.keys().cloned());
        }
        out
    }

    pub fn algebra(&self, params: &BTreeMap<String, Rational>) -> Result<NiceLieAlgebra, AlgebraError> {
        let mut all = parse_params(&self.params).map_err(AlgebraError::UnboundParameter)?;
        all.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(parse_nice_algebra(&self.notation(), &all)?.with_name(self.name.clone()))
    }

    /// Parameter bindings to classify: one per sample, or the entry's own
    /// bindings when there are no samples.
    pub fn runs(&self) -> Vec<(BTreeMap<String, Rational>, Option<Expected>)> {
        if self.samples.is_empty() {
            return vec![(BTreeMap::new(), self.expected.clone())];
        }
        self.samples
            .iter()
            .map(|s| {
                let p = parse_params(&s.params).unwrap_or_default();
                (p, merge(self.expected.as_ref(), s.expected.as_ref()))
            })
            .collect()
    }

    pub fn is_family(&self) -> bool {
        !self.symbols().is_empty()
    }
}

fn merge(base: Option<&Expected>, over: Option<&Expected>) -> Option<Expected> {
    match (base, over) {
        (None, None) => None,
        (Some(b), None) => Some(b.clone()),
        (None, Some(o)) => Some(o.clone()),
        (Some(b), Some(o)) => Some(Expected {
            n: o.n.clone().or_else(|| b.n.clone()),
            s: o.s.clone().or_else(|| b.s.clone()),
            s0: o.s0.clone().or_else(|| b.s0.clone()),
            obstruction: o.obstruction.clone().or_else(|| b.obstruction.clone()),
        }),
    }
}

fn parse_params(p: &BTreeMap<String, String>) -> Result<BTreeMap<String, Rational>, String> {
    p.iter()
        .map(|(k, v)| parse_rational(v).map(|q| (k.clone(), q)).map_err(|_| format!("{k}={v}")))
        .collect()
}

/// `a=1/2` style label, empty when there are no parameters.
pub fn params_label(p: &BTreeMap<String, Rational>) -> String {
    p.iter().map(|(k, v)| format!("{k}={}", fmt_rational(v))).collect::<Vec<_>>().join(",")
}

#[derive(Deserialize)]
struct Document {
    schema_version: u64,
    entries: Vec<serde_json::Value>,
}

/// Parses and validates catalog JSON.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let raw = if value.is_array() {
        serde_json::from_value::<Vec<serde_json::Value>>(value)?
    } else {
        let doc: Document = serde_json::from_value(value)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CatalogError::Version(doc.schema_version));
        }
        doc.entries
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(raw.len());
    for (index, v) in raw.into_iter().enumerate() {
        let entry: CatalogEntry =
            serde_json::from_value(v).map_err(|e| CatalogError::Schema { index, msg: e.to_string() })?;
        validate(index, &entry)?;
        if !seen.insert(entry.name.clone()) {
            return Err(CatalogError::Duplicate(entry.name));
        }
        out.push(entry);
    }
    Ok(out)
}

fn validate(index: usize, e: &CatalogEntry) -> Result<(), CatalogError> {
    let schema = |msg: String| CatalogError::Schema { index, msg };
    if e.differential.len() != e.dim {
        return Err(schema(format!(
            "{}: differential has {} entries, dim is {}",
            e.name,
            e.differential.len(),
            e.dim
        )));
    }
    parse_params(&e.params).map_err(|p| schema(format!("{}: bad parameter {p}", e.name)))?;
    for s in &e.samples {
        parse_params(&s.params).map_err(|p| schema(format!("{}: bad sample {p}", e.name)))?;
    }
    for vals in e.excluded.values() {
        for v in vals {
            parse_rational(v).map_err(|_| schema(format!("{}: bad excluded value {v}", e.name)))?;
        }
    }
    for (params, _) in e.runs() {
        e.algebra(&params).map_err(|source| CatalogError::Entry { name: e.name.clone(), source })?;
    }
    Ok(())
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>, CatalogError> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

/// The embedded catalog.
pub fn builtin() -> Vec<CatalogEntry> {
    parse_catalog(BUILTIN).expect("embedded catalog is valid")
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenDiff {
    pub entry: String,
    pub field: &'static str,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for GoldenDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} expected {} got {}", self.entry, self.field, self.expected, self.actual)
    }
}

/// One classification of one entry at one parameter binding.
#[derive(Debug)]
pub struct SuiteRun {
    pub entry: String,
    pub params: BTreeMap<String, Rational>,
    pub report: Result<ClassificationReport, String>,
    pub diffs: Vec<GoldenDiff>,
}

impl SuiteRun {
    /// Entry name with the parameter binding, e.g. `741:6[a=-1]`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.entry.clone()
        } else {
            format!("{}[{}]", self.entry, params_label(&self.params))
        }
    }
}

/// Classifies every entry in parallel. `samples` overrides the sample list of
/// every family using that symbol; overridden runs carry no golden data.
pub fn run_suite(entries: &[CatalogEntry], samples: &BTreeMap<String, Vec<Rational>>) -> Vec<SuiteRun> {
    let jobs: Vec<(&CatalogEntry, BTreeMap<String, Rational>, Option<Expected>)> = entries
        .iter()
        .flat_map(|e| {
            let syms = e.symbols();
            match syms.iter().find(|s| samples.contains_key(*s)) {
                Some(sym) => samples[sym]
                    .iter()
                    .map(|v| (e, BTreeMap::from([(sym.clone(), v.clone())]), None))
                    .collect::<Vec<_>>(),
                None => e.runs().into_iter().map(|(p, x)| (e, p, x)).collect(),
            }
        })
        .collect();
    jobs.into_par_iter()
        .map(|(e, params, expected)| {
            let mut run = SuiteRun {
                entry: e.name.clone(),
                params: params.clone(),
                report: Err(String::new()),
                diffs: Vec::new(),
            };
            run.report = e
                .algebra(&params)
                .map_err(|err| err.to_string())
                .and_then(|alg| classify(&alg).map_err(|err| err.to_string()));
            if let Some(x) = expected {
                run.diffs = golden_diff(&run.label(), &run.report, &x);
            }
            run
        })
        .collect()
}

fn signature_set(items: &[String]) -> Result<BTreeSet<Signature>, String> {
    items.iter().map(|s| Signature::parse(s).ok_or_else(|| s.clone())).collect()
}

/// Compares a report with golden data field by field.
pub fn golden_diff(label: &str, report: &Result<ClassificationReport, String>, x: &Expected) -> Vec<GoldenDiff> {
    let diff = |field, expected: String, actual: String| GoldenDiff { entry: label.to_string(), field, expected, actual };
    let r = match report {
        Ok(r) => r,
        Err(e) => return vec![diff("report", "a classification".into(), format!("error: {e}"))],
    };
    let mut out = Vec::new();
    if let Some(n) = &x.n {
        let actual = r.nikolayevsky.display();
        if n.replace(' ', "") != actual {
            out.push(diff("N", n.clone(), actual));
        }
    }
    for (field, want, got) in [("S", &x.s, &r.signatures), ("S0", &x.s0, &r.riemannian_signatures)] {
        if let Some(want) = want {
            match signature_set(want) {
                Ok(set) if &set == got => {}
                Ok(set) => out.push(diff(field, fmt_signature_set(&set), fmt_signature_set(got))),
                Err(bad) => out.push(diff(field, format!("unparsable signature {bad}"), fmt_signature_set(got))),
            }
        }
    }
    if let Some(ob) = &x.obstruction {
        let actual = r.obstruction.map(|o| o.to_string()).unwrap_or_else(|| "none".into());
        if ob != &actual {
            out.push(diff("obstruction", ob.clone(), actual));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let c = builtin();
        assert_eq!(c.iter().filter(|e| e.group.as_deref() == Some("table1")).count(), 34);
        assert_eq!(c.iter().filter(|e| e.group.as_deref() == Some("obstructed")).count(), 16);
        let e = c.iter().find(|e| e.name == "7421:9").unwrap();
        assert_eq!(e.notation(), "(0,0,0,-e^{12},e^{13},e^{14}+e^{23},e^{16}+e^{34})");
    }

    #[test]
    fn rejects_bad_entries() {
        let short = r#"[{"name":"x","dim":3,"differential":["0","0"]}]"#;
        assert!(matches!(parse_catalog(short), Err(CatalogError::Schema { index: 0, .. })));
        let dup = r#"[{"name":"x","dim":3,"differential":["0","0","e^{12}"]},
                      {"name":"x","dim":3,"differential":["0","0","e^{12}"]}]"#;
        assert!(matches!(parse_catalog(dup), Err(CatalogError::Duplicate(_))));
        let bad = r#"{"schema_version":1,"entries":[{"name":"y","dim":3,"differential":["0","0","e^{11}"]}]}"#;
        assert!(matches!(parse_catalog(bad), Err(CatalogError::Entry { .. })));
        assert!(matches!(parse_catalog(r#"{"schema_version":2,"entries":[]}"#), Err(CatalogError::Version(2))));
    }
}
