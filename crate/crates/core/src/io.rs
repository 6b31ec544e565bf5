//! JSON file formats for posets, rings, series, linear maps and reports.
//!
//! Output is canonical: object keys sorted, scalars in their ring's string
//! form, two-space indentation and a trailing newline, so identical values
//! always serialize to identical bytes.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{FinSeries, IncidenceAlgebra, StructAlgebra};
use crate::error::{Error, Result};
use crate::linmap::LinMap;
use crate::poset::{validate_poset, Poset};
use crate::report::{render, Report};
use crate::ring::{RingSpec, RingValue};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    elements: Vec<String>,
    #[serde(default)]
    relations: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    ring: RingField,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RingField {
    Name(String),
    Modular { modular: u64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesFile {
    entries: Vec<EntryFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    x: String,
    y: String,
    value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinMapFile {
    domain_dim: usize,
    codomain_dim: usize,
    columns: Vec<Vec<String>>,
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::File {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

pub fn poset_from_json(text: &str) -> Result<Poset> {
    let file: PosetFile = serde_json::from_str(text)?;
    validate_poset(&file.elements, &file.relations)
}

/// Elements in index order and the covering relations.
pub fn poset_to_json(p: &Poset) -> Value {
    let relations: Vec<Value> = p.cover_relations().into_iter().map(|(a, b)| json!([a, b])).collect();
    json!({ "elements": p.elements(), "relations": relations })
}

pub fn load_poset(path: &Path) -> Result<Poset> {
    let t = read_file(path)?;
    in_file(path, poset_from_json(&t))
}

pub fn ring_from_json(text: &str) -> Result<RingSpec> {
    let file: RingFile = serde_json::from_str(text)?;
    match file.ring {
        RingField::Name(name) if name == "integers" || name == "rationals" => name.parse(),
        RingField::Name(name) => Err(Error::Invalid(format!("unknown ring `{name}`"))),
        RingField::Modular { modular } => RingSpec::modular(modular),
    }
}

pub fn ring_to_json(ring: RingSpec) -> Value {
    match ring {
        RingSpec::Integers => json!({ "ring": "integers" }),
        RingSpec::Rationals => json!({ "ring": "rationals" }),
        RingSpec::Modular(n) => json!({ "ring": { "modular": n } }),
    }
}

pub fn load_ring(path: &Path) -> Result<RingSpec> {
    let t = read_file(path)?;
    in_file(path, ring_from_json(&t))
}

/// A ring file, or when no such file exists an inline ring: `rationals`,
/// `modular(9)` or the JSON fragment itself.
pub fn resolve_ring(arg: &str) -> Result<RingSpec> {
    let path = Path::new(arg);
    if path.exists() {
        return load_ring(path);
    }
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return ring_from_json(trimmed);
    }
    trimmed.parse::<RingSpec>().map_err(|_| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such ring file and not an inline ring"),
    })
}

fn scalar(ring: RingSpec, text: &str) -> Result<RingValue> {
    ring.parse(text)
}

pub fn series_from_json(poset: Arc<Poset>, ring: RingSpec, text: &str) -> Result<FinSeries> {
    let file: SeriesFile = serde_json::from_str(text)?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for e in file.entries {
        let x = poset.index_of(&e.x)?;
        let y = poset.index_of(&e.y)?;
        if !poset.leq(x, y) {
            return Err(Error::NotComparable(e.x, e.y));
        }
        entries.push(((x, y), scalar(ring, &e.value)?));
    }
    FinSeries::from_entries(poset, ring, entries)
}

pub fn series_to_json(f: &FinSeries) -> Value {
    let p = f.poset();
    let entries: Vec<Value> = f
        .entries()
        .map(|((x, y), v)| json!({ "x": p.label(x), "y": p.label(y), "value": v.to_string() }))
        .collect();
    json!({ "entries": entries })
}

pub fn load_series(path: &Path, poset: Arc<Poset>, ring: RingSpec) -> Result<FinSeries> {
    let t = read_file(path)?;
    in_file(path, series_from_json(poset, ring, &t))
}

pub fn linmap_from_json(domain: Arc<StructAlgebra>, codomain: Arc<StructAlgebra>, text: &str) -> Result<LinMap> {
    let file: LinMapFile = serde_json::from_str(text)?;
    if file.domain_dim != domain.dim() {
        return Err(Error::SizeMismatch(file.domain_dim, domain.dim()));
    }
    if file.codomain_dim != codomain.dim() {
        return Err(Error::SizeMismatch(file.codomain_dim, codomain.dim()));
    }
    if file.columns.len() != file.domain_dim {
        return Err(Error::SizeMismatch(file.columns.len(), file.domain_dim));
    }
    let ring = codomain.ring();
    let mut columns = Vec::with_capacity(file.columns.len());
    for col in &file.columns {
        if col.len() != file.codomain_dim {
            return Err(Error::SizeMismatch(col.len(), file.codomain_dim));
        }
        columns.push(col.iter().map(|s| scalar(ring, s)).collect::<Result<Vec<_>>>()?);
    }
    LinMap::new(domain, codomain, &columns)
}

pub fn linmap_to_json(m: &LinMap) -> Value {
    let columns: Vec<Vec<String>> = m.columns().iter().map(|c| render(c)).collect();
    json!({ "domain_dim": m.domain().dim(), "codomain_dim": m.codomain().dim(), "columns": columns })
}

/// A map of `fi` into itself.
pub fn load_endomorphism(path: &Path, fi: &IncidenceAlgebra) -> Result<LinMap> {
    let alg = fi.algebra().clone();
    let t = read_file(path)?;
    in_file(path, linmap_from_json(alg.clone(), alg, &t))
}

pub fn report_to_json(report: &Report) -> Value {
    json!({ "checks": report.checks })
}

/// The report together with the two halves of the decomposition.
pub fn decomposition_to_json(report: &Report, psi: &LinMap, theta: &LinMap) -> Value {
    json!({ "checks": report.checks, "psi": linmap_to_json(psi), "theta": linmap_to_json(theta) })
}

/// Canonical text of a JSON value. `serde_json::Map` keeps keys sorted.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip_writes_covers() {
        let p = poset_from_json(r#"{"elements":["1","2","3"],"relations":[["1","2"],["2","3"],["1","3"]]}"#).unwrap();
        let v = poset_to_json(&p);
        assert_eq!(v["relations"], json!([["1", "2"], ["2", "3"]]));
        assert_eq!(poset_from_json(&v.to_string()).unwrap(), p);
        assert!(matches!(
            poset_from_json(r#"{"elements":["1","2"],"relations":[["1","2"],["2","1"]]}"#),
            Err(Error::AntisymmetryViolation(..))
        ));
        assert!(poset_from_json(r#"{"elements":["1"],"relation":[]}"#).is_err());
    }

    #[test]
    fn ring_formats() {
        for ring in [RingSpec::Integers, RingSpec::Rationals, RingSpec::Modular(9)] {
            assert_eq!(ring_from_json(&ring_to_json(ring).to_string()).unwrap(), ring);
        }
        assert!(ring_from_json(r#"{"ring":{"modular":1}}"#).is_err());
        assert!(ring_from_json(r#"{"ring":"reals"}"#).is_err());
        assert_eq!(resolve_ring("modular(9)").unwrap(), RingSpec::Modular(9));
        assert_eq!(resolve_ring(r#"{"ring":"integers"}"#).unwrap(), RingSpec::Integers);
        assert!(resolve_ring("/no/such/ring.json").is_err());
    }

    #[test]
    fn series_round_trip() {
        let p = Arc::new(Poset::chain(2));
        let text = r#"{"entries":[{"x":"1","y":"2","value":"5/6"},{"x":"1","y":"1","value":"-1"}]}"#;
        let f = series_from_json(p.clone(), RingSpec::Rationals, text).unwrap();
        assert_eq!(f.get(0, 1).to_string(), "5/6");
        let back = series_from_json(p.clone(), RingSpec::Rationals, &series_to_json(&f).to_string()).unwrap();
        assert_eq!(back, f);
        let wrong = r#"{"entries":[{"x":"2","y":"1","value":"1"}]}"#;
        assert!(matches!(
            series_from_json(p, RingSpec::Rationals, wrong),
            Err(Error::NotComparable(..))
        ));
    }

    #[test]
    fn linmap_round_trip_and_sizes() {
        let fi = IncidenceAlgebra::new(Arc::new(Poset::chain(2)), RingSpec::Modular(9));
        let alg = fi.algebra().clone();
        let m = LinMap::identity(alg.clone()).perturbed(2, 0, &RingValue::from_i64(RingSpec::Modular(9), 4));
        let text = to_canonical_string(&linmap_to_json(&m));
        assert_eq!(linmap_from_json(alg.clone(), alg.clone(), &text).unwrap(), m);
        let short = r#"{"domain_dim":2,"codomain_dim":3,"columns":[]}"#;
        assert!(matches!(
            linmap_from_json(alg.clone(), alg, short),
            Err(Error::SizeMismatch(2, 3))
        ));
    }

    #[test]
    fn canonical_keys_are_sorted() {
        let s = to_canonical_string(&json!({"b": 1, "a": {"d": 2, "c": 3}}));
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"c\"").unwrap() < s.find("\"d\"").unwrap());
        assert!(s.ends_with('\n'));
    }
}
