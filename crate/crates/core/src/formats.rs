// Copyright 2026 The divrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Reading and writing models.
//!
//! - Teams are CSV: a header row of variable names, then one row per
//!   assignment. Cells are opaque tokens, compared verbatim.
//! - Distributions, vector families, coverage maps and explicit tables are
//!   JSON:
//!
//! ```text
//! {"variables": ["a","b"], "outcomes": [{"assignment": {"a":"0","b":"0"}, "p": "1/2"}, ...]}
//! {"labels": ["e1","e2"], "vectors": [[1, 0], [0, "1/2"]]}
//! {"labels": ["a","b"], "sets": {"a": ["1","2"], "b": ["2","3"]}}
//! {"ground": ["a","b"], "entries": {"": 0, "a": 1.5, "b": "3/2", "a,b": 2.1}}
//! ```
//!
//! Numbers in explicit tables, distributions and vectors are read as exact
//! decimals, so `2.1` means 21/10. An explicit table with `"mode": "float"`
//! is compared with a tolerance instead (`"tolerance"`, default 1e-9).

use std::io::Read;

use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::axioms::CheckOptions;
use crate::error::{Error, Result};
use crate::models::{CoverageMap, Distribution, ExplicitRankTable, Team, VectorFamily};
use crate::subset::{AttrSubset, GroundSet};
use crate::value::{format_rational, parse_rational, RankValue};

pub fn read_team_csv<R: Read>(reader: R, location: &str) -> Result<Team> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::parse(location, e.to_string()))?
        .clone();
    let variables = GroundSet::new(header.iter()).map_err(|e| Error::parse(format!("{location}:1"), e.to_string()))?;
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(String::new(), |p| format!(":{}", p.line()));
            Error::parse(format!("{location}{line}"), e.to_string())
        })?;
        rows.push(record.iter().map(str::to_string).collect::<Vec<_>>());
    }
    Team::new(variables, rows).map_err(|e| Error::parse(location, e.to_string()))
}

pub fn team_to_csv(team: &Team) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(team.variables().names()).expect("in-memory write");
    for row in team.rows() {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 tokens")
}

fn json<T: for<'de> Deserialize<'de>>(text: &str, location: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("{location}:{}:{}", e.line(), e.column()), e.to_string()))
}

fn rational(v: &Value, what: &str) -> Result<BigRational> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(Error::parse(what, format!("expected a number or a string, found {other}")));
        }
    };
    parse_rational(&text).map_err(|e| Error::parse(what, e.to_string()))
}

fn token(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(Error::parse(what, format!("expected a value token, found {other}"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    variables: Vec<String>,
    outcomes: Vec<OutcomeEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OutcomeEntry {
    assignment: Map<String, Value>,
    p: Value,
}

pub fn parse_distribution_json(text: &str, location: &str) -> Result<Distribution> {
    let file: DistributionFile = json(text, location)?;
    let variables = GroundSet::new(&file.variables).map_err(|e| Error::parse(location, e.to_string()))?;
    let mut outcomes = Vec::new();
    for (i, o) in file.outcomes.iter().enumerate() {
        let at = format!("{location}: outcome {}", i + 1);
        if let Some(extra) = o.assignment.keys().find(|k| variables.index_of(k).is_err()) {
            return Err(Error::parse(at, format!("unknown variable `{extra}`")));
        }
        let values = variables
            .names()
            .iter()
            .map(|v| {
                o.assignment
                    .get(v)
                    .ok_or_else(|| Error::parse(at.clone(), format!("no value for `{v}`")))
                    .and_then(|x| token(x, &at))
            })
            .collect::<Result<Vec<_>>>()?;
        outcomes.push((values, rational(&o.p, &at)?));
    }
    Distribution::new(variables, outcomes).map_err(|e| Error::parse(location, e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorsFile {
    labels: Vec<String>,
    vectors: Vec<Vec<Value>>,
}

pub fn parse_vectors_json(text: &str, location: &str) -> Result<VectorFamily> {
    let file: VectorsFile = json(text, location)?;
    let labels = GroundSet::new(&file.labels).map_err(|e| Error::parse(location, e.to_string()))?;
    let vectors = file
        .vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let at = format!("{location}: vector {}", i + 1);
            v.iter().map(|x| rational(x, &at)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    VectorFamily::new(labels, vectors).map_err(|e| Error::parse(location, e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverageFile {
    labels: Vec<String>,
    sets: Map<String, Value>,
}

pub fn parse_coverage_json(text: &str, location: &str) -> Result<CoverageMap> {
    let file: CoverageFile = json(text, location)?;
    let labels = GroundSet::new(&file.labels).map_err(|e| Error::parse(location, e.to_string()))?;
    if let Some(extra) = file.sets.keys().find(|k| labels.index_of(k).is_err()) {
        return Err(Error::parse(location, format!("set given for unknown label `{extra}`")));
    }
    let sets = labels
        .names()
        .iter()
        .map(|l| {
            let at = format!("{location}: set `{l}`");
            match file.sets.get(l) {
                None => Ok(Vec::new()),
                Some(Value::Array(items)) => items.iter().map(|x| token(x, &at)).collect(),
                Some(_) => Err(Error::parse(at, "expected an array")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CoverageMap::new(labels, sets)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitFile {
    ground: Option<Vec<String>>,
    mode: Option<String>,
    tolerance: Option<f64>,
    entries: Map<String, Value>,
}

/// Reads and validates an explicit table. `tolerance` overrides the file's
/// and forces tolerance comparison.
pub fn parse_explicit_json(
    text: &str,
    location: &str,
    opts: &CheckOptions,
    tolerance: Option<f64>,
) -> Result<ExplicitRankTable> {
    let file: ExplicitFile = json(text, location)?;
    let float = match file.mode.as_deref() {
        None | Some("exact") => false,
        Some("float") => true,
        Some(other) => {
            return Err(Error::parse(location, format!("unknown mode `{other}`; use `exact` or `float`")));
        }
    };
    let split = |k: &str| -> Vec<String> {
        k.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty() && *t != "()" && *t != "∅")
            .map(str::to_string)
            .collect()
    };
    let ground = match &file.ground {
        Some(names) => GroundSet::new(names),
        None => {
            let mut names: Vec<String> = Vec::new();
            for k in file.entries.keys() {
                for n in split(k) {
                    if !names.contains(&n) {
                        names.push(n);
                    }
                }
            }
            GroundSet::new(names)
        }
    }
    .map_err(|e| Error::parse(location, e.to_string()))?;
    let mut entries: Vec<(AttrSubset, RankValue)> = Vec::new();
    for (k, v) in &file.entries {
        let at = format!("{location}: entry `{k}`");
        let x = ground.subset(split(k)).map_err(|e| Error::parse(at.clone(), e.to_string()))?;
        let q = rational(v, &at)?;
        let value = if float {
            RankValue::Approx(num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN))
        } else {
            RankValue::Exact(q)
        };
        entries.push((x, value));
    }
    let tolerance = tolerance.or(file.tolerance);
    if let Some(eps) = tolerance {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::parse(location, format!("tolerance must be positive, got {eps}")));
        }
    }
    ExplicitRankTable::build_with(ground, entries, opts, tolerance)
}

/// The JSON form of an explicit table, entries in canonical order. Exact
/// values are written as strings so they read back exactly.
pub fn explicit_to_json(table: &ExplicitRankTable) -> String {
    let g = table.ground();
    let mut entries = Map::new();
    let mut float = false;
    for (x, v) in table.entries() {
        let value = match v {
            RankValue::Exact(q) => Value::String(format_rational(q)),
            RankValue::LogCount(_) => Value::String(v.to_string()),
            RankValue::Approx(f) => {
                float = true;
                serde_json::Number::from_f64(*f).map_or(Value::Null, Value::Number)
            }
        };
        entries.insert(g.format(x), value);
    }
    let mut root = Map::new();
    root.insert("ground".into(), Value::from(g.names().to_vec()));
    if float {
        root.insert("mode".into(), Value::from("float"));
    }
    if let Some(eps) = table.comparison().epsilon() {
        root.insert("tolerance".into(), Value::from(eps));
    }
    root.insert("entries".into(), Value::Object(entries));
    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("JSON values serialize");
    out.push('\n');
    out
}
