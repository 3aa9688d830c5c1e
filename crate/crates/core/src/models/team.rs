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

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::subset::{AttrSubset, GroundSet};
use crate::value::RankValue;

/// A nonempty finite set of total assignments from variables to opaque
/// value tokens. Rows are deduplicated and kept in first-seen order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Team {
    variables: GroundSet,
    rows: Vec<Vec<u32>>,
    tokens: Vec<String>,
}

impl Team {
    pub fn new<R, S>(variables: GroundSet, rows: R) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut ids: HashMap<String, u32> = HashMap::new();
        let mut tokens = Vec::new();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            let row: Vec<u32> = row
                .into_iter()
                .map(|v| {
                    let v = v.into();
                    *ids.entry(v.clone()).or_insert_with(|| {
                        tokens.push(v);
                        (tokens.len() - 1) as u32
                    })
                })
                .collect();
            if row.len() != variables.len() {
                return Err(Error::InvalidModel(format!(
                    "team row {} has {} values for {} variables",
                    i + 1,
                    row.len(),
                    variables.len()
                )));
            }
            if seen.insert(row.clone()) {
                out.push(row);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidModel("a team needs at least one row".into()));
        }
        Ok(Team {
            variables,
            rows: out,
            tokens,
        })
    }

    /// Team over `{0,1}` given as bitmasks: bit `i` of a row is the value
    /// of the `i`-th variable.
    pub fn binary(variables: GroundSet, rows: impl IntoIterator<Item = u64>) -> Result<Self> {
        let n = variables.len();
        let rows: Vec<Vec<&'static str>> = rows
            .into_iter()
            .map(|bits| {
                (0..n)
                    .map(|i| if bits >> i & 1 == 1 { "1" } else { "0" })
                    .collect()
            })
            .collect();
        Team::new(variables, rows)
    }

    pub fn variables(&self) -> &GroundSet {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> Vec<&str> {
        self.rows[i]
            .iter()
            .map(|&id| self.tokens[id as usize].as_str())
            .collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<&str>> + '_ {
        (0..self.rows.len()).map(|i| self.row(i))
    }

    /// Value token ids; equal ids mean equal values.
    pub fn raw_rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `#rows(x)`: the number of distinct projections of the rows onto `x`.
    /// The empty projection is a single empty tuple, so `#rows(∅) = 1`.
    pub fn count(&self, x: AttrSubset) -> u64 {
        if x.is_empty() {
            return 1;
        }
        let cols: Vec<usize> = x.iter().collect();
        let distinct: HashSet<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        distinct.len() as u64
    }

    pub fn rank(&self, x: AttrSubset) -> RankValue {
        RankValue::LogCount(self.count(x))
    }
}
