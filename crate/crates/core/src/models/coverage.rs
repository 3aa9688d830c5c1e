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

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::subset::{AttrSubset, GroundSet};
use crate::value::RankValue;

/// A finite data set `A_a` per label. The universe is the union of all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageMap {
    labels: GroundSet,
    sets: Vec<BTreeSet<String>>,
    // Each set as a bitset over the universe's element ids.
    words: Vec<Vec<u64>>,
}

impl CoverageMap {
    pub fn new<S: Into<String>>(labels: GroundSet, sets: Vec<Vec<S>>) -> Result<Self> {
        if sets.len() != labels.len() {
            return Err(Error::InvalidModel(format!(
                "{} data sets for {} labels",
                sets.len(),
                labels.len()
            )));
        }
        let sets: Vec<BTreeSet<String>> = sets
            .into_iter()
            .map(|s| s.into_iter().map(Into::into).collect())
            .collect();
        let ids: BTreeMap<&str, usize> = sets
            .iter()
            .flatten()
            .map(String::as_str)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let nwords = ids.len().div_ceil(64);
        let words = sets
            .iter()
            .map(|s| {
                let mut w = vec![0u64; nwords];
                for e in s {
                    let id = ids[e.as_str()];
                    w[id / 64] |= 1 << (id % 64);
                }
                w
            })
            .collect();
        Ok(CoverageMap {
            labels,
            sets,
            words,
        })
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    pub fn sets(&self) -> &[BTreeSet<String>] {
        &self.sets
    }

    /// `|∪_{a∈x} A_a|`
    pub fn covered(&self, x: AttrSubset) -> usize {
        let nwords = self.words.first().map_or(0, Vec::len);
        (0..nwords)
            .map(|k| {
                x.iter()
                    .fold(0u64, |acc, i| acc | self.words[i][k])
                    .count_ones() as usize
            })
            .sum()
    }

    pub fn rank(&self, x: AttrSubset) -> RankValue {
        RankValue::int(self.covered(x) as i64)
    }
}
