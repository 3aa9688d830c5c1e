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

use crate::axioms::{self, Axiom, CheckOptions};
use crate::error::{Error, Result};
use crate::subset::{AttrSubset, GroundSet};
use crate::table::RankTable;
use crate::value::{Comparison, RankValue, DEFAULT_EPSILON};

/// A rank function given by its value on every subset, validated against
/// R1-R4 on construction. Submodularity is not required.
#[derive(Clone, Debug)]
pub struct ExplicitRankTable {
    ground: GroundSet,
    table: RankTable,
}

impl ExplicitRankTable {
    /// Builds and validates a table. `entries` must cover every subset of
    /// `ground` exactly once. Any floating-point entry switches the whole
    /// table to tolerance comparison.
    pub fn build(
        ground: GroundSet,
        entries: impl IntoIterator<Item = (AttrSubset, RankValue)>,
    ) -> Result<Self> {
        Self::build_with(ground, entries, &CheckOptions::default(), None)
    }

    pub fn build_with(
        ground: GroundSet,
        entries: impl IntoIterator<Item = (AttrSubset, RankValue)>,
        opts: &CheckOptions,
        tolerance: Option<f64>,
    ) -> Result<Self> {
        ground.ensure_at_most(opts.cap)?;
        let size = 1usize << ground.len();
        let mut values: Vec<Option<RankValue>> = vec![None; size];
        for (x, v) in entries {
            ground.check(x)?;
            if matches!(v, RankValue::LogCount(0)) || v.is_negative() {
                return Err(Error::InvalidModel(format!(
                    "r({}) = {v} is negative",
                    ground.display(x)
                )));
            }
            if values[x.index()].replace(v).is_some() {
                return Err(Error::InvalidModel(format!(
                    "r({}) given twice",
                    ground.display(x)
                )));
            }
        }
        let values: Vec<RankValue> = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidModel(format!(
                        "missing entry for r({})",
                        ground.display(AttrSubset::from_bits(i as u64))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let floats = values.iter().any(|v| matches!(v, RankValue::Approx(_)));
        let comparison = match (floats, tolerance) {
            (_, Some(eps)) => Comparison::Epsilon(eps),
            (true, None) => Comparison::Epsilon(DEFAULT_EPSILON),
            (false, None) => Comparison::Exact,
        };
        let table = RankTable::new(values, comparison);
        let report = axioms::check_table(&ground, &table, opts, &Axiom::DIVERSITY);
        if !report.all_pass() {
            return Err(Error::AxiomViolation(Box::new(report)));
        }
        Ok(ExplicitRankTable { ground, table })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn comparison(&self) -> Comparison {
        self.table.comparison()
    }

    pub fn get(&self, x: AttrSubset) -> &RankValue {
        self.table.value(x)
    }

    pub fn table(&self) -> &RankTable {
        &self.table
    }

    /// `(subset, value)` pairs in canonical subset order.
    pub fn entries(&self) -> Vec<(AttrSubset, &RankValue)> {
        self.ground
            .subsets()
            .into_iter()
            .map(|x| (x, self.get(x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Verdict;
    use crate::value::parse_rational;

    fn exact(ground: &GroundSet, pairs: &[(&str, &str)]) -> Vec<(AttrSubset, RankValue)> {
        pairs
            .iter()
            .map(|(s, v)| (ground.parse_subset(s).unwrap(), RankValue::Exact(parse_rational(v).unwrap())))
            .collect()
    }

    #[test]
    fn accepts_non_submodular_toy_table() {
        let g = GroundSet::letters(3);
        let entries = exact(
            &g,
            &[("", "0"), ("a", "1.5"), ("b", "1.5"), ("c", "1"), ("a,b", "2.1"), ("a,c", "1.6"), ("b,c", "1.6"), ("a,b,c", "3")],
        );
        let t = ExplicitRankTable::build(g.clone(), entries).unwrap();
        assert_eq!(t.get(g.parse_subset("a,b").unwrap()).to_string(), "2.1");
        assert_eq!(t.comparison(), Comparison::Exact);
    }

    #[test]
    fn rejects_nonzero_empty_rank() {
        let g = GroundSet::letters(1);
        let err = ExplicitRankTable::build(g.clone(), exact(&g, &[("", "1"), ("a", "1")])).unwrap_err();
        let Error::AxiomViolation(report) = err else { panic!("{err}") };
        assert!(matches!(report.verdict(Axiom::R1), Some(Verdict::Fail(_))));
    }

    #[test]
    fn rejects_superadditive_pair_via_r3() {
        let g = GroundSet::letters(2);
        let err = ExplicitRankTable::build(g.clone(), exact(&g, &[("", "0"), ("a", "0"), ("b", "0"), ("a,b", "1")])).unwrap_err();
        let Error::AxiomViolation(report) = err else { panic!("{err}") };
        let Some(Verdict::Fail(w)) = report.verdict(Axiom::R3) else { panic!("R3 should fail") };
        // r(∅a) = r(∅) but r(∅ab) != r(∅b)
        assert_eq!((w.x, w.y, w.z), (AttrSubset::EMPTY, g.parse_subset("a").unwrap(), g.parse_subset("b").unwrap()));
    }

    #[test]
    fn rejects_incomplete_or_negative() {
        let g = GroundSet::letters(1);
        assert!(ExplicitRankTable::build(g.clone(), exact(&g, &[("", "0")])).is_err());
        assert!(ExplicitRankTable::build(g.clone(), exact(&g, &[("", "0"), ("a", "-1")])).is_err());
    }

    #[test]
    fn float_entries_switch_to_tolerance() {
        let g = GroundSet::letters(1);
        let t = ExplicitRankTable::build(
            g,
            [(AttrSubset::EMPTY, RankValue::Approx(0.0)), (AttrSubset::from_bits(1), RankValue::Approx(0.3))],
        )
        .unwrap();
        assert_eq!(t.comparison(), Comparison::Epsilon(DEFAULT_EPSILON));
    }
}
