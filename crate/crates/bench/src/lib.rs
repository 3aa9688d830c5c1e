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

//! Workloads shared by the benchmarks.

use divrank_core::dep::armstrong_close;
use divrank_core::{Assertion, AssertionSet, AttrSubset, GroundSet, RankModel, Team};

/// Attributes `a0 .. a{n-1}`.
pub fn ground(n: usize) -> GroundSet {
    GroundSet::new((0..n).map(|i| format!("a{i}"))).unwrap()
}

/// `=(a_i, a_{i+1})` for every consecutive pair: the closure of `{a_0}`
/// walks the whole chain.
pub fn dep_chain(n: usize) -> AssertionSet {
    let g = ground(n);
    let atoms = (0..n.saturating_sub(1)).map(|i| Assertion::dep(AttrSubset::singleton(i), AttrSubset::singleton(i + 1)));
    AssertionSet::new(g, atoms).unwrap()
}

/// `a_i ⊥ a_{i+1}` for consecutive pairs and `a_0 a_1 ⊥ a_2`.
pub fn indep_chain(n: usize) -> AssertionSet {
    let g = ground(n);
    let mut atoms: Vec<Assertion> = (0..n.saturating_sub(1))
        .map(|i| Assertion::indep(AttrSubset::singleton(i), AttrSubset::singleton(i + 1)))
        .collect();
    if n >= 3 {
        atoms.push(Assertion::indep(AttrSubset::from_bits(0b011), AttrSubset::from_bits(0b100)));
    }
    AssertionSet::new(g, atoms).unwrap()
}

/// The team of all even-weight rows over `n` binary variables.
pub fn parity_team(n: usize) -> RankModel {
    let rows = (0..1u64 << n).filter(|r| r.count_ones() % 2 == 0);
    RankModel::relational(Team::binary(ground(n), rows).unwrap())
}

/// The Armstrong closure of [`dep_chain`].
pub fn closed_chain(n: usize) -> AssertionSet {
    armstrong_close(&dep_chain(n)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_build() {
        assert_eq!(dep_chain(4).len(), 3);
        assert_eq!(indep_chain(4).len(), 4);
        assert_eq!(parity_team(3).ground().len(), 3);
        assert!(closed_chain(3).len() > dep_chain(3).len());
    }
}
