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

//! Random instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use divrank_core::{AttrSubset, CoverageMap, Distribution, GroundSet, RankModel, Team, VectorFamily};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn subsets(n: usize) -> Vec<AttrSubset> {
    (0..1u64 << n).map(AttrSubset::from_bits).collect()
}

/// A team with at most `max_rows` distinct rows; column `i` draws from
/// `1..=max_domain` values, so some columns may come out constant.
pub fn random_team(rng: &mut impl Rng, n: usize, max_rows: usize, max_domain: u32) -> Team {
    let domains: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_domain)).collect();
    let rows = rng.gen_range(1..=max_rows);
    let rows: Vec<Vec<String>> = (0..rows)
        .map(|_| domains.iter().map(|&d| rng.gen_range(0..d).to_string()).collect())
        .collect();
    Team::new(GroundSet::letters(n), rows).unwrap()
}

fn normalize(weights: Vec<(Vec<String>, u64)>) -> Vec<(Vec<String>, BigRational)> {
    let total: u64 = weights.iter().map(|(_, w)| w).sum();
    weights
        .into_iter()
        .map(|(a, w)| (a, BigRational::new(w.into(), total.into())))
        .collect()
}

/// Half of the draws are products of independent blocks, so that exact
/// independence is common; the rest put random weights on a random support.
pub fn random_distribution(rng: &mut impl Rng, n: usize) -> Distribution {
    let ground = GroundSet::letters(n);
    let outcomes = if rng.gen_bool(0.5) {
        // one weight table per block of consecutive variables
        let mut blocks: Vec<Vec<(Vec<String>, u64)>> = Vec::new();
        let mut i = 0;
        while i < n {
            let len = rng.gen_range(1..=(n - i).min(2));
            let support = rng.gen_range(1..=3);
            let mut table: Vec<(Vec<String>, u64)> = Vec::new();
            for _ in 0..support {
                let a: Vec<String> = (0..len).map(|_| rng.gen_range(0..2).to_string()).collect();
                if !table.iter().any(|(b, _)| *b == a) {
                    table.push((a, rng.gen_range(1..5)));
                }
            }
            blocks.push(table);
            i += len;
        }
        let mut joint: Vec<(Vec<String>, u64)> = vec![(Vec::new(), 1)];
        for block in &blocks {
            joint = joint
                .iter()
                .flat_map(|(a, w)| {
                    block.iter().map(move |(b, v)| {
                        let mut ab = a.clone();
                        ab.extend(b.iter().cloned());
                        (ab, w * v)
                    })
                })
                .collect();
        }
        joint
    } else {
        let support = rng.gen_range(1..=6);
        let mut table: Vec<(Vec<String>, u64)> = Vec::new();
        for _ in 0..support {
            let a: Vec<String> = (0..n).map(|_| rng.gen_range(0..3).to_string()).collect();
            if !table.iter().any(|(b, _)| *b == a) {
                table.push((a, rng.gen_range(1..7)));
            }
        }
        table
    };
    Distribution::new(ground, normalize(outcomes)).unwrap()
}

pub fn random_coverage(rng: &mut impl Rng, n: usize) -> CoverageMap {
    let universe = rng.gen_range(1..=6);
    let sets: Vec<Vec<String>> = (0..n)
        .map(|_| (0..universe).filter(|_| rng.gen_bool(0.4)).map(|e| format!("e{e}")).collect())
        .collect();
    CoverageMap::new(GroundSet::letters(n), sets).unwrap()
}

pub fn random_vectors(rng: &mut impl Rng, n: usize) -> VectorFamily {
    let dim = rng.gen_range(1..=4);
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-2..=2)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    VectorFamily::from_integers(GroundSet::letters(n), &refs).unwrap()
}

pub fn random_ones(rng: &mut impl Rng, n: usize) -> AttrSubset {
    AttrSubset::from_bits(rng.gen_range(0..1u64 << n))
}

/// One random model of each non-relational kind over `n` letters.
pub fn random_model(rng: &mut impl Rng, kind: &str, n: usize) -> RankModel {
    let g = GroundSet::letters(n);
    match kind {
        "constant" => {
            let c = BigRational::new(rng.gen_range(0..10).into(), rng.gen_range(1..4).into());
            RankModel::constant(g, c).unwrap()
        }
        "singular" => {
            let names = g.names().to_vec();
            let a0 = names.choose(rng).unwrap();
            RankModel::singular(g.clone(), a0).unwrap()
        }
        "two-valued" => RankModel::two_valued(g, random_ones(rng, n)).unwrap(),
        "uniform" => RankModel::uniform(g),
        "coverage" => RankModel::coverage(random_coverage(rng, n)),
        "entropy" => RankModel::entropy(random_distribution(rng, n)),
        "linear" => RankModel::linear(random_vectors(rng, n)),
        "relational" => RankModel::relational(random_team(rng, n, 8, 3)),
        other => panic!("unknown kind {other}"),
    }
}

/// Functional dependence read straight off the rows: any two rows that
/// agree on `x` agree on `y`.
pub fn fd_pairwise(team: &Team, x: AttrSubset, y: AttrSubset) -> bool {
    let rows = team.raw_rows();
    let agree = |s: &[u32], t: &[u32], z: AttrSubset| z.iter().all(|i| s[i] == t[i]);
    rows.iter()
        .all(|s| rows.iter().all(|t| !agree(s, t, x) || agree(s, t, y)))
}

/// Independence read straight off the rows: for any two rows there is a
/// third agreeing with the first on `x` and with the second on `y`.
pub fn joint_totality(team: &Team, x: AttrSubset, y: AttrSubset) -> bool {
    let rows = team.raw_rows();
    let agree = |s: &[u32], t: &[u32], z: AttrSubset| z.iter().all(|i| s[i] == t[i]);
    rows.iter().all(|s| {
        rows.iter()
            .all(|t| rows.iter().any(|u| agree(u, s, x) && agree(u, t, y)))
    })
}
