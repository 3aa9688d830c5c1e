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

mod common;

use divrank_core::dep::{dep_countermodel, dep_entails};
use divrank_core::indep::indep_saturate;
use divrank_core::{Assertion, AssertionSet, AttrSubset, GroundSet, RankModel};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn holds_in_team(team: &divrank_core::Team, x: AttrSubset, y: AttrSubset) -> bool {
    team.count(x.union(y)) as u128 == team.count(x) as u128 * team.count(y) as u128
}

/// A random sub-collection of the atoms `model` satisfies must entail only
/// atoms `model` satisfies.
#[test]
fn entailment_is_sound_for_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let kinds = ["relational", "entropy", "coverage", "linear", "two-valued"];
    for round in 0..150 {
        let n = rng.gen_range(1..=4);
        let model = random_model(&mut rng, kinds[round % kinds.len()], n);
        let g = GroundSet::letters(n);
        let all = subsets(n);
        let mut deps = Vec::new();
        let mut indeps = Vec::new();
        for &x in &all {
            for &y in &all {
                if model.dep_holds(x, y).unwrap() {
                    deps.push(Assertion::dep(x, y));
                }
                if model.indep_holds(x, y).unwrap() {
                    indeps.push(Assertion::indep(x, y));
                }
            }
        }
        let k = rng.gen_range(0..=4);
        let dep_sigma = AssertionSet::new(g.clone(), deps.choose_multiple(&mut rng, k).copied()).unwrap();
        let indep_sigma = AssertionSet::new(g.clone(), indeps.choose_multiple(&mut rng, k).copied()).unwrap();
        let st = indep_saturate(&indep_sigma).unwrap();
        for &x in &all {
            for &y in &all {
                if dep_entails(&dep_sigma, &Assertion::dep(x, y)).unwrap() {
                    assert!(model.dep_holds(x, y).unwrap(), "{model}: {x:?} -> {y:?}");
                }
                if st.contains(x, y) {
                    assert!(model.indep_holds(x, y).unwrap(), "{model}: {x:?} _||_ {y:?}");
                }
            }
        }
    }
}

/// Five attributes and up to four assertions, sampled.
#[test]
fn independence_countermodels_on_five_attributes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let g = GroundSet::letters(5);
    let all = subsets(5);
    for _ in 0..60 {
        let k = rng.gen_range(0..=4);
        let sigma = AssertionSet::new(
            g.clone(),
            (0..k).map(|_| Assertion::indep(*all.choose(&mut rng).unwrap(), *all.choose(&mut rng).unwrap())),
        )
        .unwrap();
        let st = indep_saturate(&sigma).unwrap();
        let v = st.constancy_set();
        for &x in &all {
            for &y in &all {
                if st.contains(x, y) {
                    assert!(x.intersection(y).is_subset(v));
                    continue;
                }
                let (mx, my) = st.minimize(x, y).unwrap();
                assert!(mx.is_subset(x) && my.is_subset(y));
                assert!(mx == my && mx.len() == 1 || mx.intersection(my).is_empty());
                let team = st.countermodel(x, y).unwrap();
                for a in sigma.iter() {
                    assert!(holds_in_team(&team, a.lhs, a.rhs), "{}", sigma.to_text());
                }
                assert!(!holds_in_team(&team, x, y));
            }
        }
    }
}

#[test]
fn dependence_countermodels_on_six_attributes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let g = GroundSet::letters(6);
    let all = subsets(6);
    for _ in 0..40 {
        let k = rng.gen_range(0..=5);
        let sigma = AssertionSet::new(
            g.clone(),
            (0..k).map(|_| Assertion::dep(*all.choose(&mut rng).unwrap(), *all.choose(&mut rng).unwrap())),
        )
        .unwrap();
        for &x in &all {
            for &y in &all {
                let goal = Assertion::dep(x, y);
                if dep_entails(&sigma, &goal).unwrap() {
                    continue;
                }
                let cm = dep_countermodel(&sigma, &goal).unwrap();
                let m = RankModel::relational(cm.team);
                for a in sigma.iter() {
                    assert!(m.dep_holds(a.lhs, a.rhs).unwrap());
                }
                assert!(!m.dep_holds(x, y).unwrap());
            }
        }
    }
}
