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

//! Inference for independence atoms under the rules Empty Set, Symmetry,
//! Decomposition, Mixing and Constancy.
//!
//! Entailment is decided by saturating `Σ` under the rules with every rule
//! instance restricted to subsets of the declared universe. Decomposition
//! only shrinks sides, Mixing only recombines sides already present, and
//! Symmetry swaps them, so none of these can leave the universe. Empty Set
//! and Constancy can introduce arbitrary sets, but intersecting every atom
//! of a derivation with the universe maps it to a derivation of the same
//! universe-bounded goal, so nothing is lost by the restriction.
//!
//! Failed entailments are refuted by 0/1 teams: the team vanishing on the
//! constant attributes for a goal `c ⊥ c`, and otherwise the parity team
//! over a minimal non-entailed sub-goal.

use std::collections::VecDeque;
use std::fmt;

use crate::assertion::{Assertion, AssertionSet, AtomKind};
use crate::error::{Error, Result};
use crate::models::Team;
use crate::subset::{AttrSubset, GroundSet};

/// Largest universe [`indep_saturate`] will enumerate.
pub const SATURATION_CAP: usize = 8;
/// Largest universe for which countermodel teams are materialized.
pub const TEAM_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GppRule {
    Hypothesis,
    EmptySet,
    Symmetry,
    Decomposition,
    Mixing,
    Constancy,
}

impl GppRule {
    pub fn name(self) -> &'static str {
        match self {
            GppRule::Hypothesis => "hypothesis",
            GppRule::EmptySet => "Empty Set",
            GppRule::Symmetry => "Symmetry",
            GppRule::Decomposition => "Decomposition",
            GppRule::Mixing => "Mixing",
            GppRule::Constancy => "Constancy",
        }
    }
}

/// The first rule application found for an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Justification {
    pub rule: GppRule,
    pub premises: [Option<(AttrSubset, AttrSubset)>; 2],
}

/// All independence atoms derivable from `Σ` over its universe, each with
/// one justification.
#[derive(Clone, Debug)]
pub struct SaturationState {
    universe: GroundSet,
    size: usize,
    // Indexed by `x.bits() * size + y.bits()`; stored for both orientations.
    derived: Vec<Option<Justification>>,
    count: usize,
}

impl SaturationState {
    fn slot(&self, x: AttrSubset, y: AttrSubset) -> usize {
        x.bits() as usize * self.size + y.bits() as usize
    }

    pub fn universe(&self) -> &GroundSet {
        &self.universe
    }

    pub fn contains(&self, x: AttrSubset, y: AttrSubset) -> bool {
        self.universe.check(x.union(y)).is_ok() && self.derived[self.slot(x, y)].is_some()
    }

    pub fn justification(&self, x: AttrSubset, y: AttrSubset) -> Option<&Justification> {
        if self.universe.check(x.union(y)).is_err() {
            return None;
        }
        self.derived[self.slot(x, y)].as_ref()
    }

    /// Number of derived atoms `x ⊥ y`, counting both orientations.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Derived atoms with `x ≤ y` in canonical order.
    pub fn atoms(&self) -> Vec<Assertion> {
        let subsets = self.universe.subsets();
        let mut out = Vec::new();
        for (i, &x) in subsets.iter().enumerate() {
            for &y in &subsets[i..] {
                if self.contains(x, y) {
                    out.push(Assertion::indep(x, y));
                }
            }
        }
        out
    }

    /// `{a : {a} ⊥ {a} derived}`
    pub fn constancy_set(&self) -> AttrSubset {
        (0..self.universe.len())
            .filter(|&a| {
                let s = AttrSubset::singleton(a);
                self.contains(s, s)
            })
            .fold(AttrSubset::EMPTY, AttrSubset::with)
    }

    /// A numbered proof of `x ⊥ y` from the recorded justifications, or
    /// `None` if the atom was not derived.
    pub fn explain(&self, x: AttrSubset, y: AttrSubset) -> Option<String> {
        self.justification(x, y)?;
        let mut order: Vec<(AttrSubset, AttrSubset)> = Vec::new();
        let mut stack = vec![(x, y, false)];
        while let Some((a, b, expanded)) = stack.pop() {
            if order.contains(&(a, b)) {
                continue;
            }
            let j = self.derived[self.slot(a, b)].expect("premises are derived");
            if expanded {
                order.push((a, b));
                continue;
            }
            stack.push((a, b, true));
            for &(p, q) in j.premises.iter().flatten().rev() {
                if !order.contains(&(p, q)) {
                    stack.push((p, q, false));
                }
            }
        }
        let g = &self.universe;
        let mut out = String::new();
        for (i, &(a, b)) in order.iter().enumerate() {
            let j = self.derived[self.slot(a, b)].unwrap();
            out.push_str(&format!("{:>3}. {}    [{}", i + 1, Assertion::indep(a, b).display(g), j.rule.name()));
            let refs: Vec<String> = j
                .premises
                .iter()
                .flatten()
                .map(|p| (order.iter().position(|o| o == p).unwrap() + 1).to_string())
                .collect();
            if !refs.is_empty() {
                out.push_str(&format!(" {}", refs.join(", ")));
            }
            out.push_str("]\n");
        }
        Some(out)
    }
}

struct Saturator {
    state: SaturationState,
    queue: VecDeque<(AttrSubset, AttrSubset)>,
}

impl Saturator {
    fn add(&mut self, x: AttrSubset, y: AttrSubset, rule: GppRule, premises: [Option<(AttrSubset, AttrSubset)>; 2]) {
        let slot = self.state.slot(x, y);
        if self.state.derived[slot].is_some() {
            return;
        }
        self.state.derived[slot] = Some(Justification { rule, premises });
        self.state.count += 1;
        self.queue.push_back((x, y));
        self.add(y, x, GppRule::Symmetry, [Some((x, y)), None]);
    }

    fn has(&self, x: AttrSubset, y: AttrSubset) -> bool {
        self.state.derived[self.state.slot(x, y)].is_some()
    }

    fn run(&mut self) {
        let all = self.state.universe.full();
        while let Some((p, q)) = self.queue.pop_front() {
            let from = Some((p, q));
            // Decomposition: p ⊥ q gives p ⊥ q' for q' ⊆ q.
            for y in q.submasks() {
                self.add(p, y, GppRule::Decomposition, [from, None]);
            }
            // Mixing with p ⊥ q as the first premise: p ⊥ q, pq ⊥ z ⊢ p ⊥ qz.
            let pq = p.union(q);
            for z in all.submasks() {
                if self.has(pq, z) {
                    self.add(p, q.union(z), GppRule::Mixing, [from, Some((pq, z))]);
                }
            }
            // Mixing with p ⊥ q as the second premise: x ⊥ y, p ⊥ q ⊢ x ⊥ yq
            // for every x, y with xy = p.
            for x in p.submasks() {
                let rest = p.difference(x);
                for extra in x.submasks() {
                    let y = rest.union(extra);
                    if self.has(x, y) {
                        self.add(x, y.union(q), GppRule::Mixing, [Some((x, y)), from]);
                    }
                }
            }
            // Constancy: p ⊥ p gives p ⊥ x for every x.
            if p == q {
                for x in all.submasks() {
                    self.add(p, x, GppRule::Constancy, [from, None]);
                }
            }
        }
    }
}

fn indep_pairs(sigma: &AssertionSet) -> Result<Vec<(AttrSubset, AttrSubset)>> {
    sigma
        .iter()
        .map(|a| match a.kind {
            AtomKind::Indep => Ok((a.lhs, a.rhs)),
            _ => Err(Error::Usage(format!(
                "independence inference takes only indep assertions, found `{}`",
                a.display(sigma.universe())
            ))),
        })
        .collect()
}

fn indep_goal(universe: &GroundSet, goal: &Assertion) -> Result<(AttrSubset, AttrSubset)> {
    universe.check(goal.attrs())?;
    match goal.kind {
        AtomKind::Indep => Ok((goal.lhs, goal.rhs)),
        _ => Err(Error::Usage(format!(
            "goal `{}` is not an independence atom",
            goal.display(universe)
        ))),
    }
}

pub fn indep_saturate(sigma: &AssertionSet) -> Result<SaturationState> {
    let universe = sigma.universe().clone();
    universe.ensure_at_most(SATURATION_CAP)?;
    let hyps = indep_pairs(sigma)?;
    let size = 1usize << universe.len();
    let mut s = Saturator {
        state: SaturationState {
            universe,
            size,
            derived: vec![None; size * size],
            count: 0,
        },
        queue: VecDeque::new(),
    };
    for (x, y) in hyps {
        s.add(x, y, GppRule::Hypothesis, [None, None]);
    }
    for x in s.state.universe.subsets() {
        s.add(x, AttrSubset::EMPTY, GppRule::EmptySet, [None, None]);
    }
    s.run();
    Ok(s.state)
}

pub fn indep_entails(sigma: &AssertionSet, goal: &Assertion) -> Result<bool> {
    let (x, y) = indep_goal(sigma.universe(), goal)?;
    Ok(indep_saturate(sigma)?.contains(x, y))
}

pub fn constancy_set(sigma: &AssertionSet) -> Result<AttrSubset> {
    Ok(indep_saturate(sigma)?.constancy_set())
}

impl SaturationState {
    /// Shrinks a non-derived `x ⊥ y` to a minimal non-derived sub-atom:
    /// one pass over `x`, then one over `y`, dropping attributes in
    /// canonical order whenever the smaller atom is still not derived.
    /// Since derived atoms are closed under shrinking, one pass suffices.
    pub fn minimize(&self, x: AttrSubset, y: AttrSubset) -> Result<(AttrSubset, AttrSubset)> {
        if self.contains(x, y) {
            return Err(Error::Usage(format!(
                "`{}` is derivable and cannot be minimized",
                Assertion::indep(x, y).display(&self.universe)
            )));
        }
        let (mut x, mut y) = (x, y);
        for a in x.iter() {
            if !self.contains(x.without(a), y) {
                x = x.without(a);
            }
        }
        for b in y.iter() {
            if !self.contains(x, y.without(b)) {
                y = y.without(b);
            }
        }
        Ok((x, y))
    }

    /// The team refuting a non-derived `x ⊥ y` while satisfying every
    /// derived atom.
    pub fn countermodel(&self, x: AttrSubset, y: AttrSubset) -> Result<Team> {
        self.universe.ensure_at_most(TEAM_CAP)?;
        let (x, y) = self.minimize(x, y)?;
        let all = self.universe.full();
        let mut rows: Vec<u64> = if x == y && x.len() == 1 {
            let free = all.difference(self.constancy_set());
            free.submasks().map(AttrSubset::bits).collect()
        } else {
            debug_assert!(x.intersection(y).is_empty());
            let xy = x.union(y);
            xy.submasks()
                .filter(|s| s.intersection(x).len() % 2 == s.intersection(y).len() % 2)
                .map(AttrSubset::bits)
                .collect()
        };
        rows.sort_unstable();
        Team::binary(self.universe.clone(), rows)
    }
}

pub fn minimize_target(sigma: &AssertionSet, goal: &Assertion) -> Result<Assertion> {
    let (x, y) = indep_goal(sigma.universe(), goal)?;
    let (x, y) = indep_saturate(sigma)?.minimize(x, y)?;
    Ok(Assertion::indep(x, y))
}

pub fn indep_countermodel(sigma: &AssertionSet, goal: &Assertion) -> Result<Team> {
    let (x, y) = indep_goal(sigma.universe(), goal)?;
    indep_saturate(sigma)?.countermodel(x, y)
}

/// Whether the relational rank of `team` satisfies `x ⊥ y`, decided by
/// exact counts: `#rows(xy) = #rows(x)·#rows(y)`.
pub fn team_satisfies(team: &Team, x: AttrSubset, y: AttrSubset) -> bool {
    team.count(x.union(y)) as u128 == team.count(x) as u128 * team.count(y) as u128
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.rule.name())
    }
}
