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

//! Armstrong inference for dependence atoms.
//!
//! Entailment is decided by attribute closure: `Σ ⊢ =(x,y)` iff `y` is
//! contained in the closure of `x`. A closure run can be replayed as a
//! derivation in the Reflexivity/Augmentation/Transitivity calculus, and a
//! failed entailment yields a two-valued rank and a two-row team that
//! satisfy `Σ` but not the goal.

use std::fmt;

use crate::assertion::{Assertion, AssertionSet, AtomKind};
use crate::error::{Error, Result};
use crate::models::{RankModel, Team};
use crate::subset::{AttrSubset, GroundSet};

/// Largest universe [`armstrong_close`] will enumerate.
pub const CLOSE_CAP: usize = 10;

/// The dependence atoms of `sigma` as `(lhs, rhs)` pairs, with constancy
/// atoms rewritten as `=(∅,x)`.
fn dep_pairs(sigma: &AssertionSet) -> Result<Vec<(AttrSubset, AttrSubset)>> {
    sigma
        .iter()
        .map(|a| match a.normalized() {
            Assertion {
                kind: AtomKind::Dep,
                lhs,
                rhs,
            } => Ok((lhs, rhs)),
            _ => Err(Error::Usage(format!(
                "dependence inference takes only dep and const assertions, found `{}`",
                a.display(sigma.universe())
            ))),
        })
        .collect()
}

fn dep_goal(sigma: &AssertionSet, goal: &Assertion) -> Result<(AttrSubset, AttrSubset)> {
    sigma.universe().check(goal.attrs())?;
    match goal.normalized() {
        Assertion {
            kind: AtomKind::Dep,
            lhs,
            rhs,
        } => Ok((lhs, rhs)),
        _ => Err(Error::Usage(format!(
            "goal `{}` is not a dependence atom",
            goal.display(sigma.universe())
        ))),
    }
}

/// Closure of `x`, plus the `(atom index, set before)` of every step that
/// grew it.
fn closure_steps(deps: &[(AttrSubset, AttrSubset)], x: AttrSubset) -> (AttrSubset, Vec<(usize, AttrSubset)>) {
    let mut c = x;
    let mut steps = Vec::new();
    loop {
        let before = steps.len();
        for (i, &(z, w)) in deps.iter().enumerate() {
            if z.is_subset(c) && !w.is_subset(c) {
                steps.push((i, c));
                c = c.union(w);
            }
        }
        if steps.len() == before {
            return (c, steps);
        }
    }
}

pub fn attribute_closure(sigma: &AssertionSet, x: AttrSubset) -> Result<AttrSubset> {
    sigma.universe().check(x)?;
    let deps = dep_pairs(sigma)?;
    Ok(closure_steps(&deps, x).0)
}

pub fn dep_entails(sigma: &AssertionSet, goal: &Assertion) -> Result<bool> {
    let (x, y) = dep_goal(sigma, goal)?;
    Ok(y.is_subset(attribute_closure(sigma, x)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArmstrongRule {
    Hypothesis,
    Reflexivity,
    Augmentation,
    Transitivity,
}

impl ArmstrongRule {
    pub fn name(self) -> &'static str {
        match self {
            ArmstrongRule::Hypothesis => "hypothesis",
            ArmstrongRule::Reflexivity => "Reflexivity",
            ArmstrongRule::Augmentation => "Augmentation",
            ArmstrongRule::Transitivity => "Transitivity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: ArmstrongRule,
    pub lhs: AttrSubset,
    pub rhs: AttrSubset,
    /// Indices of earlier steps.
    pub premises: Vec<usize>,
}

/// A linear proof whose last step is the goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    fn push(&mut self, rule: ArmstrongRule, lhs: AttrSubset, rhs: AttrSubset, premises: Vec<usize>) -> usize {
        self.steps.push(DerivationStep {
            rule,
            lhs,
            rhs,
            premises,
        });
        self.steps.len() - 1
    }

    pub fn conclusion(&self) -> Option<Assertion> {
        self.steps.last().map(|s| Assertion::dep(s.lhs, s.rhs))
    }

    /// Checks every step against its rule. Returns the index of the first
    /// bad step on failure.
    pub fn check(&self, sigma: &AssertionSet) -> std::result::Result<(), usize> {
        let deps = dep_pairs(sigma).map_err(|_| 0usize)?;
        for (i, s) in self.steps.iter().enumerate() {
            if s.premises.iter().any(|&p| p >= i) {
                return Err(i);
            }
            let p = |k: usize| &self.steps[s.premises[k]];
            let ok = match (s.rule, s.premises.len()) {
                (ArmstrongRule::Hypothesis, 0) => deps.contains(&(s.lhs, s.rhs)),
                (ArmstrongRule::Reflexivity, 0) => s.rhs.is_subset(s.lhs),
                (ArmstrongRule::Augmentation, 1) => {
                    let q = p(0);
                    let z = s.lhs.difference(q.lhs).union(s.rhs.difference(q.rhs));
                    q.lhs.is_subset(s.lhs)
                        && q.rhs.is_subset(s.rhs)
                        && z.is_subset(s.lhs.intersection(s.rhs))
                }
                (ArmstrongRule::Transitivity, 2) => {
                    let (a, b) = (p(0), p(1));
                    a.lhs == s.lhs && a.rhs == b.lhs && b.rhs == s.rhs
                }
                _ => false,
            };
            if !ok {
                return Err(i);
            }
        }
        Ok(())
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let atom = Assertion::dep(s.lhs, s.rhs);
            out.push_str(&format!("{:>3}. {}    [{}", i + 1, atom.display(ground), s.rule.name()));
            if !s.premises.is_empty() {
                let refs: Vec<String> = s.premises.iter().map(|p| (p + 1).to_string()).collect();
                out.push_str(&format!(" {}", refs.join(", ")));
            }
            out.push_str("]\n");
        }
        out
    }
}

/// Replays the closure of `goal.lhs` as an Armstrong derivation of `goal`,
/// or returns `None` when the goal is not entailed.
pub fn derive(sigma: &AssertionSet, goal: &Assertion) -> Result<Option<Derivation>> {
    let (x, y) = dep_goal(sigma, goal)?;
    let deps = dep_pairs(sigma)?;
    let mut d = Derivation { steps: Vec::new() };
    if y.is_subset(x) {
        d.push(ArmstrongRule::Reflexivity, x, y, vec![]);
        return Ok(Some(d));
    }
    let (closure, steps) = closure_steps(&deps, x);
    if !y.is_subset(closure) {
        return Ok(None);
    }
    // Invariant: step `cur` derives =(x, c).
    let mut cur = d.push(ArmstrongRule::Reflexivity, x, x, vec![]);
    let mut c = x;
    for (i, before) in steps {
        debug_assert_eq!(before, c);
        let (z, w) = deps[i];
        let h = d.push(ArmstrongRule::Hypothesis, z, w, vec![]);
        let a = d.push(ArmstrongRule::Augmentation, c, c.union(w), vec![h]);
        c = c.union(w);
        cur = d.push(ArmstrongRule::Transitivity, x, c, vec![cur, a]);
        if y.is_subset(c) {
            break;
        }
    }
    if y != c {
        let r = d.push(ArmstrongRule::Reflexivity, c, y, vec![]);
        d.push(ArmstrongRule::Transitivity, x, y, vec![cur, r]);
    }
    Ok(Some(d))
}

/// The two countermodels for a dependence atom not entailed by `Σ`.
#[derive(Clone, Debug)]
pub struct DepCountermodel {
    /// Closure of the goal's left-hand side; rank 0 exactly on its subsets.
    pub closed: AttrSubset,
    /// Two-valued rank with singleton rank 1 outside `closed`.
    pub model: RankModel,
    /// Rows: all zeros, and the indicator of the complement of `closed`.
    pub team: Team,
}

pub fn dep_countermodel(sigma: &AssertionSet, goal: &Assertion) -> Result<DepCountermodel> {
    let (x, y) = dep_goal(sigma, goal)?;
    let closed = attribute_closure(sigma, x)?;
    if y.is_subset(closed) {
        return Err(Error::Usage(format!(
            "`{}` is derivable, so it has no countermodel",
            goal.display(sigma.universe())
        )));
    }
    let ground = sigma.universe().clone();
    let ones = ground.full().difference(closed);
    let model = RankModel::two_valued(ground.clone(), ones)?;
    let team = Team::binary(ground, [0, ones.bits()])?;
    Ok(DepCountermodel {
        closed,
        model,
        team,
    })
}

/// All `=(x,y)` with `y ⊆ closure(x)`, over every pair of subsets.
pub fn armstrong_close(sigma: &AssertionSet) -> Result<AssertionSet> {
    let ground = sigma.universe();
    ground.ensure_at_most(CLOSE_CAP)?;
    let deps = dep_pairs(sigma)?;
    let mut out = Vec::new();
    for x in ground.subsets() {
        let c = closure_steps(&deps, x).0;
        out.extend(c.submasks().map(|y| Assertion::dep(x, y)));
    }
    AssertionSet::new(ground.clone(), out)
}

/// The first atom of the Armstrong closure missing from `sigma`, in
/// canonical order; `None` when `sigma` is closed. Constancy atoms count as
/// their `=(∅,x)` form.
pub fn first_missing(sigma: &AssertionSet) -> Result<Option<Assertion>> {
    let closed = armstrong_close(sigma)?;
    let present: std::collections::BTreeSet<Assertion> = sigma.iter().map(|a| a.normalized()).collect();
    let missing = closed.iter().find(|a| !present.contains(a)).copied();
    Ok(missing)
}

impl fmt::Display for DepCountermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.team.variables();
        write!(f, "V = {}; {}", g.display(self.closed), self.model)
    }
}
