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

//! Realizing an Armstrong-closed set of dependence atoms as a rank table.
//!
//! Subsets are grouped into classes of mutually dependent sets and ordered
//! by dependence. An order-preserving injection `f` into `{0} ∪ (1,2)` then
//! gives `r(x) = f(E_x)`, whose dependence atoms are exactly `Σ`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::assertion::{Assertion, AssertionSet, AtomKind};
use crate::axioms::CheckOptions;
use crate::dep;
use crate::error::{Error, Result};
use crate::models::ExplicitRankTable;
use crate::subset::{AttrSubset, GroundSet};
use crate::value::RankValue;

/// Largest universe the construction will enumerate.
pub const REPRESENT_CAP: usize = 10;

/// The classes `E_x` of `≡` and the order `E_y ≤ E_x ⟺ =(x,y) ∈ Σ`.
///
/// Classes are numbered by their least member in canonical order, so
/// class 0 is `E_∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivClassPoset {
    universe: GroundSet,
    members: Vec<Vec<AttrSubset>>,
    class_of: Vec<usize>,
    // le[i][j]: E_i ≤ E_j
    le: Vec<Vec<bool>>,
}

impl EquivClassPoset {
    pub fn universe(&self) -> &GroundSet {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members of class `i` in canonical order.
    pub fn members(&self, i: usize) -> &[AttrSubset] {
        &self.members[i]
    }

    pub fn representative(&self, i: usize) -> AttrSubset {
        self.members[i][0]
    }

    pub fn class_of(&self, x: AttrSubset) -> usize {
        self.class_of[x.bits() as usize]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le[i][j]
    }

    /// Covering pairs `(i, j)` with `E_i < E_j` and nothing in between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn class_name(&self, i: usize) -> String {
        let names: Vec<String> = self.members[i]
            .iter()
            .map(|&x| self.universe.display(x))
            .collect();
        format!("{{{}}}", names.join(" | "))
    }

    /// The Hasse diagram as a DOT digraph, edges pointing upwards.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph classes {\n");
        for i in 0..self.len() {
            out.push_str(&format!("  E{i} [label=\"{}\"];\n", self.class_name(i)));
        }
        for (i, j) in self.hasse_edges() {
            out.push_str(&format!("  E{i} -> E{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn dep_set(sigma: &AssertionSet) -> Result<HashSet<(AttrSubset, AttrSubset)>> {
    sigma
        .iter()
        .map(|a| match a.normalized() {
            Assertion {
                kind: AtomKind::Dep,
                lhs,
                rhs,
            } => Ok((lhs, rhs)),
            _ => Err(Error::Usage(format!(
                "representation takes only dep and const assertions, found `{}`",
                a.display(sigma.universe())
            ))),
        })
        .collect()
}

/// Builds the class poset of a closed `Σ`; fails with the first missing
/// consequence when `Σ` is not closed.
pub fn build_poset(sigma: &AssertionSet) -> Result<EquivClassPoset> {
    let universe = sigma.universe().clone();
    universe.ensure_at_most(REPRESENT_CAP)?;
    let deps = dep_set(sigma)?;
    if let Some(missing) = dep::first_missing(sigma)? {
        return Err(Error::NotClosed(missing.display(&universe).to_string()));
    }
    let subsets = universe.subsets();
    let mut members: Vec<Vec<AttrSubset>> = Vec::new();
    let mut class_of = vec![usize::MAX; subsets.len()];
    for &x in &subsets {
        let found = members
            .iter()
            .position(|m| deps.contains(&(x, m[0])) && deps.contains(&(m[0], x)));
        let i = found.unwrap_or_else(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[i].push(x);
        class_of[x.bits() as usize] = i;
    }
    let le = members
        .iter()
        .map(|mi| members.iter().map(|mj| deps.contains(&(mj[0], mi[0]))).collect())
        .collect();
    Ok(EquivClassPoset {
        universe,
        members,
        class_of,
        le,
    })
}

/// `f(E_i)` for every class, in class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationAssignment {
    pub values: Vec<BigRational>,
}

/// The first point of `(l, r)` outside `used`, searching midpoints
/// breadth-first: the midpoint, then the midpoints of both halves, and so on.
fn first_free_dyadic(l: &BigRational, r: &BigRational, used: &BTreeSet<BigRational>) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut queue = VecDeque::from([(l.clone(), r.clone())]);
    loop {
        let (a, b) = queue.pop_front().expect("search never runs dry");
        let m = (&a + &b) / &two;
        if !used.contains(&m) {
            return m;
        }
        queue.push_back((a, m.clone()));
        queue.push_back((m, b));
    }
}

pub fn assign_values(poset: &EquivClassPoset) -> InterpolationAssignment {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut values: Vec<BigRational> = Vec::with_capacity(poset.len());
    let mut used = BTreeSet::new();
    for i in 0..poset.len() {
        if i == 0 {
            values.push(BigRational::zero());
            continue;
        }
        let l = (1..i)
            .filter(|&j| poset.lt(j, i))
            .map(|j| &values[j])
            .fold(&one, |m, v| if v > m { v } else { m });
        let r = (1..i)
            .filter(|&j| poset.lt(i, j))
            .map(|j| &values[j])
            .fold(&two, |m, v| if v < m { v } else { m });
        assert!(l < r, "empty interval for class {i}");
        let v = first_free_dyadic(l, r, &used);
        used.insert(v.clone());
        values.push(v);
    }
    InterpolationAssignment { values }
}

/// `r(x) = f(E_x)`, validated as a diversity rank.
pub fn realize_rank(sigma: &AssertionSet) -> Result<ExplicitRankTable> {
    let poset = build_poset(sigma)?;
    let f = assign_values(&poset);
    table_from(&poset, &f)
}

pub fn table_from(poset: &EquivClassPoset, f: &InterpolationAssignment) -> Result<ExplicitRankTable> {
    let opts = CheckOptions {
        cap: REPRESENT_CAP,
        ..CheckOptions::default()
    };
    let entries = poset
        .universe
        .subsets()
        .into_iter()
        .map(|x| (x, RankValue::Exact(f.values[poset.class_of(x)].clone())));
    ExplicitRankTable::build_with(poset.universe.clone(), entries, &opts, None)
}

/// The first atom, in canonical order, on which `Σ` and the dependence
/// atoms of `table` disagree.
pub fn roundtrip_mismatch(sigma: &AssertionSet, table: &ExplicitRankTable) -> Result<Option<Assertion>> {
    if sigma.universe() != table.ground() {
        return Err(Error::Usage(format!(
            "universe {:?} does not match table ground set {:?}",
            sigma.universe(),
            table.ground()
        )));
    }
    let deps = dep_set(sigma)?;
    let subsets = sigma.universe().subsets();
    for &x in &subsets {
        for &y in &subsets {
            if table.table().dep(x, y) != deps.contains(&(x, y)) {
                return Ok(Some(Assertion::dep(x, y)));
            }
        }
    }
    Ok(None)
}

/// Whether the dependence atoms of `table` are exactly `Σ`.
pub fn roundtrip_verify(sigma: &AssertionSet, table: &ExplicitRankTable) -> Result<bool> {
    Ok(roundtrip_mismatch(sigma, table)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::RankModel;
    use crate::value::parse_rational;

    fn closed(text: &str) -> AssertionSet {
        dep::armstrong_close(&AssertionSet::parse(text, "test").unwrap()).unwrap()
    }

    fn check_invariants(p: &EquivClassPoset, f: &InterpolationAssignment) {
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        assert!(f.values[0].is_zero());
        for i in 0..p.len() {
            if i > 0 {
                assert!(f.values[i] > one && f.values[i] < two);
            }
            for j in 0..p.len() {
                if i != j {
                    assert_ne!(f.values[i], f.values[j]);
                }
                if p.le(i, j) {
                    assert!(f.values[i] <= f.values[j]);
                }
            }
        }
    }

    #[test]
    fn worked_example_classes() {
        let s = closed("universe: a b c\ndep: a b -> c");
        assert_eq!(s.len(), 31);
        let p = build_poset(&s).unwrap();
        assert_eq!(p.len(), 7);
        let u = s.universe();
        let c = |t: &str| p.class_of(u.parse_subset(t).unwrap());
        assert_eq!(c("a,b"), c("a,b,c"));
        let reps: Vec<String> = (0..7).map(|i| u.display(p.representative(i))).collect();
        assert_eq!(reps, ["()", "a", "b", "c", "a,b", "a,c", "b,c"]);
        assert!(!p.le(c("a"), c("b,c")) && !p.le(c("b,c"), c("a")));
        assert!(p.lt(c("a"), c("a,b")) && p.lt(c("a,c"), c("a,b")));
    }

    #[test]
    fn worked_example_realizes() {
        let s = closed("universe: a b c\ndep: a b -> c");
        let p = build_poset(&s).unwrap();
        let f = assign_values(&p);
        check_invariants(&p, &f);
        let t = realize_rank(&s).unwrap();
        assert!(roundtrip_verify(&s, &t).unwrap());
        let u = s.universe();
        let m = RankModel::explicit(t);
        assert!(m.dep_holds(u.parse_subset("a,b").unwrap(), u.parse_subset("c").unwrap()).unwrap());
        assert!(!m.dep_holds(u.parse_subset("a,c").unwrap(), u.parse_subset("b").unwrap()).unwrap());
    }

    #[test]
    fn published_values_also_roundtrip() {
        let s = closed("universe: a b c\ndep: a b -> c");
        let p = build_poset(&s).unwrap();
        let f = InterpolationAssignment {
            values: ["0", "1.5", "1.6", "1.1", "1.8", "1.7", "1.65"]
                .iter()
                .map(|v| parse_rational(v).unwrap())
                .collect(),
        };
        check_invariants(&p, &f);
        let t = table_from(&p, &f).unwrap();
        assert!(roundtrip_verify(&s, &t).unwrap());
    }

    #[test]
    fn uniform_table_does_not_realize_worked_example() {
        let s = closed("universe: a b c\ndep: a b -> c");
        let g = s.universe().clone();
        let entries = g.subsets().into_iter().map(|x| (x, RankValue::int(x.len() as i64)));
        let t = ExplicitRankTable::build(g, entries).unwrap();
        assert!(!roundtrip_verify(&s, &t).unwrap());
    }

    #[test]
    fn single_attribute_chain() {
        let s = closed("universe: a");
        let p = build_poset(&s).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.lt(0, 1));
        assert_eq!(assign_values(&p).values[1], BigRational::new(3.into(), 2.into()));
        assert_eq!(p.hasse_edges(), vec![(0, 1)]);
    }

    #[test]
    fn chain_values_increase() {
        let s = closed("universe: a b\ndep: a -> b");
        let p = build_poset(&s).unwrap();
        let u = s.universe();
        let (a, b, ab) = (u.parse_subset("a").unwrap(), u.parse_subset("b").unwrap(), u.full());
        assert_eq!(p.class_of(a), p.class_of(ab));
        let t = realize_rank(&s).unwrap();
        assert_eq!(t.get(a), t.get(ab));
        assert!(t.table().cmp(&[b], &[ab]).is_lt());
        assert!(roundtrip_verify(&s, &t).unwrap());
    }

    #[test]
    fn reflexive_closure_gives_distinct_values() {
        let s = closed("universe: a b");
        let t = realize_rank(&s).unwrap();
        let vals: BTreeSet<String> = t.entries().iter().map(|(_, v)| v.to_string()).collect();
        assert_eq!(vals.len(), 4);
        assert!(roundtrip_verify(&s, &t).unwrap());
    }

    #[test]
    fn unclosed_sets_name_a_missing_atom() {
        let s = AssertionSet::parse("universe: a b c\ndep: a b -> c", "t").unwrap();
        let err = build_poset(&s).unwrap_err();
        assert!(matches!(err, Error::NotClosed(ref m) if m == "dep: () -> ()"), "{err}");
    }

    #[test]
    fn representatives_can_be_swapped() {
        let s = closed("universe: a b c d\ndep: a -> b\ndep: c d -> a");
        let p = build_poset(&s).unwrap();
        let deps = dep_set(&s).unwrap();
        for i in 0..p.len() {
            for j in 0..p.len() {
                for &x in p.members(i) {
                    for &y in p.members(j) {
                        assert_eq!(deps.contains(&(x, y)), p.le(j, i));
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_and_dot() {
        let s = closed("universe: a b c\ndep: a -> b");
        assert_eq!(realize_rank(&s).unwrap().entries(), realize_rank(&s).unwrap().entries());
        let dot = build_poset(&s).unwrap().to_dot();
        assert!(dot.starts_with("digraph") && dot.contains("E0 ->"), "{dot}");
    }
}
