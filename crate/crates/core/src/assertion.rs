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

//! Dependence, constancy and independence atoms, and the line-based text
//! format used to read and write sets of them:
//!
//! ```text
//! # comment
//! universe: a b c
//! dep: a b -> c
//! const: a
//! indep: a b _||_ c
//! dep: () -> a
//! ```
//!
//! The `universe:` line is optional; without it the universe is every
//! attribute mentioned, in order of first appearance.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{AttrSubset, GroundSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Dep,
    Indep,
    Const,
}

/// `=(lhs,rhs)`, `lhs ⊥ rhs`, or `=(lhs)`. Constancy atoms keep `rhs = ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assertion {
    pub kind: AtomKind,
    pub lhs: AttrSubset,
    pub rhs: AttrSubset,
}

impl Assertion {
    pub fn dep(lhs: AttrSubset, rhs: AttrSubset) -> Self {
        Assertion {
            kind: AtomKind::Dep,
            lhs,
            rhs,
        }
    }

    pub fn indep(lhs: AttrSubset, rhs: AttrSubset) -> Self {
        Assertion {
            kind: AtomKind::Indep,
            lhs,
            rhs,
        }
    }

    pub fn constancy(x: AttrSubset) -> Self {
        Assertion {
            kind: AtomKind::Const,
            lhs: x,
            rhs: AttrSubset::EMPTY,
        }
    }

    /// Rewrites `=(x)` as `=(∅,x)`; other atoms are unchanged.
    pub fn normalized(self) -> Self {
        match self.kind {
            AtomKind::Const => Assertion::dep(AttrSubset::EMPTY, self.lhs),
            _ => self,
        }
    }

    pub fn attrs(&self) -> AttrSubset {
        self.lhs.union(self.rhs)
    }

    pub fn display<'a>(&'a self, ground: &'a GroundSet) -> DisplayAssertion<'a> {
        DisplayAssertion {
            atom: self,
            ground,
        }
    }

    pub fn parse(line: &str, universe: &GroundSet) -> Result<Self> {
        let raw = parse_line(line).map_err(|m| Error::parse(format!("`{}`", line.trim()), m))?;
        raw.resolve(universe)
            .map_err(|e| Error::parse(format!("`{}`", line.trim()), e.to_string()))
    }
}

pub struct DisplayAssertion<'a> {
    atom: &'a Assertion,
    ground: &'a GroundSet,
}

fn side(ground: &GroundSet, x: AttrSubset) -> String {
    if x.is_empty() {
        "()".into()
    } else {
        ground.member_names(x).join(" ")
    }
}

impl fmt::Display for DisplayAssertion<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.ground;
        let a = self.atom;
        match a.kind {
            AtomKind::Dep => write!(f, "dep: {} -> {}", side(g, a.lhs), side(g, a.rhs)),
            AtomKind::Indep => write!(f, "indep: {} _||_ {}", side(g, a.lhs), side(g, a.rhs)),
            AtomKind::Const => write!(f, "const: {}", side(g, a.lhs)),
        }
    }
}

/// A parsed line before names are resolved against a universe.
struct RawAtom<'a> {
    kind: AtomKind,
    lhs: Vec<&'a str>,
    rhs: Vec<&'a str>,
}

impl RawAtom<'_> {
    fn names(&self) -> impl Iterator<Item = &str> {
        self.lhs.iter().chain(self.rhs.iter()).copied()
    }

    fn resolve(&self, universe: &GroundSet) -> Result<Assertion> {
        Ok(Assertion {
            kind: self.kind,
            lhs: universe.subset(&self.lhs)?,
            rhs: universe.subset(&self.rhs)?,
        })
    }
}

fn tokens(text: &str) -> std::result::Result<Vec<&str>, String> {
    let toks: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    match toks.as_slice() {
        ["()"] => Ok(Vec::new()),
        t if t.contains(&"()") => Err("`()` must stand alone for an empty side".into()),
        [] => Err("empty side; write `()`".into()),
        _ => Ok(toks),
    }
}

fn parse_line(line: &str) -> std::result::Result<RawAtom<'_>, String> {
    let (tag, body) = line
        .split_once(':')
        .ok_or_else(|| "expected `dep:`, `indep:` or `const:`".to_string())?;
    match tag.trim() {
        "dep" => {
            let (l, r) = body.split_once("->").ok_or("dependence needs `->`")?;
            Ok(RawAtom {
                kind: AtomKind::Dep,
                lhs: tokens(l)?,
                rhs: tokens(r)?,
            })
        }
        "indep" => {
            let (l, r) = body.split_once("_||_").ok_or("independence needs `_||_`")?;
            Ok(RawAtom {
                kind: AtomKind::Indep,
                lhs: tokens(l)?,
                rhs: tokens(r)?,
            })
        }
        "const" => Ok(RawAtom {
            kind: AtomKind::Const,
            lhs: tokens(body)?,
            rhs: Vec::new(),
        }),
        other => Err(format!("unknown assertion kind `{other}`")),
    }
}

/// A deduplicated set of assertions over a declared universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertionSet {
    universe: GroundSet,
    assertions: BTreeSet<Assertion>,
}

impl AssertionSet {
    pub fn new(universe: GroundSet, assertions: impl IntoIterator<Item = Assertion>) -> Result<Self> {
        let assertions: BTreeSet<Assertion> = assertions.into_iter().collect();
        for a in &assertions {
            universe.check(a.attrs())?;
        }
        Ok(AssertionSet {
            universe,
            assertions,
        })
    }

    pub fn empty(universe: GroundSet) -> Self {
        AssertionSet {
            universe,
            assertions: BTreeSet::new(),
        }
    }

    pub fn universe(&self) -> &GroundSet {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.assertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assertions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter()
    }

    pub fn contains(&self, a: &Assertion) -> bool {
        self.assertions.contains(a)
    }

    pub fn insert(&mut self, a: Assertion) -> Result<bool> {
        self.universe.check(a.attrs())?;
        Ok(self.assertions.insert(a))
    }

    pub fn has_kind(&self, kind: AtomKind) -> bool {
        self.assertions.iter().any(|a| a.kind == kind)
    }

    /// Parses the text format. `location` names the source in errors.
    pub fn parse(text: &str, location: &str) -> Result<Self> {
        Ok(Self::parse_inner(text, location, None)?.0)
    }

    /// Parses a set together with a goal atom. Without a `universe:` line
    /// the goal's attributes join the universe after those of the set.
    pub fn parse_with_goal(text: &str, location: &str, goal: &str) -> Result<(Self, Assertion)> {
        let (set, goal) = Self::parse_inner(text, location, Some(goal))?;
        Ok((set, goal.expect("goal requested")))
    }

    fn parse_inner(text: &str, location: &str, goal: Option<&str>) -> Result<(Self, Option<Assertion>)> {
        let goal_raw = goal
            .map(|g| parse_line(g.trim()).map_err(|m| Error::parse(format!("goal `{}`", g.trim()), m)))
            .transpose()?;
        let mut declared: Option<GroundSet> = None;
        let mut raws = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let loc = || format!("{location}:{}", no + 1);
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("universe:") {
                if declared.is_some() || !raws.is_empty() {
                    return Err(Error::parse(loc(), "`universe:` must come first and only once"));
                }
                let names: Vec<&str> = rest
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .collect();
                declared = Some(GroundSet::new(names).map_err(|e| Error::parse(loc(), e.to_string()))?);
                continue;
            }
            let raw = parse_line(line).map_err(|m| Error::parse(loc(), m))?;
            raws.push((loc(), raw));
        }
        let universe = match declared {
            Some(u) => u,
            None => {
                let mut names: Vec<&str> = Vec::new();
                for n in raws.iter().map(|(_, r)| r).chain(goal_raw.as_ref()).flat_map(RawAtom::names) {
                    if !names.contains(&n) {
                        names.push(n);
                    }
                }
                GroundSet::new(names)?
            }
        };
        let assertions = raws
            .iter()
            .map(|(loc, r)| r.resolve(&universe).map_err(|e| Error::parse(loc.clone(), e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let goal = match (goal, &goal_raw) {
            (Some(g), Some(raw)) => Some(
                raw.resolve(&universe)
                    .map_err(|e| Error::parse(format!("goal `{}`", g.trim()), e.to_string()))?,
            ),
            _ => None,
        };
        Ok((AssertionSet::new(universe, assertions)?, goal))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("universe: {}\n", self.universe.names().join(" "));
        for a in &self.assertions {
            out.push_str(&a.display(&self.universe).to_string());
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a AssertionSet {
    type Item = &'a Assertion;
    type IntoIter = std::collections::btree_set::Iter<'a, Assertion>;

    fn into_iter(self) -> Self::IntoIter {
        self.assertions.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_kinds() {
        let set = AssertionSet::parse(
            "# sample\nuniverse: a b c d\ndep: a b -> c\nconst: d\nindep: a _||_ b c\ndep: () -> a\n",
            "inline",
        )
        .unwrap();
        assert_eq!(set.len(), 4);
        let u = set.universe().clone();
        assert!(set.contains(&Assertion::dep(u.parse_subset("a,b").unwrap(), u.parse_subset("c").unwrap())));
        assert!(set.contains(&Assertion::constancy(u.parse_subset("d").unwrap())));
        assert!(set.contains(&Assertion::dep(AttrSubset::EMPTY, u.parse_subset("a").unwrap())));
        let again = AssertionSet::parse(&set.to_text(), "roundtrip").unwrap();
        assert_eq!(again, set);
    }

    #[test]
    fn universe_defaults_to_mentioned_attributes() {
        let set = AssertionSet::parse("dep: b -> a\nindep: c _||_ b", "x").unwrap();
        assert_eq!(set.universe().names(), ["b", "a", "c"]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = AssertionSet::parse("universe: a b\n\ndep: a => b", "sigma.txt").unwrap_err();
        assert!(err.to_string().contains("sigma.txt:3"), "{err}");
        let err = AssertionSet::parse("universe: a\ndep: a -> z", "s").unwrap_err();
        assert!(err.to_string().contains("s:2"), "{err}");
        assert!(AssertionSet::parse("dep: -> a", "s").is_err());
    }

    #[test]
    fn goal_attributes_extend_an_implicit_universe() {
        let (set, goal) = AssertionSet::parse_with_goal("dep: a -> b", "s", "dep: c -> a").unwrap();
        assert_eq!(set.universe().names(), ["a", "b", "c"]);
        assert_eq!(goal.lhs, AttrSubset::singleton(2));
        let err = AssertionSet::parse_with_goal("universe: a b\ndep: a -> b", "s", "dep: c -> a").unwrap_err();
        assert!(err.to_string().contains("goal"), "{err}");
    }

    #[test]
    fn display_uses_parens_for_empty_sides() {
        let g = GroundSet::letters(2);
        let a = Assertion::indep(AttrSubset::EMPTY, g.full());
        assert_eq!(a.display(&g).to_string(), "indep: () _||_ a b");
        assert_eq!(Assertion::parse("indep: () _||_ a b", &g).unwrap(), a);
    }

    #[test]
    fn constancy_normalizes_to_dependence_on_empty() {
        let x = AttrSubset::from_bits(0b10);
        assert_eq!(Assertion::constancy(x).normalized(), Assertion::dep(AttrSubset::EMPTY, x));
    }
}
