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

//! Ground sets and their finite subsets.
//!
//! A [`GroundSet`] fixes an ordered list of attribute names. Subsets are
//! bitmasks over that list: bit `i` stands for the `i`-th attribute. The
//! canonical order on subsets is shortlex: by cardinality first, then
//! lexicographically on the sorted member positions. Every enumeration in
//! this crate (witness search, atom listing, equivalence classes) walks
//! subsets in that order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a bitmask can address.
pub const MAX_ATTRS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AttrSubset(u64);

impl AttrSubset {
    pub const EMPTY: AttrSubset = AttrSubset(0);

    pub const fn from_bits(bits: u64) -> Self {
        AttrSubset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        AttrSubset(1 << index)
    }

    /// All attributes of a ground set of size `n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            AttrSubset(u64::MAX)
        } else {
            AttrSubset((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    pub fn union(self, other: Self) -> Self {
        AttrSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        AttrSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        AttrSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, index: usize) -> Self {
        AttrSubset(self.0 | (1 << index))
    }

    pub fn without(self, index: usize) -> Self {
        AttrSubset(self.0 & !(1 << index))
    }

    /// Member positions in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including `∅` and `self`, in no particular order.
    pub fn submasks(self) -> impl Iterator<Item = AttrSubset> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(AttrSubset(cur))
        })
    }

    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }
}

impl Ord for AttrSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // The smallest differing member belongs to `self`.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for AttrSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AttrSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of an `n`-element ground set in canonical (shortlex) order.
pub fn canonical_subsets(n: usize) -> Vec<AttrSubset> {
    assert!(n < 32, "refusing to enumerate 2^{n} subsets");
    let mut all: Vec<AttrSubset> = (0..1u64 << n).map(AttrSubset).collect();
    all.sort_unstable();
    all
}

/// An ordered, duplicate-free list of attribute names.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroundSet {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_ATTRS {
            return Err(Error::TooLarge {
                size: names.len(),
                cap: MAX_ATTRS,
            });
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains([',', ' ', '\t']) {
                return Err(Error::InvalidModel(format!(
                    "attribute name `{name}` must be nonempty without commas or whitespace"
                )));
            }
            if lookup.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateAttribute(name.clone()));
            }
        }
        Ok(GroundSet { names, lookup })
    }

    /// `a`, `b`, `c`, ... for quick construction in tests and examples.
    pub fn letters(n: usize) -> Self {
        assert!(n <= 26);
        GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn full(&self) -> AttrSubset {
        AttrSubset::full(self.len())
    }

    pub fn subset<I, S>(&self, names: I) -> Result<AttrSubset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names.into_iter().try_fold(AttrSubset::EMPTY, |acc, n| {
            Ok(acc.with(self.index_of(n.as_ref())?))
        })
    }

    /// Parses the comma-separated subset notation (`"a,b"`, `""` or `"()"` for `∅`).
    pub fn parse_subset(&self, text: &str) -> Result<AttrSubset> {
        let text = text.trim();
        if text.is_empty() || text == "()" || text == "∅" {
            return Ok(AttrSubset::EMPTY);
        }
        self.subset(text.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn check(&self, x: AttrSubset) -> Result<()> {
        if x.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::OutsideGround(self.len()))
        }
    }

    pub fn member_names(&self, x: AttrSubset) -> Vec<&str> {
        x.iter().map(|i| self.names[i].as_str()).collect()
    }

    /// Canonical subset string: member names joined by `,`, empty for `∅`.
    pub fn format(&self, x: AttrSubset) -> String {
        self.member_names(x).join(",")
    }

    /// Like [`format`](Self::format) but renders `∅` as `()`.
    pub fn display(&self, x: AttrSubset) -> String {
        if x.is_empty() {
            "()".to_string()
        } else {
            self.format(x)
        }
    }

    pub fn subsets(&self) -> Vec<AttrSubset> {
        canonical_subsets(self.len())
    }

    pub(crate) fn ensure_at_most(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(Error::TooLarge {
                size: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}
