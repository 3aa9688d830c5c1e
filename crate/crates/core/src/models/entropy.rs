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

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::subset::{AttrSubset, GroundSet};
use crate::value::RankValue;

/// A finite joint distribution with exact rational probabilities.
///
/// Variables may use different outcome alphabets; values are opaque tokens.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    variables: GroundSet,
    outcomes: Vec<(Vec<String>, BigRational)>,
}

impl Distribution {
    pub fn new(variables: GroundSet, outcomes: Vec<(Vec<String>, BigRational)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut total = BigRational::zero();
        for (assignment, p) in &outcomes {
            if assignment.len() != variables.len() {
                return Err(Error::InvalidModel(format!(
                    "outcome {assignment:?} is not total on {} variables",
                    variables.len()
                )));
            }
            if !p.is_positive() {
                return Err(Error::InvalidModel(format!(
                    "outcome {assignment:?} has non-positive probability {p}"
                )));
            }
            if !seen.insert(assignment.clone()) {
                return Err(Error::InvalidModel(format!(
                    "outcome {assignment:?} listed twice"
                )));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::InvalidModel(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Distribution {
            variables,
            outcomes,
        })
    }

    pub fn variables(&self) -> &GroundSet {
        &self.variables
    }

    pub fn outcomes(&self) -> &[(Vec<String>, BigRational)] {
        &self.outcomes
    }

    fn project(assignment: &[String], x: AttrSubset) -> Vec<&str> {
        x.iter().map(|i| assignment[i].as_str()).collect()
    }

    /// Marginal distribution of the variables in `x`.
    pub fn marginal(&self, x: AttrSubset) -> BTreeMap<Vec<&str>, BigRational> {
        let mut out: BTreeMap<Vec<&str>, BigRational> = BTreeMap::new();
        for (a, p) in &self.outcomes {
            *out.entry(Self::project(a, x)).or_insert_with(BigRational::zero) += p;
        }
        out
    }

    /// Joint Shannon entropy of `x` in bits.
    pub fn entropy(&self, x: AttrSubset) -> f64 {
        let h: f64 = self
            .marginal(x)
            .values()
            .map(|p| {
                let p = p.to_f64().unwrap_or(0.0);
                if p > 0.0 {
                    -p * p.log2()
                } else {
                    0.0
                }
            })
            .sum();
        // -0.0 and rounding noise below zero are both plain zero.
        h.max(0.0)
    }

    pub fn rank(&self, x: AttrSubset) -> RankValue {
        RankValue::Approx(self.entropy(x))
    }

    /// Exact check of `P(x = m, y = m') = P(x = m) P(y = m')` over every
    /// pair of values in the supports of `x` and `y`.
    pub fn independent_exact(&self, x: AttrSubset, y: AttrSubset) -> bool {
        let px = self.marginal(x);
        let py = self.marginal(y);
        let mut joint: BTreeMap<(Vec<&str>, Vec<&str>), BigRational> = BTreeMap::new();
        for (a, p) in &self.outcomes {
            *joint
                .entry((Self::project(a, x), Self::project(a, y)))
                .or_insert_with(BigRational::zero) += p;
        }
        let zero = BigRational::zero();
        px.iter().all(|(mx, p)| {
            py.iter().all(|(my, q)| {
                let pq = joint.get(&(mx.clone(), my.clone())).unwrap_or(&zero);
                *pq == p * q
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    fn quarter() -> BigRational {
        BigRational::new(1.into(), 4.into())
    }

    fn fair_bits() -> Distribution {
        let g = GroundSet::letters(2);
        let outcomes = ["00", "01", "10", "11"]
            .iter()
            .map(|s| (s.chars().map(|c| c.to_string()).collect(), quarter()))
            .collect();
        Distribution::new(g, outcomes).unwrap()
    }

    fn copied_bit() -> Distribution {
        let g = GroundSet::letters(2);
        Distribution::new(
            g,
            vec![
                (vec!["0".into(), "0".into()], half()),
                (vec!["1".into(), "1".into()], half()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn entropy_of_two_fair_bits() {
        let d = fair_bits();
        assert_eq!(d.entropy(AttrSubset::from_bits(0b11)), 2.0);
        assert_eq!(d.entropy(AttrSubset::EMPTY), 0.0);
    }

    #[test]
    fn entropy_of_copied_bit() {
        let d = copied_bit();
        // -2 * (1/2) log2(1/2) = 1
        let oracle = -2.0 * 0.5 * 0.5f64.log2();
        assert_eq!(d.entropy(AttrSubset::from_bits(0b11)), oracle);
        assert_eq!(d.entropy(AttrSubset::from_bits(0b01)), 1.0);
    }

    #[test]
    fn single_outcome_has_zero_entropy() {
        let g = GroundSet::letters(3);
        let d = Distribution::new(g, vec![(vec!["x".into(), "y".into(), "z".into()], BigRational::one())]).unwrap();
        for bits in 0..8 {
            assert_eq!(d.entropy(AttrSubset::from_bits(bits)), 0.0);
        }
    }

    #[test]
    fn exact_factorization() {
        let a = AttrSubset::from_bits(1);
        let b = AttrSubset::from_bits(2);
        assert!(fair_bits().independent_exact(a, b));
        // P(a=0, b=1) = 0 but P(a=0) P(b=1) = 1/4.
        assert!(!copied_bit().independent_exact(a, b));
        assert!(copied_bit().independent_exact(a, AttrSubset::EMPTY));
    }

    #[test]
    fn rejects_bad_distributions() {
        let g = GroundSet::letters(1);
        assert!(Distribution::new(g.clone(), vec![(vec!["0".into()], half())]).is_err());
        assert!(Distribution::new(
            g.clone(),
            vec![(vec!["0".into()], half()), (vec!["0".into()], half())]
        )
        .is_err());
        assert!(Distribution::new(
            g,
            vec![(vec!["0".into()], BigRational::from_integer(2.into())), (vec!["1".into()], -BigRational::one())]
        )
        .is_err());
    }
}
