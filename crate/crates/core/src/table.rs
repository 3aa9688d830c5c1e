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

//! A model evaluated on every subset of its ground set.
//!
//! The exhaustive checkers compare millions of rank sums. Converting the
//! values once into a homogeneous column (scaled integers, counts, or
//! floats) keeps those comparisons allocation-free while preserving the
//! exact semantics of [`Comparison::cmp_sums`].

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::subset::AttrSubset;
use crate::value::{float_cmp, Comparison, RankValue, DEFAULT_EPSILON};

#[derive(Clone, Debug)]
enum Column {
    /// Exact rationals scaled by a common denominator.
    Int(Vec<i128>),
    Big(Vec<BigRational>),
    Count(Vec<u64>),
    Real(Vec<f64>, f64),
}

#[derive(Clone, Debug)]
pub struct RankTable {
    values: Vec<RankValue>,
    column: Column,
    comparison: Comparison,
}

impl RankTable {
    /// `values[i]` is the rank of the subset with bits `i`.
    pub fn new(values: Vec<RankValue>, comparison: Comparison) -> Self {
        let column = match comparison {
            Comparison::Epsilon(eps) => Column::Real(values.iter().map(RankValue::to_f64).collect(), eps),
            Comparison::Exact => exact_column(&values)
                .unwrap_or_else(|| Column::Real(values.iter().map(RankValue::to_f64).collect(), DEFAULT_EPSILON)),
        };
        RankTable {
            values,
            column,
            comparison,
        }
    }

    pub fn comparison(&self) -> Comparison {
        self.comparison
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, x: AttrSubset) -> &RankValue {
        &self.values[x.index()]
    }

    pub fn values(&self) -> &[RankValue] {
        &self.values
    }

    pub fn sum(&self, xs: &[AttrSubset]) -> RankValue {
        RankValue::sum(xs.iter().map(|x| self.value(*x)))
    }

    pub fn cmp(&self, lhs: &[AttrSubset], rhs: &[AttrSubset]) -> Ordering {
        match &self.column {
            Column::Int(v) => {
                let s = |side: &[AttrSubset]| side.iter().map(|x| v[x.index()]).sum::<i128>();
                s(lhs).cmp(&s(rhs))
            }
            Column::Big(v) => {
                let s = |side: &[AttrSubset]| {
                    side.iter()
                        .fold(BigRational::zero(), |acc, x| acc + &v[x.index()])
                };
                s(lhs).cmp(&s(rhs))
            }
            Column::Count(v) => {
                let p = |side: &[AttrSubset]| {
                    side.iter()
                        .try_fold(1u128, |acc, x| acc.checked_mul(v[x.index()] as u128))
                };
                match (p(lhs), p(rhs)) {
                    (Some(a), Some(b)) => a.cmp(&b),
                    _ => {
                        let big = |side: &[AttrSubset]| {
                            side.iter()
                                .fold(BigUint::one(), |acc, x| acc * v[x.index()])
                        };
                        big(lhs).cmp(&big(rhs))
                    }
                }
            }
            Column::Real(v, eps) => {
                let s = |side: &[AttrSubset]| side.iter().map(|x| v[x.index()]).sum::<f64>();
                float_cmp(s(lhs), s(rhs), *eps)
            }
        }
    }

    pub fn eq(&self, lhs: &[AttrSubset], rhs: &[AttrSubset]) -> bool {
        self.cmp(lhs, rhs) == Ordering::Equal
    }

    pub fn le(&self, lhs: &[AttrSubset], rhs: &[AttrSubset]) -> bool {
        self.cmp(lhs, rhs) != Ordering::Greater
    }

    /// `=(x,y)`: `r(xy) = r(x)`.
    pub fn dep(&self, x: AttrSubset, y: AttrSubset) -> bool {
        self.eq(&[x.union(y)], &[x])
    }

    /// `x ⊥ y`: `r(x) + r(y) = r(xy)`.
    pub fn indep(&self, x: AttrSubset, y: AttrSubset) -> bool {
        self.eq(&[x, y], &[x.union(y)])
    }

    pub fn constant(&self, x: AttrSubset) -> bool {
        self.eq(&[x], &[])
    }
}

fn exact_column(values: &[RankValue]) -> Option<Column> {
    let zero_like = |v: &RankValue| match v {
        RankValue::Exact(q) => q.is_zero(),
        RankValue::LogCount(c) => *c == 1,
        RankValue::Approx(_) => false,
    };
    if values
        .iter()
        .all(|v| matches!(v, RankValue::LogCount(_)) || zero_like(v))
    {
        return Some(Column::Count(
            values.iter().map(|v| v.as_count().unwrap_or(1)).collect(),
        ));
    }
    if !values.iter().all(|v| matches!(v, RankValue::Exact(_))) {
        return None;
    }
    let rationals: Vec<&BigRational> = values.iter().filter_map(RankValue::as_exact).collect();
    let lcm = rationals
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let limit = BigInt::one() << 100;
    let scaled: Option<Vec<i128>> = rationals
        .iter()
        .map(|q| {
            let n = q.numer() * (&lcm / q.denom());
            if n.abs() < limit {
                n.to_i128()
            } else {
                None
            }
        })
        .collect();
    Some(match scaled {
        Some(ints) => Column::Int(ints),
        None => Column::Big(rationals.into_iter().cloned().collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::parse_rational;

    fn s(bits: u64) -> AttrSubset {
        AttrSubset::from_bits(bits)
    }

    #[test]
    fn scaled_rationals_compare_exactly() {
        let vals = ["0", "0.1", "0.2", "0.3"]
            .iter()
            .map(|t| RankValue::Exact(parse_rational(t).unwrap()))
            .collect();
        let t = RankTable::new(vals, Comparison::Exact);
        assert!(matches!(t.column, Column::Int(_)));
        assert!(t.eq(&[s(1), s(2)], &[s(3)]));
    }

    #[test]
    fn huge_values_use_bignums() {
        let tiny = BigRational::new(BigInt::one() << 200, BigInt::from(7));
        let vals = vec![RankValue::zero(), RankValue::Exact(tiny.clone()), RankValue::Exact(tiny.clone() * BigInt::from(2)), RankValue::Exact(tiny * BigInt::from(3))];
        let t = RankTable::new(vals, Comparison::Exact);
        assert!(matches!(t.column, Column::Big(_)));
        assert!(t.eq(&[s(1), s(2)], &[s(3)]));
        assert!(t.le(&[s(2)], &[s(3)]));
    }

    #[test]
    fn counts_multiply() {
        let vals = vec![RankValue::LogCount(1), RankValue::LogCount(2), RankValue::LogCount(3), RankValue::LogCount(6)];
        let t = RankTable::new(vals, Comparison::Exact);
        assert!(t.indep(s(1), s(2)));
        assert!(!t.dep(s(1), s(2)));
        assert!(t.constant(s(0)));
    }
}
