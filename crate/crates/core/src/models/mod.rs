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

//! Concrete diversity rank functions.

mod coverage;
mod entropy;
mod explicit;
mod linear;
mod team;

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

pub use coverage::CoverageMap;
pub use entropy::Distribution;
pub use explicit::ExplicitRankTable;
pub use linear::{matrix_rank, VectorFamily};
pub use team::Team;

use crate::error::{Error, Result};
use crate::subset::{AttrSubset, GroundSet};
use crate::table::RankTable;
use crate::value::{Comparison, RankValue, DEFAULT_EPSILON};

#[derive(Clone, Debug)]
pub enum ModelKind {
    /// `c` on every nonempty set.
    Constant(BigRational),
    /// 1 on sets containing the given attribute, 0 elsewhere.
    Singular(usize),
    /// Singleton ranks are 1 exactly on `ones`; a set's rank is the max.
    TwoValued(AttrSubset),
    Uniform,
    Coverage(CoverageMap),
    Entropy(Distribution),
    Relational(Team),
    Linear(VectorFamily),
    Explicit(ExplicitRankTable),
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Constant(_) => "constant",
            ModelKind::Singular(_) => "singular",
            ModelKind::TwoValued(_) => "two-valued",
            ModelKind::Uniform => "uniform",
            ModelKind::Coverage(_) => "coverage",
            ModelKind::Entropy(_) => "entropy",
            ModelKind::Relational(_) => "relational",
            ModelKind::Linear(_) => "linear",
            ModelKind::Explicit(_) => "explicit",
        }
    }
}

/// A rank function over a ground set, together with the comparison mode
/// used to decide dependence and independence atoms.
#[derive(Clone, Debug)]
pub struct RankModel {
    ground: GroundSet,
    kind: ModelKind,
    comparison: Comparison,
}

impl RankModel {
    pub fn constant(ground: GroundSet, c: BigRational) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::InvalidModel(format!("constant rank {c} is negative")));
        }
        Ok(Self::exact(ground, ModelKind::Constant(c)))
    }

    pub fn singular(ground: GroundSet, a0: &str) -> Result<Self> {
        let i = ground.index_of(a0)?;
        Ok(Self::exact(ground, ModelKind::Singular(i)))
    }

    pub fn two_valued(ground: GroundSet, ones: AttrSubset) -> Result<Self> {
        ground.check(ones)?;
        Ok(Self::exact(ground, ModelKind::TwoValued(ones)))
    }

    pub fn uniform(ground: GroundSet) -> Self {
        Self::exact(ground, ModelKind::Uniform)
    }

    pub fn coverage(map: CoverageMap) -> Self {
        Self::exact(map.labels().clone(), ModelKind::Coverage(map))
    }

    pub fn entropy(dist: Distribution) -> Self {
        RankModel {
            ground: dist.variables().clone(),
            kind: ModelKind::Entropy(dist),
            comparison: Comparison::Epsilon(DEFAULT_EPSILON),
        }
    }

    pub fn relational(team: Team) -> Self {
        Self::exact(team.variables().clone(), ModelKind::Relational(team))
    }

    pub fn linear(family: VectorFamily) -> Self {
        Self::exact(family.labels().clone(), ModelKind::Linear(family))
    }

    pub fn explicit(table: ExplicitRankTable) -> Self {
        RankModel {
            ground: table.ground().clone(),
            comparison: table.comparison(),
            kind: ModelKind::Explicit(table),
        }
    }

    fn exact(ground: GroundSet, kind: ModelKind) -> Self {
        RankModel {
            ground,
            kind,
            comparison: Comparison::Exact,
        }
    }

    /// Overrides the tolerance of a model compared in epsilon mode. Exact
    /// models ignore it.
    pub fn with_tolerance(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Usage(format!("tolerance must be positive, got {eps}")));
        }
        if let Comparison::Epsilon(_) = self.comparison {
            self.comparison = Comparison::Epsilon(eps);
        }
        Ok(self)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn comparison(&self) -> Comparison {
        self.comparison
    }

    pub fn rank(&self, x: AttrSubset) -> Result<RankValue> {
        self.ground.check(x)?;
        Ok(self.rank_unchecked(x))
    }

    fn rank_unchecked(&self, x: AttrSubset) -> RankValue {
        match &self.kind {
            ModelKind::Constant(c) => {
                if x.is_empty() {
                    RankValue::zero()
                } else {
                    RankValue::Exact(c.clone())
                }
            }
            ModelKind::Singular(a0) => RankValue::int(x.contains(*a0) as i64),
            ModelKind::TwoValued(ones) => RankValue::int(!x.intersection(*ones).is_empty() as i64),
            ModelKind::Uniform => RankValue::int(x.len() as i64),
            ModelKind::Coverage(c) => c.rank(x),
            ModelKind::Entropy(d) => d.rank(x),
            ModelKind::Relational(t) => t.rank(x),
            ModelKind::Linear(v) => v.rank(x),
            ModelKind::Explicit(t) => t.get(x).clone(),
        }
    }

    fn values(&self, xs: &[AttrSubset]) -> Result<Vec<RankValue>> {
        xs.iter().map(|&x| self.rank(x)).collect()
    }

    /// `=(x,y)`: `r(xy) = r(x)`.
    pub fn dep_holds(&self, x: AttrSubset, y: AttrSubset) -> Result<bool> {
        let v = self.values(&[x.union(y), x])?;
        Ok(self.comparison.eq_sums(&[&v[0]], &[&v[1]]))
    }

    /// `=(x)`: `r(x) = 0`.
    pub fn constancy_holds(&self, x: AttrSubset) -> Result<bool> {
        let v = self.rank(x)?;
        Ok(self.comparison.eq_sums(&[&v], &[]))
    }

    /// `x ⊥ y`: `r(x) + r(y) = r(xy)`.
    pub fn indep_holds(&self, x: AttrSubset, y: AttrSubset) -> Result<bool> {
        let v = self.values(&[x, y, x.union(y)])?;
        Ok(self.comparison.eq_sums(&[&v[0], &v[1]], &[&v[2]]))
    }

    /// Evaluates the model on every subset of its ground set.
    pub fn table(&self, cap: usize) -> Result<RankTable> {
        self.ground.ensure_at_most(cap)?;
        if let ModelKind::Explicit(t) = &self.kind {
            if t.comparison() == self.comparison {
                return Ok(t.table().clone());
            }
        }
        let n = 1u64 << self.ground.len();
        let values = (0..n)
            .map(|bits| self.rank_unchecked(AttrSubset::from_bits(bits)))
            .collect();
        Ok(RankTable::new(values, self.comparison))
    }

    /// Whether every value is an exact integer (the first matroid condition).
    pub fn integer_valued(&self, cap: usize) -> Result<bool> {
        let t = self.table(cap)?;
        Ok(t.values().iter().all(|v| match v {
            RankValue::Exact(q) => q.is_integer(),
            RankValue::LogCount(c) => c.is_power_of_two(),
            RankValue::Approx(_) => false,
        }))
    }
}

impl fmt::Display for RankModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} model over {{{}}} ({})",
            self.kind.name(),
            self.ground.names().join(","),
            self.comparison
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: &GroundSet, t: &str) -> AttrSubset {
        g.parse_subset(t).unwrap()
    }

    #[test]
    fn simple_models() {
        let g = GroundSet::letters(3);
        let singular = RankModel::singular(g.clone(), "a").unwrap();
        assert_eq!(singular.rank(s(&g, "b,c")).unwrap(), RankValue::int(0));
        assert_eq!(singular.rank(s(&g, "a,c")).unwrap(), RankValue::int(1));
        assert_eq!(RankModel::uniform(g.clone()).rank(s(&g, "a,b,c")).unwrap(), RankValue::int(3));
        let two = RankModel::two_valued(g.clone(), s(&g, "b")).unwrap();
        assert_eq!(two.rank(s(&g, "a,c")).unwrap(), RankValue::int(0));
        assert_eq!(two.rank(s(&g, "a,b")).unwrap(), RankValue::int(1));
        let c = RankModel::constant(g.clone(), BigRational::new(3.into(), 2.into())).unwrap();
        assert_eq!(c.rank(AttrSubset::EMPTY).unwrap(), RankValue::zero());
        assert_eq!(c.rank(s(&g, "a")).unwrap().to_string(), "1.5");
    }

    #[test]
    fn empty_set_has_rank_zero_everywhere() {
        let g = GroundSet::letters(2);
        let models = [
            RankModel::constant(g.clone(), BigRational::from_integer(5.into())).unwrap(),
            RankModel::singular(g.clone(), "b").unwrap(),
            RankModel::two_valued(g.clone(), g.full()).unwrap(),
            RankModel::uniform(g.clone()),
            RankModel::relational(Team::binary(g.clone(), [0, 1, 2]).unwrap()),
        ];
        for m in &models {
            assert!(m.constancy_holds(AttrSubset::EMPTY).unwrap(), "{m}");
        }
    }

    #[test]
    fn singular_dependence_is_not_symmetric() {
        let g = GroundSet::letters(2);
        let m = RankModel::singular(g.clone(), "a").unwrap();
        let a0 = s(&g, "a");
        assert!(!m.dep_holds(AttrSubset::EMPTY, a0).unwrap());
        assert!(m.dep_holds(a0, AttrSubset::EMPTY).unwrap());
        assert!(!m.constancy_holds(a0).unwrap());
    }

    #[test]
    fn uniform_overlap_is_neither_dependent_nor_independent() {
        let g = GroundSet::letters(3);
        let m = RankModel::uniform(g.clone());
        let (ab, bc) = (s(&g, "a,b"), s(&g, "b,c"));
        assert!(!m.indep_holds(ab, bc).unwrap());
        assert!(!m.dep_holds(ab, bc).unwrap());
        assert!(!m.dep_holds(bc, ab).unwrap());
    }

    #[test]
    fn zero_two_valued_is_constant() {
        let g = GroundSet::letters(3);
        let m = RankModel::two_valued(g.clone(), AttrSubset::EMPTY).unwrap();
        for x in g.subsets() {
            assert!(m.constancy_holds(x).unwrap());
        }
    }

    #[test]
    fn out_of_ground_subsets_are_domain_errors() {
        let g = GroundSet::letters(2);
        let m = RankModel::uniform(g);
        assert!(matches!(
            m.rank(AttrSubset::from_bits(0b100)),
            Err(Error::OutsideGround(2))
        ));
    }

    #[test]
    fn tolerance_applies_to_epsilon_models_only() {
        let g = GroundSet::letters(1);
        let m = RankModel::uniform(g).with_tolerance(1e-3).unwrap();
        assert_eq!(m.comparison(), Comparison::Exact);
        assert!(RankModel::uniform(GroundSet::letters(1)).with_tolerance(-1.0).is_err());
    }

    #[test]
    fn negative_constant_rejected() {
        assert!(RankModel::constant(GroundSet::letters(1), BigRational::from_integer((-1).into())).is_err());
    }
}
