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

//! Exhaustive checking of the diversity-rank axioms, submodularity, the
//! dependence/independence interaction laws and the matroid conditions.
//!
//! Triples are scanned in canonical order `(x, y, z)` and the first
//! violation found becomes the witness. The outer loop over `x` runs in
//! parallel with `find_map_first`, so the witness is the same one a
//! sequential scan would report.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::assertion::Assertion;
use crate::error::Result;
use crate::models::RankModel;
use crate::subset::{AttrSubset, GroundSet};
use crate::table::RankTable;
use crate::value::{Comparison, RankValue};

/// Limits for the exhaustive checkers.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Refuse ground sets larger than this.
    pub cap: usize,
    /// Above this many attributes, triple axioms are sampled.
    pub triple_cap: usize,
    /// Check every triple regardless of `triple_cap`.
    pub exhaustive: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cap: 12,
            triple_cap: 8,
            exhaustive: false,
            samples: 1_000_000,
            seed: 0x5eed,
        }
    }
}

impl CheckOptions {
    fn sample_triples(&self, n: usize) -> bool {
        !self.exhaustive && n > self.triple_cap
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    R1,
    R2Left,
    R2Right,
    R3,
    R4,
    Subm,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::R1,
        Axiom::R2Left,
        Axiom::R2Right,
        Axiom::R3,
        Axiom::R4,
        Axiom::Subm,
    ];
    /// R1-R4, the axioms every diversity rank function satisfies.
    pub const DIVERSITY: [Axiom; 5] = [Axiom::R1, Axiom::R2Left, Axiom::R2Right, Axiom::R3, Axiom::R4];

    /// The subset variables the axiom quantifies over.
    pub fn vars(self) -> &'static [char] {
        match self {
            Axiom::R1 => &[],
            Axiom::R2Left | Axiom::R2Right => &['x', 'y'],
            _ => &['x', 'y', 'z'],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::R1 => "R1",
            Axiom::R2Left => "R2-left",
            Axiom::R2Right => "R2-right",
            Axiom::R3 => "R3",
            Axiom::R4 => "R4",
            Axiom::Subm => "SUBM",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::R1 => "r(x) = 0 for x = ()",
            Axiom::R2Left => "r(x) <= r(xy)",
            Axiom::R2Right => "r(xy) <= r(x)+r(y)",
            Axiom::R3 => "r(xy) = r(x) => r(xyz) = r(xz)",
            Axiom::R4 => "r(xyz) = r(x)+r(yz) => r(xy) = r(x)+r(y)",
            Axiom::Subm => "r(xyz)+r(z) <= r(xz)+r(yz)",
        }
    }
}

/// A violating tuple and the two sides of the failed comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub x: AttrSubset,
    pub y: AttrSubset,
    pub z: AttrSubset,
    /// Left side of the failed (in)equality, e.g. `r(xyz)+r(z)` for SUBM.
    pub lhs: RankValue,
    pub rhs: RankValue,
    /// How the two sides actually relate: `">"` or `"!="`.
    pub relation: &'static str,
    pub expression: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    /// No violation among this many random triples.
    Sampled(usize),
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }

    /// `PASS`, or `FAIL witness x=.. y=.. (lhs vs rhs)` naming the first
    /// `vars.len()` witness sets.
    pub fn render(&self, ground: &GroundSet, vars: &[char]) -> String {
        match self {
            Verdict::Pass => "PASS".into(),
            Verdict::Sampled(n) => format!("PASS (sampled {n} triples)"),
            Verdict::Fail(w) => {
                let mut s = "FAIL witness".to_string();
                for (v, set) in vars.iter().zip([w.x, w.y, w.z]) {
                    s.push_str(&format!(" {v}={}", ground.display(set)));
                }
                s.push_str(&format!(" ({} = {} {} {})", w.expression, w.lhs, w.relation, w.rhs));
                s
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub ground: GroundSet,
    pub comparison: Comparison,
    pub verdicts: Vec<(Axiom, Verdict)>,
}

impl AxiomReport {
    pub fn verdict(&self, axiom: Axiom) -> Option<&Verdict> {
        self.verdicts.iter().find(|(a, _)| *a == axiom).map(|(_, v)| v)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.passed())
    }

    /// True when R1-R4 hold, whatever SUBM says.
    pub fn is_diversity_rank(&self) -> bool {
        self.verdicts
            .iter()
            .filter(|(a, _)| *a != Axiom::Subm)
            .all(|(_, v)| v.passed())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (axiom, verdict) in &self.verdicts {
            writeln!(f, "{}: {}", axiom.name(), verdict.render(&self.ground, axiom.vars()))?;
        }
        Ok(())
    }
}

fn witness(
    x: AttrSubset,
    y: AttrSubset,
    z: AttrSubset,
    lhs: RankValue,
    rhs: RankValue,
    relation: &'static str,
    expression: &'static str,
) -> Witness {
    Witness {
        x,
        y,
        z,
        lhs,
        rhs,
        relation,
        expression,
    }
}

/// First `(x, y)` in canonical order for which `check` reports a violation.
fn scan_pairs<F>(subsets: &[AttrSubset], check: F) -> Option<Witness>
where
    F: Fn(AttrSubset, AttrSubset) -> Option<Witness> + Sync,
{
    subsets
        .par_iter()
        .find_map_first(|&x| subsets.iter().find_map(|&y| check(x, y)))
}

/// First `(x, y, z)` in canonical order whose pair passes `gate` and for
/// which `check` reports a violation.
fn scan_triples<G, F>(subsets: &[AttrSubset], gate: G, check: F) -> Option<Witness>
where
    G: Fn(AttrSubset, AttrSubset) -> bool + Sync,
    F: Fn(AttrSubset, AttrSubset, AttrSubset) -> Option<Witness> + Sync,
{
    subsets.par_iter().find_map_first(|&x| {
        subsets
            .iter()
            .filter(|&&y| gate(x, y))
            .find_map(|&y| subsets.iter().find_map(|&z| check(x, y, z)))
    })
}

fn sample_triples<G, F>(n: usize, opts: &CheckOptions, salt: u64, gate: G, check: F) -> Verdict
where
    G: Fn(AttrSubset, AttrSubset) -> bool,
    F: Fn(AttrSubset, AttrSubset, AttrSubset) -> Option<Witness>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt);
    let full = AttrSubset::full(n).bits();
    let mut draw = || AttrSubset::from_bits(rng.gen::<u64>() & full);
    for _ in 0..opts.samples {
        let (x, y, z) = (draw(), draw(), draw());
        if gate(x, y) {
            if let Some(w) = check(x, y, z) {
                return Verdict::Fail(w);
            }
        }
    }
    Verdict::Sampled(opts.samples)
}

fn triple_verdict<G, F>(
    subsets: &[AttrSubset],
    n: usize,
    opts: &CheckOptions,
    salt: u64,
    gate: G,
    check: F,
) -> Verdict
where
    G: Fn(AttrSubset, AttrSubset) -> bool + Sync,
    F: Fn(AttrSubset, AttrSubset, AttrSubset) -> Option<Witness> + Sync,
{
    if opts.sample_triples(n) {
        sample_triples(n, opts, salt, gate, check)
    } else {
        scan_triples(subsets, gate, check).map_or(Verdict::Pass, Verdict::Fail)
    }
}

/// Checks the requested axioms on an evaluated table.
pub fn check_table(ground: &GroundSet, t: &RankTable, opts: &CheckOptions, axioms: &[Axiom]) -> AxiomReport {
    let n = ground.len();
    let subsets = ground.subsets();
    let e = AttrSubset::EMPTY;
    let verdicts = axioms
        .iter()
        .map(|&axiom| {
            let verdict = match axiom {
                Axiom::R1 => {
                    if t.constant(e) {
                        Verdict::Pass
                    } else {
                        Verdict::Fail(witness(e, e, e, t.value(e).clone(), RankValue::zero(), "!=", "r(())"))
                    }
                }
                Axiom::R2Left => scan_pairs(&subsets, |x, y| {
                    let xy = x.union(y);
                    (!t.le(&[x], &[xy])).then(|| {
                        witness(x, y, e, t.value(x).clone(), t.value(xy).clone(), ">", "r(x) vs r(xy)")
                    })
                })
                .map_or(Verdict::Pass, Verdict::Fail),
                Axiom::R2Right => scan_pairs(&subsets, |x, y| {
                    let xy = x.union(y);
                    (!t.le(&[xy], &[x, y])).then(|| {
                        witness(x, y, e, t.value(xy).clone(), t.sum(&[x, y]), ">", "r(xy) vs r(x)+r(y)")
                    })
                })
                .map_or(Verdict::Pass, Verdict::Fail),
                Axiom::R3 => triple_verdict(
                    &subsets,
                    n,
                    opts,
                    3,
                    |x, y| t.dep(x, y),
                    |x, y, z| {
                        let (xyz, xz) = (x.union(y).union(z), x.union(z));
                        (!t.eq(&[xyz], &[xz])).then(|| {
                            witness(x, y, z, t.value(xyz).clone(), t.value(xz).clone(), "!=", "r(xyz) vs r(xz)")
                        })
                    },
                ),
                Axiom::R4 => triple_verdict(
                    &subsets,
                    n,
                    opts,
                    4,
                    |x, y| !t.indep(x, y),
                    |x, y, z| {
                        let (xyz, yz) = (x.union(y).union(z), y.union(z));
                        t.eq(&[xyz], &[x, yz]).then(|| {
                            witness(x, y, z, t.value(x.union(y)).clone(), t.sum(&[x, y]), "!=", "r(xy) vs r(x)+r(y)")
                        })
                    },
                ),
                Axiom::Subm => triple_verdict(
                    &subsets,
                    n,
                    opts,
                    5,
                    |_, _| true,
                    |x, y, z| {
                        let xyz = x.union(y).union(z);
                        let (xz, yz) = (x.union(z), y.union(z));
                        (!t.le(&[xyz, z], &[xz, yz])).then(|| {
                            witness(x, y, z, t.sum(&[xyz, z]), t.sum(&[xz, yz]), ">", "r(xyz)+r(z) vs r(xz)+r(yz)")
                        })
                    },
                ),
            };
            (axiom, verdict)
        })
        .collect();
    AxiomReport {
        ground: ground.clone(),
        comparison: t.comparison(),
        verdicts,
    }
}

/// R1, both halves of R2, R3, R4 and SUBM on every applicable tuple.
pub fn check_axioms(model: &RankModel, opts: &CheckOptions) -> Result<AxiomReport> {
    let t = model.table(opts.cap)?;
    Ok(check_table(model.ground(), &t, opts, &Axiom::ALL))
}

#[derive(Clone, Debug)]
pub struct InteractionReport {
    pub ground: GroundSet,
    /// `x ⊥ x` iff `=(∅,x)`.
    pub constancy_equivalence: Verdict,
    /// `x ⊥ y` and `=(y,z)` imply `x ⊥ yz`.
    pub propagation: Verdict,
}

impl InteractionReport {
    pub fn all_pass(&self) -> bool {
        self.constancy_equivalence.passed() && self.propagation.passed()
    }
}

impl fmt::Display for InteractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Constancy Equivalence: {}",
            self.constancy_equivalence.render(&self.ground, &['x'])
        )?;
        writeln!(
            f,
            "Propagation: {}",
            self.propagation.render(&self.ground, &['x', 'y', 'z'])
        )
    }
}

pub fn check_interaction_table(ground: &GroundSet, t: &RankTable, opts: &CheckOptions) -> InteractionReport {
    let subsets = ground.subsets();
    let e = AttrSubset::EMPTY;
    let constancy_equivalence = subsets
        .iter()
        .find_map(|&x| {
            let self_indep = t.indep(x, x);
            (self_indep != t.dep(e, x)).then(|| {
                witness(x, e, e, t.sum(&[x, x]), t.value(x).clone(), if self_indep { "=" } else { "!=" }, "r(x)+r(x) vs r(x)")
            })
        })
        .map_or(Verdict::Pass, Verdict::Fail);
    let propagation = triple_verdict(
        &subsets,
        ground.len(),
        opts,
        6,
        |x, y| t.indep(x, y),
        |x, y, z| {
            let yz = y.union(z);
            (t.dep(y, z) && !t.indep(x, yz)).then(|| {
                witness(x, y, z, t.sum(&[x, yz]), t.value(x.union(yz)).clone(), "!=", "r(x)+r(yz) vs r(xyz)")
            })
        },
    );
    InteractionReport {
        ground: ground.clone(),
        constancy_equivalence,
        propagation,
    }
}

pub fn check_interaction(model: &RankModel, opts: &CheckOptions) -> Result<InteractionReport> {
    let t = model.table(opts.cap)?;
    Ok(check_interaction_table(model.ground(), &t, opts))
}

/// Every `=(x,y)` and then every `x ⊥ y` that holds, pairs in canonical order.
pub fn atoms_of_table(ground: &GroundSet, t: &RankTable) -> Vec<Assertion> {
    let subsets = ground.subsets();
    let pairs = || subsets.iter().flat_map(|&x| subsets.iter().map(move |&y| (x, y)));
    let deps = pairs().filter(|&(x, y)| t.dep(x, y)).map(|(x, y)| Assertion::dep(x, y));
    let indeps = pairs().filter(|&(x, y)| t.indep(x, y)).map(|(x, y)| Assertion::indep(x, y));
    deps.chain(indeps).collect()
}

pub fn atoms_of(model: &RankModel, cap: usize) -> Result<Vec<Assertion>> {
    let t = model.table(cap)?;
    Ok(atoms_of_table(model.ground(), &t))
}

/// Matroid conditions: integer values, M1 `r(x) <= |x|`, M2
/// `r(xy) + r(x∩y) <= r(x) + r(y)`, M3 unit increments.
#[derive(Clone, Debug)]
pub struct MatroidReport {
    pub integral: bool,
    pub m1: Verdict,
    pub m2: Verdict,
    pub m3: Verdict,
}

impl MatroidReport {
    pub fn all_pass(&self) -> bool {
        self.integral && self.m1.passed() && self.m2.passed() && self.m3.passed()
    }
}

pub fn check_matroid(model: &RankModel, cap: usize) -> Result<MatroidReport> {
    let t = model.table(cap)?;
    let integral = model.integer_valued(cap)?;
    let subsets = model.ground().subsets();
    let e = AttrSubset::EMPTY;
    let cmp = t.comparison();
    let m1 = subsets
        .iter()
        .find_map(|&x| {
            let size = RankValue::int(x.len() as i64);
            (!cmp.le_sums(&[t.value(x)], &[&size]))
                .then(|| witness(x, e, e, t.value(x).clone(), size, ">", "r(x) vs |x|"))
        })
        .map_or(Verdict::Pass, Verdict::Fail);
    let m2 = scan_pairs(&subsets, |x, y| {
        let (u, i) = (x.union(y), x.intersection(y));
        (!t.le(&[u, i], &[x, y])).then(|| witness(x, y, e, t.sum(&[u, i]), t.sum(&[x, y]), ">", "r(xy)+r(x&y) vs r(x)+r(y)"))
    })
    .map_or(Verdict::Pass, Verdict::Fail);
    let one = RankValue::int(1);
    let m3 = scan_pairs(&subsets, |x, y| {
        if y.len() != 1 {
            return None;
        }
        let xy = x.union(y);
        if !t.le(&[x], &[xy]) {
            return Some(witness(x, y, e, t.value(x).clone(), t.value(xy).clone(), ">", "r(x) vs r(xy)"));
        }
        (!cmp.le_sums(&[t.value(xy)], &[t.value(x), &one])).then(|| witness(x, y, e, t.value(xy).clone(), t.value(x).add(&one), ">", "r(xy) vs r(x)+1"))
    })
    .map_or(Verdict::Pass, Verdict::Fail);
    Ok(MatroidReport { integral, m1, m2, m3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ExplicitRankTable, Team};
    use crate::value::parse_rational;

    fn toy() -> RankModel {
        let g = GroundSet::letters(3);
        let entries = [("", "0"), ("a", "1.5"), ("b", "1.5"), ("c", "1"), ("a,b", "2.1"), ("a,c", "1.6"), ("b,c", "1.6"), ("a,b,c", "3")]
            .iter()
            .map(|(s, v)| (g.parse_subset(s).unwrap(), RankValue::Exact(parse_rational(v).unwrap())))
            .collect::<Vec<_>>();
        RankModel::explicit(ExplicitRankTable::build(g, entries).unwrap())
    }

    #[test]
    fn toy_table_fails_only_submodularity() {
        let report = check_axioms(&toy(), &CheckOptions::default()).unwrap();
        assert!(report.is_diversity_rank());
        let w = report.verdict(Axiom::Subm).unwrap().witness().expect("SUBM must fail");
        let g = &report.ground;
        assert_eq!(
            (g.format(w.x), g.format(w.y), g.format(w.z)),
            ("a".into(), "b".into(), "c".into())
        );
        assert_eq!(w.lhs, RankValue::int(4));
        assert_eq!(w.rhs, RankValue::Exact(parse_rational("3.2").unwrap()));
        let text = report.to_string();
        assert!(text.contains("SUBM: FAIL witness x=a y=b z=c"), "{text}");
    }

    #[test]
    fn relational_team_fails_submodularity_at_v2() {
        let g = GroundSet::new(["v1", "v2", "v3"]).unwrap();
        let team = Team::new(g.clone(), [["1", "1", "1"], ["1", "1", "2"], ["2", "1", "1"], ["1", "2", "1"], ["2", "1", "2"]]).unwrap();
        let report = check_axioms(&RankModel::relational(team), &CheckOptions::default()).unwrap();
        assert!(report.is_diversity_rank());
        let w = report.verdict(Axiom::Subm).unwrap().witness().unwrap();
        assert_eq!(g.format(w.z), "v2");
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (RankValue::LogCount(10), RankValue::LogCount(9)));
    }

    #[test]
    fn uniform_passes_everything() {
        let m = RankModel::uniform(GroundSet::letters(5));
        assert!(check_axioms(&m, &CheckOptions::default()).unwrap().all_pass());
        assert!(check_interaction(&m, &CheckOptions::default()).unwrap().all_pass());
        assert!(check_matroid(&m, 12).unwrap().all_pass());
    }

    #[test]
    fn cap_is_enforced() {
        let m = RankModel::uniform(GroundSet::letters(13));
        assert!(check_axioms(&m, &CheckOptions::default()).is_err());
        assert!(atoms_of(&m, 12).is_err());
    }

    #[test]
    fn sampling_above_triple_cap() {
        let m = RankModel::uniform(GroundSet::letters(9));
        let opts = CheckOptions { samples: 1000, ..CheckOptions::default() };
        let report = check_axioms(&m, &opts).unwrap();
        assert_eq!(report.verdict(Axiom::Subm), Some(&Verdict::Sampled(1000)));
        let opts = CheckOptions { exhaustive: true, ..CheckOptions::default() };
        let report = check_axioms(&RankModel::uniform(GroundSet::letters(4)), &opts).unwrap();
        assert_eq!(report.verdict(Axiom::Subm), Some(&Verdict::Pass));
    }

    #[test]
    fn constant_atoms() {
        let g = GroundSet::letters(2);
        let zero = RankModel::constant(g.clone(), num_rational::BigRational::from_integer(0.into())).unwrap();
        assert_eq!(atoms_of(&zero, 12).unwrap().len(), 2 * 16);
        let two = RankModel::constant(g.clone(), num_rational::BigRational::from_integer(2.into())).unwrap();
        for a in atoms_of(&two, 12).unwrap() {
            if a.kind == crate::assertion::AtomKind::Indep {
                assert!(a.lhs.is_empty() || a.rhs.is_empty());
            }
        }
    }

    #[test]
    fn empty_ground_set_degenerates() {
        let m = RankModel::uniform(GroundSet::letters(0));
        assert!(check_axioms(&m, &CheckOptions::default()).unwrap().all_pass());
        assert_eq!(atoms_of(&m, 12).unwrap().len(), 2);
    }
}
