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

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use divrank_core::formats;
use divrank_core::value::parse_rational;
use divrank_core::{CheckOptions, GroundSet, RankModel};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Constant,
    Singular,
    TwoValued,
    Uniform,
    Coverage,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Team CSV: header of variable names, one row per assignment
    #[arg(long, value_name = "CSV")]
    pub team: Option<PathBuf>,
    /// Distribution JSON with exact rational probabilities
    #[arg(long, value_name = "JSON")]
    pub dist: Option<PathBuf>,
    /// Vector family JSON
    #[arg(long, value_name = "JSON")]
    pub vectors: Option<PathBuf>,
    /// Explicit rank table JSON
    #[arg(long, value_name = "JSON")]
    pub explicit: Option<PathBuf>,
    /// A simple model described by the flags below
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    #[command(flatten)]
    pub source: Source,
    /// Ground set for --kind, e.g. a,b,c
    #[arg(long, value_name = "NAMES")]
    pub attrs: Option<String>,
    /// Rank of every nonempty set for --kind constant
    #[arg(long)]
    pub value: Option<String>,
    /// Distinguished attribute for --kind singular
    #[arg(long)]
    pub a0: Option<String>,
    /// Attributes of singleton rank 1 for --kind two-valued
    #[arg(long, value_name = "NAMES")]
    pub ones: Option<String>,
    /// Coverage JSON for --kind coverage
    #[arg(long, value_name = "JSON")]
    pub coverage: Option<PathBuf>,
    /// Absolute tolerance for models compared approximately
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Refuse ground sets with more attributes than this
    #[arg(long, default_value_t = 12)]
    pub cap: usize,
    /// Check every triple even above 8 attributes
    #[arg(long)]
    pub exhaustive: bool,
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn names(list: &str) -> Vec<&str> {
    list.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect()
}

impl ModelArgs {
    pub fn options(&self) -> CheckOptions {
        CheckOptions {
            cap: self.cap,
            exhaustive: self.exhaustive,
            ..CheckOptions::default()
        }
    }

    fn ground(&self, kind: &str) -> Result<GroundSet> {
        let Some(attrs) = &self.attrs else {
            bail!("--kind {kind} needs --attrs");
        };
        Ok(GroundSet::new(names(attrs))?)
    }

    pub fn load(&self) -> Result<RankModel> {
        if let Some(eps) = self.tolerance {
            if !(eps > 0.0 && eps.is_finite()) {
                bail!("--tolerance must be positive, got {eps}");
            }
        }
        let s = &self.source;
        let at = |p: &PathBuf| p.display().to_string();
        let model = if let Some(p) = &s.team {
            let file = fs::File::open(p).with_context(|| format!("cannot read {}", p.display()))?;
            RankModel::relational(formats::read_team_csv(file, &at(p))?)
        } else if let Some(p) = &s.dist {
            RankModel::entropy(formats::parse_distribution_json(&read(p)?, &at(p))?)
        } else if let Some(p) = &s.vectors {
            RankModel::linear(formats::parse_vectors_json(&read(p)?, &at(p))?)
        } else if let Some(p) = &s.explicit {
            RankModel::explicit(formats::parse_explicit_json(&read(p)?, &at(p), &self.options(), self.tolerance)?)
        } else {
            match s.kind.expect("clap requires one source") {
                Kind::Constant => {
                    let Some(v) = &self.value else {
                        bail!("--kind constant needs --value");
                    };
                    RankModel::constant(self.ground("constant")?, parse_rational(v)?)?
                }
                Kind::Singular => {
                    let Some(a0) = &self.a0 else {
                        bail!("--kind singular needs --a0");
                    };
                    RankModel::singular(self.ground("singular")?, a0)?
                }
                Kind::TwoValued => {
                    let g = self.ground("two-valued")?;
                    let ones = g.subset(names(self.ones.as_deref().unwrap_or("")))?;
                    RankModel::two_valued(g, ones)?
                }
                Kind::Uniform => RankModel::uniform(self.ground("uniform")?),
                Kind::Coverage => {
                    let Some(p) = &self.coverage else {
                        bail!("--kind coverage needs --coverage");
                    };
                    RankModel::coverage(formats::parse_coverage_json(&read(p)?, &at(p))?)
                }
            }
        };
        match self.tolerance {
            Some(eps) => Ok(model.with_tolerance(eps)?),
            None => Ok(model),
        }
    }
}
