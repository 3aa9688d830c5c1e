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

//! Diversity rank functions and the dependence and independence notions
//! they induce.
//!
//! A rank function assigns a non-negative "amount of diversity" to every
//! finite set of attributes. `y` depends on `x` when adding `y` to `x` adds
//! no diversity, and `x` and `y` are independent when putting them together
//! loses none. This crate provides
//!
//! - concrete rank functions ([`models`]): constant, singular, two-valued,
//!   uniform, coverage, entropy, relational (teams), linear, and validated
//!   explicit tables;
//! - exhaustive axiom checking with reproducible witnesses ([`axioms`]);
//! - Armstrong inference for dependence atoms with two-valued and team
//!   countermodels ([`dep`]);
//! - saturation-based inference for independence atoms with parity-team
//!   countermodels ([`indep`]);
//! - realization of any Armstrong-closed set of dependence atoms as an
//!   explicit rank table ([`represent`]);
//! - the text and CSV/JSON formats used by the command-line tool ([`formats`]).

pub mod assertion;
pub mod axioms;
pub mod formats;
pub mod dep;
pub mod indep;
mod error;
pub mod models;
pub mod represent;
pub mod subset;
pub mod table;
pub mod value;

pub use assertion::{Assertion, AssertionSet, AtomKind};
pub use axioms::{Axiom, AxiomReport, CheckOptions, InteractionReport, MatroidReport, Verdict, Witness};
pub use error::{Error, Result};
pub use models::{CoverageMap, Distribution, ExplicitRankTable, ModelKind, RankModel, Team, VectorFamily};
pub use subset::{AttrSubset, GroundSet};
pub use value::{Comparison, RankValue};
