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

use thiserror::Error;

use crate::axioms::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("subset has members outside the ground set of {0} attributes")]
    OutsideGround(usize),

    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),

    #[error("ground set has {size} attributes, more than the cap of {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// An explicit table failed one of R1-R4.
    #[error("rank table violates the diversity axioms:\n{0}")]
    AxiomViolation(Box<AxiomReport>),

    #[error("usage: {0}")]
    Usage(String),

    #[error("assertion set is not closed under Armstrong's axioms: missing {0}")]
    NotClosed(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
