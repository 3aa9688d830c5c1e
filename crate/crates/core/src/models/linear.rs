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

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::subset::{AttrSubset, GroundSet};
use crate::value::RankValue;

/// One rational vector per label, all of the same dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFamily {
    labels: GroundSet,
    vectors: Vec<Vec<BigRational>>,
    dim: usize,
}

impl VectorFamily {
    pub fn new(labels: GroundSet, vectors: Vec<Vec<BigRational>>) -> Result<Self> {
        if vectors.len() != labels.len() {
            return Err(Error::InvalidModel(format!(
                "{} vectors for {} labels",
                vectors.len(),
                labels.len()
            )));
        }
        let dim = vectors.first().map_or(0, Vec::len);
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(Error::InvalidModel(format!(
                "vector `{}` has dimension {}, expected {dim}",
                labels.name(i),
                v.len()
            )));
        }
        Ok(VectorFamily {
            labels,
            vectors,
            dim,
        })
    }

    pub fn from_integers(labels: GroundSet, vectors: &[&[i64]]) -> Result<Self> {
        let vectors = vectors
            .iter()
            .map(|v| v.iter().map(|&e| BigRational::from_integer(e.into())).collect())
            .collect();
        VectorFamily::new(labels, vectors)
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    /// Dimension of the span of the vectors labelled by `x`.
    pub fn rank_of(&self, x: AttrSubset) -> usize {
        let rows: Vec<Vec<BigRational>> = x.iter().map(|i| self.vectors[i].clone()).collect();
        matrix_rank(rows)
    }

    pub fn rank(&self, x: AttrSubset) -> RankValue {
        RankValue::int(self.rank_of(x) as i64)
    }
}

/// Rank by exact Gaussian elimination. The matrix is consumed.
pub fn matrix_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot_row[col];
            for c in col..width {
                let delta = &factor * &pivot_row[c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
