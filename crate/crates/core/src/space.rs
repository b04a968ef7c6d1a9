//! Finite partial metric spaces and the common distance interface.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{PmError, Result};
use crate::point::Point;
use crate::rational::Rational;

/// Anything that can evaluate a partial metric between two of its points.
pub trait PartialMetric {
    fn name(&self) -> &str;

    fn contains(&self, x: &Point) -> bool;

    /// `p(x, y)`; fails with [`PmError::Domain`] for points outside the space.
    fn p(&self, x: &Point, y: &Point) -> Result<Rational>;

    /// Infimum of self-distances. Computed for finite spaces, declared for
    /// formula-backed ones.
    fn rho(&self) -> Result<Rational>;
}

/// An explicit point list with its full distance matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePMSpace {
    name: String,
    points: Vec<Point>,
    matrix: Vec<Vec<Rational>>,
    index: HashMap<Point, usize>,
}

/// Wire form: `{"points": [...], "p": [["num/den", ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpaceJson {
    pub points: Vec<Point>,
    pub p: Vec<Vec<Rational>>,
}

impl FinitePMSpace {
    /// Checks shape only (square matrix matching the point count, distinct
    /// points, nonnegative entries). The partial metric axioms are checked
    /// separately by [`crate::axioms::check_axioms`].
    pub fn new(points: Vec<Point>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = points.len();
        if matrix.len() != n {
            return Err(PmError::DimensionMismatch {
                points: n,
                rows: matrix.len(),
                bad_row: matrix.len().min(n),
                bad_len: 0,
            });
        }
        if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(PmError::DimensionMismatch {
                points: n,
                rows: matrix.len(),
                bad_row: i,
                bad_len: row.len(),
            });
        }
        for (i, row) in matrix.iter().enumerate() {
            if let Some(j) = row.iter().position(Rational::is_negative) {
                return Err(PmError::Argument(format!(
                    "negative distance {} at ({}, {})",
                    row[j], points[i], points[j]
                )));
            }
        }
        let mut index = HashMap::with_capacity(n);
        for (i, x) in points.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(PmError::DuplicatePoint(x.to_string()));
            }
        }
        Ok(FinitePMSpace {
            name: "finite".to_string(),
            points,
            matrix,
            index,
        })
    }

    /// Tabulates `f` over all ordered pairs of `points`.
    pub fn from_fn<F>(points: Vec<Point>, mut f: F) -> Result<Self>
    where
        F: FnMut(&Point, &Point) -> Result<Rational>,
    {
        let mut matrix = Vec::with_capacity(points.len());
        for x in &points {
            let row = points.iter().map(|y| f(x, y)).collect::<Result<Vec<_>>>()?;
            matrix.push(row);
        }
        FinitePMSpace::new(points, matrix)
    }

    /// Finite restriction of any space to the given points.
    pub fn restrict<S: PartialMetric + ?Sized>(space: &S, points: &[Point]) -> Result<Self> {
        let fs = FinitePMSpace::from_fn(points.to_vec(), |x, y| space.p(x, y))?;
        Ok(fs.named(space.name()))
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn index_of(&self, x: &Point) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn require_index(&self, x: &Point) -> Result<usize> {
        self.index_of(x).ok_or_else(|| PmError::Domain(x.to_string()))
    }

    /// `p(x_i, x_j)` by index.
    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[i][j]
    }

    /// Self-distance `p(x_i, x_i)`.
    pub fn diag(&self, i: usize) -> &Rational {
        &self.matrix[i][i]
    }

    /// Subspace on the given indices, in the given order.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self> {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let matrix = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.matrix[i][j].clone()).collect())
            .collect();
        Ok(FinitePMSpace::new(points, matrix)?.named(&self.name))
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            points: self.points.clone(),
            p: self.matrix.clone(),
        }
    }

    pub fn from_json(json: SpaceJson) -> Result<Self> {
        FinitePMSpace::new(json.points, json.p)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: SpaceJson = serde_json::from_str(s).map_err(|e| PmError::Json(e.to_string()))?;
        FinitePMSpace::from_json(json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("space serializes")
    }
}

impl PartialMetric for FinitePMSpace {
    fn name(&self) -> &str {
        &self.name
    }

    fn contains(&self, x: &Point) -> bool {
        self.index.contains_key(x)
    }

    fn p(&self, x: &Point, y: &Point) -> Result<Rational> {
        let i = self.require_index(x)?;
        let j = self.require_index(y)?;
        Ok(self.matrix[i][j].clone())
    }

    fn rho(&self) -> Result<Rational> {
        (0..self.len())
            .map(|i| self.diag(i))
            .min()
            .cloned()
            .ok_or_else(|| PmError::Argument("empty space".into()))
    }
}

/// Parses a matrix given as rows of `num/den` strings. Test and fixture helper.
pub fn matrix_from_strs(rows: &[&[&str]]) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| s.parse()).collect())
        .collect()
}
