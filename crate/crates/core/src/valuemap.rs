//! Gridded objectives `f(u, x)` and the marginal maximization map
//! `psi(f)(x) = sup_{u in A(x)} f(u, x)`.
//!
//! The choice set `A(x)` is a finite, ordered list of candidates per grid
//! point. For objectives built from step functions the supremum over a
//! continuum of `u` is attained on a finite event set, so nothing is lost.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite, strictly increasing evaluation grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    points: Vec<f64>,
    step: f64,
}

impl Grid {
    pub fn new(points: Vec<f64>, step: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidGrid("non-finite grid point".into()));
        }
        if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!(
                "points not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self { points, step })
    }

    /// `count` points `start + i * step`.
    pub fn uniform(start: f64, step: f64, count: usize) -> Result<Self> {
        let points = (0..count).map(|i| start + i as f64 * step).collect();
        Self::new(points, step)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Left-rectangle weights: `x[k+1] - x[k]`, and the nominal step for the
    /// last point.
    pub fn weights(&self) -> Vec<f64> {
        let mut w: Vec<f64> = self.points.windows(2).map(|p| p[1] - p[0]).collect();
        w.push(self.step);
        w
    }

    /// Lebesgue measure of the grid's extent under the rectangle rule.
    pub fn measure(&self) -> f64 {
        self.weights().iter().sum()
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        *self.points.last().unwrap()
    }

    pub(crate) fn ensure_same(&self, other: &Grid, what: &str) -> Result<()> {
        if self.points != other.points {
            return Err(Error::GridMismatch(format!(
                "{what}: grids differ ({} vs {} points)",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

/// Where a gridded objective came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    MakarovLower,
    MakarovUpperNegated,
    User,
}

/// Read access to a field of values indexed by `(grid point, candidate)`.
///
/// Implemented by materialized objectives and by lazily evaluated bootstrap
/// directions, which share the candidate layout of the objective they perturb.
pub trait CandidateField {
    fn grid_len(&self) -> usize;
    fn candidate_count(&self, x: usize) -> usize;
    fn value(&self, x: usize, candidate: usize) -> f64;
}

/// Objective `f(u, x)` stored per grid point as a list of candidate values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GriddedObjective {
    grid: Grid,
    offsets: Vec<usize>,
    values: Vec<f64>,
    provenance: Provenance,
}

impl GriddedObjective {
    /// Build from per-point candidate lists. Every list must be nonempty and
    /// finite.
    pub fn new(grid: Grid, candidates: Vec<Vec<f64>>, provenance: Provenance) -> Result<Self> {
        if candidates.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                actual: candidates.len(),
            });
        }
        let mut offsets = Vec::with_capacity(grid.len() + 1);
        let mut values = Vec::new();
        offsets.push(0);
        for list in candidates {
            values.extend(list);
            offsets.push(values.len());
        }
        Self::from_parts(grid, offsets, values, provenance)
    }

    pub(crate) fn from_parts(
        grid: Grid,
        offsets: Vec<usize>,
        values: Vec<f64>,
        provenance: Provenance,
    ) -> Result<Self> {
        debug_assert_eq!(offsets.len(), grid.len() + 1);
        for (k, w) in offsets.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::EmptyCandidates {
                    index: k,
                    x: grid.points()[k],
                });
            }
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::param(format!("non-finite candidate value {v}")));
        }
        Ok(Self {
            grid,
            offsets,
            values,
            provenance,
        })
    }

    /// Objective with a single candidate per point, `f(x) = values[x]`.
    pub fn single(grid: Grid, values: Vec<f64>) -> Result<Self> {
        let lists = values.into_iter().map(|v| vec![v]).collect();
        Self::new(grid, lists, Provenance::User)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn candidates(&self, x: usize) -> &[f64] {
        &self.values[self.offsets[x]..self.offsets[x + 1]]
    }

    pub fn total_candidates(&self) -> usize {
        self.values.len()
    }

    /// Same candidate layout with every value mapped through `op`.
    pub fn map(&self, op: impl Fn(f64) -> f64) -> GriddedObjective {
        GriddedObjective {
            grid: self.grid.clone(),
            offsets: self.offsets.clone(),
            values: self.values.iter().map(|&v| op(v)).collect(),
            provenance: self.provenance,
        }
    }

    /// Subtract `shift[x]` from every candidate at grid point `x`, so that
    /// `psi` of the result is `psi(self) - shift`.
    pub fn shifted(&self, shift: &[f64]) -> Result<GriddedObjective> {
        if shift.len() != self.grid.len() {
            return Err(Error::LengthMismatch {
                expected: self.grid.len(),
                actual: shift.len(),
            });
        }
        let mut values = self.values.clone();
        for (k, s) in shift.iter().enumerate() {
            for v in &mut values[self.offsets[k]..self.offsets[k + 1]] {
                *v -= s;
            }
        }
        Ok(GriddedObjective {
            grid: self.grid.clone(),
            offsets: self.offsets.clone(),
            values,
            provenance: self.provenance,
        })
    }

    /// Candidate-wise combination of two objectives with identical layout.
    pub fn zip_with(
        &self,
        other: &GriddedObjective,
        op: impl Fn(f64, f64) -> f64,
    ) -> Result<GriddedObjective> {
        self.grid.ensure_same(&other.grid, "zip_with")?;
        if self.offsets != other.offsets {
            return Err(Error::ShapeMismatch("candidate layouts differ".into()));
        }
        Ok(GriddedObjective {
            grid: self.grid.clone(),
            offsets: self.offsets.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
            provenance: Provenance::User,
        })
    }
}

impl CandidateField for GriddedObjective {
    fn grid_len(&self) -> usize {
        self.grid.len()
    }

    fn candidate_count(&self, x: usize) -> usize {
        self.offsets[x + 1] - self.offsets[x]
    }

    fn value(&self, x: usize, candidate: usize) -> f64 {
        self.values[self.offsets[x] + candidate]
    }
}

/// A function sampled on a grid, typically `psi(f)` or an affine transform
/// of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueFunction {
    grid: Grid,
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    argmax_witness: Option<Vec<usize>>,
}

impl ValueFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            argmax_witness: None,
        })
    }

    /// Sample `f` at every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().iter().map(|&x| f(x)).collect();
        Self {
            grid,
            values,
            argmax_witness: None,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Index of a maximizing candidate per grid point, when produced by `psi`.
    pub fn argmax_witness(&self) -> Option<&[usize]> {
        self.argmax_witness.as_deref()
    }

    /// Pointwise `op(value)`, dropping the witness.
    pub fn map(&self, op: impl Fn(f64) -> f64) -> ValueFunction {
        ValueFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| op(v)).collect(),
            argmax_witness: None,
        }
    }

    /// Pointwise `op(self, other)` on a common grid.
    pub fn zip_with(
        &self,
        other: &ValueFunction,
        op: impl Fn(f64, f64) -> f64,
    ) -> Result<ValueFunction> {
        self.grid.ensure_same(&other.grid, "value functions")?;
        Ok(ValueFunction {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
            argmax_witness: None,
        })
    }
}

/// `psi(f)(x) = max` over the candidates at `x`, with the first maximizing
/// candidate recorded as witness.
pub fn psi(f: &GriddedObjective) -> Result<ValueFunction> {
    let mut values = Vec::with_capacity(f.grid.len());
    let mut witness = Vec::with_capacity(f.grid.len());
    for k in 0..f.grid.len() {
        let cands = f.candidates(k);
        if cands.is_empty() {
            return Err(Error::EmptyCandidates {
                index: k,
                x: f.grid.points()[k],
            });
        }
        let (best, idx) = cands
            .iter()
            .enumerate()
            .fold((f64::NEG_INFINITY, 0), |(bv, bi), (i, &v)| {
                if v > bv {
                    (v, i)
                } else {
                    (bv, bi)
                }
            });
        values.push(best);
        witness.push(idx);
    }
    Ok(ValueFunction {
        grid: f.grid.clone(),
        values,
        argmax_witness: Some(witness),
    })
}

/// Pointwise negation; `psi(negate(f))` is minus the candidate-wise minimum.
pub fn negate(f: &GriddedObjective) -> GriddedObjective {
    let mut out = f.map(|v| -v);
    out.provenance = match f.provenance {
        Provenance::MakarovLower => Provenance::MakarovUpperNegated,
        Provenance::MakarovUpperNegated => Provenance::MakarovLower,
        Provenance::User => Provenance::User,
    };
    out
}
