//! Empirical distribution and quantile functions of one-dimensional samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty sample of finite real outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    values: Vec<f64>,
    label: String,
}

impl Sample {
    pub fn new(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self {
            values,
            label: label.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Copy of the sample with values in ascending order.
    pub fn sorted(&self) -> Sample {
        let mut values = self.values.clone();
        values.sort_by(f64::total_cmp);
        Sample {
            values,
            label: self.label.clone(),
        }
    }
}

/// Right-continuous step distribution function.
///
/// `cum_probs[k]` is the mass at or below `jump_points[k]`. Ties in the data
/// are merged into one jump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepCDF {
    jump_points: Vec<f64>,
    cum_probs: Vec<f64>,
    n: f64,
}

impl StepCDF {
    /// Weighted distribution function putting mass `w_i / Σw` at `values[i]`.
    ///
    /// Zero-weight observations carry no jump.
    pub fn from_weighted(values: &[f64], weights: &[f64]) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::LengthMismatch {
                expected: values.len(),
                actual: weights.len(),
            });
        }
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::param(format!("invalid weight {w}")));
        }
        let mut pairs: Vec<(f64, f64)> = values
            .iter()
            .copied()
            .zip(weights.iter().copied())
            .filter(|(_, w)| *w > 0.0)
            .collect();
        if pairs.is_empty() {
            return Err(Error::param("all weights are zero"));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut jump_points = Vec::new();
        let mut prefix = Vec::new();
        let mut acc = 0.0;
        for (v, w) in pairs {
            acc += w;
            if jump_points.last() == Some(&v) {
                *prefix.last_mut().unwrap() = acc;
            } else {
                jump_points.push(v);
                prefix.push(acc);
            }
        }
        let total = acc;
        let cum_probs = prefix.iter().map(|p| p / total).collect();
        Ok(Self {
            jump_points,
            cum_probs,
            n: total,
        })
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.jump_points
    }

    pub fn cum_probs(&self) -> &[f64] {
        &self.cum_probs
    }

    /// Sample size, or total weight for weighted functions.
    pub fn n(&self) -> f64 {
        self.n
    }

    /// Number of distinct jump points.
    pub fn len(&self) -> usize {
        self.jump_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jump_points.is_empty()
    }

    /// Number of jump points at or below `x`.
    pub fn count_at_or_below(&self, x: f64) -> usize {
        self.jump_points.partition_point(|&p| p <= x)
    }

    /// Number of jump points strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        self.jump_points.partition_point(|&p| p < x)
    }

    /// Mass of the first `k` jumps; `0` for `k == 0`.
    pub fn mass_of_first(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.cum_probs[k - 1]
        }
    }

    /// `P(X <= x)`.
    pub fn eval(&self, x: f64) -> f64 {
        self.mass_of_first(self.count_at_or_below(x))
    }

    /// `P(X < x)`, the limit of [`eval`](Self::eval) from the left.
    pub fn left_limit(&self, x: f64) -> f64 {
        self.mass_of_first(self.count_below(x))
    }

    /// Generalized inverse `inf{x : F(x) >= tau}` for `tau` in `(0, 1]`.
    pub fn quantile(&self, tau: f64) -> Result<f64> {
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(Error::param(format!("quantile level {tau} outside (0, 1]")));
        }
        Ok(self.quantile_snapped(tau, 0.0))
    }

    /// Quantile treating levels within `tol` below a cumulative probability as
    /// reaching it. Used where levels come out of floating arithmetic.
    pub(crate) fn quantile_snapped(&self, tau: f64, tol: f64) -> f64 {
        let k = self.cum_probs.partition_point(|&c| c < tau - tol);
        self.jump_points[k.min(self.jump_points.len() - 1)]
    }

    pub fn min(&self) -> f64 {
        self.jump_points[0]
    }

    pub fn max(&self) -> f64 {
        *self.jump_points.last().unwrap()
    }
}

/// Empirical distribution function of `sample`, mass `multiplicity / n` per
/// distinct value.
pub fn ecdf_build(sample: &Sample) -> StepCDF {
    let mut values = sample.values.clone();
    values.sort_by(f64::total_cmp);
    let n = values.len();
    let mut jump_points = Vec::new();
    let mut counts = Vec::new();
    for (i, v) in values.into_iter().enumerate() {
        if jump_points.last() == Some(&v) {
            *counts.last_mut().unwrap() = i + 1;
        } else {
            jump_points.push(v);
            counts.push(i + 1);
        }
    }
    let cum_probs = counts.iter().map(|&c| c as f64 / n as f64).collect();
    StepCDF {
        jump_points,
        cum_probs,
        n: n as f64,
    }
}

pub fn ecdf_eval(cdf: &StepCDF, x: f64) -> f64 {
    cdf.eval(x)
}

pub fn ecdf_left_limit(cdf: &StepCDF, x: f64) -> f64 {
    cdf.left_limit(x)
}

pub fn quantile(cdf: &StepCDF, tau: f64) -> Result<f64> {
    cdf.quantile(tau)
}
