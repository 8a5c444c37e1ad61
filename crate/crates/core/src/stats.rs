//! Uniform statistics of value functions.
//!
//! `lambda_1 = sup |psi(f)|`, `lambda_2 = sup [psi(f)]_+`, and their `L_p`
//! counterparts `lambda_3`, `lambda_4`. Integrals use the left-rectangle rule
//! of [`Grid::weights`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valuemap::{psi, Grid, GriddedObjective, ValueFunction};

/// Which of the four statistics, with the `L_p` exponent for `j = 3, 4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatKind {
    pub j: u8,
    pub p: f64,
}

impl StatKind {
    pub const DEFAULT_P: f64 = 2.0;

    pub fn new(j: u8, p: f64) -> Result<Self> {
        let kind = Self { j, p };
        kind.validate()?;
        Ok(kind)
    }

    /// `lambda_1`, the two-sided sup statistic.
    pub fn sup_abs() -> Self {
        Self { j: 1, p: f64::INFINITY }
    }

    pub fn sup_positive() -> Self {
        Self { j: 2, p: f64::INFINITY }
    }

    pub fn lp_abs(p: f64) -> Self {
        Self { j: 3, p }
    }

    pub fn lp_positive(p: f64) -> Self {
        Self { j: 4, p }
    }

    pub fn validate(&self) -> Result<()> {
        match self.j {
            1 | 2 => Ok(()),
            3 | 4 if self.p >= 1.0 && self.p.is_finite() => Ok(()),
            3 | 4 => Err(Error::param(format!(
                "exponent p must be finite and >= 1, got {}",
                self.p
            ))),
            j => Err(Error::param(format!("statistic index must be 1..=4, got {j}"))),
        }
    }
}

/// A statistic value, tagged with whether it already includes the `r_n` scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatValue {
    pub value: f64,
    pub kind: StatKind,
    pub scaled: bool,
}

impl StatValue {
    /// Multiply by `r_n`; scaling twice is an error.
    pub fn scale(self, r_n: f64) -> Result<StatValue> {
        if self.scaled {
            return Err(Error::param("statistic is already scaled"));
        }
        Ok(StatValue {
            value: self.value * r_n,
            scaled: true,
            ..self
        })
    }
}

/// `(sum_k |v_k|^p w_k)^(1/p)`.
pub(crate) fn lp_norm(values: impl Iterator<Item = f64>, weights: &[f64], p: f64) -> f64 {
    let s: f64 = values.zip(weights).map(|(v, w)| v.abs().powf(p) * w).sum();
    s.powf(1.0 / p)
}

/// Apply statistic `kind` to a function already sampled on `grid`.
pub fn lambda_of_values(values: &[f64], grid: &Grid, kind: StatKind) -> Result<f64> {
    kind.validate()?;
    let value = match kind.j {
        1 => values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        2 => values.iter().fold(0.0f64, |m, &v| m.max(v)),
        3 => lp_norm(values.iter().copied(), &grid.weights(), kind.p),
        _ => lp_norm(values.iter().map(|v| v.max(0.0)), &grid.weights(), kind.p),
    };
    Ok(value)
}

/// `lambda_j(f)`, unscaled.
pub fn lambda(f: &GriddedObjective, kind: StatKind) -> Result<StatValue> {
    kind.validate()?;
    let vf = psi(f)?;
    Ok(StatValue {
        value: lambda_of_values(vf.values(), f.grid(), kind)?,
        kind,
        scaled: false,
    })
}

/// Kolmogorov-Smirnov distance `r_n * max_x |estimate(x) - null(x)|`.
pub fn ks_band_stat(estimate: &ValueFunction, null: &ValueFunction, r_n: f64) -> Result<StatValue> {
    let diff = estimate.zip_with(null, |a, b| a - b)?;
    let value = lambda_of_values(diff.values(), diff.grid(), StatKind::sup_abs())?;
    StatValue {
        value,
        kind: StatKind::sup_abs(),
        scaled: false,
    }
    .scale(r_n)
}

/// One-sided Cramér-von Mises type distance
/// `r_n * (∫ [lower_a - upper_b]_+^2 dm)^(1/2)`.
pub fn dominance_stat(lower_a: &ValueFunction, upper_b: &ValueFunction, r_n: f64) -> Result<StatValue> {
    let diff = lower_a.zip_with(upper_b, |a, b| a - b)?;
    positive_l2(&diff, r_n)
}

pub(crate) fn positive_l2(diff: &ValueFunction, r_n: f64) -> Result<StatValue> {
    let kind = StatKind::lp_positive(StatKind::DEFAULT_P);
    let value = lambda_of_values(diff.values(), diff.grid(), kind)?;
    StatValue {
        value,
        kind,
        scaled: false,
    }
    .scale(r_n)
}
