//! Monte Carlo power curves for the two designs: a Kolmogorov-Smirnov test
//! of the lower Makarov bound under normal location shifts, and the
//! dominance test with uniform treatments.
//!
//! Repetition `r` draws its base noise and its bootstrap weights from stream
//! `(seed, r)` for every local parameter, so the curves use common random
//! numbers across `delta`.

use rand::Rng;
use rand_distr::{StandardNormal, StandardUniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::bootstrap::{BootstrapConfig, DominanceHypothesis, WeightScheme};
use crate::derivative::{Tuning, DEFAULT_A_CONST, DEFAULT_B_CONST, MIN_SAMPLE_SIZE};
use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::inference::{band_test, dominance_test};
use crate::makarov::{covering_grid, default_grid, support_bounds, BoundSide};
use crate::rng::{StreamKey, DOMAIN_SIMULATE};
use crate::valuemap::ValueFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `X0 ~ N(0, 1)`, `X1 ~ N(delta / sqrt(n), 1)`; test `L = L0` for the
    /// standard normal pair.
    NormalLocation,
    /// `X0, XB ~ U(0, 1)`, `XA ~ U(mu, mu + 1)` with `mu = 1 + delta / sqrt(n)`;
    /// test `U_A - L_B <= 0`.
    UniformDominance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Observations per sample.
    pub n: usize,
    /// Bootstrap replicates per test.
    pub replicates: usize,
    /// Monte Carlo repetitions per local parameter.
    pub reps: usize,
    pub deltas: Vec<f64>,
    pub seed: u64,
    pub grid_step: f64,
    pub alpha: f64,
    pub scheme: WeightScheme,
    pub a_const: f64,
    pub b_const: f64,
}

impl ExperimentConfig {
    /// Desk-scale defaults: `n = 100`, `R = 199`, 300 repetitions and
    /// `delta` in `-5, -4, .., 5`.
    pub fn new(kind: ExperimentKind) -> Self {
        Self {
            kind,
            n: 100,
            replicates: 199,
            reps: 300,
            deltas: (-5..=5).map(f64::from).collect(),
            seed: 1,
            grid_step: match kind {
                ExperimentKind::NormalLocation => 0.05,
                ExperimentKind::UniformDominance => 0.02,
            },
            alpha: 0.05,
            scheme: WeightScheme::Multinomial,
            a_const: DEFAULT_A_CONST,
            b_const: DEFAULT_B_CONST,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < MIN_SAMPLE_SIZE {
            return Err(Error::SampleTooSmall {
                n: self.n,
                min: MIN_SAMPLE_SIZE,
            });
        }
        if self.reps == 0 {
            return Err(Error::param("at least one Monte Carlo repetition is needed"));
        }
        if self.deltas.is_empty() {
            return Err(Error::param("the local-parameter grid is empty"));
        }
        if let Some(d) = self.deltas.iter().find(|d| !d.is_finite()) {
            return Err(Error::param(format!("local parameter {d} is not finite")));
        }
        if !(self.grid_step > 0.0 && self.grid_step.is_finite()) {
            return Err(Error::param(format!("grid step must be positive, got {}", self.grid_step)));
        }
        BootstrapConfig::new(self.replicates, self.scheme, self.seed, self.alpha)?;
        Ok(())
    }
}

/// Rejection frequencies over the local-parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerCurve {
    pub deltas: Vec<f64>,
    pub reject_rates: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub config: ExperimentConfig,
}

/// `L(x) = max{2 Phi(x / 2) - 1, 0}`, the lower bound for two independent
/// standard normal marginals.
pub fn normal_lower_bound(x: f64) -> f64 {
    let phi = Normal::standard().cdf(x / 2.0);
    (2.0 * phi - 1.0).max(0.0)
}

fn normal_draws(key: StreamKey, n: usize) -> Vec<f64> {
    let mut rng = key.rng();
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn uniform_draws(key: StreamKey, n: usize) -> Vec<f64> {
    let mut rng = key.rng();
    (0..n).map(|_| rng.sample(StandardUniform)).collect()
}

fn rep_key(config: &ExperimentConfig, rep: usize) -> StreamKey {
    StreamKey::root(config.seed).child(DOMAIN_SIMULATE).child(rep as u64)
}

fn bootstrap_config(config: &ExperimentConfig, key: StreamKey) -> BootstrapConfig {
    BootstrapConfig {
        replicates: config.replicates,
        scheme: config.scheme,
        seed: key.child(3).id(),
        alpha: config.alpha,
    }
}

/// One repetition of the normal location design; returns whether `H0` was
/// rejected.
pub fn normal_location_trial(config: &ExperimentConfig, delta_index: usize, rep: usize) -> Result<bool> {
    let n = config.n;
    let key = rep_key(config, rep);
    let shift = config.deltas[delta_index] / (n as f64).sqrt();
    let x0 = Sample::new(normal_draws(key.child(0), n), "control")?;
    let x1 = Sample::new(
        normal_draws(key.child(1), n).into_iter().map(|z| z + shift).collect(),
        "treated",
    )?;
    let grid = default_grid(&support_bounds(&x1, &x0)?, config.grid_step)?;
    let null = ValueFunction::from_fn(grid.clone(), normal_lower_bound);
    let tuning = Tuning::with_constants(2 * n, config.a_const, config.b_const)?;
    let boot = bootstrap_config(config, key);
    let (result, _) = band_test(BoundSide::Lower, &x1, &x0, &grid, &null, &tuning, &boot)?;
    Ok(result.reject)
}

/// One repetition of the uniform dominance design.
pub fn uniform_dominance_trial(config: &ExperimentConfig, delta_index: usize, rep: usize) -> Result<bool> {
    let n = config.n;
    let key = rep_key(config, rep);
    let mu = 1.0 + config.deltas[delta_index] / (n as f64).sqrt();
    let x0 = Sample::new(uniform_draws(key.child(0), n), "control")?;
    let xa = Sample::new(
        uniform_draws(key.child(1), n).into_iter().map(|u| mu + u).collect(),
        "treatment_a",
    )?;
    let xb = Sample::new(uniform_draws(key.child(2), n), "treatment_b")?;
    let supports = [support_bounds(&xa, &x0)?, support_bounds(&xb, &x0)?];
    let grid = covering_grid(&supports, config.grid_step)?;
    let tuning = Tuning::with_constants(3 * n, config.a_const, config.b_const)?;
    let boot = bootstrap_config(config, key);
    let (result, _) = dominance_test(
        &x0,
        &xa,
        &xb,
        &grid,
        DominanceHypothesis::Sufficient,
        &tuning,
        &boot,
    )?;
    Ok(result.reject)
}

fn run(config: &ExperimentConfig, trial: fn(&ExperimentConfig, usize, usize) -> Result<bool>) -> Result<PowerCurve> {
    config.validate()?;
    let mut reject_rates = Vec::with_capacity(config.deltas.len());
    let mut standard_errors = Vec::with_capacity(config.deltas.len());
    for d in 0..config.deltas.len() {
        let rejections = (0..config.reps)
            .into_par_iter()
            .map(|rep| trial(config, d, rep))
            .collect::<Result<Vec<bool>>>()?;
        let reps = config.reps as f64;
        let p = rejections.iter().filter(|r| **r).count() as f64 / reps;
        reject_rates.push(p);
        standard_errors.push((p * (1.0 - p) / reps).sqrt());
    }
    Ok(PowerCurve {
        deltas: config.deltas.clone(),
        reject_rates,
        standard_errors,
        config: config.clone(),
    })
}

pub fn run_normal_location(config: &ExperimentConfig) -> Result<PowerCurve> {
    if config.kind != ExperimentKind::NormalLocation {
        return Err(Error::param("configuration is not for the normal location design"));
    }
    run(config, normal_location_trial)
}

pub fn run_uniform_dominance(config: &ExperimentConfig) -> Result<PowerCurve> {
    if config.kind != ExperimentKind::UniformDominance {
        return Err(Error::param("configuration is not for the uniform dominance design"));
    }
    run(config, uniform_dominance_trial)
}

/// Dispatch on [`ExperimentConfig::kind`].
pub fn run_experiment(config: &ExperimentConfig) -> Result<PowerCurve> {
    match config.kind {
        ExperimentKind::NormalLocation => run_normal_location(config),
        ExperimentKind::UniformDominance => run_uniform_dominance(config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: ExperimentKind) -> ExperimentConfig {
        ExperimentConfig {
            n: 30,
            replicates: 19,
            reps: 4,
            deltas: vec![-3.0, 0.0],
            grid_step: 0.1,
            ..ExperimentConfig::new(kind)
        }
    }

    #[test]
    fn closed_form_null() {
        assert_eq!(normal_lower_bound(-1.0), 0.0);
        assert_eq!(normal_lower_bound(0.0), 0.0);
        let v = normal_lower_bound(2.0);
        assert!((v - 0.682_689_492_137_085_9).abs() < 1e-9, "{v}");
    }

    #[test]
    fn validation() {
        let mut c = small(ExperimentKind::NormalLocation);
        c.n = 10;
        assert!(matches!(c.validate(), Err(Error::SampleTooSmall { .. })));
        let mut c = small(ExperimentKind::NormalLocation);
        c.reps = 0;
        assert!(c.validate().is_err());
        let mut c = small(ExperimentKind::NormalLocation);
        c.deltas.clear();
        assert!(c.validate().is_err());
        assert!(run_uniform_dominance(&small(ExperimentKind::NormalLocation)).is_err());
    }

    #[test]
    fn single_rep_gives_zero_or_one() {
        for kind in [ExperimentKind::NormalLocation, ExperimentKind::UniformDominance] {
            let c = ExperimentConfig {
                reps: 1,
                ..small(kind)
            };
            let curve = run_experiment(&c).unwrap();
            for (p, se) in curve.reject_rates.iter().zip(&curve.standard_errors) {
                assert!(*p == 0.0 || *p == 1.0);
                assert_eq!(*se, 0.0);
            }
        }
    }

    #[test]
    fn reproducible() {
        for kind in [ExperimentKind::NormalLocation, ExperimentKind::UniformDominance] {
            let c = small(kind);
            let a = run_experiment(&c).unwrap();
            let b = run_experiment(&c).unwrap();
            assert_eq!(a, b);
            for (p, se) in a.reject_rates.iter().zip(&a.standard_errors) {
                assert!((0.0..=1.0).contains(p));
                assert!((se - (p * (1.0 - p) / 4.0).sqrt()).abs() < 1e-15);
            }
        }
    }
}
