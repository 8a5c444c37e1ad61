//! Exchangeable bootstrap for the Makarov-bound statistics.
//!
//! Each replicate draws weights for every sample independently, forms the
//! bootstrap direction `r_n (Pi(F*) - Pi(F))` on the fixed candidate layout of
//! the estimated objective, and feeds it to a derivative estimate. Replicate
//! `r` draws from its own stream derived from `(seed, r, sample)`, so the run
//! is identical whatever the thread count.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derivative::{
    contact_set, derivative_estimate, dominance_derivative_estimate, eps_argmax, ArgmaxSets, Tuning,
};
use crate::empirical::{ecdf_build, Sample, StepCDF};
use crate::error::{Error, Result};
use crate::makarov::{makarov_objective, BoundSide, MakarovObjective};
use crate::rng::{StreamKey, DOMAIN_BOOTSTRAP};
use crate::stats::StatKind;
use crate::valuemap::{psi, Grid, ValueFunction};

/// How bootstrap weights are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightScheme {
    /// Counts from `n` uniform draws with replacement.
    #[default]
    Multinomial,
    /// Standard exponential draws rescaled to sum to `n`.
    Bayesian,
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightScheme::Multinomial => "multinomial",
            WeightScheme::Bayesian => "bayesian",
        })
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "multinomial" => Ok(WeightScheme::Multinomial),
            "bayesian" => Ok(WeightScheme::Bayesian),
            other => Err(Error::param(format!("unknown weight scheme '{other}'"))),
        }
    }
}

/// Draw `n` exchangeable weights summing to `n`.
pub fn draw_weights<R: Rng + ?Sized>(n: usize, scheme: WeightScheme, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let weights = match scheme {
        WeightScheme::Multinomial => {
            let mut counts = vec![0.0; n];
            for _ in 0..n {
                counts[rng.random_range(0..n)] += 1.0;
            }
            counts
        }
        WeightScheme::Bayesian => {
            let draws: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
            let total: f64 = draws.iter().sum();
            let scale = n as f64 / total;
            draws.into_iter().map(|d| d * scale).collect()
        }
    };
    Ok(weights)
}

/// Weighted empirical distribution of `sample`; `weights` align with
/// [`Sample::values`].
pub fn resample_ecdf(sample: &Sample, weights: &[f64]) -> Result<StepCDF> {
    StepCDF::from_weighted(sample.values(), weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub replicates: usize,
    pub scheme: WeightScheme,
    pub seed: u64,
    pub alpha: f64,
}

impl BootstrapConfig {
    pub fn new(replicates: usize, scheme: WeightScheme, seed: u64, alpha: f64) -> Result<Self> {
        let config = Self {
            replicates,
            scheme,
            seed,
            alpha,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::param("number of bootstrap replicates must be at least 1"));
        }
        check_alpha(self.alpha)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapRun {
    pub replicates: Vec<f64>,
    pub critical_value: f64,
    pub config: BootstrapConfig,
    /// Identifier of each replicate's random stream.
    pub stream_ids: Vec<u64>,
}

impl BootstrapRun {
    pub fn mean(&self) -> f64 {
        self.replicates.iter().sum::<f64>() / self.replicates.len() as f64
    }

    pub fn max(&self) -> f64 {
        self.replicates.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// The `ceil((1 - alpha)(R + 1))`-th smallest replicate, capped at the largest.
pub fn critical_value(replicates: &[f64], alpha: f64) -> Result<f64> {
    if replicates.is_empty() {
        return Err(Error::param("no bootstrap replicates"));
    }
    check_alpha(alpha)?;
    if let Some(bad) = replicates.iter().find(|v| v.is_nan()) {
        return Err(Error::param(format!("replicate value {bad}")));
    }
    let r = replicates.len();
    let rank = ((1.0 - alpha) * (r as f64 + 1.0) - 1e-9).ceil() as usize;
    let rank = rank.clamp(1, r);
    let mut sorted = replicates.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted[rank - 1])
}

/// Direction tables for one sample: maps bootstrap weights to
/// `r_n (F*(t_k) - F(t_k))` at the sample's distinct jump points.
#[derive(Debug, Clone)]
struct Resampler {
    jump_of: Vec<u32>,
    base: Vec<f64>,
}

impl Resampler {
    fn new(sample: &Sample) -> Self {
        let sorted = sample.sorted();
        let cdf = ecdf_build(&sorted);
        let mut jump_of = Vec::with_capacity(sorted.len());
        let mut k = 0usize;
        for &v in sorted.values() {
            while cdf.jump_points()[k] < v {
                k += 1;
            }
            jump_of.push(k as u32);
        }
        Self {
            jump_of,
            base: cdf.cum_probs().to_vec(),
        }
    }

    fn len(&self) -> usize {
        self.jump_of.len()
    }

    /// `weights` are indexed by sorted observation.
    fn delta(&self, weights: &[f64], r_n: f64) -> Vec<f64> {
        let mut mass = vec![0.0; self.base.len()];
        for (&k, &w) in self.jump_of.iter().zip(weights) {
            mass[k as usize] += w;
        }
        let total: f64 = mass.iter().sum();
        let mut out = Vec::with_capacity(self.base.len() + 1);
        out.push(0.0);
        let mut acc = 0.0;
        for (m, b) in mass.iter().zip(&self.base) {
            acc += m;
            out.push(r_n * (acc / total - b));
        }
        out
    }

    fn draw(&self, scheme: WeightScheme, key: StreamKey, r_n: f64) -> Result<Vec<f64>> {
        let weights = draw_weights(self.len(), scheme, &mut key.rng())?;
        Ok(self.delta(&weights, r_n))
    }
}

/// Uniform band around one Makarov bound.
#[derive(Debug, Clone)]
pub struct BandProblem {
    pub side: BoundSide,
    pub objective: MakarovObjective,
    pub sets: ArgmaxSets,
    pub tuning: Tuning,
    treated: Resampler,
    control: Resampler,
}

impl BandProblem {
    pub fn new(treated: &Sample, control: &Sample, side: BoundSide, grid: &Grid, tuning: &Tuning) -> Result<Self> {
        let objective = makarov_objective(&ecdf_build(treated), &ecdf_build(control), grid, side);
        let sets = eps_argmax(objective.objective(), tuning)?;
        Ok(Self {
            side,
            objective,
            sets,
            tuning: *tuning,
            treated: Resampler::new(treated),
            control: Resampler::new(control),
        })
    }

    /// The estimated bound `L_n` or `U_n` on the grid.
    pub fn estimate(&self) -> ValueFunction {
        let vf = ValueFunction::new(self.objective.grid().clone(), self.sets.value_function().to_vec())
            .expect("value function shares the objective grid");
        match self.side {
            BoundSide::Lower => vf.map(|v| v.clamp(0.0, 1.0)),
            BoundSide::Upper => vf.map(|v| (1.0 - v).clamp(0.0, 1.0)),
        }
    }

    fn replicate(&self, scheme: WeightScheme, key: StreamKey) -> Result<f64> {
        let r_n = self.tuning.r_n;
        let d1 = self.treated.draw(scheme, key.child(1), r_n)?;
        let d0 = self.control.draw(scheme, key.child(0), r_n)?;
        let h = self.objective.direction(&d1, &d0)?;
        derivative_estimate(StatKind::sup_abs(), &self.sets, &h)
    }
}

/// Orientation of the bound comparison between two treatments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominanceHypothesis {
    /// `L_A - U_B <= 0`: the necessary condition for `F_A` to dominate `F_B`.
    #[default]
    Necessary,
    /// `U_A - L_B <= 0`: the sufficient condition.
    Sufficient,
}

impl fmt::Display for DominanceHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DominanceHypothesis::Necessary => "necessary",
            DominanceHypothesis::Sufficient => "sufficient",
        })
    }
}

impl FromStr for DominanceHypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "necessary" => Ok(DominanceHypothesis::Necessary),
            "sufficient" => Ok(DominanceHypothesis::Sufficient),
            other => Err(Error::param(format!("unknown dominance hypothesis '{other}'"))),
        }
    }
}

/// One-sided comparison of bounds for two treatments sharing a control.
///
/// The bound difference is `D = sign * (psi(f_a) + psi(f_b)) + offset`, with
/// `f_a = Pi(F0, FA)`, `f_b = -Pi(F0, FB)` for the necessary condition and
/// the opposite orientations for the sufficient one.
#[derive(Debug, Clone)]
pub struct DominanceProblem {
    pub hypothesis: DominanceHypothesis,
    pub objective_a: MakarovObjective,
    pub objective_b: MakarovObjective,
    pub sets_a: ArgmaxSets,
    pub sets_b: ArgmaxSets,
    pub contact: Vec<usize>,
    pub contact_fell_back: bool,
    pub tuning: Tuning,
    control: Resampler,
    treatment_a: Resampler,
    treatment_b: Resampler,
}

impl DominanceProblem {
    pub fn new(
        control: &Sample,
        treatment_a: &Sample,
        treatment_b: &Sample,
        grid: &Grid,
        hypothesis: DominanceHypothesis,
        tuning: &Tuning,
    ) -> Result<Self> {
        let (side_a, side_b) = match hypothesis {
            DominanceHypothesis::Necessary => (BoundSide::Lower, BoundSide::Upper),
            DominanceHypothesis::Sufficient => (BoundSide::Upper, BoundSide::Lower),
        };
        let f0 = ecdf_build(control);
        let objective_a = makarov_objective(&ecdf_build(treatment_a), &f0, grid, side_a);
        let objective_b = makarov_objective(&ecdf_build(treatment_b), &f0, grid, side_b);
        let sets_a = eps_argmax(objective_a.objective(), tuning)?;
        let sets_b = eps_argmax(objective_b.objective(), tuning)?;
        let mut problem = Self {
            hypothesis,
            objective_a,
            objective_b,
            sets_a,
            sets_b,
            contact: Vec::new(),
            contact_fell_back: false,
            tuning: *tuning,
            control: Resampler::new(control),
            treatment_a: Resampler::new(treatment_a),
            treatment_b: Resampler::new(treatment_b),
        };
        let diff = problem.difference()?;
        let (contact, fell_back) = contact_set(diff.values(), tuning.b_n);
        problem.contact = contact;
        problem.contact_fell_back = fell_back;
        Ok(problem)
    }

    fn sign_offset(&self) -> (f64, f64) {
        match self.hypothesis {
            DominanceHypothesis::Necessary => (1.0, -1.0),
            DominanceHypothesis::Sufficient => (-1.0, 1.0),
        }
    }

    /// Estimated bound difference (`L_A - U_B` or `U_A - L_B`) on the grid.
    pub fn difference(&self) -> Result<ValueFunction> {
        let (sign, offset) = self.sign_offset();
        let a = psi(self.objective_a.objective())?;
        let b = psi(self.objective_b.objective())?;
        a.zip_with(&b, |va, vb| sign * (va + vb) + offset)
    }

    /// Estimated bounds `(first, second)` entering the difference: `(L_A, U_B)`
    /// or `(U_A, L_B)`, each clipped to `[0, 1]`.
    pub fn bound_pair(&self) -> Result<(ValueFunction, ValueFunction)> {
        let orient = |vf: ValueFunction, side: BoundSide| match side {
            BoundSide::Lower => vf.map(|v| v.clamp(0.0, 1.0)),
            BoundSide::Upper => vf.map(|v| (1.0 - v).clamp(0.0, 1.0)),
        };
        Ok((
            orient(psi(self.objective_a.objective())?, self.objective_a.side()),
            orient(psi(self.objective_b.objective())?, self.objective_b.side()),
        ))
    }

    fn replicate(&self, scheme: WeightScheme, key: StreamKey) -> Result<f64> {
        let r_n = self.tuning.r_n;
        let d0 = self.control.draw(scheme, key.child(0), r_n)?;
        let da = self.treatment_a.draw(scheme, key.child(1), r_n)?;
        let db = self.treatment_b.draw(scheme, key.child(2), r_n)?;
        let ha = self.objective_a.direction(&da, &d0)?;
        let hb = self.objective_b.direction(&db, &d0)?;
        let (sign, _) = self.sign_offset();
        dominance_derivative_estimate(&self.sets_a, &self.sets_b, &self.contact, &ha, &hb, sign)
    }
}

#[derive(Debug, Clone)]
pub enum Problem {
    Band(BandProblem),
    Dominance(DominanceProblem),
}

/// Bootstrap replicates `lambda*_1 .. lambda*_R` and their critical value.
pub fn bootstrap_statistic_distribution(problem: &Problem, config: &BootstrapConfig) -> Result<BootstrapRun> {
    config.validate()?;
    let base = StreamKey::root(config.seed).child(DOMAIN_BOOTSTRAP);
    let keys: Vec<StreamKey> = (0..config.replicates as u64).map(|r| base.child(r)).collect();
    let replicates = keys
        .par_iter()
        .map(|&key| match problem {
            Problem::Band(p) => p.replicate(config.scheme, key),
            Problem::Dominance(p) => p.replicate(config.scheme, key),
        })
        .collect::<Result<Vec<f64>>>()?;
    let critical_value = critical_value(&replicates, config.alpha)?;
    Ok(BootstrapRun {
        replicates,
        critical_value,
        config: *config,
        stream_ids: keys.iter().map(|k| k.id()).collect(),
    })
}
