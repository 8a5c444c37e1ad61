//! Confidence bands for the Makarov bounds, the combined band for the
//! treatment-effect distribution, the dominance test, and the
//! constant-effect diagnostic.

use serde::{Deserialize, Serialize};

use crate::bootstrap::{
    bootstrap_statistic_distribution, check_alpha, BandProblem, BootstrapConfig, BootstrapRun,
    DominanceHypothesis, DominanceProblem, Problem,
};
use crate::derivative::Tuning;
use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::makarov::BoundSide;
use crate::stats::{dominance_stat, ks_band_stat};
use crate::valuemap::{Grid, ValueFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandKind {
    Lower,
    Upper,
    /// Conservative band for the treatment-effect distribution itself.
    Combined,
}

/// Pointwise limits `[lo(x), hi(x)]` on a grid.
///
/// For single-bound bands `lo = max(center - c*/r_n, 0)` and
/// `hi = min(center + c*/r_n, 1)`. A combined band takes `lo` from the lower
/// bound's band and `hi` from the upper bound's, with `center` the lower
/// bound estimate and `center_upper` the upper one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub kind: BandKind,
    pub grid: Grid,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub center: Vec<f64>,
    pub center_upper: Option<Vec<f64>>,
    pub alpha: f64,
    pub c_star: f64,
    pub c_star_upper: Option<f64>,
    pub r_n: f64,
}

impl Band {
    /// Band of half-width `c_star / r_n` around `center`, clipped to `[0, 1]`.
    pub fn around(kind: BandKind, center: &ValueFunction, c_star: f64, r_n: f64, alpha: f64) -> Result<Band> {
        if !(c_star >= 0.0 && c_star.is_finite()) {
            return Err(Error::param(format!("critical value must be finite and >= 0, got {c_star}")));
        }
        if !(r_n > 0.0 && r_n.is_finite()) {
            return Err(Error::param(format!("r_n must be positive, got {r_n}")));
        }
        check_alpha(alpha)?;
        let half = c_star / r_n;
        let values = center.values();
        Ok(Band {
            kind,
            grid: center.grid().clone(),
            lo: values.iter().map(|c| (c - half).max(0.0)).collect(),
            hi: values.iter().map(|c| (c + half).min(1.0)).collect(),
            center: values.to_vec(),
            center_upper: None,
            alpha,
            c_star,
            c_star_upper: None,
            r_n,
        })
    }

    /// Whether `candidate` lies within the band at every grid point.
    pub fn contains(&self, candidate: &ValueFunction) -> Result<bool> {
        self.grid.ensure_same(candidate.grid(), "band and candidate")?;
        Ok(candidate
            .values()
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (lo, hi))| lo <= v && v <= hi))
    }
}

/// Summary of a bootstrap replicate vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplicateSummary {
    pub count: usize,
    pub mean: f64,
    pub max: f64,
}

impl From<&BootstrapRun> for ReplicateSummary {
    fn from(run: &BootstrapRun) -> Self {
        Self {
            count: run.replicates.len(),
            mean: run.mean(),
            max: run.max(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    /// `r_n`-scaled test statistic.
    pub statistic: f64,
    pub critical_value: f64,
    pub reject: bool,
    pub alpha: f64,
    pub replicates: ReplicateSummary,
}

impl TestResult {
    fn new(statistic: f64, run: &BootstrapRun) -> Self {
        Self {
            statistic,
            critical_value: run.critical_value,
            reject: statistic > run.critical_value,
            alpha: run.config.alpha,
            replicates: run.into(),
        }
    }
}

fn band_kind(side: BoundSide) -> BandKind {
    match side {
        BoundSide::Lower => BandKind::Lower,
        BoundSide::Upper => BandKind::Upper,
    }
}

/// Uniform confidence band for `L` (or `U`) at level `1 - config.alpha`.
pub fn uniform_band(
    side: BoundSide,
    treated: &Sample,
    control: &Sample,
    grid: &Grid,
    tuning: &Tuning,
    config: &BootstrapConfig,
) -> Result<(Band, BootstrapRun)> {
    let problem = BandProblem::new(treated, control, side, grid, tuning)?;
    let center = problem.estimate();
    let run = bootstrap_statistic_distribution(&Problem::Band(problem), config)?;
    let band = Band::around(band_kind(side), &center, run.critical_value, tuning.r_n, config.alpha)?;
    Ok((band, run))
}

/// Test of `H0: L = null` (or `U = null`) with the Kolmogorov-Smirnov
/// statistic `r_n sup |L_n - null|`.
pub fn band_test(
    side: BoundSide,
    treated: &Sample,
    control: &Sample,
    grid: &Grid,
    null: &ValueFunction,
    tuning: &Tuning,
    config: &BootstrapConfig,
) -> Result<(TestResult, BootstrapRun)> {
    let problem = BandProblem::new(treated, control, side, grid, tuning)?;
    let statistic = ks_band_stat(&problem.estimate(), null, tuning.r_n)?.value;
    let run = bootstrap_statistic_distribution(&Problem::Band(problem), config)?;
    Ok((TestResult::new(statistic, &run), run))
}

/// Combine a lower-bound band and an upper-bound band, each at level
/// `alpha / 2`, into a band for the distribution of the treatment effect.
///
/// The limits are re-monotonized: `lo` by a running maximum from the left and
/// `hi` by a running minimum from the right.
pub fn cdf_band(lower: &Band, upper: &Band) -> Result<Band> {
    if lower.kind != BandKind::Lower || upper.kind != BandKind::Upper {
        return Err(Error::param("cdf_band needs a lower-bound band and an upper-bound band"));
    }
    lower.grid.ensure_same(&upper.grid, "lower and upper bands")?;
    if lower.alpha != upper.alpha {
        return Err(Error::param(format!(
            "band levels differ: {} vs {}",
            lower.alpha, upper.alpha
        )));
    }
    let mut lo = lower.lo.clone();
    for k in 1..lo.len() {
        lo[k] = lo[k].max(lo[k - 1]);
    }
    let mut hi = upper.hi.clone();
    for k in (0..hi.len().saturating_sub(1)).rev() {
        hi[k] = hi[k].min(hi[k + 1]);
    }
    Ok(Band {
        kind: BandKind::Combined,
        grid: lower.grid.clone(),
        lo,
        hi,
        center: lower.center.clone(),
        center_upper: Some(upper.center.clone()),
        alpha: (2.0 * lower.alpha).min(1.0),
        c_star: lower.c_star,
        c_star_upper: Some(upper.c_star),
        r_n: lower.r_n,
    })
}

/// Lower and upper bands at `alpha / 2` each, and their combination.
pub fn combined_band(
    treated: &Sample,
    control: &Sample,
    grid: &Grid,
    tuning: &Tuning,
    config: &BootstrapConfig,
) -> Result<(Band, BootstrapRun, BootstrapRun)> {
    let half = BootstrapConfig {
        alpha: config.alpha / 2.0,
        ..*config
    };
    let (lower, run_lower) = uniform_band(BoundSide::Lower, treated, control, grid, tuning, &half)?;
    let (upper, run_upper) = uniform_band(BoundSide::Upper, treated, control, grid, tuning, &half)?;
    Ok((cdf_band(&lower, &upper)?, run_lower, run_upper))
}

/// Dominance breakdown test of `L_A - U_B <= 0` (necessary) or
/// `U_A - L_B <= 0` (sufficient) with the one-sided `L_2` statistic.
pub fn dominance_test(
    control: &Sample,
    treatment_a: &Sample,
    treatment_b: &Sample,
    grid: &Grid,
    hypothesis: DominanceHypothesis,
    tuning: &Tuning,
    config: &BootstrapConfig,
) -> Result<(TestResult, BootstrapRun)> {
    let problem = DominanceProblem::new(control, treatment_a, treatment_b, grid, hypothesis, tuning)?;
    let (first, second) = problem.bound_pair()?;
    let statistic = dominance_stat(&first, &second, tuning.r_n)?.value;
    let run = bootstrap_statistic_distribution(&Problem::Dominance(problem), config)?;
    Ok((TestResult::new(statistic, &run), run))
}

/// Whether the distribution of a constant effect `x_star`, the step
/// `I(x >= x_star)`, lies inside the band at every grid point.
pub fn constant_effect_check(band: &Band, x_star: f64) -> Result<bool> {
    if !(x_star >= band.grid.first() && x_star <= band.grid.last()) {
        return Err(Error::param(format!(
            "x* = {x_star} outside the grid [{}, {}]",
            band.grid.first(),
            band.grid.last()
        )));
    }
    Ok(band
        .grid
        .points()
        .iter()
        .zip(band.lo.iter().zip(&band.hi))
        .all(|(&x, (lo, hi))| {
            let step = if x >= x_star { 1.0 } else { 0.0 };
            *lo <= step && step <= *hi
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bootstrap::WeightScheme;
    use crate::makarov::{covering_grid, default_grid, support_bounds};

    fn grid4() -> Grid {
        Grid::uniform(0.0, 1.0, 4).unwrap()
    }

    fn vf(values: Vec<f64>) -> ValueFunction {
        ValueFunction::new(Grid::uniform(0.0, 1.0, values.len()).unwrap(), values).unwrap()
    }

    #[test]
    fn band_clipping() {
        let center = vf(vec![0.0, 0.3, 0.9, 1.0]);
        let band = Band::around(BandKind::Lower, &center, 2.0, 10.0, 0.05).unwrap();
        assert_eq!(band.lo, vec![0.0, 0.3 - 0.2, 0.9 - 0.2, 0.8]);
        assert_eq!(band.hi, vec![0.2, 0.5, 1.0, 1.0]);
        for k in 0..4 {
            assert!(band.lo[k] <= band.center[k] && band.center[k] <= band.hi[k]);
        }
        assert!(Band::around(BandKind::Lower, &center, -1.0, 10.0, 0.05).is_err());
    }

    #[test]
    fn band_shrinks_with_critical_value() {
        let center = vf(vec![0.1, 0.4, 0.6, 0.95]);
        let wide = Band::around(BandKind::Upper, &center, 3.0, 10.0, 0.05).unwrap();
        let narrow = Band::around(BandKind::Upper, &center, 0.5, 10.0, 0.5).unwrap();
        for k in 0..4 {
            assert!(wide.lo[k] <= narrow.lo[k] && narrow.hi[k] <= wide.hi[k]);
        }
    }

    #[test]
    fn cdf_band_zero_critical_values() {
        let l = vf(vec![0.0, 0.2, 0.5, 0.9]);
        let u = vf(vec![0.3, 0.6, 1.0, 1.0]);
        let lower = Band::around(BandKind::Lower, &l, 0.0, 10.0, 0.025).unwrap();
        let upper = Band::around(BandKind::Upper, &u, 0.0, 10.0, 0.025).unwrap();
        let band = cdf_band(&lower, &upper).unwrap();
        assert_eq!(band.lo, l.values());
        assert_eq!(band.hi, u.values());
        assert_eq!(band.alpha, 0.05);
        assert!(cdf_band(&upper, &lower).is_err());
        let other = Band::around(BandKind::Upper, &u, 0.0, 10.0, 0.05).unwrap();
        assert!(cdf_band(&lower, &other).is_err());
    }

    #[test]
    fn cdf_band_envelope_is_monotone() {
        let lower = Band {
            lo: vec![0.1, 0.05, 0.3, 0.2],
            ..Band::around(BandKind::Lower, &vf(vec![0.1, 0.1, 0.3, 0.3]), 0.0, 1.0, 0.1).unwrap()
        };
        let upper = Band {
            hi: vec![0.8, 0.6, 0.9, 0.7],
            ..Band::around(BandKind::Upper, &vf(vec![0.5, 0.6, 0.7, 0.7]), 0.0, 1.0, 0.1).unwrap()
        };
        let band = cdf_band(&lower, &upper).unwrap();
        assert_eq!(band.lo, vec![0.1, 0.1, 0.3, 0.3]);
        assert_eq!(band.hi, vec![0.6, 0.6, 0.7, 0.7]);
    }

    #[test]
    fn constant_effect_examples() {
        let g = grid4();
        let vacuous = Band {
            kind: BandKind::Combined,
            grid: g.clone(),
            lo: vec![0.0; 4],
            hi: vec![1.0; 4],
            center: vec![0.5; 4],
            center_upper: None,
            alpha: 0.05,
            c_star: 0.0,
            c_star_upper: None,
            r_n: 1.0,
        };
        for x in [0.0, 1.5, 3.0] {
            assert!(constant_effect_check(&vacuous, x).unwrap());
        }
        let mut tight = vacuous.clone();
        tight.lo[0] = 0.1;
        assert!(!constant_effect_check(&tight, 2.0).unwrap());
        assert!(constant_effect_check(&tight, 0.0).unwrap());
        assert!(constant_effect_check(&vacuous, 3.5).is_err());
    }

    fn sample(values: Vec<f64>, label: &str) -> Sample {
        Sample::new(values, label).unwrap()
    }

    #[test]
    fn degenerate_samples_band_structure() {
        let x1 = sample(vec![0.0; 20], "t");
        let x0 = sample(vec![0.0; 20], "c");
        let grid = Grid::uniform(-1.0, 0.25, 9).unwrap();
        let tuning = Tuning::for_sample_size(40).unwrap();
        let config = BootstrapConfig::new(19, WeightScheme::Multinomial, 3, 0.1).unwrap();
        let (band, run) = uniform_band(BoundSide::Upper, &x1, &x0, &grid, &tuning, &config).unwrap();
        let step: Vec<f64> = grid.points().iter().map(|&x| if x >= 0.0 { 1.0 } else { 0.0 }).collect();
        assert_eq!(band.center, step);
        assert_eq!(run.replicates, vec![0.0; 19]);
        assert_eq!(band.lo, band.center);
    }

    #[test]
    fn dominance_statistic_zero_when_a_far_above() {
        let x0: Vec<f64> = (0..20).map(|i| i as f64 / 20.0).collect();
        let xb: Vec<f64> = (0..20).map(|i| i as f64 / 19.0).collect();
        let xa: Vec<f64> = xb.iter().map(|v| v + 5.0).collect();
        let (x0, xa, xb) = (sample(x0, "c"), sample(xa, "a"), sample(xb, "b"));
        let supports = [support_bounds(&xa, &x0).unwrap(), support_bounds(&xb, &x0).unwrap()];
        let grid = covering_grid(&supports, 0.1).unwrap();
        let tuning = Tuning::for_sample_size(60).unwrap();
        let config = BootstrapConfig::new(19, WeightScheme::Multinomial, 1, 0.05).unwrap();
        let (result, _) = dominance_test(
            &x0,
            &xa,
            &xb,
            &grid,
            DominanceHypothesis::Necessary,
            &tuning,
            &config,
        )
        .unwrap();
        assert_eq!(result.statistic, 0.0);
        assert!(!result.reject);
        assert_eq!(result.reject, result.statistic > result.critical_value);
    }

    #[test]
    fn combined_band_contains_bounds() {
        let x1 = sample((0..30).map(|i| ((i * 7) % 30) as f64 / 10.0).collect(), "t");
        let x0 = sample((0..30).map(|i| ((i * 11) % 30) as f64 / 15.0).collect(), "c");
        let grid = default_grid(&support_bounds(&x1, &x0).unwrap(), 0.1).unwrap();
        let tuning = Tuning::for_sample_size(60).unwrap();
        let config = BootstrapConfig::new(39, WeightScheme::Bayesian, 8, 0.1).unwrap();
        let (band, lower_run, upper_run) = combined_band(&x1, &x0, &grid, &tuning, &config).unwrap();
        assert_eq!(lower_run.config.alpha, 0.05);
        assert_eq!(upper_run.config.alpha, 0.05);
        let upper = band.center_upper.as_ref().unwrap();
        for k in 0..grid.len() {
            assert!(band.lo[k] <= band.center[k]);
            assert!(upper[k] <= band.hi[k]);
            assert!(band.lo[k] <= band.hi[k]);
        }
    }
}
