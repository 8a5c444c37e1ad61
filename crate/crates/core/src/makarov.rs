//! Makarov bounds on the distribution and quantile functions of a treatment
//! effect `X1 - X0` from the two marginal empirical distributions.
//!
//! For a fixed `x`, `g(u) = F1(u) - F0(u - x)` is a right-continuous step
//! function of `u` that jumps up at treated observations and down at shifted
//! control observations `X0j + x`. Its supremum and infimum over the real line
//! are attained at an event point or at the left limit of one, so both bounds
//! are computed exactly by a merge sweep over the events.
//!
//! Shifted control observations are always formed as `X0j + x` in floating
//! point and compared against `u`; every routine in this module (and the
//! bootstrap directions built on top of it) uses that same convention, which
//! keeps the sweep, the candidate enumeration and brute-force checks in exact
//! agreement.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::empirical::{Sample, StepCDF};
use crate::error::{Error, Result};
use crate::valuemap::{CandidateField, Grid, GriddedObjective, Provenance, ValueFunction};

/// Which Makarov bound an objective or band refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

impl BoundSide {
    /// `+1` when the objective is `Pi(F)`, `-1` when it is `-Pi(F)`.
    pub fn sign(self) -> f64 {
        match self {
            BoundSide::Lower => 1.0,
            BoundSide::Upper => -1.0,
        }
    }
}

/// Estimated lower and upper bound functions on a common grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: ValueFunction,
    pub upper: ValueFunction,
    pub grid: Grid,
    pub n0: usize,
    pub n1: usize,
}

/// Supports of the two bound functions, i.e. where they lie strictly inside
/// the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportInfo {
    pub lower_support: (f64, f64),
    pub upper_support: (f64, f64),
    pub global_range: (f64, f64),
}

/// Maximum of `F1(u) - F0(u - x)` and minimum of `1 + F1(u) - F0(u - x)` over
/// all `u`.
///
/// The upper-bound expression is accumulated as `(1 - F0) + F1`, which is
/// exact when `F0` is degenerate.
fn sweep_extrema(f1: &StepCDF, f0: &StepCDF, x: f64) -> (f64, f64) {
    let p1 = f1.jump_points();
    let p0 = f0.jump_points();
    let (m1, m0) = (p1.len(), p0.len());
    let (mut i, mut j) = (0usize, 0usize);
    // u -> -inf: both masses are zero
    let mut best = 0.0f64;
    let mut worst = 1.0f64;
    while i < m1 || j < m0 {
        let a = if i < m1 { p1[i] } else { f64::INFINITY };
        let b = if j < m0 { p0[j] + x } else { f64::INFINITY };
        let loc = a.min(b);
        if a == loc {
            i += 1;
        }
        if b == loc {
            j += 1;
        }
        let g1 = f1.mass_of_first(i);
        let g0 = f0.mass_of_first(j);
        best = best.max(g1 - g0);
        worst = worst.min((1.0 - g0) + g1);
    }
    (best, worst)
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Both bound functions on `grid`, computed by the event sweep.
pub fn bounds(f1: &StepCDF, f0: &StepCDF, grid: &Grid) -> BoundPair {
    let (lower, upper): (Vec<f64>, Vec<f64>) = grid
        .points()
        .par_iter()
        .map(|&x| {
            let (hi, lo) = sweep_extrema(f1, f0, x);
            (clamp_unit(hi), clamp_unit(lo))
        })
        .unzip();
    BoundPair {
        lower: ValueFunction::new(grid.clone(), lower).expect("grid-aligned"),
        upper: ValueFunction::new(grid.clone(), upper).expect("grid-aligned"),
        grid: grid.clone(),
        n0: f0.n().round() as usize,
        n1: f1.n().round() as usize,
    }
}

/// `L(x) = sup_u F1(u) - F0(u - x)` on each grid point.
pub fn lower_bound(f1: &StepCDF, f0: &StepCDF, grid: &Grid) -> ValueFunction {
    let values = grid
        .points()
        .par_iter()
        .map(|&x| clamp_unit(sweep_extrema(f1, f0, x).0))
        .collect();
    ValueFunction::new(grid.clone(), values).expect("grid-aligned")
}

/// `U(x) = 1 + inf_u F1(u) - F0(u - x)` on each grid point.
pub fn upper_bound(f1: &StepCDF, f0: &StepCDF, grid: &Grid) -> ValueFunction {
    let values = grid
        .points()
        .par_iter()
        .map(|&x| clamp_unit(sweep_extrema(f1, f0, x).1))
        .collect();
    ValueFunction::new(grid.clone(), values).expect("grid-aligned")
}

/// A candidate `u` in the Makarov objective at some grid point.
///
/// `treated_jumps` and `control_jumps` count the distinct jumps of `F1` and of
/// the shifted `F0` at or below `u` (strictly below for a left limit), which
/// is all that is needed to evaluate any distribution function sharing those
/// jump points, including weighted bootstrap versions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidatePoint {
    pub u: f64,
    pub left_limit: bool,
    pub treated_jumps: u32,
    pub control_jumps: u32,
}

/// `Pi(F)(u, x) = F1(u) - F0(u - x)` (or its negation) on the finite set of
/// event points and their left limits.
#[derive(Debug, Clone)]
pub struct MakarovObjective {
    objective: GriddedObjective,
    points: Vec<CandidatePoint>,
    offsets: Vec<usize>,
    side: BoundSide,
    treated_jumps: usize,
    control_jumps: usize,
}

impl MakarovObjective {
    pub fn objective(&self) -> &GriddedObjective {
        &self.objective
    }

    pub fn side(&self) -> BoundSide {
        self.side
    }

    pub fn grid(&self) -> &Grid {
        self.objective.grid()
    }

    pub fn candidate_points(&self, x: usize) -> &[CandidatePoint] {
        &self.points[self.offsets[x]..self.offsets[x + 1]]
    }

    /// Number of distinct jumps of the treated and control distributions.
    pub fn jump_counts(&self) -> (usize, usize) {
        (self.treated_jumps, self.control_jumps)
    }

    /// Lazily evaluated direction `scale * sign * (Pi(G) - Pi(F))(u, x)`,
    /// where the perturbation `G - F` of each marginal is given as a table of
    /// differences indexed by jump count (length `jumps + 1`, entry 0 = 0).
    pub fn direction<'a>(
        &'a self,
        treated_delta: &'a [f64],
        control_delta: &'a [f64],
    ) -> Result<MakarovDirection<'a>> {
        if treated_delta.len() != self.treated_jumps + 1 {
            return Err(Error::LengthMismatch {
                expected: self.treated_jumps + 1,
                actual: treated_delta.len(),
            });
        }
        if control_delta.len() != self.control_jumps + 1 {
            return Err(Error::LengthMismatch {
                expected: self.control_jumps + 1,
                actual: control_delta.len(),
            });
        }
        Ok(MakarovDirection {
            objective: self,
            treated_delta,
            control_delta,
        })
    }
}

/// Perturbation of a [`MakarovObjective`] in the same `(x, candidate)` index
/// space, evaluated on demand.
#[derive(Debug, Clone, Copy)]
pub struct MakarovDirection<'a> {
    objective: &'a MakarovObjective,
    treated_delta: &'a [f64],
    control_delta: &'a [f64],
}

impl CandidateField for MakarovDirection<'_> {
    fn grid_len(&self) -> usize {
        self.objective.grid().len()
    }

    fn candidate_count(&self, x: usize) -> usize {
        self.objective.offsets[x + 1] - self.objective.offsets[x]
    }

    fn value(&self, x: usize, candidate: usize) -> f64 {
        let p = &self.objective.points[self.objective.offsets[x] + candidate];
        let d = self.treated_delta[p.treated_jumps as usize]
            - self.control_delta[p.control_jumps as usize];
        self.objective.side.sign() * d
    }
}

/// Enumerate the Makarov objective on `grid`: at each `x`, every distinct
/// event location in `{X1i} ∪ {X0j + x}` contributes its left limit and its
/// right-continuous value.
pub fn makarov_objective(
    f1: &StepCDF,
    f0: &StepCDF,
    grid: &Grid,
    side: BoundSide,
) -> MakarovObjective {
    let per_x: Vec<Vec<CandidatePoint>> = grid
        .points()
        .par_iter()
        .map(|&x| enumerate_events(f1, f0, x))
        .collect();
    let mut offsets = Vec::with_capacity(grid.len() + 1);
    offsets.push(0);
    let mut points = Vec::with_capacity(per_x.iter().map(Vec::len).sum());
    for list in per_x {
        points.extend(list);
        offsets.push(points.len());
    }
    let sign = side.sign();
    let values = points
        .iter()
        .map(|p| {
            let g = f1.mass_of_first(p.treated_jumps as usize)
                - f0.mass_of_first(p.control_jumps as usize);
            if sign > 0.0 {
                g
            } else {
                -g
            }
        })
        .collect();
    let provenance = match side {
        BoundSide::Lower => Provenance::MakarovLower,
        BoundSide::Upper => Provenance::MakarovUpperNegated,
    };
    let objective = GriddedObjective::from_parts(grid.clone(), offsets.clone(), values, provenance)
        .expect("every grid point has at least one event");
    MakarovObjective {
        objective,
        points,
        offsets,
        side,
        treated_jumps: f1.len(),
        control_jumps: f0.len(),
    }
}

fn enumerate_events(f1: &StepCDF, f0: &StepCDF, x: f64) -> Vec<CandidatePoint> {
    let p1 = f1.jump_points();
    let p0 = f0.jump_points();
    let (m1, m0) = (p1.len(), p0.len());
    let mut out = Vec::with_capacity(2 * (m1 + m0));
    let (mut i, mut j) = (0usize, 0usize);
    while i < m1 || j < m0 {
        let a = if i < m1 { p1[i] } else { f64::INFINITY };
        let b = if j < m0 { p0[j] + x } else { f64::INFINITY };
        let loc = a.min(b);
        out.push(CandidatePoint {
            u: loc,
            left_limit: true,
            treated_jumps: i as u32,
            control_jumps: j as u32,
        });
        if a == loc {
            i += 1;
        }
        if b == loc {
            j += 1;
        }
        out.push(CandidatePoint {
            u: loc,
            left_limit: false,
            treated_jumps: i as u32,
            control_jumps: j as u32,
        });
    }
    out
}

/// Levels within this distance of a breakpoint are treated as the breakpoint.
const LEVEL_TOL: f64 = 1e-9;

/// Bounds on the quantile function of the treatment effect at each `tau`:
/// `lower_q = U^{-1}(tau) = sup_{u in (0, tau)} Q1(u) - Q0(u + 1 - tau)` and
/// `upper_q = L^{-1}(tau) = inf_{u in (tau, 1)} Q1(u) - Q0(u - tau)`.
///
/// Both objectives are left-continuous step functions of `u`, so each piece
/// is represented by its right endpoint: the breakpoints of either quantile
/// function inside the open interval, plus the interval's right end.
pub fn quantile_bounds(f1: &StepCDF, f0: &StepCDF, taus: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut lower_q = Vec::with_capacity(taus.len());
    let mut upper_q = Vec::with_capacity(taus.len());
    let q1 = |u: f64| f1.quantile_snapped(u, LEVEL_TOL);
    let q0 = |u: f64| f0.quantile_snapped(u, LEVEL_TOL);
    for &tau in taus {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::param(format!("quantile level {tau} outside (0, 1)")));
        }
        let shift = 1.0 - tau;

        let mut sup = q1(tau) - q0(1.0);
        let inside_low = |u: f64| u > LEVEL_TOL && u < tau - LEVEL_TOL;
        for &c in f1.cum_probs() {
            if inside_low(c) {
                sup = sup.max(q1(c) - q0(c + shift));
            }
        }
        for &c in f0.cum_probs() {
            let u = c - shift;
            if inside_low(u) {
                sup = sup.max(q1(u) - q0(c));
            }
        }

        let mut inf = q1(1.0) - q0(shift);
        let inside_high = |u: f64| u > tau + LEVEL_TOL && u < 1.0 - LEVEL_TOL;
        for &c in f1.cum_probs() {
            if inside_high(c) {
                inf = inf.min(q1(c) - q0(c - tau));
            }
        }
        for &c in f0.cum_probs() {
            let u = c + tau;
            if inside_high(u) {
                inf = inf.min(q1(u) - q0(c));
            }
        }
        lower_q.push(sup);
        upper_q.push(inf);
    }
    Ok((lower_q, upper_q))
}

/// Smallest and largest `Q1(tau) - Q0(tau)` over the pooled levels
/// `{i / n1} ∪ {j / n0}`, with order-statistic indices computed in integers.
pub fn quantile_difference_range(x1: &Sample, x0: &Sample) -> (f64, f64) {
    let s1 = x1.sorted();
    let s0 = x0.sorted();
    let (a, b) = (s1.values(), s0.values());
    let (n1, n0) = (a.len(), b.len());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    // level i/n1: treated order statistic i, control order statistic ceil(i n0 / n1)
    for i in 1..=n1 {
        let j = (i * n0).div_ceil(n1);
        let d = a[i - 1] - b[j - 1];
        lo = lo.min(d);
        hi = hi.max(d);
    }
    for j in 1..=n0 {
        let i = (j * n1).div_ceil(n0);
        let d = a[i - 1] - b[j - 1];
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

/// Support endpoints of both bounds.
pub fn support_bounds(x1: &Sample, x0: &Sample) -> Result<SupportInfo> {
    if x1.is_empty() || x0.is_empty() {
        return Err(Error::EmptySample);
    }
    let (qd_min, qd_max) = quantile_difference_range(x1, x0);
    let global_range = (x1.min() - x0.max(), x1.max() - x0.min());
    Ok(SupportInfo {
        lower_support: (qd_min, global_range.1),
        upper_support: (global_range.0, qd_max),
        global_range,
    })
}

/// Largest number of points [`default_grid`] will produce.
pub const MAX_GRID_POINTS: usize = 10_000_000;

/// Step used when none is given: the global range split into 512 pieces,
/// or 1 for a degenerate range.
pub fn default_step(support: &SupportInfo) -> f64 {
    let (lo, hi) = support.global_range;
    let width = hi - lo;
    if width > 0.0 {
        width / 512.0
    } else {
        1.0
    }
}

/// Uniform grid with spacing `step` covering the global range, padded by one
/// step on each side.
pub fn default_grid(support: &SupportInfo, step: f64) -> Result<Grid> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::param(format!("grid step must be positive, got {step}")));
    }
    let (lo, hi) = support.global_range;
    let inner = ((hi - lo) / step - 1e-9).ceil().max(0.0);
    if inner > MAX_GRID_POINTS as f64 {
        return Err(Error::param(format!(
            "grid step {step} gives more than {MAX_GRID_POINTS} points"
        )));
    }
    let count = inner as usize + 3;
    let points = (0..count).map(|i| lo + (i as f64 - 1.0) * step).collect();
    Grid::new(points, step)
}

/// Grid covering the union of several global ranges.
pub fn covering_grid(supports: &[SupportInfo], step: f64) -> Result<Grid> {
    let lo = supports.iter().map(|s| s.global_range.0).fold(f64::INFINITY, f64::min);
    let hi = supports.iter().map(|s| s.global_range.1).fold(f64::NEG_INFINITY, f64::max);
    let joint = SupportInfo {
        lower_support: (lo, hi),
        upper_support: (lo, hi),
        global_range: (lo, hi),
    };
    default_grid(&joint, step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::ecdf_build;
    use crate::valuemap::psi;

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec(), "s").unwrap()
    }

    fn cdf(v: &[f64]) -> StepCDF {
        ecdf_build(&sample(v))
    }

    fn grid_of(points: &[f64]) -> Grid {
        Grid::new(points.to_vec(), 0.5).unwrap()
    }

    /// Max/min of F1(u) - F0(u - x) over every raw event and its left limit,
    /// by direct counting.
    fn brute(x1: &[f64], x0: &[f64], x: f64) -> (f64, f64) {
        let (n1, n0) = (x1.len() as f64, x0.len() as f64);
        let at = |u: f64| {
            x1.iter().filter(|&&v| v <= u).count() as f64 / n1
                - x0.iter().filter(|&&v| v + x <= u).count() as f64 / n0
        };
        let below = |u: f64| {
            x1.iter().filter(|&&v| v < u).count() as f64 / n1
                - x0.iter().filter(|&&v| v + x < u).count() as f64 / n0
        };
        let events: Vec<f64> = x1.iter().copied().chain(x0.iter().map(|v| v + x)).collect();
        let mut hi = 0.0f64;
        let mut lo = 0.0f64;
        for &u in &events {
            hi = hi.max(at(u)).max(below(u));
            lo = lo.min(at(u)).min(below(u));
        }
        (hi, 1.0 + lo)
    }

    #[test]
    fn lower_bound_small_example() {
        let (x1, x0) = ([1.0, 2.0], [0.0, 1.0]);
        let g = grid_of(&[1.0, 1.5, 2.5]);
        let l = lower_bound(&cdf(&x1), &cdf(&x0), &g);
        for (k, &x) in g.points().iter().enumerate() {
            assert_eq!(l.values()[k], brute(&x1, &x0, x).0);
        }
        assert_eq!(l.values(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn degenerate_control() {
        let (f1, f0) = (cdf(&[1.0, 3.0]), cdf(&[0.0, 0.0]));
        let g = grid_of(&[0.5, 1.0, 2.0, 3.0, 3.5]);
        let pair = bounds(&f1, &f0, &g);
        assert_eq!(pair.lower.values()[2], 0.5);
        assert_eq!(pair.lower.values()[1], 0.0);
        assert_eq!(pair.upper.values()[2], 0.5);
        for (k, &x) in g.points().iter().enumerate() {
            assert_eq!(pair.lower.values()[k], f1.left_limit(x));
            assert_eq!(pair.upper.values()[k], f1.eval(x));
        }
    }

    #[test]
    fn identical_samples_upper_is_one_at_nonnegative_x() {
        let v = [0.3, -1.2, 2.5, 0.3, 4.0];
        let f = cdf(&v);
        let g = Grid::uniform(-3.0, 0.25, 40).unwrap();
        let u = upper_bound(&f, &f, &g);
        for (k, &x) in g.points().iter().enumerate() {
            if x >= 0.0 {
                assert_eq!(u.values()[k], 1.0, "x = {x}");
            }
        }
    }

    #[test]
    fn objective_matches_sweep() {
        let x1 = [0.1, 0.9, 0.9, 2.3, -0.4];
        let x0 = [0.0, 1.1, 0.2, 0.2];
        let (f1, f0) = (cdf(&x1), cdf(&x0));
        let g = Grid::uniform(-3.0, 0.1, 61).unwrap();
        let lo = makarov_objective(&f1, &f0, &g, BoundSide::Lower);
        let up = makarov_objective(&f1, &f0, &g, BoundSide::Upper);
        let pair = bounds(&f1, &f0, &g);
        assert_eq!(psi(lo.objective()).unwrap().values(), pair.lower.values());
        assert_eq!(lower_bound(&f1, &f0, &g), pair.lower);
        assert_eq!(upper_bound(&f1, &f0, &g), pair.upper);
        let via_psi = psi(up.objective()).unwrap().map(|v| 1.0 - v);
        for (a, b) in via_psi.values().iter().zip(pair.upper.values()) {
            assert!((a - b).abs() <= 1e-15);
        }
        let bound = 2 * (x1.len() + x0.len());
        for k in 0..g.len() {
            assert!(lo.objective().candidates(k).len() <= bound);
        }
    }

    #[test]
    fn direction_evaluates_perturbation() {
        let (f1, f0) = (cdf(&[0.0, 1.0, 2.0]), cdf(&[0.5, 1.5]));
        let g = Grid::uniform(-1.0, 0.5, 5).unwrap();
        let obj = makarov_objective(&f1, &f0, &g, BoundSide::Upper);
        // G1 = F1 + 0.1 on jumps >= 1, G0 = F0
        let d1 = vec![0.0, 0.1, 0.1, 0.1];
        let d0 = vec![0.0, 0.0, 0.0];
        let dir = obj.direction(&d1, &d0).unwrap();
        for x in 0..g.len() {
            for (c, p) in obj.candidate_points(x).iter().enumerate() {
                let expected = if p.treated_jumps >= 1 { -0.1 } else { 0.0 };
                assert_eq!(dir.value(x, c), expected);
            }
        }
        assert!(obj.direction(&d1[..2], &d0).is_err());
    }

    /// Quantile function evaluated exactly: smallest order statistic whose
    /// level reaches `u`.
    fn q(sorted: &[f64], u: f64) -> f64 {
        let n = sorted.len() as f64;
        let k = (u * n).ceil().max(1.0) as usize;
        sorted[k.min(sorted.len()) - 1]
    }

    fn mesh_quantile_bounds(x1: &[f64], x0: &[f64], tau: f64) -> (f64, f64) {
        let mut a = x1.to_vec();
        let mut b = x0.to_vec();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let step = 1e-4;
        let mut sup = f64::NEG_INFINITY;
        let mut inf = f64::INFINITY;
        let mut u = step / 2.0;
        while u < 1.0 {
            if u < tau {
                sup = sup.max(q(&a, u) - q(&b, u + 1.0 - tau));
            } else if u > tau {
                inf = inf.min(q(&a, u) - q(&b, u - tau));
            }
            u += step;
        }
        (sup, inf)
    }

    #[test]
    fn quantile_bounds_small_example() {
        let (x1, x0) = ([1.0, 2.0], [0.0, 1.0]);
        let (lq, uq) = quantile_bounds(&cdf(&x1), &cdf(&x0), &[0.5]).unwrap();
        let (ms, mi) = mesh_quantile_bounds(&x1, &x0, 0.5);
        assert_eq!((lq[0], uq[0]), (ms, mi));
        assert_eq!((lq[0], uq[0]), (0.0, 2.0));
    }

    #[test]
    fn quantile_bounds_match_mesh_oracle() {
        let x1 = [0.3, 1.7, -0.2, 2.2, 0.9, 1.1, 3.0];
        let x0 = [0.0, 0.5, 1.5, -1.0, 0.25];
        let (f1, f0) = (cdf(&x1), cdf(&x0));
        // levels chosen away from breakpoints so the mesh sees every piece
        let taus = [0.13, 0.37, 0.5123, 0.77, 0.91];
        let (lq, uq) = quantile_bounds(&f1, &f0, &taus).unwrap();
        for (k, &tau) in taus.iter().enumerate() {
            let (ms, mi) = mesh_quantile_bounds(&x1, &x0, tau);
            assert_eq!(lq[k], ms, "sup at tau {tau}");
            assert_eq!(uq[k], mi, "inf at tau {tau}");
            assert!(lq[k] <= uq[k]);
        }
    }

    #[test]
    fn quantile_bounds_degenerate_and_errors() {
        let (f1, f0) = (cdf(&[3.0, 3.0]), cdf(&[1.0]));
        let (lq, uq) = quantile_bounds(&f1, &f0, &[0.1, 0.5, 0.9]).unwrap();
        assert!(lq.iter().chain(&uq).all(|&v| v == 2.0));
        assert!(quantile_bounds(&f1, &f0, &[0.0]).is_err());
        assert!(quantile_bounds(&f1, &f0, &[1.0]).is_err());
    }

    #[test]
    fn supports() {
        let s = support_bounds(&sample(&[1.0, 2.0]), &sample(&[0.0, 1.0])).unwrap();
        assert_eq!(s.lower_support, (1.0, 2.0));
        assert_eq!(s.global_range, (0.0, 2.0));

        let s = support_bounds(&sample(&[5.0]), &sample(&[1.0])).unwrap();
        assert_eq!(s.global_range, (4.0, 4.0));
        assert_eq!(s.lower_support, (4.0, 4.0));
        assert_eq!(s.upper_support, (4.0, 4.0));

        // location shift: inner endpoints coincide at the shift
        let x0 = [0.0, 0.5, 2.0, 3.25];
        let x1: Vec<f64> = x0.iter().map(|v| v + 1.5).collect();
        let s = support_bounds(&sample(&x1), &sample(&x0)).unwrap();
        assert_eq!(s.lower_support.0, 1.5);
        assert_eq!(s.upper_support.1, 1.5);
    }

    #[test]
    fn grids() {
        let s = SupportInfo {
            lower_support: (0.0, 1.0),
            upper_support: (0.0, 1.0),
            global_range: (0.0, 1.0),
        };
        assert_eq!(default_grid(&s, 0.5).unwrap().points(), &[-0.5, 0.0, 0.5, 1.0, 1.5]);
        assert!(default_grid(&s, 0.0).is_err());
        assert!(default_grid(&s, -1.0).is_err());

        let d = SupportInfo {
            lower_support: (4.0, 4.0),
            upper_support: (4.0, 4.0),
            global_range: (4.0, 4.0),
        };
        assert_eq!(default_grid(&d, 1.0).unwrap().points(), &[3.0, 4.0, 5.0]);
        assert_eq!(default_step(&d), 1.0);

        // earnings-style range with $100 increments
        let e = SupportInfo {
            lower_support: (0.0, 0.0),
            upper_support: (0.0, 0.0),
            global_range: (-39_483.5, 60_307.9),
        };
        let g = default_grid(&e, 100.0).unwrap();
        assert_eq!(g.first(), -39_583.5);
        assert!(g.last() >= 60_307.9 + 100.0 - 1e-6);
        assert!(g.len() > 990 && g.len() < 1010);
    }
}
