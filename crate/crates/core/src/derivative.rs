//! Near-maximizer set estimation and plug-in estimates of the directional
//! derivatives of `lambda_1 .. lambda_4`.
//!
//! All set estimates are index sets into the candidate layout of the
//! estimated objective `f_n`. Directions `h` are anything implementing
//! [`CandidateField`] over the same layout, so bootstrap perturbations can be
//! evaluated lazily on just the candidates that matter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::StatKind;
use crate::valuemap::{psi, CandidateField, Grid, GriddedObjective};

/// Smallest combined sample size accepted by [`Tuning::for_sample_size`].
pub const MIN_SAMPLE_SIZE: usize = 16;

pub const DEFAULT_A_CONST: f64 = 0.2;
pub const DEFAULT_B_CONST: f64 = 3.0;

/// Slack sequences for set estimation and the rate `r_n`.
///
/// `a_n = a_const * log(log n) / sqrt(n)`, `b_n = b_const * log(log n) / sqrt(n)`
/// and `r_n = sqrt(n)`, where `n` is the combined size of all samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tuning {
    pub a_const: f64,
    pub b_const: f64,
    pub a_n: f64,
    pub b_n: f64,
    pub r_n: f64,
    pub n: usize,
}

impl Tuning {
    pub fn for_sample_size(n: usize) -> Result<Self> {
        Self::with_constants(n, DEFAULT_A_CONST, DEFAULT_B_CONST)
    }

    pub fn with_constants(n: usize, a_const: f64, b_const: f64) -> Result<Self> {
        if n < MIN_SAMPLE_SIZE {
            return Err(Error::SampleTooSmall {
                n,
                min: MIN_SAMPLE_SIZE,
            });
        }
        if !(a_const > 0.0 && a_const.is_finite() && b_const > 0.0 && b_const.is_finite()) {
            return Err(Error::param(format!(
                "tuning constants must be positive, got a = {a_const}, b = {b_const}"
            )));
        }
        let nf = n as f64;
        let rate = nf.ln().ln() / nf.sqrt();
        Ok(Self {
            a_const,
            b_const,
            a_n: a_const * rate,
            b_n: b_const * rate,
            r_n: nf.sqrt(),
            n,
        })
    }

    /// Tuning with the slack levels given directly.
    pub fn with_levels(a_n: f64, b_n: f64, r_n: f64) -> Result<Self> {
        if !(a_n > 0.0 && b_n > 0.0 && r_n > 0.0) || !(a_n.is_finite() && b_n.is_finite() && r_n.is_finite()) {
            return Err(Error::param("a_n, b_n and r_n must be positive and finite"));
        }
        Ok(Self {
            a_const: f64::NAN,
            b_const: f64::NAN,
            a_n,
            b_n,
            r_n,
            n: 0,
        })
    }
}

/// Estimated near-maximizer sets of an objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ArgmaxSets {
    grid: Grid,
    counts: Vec<usize>,
    offsets: Vec<usize>,
    per_x: Vec<u32>,
    joint: Vec<(u32, u32)>,
    contact: Vec<usize>,
    contact_fallback: bool,
    value_function: Vec<f64>,
}

impl ArgmaxSets {
    /// Candidates at grid point `x` within `a_n` of `psi(f)(x)`.
    pub fn per_x(&self, x: usize) -> &[u32] {
        &self.per_x[self.offsets[x]..self.offsets[x + 1]]
    }

    /// `(x, candidate)` pairs within `a_n` of the global maximum.
    pub fn joint(&self) -> &[(u32, u32)] {
        &self.joint
    }

    /// Grid indices where `|psi(f)| <= b_n`, or the whole grid if none are.
    pub fn contact(&self) -> &[usize] {
        &self.contact
    }

    /// Whether [`contact`](Self::contact) fell back to the full grid.
    pub fn contact_fell_back(&self) -> bool {
        self.contact_fallback
    }

    pub fn value_function(&self) -> &[f64] {
        &self.value_function
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn grid_len(&self) -> usize {
        self.grid.len()
    }

    fn check_shape<H: CandidateField + ?Sized>(&self, h: &H) -> Result<()> {
        if h.grid_len() != self.grid.len() {
            return Err(Error::ShapeMismatch(format!(
                "direction has {} grid points, sets have {}",
                h.grid_len(),
                self.grid.len()
            )));
        }
        for (x, &c) in self.counts.iter().enumerate() {
            if h.candidate_count(x) != c {
                return Err(Error::ShapeMismatch(format!(
                    "grid point {x}: direction has {} candidates, objective has {c}",
                    h.candidate_count(x)
                )));
            }
        }
        Ok(())
    }

    /// `sup_{u in per_x(x)} h(u, x)` for every grid point.
    fn local_sups<H: CandidateField + ?Sized>(&self, h: &H) -> Vec<f64> {
        (0..self.grid.len())
            .map(|x| {
                self.per_x(x)
                    .iter()
                    .map(|&c| h.value(x, c as usize))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect()
    }
}

/// Grid indices with `|values| <= b_n`; the full grid when that set is empty.
pub fn contact_set(values: &[f64], b_n: f64) -> (Vec<usize>, bool) {
    let near: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() <= b_n)
        .map(|(k, _)| k)
        .collect();
    if near.is_empty() {
        ((0..values.len()).collect(), true)
    } else {
        (near, false)
    }
}

/// Plug-in near-maximizer sets of `f` with slack `tuning.a_n` and contact
/// threshold `tuning.b_n`.
pub fn eps_argmax(f: &GriddedObjective, tuning: &Tuning) -> Result<ArgmaxSets> {
    let vf = psi(f)?;
    let grid = f.grid().clone();
    let a_n = tuning.a_n;
    let global = vf.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut counts = Vec::with_capacity(grid.len());
    let mut offsets = Vec::with_capacity(grid.len() + 1);
    let mut per_x = Vec::new();
    let mut joint = Vec::new();
    offsets.push(0);
    for x in 0..grid.len() {
        let cands = f.candidates(x);
        let threshold = vf.values()[x] - a_n;
        for (c, &v) in cands.iter().enumerate() {
            if v >= threshold {
                per_x.push(c as u32);
            }
            if v >= global - a_n {
                joint.push((x as u32, c as u32));
            }
        }
        counts.push(cands.len());
        offsets.push(per_x.len());
    }
    let (contact, contact_fallback) = contact_set(vf.values(), tuning.b_n);
    Ok(ArgmaxSets {
        grid,
        counts,
        offsets,
        per_x,
        joint,
        contact,
        contact_fallback,
        value_function: vf.values().to_vec(),
    })
}

/// Plug-in estimate of `lambda_j'(h)` that imposes the null hypothesis.
///
/// With `s(x) = sup_{u in U(x, a_n)} h(u, x)`:
/// - `j = 1`: `max{ sup_x s(x), sup_x inf_{u in U(x, a_n)} -h(u, x) }`
/// - `j = 2`: `[ sup over the joint near-maximizers of h ]_+`
/// - `j = 3`: `(∫ |s|^p dm)^(1/p)`
/// - `j = 4`: `(∫ over the contact set [s]_+^p dm)^(1/p)`
pub fn derivative_estimate<H: CandidateField + ?Sized>(
    kind: StatKind,
    sets: &ArgmaxSets,
    h: &H,
) -> Result<f64> {
    kind.validate()?;
    sets.check_shape(h)?;
    let weights = sets.grid.weights();
    let value = match kind.j {
        1 => {
            let s = sets.local_sups(h);
            let sup = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            // inf_u -h = -sup_u h, pointwise in x
            let maximin = s.iter().map(|v| -v).fold(f64::NEG_INFINITY, f64::max);
            sup.max(maximin)
        }
        2 => sets
            .joint
            .iter()
            .map(|&(x, c)| h.value(x as usize, c as usize))
            .fold(0.0, f64::max),
        3 => {
            let s = sets.local_sups(h);
            let total: f64 = s
                .iter()
                .zip(&weights)
                .map(|(v, w)| v.abs().powf(kind.p) * w)
                .sum();
            total.powf(1.0 / kind.p)
        }
        _ => {
            let total: f64 = sets
                .contact
                .iter()
                .map(|&x| {
                    let s = sets
                        .per_x(x)
                        .iter()
                        .map(|&c| h.value(x, c as usize))
                        .fold(f64::NEG_INFINITY, f64::max);
                    s.max(0.0).powf(kind.p) * weights[x]
                })
                .sum();
            total.powf(1.0 / kind.p)
        }
    };
    Ok(value)
}

/// Derivative estimate for the one-sided `L_2` statistic of a bound
/// difference `sign * (psi(f_a) + psi(f_b)) + const`:
///
/// `( ∫_contact [ sign * (sup_{U_a(x)} h_a + sup_{U_b(x)} h_b) ]_+^2 dm )^(1/2)`
///
/// `sign = 1` gives the lower-minus-upper difference, whose directional
/// derivative adds the two near-maximizer sups; `sign = -1` gives
/// upper-minus-lower.
pub fn dominance_derivative_estimate<A, B>(
    sets_a: &ArgmaxSets,
    sets_b: &ArgmaxSets,
    contact: &[usize],
    h_a: &A,
    h_b: &B,
    sign: f64,
) -> Result<f64>
where
    A: CandidateField + ?Sized,
    B: CandidateField + ?Sized,
{
    sets_a.grid.ensure_same(&sets_b.grid, "dominance sets")?;
    sets_a.check_shape(h_a)?;
    sets_b.check_shape(h_b)?;
    if let Some(&bad) = contact.iter().find(|&&x| x >= sets_a.grid.len()) {
        return Err(Error::param(format!("contact index {bad} outside grid")));
    }
    let weights = sets_a.grid.weights();
    let total: f64 = contact
        .iter()
        .map(|&x| {
            let sa = sets_a
                .per_x(x)
                .iter()
                .map(|&c| h_a.value(x, c as usize))
                .fold(f64::NEG_INFINITY, f64::max);
            let sb = sets_b
                .per_x(x)
                .iter()
                .map(|&c| h_b.value(x, c as usize))
                .fold(f64::NEG_INFINITY, f64::max);
            (sign * (sa + sb)).max(0.0).powi(2) * weights[x]
        })
        .sum();
    Ok(total.sqrt())
}
