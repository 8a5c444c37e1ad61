use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vfi::bootstrap::{draw_weights, WeightScheme};
use vfi::derivative::{derivative_estimate, eps_argmax, Tuning};
use vfi::empirical::{ecdf_build, Sample};
use vfi::inference::{Band, BandKind};
use vfi::makarov::{bounds, support_bounds};
use vfi::stats::{ks_band_stat, StatKind};
use vfi::valuemap::{Grid, GriddedObjective, Provenance, ValueFunction};

fn lattice(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-12i32..=12).prop_map(|k| k as f64 * 0.25), 1..max)
}

/// Objective and two directions sharing one candidate layout.
fn triple() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    prop::collection::vec(1usize..5, 2..10).prop_flat_map(|shape| {
        let rows = |scale: f64| {
            shape
                .iter()
                .map(|&m| prop::collection::vec(-scale..scale, m))
                .collect::<Vec<_>>()
        };
        (rows(1.0), rows(2.0), rows(2.0))
    })
}

fn objective(rows: Vec<Vec<f64>>) -> GriddedObjective {
    let grid = Grid::uniform(0.0, 0.25, rows.len()).unwrap();
    GriddedObjective::new(grid, rows, Provenance::User).unwrap()
}

fn sup_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn bounds_are_ordered_monotone_cdfs(x1 in lattice(25), x0 in lattice(25)) {
        let (s1, s0) = (Sample::new(x1, "t").unwrap(), Sample::new(x0, "c").unwrap());
        let grid = Grid::uniform(-7.0, 0.125, 113).unwrap();
        let b = bounds(&ecdf_build(&s1), &ecdf_build(&s0), &grid);
        let (lo, hi) = (b.lower.values(), b.upper.values());
        for k in 0..grid.len() {
            prop_assert!((0.0..=1.0).contains(&lo[k]) && (0.0..=1.0).contains(&hi[k]));
            prop_assert!(lo[k] <= hi[k]);
            if k > 0 {
                prop_assert!(lo[k - 1] <= lo[k] && hi[k - 1] <= hi[k]);
            }
        }
    }

    #[test]
    fn bounds_vanish_and_saturate_outside_the_support(x1 in lattice(25), x0 in lattice(25)) {
        let (s1, s0) = (Sample::new(x1, "t").unwrap(), Sample::new(x0, "c").unwrap());
        let info = support_bounds(&s1, &s0).unwrap();
        let grid = Grid::new(vec![info.global_range.0 - 0.5, info.global_range.1], 0.5).unwrap();
        let b = bounds(&ecdf_build(&s1), &ecdf_build(&s0), &grid);
        prop_assert_eq!(b.lower.values()[0], 0.0);
        prop_assert_eq!(b.upper.values()[0], 0.0);
        prop_assert_eq!(b.upper.values()[1], 1.0);
    }

    #[test]
    fn sup_estimators_are_one_lipschitz((f, h, k) in triple(), a_n in 0.01f64..0.5) {
        let d = sup_distance(&h, &k);
        let sets = eps_argmax(&objective(f), &Tuning::with_levels(a_n, 0.5, 1.0).unwrap()).unwrap();
        let (h, k) = (objective(h), objective(k));
        for kind in [StatKind::sup_abs(), StatKind::sup_positive()] {
            let gap = derivative_estimate(kind, &sets, &h).unwrap() - derivative_estimate(kind, &sets, &k).unwrap();
            prop_assert!(gap.abs() <= d + 1e-12);
        }
    }

    #[test]
    fn one_sided_estimators_grow_with_slack((f, h, _) in triple(), a_n in 0.01f64..0.3, extra in 0.0f64..0.5) {
        let f = objective(f);
        let h = objective(h);
        let small = eps_argmax(&f, &Tuning::with_levels(a_n, 0.5, 1.0).unwrap()).unwrap();
        let large = eps_argmax(&f, &Tuning::with_levels(a_n + extra, 0.5, 1.0).unwrap()).unwrap();
        for kind in [StatKind::sup_positive(), StatKind::lp_positive(2.0)] {
            prop_assert!(derivative_estimate(kind, &small, &h).unwrap() <= derivative_estimate(kind, &large, &h).unwrap() + 1e-12);
        }
    }

    #[test]
    fn weights_sum_to_n(n in 1usize..300, seed in any::<u64>(), bayesian in any::<bool>()) {
        let scheme = if bayesian { WeightScheme::Bayesian } else { WeightScheme::Multinomial };
        let w = draw_weights(n, scheme, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(w.len(), n);
        prop_assert!(w.iter().all(|v| *v >= 0.0));
        prop_assert!((w.iter().sum::<f64>() - n as f64).abs() <= 1e-9 * n as f64);
    }

    #[test]
    fn band_membership_is_the_ks_test(
        center in prop::collection::vec(0.0f64..=1.0, 2..30),
        shift in prop::collection::vec(-0.3f64..0.3, 30),
        c_star in 0.1f64..3.0,
        r_n in 2.0f64..30.0,
    ) {
        let grid = Grid::uniform(0.0, 0.1, center.len()).unwrap();
        let cand: Vec<f64> = center.iter().zip(&shift).map(|(c, s)| (c + s).clamp(0.0, 1.0)).collect();
        let center = ValueFunction::new(grid.clone(), center).unwrap();
        let cand = ValueFunction::new(grid, cand).unwrap();
        let band = Band::around(BandKind::Lower, &center, c_star, r_n, 0.05).unwrap();
        let ks = ks_band_stat(&center, &cand, r_n).unwrap().value;
        prop_assert_eq!(ks <= c_star, band.contains(&cand).unwrap());
    }
}
