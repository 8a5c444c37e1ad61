//! The value map and derivative estimators on a hand-built objective
//! `f(u, x) = -(u - x)^2` over a finite choice set, perturbed by noise.

use vfi::derivative::{derivative_estimate, eps_argmax, Tuning};
use vfi::stats::{lambda, StatKind};
use vfi::valuemap::{psi, Grid, GriddedObjective, Provenance};

pub fn run_example() -> vfi::Result<()> {
    let grid = Grid::uniform(-1.0, 0.25, 9)?;
    let choices: Vec<f64> = (-4..=4).map(|k| k as f64 / 4.0).collect();
    let rows: Vec<Vec<f64>> = grid
        .points()
        .iter()
        .map(|&x| choices.iter().map(|&u| -(u - x).powi(2) + 0.01 * (7.0 * u + 3.0 * x).sin()).collect())
        .collect();
    let f = GriddedObjective::new(grid.clone(), rows, Provenance::User)?;

    let vf = psi(&f)?;
    let witness = vf.argmax_witness().expect("psi records maximizers");
    for (k, x) in grid.points().iter().enumerate() {
        println!("x = {x:>5.2}: psi = {:>7.4} at u = {:>5.2}", vf.values()[k], choices[witness[k]]);
    }
    for kind in [StatKind::sup_abs(), StatKind::sup_positive(), StatKind::lp_abs(2.0), StatKind::lp_positive(2.0)] {
        println!("lambda_{}(f) = {:.4}", kind.j, lambda(&f, kind)?.value);
    }

    let tuning = Tuning::with_levels(0.02, 0.05, 1.0)?;
    let sets = eps_argmax(&f, &tuning)?;
    let h = f.map(|v| v.cos());
    for j in 1..=4 {
        let kind = StatKind::new(j, 2.0)?;
        println!("derivative estimate j = {j}: {:.4}", derivative_estimate(kind, &sets, &h)?);
    }
    Ok(())
}

fn main() -> vfi::Result<()> {
    run_example()
}
