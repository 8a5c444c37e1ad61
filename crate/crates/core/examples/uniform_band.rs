//! Uniform confidence band for the lower Makarov bound, and a
//! Kolmogorov-Smirnov test of the bound implied by two standard normal
//! marginals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use vfi::bootstrap::{BootstrapConfig, WeightScheme};
use vfi::derivative::Tuning;
use vfi::empirical::Sample;
use vfi::inference::{band_test, uniform_band};
use vfi::makarov::{default_grid, support_bounds, BoundSide};
use vfi::simulate::normal_lower_bound;
use vfi::valuemap::ValueFunction;

pub fn run_example() -> vfi::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut draw = |n: usize| -> Vec<f64> { (0..n).map(|_| rng.sample(StandardNormal)).collect() };
    let treated = Sample::new(draw(100), "treated")?;
    let control = Sample::new(draw(100), "control")?;

    let grid = default_grid(&support_bounds(&treated, &control)?, 0.1)?;
    let tuning = Tuning::for_sample_size(treated.len() + control.len())?;
    let config = BootstrapConfig::new(199, WeightScheme::Multinomial, 7, 0.05)?;

    let (band, run) = uniform_band(BoundSide::Lower, &treated, &control, &grid, &tuning, &config)?;
    println!("c* = {:.4}, half-width = {:.4}", band.c_star, band.c_star / band.r_n);
    let truth = ValueFunction::from_fn(grid.clone(), normal_lower_bound);
    println!("band covers the true lower bound: {}", band.contains(&truth)?);
    println!("mean bootstrap replicate: {:.4}", run.mean());

    let (test, _) = band_test(BoundSide::Lower, &treated, &control, &grid, &truth, &tuning, &config)?;
    println!(
        "KS statistic {:.4} vs critical value {:.4}: reject = {}",
        test.statistic, test.critical_value, test.reject
    );
    Ok(())
}

fn main() -> vfi::Result<()> {
    run_example()
}
