//! Conservative confidence band for the distribution of the treatment effect
//! and the constant-effect diagnostic, on earnings-like data with many zeros.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp;
use vfi::bootstrap::{BootstrapConfig, WeightScheme};
use vfi::derivative::Tuning;
use vfi::empirical::Sample;
use vfi::inference::{combined_band, constant_effect_check};
use vfi::makarov::{default_grid, support_bounds};

fn earnings(n: usize, zero_share: f64, mean: f64, seed: u64, label: &str) -> vfi::Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exp = Exp::new(1.0 / mean).expect("positive rate");
    let values = (0..n)
        .map(|_| if rng.random::<f64>() < zero_share { 0.0 } else { (rng.sample(exp) / 100.0).round() * 100.0 })
        .collect();
    Sample::new(values, label)
}

pub fn run_example() -> vfi::Result<()> {
    let treated = earnings(185, 0.3, 6000.0, 1, "treated")?;
    let control = earnings(260, 0.4, 4500.0, 2, "control")?;

    let grid = default_grid(&support_bounds(&treated, &control)?, 1000.0)?;
    let tuning = Tuning::for_sample_size(treated.len() + control.len())?;
    let config = BootstrapConfig::new(199, WeightScheme::Multinomial, 11, 0.05)?;
    let (band, _, _) = combined_band(&treated, &control, &grid, &tuning, &config)?;

    println!("{:>9} {:>6} {:>6}", "x", "lo", "hi");
    for (k, x) in grid.points().iter().enumerate() {
        if x.abs() <= 10_000.0 && k % 2 == 0 {
            println!("{x:>9.0} {:>6.3} {:>6.3}", band.lo[k], band.hi[k]);
        }
    }
    for x_star in [0.0, 1000.0] {
        println!("constant effect {x_star} consistent with band: {}", constant_effect_check(&band, x_star)?);
    }
    Ok(())
}

fn main() -> vfi::Result<()> {
    run_example()
}
