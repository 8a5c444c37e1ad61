//! Exchangeable bootstrap weights, resampled distribution functions and the
//! bootstrap critical value.

use vfi::bootstrap::{critical_value, draw_weights, resample_ecdf, WeightScheme};
use vfi::empirical::{ecdf_build, Sample};
use vfi::rng::StreamKey;

pub fn run_example() -> vfi::Result<()> {
    let sample = Sample::new(vec![3.1, 0.4, 2.2, 5.0, 0.4, 1.7, 4.4, 2.9], "x")?;
    let original = ecdf_build(&sample);
    let root = StreamKey::root(2024);

    for scheme in [WeightScheme::Multinomial, WeightScheme::Bayesian] {
        let mut sup_dist = Vec::new();
        for r in 0..99 {
            let weights = draw_weights(sample.len(), scheme, &mut root.child(r).rng())?;
            let star = resample_ecdf(&sample, &weights)?;
            let d = original
                .jump_points()
                .iter()
                .map(|&t| (star.eval(t) - original.eval(t)).abs())
                .fold(0.0, f64::max);
            sup_dist.push((sample.len() as f64).sqrt() * d);
        }
        println!("{scheme}: 95% critical value of sqrt(n) sup|F* - F| = {:.4}", critical_value(&sup_dist, 0.05)?);
    }
    Ok(())
}

fn main() -> vfi::Result<()> {
    run_example()
}
