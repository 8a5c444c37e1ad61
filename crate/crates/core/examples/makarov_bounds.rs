//! Makarov bounds on the distribution of a treatment effect from two
//! independent samples, printed on a coarse grid together with the supports
//! of the two bound functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use vfi::empirical::{ecdf_build, Sample};
use vfi::makarov::{bounds, default_grid, support_bounds};

fn normal_sample(n: usize, mean: f64, seed: u64, label: &str) -> vfi::Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Sample::new((0..n).map(|_| mean + rng.sample::<f64, _>(StandardNormal)).collect(), label)
}

pub fn run_example() -> vfi::Result<()> {
    let treated = normal_sample(400, 0.5, 1, "treated")?;
    let control = normal_sample(400, 0.0, 2, "control")?;

    let support = support_bounds(&treated, &control)?;
    println!("lower bound support: {:?}", support.lower_support);
    println!("upper bound support: {:?}", support.upper_support);

    let grid = default_grid(&support, 0.5)?;
    let b = bounds(&ecdf_build(&treated), &ecdf_build(&control), &grid);
    println!("{:>8} {:>8} {:>8}", "x", "L(x)", "U(x)");
    for (k, x) in grid.points().iter().enumerate().step_by(2) {
        println!("{x:>8.2} {:>8.3} {:>8.3}", b.lower.values()[k], b.upper.values()[k]);
    }
    Ok(())
}

fn main() -> vfi::Result<()> {
    run_example()
}
