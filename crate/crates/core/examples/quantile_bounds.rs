//! Bounds on the quantile function of the treatment effect.

use vfi::empirical::{ecdf_build, Sample};
use vfi::makarov::quantile_bounds;

pub fn run_example() -> vfi::Result<()> {
    // earnings-like outcomes with a point mass at zero
    let treated = Sample::new(
        vec![0.0, 0.0, 0.0, 1200.0, 3400.0, 5100.0, 6000.0, 8800.0, 12500.0, 20000.0],
        "treated",
    )?;
    let control = Sample::new(
        vec![0.0, 0.0, 0.0, 0.0, 900.0, 2500.0, 4000.0, 7300.0, 9000.0, 15000.0],
        "control",
    )?;
    let taus = [0.1, 0.25, 0.5, 0.75, 0.9];
    let (lower, upper) = quantile_bounds(&ecdf_build(&treated), &ecdf_build(&control), &taus)?;
    println!("{:>6} {:>10} {:>10}", "tau", "lower", "upper");
    for k in 0..taus.len() {
        println!("{:>6.2} {:>10.1} {:>10.1}", taus[k], lower[k], upper[k]);
    }
    Ok(())
}

fn main() -> vfi::Result<()> {
    run_example()
}
