//! Small Monte Carlo power curves for both simulation designs. Pass
//! `--full` for the desk-scale defaults (n = 100, R = 199, 300 repetitions).

use vfi::simulate::{run_experiment, ExperimentConfig, ExperimentKind};

pub fn run_example() -> vfi::Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    for kind in [ExperimentKind::NormalLocation, ExperimentKind::UniformDominance] {
        let base = ExperimentConfig::new(kind);
        let config = if full {
            base
        } else {
            ExperimentConfig {
                n: 50,
                replicates: 49,
                reps: 20,
                deltas: vec![-4.0, 0.0, 4.0],
                ..base
            }
        };
        let curve = run_experiment(&config)?;
        println!("{kind:?}");
        for k in 0..curve.deltas.len() {
            println!(
                "  delta {:>5.1}: reject {:.3} (se {:.3})",
                curve.deltas[k], curve.reject_rates[k], curve.standard_errors[k]
            );
        }
    }
    Ok(())
}

fn main() -> vfi::Result<()> {
    run_example()
}
