//! Every example runs to completion.

#[allow(dead_code)]
#[path = "../examples/bootstrap_weights.rs"]
mod bootstrap_weights;
#[allow(dead_code)]
#[path = "../examples/cdf_band.rs"]
mod cdf_band;
#[allow(dead_code)]
#[path = "../examples/dominance_test.rs"]
mod dominance_test;
#[allow(dead_code)]
#[path = "../examples/makarov_bounds.rs"]
mod makarov_bounds;
#[allow(dead_code)]
#[path = "../examples/power_curves.rs"]
mod power_curves;
#[allow(dead_code)]
#[path = "../examples/quantile_bounds.rs"]
mod quantile_bounds;
#[allow(dead_code)]
#[path = "../examples/uniform_band.rs"]
mod uniform_band;
#[allow(dead_code)]
#[path = "../examples/value_function.rs"]
mod value_function;

#[test]
fn examples_run() {
    bootstrap_weights::run_example().expect("bootstrap_weights");
    cdf_band::run_example().expect("cdf_band");
    dominance_test::run_example().expect("dominance_test");
    makarov_bounds::run_example().expect("makarov_bounds");
    power_curves::run_example().expect("power_curves");
    quantile_bounds::run_example().expect("quantile_bounds");
    uniform_band::run_example().expect("uniform_band");
    value_function::run_example().expect("value_function");
}
