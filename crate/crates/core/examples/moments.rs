//! Compare the empirical mean and spread of the B-event count Z with the
//! exact expectation.
//!
//! cargo run --release --example moments

use metashot::experiments::{run_experiment, ExperimentConfig, Mode};
use metashot::model::{Alphabet, Distribution};

fn main() -> metashot::Result<()> {
    let uniform = Distribution::uniform(Alphabet::dna());
    println!(
        "{:>3} {:>6} {:>2} {:>9} {:>9} {:>9}",
        "M", "N", "L", "E[Z]", "mean Z", "Var/E^2"
    );
    for (m, n, l) in [(4, 1000, 5), (4, 1000, 6), (8, 4000, 7), (16, 16_000, 8)] {
        let config =
            ExperimentConfig::homogeneous(Mode::Moments, m, n, uniform.clone(), vec![l], 1000, 3)
                .with_eta(0.1);
        let row = &run_experiment(&config, 0)?.rows[0];
        let ratio = row.z_var.unwrap_or(f64::NAN) / (row.z_mean * row.z_mean);
        println!(
            "{m:>3} {n:>6} {l:>2} {:>9.4} {:>9.4} {ratio:>9.4}",
            row.z_mean_analytic, row.z_mean
        );
    }
    Ok(())
}
