//! Sweep the read length across both thresholds and print the experiment
//! CSV.
//!
//! cargo run --release --example phase_transition

use std::io;

use metashot::experiments::{run_experiment, theorem_bounds_report, ExperimentConfig};

const CONFIG: &str = "\
mode = assembly
genomes = 4
length = 2000
dist = uniform
L = 4,6,8,10,12,14,16,20,26
trials = 100
seed = 1
";

fn main() -> metashot::Result<()> {
    let config = ExperimentConfig::parse(CONFIG)?;
    let r = theorem_bounds_report(&config.spec(26)?)?;
    eprintln!(
        "lower threshold {:.2}, upper threshold {:.2}",
        r.lower_threshold.unwrap_or(f64::NAN),
        r.upper_threshold.unwrap_or(f64::NAN)
    );
    run_experiment(&config, 0)?.write_csv(io::stdout().lock())
}
