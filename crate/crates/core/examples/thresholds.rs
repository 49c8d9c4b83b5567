//! Entropy functionals, the two read-length thresholds and the repeat
//! bounds for a few problem sizes.
//!
//! cargo run --example thresholds

use metashot::experiments::theorem_bounds_report;
use metashot::model::{cross_entropy_f, renyi2_entropy, Alphabet, Distribution, ProblemSpec};

fn main() -> metashot::Result<()> {
    let alphabet = Alphabet::dna();
    let uniform = Distribution::uniform(alphabet.clone());
    let skewed = Distribution::parse(&alphabet, "0.5,0.25,0.125,0.125")?;
    println!("H2(uniform) = {:.6}", renyi2_entropy(&uniform));
    println!("H2(skewed)  = {:.6}", renyi2_entropy(&skewed));
    println!(
        "F(uniform, skewed) = {:.6}",
        cross_entropy_f(&uniform, &skewed)?
    );
    println!();

    println!(
        "{:>4} {:>6} {:>4} {:>8} {:>8} {:>10} {:>10}",
        "M", "N", "L", "lower", "upper", "P(E1)<=", "P(E2)<="
    );
    for (m, n, l) in [(4, 2000, 26), (16, 10_000, 8), (100, 100_000, 40)] {
        let spec = ProblemSpec::homogeneous(m, n, l, uniform.clone())?;
        let r = theorem_bounds_report(&spec)?;
        println!(
            "{m:>4} {n:>6} {l:>4} {:>8.3} {:>8.3} {:>10.3e} {:>10.3e}",
            r.lower_threshold.unwrap_or(f64::NAN),
            r.upper_threshold.unwrap_or(f64::NAN),
            r.overlap_bound,
            r.nonoverlap_bound
        );
    }
    Ok(())
}
