//! Classify hand-built and random samples, and confirm the small cases
//! against the exhaustive oracle.
//!
//! cargo run --example identifiability_check

use metashot::identifiability::{brute_force_identifiable, check_identifiable};
use metashot::model::{sample_metagenome, Alphabet, Distribution, ProblemSpec, Sample};

fn main() -> metashot::Result<()> {
    for (genomes, l) in [
        (["ABCD", "EFGH"], 3),
        (["AGGGT", "CGGGA"], 3),
        (["AAB", "BAA"], 3),
    ] {
        let sample = Sample::from_strs(&genomes)?;
        let verdict = check_identifiable(&sample, l, 0.0)?;
        let oracle = brute_force_identifiable(&sample, l);
        println!("{genomes:?} L={l}: {} ({})", verdict.tag, verdict.reason);
        match oracle {
            Ok(truth) => println!("    exhaustive oracle: identifiable = {truth}"),
            Err(e) => println!("    exhaustive oracle: {e}"),
        }
    }

    let spec = ProblemSpec::homogeneous(8, 5000, 10, Distribution::uniform(Alphabet::dna()))?;
    for l in [8, 12, 16, 20, 24] {
        let sample = sample_metagenome(&spec.with_read_length(l)?, 1)?;
        let verdict = check_identifiable(&sample, l, 0.05)?;
        println!("random M=8 N=5000 L={l:>2}: {}", verdict.tag);
    }
    Ok(())
}
