//! Draw a seeded sample of genomes and print it in the sample text format.
//!
//! cargo run --example generate_sample

use metashot::model::{sample_metagenome, Alphabet, Distribution, ProblemSpec};

fn main() -> metashot::Result<()> {
    let alphabet = Alphabet::dna();
    let gc_rich = Distribution::parse(&alphabet, "0.1,0.4,0.4,0.1")?;
    let dists = vec![Distribution::uniform(alphabet), gc_rich];
    let spec = ProblemSpec::new(2, 60, 12, dists)?;

    let sample = sample_metagenome(&spec, 7)?;
    print!("{}", sample.to_text());

    // the same seed always yields the same sample
    assert_eq!(sample, sample_metagenome(&spec, 7)?);
    Ok(())
}
