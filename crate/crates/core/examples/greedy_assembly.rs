//! Reassemble a random sample from its reads with the greedy overlap
//! assembler.
//!
//! cargo run --example greedy_assembly

use metashot::assembler::greedy_assemble;
use metashot::model::{sample_metagenome, Alphabet, Distribution, ProblemSpec};
use metashot::reads::extract_reads;

fn main() -> metashot::Result<()> {
    let (m, n) = (4, 1000);
    for l in [8, 12, 16, 24] {
        let spec = ProblemSpec::homogeneous(m, n, l, Distribution::uniform(Alphabet::dna()))?;
        let mut recovered = 0;
        for seed in 0..20 {
            let sample = sample_metagenome(&spec, seed)?;
            let reads = extract_reads(&sample, l)?;
            let result = greedy_assemble(&reads, m, n, seed)?;
            recovered += result.recovers(&sample) as u32;
        }
        println!("L = {l:>2}: recovered {recovered}/20");
    }
    Ok(())
}
