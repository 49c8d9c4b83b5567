//! Find a swap witness, apply it, and show that the exchanged sample has
//! the same reads but different genomes.
//!
//! cargo run --example swap_witness

use metashot::identifiability::apply_swap;
use metashot::model::{sample_metagenome, Alphabet, Distribution, ProblemSpec};
use metashot::reads::extract_reads;
use metashot::repeats::{count_b_events, default_eta, find_swap_witness};

fn main() -> metashot::Result<()> {
    let (m, n, l) = (16, 10_000, 8);
    let spec = ProblemSpec::homogeneous(m, n, l, Distribution::uniform(Alphabet::dna()))?;
    let sample = sample_metagenome(&spec, 42)?;
    let eta = default_eta(l, n);
    println!("B events: {}", count_b_events(&sample, l, eta)?);

    let Some(witness) = find_swap_witness(&sample, l, eta)? else {
        println!("no witness for this seed");
        return Ok(());
    };
    witness.verify(&sample)?;
    println!("witness: {witness}");

    let swapped = apply_swap(&sample, &witness)?;
    assert_eq!(extract_reads(&sample, l)?, extract_reads(&swapped, l)?);
    assert!(!swapped.is_permutation_of(&sample));
    println!("same read multiset, not a permutation of the original genomes");
    Ok(())
}
