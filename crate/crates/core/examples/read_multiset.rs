//! Extract the read multiset of a sample and write it in the reads file
//! format.
//!
//! cargo run --example read_multiset

use metashot::model::Sample;
use metashot::reads::{extract_reads, ReadMultiset};

fn main() -> metashot::Result<()> {
    let sample = Sample::from_strs(&["AGGGT", "CGGGA"])?;
    let reads = extract_reads(&sample, 3)?;
    println!("{} reads, {} distinct", reads.total(), reads.distinct());
    print!("{}", reads.to_text());

    // swapping genome order changes nothing
    let swapped = Sample::from_strs(&["CGGGA", "AGGGT"])?;
    assert_eq!(extract_reads(&swapped, 3)?, reads);
    assert_eq!(ReadMultiset::parse_text(&reads.to_text())?, reads);
    Ok(())
}
