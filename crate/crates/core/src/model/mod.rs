//! Alphabets, symbol distributions, problem specifications and genome
//! sampling, plus the entropy functionals that set the read-length
//! thresholds.

mod alphabet;
mod distribution;
pub mod entropy;
mod sample;

pub use alphabet::Alphabet;
pub use distribution::{Distribution, NORMALIZATION_TOLERANCE};
pub use entropy::{
    cross_entropy_f, lower_threshold, max_genomes_upper, renyi2_entropy, upper_threshold,
};
pub use sample::{sample_metagenome, ProblemSpec, Sample};
