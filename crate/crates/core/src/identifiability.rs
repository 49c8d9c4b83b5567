//! Three-valued identifiability classification and the exhaustive oracle it
//! is checked against.
//!
//! A sample whose `(L-1)`-windows are all distinct is identifiable. A sample
//! with a verified [`SwapWitness`] is not. Anything else is reported as
//! [`VerdictTag::Unknown`]: both criteria are sufficient conditions only.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Sample;
use crate::repeats::{all_segments_distinct, find_swap_witness, SwapWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictTag {
    Identifiable,
    NonIdentifiable,
    Unknown,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictTag::Identifiable => "Identifiable",
            VerdictTag::NonIdentifiable => "NonIdentifiable",
            VerdictTag::Unknown => "Unknown",
        })
    }
}

impl FromStr for VerdictTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Identifiable" => Ok(VerdictTag::Identifiable),
            "NonIdentifiable" => Ok(VerdictTag::NonIdentifiable),
            "Unknown" => Ok(VerdictTag::Unknown),
            other => Err(Error::parse(0, format!("unknown verdict {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentVerdict {
    pub tag: VerdictTag,
    /// Present iff `tag` is `NonIdentifiable`.
    pub witness: Option<SwapWitness>,
    pub reason: String,
}

/// Classify `sample` for read length `l` (at least 2). The swap search is
/// restricted to positions in the `eta` window and is skipped when
/// `l > N - 2`.
pub fn check_identifiable(sample: &Sample, l: usize, eta: f64) -> Result<IdentVerdict> {
    let n = sample.genome_length();
    if l < 2 || l > n {
        return Err(Error::out_of_range("L", l, format!("2 <= L <= N = {n}")));
    }
    if all_segments_distinct(sample, l - 1)? {
        return Ok(IdentVerdict {
            tag: VerdictTag::Identifiable,
            witness: None,
            reason: format!("all {}-segments are distinct", l - 1),
        });
    }
    if l + 2 <= n {
        if let Some(w) = find_swap_witness(sample, l, eta)? {
            let reason = format!(
                "genomes {} and {} share {} at position {} with different prefixes and suffixes",
                w.m,
                w.m2,
                String::from_utf8_lossy(&w.w),
                w.j
            );
            return Ok(IdentVerdict {
                tag: VerdictTag::NonIdentifiable,
                witness: Some(w),
                reason,
            });
        }
    }
    Ok(IdentVerdict {
        tag: VerdictTag::Unknown,
        witness: None,
        reason: format!(
            "a repeat of length {} exists but no swap witness was found",
            l - 1
        ),
    })
}

/// Exchange the suffixes after the shared word: `X^m = a w b`, `X^m2 = c w d`
/// become `a w d` and `c w b`. Other genomes are unchanged.
pub fn apply_swap(sample: &Sample, witness: &SwapWitness) -> Result<Sample> {
    witness.check_windows(sample)?;
    let cut = witness.j - 1 + witness.read_length();
    let mut genomes = sample.genomes().to_vec();
    let (i, k) = (witness.m - 1, witness.m2 - 1);
    let tail_i = genomes[i].split_off(cut);
    let tail_k = genomes[k].split_off(cut);
    genomes[i].extend_from_slice(&tail_k);
    genomes[k].extend_from_slice(&tail_i);
    Sample::new(sample.alphabet().clone(), genomes)
}

/// Default limit on the number of candidate samples enumerated.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 1 << 20;

/// Exhaustive identifiability check: enumerate every sample with the same
/// `M`, `N` and alphabet, and look for one with the same reads that is not
/// a permutation of the input.
#[derive(Clone, Copy, Debug)]
pub struct BruteForce {
    cap: u64,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            cap: DEFAULT_BRUTE_FORCE_CAP,
        }
    }
}

impl BruteForce {
    pub fn with_cap(cap: u64) -> Self {
        BruteForce { cap }
    }

    pub fn identifiable(&self, sample: &Sample, l: usize) -> Result<bool> {
        let (m, n) = (sample.num_genomes(), sample.genome_length());
        if l == 0 || l > n {
            return Err(Error::out_of_range("L", l, format!("1 <= L <= N = {n}")));
        }
        let k = sample.alphabet().len() as u64;
        let cells = (m * n) as u32;
        let candidates = match k.checked_pow(cells) {
            Some(c) if c <= self.cap => c,
            _ => {
                return Err(Error::BruteForceRefused {
                    candidates: format!("{k}^{cells}"),
                    cap: self.cap,
                })
            }
        };

        let alphabet = sample.alphabet();
        let digits: Vec<u8> = sample
            .genomes()
            .iter()
            .flatten()
            .map(|&b| alphabet.index_of(b).expect("sample validated") as u8)
            .collect();
        let target_codes = read_codes(&digits, m, n, l, k);
        let target_genomes = sorted_genomes(&digits, n);

        let ok = (0..candidates).into_par_iter().map_init(
            || (vec![0u8; m * n], Vec::with_capacity(m * (n - l + 1))),
            |(cand, codes), idx| {
                let mut rest = idx;
                for d in cand.iter_mut() {
                    *d = (rest % k) as u8;
                    rest /= k;
                }
                *codes = read_codes(cand, m, n, l, k);
                *codes != target_codes || sorted_genomes(cand, n) == target_genomes
            },
        );
        Ok(ok.all(|same_class| same_class))
    }
}

/// Sorted mixed-radix codes of every length-`l` window.
fn read_codes(digits: &[u8], m: usize, n: usize, l: usize, k: u64) -> Vec<u64> {
    let mut codes = Vec::with_capacity(m * (n - l + 1));
    for g in digits.chunks_exact(n) {
        for w in g.windows(l) {
            codes.push(w.iter().fold(0u64, |c, &d| c * k + d as u64));
        }
    }
    codes.sort_unstable();
    codes
}

fn sorted_genomes(digits: &[u8], n: usize) -> Vec<&[u8]> {
    let mut g: Vec<&[u8]> = digits.chunks_exact(n).collect();
    g.sort_unstable();
    g
}

/// [`BruteForce::identifiable`] with the default cap.
pub fn brute_force_identifiable(sample: &Sample, l: usize) -> Result<bool> {
    BruteForce::default().identifiable(sample, l)
}
