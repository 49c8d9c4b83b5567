//! The read multiset: every length-`L` window of every genome, with
//! multiplicity.
//!
//! File format, with fields separated by a single tab:
//!
//! ```text
//! #L=3 <TAB> #total=4
//! AGG <TAB> 1
//! GGG <TAB> 2
//! GGT <TAB> 1
//! ```
//!
//! Reads are listed in byte order, which for the default `ACGT` alphabet is
//! the alphabet-index order.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Sample;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadMultiset {
    read_length: usize,
    counts: BTreeMap<Vec<u8>, u64>,
    total: u64,
}

impl ReadMultiset {
    pub fn empty(read_length: usize) -> Self {
        ReadMultiset {
            read_length,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    /// Build from `(read, count)` pairs. Counts of repeated keys are added.
    pub fn from_counts<I, S>(read_length: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: AsRef<[u8]>,
    {
        let mut ms = ReadMultiset::empty(read_length);
        for (read, count) in pairs {
            let read = read.as_ref();
            if read.len() != read_length {
                return Err(Error::InvalidSample(format!(
                    "read {:?} has length {}, expected {read_length}",
                    String::from_utf8_lossy(read),
                    read.len()
                )));
            }
            if count == 0 {
                continue;
            }
            *ms.counts.entry(read.to_vec()).or_insert(0) += count;
            ms.total += count;
        }
        Ok(ms)
    }

    pub fn read_length(&self) -> usize {
        self.read_length
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct reads.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, read: &[u8]) -> u64 {
        self.counts.get(read).copied().unwrap_or(0)
    }

    /// `(read, count)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u8], u64)> {
        self.counts.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "#L={}\t#total={}", self.read_length, self.total)?;
        for (read, count) in self.iter() {
            out.write_all(read)?;
            writeln!(out, "\t{count}")?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => return Err(Error::parse(1, "missing header")),
        };
        let (read_length, declared_total) = parse_header(header.trim_end_matches('\r'))?;
        let mut counts = BTreeMap::new();
        let mut total = 0u64;
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let (read, count) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(lineno, "expected `read<TAB>count`"))?;
            if read.len() != read_length {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "read length {} does not match L = {read_length}",
                        read.len()
                    ),
                ));
            }
            let count: u64 = count
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad count {count:?}")))?;
            if count == 0 {
                return Err(Error::parse(lineno, "count must be positive"));
            }
            if counts.insert(read.as_bytes().to_vec(), count).is_some() {
                return Err(Error::parse(lineno, format!("duplicate read {read:?}")));
            }
            total += count;
        }
        if total != declared_total {
            return Err(Error::parse(
                1,
                format!("header declares total {declared_total}, counts sum to {total}"),
            ));
        }
        Ok(ReadMultiset {
            read_length,
            counts,
            total,
        })
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8_lossy(&buf).into_owned()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        ReadMultiset::read(text.as_bytes())
    }
}

fn parse_header(line: &str) -> Result<(usize, u64)> {
    let bad = || {
        Error::parse(
            1,
            format!("expected `#L=<int>\\t#total=<int>`, got {line:?}"),
        )
    };
    let (l, t) = line.split_once('\t').ok_or_else(bad)?;
    let l = l.strip_prefix("#L=").ok_or_else(bad)?;
    let t = t.strip_prefix("#total=").ok_or_else(bad)?;
    let l: usize = l.parse().map_err(|_| bad())?;
    let t: u64 = t.parse().map_err(|_| bad())?;
    if l == 0 {
        return Err(Error::parse(1, "L must be positive"));
    }
    Ok((l, t))
}

/// All length-`l` windows of all genomes, counted.
pub fn extract_reads(sample: &Sample, l: usize) -> Result<ReadMultiset> {
    let n = sample.genome_length();
    if l == 0 || l > n {
        return Err(Error::out_of_range("L", l, format!("1 <= L <= N = {n}")));
    }
    let merged = sample
        .genomes()
        .par_iter()
        .fold(HashMap::<&[u8], u64>::new, |mut acc, g| {
            for w in g.windows(l) {
                *acc.entry(w).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            if a.len() < b.len() {
                return merge_into(b, a);
            }
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let counts: BTreeMap<Vec<u8>, u64> = merged.into_iter().map(|(k, v)| (k.to_vec(), v)).collect();
    Ok(ReadMultiset {
        read_length: l,
        counts,
        total: (sample.num_genomes() * (n - l + 1)) as u64,
    })
}

fn merge_into<'a>(
    mut big: HashMap<&'a [u8], u64>,
    small: HashMap<&'a [u8], u64>,
) -> HashMap<&'a [u8], u64> {
    for (k, v) in small {
        *big.entry(k).or_insert(0) += v;
    }
    big
}

/// True iff both multisets have the same read length and identical counts.
pub fn multiset_equal(a: &ReadMultiset, b: &ReadMultiset) -> bool {
    a == b
}
