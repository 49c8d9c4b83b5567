use std::io::{BufRead, Write};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Distribution};
use crate::rng::{derive_seed, rng_from_seed};

/// The tuple `(M, N, L, P)`: genome count, genome length, read length and
/// one symbol distribution per genome.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    num_genomes: usize,
    genome_length: usize,
    read_length: usize,
    dists: Vec<Distribution>,
}

impl ProblemSpec {
    pub fn new(
        num_genomes: usize,
        genome_length: usize,
        read_length: usize,
        dists: Vec<Distribution>,
    ) -> Result<Self> {
        if num_genomes == 0 {
            return Err(Error::InvalidSpec("M must be at least 1".into()));
        }
        if genome_length == 0 {
            return Err(Error::InvalidSpec("N must be at least 1".into()));
        }
        if read_length == 0 || read_length > genome_length {
            return Err(Error::InvalidSpec(format!(
                "L = {read_length} must satisfy 1 <= L <= N = {genome_length}"
            )));
        }
        if dists.len() != num_genomes {
            return Err(Error::InvalidSpec(format!(
                "{} distributions for M = {num_genomes} genomes",
                dists.len()
            )));
        }
        if dists.iter().any(|d| d.alphabet() != dists[0].alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(ProblemSpec {
            num_genomes,
            genome_length,
            read_length,
            dists,
        })
    }

    /// `M` copies of the same distribution.
    pub fn homogeneous(
        num_genomes: usize,
        genome_length: usize,
        read_length: usize,
        dist: Distribution,
    ) -> Result<Self> {
        ProblemSpec::new(
            num_genomes,
            genome_length,
            read_length,
            vec![dist; num_genomes],
        )
    }

    pub fn num_genomes(&self) -> usize {
        self.num_genomes
    }

    pub fn genome_length(&self) -> usize {
        self.genome_length
    }

    pub fn read_length(&self) -> usize {
        self.read_length
    }

    pub fn dists(&self) -> &[Distribution] {
        &self.dists
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dists[0].alphabet()
    }

    /// Same genomes and distributions, different read length.
    pub fn with_read_length(&self, read_length: usize) -> Result<Self> {
        ProblemSpec::new(
            self.num_genomes,
            self.genome_length,
            read_length,
            self.dists.clone(),
        )
    }
}

/// A collection of `M` genomes of common length `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    alphabet: Alphabet,
    genomes: Vec<Vec<u8>>,
}

impl Sample {
    pub fn new(alphabet: Alphabet, genomes: Vec<Vec<u8>>) -> Result<Self> {
        let Some(first) = genomes.first() else {
            return Err(Error::InvalidSample("no genomes".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidSample("genomes are empty".into()));
        }
        for (m, g) in genomes.iter().enumerate() {
            if g.len() != n {
                return Err(Error::InvalidSample(format!(
                    "genome {} has length {}, expected {n}",
                    m + 1,
                    g.len()
                )));
            }
            if let Some(&bad) = g.iter().find(|&&b| !alphabet.contains(b)) {
                return Err(Error::InvalidSample(format!(
                    "genome {} contains {:?}, not in alphabet {alphabet}",
                    m + 1,
                    bad as char
                )));
            }
        }
        Ok(Sample { alphabet, genomes })
    }

    /// Build from string literals, inferring the alphabet with
    /// [`Alphabet::covering`].
    pub fn from_strs<S: AsRef<str>>(genomes: &[S]) -> Result<Self> {
        let bytes: Vec<Vec<u8>> = genomes
            .iter()
            .map(|g| g.as_ref().as_bytes().to_vec())
            .collect();
        let alphabet = Alphabet::covering(&bytes)?;
        Sample::new(alphabet, bytes)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn genomes(&self) -> &[Vec<u8>] {
        &self.genomes
    }

    pub fn into_genomes(self) -> Vec<Vec<u8>> {
        self.genomes
    }

    pub fn num_genomes(&self) -> usize {
        self.genomes.len()
    }

    pub fn genome_length(&self) -> usize {
        self.genomes[0].len()
    }

    /// Genomes as a sorted list; two samples are permutations of each other
    /// iff these are equal.
    pub fn sorted_genomes(&self) -> Vec<Vec<u8>> {
        let mut g = self.genomes.clone();
        g.sort_unstable();
        g
    }

    pub fn is_permutation_of(&self, other: &Sample) -> bool {
        self.num_genomes() == other.num_genomes() && self.sorted_genomes() == other.sorted_genomes()
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "#alphabet={}", self.alphabet)?;
        for g in &self.genomes {
            out.write_all(g)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("sample text is ASCII")
    }

    /// Parse the sample text format: an optional `#alphabet=...` header, then
    /// one genome per line. Without a header the alphabet is inferred.
    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let mut alphabet = None;
        let mut genomes = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let line = line.trim_end_matches('\r');
            if let Some(rest) = line.strip_prefix('#') {
                match rest.split_once('=') {
                    Some(("alphabet", value)) if genomes.is_empty() && alphabet.is_none() => {
                        alphabet = Some(
                            Alphabet::parse(value)
                                .map_err(|e| Error::parse(lineno, e.to_string()))?,
                        );
                    }
                    _ => return Err(Error::parse(lineno, format!("unexpected header {line:?}"))),
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            genomes.push(line.as_bytes().to_vec());
        }
        let alphabet = match alphabet {
            Some(a) => a,
            None => Alphabet::covering(&genomes)?,
        };
        Sample::new(alphabet, genomes)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        Sample::read_text(text.as_bytes())
    }
}

/// Draw a sample: genome `m` gets `N` symbols drawn independently from
/// `dists[m]`, using the stream `derive_seed(seed, [m])`.
pub fn sample_metagenome(spec: &ProblemSpec, seed: u64) -> Result<Sample> {
    let n = spec.genome_length();
    let alphabet = spec.alphabet().clone();
    let genomes = spec
        .dists()
        .iter()
        .enumerate()
        .map(|(m, dist)| {
            let sampler = WeightedIndex::new(dist.probs())
                .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            let mut rng = rng_from_seed(derive_seed(seed, &[m as u64]));
            Ok((0..n)
                .map(|_| alphabet.symbol(sampler.sample(&mut rng)))
                .collect())
        })
        .collect::<Result<Vec<Vec<u8>>>>()?;
    Ok(Sample { alphabet, genomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_spec(m: usize, n: usize, l: usize) -> ProblemSpec {
        ProblemSpec::homogeneous(m, n, l, Distribution::uniform(Alphabet::dna())).unwrap()
    }

    #[test]
    fn spec_validation() {
        let u = Distribution::uniform(Alphabet::dna());
        assert!(ProblemSpec::new(2, 5, 6, vec![u.clone(); 2]).is_err());
        assert!(ProblemSpec::new(2, 5, 0, vec![u.clone(); 2]).is_err());
        assert!(ProblemSpec::new(2, 5, 3, vec![u.clone(); 3]).is_err());
        assert!(ProblemSpec::new(0, 5, 3, vec![]).is_err());
        let other = Distribution::uniform(Alphabet::new(b"AB").unwrap());
        assert!(ProblemSpec::new(2, 5, 3, vec![u, other]).is_err());
    }

    #[test]
    fn point_masses_give_constant_genomes() {
        let a = Alphabet::dna();
        let spec = ProblemSpec::new(
            2,
            3,
            2,
            vec![
                Distribution::point_mass(a.clone(), b'A').unwrap(),
                Distribution::point_mass(a, b'C').unwrap(),
            ],
        )
        .unwrap();
        let s = sample_metagenome(&spec, 99).unwrap();
        assert_eq!(s.genomes(), &[b"AAA".to_vec(), b"CCC".to_vec()]);
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = uniform_spec(3, 50, 5);
        assert_eq!(
            sample_metagenome(&spec, 1).unwrap(),
            sample_metagenome(&spec, 1).unwrap()
        );
        assert_ne!(
            sample_metagenome(&spec, 1).unwrap(),
            sample_metagenome(&spec, 2).unwrap()
        );
    }

    #[test]
    fn genomes_use_independent_streams() {
        let s = sample_metagenome(&uniform_spec(2, 200, 5), 5).unwrap();
        assert_ne!(s.genomes()[0], s.genomes()[1]);
    }

    #[test]
    fn uniform_frequencies() {
        let s = sample_metagenome(&uniform_spec(1, 100_000, 5), 2024).unwrap();
        let mut counts = [0usize; 4];
        for &b in &s.genomes()[0] {
            counts[s.alphabet().index_of(b).unwrap()] += 1;
        }
        for c in counts {
            let f = c as f64 / 100_000.0;
            assert!((f - 0.25).abs() < 0.01, "frequency {f}");
        }
    }

    #[test]
    fn text_round_trip_and_errors() {
        let s = Sample::from_strs(&["ACGT", "TTGA"]).unwrap();
        let text = s.to_text();
        assert_eq!(text, "#alphabet=ACGT\nACGT\nTTGA\n");
        assert_eq!(Sample::parse_text(&text).unwrap(), s);
        assert!(Sample::parse_text("#alphabet=AC\nACGT\n").is_err());
        assert!(Sample::parse_text("ACG\nAC\n").is_err());
        assert!(Sample::parse_text("#foo=1\nAC\n").is_err());
        assert_eq!(
            Sample::parse_text("AB\nBA\n").unwrap().alphabet().as_str(),
            "AB"
        );
    }
}
