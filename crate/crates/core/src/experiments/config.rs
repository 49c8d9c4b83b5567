use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Distribution, ProblemSpec};
use crate::repeats::default_eta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Verdict and B-event count per trial.
    Identifiability,
    /// Verdict, B-event count and a greedy assembly per trial.
    Assembly,
    /// B-event count only.
    Moments,
    /// One pair of independent windows per trial; `L` is the window length.
    RepeatProb,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Identifiability => "identifiability",
            Mode::Assembly => "assembly",
            Mode::Moments => "moments",
            Mode::RepeatProb => "repeat-prob",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "identifiability" => Ok(Mode::Identifiability),
            "assembly" => Ok(Mode::Assembly),
            "moments" => Ok(Mode::Moments),
            "repeat-prob" => Ok(Mode::RepeatProb),
            other => Err(Error::parse(0, format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// One distribution per genome; the genome count is its length.
    pub dists: Vec<Distribution>,
    pub genome_length: usize,
    pub read_lengths: Vec<usize>,
    pub trials: u64,
    pub master_seed: u64,
    /// Fixed B-event window parameter; `None` uses [`default_eta`] per `L`.
    pub eta: Option<f64>,
}

impl ExperimentConfig {
    /// `num_genomes` copies of `dist`.
    pub fn homogeneous(
        mode: Mode,
        num_genomes: usize,
        genome_length: usize,
        dist: Distribution,
        read_lengths: Vec<usize>,
        trials: u64,
        master_seed: u64,
    ) -> Self {
        ExperimentConfig {
            mode,
            dists: vec![dist; num_genomes],
            genome_length,
            read_lengths,
            trials,
            master_seed,
            eta: None,
        }
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = Some(eta);
        self
    }

    pub fn num_genomes(&self) -> usize {
        self.dists.len()
    }

    pub fn eta_for(&self, l: usize) -> f64 {
        self.eta
            .unwrap_or_else(|| default_eta(l, self.genome_length))
    }

    pub fn spec(&self, l: usize) -> Result<ProblemSpec> {
        ProblemSpec::new(
            self.num_genomes(),
            self.genome_length,
            l,
            self.dists.clone(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::out_of_range("trials", 0, ">= 1"));
        }
        if self.read_lengths.is_empty() {
            return Err(Error::InvalidSpec("no read lengths given".into()));
        }
        for &l in &self.read_lengths {
            if l < 2 || l > self.genome_length {
                return Err(Error::out_of_range(
                    "L",
                    l,
                    format!("2 <= L <= N = {}", self.genome_length),
                ));
            }
            self.spec(l)?;
        }
        if let Some(eta) = self.eta {
            if !(0.0..0.5).contains(&eta) {
                return Err(Error::out_of_range("eta", eta, "0 <= eta < 1/2"));
            }
        }
        Ok(())
    }

    /// Parse the flat `key = value` format. Lines starting with `#` are
    /// comments.
    ///
    /// ```text
    /// mode = identifiability
    /// alphabet = ACGT
    /// genomes = 4
    /// length = 2000
    /// dist = uniform
    /// dist.2 = 0.4,0.1,0.1,0.4
    /// L = 20,24,26
    /// trials = 200
    /// seed = 42
    /// eta = 0.1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let entries = parse_entries(text)?;
        let get = |key: &str| entries.get(key).map(|(line, v)| (*line, v.as_str()));
        let required = |key: &str| {
            get(key).ok_or_else(|| Error::parse(0, format!("missing required key {key:?}")))
        };
        fn num<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::parse(line, format!("bad value {v:?} for {key}")))
        }

        let mode = match get("mode") {
            Some((line, v)) => v
                .parse()
                .map_err(|e: Error| Error::parse(line, e.to_string()))?,
            None => Mode::Identifiability,
        };
        let alphabet = match get("alphabet") {
            Some((line, v)) => Alphabet::parse(v).map_err(|e| Error::parse(line, e.to_string()))?,
            None => Alphabet::dna(),
        };
        let (line, v) = required("genomes")?;
        let m: usize = num(line, "genomes", v)?;
        if m == 0 {
            return Err(Error::parse(line, "genomes must be at least 1"));
        }
        let (line, v) = required("length")?;
        let genome_length = num(line, "length", v)?;
        let base = match get("dist") {
            Some((line, v)) => {
                Distribution::parse(&alphabet, v).map_err(|e| Error::parse(line, e.to_string()))?
            }
            None => Distribution::uniform(alphabet.clone()),
        };
        let mut dists = vec![base; m];
        for (key, (line, v)) in &entries {
            if let Some(idx) = key.strip_prefix("dist.") {
                let idx: usize = num(*line, key, idx)?;
                if idx == 0 || idx > m {
                    return Err(Error::parse(
                        *line,
                        format!("{key} outside genomes 1..={m}"),
                    ));
                }
                dists[idx - 1] = Distribution::parse(&alphabet, v)
                    .map_err(|e| Error::parse(*line, e.to_string()))?;
            }
        }
        let (line, v) = required("L")?;
        let read_lengths = v
            .split(',')
            .map(|t| num(line, "L", t.trim()))
            .collect::<Result<Vec<usize>>>()?;
        let (line, v) = required("trials")?;
        let trials = num(line, "trials", v)?;
        let master_seed = match get("seed") {
            Some((line, v)) => num(line, "seed", v)?,
            None => 0,
        };
        let eta = match get("eta") {
            Some((line, v)) => Some(num(line, "eta", v)?),
            None => None,
        };
        let config = ExperimentConfig {
            mode,
            dists,
            genome_length,
            read_lengths,
            trials,
            master_seed,
            eta,
        };
        config.validate()?;
        Ok(config)
    }
}

const KEYS: &[&str] = &[
    "mode", "alphabet", "genomes", "length", "dist", "L", "trials", "seed", "eta",
];

fn parse_entries(text: &str) -> Result<BTreeMap<String, (usize, String)>> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let (key, value) = raw
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected key=value"))?;
        let key = key.trim();
        if !KEYS.contains(&key) && !key.starts_with("dist.") {
            return Err(Error::parse(line, format!("unknown key {key:?}")));
        }
        if entries
            .insert(key.to_string(), (line, value.trim().to_string()))
            .is_some()
        {
            return Err(Error::parse(line, format!("duplicate key {key:?}")));
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let text = "# demo\nmode = moments\nalphabet=ACGT\ngenomes = 3\nlength = 100\n\
                    dist = uniform\ndist.2 = 0.4,0.1,0.1,0.4\nL = 5, 6\ntrials = 10\nseed = 9\neta = 0.1\n";
        let c = ExperimentConfig::parse(text).unwrap();
        assert_eq!(c.mode, Mode::Moments);
        assert_eq!(c.num_genomes(), 3);
        assert_eq!(c.read_lengths, vec![5, 6]);
        assert_eq!(c.dists[1].probs(), &[0.4, 0.1, 0.1, 0.4]);
        assert!(c.dists[0].is_uniform());
        assert_eq!(c.eta_for(5), 0.1);
        assert_eq!(c.master_seed, 9);
    }

    #[test]
    fn defaults() {
        let c = ExperimentConfig::parse("genomes=2\nlength=50\nL=4\ntrials=1\n").unwrap();
        assert_eq!(c.mode, Mode::Identifiability);
        assert_eq!(c.eta_for(4), default_eta(4, 50));
    }

    #[test]
    fn errors() {
        let bad = [
            "genomes=2\nlength=50\nL=4\n",
            "genomes=2\nlength=50\nL=4\ntrials=0\n",
            "genomes=2\nlength=50\nL=1\ntrials=1\n",
            "genomes=2\nlength=50\nL=51\ntrials=1\n",
            "genomes=2\nlength=50\nL=4\ntrials=1\ncolour=red\n",
            "genomes=2\nlength=50\nL=4\ntrials=1\ntrials=2\n",
            "genomes=2\nlength=50\nL=4\ntrials=1\ndist.3=uniform\n",
            "genomes=2\nlength=50\nL=4\ntrials=1\nmode=fast\n",
            "genomes=2\nlength=50\nL=4\ntrials=1\neta=0.5\n",
            "genomes\n",
        ];
        for text in bad {
            assert!(ExperimentConfig::parse(text).is_err(), "{text}");
        }
    }
}
