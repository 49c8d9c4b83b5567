//! Seeded Monte-Carlo experiments over `(M, N, L, P)` grids.
//!
//! Every trial derives its own seed from the master seed, `L` and the trial
//! index, and per-`L` tallies are integer sums, so results do not depend on
//! the number of worker threads.

mod config;
mod report;

use std::io::Write;
use std::time::Instant;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rayon::prelude::*;

pub use config::{ExperimentConfig, Mode};
pub use report::{bounds_report, theorem_bounds_report, BoundsReport};

use crate::assembler::greedy_assemble;
use crate::error::{Error, Result};
use crate::identifiability::{check_identifiable, VerdictTag};
use crate::model::{sample_metagenome, Distribution, ProblemSpec};
use crate::reads::extract_reads;
use crate::repeats::{b_event_range, count_b_events, repeat_probability};
use crate::rng::{derive_seed, rng_from_seed, ASSEMBLY_STREAM};

pub const CSV_HEADER: &str = "L,trials,p_identifiable,p_nonidentifiable,p_unknown,\
p_assembly_success,z_mean,z_var,z_mean_analytic,se_binomial";

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub read_length: usize,
    pub trial: u64,
    pub verdict: Option<VerdictTag>,
    pub swap_witness: bool,
    /// Whether every `(L-1)`-window was distinct.
    pub distinct_segments: Option<bool>,
    /// B-event count, or the window-match indicator in repeat-prob mode.
    pub z_count: u64,
    pub assembly_recovered: Option<bool>,
    pub elapsed_ms: f64,
}

/// Seed of trial `t` at read length `l`.
pub fn trial_seed(master: u64, l: usize, t: u64) -> u64 {
    derive_seed(master, &[l as u64, t])
}

pub fn run_trial(config: &ExperimentConfig, l: usize, t: u64) -> Result<TrialResult> {
    let start = Instant::now();
    let seed = trial_seed(config.master_seed, l, t);
    let mut result = TrialResult {
        read_length: l,
        trial: t,
        verdict: None,
        swap_witness: false,
        distinct_segments: None,
        z_count: 0,
        assembly_recovered: None,
        elapsed_ms: 0.0,
    };
    if config.mode == Mode::RepeatProb {
        let (p, q) = repeat_pair(config);
        let a = draw_window(p, l, derive_seed(seed, &[0]))?;
        let b = draw_window(q, l, derive_seed(seed, &[1]))?;
        result.z_count = (a == b) as u64;
    } else {
        let spec = config.spec(l)?;
        let sample = sample_metagenome(&spec, seed)?;
        let eta = config.eta_for(l);
        result.z_count = count_b_events(&sample, l, eta)?;
        if config.mode != Mode::Moments {
            let verdict = check_identifiable(&sample, l, eta)?;
            result.swap_witness = verdict.witness.is_some();
            result.distinct_segments = Some(verdict.tag == VerdictTag::Identifiable);
            result.verdict = Some(verdict.tag);
        }
        if config.mode == Mode::Assembly {
            let reads = extract_reads(&sample, l)?;
            let assembly = greedy_assemble(
                &reads,
                spec.num_genomes(),
                spec.genome_length(),
                derive_seed(seed, &[ASSEMBLY_STREAM]),
            )?;
            result.assembly_recovered = Some(assembly.recovers(&sample));
        }
    }
    result.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}

fn repeat_pair(config: &ExperimentConfig) -> (&Distribution, &Distribution) {
    let d = &config.dists;
    (&d[0], d.get(1).unwrap_or(&d[0]))
}

fn draw_window(dist: &Distribution, l: usize, seed: u64) -> Result<Vec<u8>> {
    let sampler =
        WeightedIndex::new(dist.probs()).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let mut rng = rng_from_seed(seed);
    Ok((0..l).map(|_| sampler.sample(&mut rng) as u8).collect())
}

/// `E[Z] = sum over pairs m < m' of |J| (sum_a p^m_a p^m'_a)^L`, where `J`
/// is the B-event position range.
pub fn analytic_expectation_z(spec: &ProblemSpec, l: usize, eta: f64) -> Result<f64> {
    let Some(range) = b_event_range(spec.genome_length(), l, eta) else {
        return Ok(0.0);
    };
    let positions = range.count() as f64;
    let dists = spec.dists();
    let mut total = 0.0;
    for (i, p) in dists.iter().enumerate() {
        for q in &dists[i + 1..] {
            total += positions * repeat_probability(p, q, l)?;
        }
    }
    Ok(total)
}

/// One CSV row. Columns the mode does not compute are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub read_length: usize,
    pub trials: u64,
    pub p_identifiable: Option<f64>,
    pub p_nonidentifiable: Option<f64>,
    pub p_unknown: Option<f64>,
    pub p_assembly_success: Option<f64>,
    pub z_mean: f64,
    /// Unbiased sample variance; `None` for a single trial.
    pub z_var: Option<f64>,
    pub z_mean_analytic: f64,
    /// Standard error of the mode's headline proportion: identifiable,
    /// assembly success, `Z >= 1`, or window match.
    pub se_binomial: f64,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    trials: u64,
    identifiable: u64,
    nonidentifiable: u64,
    unknown: u64,
    recovered: u64,
    z_positive: u64,
    z_sum: u128,
    z_sq_sum: u128,
}

impl Tally {
    fn add(mut self, r: &TrialResult) -> Self {
        self.trials += 1;
        match r.verdict {
            Some(VerdictTag::Identifiable) => self.identifiable += 1,
            Some(VerdictTag::NonIdentifiable) => self.nonidentifiable += 1,
            Some(VerdictTag::Unknown) => self.unknown += 1,
            None => {}
        }
        self.recovered += r.assembly_recovered.unwrap_or(false) as u64;
        self.z_positive += (r.z_count > 0) as u64;
        let z = r.z_count as u128;
        self.z_sum += z;
        self.z_sq_sum += z * z;
        self
    }

    fn merge(mut self, o: Self) -> Self {
        self.trials += o.trials;
        self.identifiable += o.identifiable;
        self.nonidentifiable += o.nonidentifiable;
        self.unknown += o.unknown;
        self.recovered += o.recovered;
        self.z_positive += o.z_positive;
        self.z_sum += o.z_sum;
        self.z_sq_sum += o.z_sq_sum;
        self
    }

    fn row(&self, mode: Mode, l: usize, analytic: f64) -> SummaryRow {
        let n = self.trials as f64;
        let frac = |k: u64| k as f64 / n;
        let verdicts = matches!(mode, Mode::Identifiability | Mode::Assembly);
        let headline = match mode {
            Mode::Identifiability => frac(self.identifiable),
            Mode::Assembly => frac(self.recovered),
            Mode::Moments | Mode::RepeatProb => frac(self.z_positive),
        };
        // n * sum(z^2) - (sum z)^2 is exact in integers
        let z_var = (self.trials > 1).then(|| {
            let num = self.trials as u128 * self.z_sq_sum - self.z_sum * self.z_sum;
            num as f64 / (n * (n - 1.0))
        });
        SummaryRow {
            read_length: l,
            trials: self.trials,
            p_identifiable: verdicts.then(|| frac(self.identifiable)),
            p_nonidentifiable: verdicts.then(|| frac(self.nonidentifiable)),
            p_unknown: verdicts.then(|| frac(self.unknown)),
            p_assembly_success: (mode == Mode::Assembly).then(|| frac(self.recovered)),
            z_mean: self.z_sum as f64 / n,
            z_var,
            z_mean_analytic: analytic,
            se_binomial: (headline * (1.0 - headline) / n).sqrt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSummary {
    pub mode: Mode,
    pub rows: Vec<SummaryRow>,
}

impl ExperimentSummary {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.read_length,
                r.trials,
                opt(r.p_identifiable),
                opt(r.p_nonidentifiable),
                opt(r.p_unknown),
                opt(r.p_assembly_success),
                r.z_mean,
                opt(r.z_var),
                r.z_mean_analytic,
                r.se_binomial
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }
}

/// Run every trial of every read length on a pool of `threads` workers
/// (`0` picks the rayon default). Output is identical for any thread count.
pub fn run_experiment(config: &ExperimentConfig, threads: usize) -> Result<ExperimentSummary> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        config
            .read_lengths
            .iter()
            .map(|&l| {
                let tally = (0..config.trials)
                    .into_par_iter()
                    .map(|t| run_trial(config, l, t))
                    .try_fold(Tally::default, |acc, r| r.map(|r| acc.add(&r)))
                    .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
                let analytic = match config.mode {
                    Mode::RepeatProb => {
                        let (p, q) = repeat_pair(config);
                        repeat_probability(p, q, l)?
                    }
                    _ => analytic_expectation_z(&config.spec(l)?, l, config.eta_for(l))?,
                };
                Ok(tally.row(config.mode, l, analytic))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ExperimentSummary {
        mode: config.mode,
        rows,
    })
}
