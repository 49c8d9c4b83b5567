use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use metashot::assembler::greedy_assemble;
use metashot::experiments::{bounds_report, run_experiment, ExperimentConfig};
use metashot::identifiability::check_identifiable;
use metashot::model::entropy::{cross_entropy_range, min_renyi2};
use metashot::model::{
    lower_threshold, max_genomes_upper, sample_metagenome, upper_threshold, Alphabet, Distribution,
    ProblemSpec, Sample,
};
use metashot::reads::{extract_reads, ReadMultiset};
use metashot::repeats::{default_eta, find_repeats};
use metashot::{Error, Result};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "metashot",
    version,
    about = "Shotgun metagenome identifiability toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random sample of genomes.
    Generate(GenerateArgs),
    /// Extract the read multiset of a sample.
    Reads(ReadsArgs),
    /// Greedily assemble a read multiset.
    Assemble(AssembleArgs),
    /// Classify a sample as identifiable, non-identifiable or unknown.
    Check(CheckArgs),
    /// Print the entropy thresholds and, with --L, the repeat bounds.
    Thresholds(ThresholdsArgs),
    /// Run a Monte-Carlo experiment and write a CSV summary.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of genomes; overrides the config file.
    #[arg(long = "M")]
    m: Option<usize>,
    /// Genome length; overrides the config file.
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long = "L")]
    l: usize,
    /// `uniform` or comma-separated probabilities shared by all genomes.
    #[arg(long, default_value = "uniform")]
    dist: String,
    #[arg(long, default_value = "ACGT")]
    alphabet: String,
    /// Experiment config supplying per-genome distributions.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReadsArgs {
    #[arg(long)]
    sample: PathBuf,
    #[arg(long = "L")]
    l: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AssembleArgs {
    #[arg(long)]
    reads: PathBuf,
    #[arg(long)]
    genomes: usize,
    #[arg(long)]
    length: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    sample: PathBuf,
    #[arg(long = "L")]
    l: usize,
    /// Restrict the swap search to positions in [eta N, (1-eta) N - L].
    #[arg(long, default_value_t = 0.0)]
    eta: f64,
    /// Write every repeat and swap witness to this file.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdsArgs {
    #[arg(long = "M")]
    m: usize,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value = "uniform")]
    dist: String,
    #[arg(long, default_value = "ACGT")]
    alphabet: String,
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long = "L")]
    l: Option<usize>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Reads(a) => reads(a),
        Command::Assemble(a) => assemble(a),
        Command::Check(a) => check(a),
        Command::Thresholds(a) => thresholds(a),
        Command::Experiment(a) => experiment(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { EXIT_IO } else { EXIT_VALIDATION })
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

/// Buffered writer to `path`, or stdout.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn generate(a: GenerateArgs) -> Result<u8> {
    let (dists, n) = match &a.config {
        Some(path) => {
            let text = io::read_to_string(open(path)?)?;
            let config = ExperimentConfig::parse(&text)?;
            match a.m {
                Some(m) if m != config.num_genomes() => {
                    return Err(Error::InvalidSpec(format!(
                        "--M {m} disagrees with {} genomes in the config",
                        config.num_genomes()
                    )))
                }
                _ => {}
            }
            let n = a.n.unwrap_or(config.genome_length);
            (config.dists, n)
        }
        None => {
            let alphabet = Alphabet::parse(&a.alphabet)?;
            let dist = Distribution::parse(&alphabet, &a.dist)?;
            let m =
                a.m.ok_or_else(|| Error::InvalidSpec("--M is required without --config".into()))?;
            let n =
                a.n.ok_or_else(|| Error::InvalidSpec("--N is required without --config".into()))?;
            (vec![dist; m], n)
        }
    };
    let spec = ProblemSpec::new(dists.len(), n, a.l, dists)?;
    let sample = sample_metagenome(&spec, a.seed)?;
    let mut out = output(a.out.as_deref())?;
    sample.write_text(&mut out)?;
    out.flush()?;
    Ok(0)
}

fn reads(a: ReadsArgs) -> Result<u8> {
    let sample = Sample::read_text(open(&a.sample)?)?;
    let reads = extract_reads(&sample, a.l)?;
    let mut out = output(a.out.as_deref())?;
    reads.write(&mut out)?;
    out.flush()?;
    Ok(0)
}

fn assemble(a: AssembleArgs) -> Result<u8> {
    let reads = ReadMultiset::read(open(&a.reads)?)?;
    let result = greedy_assemble(&reads, a.genomes, a.length, a.seed)?;
    if !result.complete {
        eprintln!(
            "incomplete assembly: {} contigs, expected {} of length {}",
            result.num_contigs(),
            a.genomes,
            a.length
        );
        return Ok(EXIT_INCOMPLETE);
    }
    let genomes = result.expanded();
    let alphabet = Alphabet::covering(&genomes)?;
    let sample = Sample::new(alphabet, genomes)?;
    let mut out = output(a.out.as_deref())?;
    sample.write_text(&mut out)?;
    out.flush()?;
    Ok(0)
}

fn check(a: CheckArgs) -> Result<u8> {
    let sample = Sample::read_text(open(&a.sample)?)?;
    let verdict = check_identifiable(&sample, a.l, a.eta)?;
    println!("{}: {}", verdict.tag, verdict.reason);
    if let Some(w) = &verdict.witness {
        println!("witness: {w}");
    }
    println!("verdict={}", verdict.tag);
    if let Some(path) = &a.dump {
        let mut out = output(Some(path))?;
        for r in find_repeats(&sample, a.l - 1, None)? {
            writeln!(out, "{r}")?;
        }
        if let Some(w) = &verdict.witness {
            writeln!(out, "{w}")?;
        }
        out.flush()?;
    }
    Ok(0)
}

fn thresholds(a: ThresholdsArgs) -> Result<u8> {
    let alphabet = Alphabet::parse(&a.alphabet)?;
    let dists = vec![Distribution::parse(&alphabet, &a.dist)?; a.m];
    if a.m == 0 || a.n == 0 {
        return Err(Error::InvalidSpec("M and N must be positive".into()));
    }
    let h_star = min_renyi2(&dists);
    let (f_lower, f_star) = cross_entropy_range(&dists)?;
    println!("H2_min={h_star}");
    println!("F_min={f_lower}");
    println!("F_max={f_star}");
    match upper_threshold(a.m, a.n, h_star, a.epsilon) {
        Ok(v) => println!("upper={v}"),
        Err(e) => println!("upper=undefined ({e})"),
    }
    match lower_threshold(a.m, a.n, f_star, f_lower, a.epsilon) {
        Ok(v) => println!("lower={v}"),
        Err(e) => println!("lower=undefined ({e})"),
    }
    if let Some(l) = a.l {
        let spec = ProblemSpec::new(a.m, a.n, l, dists)?;
        let r = bounds_report(&spec, default_eta(l, a.n))?;
        println!("max_genomes_upper={}", max_genomes_upper(l, a.n, h_star)?);
        println!("overlap_repeat_bound={}", r.overlap_bound);
        println!("nonoverlap_repeat_bound={}", r.nonoverlap_bound);
        println!("nonidentifiability_bound={}", r.nonidentifiability_bound);
        match r.exclusion_bound {
            Some(v) => println!("exclusion_bound={v} (eta={})", r.eta),
            None => println!("exclusion_bound=undefined (empty position range)"),
        }
    }
    Ok(0)
}

fn experiment(a: ExperimentArgs) -> Result<u8> {
    let text = io::read_to_string(open(&a.config)?)?;
    let config = ExperimentConfig::parse(&text)?;
    let summary = run_experiment(&config, a.threads)?;
    let mut out = output(a.out.as_deref())?;
    summary.write_csv(&mut out)?;
    out.flush()?;
    Ok(0)
}
