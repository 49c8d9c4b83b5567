use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use metashot::experiments::CSV_HEADER;
use metashot::model::Sample;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metashot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for out in [&a, &b] {
        let args = [
            "generate",
            "--M",
            "2",
            "--N",
            "10",
            "--L",
            "4",
            "--dist",
            "uniform",
            "--seed",
            "7",
            "--out",
            p(out),
        ];
        assert_eq!(run(&args).status.code(), Some(0));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let sample = Sample::parse_text(&text).unwrap();
    assert_eq!((sample.num_genomes(), sample.genome_length()), (2, 10));
}

#[test]
fn generate_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.cfg");
    fs::write(
        &config,
        "genomes = 3\nlength = 30\ndist.2 = 1,0,0,0\nL = 5\ntrials = 1\n",
    )
    .unwrap();
    let o = run(&[
        "generate",
        "--config",
        p(&config),
        "--L",
        "5",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let sample = Sample::parse_text(&stdout(&o)).unwrap();
    assert_eq!(sample.genomes()[1], vec![b'A'; 30]);
    let o = run(&[
        "generate",
        "--config",
        p(&config),
        "--M",
        "4",
        "--L",
        "5",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thresholds_for_uniform_dna() {
    let o = run(&["thresholds", "--M", "4", "--N", "2000", "--dist", "uniform"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("upper=12.96578"), "{out}");
    assert!(out.contains("lower=6.48289"), "{out}");
    let o = run(&["thresholds", "--M", "4", "--N", "2000", "--L", "26"]);
    assert!(stdout(&o).contains("overlap_repeat_bound=0.0061988"));
}

#[test]
fn check_swap_example() {
    let dir = tempfile::tempdir().unwrap();
    let sample = dir.path().join("x.txt");
    let dump = dir.path().join("dump.txt");
    fs::write(&sample, "#alphabet=ACGT\nAGGGT\nCGGGA\n").unwrap();
    let o = run(&[
        "check",
        "--sample",
        p(&sample),
        "--L",
        "3",
        "--dump",
        p(&dump),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "verdict=NonIdentifiable"), "{out}");
    assert!(out.contains("SWAP 1 2 2 GGG"));
    let dump = fs::read_to_string(&dump).unwrap();
    assert!(dump
        .lines()
        .all(|l| l.starts_with("S ") || l.starts_with("SWAP ")));
    assert!(dump.lines().any(|l| l == "S 1 2 2 2 2 0"));
    assert_eq!(dump.lines().last(), Some("SWAP 1 2 2 GGG"));

    let o = run(&["check", "--sample", p(&sample), "--L", "5"]);
    assert!(stdout(&o).contains("verdict=Identifiable"));
}

#[test]
fn reads_then_assemble_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (sample, reads, out) = (
        dir.path().join("s.txt"),
        dir.path().join("r.txt"),
        dir.path().join("o.txt"),
    );
    let gen = [
        "generate",
        "--M",
        "3",
        "--N",
        "300",
        "--L",
        "20",
        "--seed",
        "3",
        "--out",
        p(&sample),
    ];
    assert_eq!(run(&gen).status.code(), Some(0));
    assert_eq!(
        run(&[
            "reads",
            "--sample",
            p(&sample),
            "--L",
            "20",
            "--out",
            p(&reads)
        ])
        .status
        .code(),
        Some(0)
    );
    assert!(fs::read_to_string(&reads)
        .unwrap()
        .starts_with("#L=20\t#total=843\n"));
    let o = run(&[
        "assemble",
        "--reads",
        p(&reads),
        "--genomes",
        "3",
        "--length",
        "300",
        "--seed",
        "0",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let original = Sample::parse_text(&fs::read_to_string(&sample).unwrap()).unwrap();
    let rebuilt = Sample::parse_text(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(original.sorted_genomes(), rebuilt.sorted_genomes());
}

#[test]
fn incomplete_assembly_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let reads = dir.path().join("r.txt");
    // every read is the same 2-mer, so nothing can merge past one overlap
    fs::write(&reads, "#L=2\t#total=3\nAC\t3\n").unwrap();
    let o = run(&[
        "assemble",
        "--reads",
        p(&reads),
        "--genomes",
        "1",
        "--length",
        "4",
        "--seed",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn experiment_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("e.cfg");
    fs::write(
        &config,
        "mode = identifiability\ngenomes = 3\nlength = 120\nL = 6,10\ntrials = 12\nseed = 5\n",
    )
    .unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "2"] {
        let out = dir.path().join(format!("{threads}.csv"));
        let o = run(&[
            "experiment",
            "--config",
            p(&config),
            "--out",
            p(&out),
            "--threads",
            threads,
        ]);
        assert_eq!(o.status.code(), Some(0));
        outputs.push(fs::read_to_string(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let lines: Vec<&str> = outputs[0].lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], CSV_HEADER);
    assert!(lines[1].starts_with("6,12,"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--L", "3"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let v = run(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(
        stdout(&v).trim(),
        format!("metashot {}", env!("CARGO_PKG_VERSION"))
    );

    let dir = tempfile::tempdir().unwrap();
    let sample = dir.path().join("x.txt");
    fs::write(&sample, "#alphabet=ACGT\nACGT\nACG\n").unwrap();
    let o = run(&["check", "--sample", p(&sample), "--L", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    fs::write(&sample, "#alphabet=ACGT\nACGT\n").unwrap();
    assert_eq!(
        run(&["check", "--sample", p(&sample), "--L", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["thresholds", "--M", "2", "--N", "5", "--dist", "0.5,0.5"])
            .status
            .code(),
        Some(2)
    );

    let missing = dir.path().join("missing.txt");
    assert_eq!(
        run(&["check", "--sample", p(&missing), "--L", "3"])
            .status
            .code(),
        Some(4)
    );
    let unwritable = dir.path().join("no/such/dir/out.txt");
    let o = run(&[
        "generate",
        "--M",
        "1",
        "--N",
        "5",
        "--L",
        "2",
        "--seed",
        "0",
        "--out",
        p(&unwritable),
    ]);
    assert_eq!(o.status.code(), Some(4));
}
