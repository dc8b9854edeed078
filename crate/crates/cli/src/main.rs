//! `border` — compute the exact border points of a labeled point set for
//! the nearest-neighbor classifier, verify reductions, and benchmark the
//! output-sensitive search against the MST-initialized baseline.

mod csvio;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use border_core::bench::{log_log_slope, run_scaling};
use border_core::datagen::{generate, GenKind, GenSpec};
use border_core::oracle::{
    brute_force_border, is_delaunay_neighbor, nn_classify, verify_certificate, Certificate,
};
use border_core::{
    find_border_points_baseline_with_tolerance, find_border_points_with_tolerance, Algorithm,
    Error, LabeledPointSet, DEFAULT_TOLERANCE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "border",
    version,
    about = "Border-point reduction for nearest-neighbor training sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic labeled dataset as CSV.
    Gen {
        /// Dataset family.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Ambient dimension.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Number of classes.
        #[arg(long, default_value_t = 2)]
        classes: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 0)]
        rng: u64,
        /// Per-point noise level (family default when omitted).
        #[arg(long)]
        sigma: Option<f64>,
        /// Family spacing parameter (family default when omitted).
        #[arg(long)]
        separation: Option<f64>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the border points of a CSV dataset.
    Reduce {
        /// Input CSV path.
        #[arg(long)]
        input: PathBuf,
        /// Algorithm: the seeded search, the MST baseline, or the
        /// brute-force oracle.
        #[arg(long, value_enum, default_value_t = AlgoArg::Seeded)]
        algo: AlgoArg,
        /// Seed point index for the seeded search.
        #[arg(long, default_value_t = 0)]
        seed_index: usize,
        /// Relative margin tolerance for hull decisions.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Where to write the sorted border indices (stdout when omitted).
        #[arg(long)]
        indices_out: Option<PathBuf>,
        /// Where to write the single-line stats record (stderr when omitted).
        #[arg(long)]
        stats_out: Option<PathBuf>,
        /// Emit one empty-ball certificate per border point (JSON lines).
        #[arg(long)]
        certificates_out: Option<PathBuf>,
    },
    /// Check that a reduced index set classifies every query like the
    /// full set.
    Verify {
        /// Input CSV path.
        #[arg(long)]
        input: PathBuf,
        /// Indices file of the reduced set.
        #[arg(long)]
        indices: PathBuf,
        /// Number of random query points.
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        /// Query sampling seed.
        #[arg(long, default_value_t = 1)]
        rng: u64,
    },
    /// Measure runtime scaling of both search algorithms over a size
    /// sweep and fit log-log slopes.
    Bench {
        /// Dataset family.
        #[arg(long, value_enum, default_value_t = KindArg::FixedKFamily)]
        kind: KindArg,
        /// Comma-separated instance sizes, e.g. 1000,2000,4000.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        classes: usize,
        #[arg(long, default_value_t = 7)]
        rng: u64,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        separation: Option<f64>,
        /// Output CSV of measurements.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Blobs,
    Annuli,
    Grid,
    #[value(name = "fixed_k_family", alias = "fixed-k-family")]
    FixedKFamily,
}

impl From<KindArg> for GenKind {
    fn from(k: KindArg) -> GenKind {
        match k {
            KindArg::Blobs => GenKind::Blobs,
            KindArg::Annuli => GenKind::Annuli,
            KindArg::Grid => GenKind::Grid,
            KindArg::FixedKFamily => GenKind::FixedKFamily,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum AlgoArg {
    Seeded,
    Mst,
    Brute,
}

impl AlgoArg {
    fn as_str(self) -> &'static str {
        match self {
            AlgoArg::Seeded => "seeded",
            AlgoArg::Mst => "mst",
            AlgoArg::Brute => "brute",
        }
    }
}

/// Command failures mapped to exit codes: 1 I/O, 2 usage or parse,
/// 3 data integrity, 4 verification failure.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Usage(String),
    Data(String),
    Verification(String),
}

impl CliError {
    fn from_core(e: Error) -> CliError {
        match e {
            Error::DuplicateConflict { .. } | Error::CoincidentPoints => {
                CliError::Data(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Usage(m) | CliError::Data(m) | CliError::Verification(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen {
            kind,
            n,
            dim,
            classes,
            rng,
            sigma,
            separation,
            out,
        } => cmd_gen(kind, n, dim, classes, rng, sigma, separation, &out),
        Command::Reduce {
            input,
            algo,
            seed_index,
            tolerance,
            indices_out,
            stats_out,
            certificates_out,
        } => cmd_reduce(
            &input,
            algo,
            seed_index,
            tolerance,
            indices_out.as_deref(),
            stats_out.as_deref(),
            certificates_out.as_deref(),
        ),
        Command::Verify {
            input,
            indices,
            queries,
            rng,
        } => cmd_verify(&input, &indices, queries, rng),
        Command::Bench {
            kind,
            n_list,
            dim,
            classes,
            rng,
            sigma,
            separation,
            out,
        } => cmd_bench(kind, &n_list, dim, classes, rng, sigma, separation, &out),
    }
}

fn build_spec(
    kind: KindArg,
    n: usize,
    dim: usize,
    classes: usize,
    rng: u64,
    sigma: Option<f64>,
    separation: Option<f64>,
) -> GenSpec {
    let mut spec = GenSpec::new(kind.into(), n, dim, classes, rng);
    if let Some(s) = sigma {
        spec = spec.with_sigma(s);
    }
    if let Some(s) = separation {
        spec = spec.with_separation(s);
    }
    spec
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    kind: KindArg,
    n: usize,
    dim: usize,
    classes: usize,
    rng: u64,
    sigma: Option<f64>,
    separation: Option<f64>,
    out: &Path,
) -> Result<(), CliError> {
    let spec = build_spec(kind, n, dim, classes, rng, sigma, separation);
    let set = generate(&spec).map_err(CliError::from_core)?;
    csvio::write_csv(&set, out)?;
    eprintln!(
        "wrote {} points (d={}, {} classes) to {}",
        set.len(),
        set.dim(),
        set.num_classes(),
        out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct StatsRecord<'a> {
    n: usize,
    d: usize,
    k: usize,
    inversion_calls: u64,
    lp_tests: u64,
    elapsed_ms: f64,
    algorithm: &'a str,
}

#[derive(Serialize)]
struct CertificateRecord<'a> {
    index: usize,
    pair: [usize; 2],
    center: &'a [f64],
    radius: f64,
}

fn cmd_reduce(
    input: &Path,
    algo: AlgoArg,
    seed_index: usize,
    tolerance: f64,
    indices_out: Option<&Path>,
    stats_out: Option<&Path>,
    certificates_out: Option<&Path>,
) -> Result<(), CliError> {
    let set = csvio::read_csv(input)?;
    if seed_index >= set.len() {
        return Err(CliError::Usage(format!(
            "--seed-index {seed_index} out of range for {} points",
            set.len()
        )));
    }
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(CliError::Usage(format!(
            "--tolerance {tolerance} outside (0, 1)"
        )));
    }

    let (indices, calls, lp_tests, elapsed_ms) = match algo {
        AlgoArg::Seeded => {
            let res = find_border_points_with_tolerance(&set, seed_index, tolerance)
                .map_err(CliError::from_core)?;
            (res.border_indices, res.inversion_calls, res.lp_tests, res.elapsed_ms)
        }
        AlgoArg::Mst => {
            let res = find_border_points_baseline_with_tolerance(&set, tolerance)
                .map_err(CliError::from_core)?;
            (res.border_indices, res.inversion_calls, res.lp_tests, res.elapsed_ms)
        }
        AlgoArg::Brute => {
            let start = Instant::now();
            let res = brute_force_border(&set);
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            (res.border_indices, 0, 0, elapsed)
        }
    };

    match indices_out {
        Some(path) => csvio::write_indices(&indices, path)?,
        None => {
            let mut stdout = String::new();
            for i in &indices {
                stdout.push_str(&i.to_string());
                stdout.push('\n');
            }
            print!("{stdout}");
        }
    }

    let stats = StatsRecord {
        n: set.len(),
        d: set.dim(),
        k: indices.len(),
        inversion_calls: calls,
        lp_tests,
        elapsed_ms,
        algorithm: algo.as_str(),
    };
    let stats_line = serde_json::to_string(&stats)
        .map_err(|e| CliError::Io(format!("stats serialization: {e}")))?;
    match stats_out {
        Some(path) => std::fs::write(path, format!("{stats_line}\n"))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => eprintln!("{stats_line}"),
    }

    if let Some(path) = certificates_out {
        let mut lines = String::new();
        for &b in &indices {
            let cert = certificate_for(&set, b).ok_or_else(|| {
                CliError::Data(format!("no empty-ball certificate found for index {b}"))
            })?;
            if !verify_certificate(&set, &cert) {
                return Err(CliError::Data(format!(
                    "certificate for index {b} failed verification"
                )));
            }
            let record = CertificateRecord {
                index: b,
                pair: [cert.i, cert.j],
                center: cert.center.coords(),
                radius: cert.radius,
            };
            lines.push_str(
                &serde_json::to_string(&record)
                    .map_err(|e| CliError::Io(format!("certificate serialization: {e}")))?,
            );
            lines.push('\n');
        }
        std::fs::write(path, lines)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }

    Ok(())
}

/// A border point always has an opposite-class Delaunay neighbor; scan
/// partners from nearest to farthest and return the first witness.
fn certificate_for(set: &LabeledPointSet, b: usize) -> Option<Certificate> {
    let pb = set.point(b);
    let mut partners: Vec<(f64, usize)> = (0..set.len())
        .filter(|&j| set.class_id(j) != set.class_id(b))
        .map(|j| {
            let d2: f64 = set
                .point(j)
                .iter()
                .zip(pb)
                .map(|(a, c)| (a - c) * (a - c))
                .sum();
            (d2, j)
        })
        .collect();
    partners.sort_by(|a, b| a.partial_cmp(b).unwrap());
    partners
        .into_iter()
        .find_map(|(_, j)| is_delaunay_neighbor(set, b, j))
}

fn cmd_verify(input: &Path, indices: &Path, queries: usize, rng_seed: u64) -> Result<(), CliError> {
    let set = csvio::read_csv(input)?;
    let idx = csvio::read_indices(indices)?;
    for &i in &idx {
        if i >= set.len() {
            return Err(CliError::Usage(format!(
                "index {i} out of range for {} points",
                set.len()
            )));
        }
    }

    // An empty reduction preserves the (nonexistent) boundaries of a
    // single-class set; anything else it cannot classify.
    if idx.is_empty() {
        if set.num_classes() <= 1 {
            println!("agreements: {queries} / {queries} (skipped 0 near-ties; empty reduction of a single-class set)");
            return Ok(());
        }
        return Err(CliError::Verification(
            "empty index set cannot preserve a multi-class boundary".into(),
        ));
    }

    let reduced = set.subset(&idx).map_err(CliError::from_core)?;
    let (lo, hi) = set.bounding_box();
    let diam = set.diameter();
    let margin_floor = DEFAULT_TOLERANCE * diam;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut q = vec![0.0; set.dim()];
    let mut agreements = 0usize;
    let mut skipped = 0usize;
    let mut disagreements = 0usize;
    let mut first_bad: Option<(Vec<f64>, String, String)> = None;

    for _ in 0..queries {
        for (c, (l, h)) in q.iter_mut().zip(lo.iter().zip(&hi)) {
            let half = 0.5 * (h - l);
            let mid = 0.5 * (h + l);
            *c = mid + (rng.gen::<f64>() * 2.4 - 1.2) * half.max(1e-12);
        }
        let full = nn_classify(&set, &q).map_err(CliError::from_core)?;
        if full.rival_dist - full.nearest_dist <= margin_floor {
            skipped += 1;
            continue;
        }
        let red = nn_classify(&reduced, &q).map_err(CliError::from_core)?;
        if full.label == red.label {
            agreements += 1;
        } else {
            disagreements += 1;
            if first_bad.is_none() {
                first_bad = Some((q.clone(), full.label.to_string(), red.label.to_string()));
            }
        }
    }

    println!("agreements: {agreements} / {} (skipped {skipped} near-ties)", agreements + disagreements);
    if disagreements > 0 {
        let (q, full, red) = first_bad.unwrap();
        return Err(CliError::Verification(format!(
            "{disagreements} disagreements; first at {q:?}: full set says {full}, reduced says {red}"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    kind: KindArg,
    n_list: &[usize],
    dim: usize,
    classes: usize,
    rng: u64,
    sigma: Option<f64>,
    separation: Option<f64>,
    out: &Path,
) -> Result<(), CliError> {
    if n_list.is_empty() {
        return Err(CliError::Usage("--n-list must name at least one size".into()));
    }
    let base = build_spec(kind, 0, dim, classes, rng, sigma, separation);
    let records = run_scaling(&base, n_list).map_err(CliError::from_core)?;

    let mut csv = String::from("n,k,inversion_calls,lp_tests,elapsed_ms,algorithm\n");
    for r in &records {
        let algo = match r.algorithm {
            Algorithm::Seeded => "seeded",
            Algorithm::MstBaseline => "mst",
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n, r.k, r.inversion_calls, r.lp_tests, r.elapsed_ms, algo
        ));
    }
    std::fs::write(out, csv)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;

    for (algo, name) in [(Algorithm::Seeded, "seeded"), (Algorithm::MstBaseline, "mst")] {
        let samples: Vec<(f64, f64)> = records
            .iter()
            .filter(|r| r.algorithm == algo)
            .map(|r| (r.n as f64, r.elapsed_ms))
            .collect();
        match log_log_slope(&samples) {
            Some(s) => println!("slope {name}: {s:.3}"),
            None => println!("slope {name}: n/a (need at least two sizes)"),
        }
    }
    Ok(())
}
