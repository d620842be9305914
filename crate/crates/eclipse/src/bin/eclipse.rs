//! Command-line front end: generate datasets, build indexes, answer
//! eclipse queries, estimate expected result sizes and run benchmarks.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/domain error.

use clap::{Parser, Subcommand};
use eclipse::bench::{run_bench, write_report, BenchConfig, Workload};
use eclipse::datagen::{expected_eclipse_count, generate, DistributionKind, GenSpec};
use eclipse::io::{read_bundle, read_points, write_bundle, write_points};
use eclipse::query::{build_index, eclipse_query, query_bundle, IndexParams};
use eclipse::{Algorithm, RatioBox, Result};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "eclipse", version, about = "Eclipse query toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a synthetic dataset as CSV.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// CORR, INDE or ANTI.
        #[arg(long, default_value = "INDE")]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Answer an eclipse query, printing result ids ascending.
    Query {
        /// Dataset CSV.
        #[arg(long)]
        data: PathBuf,
        /// Ratio ranges 'l:h,l:h,...' (d-1 of them).
        #[arg(long)]
        range: String,
        /// base, tran, quad or cutting.
        #[arg(long, default_value = "tran")]
        algo: String,
        /// Prebuilt index file (quad/cutting only).
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Build and persist an index for quad or cutting queries.
    Build {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value = "quad")]
        algo: String,
        #[arg(long)]
        out: PathBuf,
        /// Quadtree leaf capacity (0 = default).
        #[arg(long, default_value_t = 0)]
        capacity: usize,
        /// Cutting site parameter t (0 = auto).
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Time the algorithms on a synthetic workload, reporting CSV.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "INDE")]
        kind: String,
        /// average or adversarial.
        #[arg(long, default_value = "average")]
        workload: String,
        /// One ratio range 'l:h' applied to every attribute.
        #[arg(long, default_value = "0.5:2.0")]
        range: String,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated algorithms (default: all four).
        #[arg(long, default_value = "base,tran,quad,cutting")]
        algos: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo estimate of the expected eclipse result size.
    Expect {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "INDE")]
        kind: String,
        /// One ratio range 'l:h' applied to every attribute.
        #[arg(long)]
        range: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses 'l:h,l:h,...' into interval pairs.
fn parse_ranges(s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(',')
        .map(|part| {
            let bad = || {
                eclipse::Error::InvalidRatioBox(format!(
                    "bad range '{part}' (expected 'l:h' with 0 <= l <= h)"
                ))
            };
            let (l, h) = part.split_once(':').ok_or_else(bad)?;
            let l: f64 = l.trim().parse().map_err(|_| bad())?;
            let h: f64 = h.trim().parse().map_err(|_| bad())?;
            Ok((l, h))
        })
        .collect()
}

/// One 'l:h' range for commands that apply it uniformly.
fn parse_single_range(s: &str) -> Result<(f64, f64)> {
    let ranges = parse_ranges(s)?;
    if ranges.len() != 1 {
        return Err(eclipse::Error::InvalidRatioBox(format!(
            "expected a single 'l:h' range, got '{s}'"
        )));
    }
    Ok(ranges[0])
}

/// ECLIPSE_SEED overrides any seed given on the command line.
fn effective_seed(cli_seed: u64) -> u64 {
    std::env::var("ECLIPSE_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(cli_seed)
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen { n, d, kind, seed, out } => {
            let kind: DistributionKind = kind.parse()?;
            let seed = effective_seed(seed);
            let ds = generate(&GenSpec { n, d, kind, seed })?;
            let mut w = open_out(&out)?;
            write_points(&mut w, &ds, Some(&format!("kind={kind} n={n} d={d} seed={seed}")))?;
        }
        Cmd::Query { data, range, algo, index } => {
            let algo: Algorithm = algo.parse()?;
            let ds = read_points(BufReader::new(File::open(&data)?))?;
            let bx = RatioBox::new(parse_ranges(&range)?)?;
            let ids = match index {
                Some(path) => {
                    if !matches!(algo, Algorithm::Quad | Algorithm::Cutting) {
                        return Err(eclipse::Error::InvalidDataset(format!(
                            "--index only applies to quad/cutting, not '{algo}'"
                        )));
                    }
                    let bundle = read_bundle(BufReader::new(File::open(&path)?))?;
                    query_bundle(&bundle, &bx)?
                }
                None => eclipse_query(&ds, &bx, algo)?,
            };
            let mut out = std::io::stdout().lock();
            for id in ids {
                writeln!(out, "{id}")?;
            }
        }
        Cmd::Build { data, algo, out, capacity, t, seed } => {
            let algo: Algorithm = algo.parse()?;
            let ds = read_points(BufReader::new(File::open(&data)?))?;
            let params = IndexParams {
                capacity,
                t,
                seed: effective_seed(seed.unwrap_or(IndexParams::default().seed)),
            };
            let bundle = build_index(&ds, algo, params)?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_bundle(&mut w, &bundle)?;
        }
        Cmd::Bench { n, d, kind, workload, range, reps, seed, algos, out } => {
            let kind: DistributionKind = kind.parse()?;
            let workload = match workload.to_ascii_lowercase().as_str() {
                "average" => Workload::Average,
                "adversarial" => Workload::Adversarial,
                other => {
                    return Err(eclipse::Error::InvalidDataset(format!(
                        "unknown workload '{other}' (expected average or adversarial)"
                    )))
                }
            };
            let (l, h) = parse_single_range(&range)?;
            let algorithms = algos
                .split(',')
                .map(|a| a.trim().parse::<Algorithm>())
                .collect::<Result<Vec<_>>>()?;
            let rows = run_bench(&BenchConfig {
                n,
                d,
                kind,
                workload,
                l,
                h,
                reps,
                seed: effective_seed(seed),
                algorithms,
            })?;
            let mut w = open_out(&out)?;
            write_report(&mut w, &rows)?;
        }
        Cmd::Expect { n, d, kind, range, trials, seed } => {
            let kind: DistributionKind = kind.parse()?;
            let (l, h) = parse_single_range(&range)?;
            let bx = RatioBox::uniform(d, l, h)?;
            let mean = expected_eclipse_count(n, d, kind, &bx, trials, effective_seed(seed))?;
            println!("{mean}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1); // usage error
        }
        Err(e) => {
            let _ = e.print(); // --help / --version
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2) // data/domain error
        }
    }
}
