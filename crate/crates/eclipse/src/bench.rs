//! Benchmark harness: timed build/query runs over synthetic workloads,
//! reporting medians as CSV rows.

use crate::datagen::{generate, DistributionKind, GenSpec};
use crate::error::{Error, Result};
use crate::model::{Dataset, Point, RatioBox};
use crate::query::{build_index, eclipse_query, query_bundle, Algorithm, IndexParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::io::Write;
use std::time::Instant;

/// How query instances are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Workload {
    /// Synthetic distribution straight from the generator.
    Average,
    /// Points near one hyperplane, making the dual pair hyperplanes nearly
    /// concurrent — the intersection indexes' hardest case.
    Adversarial,
}

impl Workload {
    pub fn tag(self) -> &'static str {
        match self {
            Workload::Average => "average",
            Workload::Adversarial => "adversarial",
        }
    }
}

/// One measured configuration.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub workload: Workload,
    pub n: usize,
    pub d: usize,
    pub l: f64,
    pub h: f64,
    pub build_ns: u128,
    pub query_ns: u128,
    pub result_count: usize,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n: usize,
    pub d: usize,
    pub kind: DistributionKind,
    pub workload: Workload,
    pub l: f64,
    pub h: f64,
    pub reps: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
}

/// Points concentrated near the hyperplane
/// p_d = 0.75 - 0.5 * (p_1 + ... + p_{d-1}) / (d - 1), so the dual
/// hyperplanes of the skyline pass near one common point.
pub fn adversarial_dataset(n: usize, d: usize, seed: u64) -> Result<Dataset> {
    if n == 0 || d < 2 {
        return Err(Error::InvalidDataset("need n >= 1 and d >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 1e-4).expect("valid normal");
    let points = (1..=n as u64)
        .map(|id| {
            let mut coords: Vec<f64> = (0..d - 1).map(|_| rng.gen()).collect();
            let mean = coords.iter().sum::<f64>() / (d - 1) as f64;
            let last = (0.75 - 0.5 * mean + noise.sample(&mut rng)).clamp(0.0, 1.0);
            coords.push(last);
            Point::new(id, coords)
        })
        .collect::<Result<Vec<Point>>>()?;
    Dataset::new(points)
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn workload_dataset(cfg: &BenchConfig) -> Result<Dataset> {
    match cfg.workload {
        Workload::Average => generate(&GenSpec {
            n: cfg.n,
            d: cfg.d,
            kind: cfg.kind,
            seed: cfg.seed,
        }),
        Workload::Adversarial => adversarial_dataset(cfg.n, cfg.d, cfg.seed),
    }
}

/// Runs every requested algorithm on one generated dataset, reporting
/// median build and query times over `reps` repetitions.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.reps == 0 {
        return Err(Error::InvalidDataset("reps must be >= 1".into()));
    }
    let ds = workload_dataset(cfg)?;
    let bx = RatioBox::uniform(cfg.d, cfg.l, cfg.h)?;
    let mut rows = Vec::new();
    for &algo in &cfg.algorithms {
        let (build_ns, bundle) = match algo {
            Algorithm::Base | Algorithm::Transform => (0, None),
            Algorithm::Quad | Algorithm::Cutting => {
                let mut times = Vec::with_capacity(cfg.reps);
                let mut built = None;
                for _ in 0..cfg.reps {
                    let t0 = Instant::now();
                    built = Some(build_index(&ds, algo, IndexParams::default())?);
                    times.push(t0.elapsed().as_nanos());
                }
                (median(times), built)
            }
        };
        let mut times = Vec::with_capacity(cfg.reps);
        let mut result = Vec::new();
        for _ in 0..cfg.reps {
            let t0 = Instant::now();
            result = match &bundle {
                Some(b) => query_bundle(b, &bx)?,
                None => eclipse_query(&ds, &bx, algo)?,
            };
            times.push(t0.elapsed().as_nanos());
        }
        rows.push(BenchRow {
            algorithm: algo,
            workload: cfg.workload,
            n: cfg.n,
            d: cfg.d,
            l: cfg.l,
            h: cfg.h,
            build_ns,
            query_ns: median(times),
            result_count: result.len(),
        });
    }
    Ok(rows)
}

/// CSV report, one row per measurement.
pub fn write_report<W: Write>(w: &mut W, rows: &[BenchRow]) -> Result<()> {
    writeln!(
        w,
        "algorithm,workload,n,d,l,h,build_ns,query_ns,result_count"
    )?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.algorithm.tag(),
            r.workload.tag(),
            r.n,
            r.d,
            r.l,
            r.h,
            r.build_ns,
            r.query_ns,
            r.result_count
        )?;
    }
    Ok(())
}
