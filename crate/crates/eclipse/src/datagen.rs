//! Synthetic dataset generation (correlated / independent / anticorrelated)
//! and a Monte-Carlo estimator of expected eclipse result size.

use crate::error::{Error, Result};
use crate::model::{Dataset, Point, RatioBox};
use crate::transform::eclipse_transform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Attribute correlation structure of generated points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    Correlated,
    Independent,
    Anticorrelated,
}

impl DistributionKind {
    pub fn tag(self) -> &'static str {
        match self {
            DistributionKind::Correlated => "CORR",
            DistributionKind::Independent => "INDE",
            DistributionKind::Anticorrelated => "ANTI",
        }
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CORR" | "CORRELATED" => Ok(DistributionKind::Correlated),
            "INDE" | "INDEPENDENT" => Ok(DistributionKind::Independent),
            "ANTI" | "ANTICORRELATED" => Ok(DistributionKind::Anticorrelated),
            other => Err(Error::InvalidDataset(format!(
                "unknown distribution kind '{other}' (expected CORR, INDE or ANTI)"
            ))),
        }
    }
}

/// Parameters of one synthetic dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub d: usize,
    pub kind: DistributionKind,
    pub seed: u64,
}

/// Generates a dataset with coordinates in [0, 1] and ids 1..=n.
pub fn generate(spec: &GenSpec) -> Result<Dataset> {
    if spec.n == 0 {
        return Err(Error::InvalidDataset("n must be >= 1".into()));
    }
    if spec.d < 2 {
        return Err(Error::InvalidDataset("d must be >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, 0.05).expect("valid normal");
    let anti_total = Normal::new(0.5, 0.05).expect("valid normal");
    let points = (1..=spec.n as u64)
        .map(|id| {
            let coords = match spec.kind {
                DistributionKind::Independent => {
                    (0..spec.d).map(|_| rng.gen::<f64>()).collect()
                }
                DistributionKind::Correlated => {
                    let v: f64 = rng.gen();
                    (0..spec.d)
                        .map(|_| loop {
                            let x = v + noise.sample(&mut rng);
                            if (0.0..=1.0).contains(&x) {
                                break x;
                            }
                        })
                        .collect()
                }
                DistributionKind::Anticorrelated => {
                    let v: f64 = anti_total.sample(&mut rng);
                    let v = v.clamp(0.0, 1.0);
                    // Split the total v*d across coordinates by a random
                    // simplex cut, then clip each share to [0, 1].
                    let mut cuts: Vec<f64> = (0..spec.d - 1).map(|_| rng.gen()).collect();
                    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    cuts.insert(0, 0.0);
                    cuts.push(1.0);
                    cuts.windows(2)
                        .map(|w| ((w[1] - w[0]) * v * spec.d as f64).clamp(0.0, 1.0))
                        .collect()
                }
            };
            Point::new(id, coords)
        })
        .collect::<Result<Vec<Point>>>()?;
    Dataset::new(points)
}

/// Monte-Carlo mean of eclipse result size over `trials` independently
/// generated datasets (seeds base_seed, base_seed+1, ...).
pub fn expected_eclipse_count(
    n: usize,
    d: usize,
    kind: DistributionKind,
    bx: &RatioBox,
    trials: usize,
    base_seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidDataset("trials must be >= 1".into()));
    }
    if bx.point_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: bx.point_dim(),
        });
    }
    let counts = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let spec = GenSpec {
                n,
                d,
                kind,
                seed: base_seed.wrapping_add(t),
            };
            let ds = generate(&spec)?;
            Ok(eclipse_transform(&ds, bx)?.len())
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(counts.iter().sum::<usize>() as f64 / trials as f64)
}
