//! Algorithm selection: one entry point dispatching a ratio-box query to
//! the baseline, the transform-to-skyline reduction, or a dual-space index
//! (quadtree- or cutting-backed intersection enumeration).

use crate::dominance::eclipse_baseline;
use crate::dual2d::{build_index_2d, query_index_2d};
use crate::dualhd::{
    build_cutting, build_order_vector_index_hd, build_quadtree, default_bounds,
    query_index_hd, IntersectionIndexHD,
};
use crate::error::{Error, Result};
use crate::io::IndexBundle;
use crate::model::{Dataset, RatioBox};
use crate::transform::eclipse_transform;
use std::fmt;
use std::str::FromStr;

/// Default leaf capacity of the quadtree intersection index.
pub const DEFAULT_QUADTREE_CAPACITY: usize = 16;
/// Default seed of the cutting's site sampler.
pub const DEFAULT_CUTTING_SEED: u64 = 0x45434C50; // "ECLP"

/// The four interchangeable query algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Pairwise dominance scan at the box corners.
    Base,
    /// Map to skyline space, run a skyline algorithm.
    Transform,
    /// Dual-space order vectors + quadtree intersection index.
    Quad,
    /// Dual-space order vectors + randomized cutting intersection index.
    Cutting,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Base => "base",
            Algorithm::Transform => "tran",
            Algorithm::Quad => "quad",
            Algorithm::Cutting => "cutting",
        }
    }

    pub const ALL: [Algorithm; 4] = [
        Algorithm::Base,
        Algorithm::Transform,
        Algorithm::Quad,
        Algorithm::Cutting,
    ];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "base" => Ok(Algorithm::Base),
            "tran" | "transform" => Ok(Algorithm::Transform),
            "quad" | "quadtree" => Ok(Algorithm::Quad),
            "cutting" | "cut" => Ok(Algorithm::Cutting),
            other => Err(Error::InvalidDataset(format!(
                "unknown algorithm '{other}' (expected base, tran, quad or cutting)"
            ))),
        }
    }
}

/// Tunables of the indexed algorithms; zero values mean "pick a default".
#[derive(Debug, Clone, Copy)]
pub struct IndexParams {
    pub capacity: usize,
    pub t: usize,
    pub seed: u64,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams {
            capacity: DEFAULT_QUADTREE_CAPACITY,
            t: 0,
            seed: DEFAULT_CUTTING_SEED,
        }
    }
}

/// Site parameter keeping the region count t^dim within ~128.
pub fn default_t(n_pairs: usize, dim: usize) -> usize {
    let cap = match dim {
        1 => 32,
        2 => 11,
        3 => 5,
        _ => 3,
    };
    let guess = (n_pairs as f64).powf(1.0 / (dim as f64 + 1.0)).ceil() as usize;
    guess.clamp(2, cap)
}

/// Builds the persistent index used by [`Algorithm::Quad`] or
/// [`Algorithm::Cutting`]; scan algorithms have nothing to build.
pub fn build_index(
    dataset: &Dataset,
    algo: Algorithm,
    params: IndexParams,
) -> Result<IndexBundle> {
    match algo {
        Algorithm::Base | Algorithm::Transform => Err(Error::InvalidDataset(format!(
            "algorithm '{algo}' is index-free; only quad and cutting build one"
        ))),
        _ if dataset.dim() == 2 => Ok(IndexBundle::TwoD(build_index_2d(dataset)?)),
        Algorithm::Quad => {
            let ovi = build_order_vector_index_hd(dataset)?;
            let capacity = if params.capacity == 0 {
                DEFAULT_QUADTREE_CAPACITY
            } else {
                params.capacity
            };
            let qt = build_quadtree(
                ovi.pairs().to_vec(),
                default_bounds(dataset.dim() - 1),
                capacity,
            );
            Ok(IndexBundle::HighD {
                ovi,
                ii: IntersectionIndexHD::Quadtree(qt),
            })
        }
        Algorithm::Cutting => {
            let ovi = build_order_vector_index_hd(dataset)?;
            let dim = dataset.dim() - 1;
            let t = if params.t == 0 {
                default_t(ovi.pairs().len(), dim)
            } else {
                params.t
            };
            let cut = build_cutting(
                ovi.pairs().to_vec(),
                default_bounds(dim),
                t,
                params.seed,
            );
            Ok(IndexBundle::HighD {
                ovi,
                ii: IntersectionIndexHD::Cutting(cut),
            })
        }
    }
}

/// Answers a query against a prebuilt index bundle.
pub fn query_bundle(bundle: &IndexBundle, bx: &RatioBox) -> Result<Vec<u64>> {
    match bundle {
        IndexBundle::TwoD(idx) => {
            if bx.point_dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    actual: bx.point_dim(),
                });
            }
            let (l, h) = bx.intervals()[0];
            query_index_2d(idx, l, h)
        }
        IndexBundle::HighD { ovi, ii } => query_index_hd(ovi, ii, bx).map(|(ids, _)| ids),
    }
}

/// Eclipse query with the chosen algorithm. All four return the same ids,
/// ascending.
pub fn eclipse_query(dataset: &Dataset, bx: &RatioBox, algo: Algorithm) -> Result<Vec<u64>> {
    if bx.point_dim() != dataset.dim() {
        return Err(Error::DimensionMismatch {
            expected: dataset.dim(),
            actual: bx.point_dim(),
        });
    }
    match algo {
        Algorithm::Base => eclipse_baseline(dataset, bx),
        Algorithm::Transform => eclipse_transform(dataset, bx),
        Algorithm::Quad | Algorithm::Cutting => {
            let bundle = build_index(dataset, algo, IndexParams::default())?;
            query_bundle(&bundle, bx)
        }
    }
}
