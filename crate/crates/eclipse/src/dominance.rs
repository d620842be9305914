//! Exact dominance predicates and the quadratic baseline eclipse algorithm.
//!
//! The baseline doubles as the correctness oracle for the transform- and
//! index-based algorithms.

use crate::error::{Error, Result};
use crate::model::{corner_weights, score, Dataset, Point, RatioBox, WeightVector};

/// Which dominance relation a predicate implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceKind {
    OneNN,
    Skyline,
    Eclipse,
}

/// True iff p's score is <= q's at every corner weight vector of the box
/// and strictly smaller at at least one corner.
///
/// Checking the corners suffices for the whole box because the score gap
/// is affine in each ratio.
pub fn eclipse_dominates(p: &Point, q: &Point, bx: &RatioBox) -> Result<bool> {
    if p.id() == q.id() {
        return Err(Error::IdenticalIds(p.id()));
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            actual: q.dim(),
        });
    }
    if bx.point_dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            actual: bx.point_dim(),
        });
    }
    let mut strict = false;
    for w in corner_weights(bx) {
        let sp = score(p, &w)?.value();
        let sq = score(q, &w)?.value();
        if sp > sq {
            return Ok(false);
        }
        if sp < sq {
            strict = true;
        }
    }
    Ok(strict)
}

/// Coordinatewise dominance: p[j] <= q[j] for all j, strictly for some j.
pub fn skyline_dominates(p: &Point, q: &Point) -> Result<bool> {
    if p.id() == q.id() {
        return Err(Error::IdenticalIds(p.id()));
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            actual: q.dim(),
        });
    }
    Ok(coords_dominate(p.coords(), q.coords()))
}

pub(crate) fn coords_dominate(p: &[f64], q: &[f64]) -> bool {
    let mut strict = false;
    for (a, b) in p.iter().zip(q) {
        if a > b {
            return false;
        }
        if a < b {
            strict = true;
        }
    }
    strict
}

/// All points attaining the minimum score under w (ties give a set).
pub fn nn_point<'a>(dataset: &'a Dataset, w: &WeightVector) -> Result<Vec<&'a Point>> {
    let mut best = f64::INFINITY;
    let mut out: Vec<&Point> = Vec::new();
    for p in dataset.points() {
        let s = score(p, w)?.value();
        if s < best {
            best = s;
            out.clear();
            out.push(p);
        } else if s == best {
            out.push(p);
        }
    }
    Ok(out)
}

/// Baseline eclipse computation: O(n^2 * 2^(d-1)) corner-score comparisons.
///
/// Returns the ids of all points not eclipse-dominated by any other point,
/// in ascending order.
pub fn eclipse_baseline(dataset: &Dataset, bx: &RatioBox) -> Result<Vec<u64>> {
    if bx.point_dim() != dataset.dim() {
        return Err(Error::DimensionMismatch {
            expected: dataset.dim(),
            actual: bx.point_dim(),
        });
    }
    let corners = corner_weights(bx);
    let n = dataset.len();
    let points = dataset.points();

    // Per-pair corner checks, recomputing scores as in the quadratic
    // reference algorithm: O(n^2 * 2^(d-1)) score comparisons, breaking to
    // the next candidate pair on the first failing corner.
    let mut out = Vec::new();
    'candidate: for i in 0..n {
        'other: for j in 0..n {
            if j == i {
                continue;
            }
            let mut strict = false;
            for w in &corners {
                let sj = score(&points[j], w)?.value();
                let si = score(&points[i], w)?.value();
                if sj > si {
                    continue 'other; // j fails at this corner, try next point
                }
                if sj < si {
                    strict = true;
                }
            }
            if strict {
                continue 'candidate; // j eclipse-dominates i
            }
        }
        out.push(points[i].id());
    }
    out.sort_unstable();
    Ok(out)
}
