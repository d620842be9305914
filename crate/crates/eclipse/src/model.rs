//! Domain types shared by every eclipse algorithm: points, datasets,
//! weight vectors, and attribute weight-ratio boxes.

use crate::error::{Error, Result};

/// A d-dimensional point with a stable identifier.
///
/// Coordinates are non-negative finite reals; d >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    id: u64,
    coords: Vec<f64>,
}

impl Point {
    pub fn new(id: u64, coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidPoint {
                id,
                reason: format!("need at least 2 dimensions, got {}", coords.len()),
            });
        }
        for (j, &c) in coords.iter().enumerate() {
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidPoint {
                    id,
                    reason: format!("coordinate {} is {} (must be finite and >= 0)", j + 1, c),
                });
            }
        }
        Ok(Point { id, coords })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// 1-based coordinate access matching the usual p[j] notation.
    pub fn coord(&self, j: usize) -> f64 {
        self.coords[j - 1]
    }
}

/// A non-empty collection of points sharing one dimensionality.
#[derive(Debug, Clone)]
pub struct Dataset {
    points: Vec<Point>,
    dim: usize,
}

impl Dataset {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidDataset("dataset is empty".into()));
        };
        let dim = first.dim();
        let mut ids: Vec<u64> = Vec::with_capacity(points.len());
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: p.dim(),
                });
            }
            ids.push(p.id());
        }
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDataset("duplicate point ids".into()));
        }
        Ok(Dataset { points, dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point_by_id(&self, id: u64) -> Option<&Point> {
        self.points.iter().find(|p| p.id() == id)
    }
}

/// An attribute weight vector w[1..d]; w[d] = 1 when derived from a RatioBox.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    w: Vec<f64>,
}

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Self {
        WeightVector { w }
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// Builds the weight vector (r[1], ..., r[d-1], 1) for a ratio vector r.
    pub fn from_ratios(ratios: &[f64]) -> Self {
        let mut w = ratios.to_vec();
        w.push(1.0);
        WeightVector { w }
    }
}

/// Per-dimension attribute weight-ratio intervals [l_j, h_j], j = 1..d-1.
///
/// The d-th weight is fixed at 1, so a box over d-dimensional points holds
/// d-1 intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioBox {
    intervals: Vec<(f64, f64)>,
}

impl RatioBox {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidRatioBox("need at least one interval".into()));
        }
        for (j, &(l, h)) in intervals.iter().enumerate() {
            if !(l.is_finite() && h.is_finite()) || l < 0.0 || l > h {
                return Err(Error::InvalidRatioBox(format!(
                    "interval {} = [{}, {}] must satisfy 0 <= l <= h < inf",
                    j + 1,
                    l,
                    h
                )));
            }
        }
        Ok(RatioBox { intervals })
    }

    /// Same interval [l, h] repeated on every ratio dimension.
    pub fn uniform(d: usize, l: f64, h: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidRatioBox("d must be >= 2".into()));
        }
        Self::new(vec![(l, h); d - 1])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Dimensionality of the points this box applies to (intervals + 1).
    pub fn point_dim(&self) -> usize {
        self.intervals.len() + 1
    }

    pub fn ratio_dim(&self) -> usize {
        self.intervals.len()
    }
}

/// A weighted sum of coordinates.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Score(pub f64);

impl Score {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Weighted sum S(p) = sum_j p[j] * w[j].
pub fn score(p: &Point, w: &WeightVector) -> Result<Score> {
    if p.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            actual: w.dim(),
        });
    }
    Ok(Score(
        p.coords().iter().zip(w.weights()).map(|(a, b)| a * b).sum(),
    ))
}

/// All 2^(d-1) corner weight vectors of a ratio box, in lexicographic order
/// with l_j before h_j. Duplicates are retained when l_j = h_j.
pub fn corner_weights(bx: &RatioBox) -> Vec<WeightVector> {
    let m = bx.ratio_dim();
    let mut out = Vec::with_capacity(1 << m);
    for k in 0..(1usize << m) {
        let mut w = Vec::with_capacity(m + 1);
        for (j, &(l, h)) in bx.intervals().iter().enumerate() {
            // j = 0 is the most significant bit so enumeration is lexicographic.
            let take_high = (k >> (m - 1 - j)) & 1 == 1;
            w.push(if take_high { h } else { l });
        }
        w.push(1.0);
        out.push(WeightVector::new(w));
    }
    out
}

/// The d representative corners that suffice for the transform mapping:
/// the all-lower corner first, then for j = d-1 down to 1 the corner with
/// h_j in position j and l_k elsewhere.
pub fn representative_corners(bx: &RatioBox) -> Vec<WeightVector> {
    let m = bx.ratio_dim();
    let lows: Vec<f64> = bx.intervals().iter().map(|&(l, _)| l).collect();
    let mut out = Vec::with_capacity(m + 1);
    let mut all_low = lows.clone();
    all_low.push(1.0);
    out.push(WeightVector::new(all_low));
    for j in (0..m).rev() {
        let mut w = lows.clone();
        w[j] = bx.intervals()[j].1;
        w.push(1.0);
        out.push(WeightVector::new(w));
    }
    out
}
