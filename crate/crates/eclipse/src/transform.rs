//! Transformation-based eclipse computation: map each point to its
//! intercept vector and take the skyline of the images.

use crate::error::{Error, Result};
use crate::model::{corner_weights, score, Dataset, Point, RatioBox, Score};
use crate::skyline::{skyline_rows_2d, skyline_rows_highd};

/// The intercept-vector image of a point.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedPoint {
    c: Vec<f64>,
    source_id: u64,
}

impl MappedPoint {
    pub fn coords(&self) -> &[f64] {
        &self.c
    }

    pub fn source_id(&self) -> u64 {
        self.source_id
    }
}

/// 2D mapping: c[1] = p[1] + p[2]/h, c[2] = l*p[1] + p[2].
pub fn map_point_2d(p: &Point, l: f64, h: f64) -> Result<MappedPoint> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: p.dim(),
        });
    }
    if h <= 0.0 || l < 0.0 || l > h {
        return Err(Error::InvalidRatioBox(format!(
            "2d mapping needs 0 <= l <= h with h > 0, got l={l}, h={h}"
        )));
    }
    Ok(MappedPoint {
        c: vec![p.coord(1) + p.coord(2) / h, l * p.coord(1) + p.coord(2)],
        source_id: p.id(),
    })
}

/// High-dimensional mapping of a point to its smallest intercepts:
/// c[d] = sum_j l_j*p[j] + p[d] and
/// c[j] = (p[d] + h_j*p[j] + sum_{k != j} l_k*p[k]) / h_j for j < d.
///
/// Reduces exactly to [`map_point_2d`] when d = 2.
pub fn map_point_highd(p: &Point, bx: &RatioBox) -> Result<MappedPoint> {
    let d = p.dim();
    if bx.point_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: bx.point_dim(),
        });
    }
    if let Some((j, _)) = bx.intervals().iter().enumerate().find(|(_, iv)| iv.1 <= 0.0) {
        return Err(Error::InvalidRatioBox(format!(
            "h_{} must be > 0 for the transform mapping",
            j + 1
        )));
    }
    let coords = p.coords();
    let last = coords[d - 1];
    let low_sum: f64 = bx
        .intervals()
        .iter()
        .zip(coords)
        .map(|(&(l, _), &x)| l * x)
        .sum();
    let mut c = Vec::with_capacity(d);
    for (j, &(l, h)) in bx.intervals().iter().enumerate() {
        c.push((last + h * coords[j] + (low_sum - l * coords[j])) / h);
    }
    c.push(low_sum + last);
    Ok(MappedPoint {
        c,
        source_id: p.id(),
    })
}

/// Scores of a point at every corner of the ratio box, in the order of
/// [`corner_weights`]. Eclipse dominance is exactly coordinate-wise
/// dominance of these vectors, for any d.
///
/// The d-coordinate intercept image of [`map_point_highd`] covers only the
/// all-low and single-high corners; for d >= 3 a pair of points can agree
/// on those yet flip order at a mixed corner, so the skyline runs on the
/// full corner-score image instead.
pub fn corner_score_image(p: &Point, bx: &RatioBox) -> Result<Vec<f64>> {
    corner_weights(bx)
        .iter()
        .map(|w| score(p, w).map(Score::value))
        .collect()
}

/// Eclipse via the transform: skyline of the per-point images, reported as
/// the ascending ids of the source points. In 2D the image is the
/// intercept pair; in higher dimensions it is the corner-score vector.
pub fn eclipse_transform(dataset: &Dataset, bx: &RatioBox) -> Result<Vec<u64>> {
    let (images, ids): (Vec<Vec<f64>>, Vec<u64>) = if dataset.dim() == 2 {
        dataset
            .points()
            .iter()
            .map(|p| map_point_highd(p, bx).map(|m| (m.coords().to_vec(), p.id())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    } else {
        dataset
            .points()
            .iter()
            .map(|p| corner_score_image(p, bx).map(|c| (c, p.id())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    };
    let rows: Vec<&[f64]> = images.iter().map(|c| c.as_slice()).collect();
    let keep = if dataset.dim() == 2 {
        skyline_rows_2d(&rows)
    } else {
        skyline_rows_highd(&rows)
    };
    let mut out: Vec<u64> = keep.iter().map(|&i| ids[i]).collect();
    out.sort_unstable();
    Ok(out)
}
