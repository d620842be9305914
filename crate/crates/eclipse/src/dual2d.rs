//! Two-dimensional dual-space index: dual lines of the skyline points,
//! sorted pairwise intersection x-coordinates, and one order vector per
//! x-axis interval. Queries answer any ratio range in O(u + m).

use crate::error::{Error, Result};
use crate::model::Dataset;
use crate::skyline::skyline_2d;

/// Dual line y = slope*x + intercept of a point (slope = p[1],
/// intercept = -p[2]).
#[derive(Debug, Clone, PartialEq)]
pub struct DualLine {
    pub slope: f64,
    pub intercept: f64,
    pub source_id: u64,
}

impl DualLine {
    fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// x-coordinate where the dual lines of an id pair intersect.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionRecord {
    pub x: f64,
    pub pair: (u64, u64),
}

/// Which counters the pair-decrement step compares.
///
/// `Snapshot` (the default) decides each pair from the initial rank vector
/// at the -l interval; `Mutated` replays the in-loop comparison of
/// the already-decremented counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecrementRule {
    #[default]
    Snapshot,
    Mutated,
}

/// Order Vector Index over the skyline's dual lines.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderVectorIndex2D {
    /// Dual lines of the skyline points, ascending source id.
    lines: Vec<DualLine>,
    /// Distinct intersection x-coordinates, strictly increasing.
    boundaries: Vec<f64>,
    /// One rank vector per interval (boundaries.len() + 1 of them),
    /// indexed like `lines`.
    vectors: Vec<Vec<u32>>,
    /// All intersections sorted by x (boundaries deduplicate these).
    intersections: Vec<IntersectionRecord>,
}

impl OrderVectorIndex2D {
    pub fn u(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[DualLine] {
        &self.lines
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    pub fn intersections(&self) -> &[IntersectionRecord] {
        &self.intersections
    }

    pub(crate) fn from_parts(
        lines: Vec<DualLine>,
        boundaries: Vec<f64>,
        vectors: Vec<Vec<u32>>,
        intersections: Vec<IntersectionRecord>,
    ) -> Self {
        OrderVectorIndex2D {
            lines,
            boundaries,
            vectors,
            intersections,
        }
    }

    fn position(&self, id: u64) -> usize {
        self.lines
            .binary_search_by_key(&id, |l| l.source_id)
            .expect("pair id belongs to the index")
    }

    /// Index of the interval containing x, with intervals
    /// (-inf, v1], (v1, v2], ..., (vK, +inf).
    fn interval_of(&self, x: f64) -> usize {
        self.boundaries.partition_point(|&b| b < x)
    }
}

/// The dual line of a 2D point: y = p[1]*x - p[2].
pub fn dual_line(p: &crate::model::Point) -> Result<DualLine> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: p.dim(),
        });
    }
    Ok(DualLine {
        slope: p.coord(1),
        intercept: -p.coord(2),
        source_id: p.id(),
    })
}

/// Builds the 2D index over the skyline points of the dataset.
pub fn build_index_2d(dataset: &Dataset) -> Result<OrderVectorIndex2D> {
    let sky = skyline_2d(dataset)?;
    let mut lines: Vec<DualLine> = sky
        .ids()
        .iter()
        .map(|&id| dual_line(dataset.point_by_id(id).expect("skyline id in dataset")))
        .collect::<Result<Vec<_>>>()?;
    lines.sort_by_key(|l| l.source_id);

    let mut intersections: Vec<IntersectionRecord> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i], &lines[j]);
            if a.slope == b.slope {
                continue; // parallel dual lines never swap order
            }
            let x = (b.intercept - a.intercept) / (a.slope - b.slope);
            intersections.push(IntersectionRecord {
                x,
                pair: (a.source_id, b.source_id),
            });
        }
    }
    intersections.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());

    let mut boundaries: Vec<f64> = intersections.iter().map(|r| r.x).collect();
    boundaries.dedup();

    let vectors = (0..=boundaries.len())
        .map(|i| rank_vector(&lines, sample_x(&boundaries, i)))
        .collect();

    Ok(OrderVectorIndex2D {
        lines,
        boundaries,
        vectors,
        intersections,
    })
}

/// A point strictly inside interval i. End intervals use unit offsets, the
/// rightmost staying inside (v_K, 0] since all queries live on the
/// negative x-axis.
fn sample_x(boundaries: &[f64], i: usize) -> f64 {
    let k = boundaries.len();
    if k == 0 {
        return -1.0;
    }
    if i == 0 {
        boundaries[0] - 1.0
    } else if i == k {
        (boundaries[k - 1] / 2.0).min(boundaries[k - 1] + 1.0)
    } else {
        (boundaries[i - 1] + boundaries[i]) / 2.0
    }
}

/// Rank of every line by |y| at x, 0 = closest to the x-axis.
fn rank_vector(lines: &[DualLine], x: f64) -> Vec<u32> {
    let dist: Vec<f64> = lines.iter().map(|l| l.eval(x).abs()).collect();
    dist.iter()
        .map(|&di| dist.iter().filter(|&&dj| dj < di).count() as u32)
        .collect()
}

/// Eclipse query against a prebuilt 2D index. Returns ascending ids.
pub fn query_index_2d(idx: &OrderVectorIndex2D, l: f64, h: f64) -> Result<Vec<u64>> {
    query_index_2d_with_rule(idx, l, h, DecrementRule::Snapshot).map(|(ids, _)| ids)
}

/// Query variant exposing the decrement rule and the number m of in-range
/// intersections processed.
pub fn query_index_2d_with_rule(
    idx: &OrderVectorIndex2D,
    l: f64,
    h: f64,
    rule: DecrementRule,
) -> Result<(Vec<u64>, usize)> {
    if !(l >= 0.0 && l <= h && h > 0.0) {
        return Err(Error::InvalidRatioBox(format!(
            "query range needs 0 <= l <= h with h > 0, got l={l}, h={h}"
        )));
    }
    let snapshot = idx.vectors[idx.interval_of(-l)].clone();
    let mut counters = snapshot.clone();

    // Intersections with x strictly inside (-h, -l).
    let lo = idx.intersections.partition_point(|r| r.x <= -h);
    let hi = idx.intersections.partition_point(|r| r.x < -l);
    let mut m = 0;
    for rec in &idx.intersections[lo..hi] {
        let a = idx.position(rec.pair.0);
        let b = idx.position(rec.pair.1);
        m += 1;
        let (ra, rb) = match rule {
            DecrementRule::Snapshot => (snapshot[a], snapshot[b]),
            DecrementRule::Mutated => (counters[a], counters[b]),
        };
        if ra < rb {
            counters[b] -= 1;
        } else {
            counters[a] -= 1;
        }
    }

    let ids = idx
        .lines
        .iter()
        .zip(&counters)
        .filter(|(_, &c)| c == 0)
        .map(|(l, _)| l.source_id)
        .collect();
    Ok((ids, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::eclipse_baseline;
    use crate::model::{Point, RatioBox};

    fn pt(id: u64, coords: &[f64]) -> Point {
        Point::new(id, coords.to_vec()).unwrap()
    }

    fn running_example() -> Dataset {
        Dataset::new(vec![
            pt(1, &[1.0, 6.0]),
            pt(2, &[4.0, 4.0]),
            pt(3, &[6.0, 1.0]),
            pt(4, &[8.0, 5.0]),
        ])
        .unwrap()
    }

    #[test]
    fn dual_line_worked_examples() {
        let l = dual_line(&pt(1, &[1.0, 6.0])).unwrap();
        assert_eq!((l.slope, l.intercept), (1.0, -6.0));
        let l = dual_line(&pt(3, &[6.0, 1.0])).unwrap();
        assert_eq!((l.slope, l.intercept), (6.0, -1.0));
        let l = dual_line(&pt(9, &[0.0, 0.0])).unwrap();
        assert_eq!((l.slope, l.intercept), (0.0, 0.0));
        assert!(dual_line(&pt(1, &[1.0, 2.0, 3.0])).is_err());
    }

    #[test]
    fn build_running_example() {
        let idx = build_index_2d(&running_example()).unwrap();
        assert_eq!(idx.u(), 3);
        assert_eq!(idx.boundaries(), &[-1.5, -1.0, -(2.0 / 3.0)]);
        assert_eq!(idx.vectors().len(), 4);
        // Rightmost interval: p3 closest to the axis, then p2, then p1.
        assert_eq!(idx.vectors()[3], vec![2, 1, 0]);
    }

    #[test]
    fn build_single_skyline_point() {
        let ds = Dataset::new(vec![pt(4, &[2.0, 2.0])]).unwrap();
        let idx = build_index_2d(&ds).unwrap();
        assert_eq!(idx.u(), 1);
        assert!(idx.boundaries().is_empty());
        assert_eq!(idx.vectors(), &[vec![0]]);
    }

    #[test]
    fn query_running_example() {
        let idx = build_index_2d(&running_example()).unwrap();
        let (ids, m) =
            query_index_2d_with_rule(&idx, 0.25, 2.0, DecrementRule::Snapshot).unwrap();
        assert_eq!(ids, vec![1, 2, 3]);
        assert_eq!(m, 3);
        // Degenerate range [2,2] is the 1NN at w = (2,1).
        assert_eq!(query_index_2d(&idx, 2.0, 2.0).unwrap(), vec![1]);
    }

    #[test]
    fn query_single_point_index() {
        let ds = Dataset::new(vec![pt(4, &[2.0, 2.0])]).unwrap();
        let idx = build_index_2d(&ds).unwrap();
        assert_eq!(query_index_2d(&idx, 0.01, 50.0).unwrap(), vec![4]);
    }

    #[test]
    fn query_range_outside_support() {
        let idx = build_index_2d(&running_example()).unwrap();
        // Far beyond all intersections: behaves like 1NN at the -l interval.
        assert_eq!(query_index_2d(&idx, 50.0, 60.0).unwrap(), vec![1]);
        assert_eq!(query_index_2d(&idx, 0.0, 0.01).unwrap(), vec![3]);
    }

    #[test]
    fn query_rejects_bad_range() {
        let idx = build_index_2d(&running_example()).unwrap();
        assert!(query_index_2d(&idx, 2.0, 1.0).is_err());
        assert!(query_index_2d(&idx, 0.0, 0.0).is_err());
    }

    #[test]
    fn adjacent_vectors_differ_by_boundary_transpositions() {
        let idx = build_index_2d(&running_example()).unwrap();
        for i in 0..idx.boundaries().len() {
            let before = &idx.vectors()[i];
            let after = &idx.vectors()[i + 1];
            let x = idx.boundaries()[i];
            let mut expect = before.clone();
            for rec in idx.intersections().iter().filter(|r| r.x == x) {
                let a = idx.position(rec.pair.0);
                let b = idx.position(rec.pair.1);
                expect.swap(a, b);
            }
            assert_eq!(&expect, after);
        }
    }

    #[test]
    fn oracle_equivalence_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for case in 0..500 {
            let n = 1 + rng.gen_range(0..64);
            let pts: Vec<Point> = (0..n)
                .map(|i| {
                    Point::new(i as u64, vec![rng.gen::<f64>(), rng.gen::<f64>()]).unwrap()
                })
                .collect();
            let ds = Dataset::new(pts).unwrap();
            let l = rng.gen::<f64>() * 2.0;
            let h = l + rng.gen::<f64>() * 3.0 + 1e-6;
            let bx = RatioBox::new(vec![(l, h)]).unwrap();
            let idx = build_index_2d(&ds).unwrap();
            let got = query_index_2d(&idx, l, h).unwrap();
            let want = eclipse_baseline(&ds, &bx).unwrap();
            assert_eq!(got, want, "case {case}: l={l} h={h}");
        }
    }

    #[test]
    fn counter_conservation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<Point> = (0..48)
            .map(|i| Point::new(i as u64, vec![rng.gen::<f64>(), rng.gen::<f64>()]).unwrap())
            .collect();
        let ds = Dataset::new(pts).unwrap();
        let idx = build_index_2d(&ds).unwrap();
        let (l, h) = (0.2, 3.0);
        let truth = idx
            .intersections()
            .iter()
            .filter(|r| r.x > -h && r.x < -l)
            .count();
        let (_, m) = query_index_2d_with_rule(&idx, l, h, DecrementRule::Snapshot).unwrap();
        assert_eq!(m, truth);
    }
}
