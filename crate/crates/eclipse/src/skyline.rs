//! Skyline (Pareto-minima) computation: an O(n log n) sweep for d = 2 and
//! a divide-and-conquer ECDF/maxima scheme for d >= 2.
//!
//! Minimization orientation throughout: smaller coordinates are better.
//! Duplicate coordinate vectors of an undominated point are all retained.

use crate::error::{Error, Result};
use crate::model::Dataset;
use std::collections::HashMap;

/// Below this size the recursion bottoms out at a pairwise scan.
const BASE_CASE: usize = 32;

/// Ids of the skyline members of a dataset, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkylineResult {
    ids: Vec<u64>,
}

impl SkylineResult {
    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    /// Number of skyline points, conventionally written u.
    pub fn u(&self) -> usize {
        self.ids.len()
    }
}

/// Exact 2D skyline: sort by (x asc, y asc), single sweep keeping points
/// with strictly decreasing y.
pub fn skyline_2d(dataset: &Dataset) -> Result<SkylineResult> {
    if dataset.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: dataset.dim(),
        });
    }
    let rows: Vec<&[f64]> = dataset.points().iter().map(|p| p.coords()).collect();
    let keep = skyline_rows_2d(&rows);
    Ok(collect_ids(dataset, &keep))
}

/// Exact skyline for any d >= 2 via divide and conquer on the first
/// coordinate with a (d-1)-dimensional merge.
pub fn skyline_highd(dataset: &Dataset) -> Result<SkylineResult> {
    let rows: Vec<&[f64]> = dataset.points().iter().map(|p| p.coords()).collect();
    let keep = skyline_rows_highd(&rows);
    Ok(collect_ids(dataset, &keep))
}

fn collect_ids(dataset: &Dataset, keep: &[usize]) -> SkylineResult {
    let mut ids: Vec<u64> = keep.iter().map(|&i| dataset.points()[i].id()).collect();
    ids.sort_unstable();
    SkylineResult { ids }
}

/// Groups rows by exact coordinate bits so duplicates survive together and
/// the core recursion only sees distinct vectors.
fn unique_groups(rows: &[&[f64]]) -> (Vec<Vec<f64>>, Vec<Vec<usize>>) {
    let mut map: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut uniq: Vec<Vec<f64>> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let key: Vec<u64> = row.iter().map(|c| c.to_bits()).collect();
        let slot = *map.entry(key).or_insert_with(|| {
            uniq.push(row.to_vec());
            groups.push(Vec::new());
            uniq.len() - 1
        });
        groups[slot].push(i);
    }
    (uniq, groups)
}

/// Indices of skyline rows among `rows` (d = 2 sweep).
pub(crate) fn skyline_rows_2d(rows: &[&[f64]]) -> Vec<usize> {
    let (uniq, groups) = unique_groups(rows);
    let mut order: Vec<usize> = (0..uniq.len()).collect();
    order.sort_by(|&a, &b| uniq[a].partial_cmp(&uniq[b]).unwrap());
    let mut out = Vec::new();
    let mut min_y = f64::INFINITY;
    for &g in &order {
        let y = uniq[g][1];
        if y < min_y {
            min_y = y;
            out.extend_from_slice(&groups[g]);
        }
    }
    out.sort_unstable();
    out
}

/// Indices of skyline rows among `rows` (any d >= 2).
pub(crate) fn skyline_rows_highd(rows: &[&[f64]]) -> Vec<usize> {
    // Lexicographic sort makes duplicate rows adjacent, so grouping them
    // needs no hashing; the core recursion then sees distinct sorted rows.
    let mut by_row: Vec<usize> = (0..rows.len()).collect();
    by_row.sort_by(|&a, &b| rows[a].partial_cmp(rows[b]).unwrap());
    let mut uniq: Vec<Vec<f64>> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &by_row {
        if uniq.last().map(|u| u.as_slice()) != Some(rows[i]) {
            uniq.push(rows[i].to_vec());
            groups.push(Vec::new());
        }
        groups.last_mut().expect("nonempty").push(i);
    }
    let order: Vec<usize> = (0..uniq.len()).collect();
    let survivors = minima_rec(&uniq, order);
    let mut out = Vec::new();
    for g in survivors {
        out.extend_from_slice(&groups[g]);
    }
    out.sort_unstable();
    out
}

/// Distinct-vector weak dominance on a coordinate suffix: l[k..] <= r[k..]
/// componentwise. On full vectors of distinct rows this is exactly
/// skyline dominance.
fn suffix_dominates(l: &[f64], r: &[f64], k: usize) -> bool {
    l[k..].iter().zip(&r[k..]).all(|(a, b)| a <= b)
}

/// Minima of distinct, lexicographically sorted rows.
fn minima_rec(pts: &[Vec<f64>], idx: Vec<usize>) -> Vec<usize> {
    if idx.len() <= BASE_CASE {
        return minima_scan(pts, idx);
    }
    let mid = idx.len() / 2;
    let a: Vec<usize> = idx[..mid].to_vec();
    let b: Vec<usize> = idx[mid..].to_vec();
    let sa = minima_rec(pts, a);
    let sb = minima_rec(pts, b);
    // Every row in sa has first coordinate <= every row in sb (lex order),
    // so dominance between the halves reduces to the remaining coordinates.
    let sb = filter_rec(pts, &sa, sb, 1);
    let mut out = sa;
    out.extend(sb);
    out
}

fn minima_scan(pts: &[Vec<f64>], idx: Vec<usize>) -> Vec<usize> {
    let mut out = Vec::with_capacity(idx.len());
    'outer: for (pos, &i) in idx.iter().enumerate() {
        for (qos, &j) in idx.iter().enumerate() {
            if qos != pos && suffix_dominates(&pts[j], &pts[i], 0) {
                // Distinct vectors, so weak dominance is strict somewhere.
                continue 'outer;
            }
        }
        out.push(i);
    }
    out
}

/// Removes from `right` every row weakly dominated on coords k.. by some
/// row of `left`. Caller guarantees left rows are <= right rows on all
/// coordinates before k.
fn filter_rec(pts: &[Vec<f64>], left: &[usize], mut right: Vec<usize>, k: usize) -> Vec<usize> {
    let d = pts.first().map_or(0, |p| p.len());
    if left.is_empty() || right.is_empty() {
        return right;
    }
    if k + 1 == d {
        let m = left
            .iter()
            .map(|&l| pts[l][k])
            .fold(f64::INFINITY, f64::min);
        right.retain(|&r| pts[r][k] < m);
        return right;
    }
    if left.len() * right.len() <= BASE_CASE * BASE_CASE {
        right.retain(|&r| !left.iter().any(|&l| suffix_dominates(&pts[l], &pts[r], k)));
        return right;
    }
    let vals = left.iter().chain(&right).map(|&i| pts[i][k]);
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if lo == hi {
        return filter_rec(pts, left, right, k + 1);
    }
    let mut pivot = (lo + hi) / 2.0;
    if pivot >= hi {
        pivot = lo;
    }
    let (l_lo, l_hi): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&i| pts[i][k] <= pivot);
    let (r_lo, r_hi): (Vec<usize>, Vec<usize>) = right.iter().partition(|&&i| pts[i][k] <= pivot);
    // Low-left rows satisfy <= on coordinate k against high-right rows,
    // so that comparison drops a coordinate.
    let r_hi = filter_rec(pts, &l_lo, r_hi, k + 1);
    let r_hi = filter_rec(pts, &l_hi, r_hi, k);
    let r_lo = filter_rec(pts, &l_lo, r_lo, k);
    let mut out = r_lo;
    out.extend(r_hi);
    out
}
