//! High-dimensional dual-space index. Dual hyperplanes of the skyline
//! points live in d-space; each pair of them meets in a (d-1)-dimensional
//! hyperplane of ratio space. An order-vector structure answers point
//! location for the query reference corner; an Intersection Index
//! (hyperplane quadtree or randomized Voronoi cutting) enumerates the
//! pairs whose order flips inside a query box.

use crate::error::{Error, Result};
use crate::model::{Dataset, Point, RatioBox};
use crate::skyline::skyline_highd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Skyline-count guard for d = 3 index builds.
pub const HD_GUARD_D3: usize = 512;
/// Skyline-count guard for d >= 4 index builds.
pub const HD_GUARD_HIGH: usize = 128;

/// Maximum subdivision depth of the intersection quadtree; deeper leaves
/// hold unbounded entries and degrade to a scan.
pub const QUADTREE_DEPTH_CAP: usize = 32;

/// Node budget of the intersection quadtree; once spent, remaining
/// subtrees become (possibly overfull) leaves.
const MAX_QT_NODES: usize = 1 << 14;

/// Node budget for the materialized order-vector cells.
const MAX_OV_CELLS: usize = 4096;
const OV_DEPTH_CAP: usize = 20;

/// Default extent of the indexed region [-BOUNDS_EXTENT, 0]^(d-1) in dual
/// space; queries reaching outside fall back to scanning all pairs.
pub const BOUNDS_EXTENT: f64 = 64.0;

/// Geometric slack for the cutting's conservative region tests.
const SLACK: f64 = 1e-7;

/// Dual hyperplane x_d = sum coeffs[j]*x_j + offset of a point
/// (coeffs[j] = p[j+1], offset = -p[d]).
#[derive(Debug, Clone, PartialEq)]
pub struct DualHyperplane {
    pub coeffs: Vec<f64>,
    pub offset: f64,
    pub source_id: u64,
}

impl DualHyperplane {
    /// Signed x_d value at a ratio-space point; |value| is the distance
    /// to the hyperplane x_d = 0.
    pub fn depth(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() + self.offset
    }
}

/// The x_d-eliminated intersection of two dual hyperplanes:
/// sum coeffs[j]*x_j = offset.
#[derive(Debug, Clone, PartialEq)]
pub struct PairHyperplane {
    pub coeffs: Vec<f64>,
    pub offset: f64,
    pub pair: (u64, u64),
}

impl PairHyperplane {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() - self.offset
    }
}

/// The dual hyperplane of a point.
pub fn dual_hyperplane(p: &Point) -> DualHyperplane {
    let d = p.dim();
    DualHyperplane {
        coeffs: p.coords()[..d - 1].to_vec(),
        offset: -p.coords()[d - 1],
        source_id: p.id(),
    }
}

/// Intersection hyperplane of the dual hyperplanes of two points:
/// coeffs[j] = a[j] - b[j] for j < d, offset = a[d] - b[d].
pub fn pair_hyperplane(a: &Point, b: &Point) -> Result<PairHyperplane> {
    if a.id() == b.id() {
        return Err(Error::IdenticalIds(a.id()));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    let d = a.dim();
    let coeffs: Vec<f64> = (0..d - 1)
        .map(|j| a.coords()[j] - b.coords()[j])
        .collect();
    if coeffs.iter().all(|&c| c == 0.0) {
        return Err(Error::DegeneratePair(a.id(), b.id()));
    }
    Ok(PairHyperplane {
        coeffs,
        offset: a.coords()[d - 1] - b.coords()[d - 1],
        pair: (a.id().min(b.id()), a.id().max(b.id())),
    })
}

/// An axis-aligned box in (d-1)-dimensional ratio space.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRegion {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        debug_assert_eq!(lo.len(), hi.len());
        BoxRegion { lo, hi }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (l + h) / 2.0)
            .collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&v, (&l, &h))| v >= l && v <= h)
    }

    pub fn contains_box(&self, other: &BoxRegion) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    pub fn overlaps(&self, other: &BoxRegion) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(other.lo.iter().zip(&other.hi))
            .all(|((&l, &h), (&ol, &oh))| l <= oh && h >= ol)
    }

    /// All 2^dim corners.
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let dim = self.dim();
        (0..1usize << dim)
            .map(|mask| {
                (0..dim)
                    .map(|j| {
                        if mask >> j & 1 == 1 {
                            self.hi[j]
                        } else {
                            self.lo[j]
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The 2^dim child boxes of a center split; child index bit j set
    /// means the upper half along dimension j.
    fn children(&self) -> Vec<BoxRegion> {
        let c = self.center();
        let dim = self.dim();
        (0..1usize << dim)
            .map(|mask| {
                let mut lo = self.lo.clone();
                let mut hi = self.hi.clone();
                for j in 0..dim {
                    if mask >> j & 1 == 1 {
                        lo[j] = c[j];
                    } else {
                        hi[j] = c[j];
                    }
                }
                BoxRegion::new(lo, hi)
            })
            .collect()
    }

    fn child_of(&self, x: &[f64]) -> usize {
        let c = self.center();
        (0..self.dim()).fold(0usize, |m, j| m | usize::from(x[j] >= c[j]) << j)
    }
}

/// Exact box-crossing test: the affine form is monotone per coordinate, so
/// its extremes over the box sit at corners and accumulate termwise;
/// crossing iff min <= 0 <= max (zero counts as both signs).
pub fn crosses_box(h: &PairHyperplane, bx: &BoxRegion) -> bool {
    let mut min = -h.offset;
    let mut max = -h.offset;
    for ((&c, &l), &u) in h.coeffs.iter().zip(&bx.lo).zip(&bx.hi) {
        let (a, b) = (c * l, c * u);
        min += a.min(b);
        max += a.max(b);
    }
    min <= 0.0 && max >= 0.0
}

pub(crate) enum CellNode {
    /// No pair hyperplane crosses this cell: the rank vector is constant.
    Pure { witness: Vec<f64>, ranks: Vec<u32> },
    /// Budget or depth cap reached; ranks are computed on demand.
    Mixed,
    Split { children: Vec<CellNode> },
}

/// Order Vector Index over the arrangement of pair hyperplanes in
/// (d-1)-dimensional ratio space.
pub struct OrderVectorIndexHD {
    ids: Vec<u64>,
    duals: Vec<DualHyperplane>,
    pairs: Vec<PairHyperplane>,
    bounds: BoxRegion,
    root: CellNode,
}

impl OrderVectorIndexHD {
    pub fn u(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn duals(&self) -> &[DualHyperplane] {
        &self.duals
    }

    pub fn pairs(&self) -> &[PairHyperplane] {
        &self.pairs
    }

    pub fn bounds(&self) -> &BoxRegion {
        &self.bounds
    }

    /// Rank of every dual hyperplane at x by |x_d| distance to x_d = 0.
    pub fn rank_at(&self, x: &[f64]) -> Vec<u32> {
        rank_vector(&self.duals, x)
    }

    /// Rank vector of the cell containing x (computed directly when x
    /// falls in a mixed cell or outside the indexed bounds).
    pub fn locate(&self, x: &[f64]) -> Vec<u32> {
        if !self.bounds.contains(x) {
            return self.rank_at(x);
        }
        let mut node = &self.root;
        let mut bx = self.bounds.clone();
        loop {
            match node {
                CellNode::Pure { ranks, .. } => return ranks.clone(),
                CellNode::Mixed => return self.rank_at(x),
                CellNode::Split { children } => {
                    let idx = bx.child_of(x);
                    bx = bx.children().swap_remove(idx);
                    node = &children[idx];
                }
            }
        }
    }

    /// Materialized constant-rank cells as (witness, rank vector) pairs.
    pub fn cells(&self) -> Vec<(Vec<f64>, Vec<u32>)> {
        let mut out = Vec::new();
        collect_cells(&self.root, &mut out);
        out
    }

    fn position(&self, id: u64) -> usize {
        self.ids.binary_search(&id).expect("pair id in index")
    }

    pub(crate) fn root(&self) -> &CellNode {
        &self.root
    }

    pub(crate) fn from_parts(
        ids: Vec<u64>,
        duals: Vec<DualHyperplane>,
        pairs: Vec<PairHyperplane>,
        bounds: BoxRegion,
        root: CellNode,
    ) -> Self {
        OrderVectorIndexHD {
            ids,
            duals,
            pairs,
            bounds,
            root,
        }
    }
}

fn collect_cells(node: &CellNode, out: &mut Vec<(Vec<f64>, Vec<u32>)>) {
    match node {
        CellNode::Pure { witness, ranks } => out.push((witness.clone(), ranks.clone())),
        CellNode::Mixed => {}
        CellNode::Split { children } => {
            for c in children {
                collect_cells(c, out);
            }
        }
    }
}

fn rank_vector(duals: &[DualHyperplane], x: &[f64]) -> Vec<u32> {
    let dist: Vec<f64> = duals.iter().map(|h| h.depth(x).abs()).collect();
    dist.iter()
        .map(|&di| dist.iter().filter(|&&dj| dj < di).count() as u32)
        .collect()
}

/// Builds the order-vector index for d >= 3 (d = 2 is served by the
/// dedicated 2D index). Errors with `IndexTooLarge` when the skyline
/// exceeds the pair-hyperplane guard.
pub fn build_order_vector_index_hd(dataset: &Dataset) -> Result<OrderVectorIndexHD> {
    build_order_vector_index_hd_bounded(dataset, default_bounds(dataset.dim() - 1))
}

pub fn build_order_vector_index_hd_bounded(
    dataset: &Dataset,
    bounds: BoxRegion,
) -> Result<OrderVectorIndexHD> {
    let d = dataset.dim();
    if d < 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: d,
        });
    }
    let sky = skyline_highd(dataset)?;
    let guard = if d == 3 { HD_GUARD_D3 } else { HD_GUARD_HIGH };
    if sky.u() > guard {
        return Err(Error::IndexTooLarge { u: sky.u(), guard });
    }
    let points: Vec<&Point> = sky
        .ids()
        .iter()
        .map(|&id| dataset.point_by_id(id).expect("skyline id in dataset"))
        .collect();
    let ids: Vec<u64> = points.iter().map(|p| p.id()).collect();
    let duals: Vec<DualHyperplane> = points.iter().map(|p| dual_hyperplane(p)).collect();
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            match pair_hyperplane(points[i], points[j]) {
                Ok(ph) => pairs.push(ph),
                Err(Error::DegeneratePair(..)) => {} // parallel duals never swap
                Err(e) => return Err(e),
            }
        }
    }
    let all: Vec<usize> = (0..pairs.len()).collect();
    let mut budget = MAX_OV_CELLS;
    let root = build_cells(&duals, &pairs, &bounds, &all, 0, &mut budget);
    Ok(OrderVectorIndexHD {
        ids,
        duals,
        pairs,
        bounds,
        root,
    })
}

pub fn default_bounds(dim: usize) -> BoxRegion {
    BoxRegion::new(vec![-BOUNDS_EXTENT; dim], vec![0.0; dim])
}

fn build_cells(
    duals: &[DualHyperplane],
    pairs: &[PairHyperplane],
    bx: &BoxRegion,
    crossing: &[usize],
    depth: usize,
    budget: &mut usize,
) -> CellNode {
    if crossing.is_empty() {
        let witness = bx.center();
        let ranks = rank_vector(duals, &witness);
        return CellNode::Pure { witness, ranks };
    }
    if depth >= OV_DEPTH_CAP || *budget == 0 {
        return CellNode::Mixed;
    }
    let children = bx
        .children()
        .iter()
        .map(|child| {
            if *budget == 0 {
                return CellNode::Mixed;
            }
            *budget -= 1;
            let sub: Vec<usize> = crossing
                .iter()
                .copied()
                .filter(|&i| crosses_box(&pairs[i], child))
                .collect();
            build_cells(duals, pairs, child, &sub, depth + 1, budget)
        })
        .collect();
    CellNode::Split { children }
}

// ---------------------------------------------------------------------------
// Intersection Index: hyperplane quadtree
// ---------------------------------------------------------------------------

pub(crate) enum QtNode {
    Leaf { entries: Vec<usize> },
    Internal { children: Vec<QtNode> },
}

/// Recursive 2^(d-1)-ary subdivision storing, per leaf, the pair
/// hyperplanes crossing its box.
pub struct QuadtreeIndex {
    hyperplanes: Vec<PairHyperplane>,
    bounds: BoxRegion,
    capacity: usize,
    pub(crate) root: QtNode,
}

impl QuadtreeIndex {
    pub fn bounds(&self) -> &BoxRegion {
        &self.bounds
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn hyperplanes(&self) -> &[PairHyperplane] {
        &self.hyperplanes
    }

    pub fn depth(&self) -> usize {
        fn go(n: &QtNode) -> usize {
            match n {
                QtNode::Leaf { .. } => 0,
                QtNode::Internal { children } => 1 + children.iter().map(go).max().unwrap_or(0),
            }
        }
        go(&self.root)
    }

    /// Deduplicated indices of hyperplanes stored in leaves overlapping
    /// the query box (a superset of the true crossing set).
    pub fn candidates(&self, query: &BoxRegion) -> Vec<usize> {
        let mut out = Vec::new();
        fn go(node: &QtNode, bx: &BoxRegion, query: &BoxRegion, out: &mut Vec<usize>) {
            if !bx.overlaps(query) {
                return;
            }
            match node {
                QtNode::Leaf { entries } => out.extend_from_slice(entries),
                QtNode::Internal { children } => {
                    for (child, cbx) in children.iter().zip(bx.children()) {
                        go(child, &cbx, query, out);
                    }
                }
            }
        }
        go(&self.root, &self.bounds, query, &mut out);
        dedup_preserving_order(&mut out, self.hyperplanes.len());
        out.sort_unstable();
        out
    }

    pub(crate) fn from_parts(
        hyperplanes: Vec<PairHyperplane>,
        bounds: BoxRegion,
        capacity: usize,
        root: QtNode,
    ) -> Self {
        QuadtreeIndex {
            hyperplanes,
            bounds,
            capacity,
            root,
        }
    }
}

pub fn build_quadtree(
    hyperplanes: Vec<PairHyperplane>,
    bounds: BoxRegion,
    capacity: usize,
) -> QuadtreeIndex {
    assert!(capacity >= 1, "capacity must be >= 1");
    let all: Vec<usize> = (0..hyperplanes.len()).collect();
    let mut budget = MAX_QT_NODES;
    let root = build_qt(&hyperplanes, &bounds, all, capacity, 0, &mut budget);
    QuadtreeIndex {
        hyperplanes,
        bounds,
        capacity,
        root,
    }
}

fn build_qt(
    hps: &[PairHyperplane],
    bx: &BoxRegion,
    entries: Vec<usize>,
    capacity: usize,
    depth: usize,
    budget: &mut usize,
) -> QtNode {
    if entries.len() <= capacity || depth >= QUADTREE_DEPTH_CAP || *budget == 0 {
        return QtNode::Leaf { entries };
    }
    let children = bx
        .children()
        .iter()
        .map(|child| {
            if *budget == 0 {
                return QtNode::Leaf {
                    entries: entries.clone(),
                };
            }
            *budget -= 1;
            let sub: Vec<usize> = entries
                .iter()
                .copied()
                .filter(|&i| crosses_box(&hps[i], child))
                .collect();
            build_qt(hps, child, sub, capacity, depth + 1, budget)
        })
        .collect();
    QtNode::Internal { children }
}

/// Removes duplicate indices in O(len) with a mark vector; indices must be
/// below `universe`.
fn dedup_preserving_order(out: &mut Vec<usize>, universe: usize) {
    let mut seen = vec![false; universe];
    out.retain(|&i| {
        let keep = !seen[i];
        seen[i] = true;
        keep
    });
}

// ---------------------------------------------------------------------------
// Intersection Index: randomized Voronoi cutting
// ---------------------------------------------------------------------------

pub(crate) struct CutRegion {
    pub site: usize,
    pub bbox: BoxRegion,
    pub entries: Vec<usize>,
}

/// Randomized cutting: Voronoi regions of arrangement-vertex samples, each
/// region listing every hyperplane that crosses it (conservatively, never
/// missing a true crossing).
pub struct CuttingIndex {
    hyperplanes: Vec<PairHyperplane>,
    bounds: BoxRegion,
    t: usize,
    seed: u64,
    sites: Vec<Vec<f64>>,
    pub(crate) regions: Vec<CutRegion>,
}

impl CuttingIndex {
    pub fn bounds(&self) -> &BoxRegion {
        &self.bounds
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sites(&self) -> &[Vec<f64>] {
        &self.sites
    }

    pub fn hyperplanes(&self) -> &[PairHyperplane] {
        &self.hyperplanes
    }

    /// Crossing-list length of the most loaded region.
    pub fn max_region_crossings(&self) -> usize {
        self.regions.iter().map(|r| r.entries.len()).max().unwrap_or(0)
    }

    pub fn candidates(&self, query: &BoxRegion) -> Vec<usize> {
        let mut out = Vec::new();
        let universe = self.hyperplanes.len();
        let overlapping: Vec<&CutRegion> = self
            .regions
            .iter()
            .filter(|r| r.bbox.overlaps(query))
            .collect();
        // Candidates are a superset that the exact crossing filter prunes, so
        // once the overlapping lists could cover every hyperplane, skip the
        // dedup scan and hand back the whole range.
        let total: usize = overlapping.iter().map(|r| r.entries.len()).sum();
        if total >= universe {
            return (0..universe).collect();
        }
        let mut seen = vec![false; universe];
        for r in overlapping {
            for &k in &r.entries {
                if !seen[k] {
                    seen[k] = true;
                    out.push(k);
                }
            }
        }
        out.sort_unstable();
        out
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        hyperplanes: Vec<PairHyperplane>,
        bounds: BoxRegion,
        t: usize,
        seed: u64,
        sites: Vec<Vec<f64>>,
        regions: Vec<CutRegion>,
    ) -> Self {
        CuttingIndex {
            hyperplanes,
            bounds,
            t,
            seed,
            sites,
            regions,
        }
    }
}

pub fn build_cutting(
    hyperplanes: Vec<PairHyperplane>,
    bounds: BoxRegion,
    t: usize,
    seed: u64,
) -> CuttingIndex {
    assert!(t >= 1, "t must be >= 1");
    let dim = bounds.dim();
    let all: Vec<usize> = (0..hyperplanes.len()).collect();
    let single = |hps: Vec<PairHyperplane>| CuttingIndex {
        regions: vec![CutRegion {
            site: 0,
            bbox: bounds.clone(),
            entries: all.clone(),
        }],
        sites: vec![bounds.center()],
        hyperplanes: hps,
        bounds: bounds.clone(),
        t,
        seed,
    };
    if hyperplanes.len() < dim || t == 1 {
        return single(hyperplanes);
    }

    let sites = sample_sites(&hyperplanes, &bounds, t, seed);
    if sites.is_empty() {
        return single(hyperplanes);
    }

    let regions: Vec<CutRegion> = (0..sites.len())
        .map(|i| {
            let verts = region_vertices(&sites, i, &bounds);
            let bbox = vertex_bbox(&verts, &bounds);
            let entries: Vec<usize> = (0..hyperplanes.len())
                .filter(|&k| crosses_polytope(&hyperplanes[k], &verts))
                .collect();
            CutRegion {
                site: i,
                bbox,
                entries,
            }
        })
        .collect();

    CuttingIndex {
        hyperplanes,
        bounds,
        t,
        seed,
        sites,
        regions,
    }
}

/// Samples arrangement vertices (intersections of dim randomly chosen pair
/// hyperplanes) inside the bounds, up to t^dim sites.
fn sample_sites(
    hps: &[PairHyperplane],
    bounds: &BoxRegion,
    t: usize,
    seed: u64,
) -> Vec<Vec<f64>> {
    let dim = bounds.dim();
    let target = t.saturating_pow(dim as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sites: Vec<Vec<f64>> = Vec::new();
    let attempts = target.saturating_mul(50).max(200);
    for _ in 0..attempts {
        if sites.len() >= target {
            break;
        }
        let mut picked: Vec<usize> = Vec::with_capacity(dim);
        while picked.len() < dim {
            let k = rng.gen_range(0..hps.len());
            if !picked.contains(&k) {
                picked.push(k);
            }
        }
        let rows: Vec<Vec<f64>> = picked.iter().map(|&k| hps[k].coeffs.clone()).collect();
        let rhs: Vec<f64> = picked.iter().map(|&k| hps[k].offset).collect();
        let Some(x) = solve_linear(&rows, &rhs) else {
            continue;
        };
        if !bounds.contains(&x) {
            continue;
        }
        if sites
            .iter()
            .any(|s| s.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum::<f64>() < 1e-12)
        {
            continue;
        }
        sites.push(x);
    }
    sites
}

/// Gaussian elimination with partial pivoting; None for a singular system.
fn solve_linear(rows: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = rows.len();
    let mut a: Vec<Vec<f64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.clone();
            row.push(b);
            row
        })
        .collect();
    for col in 0..n {
        let (pivot, pv) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if pv < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    Some((0..n).map(|r| a[r][n] / a[r][r]).collect())
}

/// Vertices of (a conservative superset of) the Voronoi region of one site
/// clipped to the bounds.
///
/// In two dimensions the cell is computed exactly by polygon clipping; in
/// higher dimensions only the nearest sites contribute bisector
/// constraints, yielding a superset polytope (safe for crossing lists).
fn region_vertices(sites: &[Vec<f64>], idx: usize, bounds: &BoxRegion) -> Vec<Vec<f64>> {
    let dim = bounds.dim();
    if dim == 2 {
        let mut poly: Vec<Vec<f64>> = vec![
            vec![bounds.lo[0], bounds.lo[1]],
            vec![bounds.hi[0], bounds.lo[1]],
            vec![bounds.hi[0], bounds.hi[1]],
            vec![bounds.lo[0], bounds.hi[1]],
        ];
        for (j, other) in sites.iter().enumerate() {
            if j == idx || poly.is_empty() {
                continue;
            }
            let (a, b) = bisector(&sites[idx], other);
            poly = clip_polygon(poly, &a, b);
        }
        return poly;
    }

    // Constraints: bounds faces plus bisectors of the nearest sites.
    let neighbor_cap = if dim == 3 { 24 } else { 12 };
    let mut order: Vec<usize> = (0..sites.len()).filter(|&j| j != idx).collect();
    order.sort_by(|&a, &b| {
        sqdist(&sites[a], &sites[idx])
            .partial_cmp(&sqdist(&sites[b], &sites[idx]))
            .unwrap()
    });
    order.truncate(neighbor_cap);

    let mut constraints: Vec<(Vec<f64>, f64)> = Vec::new();
    for j in 0..dim {
        let mut e = vec![0.0; dim];
        e[j] = 1.0;
        constraints.push((e.clone(), bounds.hi[j]));
        e[j] = -1.0;
        constraints.push((e, -bounds.lo[j]));
    }
    for &j in &order {
        constraints.push(bisector(&sites[idx], &sites[j]));
    }
    enumerate_vertices(&constraints, dim)
}

fn sqdist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Halfspace a.x <= b of points at least as close to s as to o.
fn bisector(s: &[f64], o: &[f64]) -> (Vec<f64>, f64) {
    let a: Vec<f64> = o.iter().zip(s).map(|(x, y)| 2.0 * (x - y)).collect();
    let b = o.iter().map(|v| v * v).sum::<f64>() - s.iter().map(|v| v * v).sum::<f64>();
    (a, b)
}

/// Sutherland-Hodgman clip of a convex polygon by a.x <= b.
fn clip_polygon(poly: Vec<Vec<f64>>, a: &[f64], b: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for i in 0..n {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % n];
        let fc = a[0] * cur[0] + a[1] * cur[1] - b;
        let fn_ = a[0] * nxt[0] + a[1] * nxt[1] - b;
        if fc <= SLACK {
            out.push(cur.clone());
        }
        if (fc < -SLACK && fn_ > SLACK) || (fc > SLACK && fn_ < -SLACK) {
            let s = fc / (fc - fn_);
            out.push(vec![
                cur[0] + s * (nxt[0] - cur[0]),
                cur[1] + s * (nxt[1] - cur[1]),
            ]);
        }
    }
    out
}

/// Brute-force vertex enumeration of the polytope {x : a_k.x <= b_k}.
fn enumerate_vertices(constraints: &[(Vec<f64>, f64)], dim: usize) -> Vec<Vec<f64>> {
    let m = constraints.len();
    let mut verts: Vec<Vec<f64>> = Vec::new();
    let mut combo = vec![0usize; dim];
    fn rec(
        constraints: &[(Vec<f64>, f64)],
        dim: usize,
        start: usize,
        depth: usize,
        combo: &mut Vec<usize>,
        verts: &mut Vec<Vec<f64>>,
        m: usize,
    ) {
        if depth == dim {
            let rows: Vec<Vec<f64>> = combo.iter().map(|&k| constraints[k].0.clone()).collect();
            let rhs: Vec<f64> = combo.iter().map(|&k| constraints[k].1).collect();
            if let Some(x) = solve_linear(&rows, &rhs) {
                let feasible = constraints.iter().all(|(a, b)| {
                    a.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>() <= b + SLACK
                });
                if feasible
                    && !verts.iter().any(|v| {
                        v.iter().zip(&x).map(|(p, q)| (p - q).abs()).sum::<f64>() < 1e-9
                    })
                {
                    verts.push(x);
                }
            }
            return;
        }
        for k in start..m {
            combo[depth] = k;
            rec(constraints, dim, k + 1, depth + 1, combo, verts, m);
        }
    }
    rec(constraints, dim, 0, 0, &mut combo, &mut verts, m);
    verts
}

fn vertex_bbox(verts: &[Vec<f64>], fallback: &BoxRegion) -> BoxRegion {
    if verts.is_empty() {
        return fallback.clone();
    }
    let dim = verts[0].len();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for v in verts {
        for j in 0..dim {
            lo[j] = lo[j].min(v[j] - SLACK);
            hi[j] = hi[j].max(v[j] + SLACK);
        }
    }
    BoxRegion::new(lo, hi)
}

/// Does a hyperplane cross the convex hull of `verts`? Conservative with
/// SLACK so boundary contact counts as crossing.
fn crosses_polytope(h: &PairHyperplane, verts: &[Vec<f64>]) -> bool {
    if verts.is_empty() {
        return false;
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in verts {
        let f = h.eval(v);
        min = min.min(f);
        max = max.max(f);
    }
    min <= SLACK && max >= -SLACK
}

// ---------------------------------------------------------------------------
// Intersection Index wrapper and high-dimensional query
// ---------------------------------------------------------------------------

/// Either intersection index variant behind one query surface.
pub enum IntersectionIndexHD {
    Quadtree(QuadtreeIndex),
    Cutting(CuttingIndex),
}

impl IntersectionIndexHD {
    pub fn hyperplanes(&self) -> &[PairHyperplane] {
        match self {
            IntersectionIndexHD::Quadtree(q) => q.hyperplanes(),
            IntersectionIndexHD::Cutting(c) => c.hyperplanes(),
        }
    }

    pub fn bounds(&self) -> &BoxRegion {
        match self {
            IntersectionIndexHD::Quadtree(q) => q.bounds(),
            IntersectionIndexHD::Cutting(c) => c.bounds(),
        }
    }

    pub fn candidates(&self, query: &BoxRegion) -> Vec<usize> {
        match self {
            IntersectionIndexHD::Quadtree(q) => q.candidates(query),
            IntersectionIndexHD::Cutting(c) => c.candidates(query),
        }
    }
}

/// Query box in dual space for a ratio box: x_j in [-h_j, -l_j].
pub fn dual_query_box(bx: &RatioBox) -> BoxRegion {
    let lo: Vec<f64> = bx.intervals().iter().map(|&(_, h)| -h).collect();
    let hi: Vec<f64> = bx.intervals().iter().map(|&(l, _)| -l).collect();
    BoxRegion::new(lo, hi)
}

/// Eclipse query for d >= 3 against prebuilt indexes. Returns ascending
/// ids and the number m of in-range pair flips processed.
pub fn query_index_hd(
    ovi: &OrderVectorIndexHD,
    ii: &IntersectionIndexHD,
    bx: &RatioBox,
) -> Result<(Vec<u64>, usize)> {
    if bx.ratio_dim() != ovi.bounds.dim() {
        return Err(Error::DimensionMismatch {
            expected: ovi.bounds.dim() + 1,
            actual: bx.point_dim(),
        });
    }
    if ii.hyperplanes().len() != ovi.pairs.len()
        || ii
            .hyperplanes()
            .iter()
            .zip(&ovi.pairs)
            .any(|(a, b)| a.pair != b.pair)
    {
        return Err(Error::IndexMismatch);
    }

    // Reference corner: the all-(-l_j) point of the query box.
    let reference: Vec<f64> = bx.intervals().iter().map(|&(l, _)| -l).collect();
    let snapshot = ovi.locate(&reference);
    let mut counters = snapshot.clone();

    let query = dual_query_box(bx);
    let candidates: Vec<usize> = if ii.bounds().contains_box(&query) {
        ii.candidates(&query)
    } else {
        (0..ovi.pairs.len()).collect() // outside indexed support: scan
    };

    let mut m = 0;
    for k in candidates {
        let ph = &ovi.pairs[k];
        if !crosses_box(ph, &query) {
            continue;
        }
        m += 1;
        let a = ovi.position(ph.pair.0);
        let b = ovi.position(ph.pair.1);
        if snapshot[a] < snapshot[b] {
            counters[b] -= 1;
        } else {
            counters[a] -= 1;
        }
    }

    let ids = ovi
        .ids
        .iter()
        .zip(&counters)
        .filter(|(_, &c)| c == 0)
        .map(|(&id, _)| id)
        .collect();
    Ok((ids, m))
}
