//! Text persistence: CSV datasets and versioned index serialization.
//!
//! Floats are written with 17 significant digits so every round-trip is
//! bit-exact and re-serialization is byte-identical.

use crate::dual2d::{DualLine, IntersectionRecord, OrderVectorIndex2D};
use crate::dualhd::{
    BoxRegion, CellNode, CutRegion, CuttingIndex, DualHyperplane, IntersectionIndexHD,
    OrderVectorIndexHD, PairHyperplane, QtNode, QuadtreeIndex,
};
use crate::error::{Error, Result};
use crate::model::{Dataset, Point};
use std::io::{BufRead, Write};

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("invalid number '{tok}'")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid integer '{tok}'")))
}

fn parse_u64(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| parse_err(line, format!("invalid id '{tok}'")))
}

// ---------------------------------------------------------------------------
// CSV datasets
// ---------------------------------------------------------------------------

/// Writes a dataset as CSV with header `id,x1,...,xd`. Lines starting with
/// `#` carry free-form metadata (ignored on read).
pub fn write_points<W: Write>(
    w: &mut W,
    dataset: &Dataset,
    comment: Option<&str>,
) -> Result<()> {
    if let Some(c) = comment {
        writeln!(w, "# {c}")?;
    }
    let header: Vec<String> = std::iter::once("id".to_string())
        .chain((1..=dataset.dim()).map(|j| format!("x{j}")))
        .collect();
    writeln!(w, "{}", header.join(","))?;
    for p in dataset.points() {
        let row: Vec<String> = std::iter::once(p.id().to_string())
            .chain(p.coords().iter().map(|&c| fmt_f64(c)))
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Reads a dataset written by [`write_points`]; parse errors report
/// 1-based line numbers.
pub fn read_points<R: BufRead>(r: R) -> Result<Dataset> {
    let mut points = Vec::new();
    let mut dim: Option<usize> = None;
    let mut saw_header = false;
    for (idx, line) in r.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if !saw_header {
            if fields.first() != Some(&"id") || fields.len() < 3 {
                return Err(parse_err(lineno, "expected header 'id,x1,...,xd'"));
            }
            for (j, f) in fields[1..].iter().enumerate() {
                if *f != format!("x{}", j + 1) {
                    return Err(parse_err(lineno, format!("bad header column '{f}'")));
                }
            }
            dim = Some(fields.len() - 1);
            saw_header = true;
            continue;
        }
        let d = dim.unwrap();
        if fields.len() != d + 1 {
            return Err(parse_err(
                lineno,
                format!("expected {} fields, got {}", d + 1, fields.len()),
            ));
        }
        let id = parse_u64(fields[0], lineno)?;
        let coords = fields[1..]
            .iter()
            .map(|f| parse_f64(f, lineno))
            .collect::<Result<Vec<f64>>>()?;
        points.push(Point::new(id, coords)?);
    }
    if !saw_header {
        return Err(parse_err(0, "missing CSV header"));
    }
    Dataset::new(points)
}

// ---------------------------------------------------------------------------
// 2D index
// ---------------------------------------------------------------------------

pub fn write_index_2d<W: Write>(w: &mut W, idx: &OrderVectorIndex2D) -> Result<()> {
    writeln!(w, "ECLIPSE-IDX2D v1 u={}", idx.u())?;
    for l in idx.lines() {
        writeln!(
            w,
            "L {} {} {}",
            l.source_id,
            fmt_f64(l.slope),
            fmt_f64(l.intercept)
        )?;
    }
    let bs: Vec<String> = idx.boundaries().iter().map(|&b| fmt_f64(b)).collect();
    writeln!(w, "B {}", bs.join(" "))?;
    for v in idx.vectors() {
        let rs: Vec<String> = v.iter().map(|r| r.to_string()).collect();
        writeln!(w, "V {}", rs.join(" "))?;
    }
    for rec in idx.intersections() {
        writeln!(
            w,
            "X {} {} {}",
            fmt_f64(rec.x),
            rec.pair.0,
            rec.pair.1
        )?;
    }
    Ok(())
}

type Numbered = (usize, String);

fn section_lines<R: BufRead>(r: R) -> Result<Vec<Numbered>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push((i + 1, line));
        }
    }
    Ok(out)
}

pub fn read_index_2d<R: BufRead>(r: R) -> Result<OrderVectorIndex2D> {
    let lines = section_lines(r)?;
    let mut it = lines.into_iter().peekable();
    read_index_2d_section(&mut it)
}

fn expect_header(
    it: &mut std::iter::Peekable<std::vec::IntoIter<Numbered>>,
    magic: &str,
) -> Result<(usize, Vec<String>)> {
    let (lineno, line) = it
        .next()
        .ok_or_else(|| parse_err(0, format!("missing {magic} header")))?;
    let toks: Vec<String> = line.split_whitespace().map(str::to_string).collect();
    if toks.len() < 2 || toks[0] != magic || toks[1] != "v1" {
        return Err(parse_err(lineno, format!("expected '{magic} v1' header")));
    }
    Ok((lineno, toks))
}

fn header_value(toks: &[String], key: &str, lineno: usize) -> Result<String> {
    toks.iter()
        .find_map(|t| t.strip_prefix(&format!("{key}=")).map(str::to_string))
        .ok_or_else(|| parse_err(lineno, format!("missing {key}= in header")))
}

fn read_index_2d_section(
    it: &mut std::iter::Peekable<std::vec::IntoIter<Numbered>>,
) -> Result<OrderVectorIndex2D> {
    let (hline, toks) = expect_header(it, "ECLIPSE-IDX2D")?;
    let u = parse_usize(&header_value(&toks, "u", hline)?, hline)?;
    let mut lines_v: Vec<DualLine> = Vec::with_capacity(u);
    let mut boundaries: Vec<f64> = Vec::new();
    let mut vectors: Vec<Vec<u32>> = Vec::new();
    let mut intersections: Vec<IntersectionRecord> = Vec::new();
    while let Some((lineno, line)) = it.peek().cloned() {
        if line.starts_with("ECLIPSE-") {
            break;
        }
        it.next();
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first().copied() {
            Some("L") if toks.len() == 4 => lines_v.push(DualLine {
                source_id: parse_u64(toks[1], lineno)?,
                slope: parse_f64(toks[2], lineno)?,
                intercept: parse_f64(toks[3], lineno)?,
            }),
            Some("B") => {
                boundaries = toks[1..]
                    .iter()
                    .map(|t| parse_f64(t, lineno))
                    .collect::<Result<_>>()?;
            }
            Some("V") => {
                let v = toks[1..]
                    .iter()
                    .map(|t| {
                        parse_usize(t, lineno).map(|x| x as u32)
                    })
                    .collect::<Result<Vec<u32>>>()?;
                vectors.push(v);
            }
            Some("X") if toks.len() == 4 => intersections.push(IntersectionRecord {
                x: parse_f64(toks[1], lineno)?,
                pair: (parse_u64(toks[2], lineno)?, parse_u64(toks[3], lineno)?),
            }),
            _ => return Err(parse_err(lineno, format!("unrecognized record '{line}'"))),
        }
    }
    if lines_v.len() != u {
        return Err(parse_err(0, format!("expected {u} L records, got {}", lines_v.len())));
    }
    if vectors.len() != boundaries.len() + 1 {
        return Err(parse_err(0, "rank vector count must be boundaries + 1"));
    }
    if vectors.iter().any(|v| v.len() != u) {
        return Err(parse_err(0, "rank vector length must equal u"));
    }
    Ok(OrderVectorIndex2D::from_parts(
        lines_v,
        boundaries,
        vectors,
        intersections,
    ))
}

// ---------------------------------------------------------------------------
// High-dimensional order-vector index
// ---------------------------------------------------------------------------

fn write_pair_line<W: Write>(w: &mut W, ph: &PairHyperplane) -> Result<()> {
    let cs: Vec<String> = ph.coeffs.iter().map(|&c| fmt_f64(c)).collect();
    writeln!(
        w,
        "P {} {} {} {}",
        ph.pair.0,
        ph.pair.1,
        cs.join(" "),
        fmt_f64(ph.offset)
    )?;
    Ok(())
}

fn parse_pair_line(toks: &[&str], dim: usize, lineno: usize) -> Result<PairHyperplane> {
    if toks.len() != dim + 4 {
        return Err(parse_err(lineno, "malformed P record"));
    }
    Ok(PairHyperplane {
        pair: (parse_u64(toks[1], lineno)?, parse_u64(toks[2], lineno)?),
        coeffs: toks[3..3 + dim]
            .iter()
            .map(|t| parse_f64(t, lineno))
            .collect::<Result<_>>()?,
        offset: parse_f64(toks[3 + dim], lineno)?,
    })
}

fn write_bounds_line<W: Write>(w: &mut W, b: &BoxRegion) -> Result<()> {
    let vals: Vec<String> = b.lo.iter().chain(&b.hi).map(|&v| fmt_f64(v)).collect();
    writeln!(w, "B {}", vals.join(" "))?;
    Ok(())
}

fn parse_bounds_line(toks: &[&str], dim: usize, lineno: usize) -> Result<BoxRegion> {
    if toks.len() != 2 * dim + 1 {
        return Err(parse_err(lineno, "malformed B record"));
    }
    let lo = toks[1..1 + dim]
        .iter()
        .map(|t| parse_f64(t, lineno))
        .collect::<Result<Vec<f64>>>()?;
    let hi = toks[1 + dim..]
        .iter()
        .map(|t| parse_f64(t, lineno))
        .collect::<Result<Vec<f64>>>()?;
    Ok(BoxRegion::new(lo, hi))
}

fn write_cells<W: Write>(w: &mut W, node: &CellNode) -> Result<()> {
    match node {
        CellNode::Pure { witness, ranks } => {
            let ws: Vec<String> = witness.iter().map(|&v| fmt_f64(v)).collect();
            let rs: Vec<String> = ranks.iter().map(|r| r.to_string()).collect();
            writeln!(w, "N P {} | {}", ws.join(" "), rs.join(" "))?;
        }
        CellNode::Mixed => writeln!(w, "N M")?,
        CellNode::Split { children } => {
            writeln!(w, "N S")?;
            for c in children {
                write_cells(w, c)?;
            }
        }
    }
    Ok(())
}

fn read_cells(
    it: &mut std::iter::Peekable<std::vec::IntoIter<Numbered>>,
    fanout: usize,
    dim: usize,
) -> Result<CellNode> {
    let (lineno, line) = it
        .next()
        .ok_or_else(|| parse_err(0, "truncated cell tree"))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    match (toks.first().copied(), toks.get(1).copied()) {
        (Some("N"), Some("M")) => Ok(CellNode::Mixed),
        (Some("N"), Some("S")) => {
            let children = (0..fanout)
                .map(|_| read_cells(it, fanout, dim))
                .collect::<Result<Vec<_>>>()?;
            Ok(CellNode::Split { children })
        }
        (Some("N"), Some("P")) => {
            let bar = toks
                .iter()
                .position(|&t| t == "|")
                .ok_or_else(|| parse_err(lineno, "missing '|' in N P record"))?;
            if bar != dim + 2 {
                return Err(parse_err(lineno, "bad witness arity in N P record"));
            }
            let witness = toks[2..bar]
                .iter()
                .map(|t| parse_f64(t, lineno))
                .collect::<Result<_>>()?;
            let ranks = toks[bar + 1..]
                .iter()
                .map(|t| parse_usize(t, lineno).map(|x| x as u32))
                .collect::<Result<_>>()?;
            Ok(CellNode::Pure { witness, ranks })
        }
        _ => Err(parse_err(lineno, format!("unrecognized cell record '{line}'"))),
    }
}

pub fn write_index_hd<W: Write>(w: &mut W, idx: &OrderVectorIndexHD) -> Result<()> {
    let dim = idx.bounds().dim();
    writeln!(w, "ECLIPSE-IDXHD v1 u={} d={}", idx.u(), dim + 1)?;
    for h in idx.duals() {
        let cs: Vec<String> = h.coeffs.iter().map(|&c| fmt_f64(c)).collect();
        writeln!(
            w,
            "H {} {} {}",
            h.source_id,
            cs.join(" "),
            fmt_f64(h.offset)
        )?;
    }
    for ph in idx.pairs() {
        write_pair_line(w, ph)?;
    }
    write_bounds_line(w, idx.bounds())?;
    write_cells(w, idx.root())?;
    Ok(())
}

pub fn read_index_hd<R: BufRead>(r: R) -> Result<OrderVectorIndexHD> {
    let lines = section_lines(r)?;
    let mut it = lines.into_iter().peekable();
    read_index_hd_section(&mut it)
}

fn read_index_hd_section(
    it: &mut std::iter::Peekable<std::vec::IntoIter<Numbered>>,
) -> Result<OrderVectorIndexHD> {
    let (hline, toks) = expect_header(it, "ECLIPSE-IDXHD")?;
    let u = parse_usize(&header_value(&toks, "u", hline)?, hline)?;
    let d = parse_usize(&header_value(&toks, "d", hline)?, hline)?;
    if d < 3 {
        return Err(parse_err(hline, "ECLIPSE-IDXHD requires d >= 3"));
    }
    let dim = d - 1;
    let mut duals: Vec<DualHyperplane> = Vec::with_capacity(u);
    let mut pairs: Vec<PairHyperplane> = Vec::new();
    let mut bounds: Option<BoxRegion> = None;
    while let Some((lineno, line)) = it.peek().cloned() {
        if line.starts_with("ECLIPSE-") || line.starts_with("N ") {
            break;
        }
        it.next();
        let t: Vec<&str> = line.split_whitespace().collect();
        match t.first().copied() {
            Some("H") if t.len() == dim + 3 => duals.push(DualHyperplane {
                source_id: parse_u64(t[1], lineno)?,
                coeffs: t[2..2 + dim]
                    .iter()
                    .map(|x| parse_f64(x, lineno))
                    .collect::<Result<_>>()?,
                offset: parse_f64(t[2 + dim], lineno)?,
            }),
            Some("P") => pairs.push(parse_pair_line(&t, dim, lineno)?),
            Some("B") => bounds = Some(parse_bounds_line(&t, dim, lineno)?),
            _ => return Err(parse_err(lineno, format!("unrecognized record '{line}'"))),
        }
    }
    if duals.len() != u {
        return Err(parse_err(0, format!("expected {u} H records, got {}", duals.len())));
    }
    let bounds = bounds.ok_or_else(|| parse_err(0, "missing B record"))?;
    let root = read_cells(it, 1usize << dim, dim)?;
    let ids: Vec<u64> = duals.iter().map(|h| h.source_id).collect();
    if ids.windows(2).any(|w| w[0] >= w[1]) {
        return Err(parse_err(0, "H records must be ascending by id"));
    }
    Ok(OrderVectorIndexHD::from_parts(ids, duals, pairs, bounds, root))
}

// ---------------------------------------------------------------------------
// Quadtree intersection index
// ---------------------------------------------------------------------------

fn write_qt_nodes<W: Write>(w: &mut W, node: &QtNode) -> Result<()> {
    match node {
        QtNode::Leaf { entries } => {
            let es: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
            writeln!(w, "N L {}", es.join(" "))?;
        }
        QtNode::Internal { children } => {
            writeln!(w, "N I")?;
            for c in children {
                write_qt_nodes(w, c)?;
            }
        }
    }
    Ok(())
}

fn read_qt_nodes(
    it: &mut std::iter::Peekable<std::vec::IntoIter<Numbered>>,
    fanout: usize,
) -> Result<QtNode> {
    let (lineno, line) = it
        .next()
        .ok_or_else(|| parse_err(0, "truncated quadtree"))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    match (toks.first().copied(), toks.get(1).copied()) {
        (Some("N"), Some("L")) => Ok(QtNode::Leaf {
            entries: toks[2..]
                .iter()
                .map(|t| parse_usize(t, lineno))
                .collect::<Result<_>>()?,
        }),
        (Some("N"), Some("I")) => {
            let children = (0..fanout)
                .map(|_| read_qt_nodes(it, fanout))
                .collect::<Result<Vec<_>>>()?;
            Ok(QtNode::Internal { children })
        }
        _ => Err(parse_err(lineno, format!("unrecognized quadtree record '{line}'"))),
    }
}

pub fn write_quadtree<W: Write>(w: &mut W, idx: &QuadtreeIndex) -> Result<()> {
    let dim = idx.bounds().dim();
    writeln!(
        w,
        "ECLIPSE-QT v1 capacity={} d={} n={}",
        idx.capacity(),
        dim + 1,
        idx.hyperplanes().len()
    )?;
    for ph in idx.hyperplanes() {
        write_pair_line(w, ph)?;
    }
    write_bounds_line(w, idx.bounds())?;
    write_qt_nodes(w, &idx.root)?;
    Ok(())
}

pub fn read_quadtree<R: BufRead>(r: R) -> Result<QuadtreeIndex> {
    let lines = section_lines(r)?;
    let mut it = lines.into_iter().peekable();
    read_quadtree_section(&mut it)
}

fn read_quadtree_section(
    it: &mut std::iter::Peekable<std::vec::IntoIter<Numbered>>,
) -> Result<QuadtreeIndex> {
    let (hline, toks) = expect_header(it, "ECLIPSE-QT")?;
    let capacity = parse_usize(&header_value(&toks, "capacity", hline)?, hline)?;
    let d = parse_usize(&header_value(&toks, "d", hline)?, hline)?;
    let n = parse_usize(&header_value(&toks, "n", hline)?, hline)?;
    let dim = d - 1;
    let mut pairs: Vec<PairHyperplane> = Vec::with_capacity(n);
    let mut bounds: Option<BoxRegion> = None;
    while let Some((lineno, line)) = it.peek().cloned() {
        if line.starts_with("ECLIPSE-") || line.starts_with("N ") {
            break;
        }
        it.next();
        let t: Vec<&str> = line.split_whitespace().collect();
        match t.first().copied() {
            Some("P") => pairs.push(parse_pair_line(&t, dim, lineno)?),
            Some("B") => bounds = Some(parse_bounds_line(&t, dim, lineno)?),
            _ => return Err(parse_err(lineno, format!("unrecognized record '{line}'"))),
        }
    }
    if pairs.len() != n {
        return Err(parse_err(0, format!("expected {n} P records, got {}", pairs.len())));
    }
    let bounds = bounds.ok_or_else(|| parse_err(0, "missing B record"))?;
    let root = read_qt_nodes(it, 1usize << dim)?;
    Ok(QuadtreeIndex::from_parts(pairs, bounds, capacity, root))
}

// ---------------------------------------------------------------------------
// Cutting intersection index
// ---------------------------------------------------------------------------

pub fn write_cutting<W: Write>(w: &mut W, idx: &CuttingIndex) -> Result<()> {
    let dim = idx.bounds().dim();
    writeln!(
        w,
        "ECLIPSE-CUT v1 seed={} t={} d={} n={}",
        idx.seed(),
        idx.t(),
        dim + 1,
        idx.hyperplanes().len()
    )?;
    for ph in idx.hyperplanes() {
        write_pair_line(w, ph)?;
    }
    write_bounds_line(w, idx.bounds())?;
    for s in idx.sites() {
        let cs: Vec<String> = s.iter().map(|&v| fmt_f64(v)).collect();
        writeln!(w, "S {}", cs.join(" "))?;
    }
    for r in &idx.regions {
        let bb: Vec<String> = r
            .bbox
            .lo
            .iter()
            .chain(&r.bbox.hi)
            .map(|&v| fmt_f64(v))
            .collect();
        let es: Vec<String> = r.entries.iter().map(|e| e.to_string()).collect();
        writeln!(w, "R {} {} | {}", r.site, bb.join(" "), es.join(" "))?;
    }
    Ok(())
}

pub fn read_cutting<R: BufRead>(r: R) -> Result<CuttingIndex> {
    let lines = section_lines(r)?;
    let mut it = lines.into_iter().peekable();
    read_cutting_section(&mut it)
}

fn read_cutting_section(
    it: &mut std::iter::Peekable<std::vec::IntoIter<Numbered>>,
) -> Result<CuttingIndex> {
    let (hline, toks) = expect_header(it, "ECLIPSE-CUT")?;
    let seed = header_value(&toks, "seed", hline)?
        .parse::<u64>()
        .map_err(|_| parse_err(hline, "invalid seed"))?;
    let t = parse_usize(&header_value(&toks, "t", hline)?, hline)?;
    let d = parse_usize(&header_value(&toks, "d", hline)?, hline)?;
    let n = parse_usize(&header_value(&toks, "n", hline)?, hline)?;
    let dim = d - 1;
    let mut pairs: Vec<PairHyperplane> = Vec::with_capacity(n);
    let mut bounds: Option<BoxRegion> = None;
    let mut sites: Vec<Vec<f64>> = Vec::new();
    let mut regions: Vec<CutRegion> = Vec::new();
    while let Some((lineno, line)) = it.peek().cloned() {
        if line.starts_with("ECLIPSE-") {
            break;
        }
        it.next();
        let tk: Vec<&str> = line.split_whitespace().collect();
        match tk.first().copied() {
            Some("P") => pairs.push(parse_pair_line(&tk, dim, lineno)?),
            Some("B") => bounds = Some(parse_bounds_line(&tk, dim, lineno)?),
            Some("S") if tk.len() == dim + 1 => sites.push(
                tk[1..]
                    .iter()
                    .map(|x| parse_f64(x, lineno))
                    .collect::<Result<_>>()?,
            ),
            Some("R") => {
                let bar = tk
                    .iter()
                    .position(|&x| x == "|")
                    .ok_or_else(|| parse_err(lineno, "missing '|' in R record"))?;
                if bar != 2 + 2 * dim {
                    return Err(parse_err(lineno, "bad bbox arity in R record"));
                }
                let site = parse_usize(tk[1], lineno)?;
                let lo = tk[2..2 + dim]
                    .iter()
                    .map(|x| parse_f64(x, lineno))
                    .collect::<Result<Vec<f64>>>()?;
                let hi = tk[2 + dim..bar]
                    .iter()
                    .map(|x| parse_f64(x, lineno))
                    .collect::<Result<Vec<f64>>>()?;
                let entries = tk[bar + 1..]
                    .iter()
                    .map(|x| parse_usize(x, lineno))
                    .collect::<Result<_>>()?;
                regions.push(CutRegion {
                    site,
                    bbox: BoxRegion::new(lo, hi),
                    entries,
                });
            }
            _ => return Err(parse_err(lineno, format!("unrecognized record '{line}'"))),
        }
    }
    if pairs.len() != n {
        return Err(parse_err(0, format!("expected {n} P records, got {}", pairs.len())));
    }
    let bounds = bounds.ok_or_else(|| parse_err(0, "missing B record"))?;
    if regions.is_empty() {
        return Err(parse_err(0, "missing R records"));
    }
    Ok(CuttingIndex::from_parts(pairs, bounds, t, seed, sites, regions))
}

// ---------------------------------------------------------------------------
// Combined bundle (one file per built index, self-describing sections)
// ---------------------------------------------------------------------------

/// The on-disk shape of a built index: a lone 2D order-vector index, or a
/// high-dimensional order-vector index followed by its intersection index.
pub enum IndexBundle {
    TwoD(OrderVectorIndex2D),
    HighD {
        ovi: OrderVectorIndexHD,
        ii: IntersectionIndexHD,
    },
}

pub fn write_bundle<W: Write>(w: &mut W, bundle: &IndexBundle) -> Result<()> {
    match bundle {
        IndexBundle::TwoD(idx) => write_index_2d(w, idx),
        IndexBundle::HighD { ovi, ii } => {
            write_index_hd(w, ovi)?;
            match ii {
                IntersectionIndexHD::Quadtree(q) => write_quadtree(w, q),
                IntersectionIndexHD::Cutting(c) => write_cutting(w, c),
            }
        }
    }
}

pub fn read_bundle<R: BufRead>(r: R) -> Result<IndexBundle> {
    let lines = section_lines(r)?;
    let first = lines
        .first()
        .ok_or_else(|| parse_err(0, "empty index file"))?
        .clone();
    let mut it = lines.into_iter().peekable();
    if first.1.starts_with("ECLIPSE-IDX2D") {
        return Ok(IndexBundle::TwoD(read_index_2d_section(&mut it)?));
    }
    let ovi = read_index_hd_section(&mut it)?;
    let (lineno, next) = it
        .peek()
        .ok_or_else(|| parse_err(0, "missing intersection index section"))?
        .clone();
    let ii = if next.starts_with("ECLIPSE-QT") {
        IntersectionIndexHD::Quadtree(read_quadtree_section(&mut it)?)
    } else if next.starts_with("ECLIPSE-CUT") {
        IntersectionIndexHD::Cutting(read_cutting_section(&mut it)?)
    } else {
        return Err(parse_err(lineno, "expected ECLIPSE-QT or ECLIPSE-CUT section"));
    };
    Ok(IndexBundle::HighD { ovi, ii })
}
