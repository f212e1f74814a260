//! Random instance generators shared by the property and acceptance tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::sync::Arc;

use prox_core::cycles::{CycleDoc, SystemDoc, SystemMode};
use prox_core::homotopy::HomotopyWitness;
use prox_core::jordan::Vertex;
use prox_core::maps::FiniteMap;
use prox_core::pixel::PixelSet;
use prox_core::proximity::{FiniteProximitySpace, Point, Proximity, ProximityRule};
use prox_core::PointSet;
use rand::seq::IndexedRandom;
use rand::Rng;

pub const TAUS: [f64; 5] = [0.0, 1.0, 1.5, 2.0, 3.0];
pub const FEATURE_TOLERANCES: [f64; 3] = [0.0, 0.5, 1.0];

/// A metric space on `n` random grid points with random two-dimensional
/// features.
pub fn metric_space<R: Rng>(rng: &mut R, n: usize) -> FiniteProximitySpace {
    let points = (0..n)
        .map(|i| {
            Point::at(format!("p{i}"), rng.random_range(0..6) as f64, rng.random_range(0..6) as f64)
                .with_features(vec![rng.random_range(0..3) as f64, rng.random_range(0..2) as f64 * 0.5])
        })
        .collect();
    let tau = *TAUS.choose(rng).unwrap();
    let eps = *FEATURE_TOLERANCES.choose(rng).unwrap();
    FiniteProximitySpace::with_feature_tolerance(points, ProximityRule::Metric { tau }, eps).unwrap()
}

/// Connected components of the point relation.
pub fn components(space: &FiniteProximitySpace) -> Vec<Vec<usize>> {
    let n = space.len();
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut comp = vec![s];
        label[s] = out.len();
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for y in 0..n {
                if label[y] == usize::MAX && (space.related(x, y) || space.related(y, x)) {
                    label[y] = out.len();
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A gluing instance: `X`, closed `A` and `B` covering it, and a map `h` on
/// `X` continuous in both modes. `f` and `g` are its restrictions.
pub struct GluingInstance {
    pub x: Arc<FiniteProximitySpace>,
    pub a: PointSet,
    pub b: PointSet,
    pub h: Vec<usize>,
    pub f: FiniteMap,
    pub g: FiniteMap,
}

/// Features are constant on each spatial component, and `h` sends each
/// component to one point carrying the same features. Related points then
/// have equal or near descriptions and so do their images, in both modes.
/// `A` and `B` are unions of closed blocks of the chosen relation.
pub fn gluing_instance<R: Rng>(rng: &mut R, descriptive: bool) -> GluingInstance {
    let n = rng.random_range(2..=8);
    let coords: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0..12) as f64, rng.random_range(0..3) as f64))
        .collect();
    let tau = *[1.0, 1.5, 2.0].choose(rng).unwrap();
    let bare: Vec<Point> = coords.iter().enumerate().map(|(i, &(x, y))| Point::at(format!("x{i}"), x, y)).collect();
    let plain = FiniteProximitySpace::new(bare.clone(), ProximityRule::Metric { tau }).unwrap();
    let comps = components(&plain);
    let mut feature = vec![0.0; n];
    for c in &comps {
        let v = rng.random_range(0..3) as f64;
        for &i in c {
            feature[i] = v;
        }
    }
    let eps = *[0.0, 0.5, 1.0].choose(rng).unwrap();
    let points = bare
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.with_features(vec![feature[i]]))
        .collect();
    let x = Arc::new(FiniteProximitySpace::with_feature_tolerance(points, ProximityRule::Metric { tau }, eps).unwrap());

    let mut h = vec![0; n];
    for c in &comps {
        let same: Vec<usize> = (0..n).filter(|&j| feature[j] == feature[c[0]]).collect();
        let y = *same.choose(rng).unwrap();
        for &i in c {
            h[i] = y;
        }
    }

    // Closed blocks: components of the relation in the chosen mode.
    let blocks = if descriptive {
        let rel = x.relation(prox_core::descriptive::Mode::Descriptive).unwrap();
        relation_components(&rel, n)
    } else {
        comps.clone()
    };
    let mut a = PointSet::empty(n);
    let mut b = PointSet::empty(n);
    let last = blocks.len() - 1;
    for (j, blk) in blocks.iter().enumerate() {
        // The first block always lands in A and the last in B.
        let side = match j {
            0 if last > 0 => 0,
            0 => 2,
            j if j == last => 1,
            _ => rng.random_range(0..3),
        };
        for &i in blk {
            if side != 1 {
                a.insert(i);
            }
            if side != 0 {
                b.insert(i);
            }
        }
    }
    let f = restriction(&x, &a, &h);
    let g = restriction(&x, &b, &h);
    GluingInstance { x, a, b, h, f, g }
}

fn relation_components<P: Proximity>(rel: &P, n: usize) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = out.len();
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for y in 0..n {
                if label[y] == usize::MAX && (rel.related(x, y) || rel.related(y, x)) {
                    label[y] = out.len();
                    comp.push(y);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// `h` restricted to the subspace on `set`, into `X`.
pub fn restriction(x: &Arc<FiniteProximitySpace>, set: &PointSet, h: &[usize]) -> FiniteMap {
    let sub = Arc::new(x.subspace(set).unwrap());
    FiniteMap::new(sub, x.clone(), set.iter().map(|i| h[i]).collect()).unwrap()
}

/// The path `0 - 1 - ... - (n-1)` as a metric space with τ = 1.
pub fn line(n: usize) -> Arc<FiniteProximitySpace> {
    let pts = (0..n).map(|i| Point::at(format!("{i}"), i as f64, 0.0).with_features(vec![i as f64])).collect();
    Arc::new(FiniteProximitySpace::with_feature_tolerance(pts, ProximityRule::Metric { tau: 1.0 }, 1.0).unwrap())
}

/// A table on `{0..n} x {0..k}` with values in `0..m` that changes by at most
/// one between king-adjacent cells: the infimal convolution of random anchors
/// in the Chebyshev metric, clamped into `[lo, hi]` cellwise.
pub fn lipschitz_table<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    m: usize,
    lo: Option<&[Vec<i64>]>,
    hi: Option<&[Vec<i64>]>,
) -> Vec<Vec<usize>> {
    let anchors: Vec<(usize, usize, i64)> = (0..rng.random_range(1..=4))
        .map(|_| (rng.random_range(0..n), rng.random_range(0..=k), rng.random_range(0..m as i64)))
        .collect();
    (0..n)
        .map(|x| {
            (0..=k)
                .map(|t| {
                    let mut v = anchors
                        .iter()
                        .map(|&(ax, at, r)| r + (ax.abs_diff(x).max(at.abs_diff(t))) as i64)
                        .min()
                        .unwrap()
                        .clamp(0, m as i64 - 1);
                    if let Some(lo) = lo {
                        v = v.max(lo[x][t]);
                    }
                    if let Some(hi) = hi {
                        v = v.min(hi[x][t]);
                    }
                    v as usize
                })
                .collect()
        })
        .collect()
}

/// McShane envelopes of the row `g` on `{0..n} x {0..k}`: the lowest and the
/// highest king-Lipschitz extensions that equal `g` at `t = 0`.
pub fn envelopes(g: &[usize], k: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = g.len();
    let d = |x: usize, t: usize, y: usize| x.abs_diff(y).max(t) as i64;
    let lo = (0..n)
        .map(|x| (0..=k).map(|t| (0..n).map(|y| g[y] as i64 - d(x, t, y)).max().unwrap()).collect())
        .collect();
    let hi = (0..n)
        .map(|x| (0..=k).map(|t| (0..n).map(|y| g[y] as i64 + d(x, t, y)).min().unwrap()).collect())
        .collect();
    (lo, hi)
}

pub struct HomotopyPair {
    pub source: Arc<FiniteProximitySpace>,
    pub target: Arc<FiniteProximitySpace>,
    /// Verifies `f ~ g`.
    pub h1: HomotopyWitness,
    /// Verifies `g ~ e`.
    pub h2: HomotopyWitness,
    pub f: FiniteMap,
    pub g: FiniteMap,
    pub e: FiniteMap,
}

fn row(table: &[Vec<usize>], t: usize) -> Vec<usize> {
    table.iter().map(|r| r[t]).collect()
}

/// Two chained witnesses on lines, both of resolution `k`.
pub fn homotopy_pair<R: Rng>(rng: &mut R, k: usize) -> HomotopyPair {
    let n = rng.random_range(1..=6);
    let m = rng.random_range(1..=8);
    let (source, target) = (line(n), line(m));
    let t1 = lipschitz_table(rng, n, k, m, None, None);
    let g_row = row(&t1, k);
    let (lo, hi) = envelopes(&g_row, k);
    let t2 = lipschitz_table(rng, n, k, m, Some(&lo), Some(&hi));
    let map = |r: Vec<usize>| FiniteMap::new(source.clone(), target.clone(), r).unwrap();
    let f = map(row(&t1, 0));
    let g = map(g_row);
    let e = map(row(&t2, k));
    HomotopyPair {
        h1: HomotopyWitness::new(k, t1, None).unwrap(),
        h2: HomotopyWitness::new(k, t2, None).unwrap(),
        source,
        target,
        f,
        g,
        e,
    }
}

/// Random graph on `v` vertices with `e` distinct edges (as far as possible).
pub fn random_graph<R: Rng>(rng: &mut R, v: usize, e: usize) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    while out.len() < e && !all.is_empty() {
        let i = rng.random_range(0..all.len());
        out.push(all.swap_remove(i));
    }
    out.sort_unstable();
    out
}

/// Betti pair of a graph by brute force: components by flood fill, and the
/// cycle space size by counting even-degree edge subsets in Gray-code order.
pub fn graph_betti_oracle(v: usize, edges: &[(usize, usize)]) -> (usize, usize) {
    let mut seen = vec![false; v];
    let mut comps = 0;
    for s in 0..v {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &(a, b) in edges {
                for (p, q) in [(a, b), (b, a)] {
                    if p == x && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
    }
    let e = edges.len();
    let mut parity = 0u64;
    let mut even = 1u64;
    for i in 1u64..(1u64 << e) {
        let flip = i.trailing_zeros() as usize;
        let (a, b) = edges[flip];
        parity ^= (1 << a) ^ (1 << b);
        if parity == 0 {
            even += 1;
        }
    }
    (comps, even.trailing_zeros() as usize)
}

/// Random filled rectangles `[x0, y0, x1, y1]` inside a `w x w` window.
pub fn random_rects<R: Rng>(rng: &mut R, w: i64, count: usize) -> Vec<[i64; 4]> {
    (0..count)
        .map(|_| {
            let x0 = rng.random_range(0..w - 4);
            let y0 = rng.random_range(0..w - 4);
            let x1 = rng.random_range(x0 + 1..(x0 + 30).min(w));
            let y1 = rng.random_range(y0 + 1..(y0 + 30).min(w));
            [x0, y0, x1, y1]
        })
        .collect()
}

pub fn rect_pixels(w: usize, r: [i64; 4]) -> PixelSet {
    PixelSet::rectangle(w, w, r[0], r[1], r[2], r[3]).unwrap()
}

/// A simple rectilinear polygon: a column histogram whose top and bottom
/// profiles may both step. Columns are at least 3 wide and adjacent columns
/// share at least 3 rows of interior, so the interior is one region.
pub fn rectilinear_polygon<R: Rng>(rng: &mut R, window: i64, max_vertices: usize) -> Vec<Vertex> {
    loop {
        let k = rng.random_range(1..=5);
        let mut xs = vec![rng.random_range(1..8)];
        for _ in 0..k {
            let next = xs.last().unwrap() + rng.random_range(3..=12);
            xs.push(next);
        }
        if *xs.last().unwrap() > window - 2 {
            continue;
        }
        let step_top = rng.random_bool(0.7);
        let step_bottom = rng.random_bool(0.5);
        let mut tops = Vec::new();
        let mut bottoms = Vec::new();
        for _ in 0..k {
            let b = if step_bottom || bottoms.is_empty() { rng.random_range(1..20) } else { bottoms[0] };
            let t = if step_top || tops.is_empty() { rng.random_range(b + 5..window - 1) } else { tops[0] };
            bottoms.push(b);
            tops.push(t.max(b + 5));
        }
        let overlap_ok = (1..k).all(|i| tops[i].min(tops[i - 1]) - bottoms[i].max(bottoms[i - 1]) >= 4);
        if !overlap_ok || tops.iter().any(|&t| t > window - 2) {
            continue;
        }
        // Walk the bottom left to right, then the top right to left.
        let mut ring: Vec<Vertex> = Vec::new();
        for i in 0..k {
            ring.push([xs[i], bottoms[i]]);
            ring.push([xs[i + 1], bottoms[i]]);
        }
        for i in (0..k).rev() {
            ring.push([xs[i + 1], tops[i]]);
            ring.push([xs[i], tops[i]]);
        }
        let ring = simplify(ring);
        if ring.len() >= 4 && ring.len() <= max_vertices {
            return ring;
        }
    }
}

/// Drops repeated and collinear vertices of a closed ring.
fn simplify(ring: Vec<Vertex>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    for v in ring {
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    loop {
        let n = out.len();
        let drop = (0..n).find(|&i| {
            let (a, b, c) = (out[(i + n - 1) % n], out[i], out[(i + 1) % n]);
            (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) == 0
        });
        match drop {
            Some(i) if n > 3 => {
                out.remove(i);
            }
            _ => return out,
        }
    }
}

/// A valid cycle system: 2 to 4 quadrilaterals meeting only at a clasp, one
/// per quadrant. Returns the space (relation rule on the edges) and the doc.
pub fn cycle_system<R: Rng>(rng: &mut R) -> (FiniteProximitySpace, SystemDoc, String) {
    let (cx, cy) = (20i64, 20i64);
    let quadrants: [(i64, i64); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];
    let k = rng.random_range(2..=4);
    let mut chosen: Vec<(i64, i64)> = quadrants.to_vec();
    while chosen.len() > k {
        let i = rng.random_range(0..chosen.len());
        chosen.remove(i);
    }
    let mut points = vec![Point::at("c", cx as f64, cy as f64)];
    let mut pairs = Vec::new();
    let mut cycles = Vec::new();
    for (q, (sx, sy)) in chosen.into_iter().enumerate() {
        let w = rng.random_range(4..=15);
        let h = rng.random_range(4..=15);
        let corners = [[cx + sx * w, cy + sy], [cx + sx * w, cy + sy * h], [cx + sx, cy + sy * h]];
        let mut ids = vec!["c".to_string()];
        for (j, v) in corners.iter().enumerate() {
            let id = format!("q{q}v{j}");
            points.push(Point::at(id.as_str(), v[0] as f64, v[1] as f64));
            ids.push(id);
        }
        for j in 0..ids.len() {
            let (a, b) = (ids[j].clone(), ids[(j + 1) % ids.len()].clone());
            pairs.push((a.clone().into(), b.clone().into()));
            pairs.push((b.into(), a.into()));
        }
        cycles.push(CycleDoc::simple(ids));
    }
    let space = FiniteProximitySpace::new(points, ProximityRule::Relation(pairs)).unwrap();
    (
        space,
        SystemDoc {
            cycles,
            mode: SystemMode::Global,
        },
        "c".into(),
    )
}

/// Sorted simplices of a complex, for subset comparisons.
pub fn simplex_set(c: &prox_core::nerve::NerveComplex) -> BTreeSet<Vec<usize>> {
    c.simplices.iter().cloned().collect()
}
