//! Digital curves on the integer grid: rasterization, closure/boundary/interior,
//! grid Betti numbers and Jordan region partitions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pixel::{Connectivity, Pixel, PixelSet, PixelSetDoc};

pub type Vertex = [i64; 2];

/// All pixels on the 8-connected integer line from `a` to `b`, endpoints included.
pub fn line(a: Vertex, b: Vertex) -> Vec<Pixel> {
    let (mut x, mut y) = (a[0], a[1]);
    let dx = (b[0] - x).abs();
    let dy = -(b[1] - y).abs();
    let sx = if x < b[0] { 1 } else { -1 };
    let sy = if y < b[1] { 1 } else { -1 };
    let mut err = dx + dy;
    let mut out = Vec::with_capacity((dx.max(-dy) + 1) as usize);
    loop {
        out.push((x, y));
        if x == b[0] && y == b[1] {
            return out;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

fn orient(a: Vertex, b: Vertex, c: Vertex) -> i64 {
    ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).signum()
}

fn on_segment(a: Vertex, b: Vertex, p: Vertex) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn segments_meet(a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Checks that the closed polygon through `vertices` is geometrically simple.
pub fn check_simple(vertices: &[Vertex]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::SelfIntersection(format!("{n} vertices cannot bound a cycle")));
    }
    for i in 0..n {
        for j in i + 1..n {
            if vertices[i] == vertices[j] {
                return Err(Error::SelfIntersection(format!("vertex {:?} repeats", vertices[i])));
            }
        }
    }
    let seg = |i: usize| (vertices[i], vertices[(i + 1) % n]);
    for i in 0..n {
        // Consecutive edges may only share their common vertex.
        let (a, b) = seg(i);
        let (_, c) = seg((i + 1) % n);
        if orient(a, b, c) == 0 && (on_segment(a, b, c) || on_segment(b, c, a)) {
            return Err(Error::SelfIntersection(format!("edges fold back at {b:?}")));
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = seg(j);
            if segments_meet(a, b, c, d) {
                return Err(Error::SelfIntersection(format!(
                    "edge {a:?}-{b:?} meets edge {c:?}-{d:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Traces open polylines into a pixel set without any simplicity check.
pub fn trace<'a, I>(polylines: I, width: usize, height: usize) -> Result<PixelSet>
where
    I: IntoIterator<Item = &'a [Vertex]>,
{
    let mut set = PixelSet::new(width, height);
    for poly in polylines {
        if let [only] = poly {
            set.try_insert((only[0], only[1]))?;
        }
        for w in poly.windows(2) {
            for p in line(w[0], w[1]) {
                set.try_insert(p)?;
            }
        }
    }
    Ok(set)
}

fn closed_ring(vertices: &[Vertex]) -> Vec<Vertex> {
    let mut ring = vertices.to_vec();
    if let Some(&first) = vertices.first() {
        ring.push(first);
    }
    ring
}

/// Rasterizes a simple closed polygon into an 8-connected digital curve.
pub fn rasterize_cycle(vertices: &[Vertex], width: usize, height: usize) -> Result<PixelSet> {
    check_simple(vertices)?;
    let ring = closed_ring(vertices);
    trace([ring.as_slice()], width, height)
}

/// A polyline as read from input; `closed` defaults to true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyline {
    pub vertices: Vec<Vertex>,
    #[serde(default = "yes")]
    pub closed: bool,
}

fn yes() -> bool {
    true
}

impl Polyline {
    pub fn cycle(vertices: Vec<Vertex>) -> Self {
        Self {
            vertices,
            closed: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Parts {
    pub closure: PixelSet,
    pub boundary: PixelSet,
    pub interior: PixelSet,
    pub complement: PixelSet,
}

/// Closure, boundary, interior and complement of `s`. On the grid at τ=0 the
/// closure is `s` itself; a pixel is on the boundary when one of its eight
/// neighbours is outside `s` (pixels beyond the window count as outside).
pub fn closure_boundary_interior(s: &PixelSet) -> Parts {
    let closure = s.clone();
    let mut boundary = PixelSet::new(s.width(), s.height());
    for p in s.iter() {
        let exposed = Connectivity::Eight
            .offsets()
            .iter()
            .any(|&(dx, dy)| !s.contains((p.0 + dx, p.1 + dy)));
        if exposed {
            boundary.try_insert(p).expect("pixel from the same window");
        }
    }
    let interior = closure.difference(&boundary);
    Parts {
        complement: closure.complement(),
        closure,
        boundary,
        interior,
    }
}

/// Components of the complement of `s` split into those reaching the window
/// border (merged into one exterior through the implicit padding) and the
/// bounded ones.
fn complement_regions(s: &PixelSet) -> (PixelSet, Vec<PixelSet>) {
    let mut exterior = PixelSet::new(s.width(), s.height());
    let mut bounded = Vec::new();
    for comp in s.complement().components(Connectivity::Four) {
        if comp.touches_border() {
            exterior = exterior.union(&comp);
        } else {
            bounded.push(comp);
        }
    }
    (exterior, bounded)
}

/// `(β₀, β₁)`: 8-connected components of `s` and bounded 4-connected
/// components of its complement.
pub fn grid_homology(s: &PixelSet) -> (usize, usize) {
    let b0 = s.components(Connectivity::Eight).len();
    let (_, holes) = complement_regions(s);
    (b0, holes.len())
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionPartition {
    pub boundary: PixelSet,
    pub interior: PixelSet,
    pub exterior: PixelSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanFlags {
    pub exactly_two_regions: bool,
    pub common_boundary: bool,
    pub nonvoid_interior: bool,
}

impl JordanFlags {
    pub fn all(&self) -> bool {
        self.exactly_two_regions && self.common_boundary && self.nonvoid_interior
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanReport {
    pub partition: RegionPartition,
    pub interior_components: usize,
    pub flags: JordanFlags,
}

fn adjacent_or_outside(region: &PixelSet, p: Pixel, outside_counts: bool) -> bool {
    Connectivity::Eight.offsets().iter().any(|&(dx, dy)| {
        let q = (p.0 + dx, p.1 + dy);
        region.contains(q) || (outside_counts && !region.in_window(q))
    })
}

/// Splits the window around an already rasterized curve.
pub fn partition_curve(curve: &PixelSet) -> JordanReport {
    let (exterior, holes) = complement_regions(curve);
    let interior = holes
        .iter()
        .fold(PixelSet::new(curve.width(), curve.height()), |acc, h| acc.union(h));
    let common_boundary = curve.iter().all(|p| {
        adjacent_or_outside(&interior, p, false) && adjacent_or_outside(&exterior, p, true)
    });
    JordanReport {
        flags: JordanFlags {
            exactly_two_regions: holes.len() == 1,
            common_boundary,
            nonvoid_interior: !interior.is_empty(),
        },
        interior_components: holes.len(),
        partition: RegionPartition {
            boundary: curve.clone(),
            interior,
            exterior,
        },
    }
}

/// Rasterizes a closed simple curve and partitions the window into boundary,
/// interior and exterior. A degenerate curve yields `nonvoid_interior = false`.
pub fn jordan_partition(curve: &Polyline, width: usize, height: usize) -> Result<JordanReport> {
    if !curve.closed {
        return Err(Error::OpenCurve);
    }
    let raster = rasterize_cycle(&curve.vertices, width, height)?;
    Ok(partition_curve(&raster))
}

/// One member of a structure handed to [`system_boundary_check`]: the
/// polylines whose union is the member's curve.
pub type MemberCurve = Vec<Vec<Vertex>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemBoundaryReport {
    pub members: usize,
    pub interior_regions: usize,
    pub exterior_regions: usize,
    pub region_count_ok: bool,
    pub common_boundary: bool,
    pub nonvoid_interiors: bool,
    /// Pixels shared by the boundaries of two or more members.
    pub non_simple_points: Vec<[i64; 2]>,
}

impl SystemBoundaryReport {
    pub fn passed(&self) -> bool {
        self.region_count_ok && self.common_boundary && self.nonvoid_interiors
    }
}

/// Outer boundary of a traced member: pixels of its filled region that touch
/// the exterior.
pub fn outer_boundary(trace: &PixelSet) -> PixelSet {
    let (exterior, _) = complement_regions(trace);
    let filled = exterior.complement();
    filled
        .iter()
        .filter(|&p| adjacent_or_outside(&exterior, p, true))
        .fold(PixelSet::new(trace.width(), trace.height()), |mut acc, p| {
            acc.try_insert(p).expect("pixel from the same window");
            acc
        })
}

/// Checks the boundary of the union of member curves: one bounded region per
/// member, a single exterior, and every boundary pixel adjacent to both.
pub fn system_boundary_check(
    members: &[MemberCurve],
    width: usize,
    height: usize,
) -> Result<SystemBoundaryReport> {
    let mut outers = Vec::with_capacity(members.len());
    for m in members {
        let traced = trace(m.iter().map(Vec::as_slice), width, height)?;
        outers.push(outer_boundary(&traced));
    }
    let mut union = PixelSet::new(width, height);
    let mut shared = PixelSet::new(width, height);
    for o in &outers {
        shared = shared.union(&union.intersection(o));
        union = union.union(o);
    }
    let (exterior, holes) = complement_regions(&union);
    let interior = holes
        .iter()
        .fold(PixelSet::new(width, height), |acc, h| acc.union(h));
    let common_boundary = union.iter().all(|p| {
        adjacent_or_outside(&interior, p, false) && adjacent_or_outside(&exterior, p, true)
    }) && holes.iter().all(|h| {
        h.iter()
            .any(|p| Connectivity::Eight.offsets().iter().any(|&(dx, dy)| union.contains((p.0 + dx, p.1 + dy))))
    });
    Ok(SystemBoundaryReport {
        members: members.len(),
        interior_regions: holes.len(),
        exterior_regions: 1,
        region_count_ok: holes.len() == members.len(),
        common_boundary,
        nonvoid_interiors: !holes.is_empty(),
        non_simple_points: shared.iter().map(|(x, y)| [x, y]).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub boundary: PixelSetDoc,
    pub interior: PixelSetDoc,
    pub exterior: PixelSetDoc,
    pub interior_components: usize,
    pub flags: JordanFlags,
}

impl From<&JordanReport> for PartitionDoc {
    fn from(r: &JordanReport) -> Self {
        Self {
            boundary: (&r.partition.boundary).into(),
            interior: (&r.partition.interior).into(),
            exterior: (&r.partition.exterior).into(),
            interior_components: r.interior_components,
            flags: r.flags,
        }
    }
}

/// SVG overlay with one layer per region: exterior white, interior shaded,
/// boundary black.
pub fn partition_svg(p: &RegionPartition, scale: usize) -> String {
    let (w, h) = (p.boundary.width(), p.boundary.height());
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {w} {h}" shape-rendering="crispEdges">"#,
        w * scale,
        h * scale
    );
    for (id, fill, set) in [
        ("exterior", "#ffffff", &p.exterior),
        ("interior", "#b0c4de", &p.interior),
        ("boundary", "#000000", &p.boundary),
    ] {
        let _ = writeln!(svg, r#"  <g id="{id}" fill="{fill}">"#);
        for (x, y) in set.iter() {
            let _ = writeln!(svg, r#"    <rect x="{x}" y="{y}" width="1" height="1"/>"#);
        }
        let _ = writeln!(svg, "  </g>");
    }
    svg.push_str("</svg>\n");
    svg
}
