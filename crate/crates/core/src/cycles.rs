//! Paths, simple homotopic cycles, multi-path cycles and cycle systems.
//!
//! A cycle lists its vertices in order; edge `i` runs from vertex `i` to vertex
//! `i + 1` (wrapping). Each edge carries a class of explicit member paths. When
//! a document omits the edges, every edge is the direct two-vertex path.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::descriptive::{FeatureVector, ProbeFunction};
use crate::error::{Error, Result};
use crate::jordan::{self, MemberCurve, Vertex};
use crate::pointset::PointSet;
use crate::proximity::{FiniteProximitySpace, PointId, Proximity};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPath {
    vertices: Vec<usize>,
}

impl HPath {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPath);
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("paths are nonempty")
    }

    /// Consecutive vertices are related under the space's rule.
    pub fn is_proximal(&self, space: &FiniteProximitySpace) -> bool {
        self.vertices.windows(2).all(|w| space.related(w[0], w[1]))
    }

    pub fn as_set(&self, n: usize) -> PointSet {
        PointSet::from_indices(n, self.vertices.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClass {
    pub start: usize,
    pub end: usize,
    pub members: Vec<HPath>,
}

/// A cycle whose edges are path classes. A simple homotopic cycle is the case
/// of one member per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiCycle {
    vertices: Vec<usize>,
    edges: Vec<PathClass>,
}

impl MultiCycle {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[PathClass] {
        &self.edges
    }

    /// Every vertex on the cycle or on one of its member paths.
    pub fn vertex_set(&self, n: usize) -> PointSet {
        let mut s = PointSet::from_indices(n, self.vertices.iter().copied());
        for p in self.edges.iter().flat_map(|e| &e.members) {
            s = s.union(&p.as_set(n));
        }
        s
    }

    /// Undirected edges of the 1-skeleton traced by the member paths.
    pub fn skeleton_edges(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .flat_map(|e| &e.members)
            .flat_map(|p| p.vertices.windows(2))
            .filter(|w| w[0] != w[1])
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect()
    }

    /// The member paths as coordinate polylines.
    pub fn curve(&self, space: &FiniteProximitySpace) -> Result<MemberCurve> {
        let coords = integer_coords(space, self.edges.iter().flat_map(|e| &e.members).flat_map(|p| &p.vertices))?;
        Ok(self
            .edges
            .iter()
            .flat_map(|e| &e.members)
            .map(|p| p.vertices.iter().map(|v| coords[v]).collect())
            .collect())
    }
}

fn integer_coords<'a, I>(space: &FiniteProximitySpace, ids: I) -> Result<std::collections::BTreeMap<usize, Vertex>>
where
    I: IntoIterator<Item = &'a usize>,
{
    let mut out = std::collections::BTreeMap::new();
    for &v in ids {
        if out.contains_key(&v) {
            continue;
        }
        let p = space.point(v);
        let [x, y] = p.coords.ok_or_else(|| Error::MissingCoordinates(p.id.to_string()))?;
        if x.fract() != 0.0 || y.fract() != 0.0 || x.abs() > 1e15 || y.abs() > 1e15 {
            return Err(Error::NonIntegerCoordinates {
                id: p.id.to_string(),
                x,
                y,
            });
        }
        out.insert(v, [x as i64, y as i64]);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub paths: Vec<Vec<PointId>>,
}

/// JSON form: `{vertices: [ids], edges?: [{paths: [[ids], ...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub vertices: Vec<PointId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeDoc>>,
}

impl CycleDoc {
    pub fn simple<I: IntoIterator<Item = T>, T: Into<PointId>>(vertices: I) -> Self {
        Self {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edges: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemMode {
    /// All members share exactly one vertex.
    #[default]
    Global,
    /// Consecutive members share exactly one vertex each.
    Chain,
}

/// JSON form: `{cycles: [...], mode: "global" | "chain"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub cycles: Vec<CycleDoc>,
    #[serde(default)]
    pub mode: SystemMode,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDiagnostics {
    pub valid: bool,
    pub simple: bool,
    pub closed: bool,
    pub paths_proximal: bool,
    pub endpoints_consistent: bool,
    pub interior_pixels: usize,
    pub issues: Vec<String>,
}

/// Resolves a document against a space. Structural problems that make the
/// candidate fail validation are returned as issues, not errors.
fn resolve(space: &FiniteProximitySpace, doc: &CycleDoc) -> Result<(MultiCycle, Vec<String>, bool)> {
    let vertices = doc
        .vertices
        .iter()
        .map(|id| space.index_of(id))
        .collect::<Result<Vec<_>>>()?;
    let n = vertices.len();
    let mut issues = Vec::new();
    let edge_docs: Vec<EdgeDoc> = match &doc.edges {
        Some(e) => e.clone(),
        None => (0..n)
            .map(|i| EdgeDoc {
                paths: vec![vec![doc.vertices[i].clone(), doc.vertices[(i + 1) % n].clone()]],
            })
            .collect(),
    };
    let closed = n >= 3 && edge_docs.len() == n;
    if n < 3 {
        issues.push(format!("{n} vertices cannot form a cycle"));
    } else if edge_docs.len() + 1 == n {
        issues.push(format!("not closed: `{}` is an end vertex", doc.vertices[n - 1]));
    } else if edge_docs.len() != n {
        issues.push(format!("{} edges for {n} vertices", edge_docs.len()));
    }
    let mut edges = Vec::with_capacity(edge_docs.len());
    for (i, e) in edge_docs.iter().enumerate() {
        if e.paths.is_empty() {
            return Err(Error::EmptyPathClass(i));
        }
        let members = e
            .paths
            .iter()
            .map(|p| HPath::new(p.iter().map(|id| space.index_of(id)).collect::<Result<_>>()?))
            .collect::<Result<Vec<_>>>()?;
        let start = vertices.get(i).copied().unwrap_or(members[0].start());
        let end = vertices.get((i + 1) % n.max(1)).copied().unwrap_or(members[0].end());
        edges.push(PathClass { start, end, members });
    }
    Ok((MultiCycle { vertices, edges }, issues, closed))
}

/// Window that holds `verts` with a one-pixel margin, and the shifted vertices.
fn local_frame(verts: &[Vertex]) -> (usize, usize, Vec<Vertex>) {
    let x0 = verts.iter().map(|v| v[0]).min().unwrap_or(0) - 1;
    let y0 = verts.iter().map(|v| v[1]).min().unwrap_or(0) - 1;
    let x1 = verts.iter().map(|v| v[0]).max().unwrap_or(0) + 1;
    let y1 = verts.iter().map(|v| v[1]).max().unwrap_or(0) + 1;
    let shifted = verts.iter().map(|v| [v[0] - x0, v[1] - y0]).collect();
    ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize, shifted)
}

/// Number of bounded complement pixels of the rasterized vertex polygon.
fn interior_size(ring: &[Vertex]) -> usize {
    if ring.is_empty() {
        return 0;
    }
    let (w, h, local) = local_frame(ring);
    let mut closed = local.clone();
    closed.push(local[0]);
    let traced = jordan::trace([closed.as_slice()], w, h).expect("frame holds every vertex");
    jordan::partition_curve(&traced).partition.interior.len()
}

fn diagnose(space: &FiniteProximitySpace, mc: &MultiCycle, mut issues: Vec<String>, closed: bool) -> Result<CycleDiagnostics> {
    let distinct: BTreeSet<usize> = mc.vertices.iter().copied().collect();
    let mut simple = distinct.len() == mc.vertices.len();
    if !simple {
        issues.push("a vertex repeats".into());
    }
    let coords = integer_coords(space, &mc.vertices)?;
    let ring: Vec<Vertex> = mc.vertices.iter().map(|v| coords[v]).collect();
    if simple && ring.len() >= 3 {
        if let Err(e) = jordan::check_simple(&ring) {
            simple = false;
            issues.push(e.to_string());
        }
    }

    let mut paths_proximal = true;
    let mut endpoints_consistent = true;
    for (i, e) in mc.edges.iter().enumerate() {
        for (j, p) in e.members.iter().enumerate() {
            if !p.is_proximal(space) {
                paths_proximal = false;
                issues.push(format!("edge {i} path {j} has consecutive vertices that are not near"));
            }
            if p.start() != e.start || p.end() != e.end {
                endpoints_consistent = false;
                issues.push(format!(
                    "edge {i} path {j} runs `{}`..`{}`, expected `{}`..`{}`",
                    space.id(p.start()),
                    space.id(p.end()),
                    space.id(e.start),
                    space.id(e.end)
                ));
            }
        }
    }
    let interior_pixels = interior_size(&ring);
    if interior_pixels == 0 {
        issues.push("void interior".into());
    }
    Ok(CycleDiagnostics {
        valid: simple && closed && paths_proximal && endpoints_consistent && interior_pixels > 0,
        simple,
        closed,
        paths_proximal,
        endpoints_consistent,
        interior_pixels,
        issues,
    })
}

/// Validates a multi-path homotopic cycle.
pub fn validate_multi_cycle(space: &FiniteProximitySpace, doc: &CycleDoc) -> Result<(MultiCycle, CycleDiagnostics)> {
    let (mc, issues, closed) = resolve(space, doc)?;
    let diag = diagnose(space, &mc, issues, closed)?;
    Ok((mc, diag))
}

/// Validates a simple homotopic cycle: a multi-cycle with one path per edge.
pub fn validate_hcyc(space: &FiniteProximitySpace, doc: &CycleDoc) -> Result<(MultiCycle, CycleDiagnostics)> {
    let (mc, mut diag) = validate_multi_cycle(space, doc)?;
    for (i, e) in mc.edges.iter().enumerate() {
        if e.members.len() != 1 {
            diag.valid = false;
            diag.issues.push(format!("edge {i} has {} paths; a simple cycle takes one", e.members.len()));
        }
    }
    Ok((mc, diag))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemReport {
    pub valid: bool,
    pub mode: SystemMode,
    pub members: Vec<CycleDiagnostics>,
    /// The clasp in global mode; one shared vertex per consecutive pair in chain mode.
    pub clasps: Vec<PointId>,
    pub issues: Vec<String>,
}

pub struct CycleSystem {
    pub cycles: Vec<MultiCycle>,
    pub mode: SystemMode,
}

impl CycleSystem {
    pub fn curves(&self, space: &FiniteProximitySpace) -> Result<Vec<MemberCurve>> {
        self.cycles.iter().map(|c| c.curve(space)).collect()
    }

    pub fn skeleton_edges(&self) -> BTreeSet<(usize, usize)> {
        self.cycles.iter().flat_map(|c| c.skeleton_edges()).collect()
    }

    pub fn member_sets(&self, n: usize) -> Vec<PointSet> {
        self.cycles.iter().map(|c| c.vertex_set(n)).collect()
    }
}

pub fn validate_cycle_system(space: &FiniteProximitySpace, doc: &SystemDoc) -> Result<(CycleSystem, SystemReport)> {
    let n = space.len();
    let mut cycles = Vec::new();
    let mut members = Vec::new();
    for c in &doc.cycles {
        let (mc, d) = validate_multi_cycle(space, c)?;
        cycles.push(mc);
        members.push(d);
    }
    let mut issues = Vec::new();
    if cycles.len() < 2 {
        issues.push(format!("a system needs at least 2 cycles, got {}", cycles.len()));
    }
    for (i, d) in members.iter().enumerate() {
        if !d.valid {
            issues.push(format!("member {i} is not a valid cycle"));
        }
    }
    let sets: Vec<PointSet> = cycles.iter().map(|c| c.vertex_set(n)).collect();
    let mut clasps = Vec::new();
    let mut joined = !sets.is_empty();
    match doc.mode {
        SystemMode::Global => {
            let common = sets.iter().skip(1).fold(sets.first().cloned().unwrap_or_else(|| PointSet::empty(n)), |acc, s| acc.intersection(s));
            if common.len() == 1 {
                clasps.push(space.id(common.first().unwrap()).clone());
            } else {
                joined = false;
                issues.push(format!("members share {} vertices, expected exactly one", common.len()));
            }
        }
        SystemMode::Chain => {
            for (i, w) in sets.windows(2).enumerate() {
                let common = w[0].intersection(&w[1]);
                if common.len() == 1 {
                    clasps.push(space.id(common.first().unwrap()).clone());
                } else {
                    joined = false;
                    issues.push(format!("members {i} and {} share {} vertices, expected exactly one", i + 1, common.len()));
                }
            }
        }
    }
    let valid = cycles.len() >= 2 && joined && members.iter().all(|d| d.valid);
    Ok((
        CycleSystem {
            cycles,
            mode: doc.mode,
        },
        SystemReport {
            valid,
            mode: doc.mode,
            members,
            clasps,
            issues,
        },
    ))
}

/// The set of descriptions met along a path, in first-seen order.
pub fn path_description(probe: &ProbeFunction, h: &HPath, n: usize) -> Vec<FeatureVector> {
    probe.description_of(&h.as_set(n))
}

/// Two paths are descriptively close when every description on one is
/// matched within tolerance by a description on the other, both ways.
pub fn paths_descriptively_close(probe: &ProbeFunction, h: &HPath, k: &HPath) -> bool {
    let covered = |a: &HPath, b: &HPath| {
        a.vertices
            .iter()
            .all(|&x| b.vertices.iter().any(|&y| probe.same_description(x, y)))
    };
    covered(h, k) && covered(k, h)
}
