//! Covers, nerve complexes, GF(2) Betti numbers, free-group ranks and good-cover checks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descriptive::Mode;
use crate::error::{Error, Result};
use crate::gf2;
use crate::homotopy::{contractibility, Certificate, ContractMode, Subject};
use crate::jordan::grid_homology;
use crate::pixel::PixelSet;
use crate::pointset::PointSet;
use crate::proximity::{FiniteProximitySpace, PointId};

/// Nerve simplices stop at triangles.
pub const MAX_DIMENSION: usize = 2;

/// A cover is a nonempty family of sets; either point sets of one space or
/// pixel sets of one window.
#[derive(Clone, Debug, PartialEq)]
pub enum Cover<'a> {
    Points {
        space: &'a FiniteProximitySpace,
        elements: Vec<PointSet>,
    },
    Pixels(Vec<PixelSet>),
}

impl<'a> Cover<'a> {
    /// A cover of the union of `elements`.
    pub fn points(space: &'a FiniteProximitySpace, elements: Vec<PointSet>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyCover);
        }
        for e in &elements {
            space.check_members(e)?;
        }
        Ok(Cover::Points { space, elements })
    }

    /// A cover that must exhaust `ambient`.
    pub fn points_of(space: &'a FiniteProximitySpace, elements: Vec<PointSet>, ambient: &PointSet) -> Result<Self> {
        let cover = Self::points(space, elements)?;
        let missing = ambient.difference(&cover.union_points().expect("point cover")).len();
        if missing > 0 {
            return Err(Error::IncompleteCover(missing));
        }
        Ok(cover)
    }

    pub fn pixels(elements: Vec<PixelSet>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyCover);
        }
        Ok(Cover::Pixels(elements))
    }

    pub fn len(&self) -> usize {
        match self {
            Cover::Points { elements, .. } => elements.len(),
            Cover::Pixels(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn union_points(&self) -> Option<PointSet> {
        match self {
            Cover::Points { space, elements } => {
                Some(elements.iter().fold(space.empty_set(), |acc, e| acc.union(e)))
            }
            Cover::Pixels(_) => None,
        }
    }
}

/// Intersection of the family `members`, plain or descriptive.
enum Meet {
    Points(PointSet),
    Pixels(PixelSet),
}

impl Meet {
    fn is_empty(&self) -> bool {
        match self {
            Meet::Points(s) => s.is_empty(),
            Meet::Pixels(s) => s.is_empty(),
        }
    }
}

fn meet(cover: &Cover<'_>, members: &[usize], mode: Mode) -> Result<Meet> {
    match cover {
        Cover::Points { space, elements } => {
            let sets: Vec<PointSet> = members.iter().map(|&i| elements[i].clone()).collect();
            Ok(Meet::Points(match mode {
                Mode::Plain => sets[1..].iter().fold(sets[0].clone(), |acc, s| acc.intersection(s)),
                Mode::Descriptive => space.descriptive()?.descriptive_intersection_of(&sets)?,
            }))
        }
        Cover::Pixels(elements) => match mode {
            Mode::Plain => Ok(Meet::Pixels(
                members[1..]
                    .iter()
                    .fold(elements[members[0]].clone(), |acc, &i| acc.intersection(&elements[i])),
            )),
            Mode::Descriptive => Err(Error::ModeMismatch("pixel covers carry no descriptions".into())),
        },
    }
}

/// Visits every family (as increasing index lists) of size `min..=max` with a
/// nonempty meet. Families extending an empty meet are skipped.
fn nonvoid_families(cover: &Cover<'_>, mode: Mode, min: usize, max: usize) -> Result<Vec<(Vec<usize>, Meet)>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..cover.len()).rev().map(|i| vec![i]).collect();
    while let Some(family) = stack.pop() {
        let m = meet(cover, &family, mode)?;
        if m.is_empty() {
            continue;
        }
        if family.len() < max {
            let last = *family.last().unwrap();
            for j in (last + 1..cover.len()).rev() {
                let mut next = family.clone();
                next.push(j);
                stack.push(next);
            }
        }
        if family.len() >= min {
            out.push((family, m));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// A simplicial complex of dimension at most two on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveComplex {
    pub vertices: usize,
    /// All simplices, ordered by dimension and then lexicographically.
    pub simplices: Vec<Vec<usize>>,
}

impl NerveComplex {
    /// Validates and normalises a complex. Vertices `0..vertices` are always
    /// present; every listed simplex must have all its faces listed.
    pub fn new(vertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut set: BTreeSet<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
        for s in simplices {
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if s.len() > MAX_DIMENSION + 1 {
                return Err(Error::NotClosed(format!("simplex {s:?} exceeds dimension {MAX_DIMENSION}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
                return Err(Error::VertexOutOfRange { vertex: v, count: vertices });
            }
            set.insert(s);
        }
        for s in set.iter().filter(|s| s.len() == 3) {
            for skip in 0..3 {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                if !set.contains(&face) {
                    return Err(Error::NotClosed(format!("face {face:?} of {s:?} is missing")));
                }
            }
        }
        let mut simplices: Vec<Vec<usize>> = set.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(Self { vertices, simplices })
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == 2)
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == 3)
    }

    pub fn skeleton(&self) -> Graph {
        Graph {
            vertices: self.vertices,
            edges: self.edges().map(|e| (e[0], e[1])).collect(),
        }
    }
}

pub fn build_nerve(cover: &Cover<'_>, mode: Mode) -> Result<NerveComplex> {
    let families = nonvoid_families(cover, mode, 1, MAX_DIMENSION + 1)?;
    NerveComplex::new(cover.len(), families.into_iter().map(|(f, _)| f).collect())
}

/// `(β₀, β₁)` over GF(2).
pub fn betti(c: &NerveComplex) -> Result<(usize, usize)> {
    // Re-validate: the fields are public.
    let c = NerveComplex::new(c.vertices, c.simplices.clone())?;
    let edges: Vec<&Vec<usize>> = c.edges().collect();
    let edge_index: BTreeMap<&[usize], usize> = edges.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let d1: Vec<FixedBitSet> = edges
        .iter()
        .map(|e| {
            let mut row = FixedBitSet::with_capacity(c.vertices);
            row.insert(e[0]);
            row.insert(e[1]);
            row
        })
        .collect();
    let d2: Vec<FixedBitSet> = c
        .triangles()
        .map(|t| {
            let mut row = FixedBitSet::with_capacity(edges.len());
            for face in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                row.insert(edge_index[face.as_slice()]);
            }
            row
        })
        .collect();
    let r1 = gf2::rank(&d1);
    let r2 = gf2::rank(&d2);
    Ok((c.vertices - r1, edges.len() - r1 - r2))
}

/// A finite multigraph; loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeGroupPresentation {
    pub rank: usize,
    /// One fundamental cycle per non-forest edge, as edge lists.
    pub generators: Vec<Vec<(usize, usize)>>,
}

pub fn free_group_presentation(g: &Graph) -> Result<FreeGroupPresentation> {
    let order: Vec<usize> = (0..g.vertices).collect();
    free_group_presentation_in_order(g, &order)
}

/// As [`free_group_presentation`], growing the BFS forest from roots in
/// `order` and scanning neighbours in that order.
pub fn free_group_presentation_in_order(g: &Graph, order: &[usize]) -> Result<FreeGroupPresentation> {
    for &(u, v) in &g.edges {
        for w in [u, v] {
            if w >= g.vertices {
                return Err(Error::VertexOutOfRange { vertex: w, count: g.vertices });
            }
        }
    }
    let rank_of: Vec<usize> = {
        let mut r = vec![usize::MAX; g.vertices];
        for (i, &v) in order.iter().enumerate() {
            r[v] = i;
        }
        r
    };
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertices];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        adj[u].push((v, i));
        if u != v {
            adj[v].push((u, i));
        }
    }
    for a in &mut adj {
        a.sort_by_key(|&(w, i)| (rank_of[w], i));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.vertices];
    let mut depth = vec![usize::MAX; g.vertices];
    let mut tree = vec![false; g.edges.len()];
    for &root in order {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, i) in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some((u, i));
                    tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut generators = Vec::new();
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if tree[i] {
            continue;
        }
        let (mut a, mut b) = (u, v);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let (p, e) = parent[a].expect("non-root");
                left.push(g.edges[e]);
                a = p;
            } else {
                let (p, e) = parent[b].expect("non-root");
                right.push(g.edges[e]);
                b = p;
            }
        }
        let mut cycle = vec![(u, v)];
        cycle.extend(left);
        cycle.extend(right.into_iter().rev());
        generators.push(cycle);
    }
    Ok(FreeGroupPresentation {
        rank: generators.len(),
        generators,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoodCoverMode {
    Topological,
    Descriptive,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCheck {
    pub members: Vec<usize>,
    pub size: usize,
    pub contractible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodCoverReport {
    pub mode: GoodCoverMode,
    pub passed: bool,
    pub intersections: Vec<IntersectionCheck>,
}

/// Integer-coordinate points as a pixel set in a window with a one-pixel margin.
fn points_as_pixels(space: &FiniteProximitySpace, set: &PointSet) -> Result<PixelSet> {
    let mut px = Vec::new();
    for i in set.iter() {
        let p = space.point(i);
        let [x, y] = p.coords.ok_or_else(|| Error::MissingCoordinates(p.id.to_string()))?;
        if x.fract() != 0.0 || y.fract() != 0.0 {
            return Err(Error::NonIntegerCoordinates { id: p.id.to_string(), x, y });
        }
        px.push((x as i64, y as i64));
    }
    let x0 = px.iter().map(|p| p.0).min().unwrap_or(0) - 1;
    let y0 = px.iter().map(|p| p.1).min().unwrap_or(0) - 1;
    let x1 = px.iter().map(|p| p.0).max().unwrap_or(0) + 1;
    let y1 = px.iter().map(|p| p.1).max().unwrap_or(0) + 1;
    PixelSet::from_pixels(
        (x1 - x0 + 1) as usize,
        (y1 - y0 + 1) as usize,
        px.into_iter().map(|(x, y)| (x - x0, y - y0)),
    )
}

fn check_meet(cover: &Cover<'_>, m: &Meet, mode: GoodCoverMode) -> Result<(bool, Option<Certificate>, String, usize)> {
    match (cover, m) {
        (Cover::Points { space, .. }, Meet::Points(set)) => {
            if mode == GoodCoverMode::Topological {
                if set.len() == 1 {
                    let point: PointId = space.point(set.first().unwrap()).id.clone();
                    return Ok((true, Some(Certificate::Singleton { point }), "single point".into(), 1));
                }
                let px = points_as_pixels(space, set)?;
                let r = contractibility(Subject::Pixels(&px), ContractMode::GridTopological, None)?;
                return Ok((r.contractible, r.certificate, r.detail, set.len()));
            }
            let cmode = if mode == GoodCoverMode::Degenerate {
                ContractMode::DegenerateDescriptive
            } else {
                ContractMode::Descriptive
            };
            let r = contractibility(Subject::Points { space, set }, cmode, None)?;
            Ok((r.contractible, r.certificate, r.detail, set.len()))
        }
        (Cover::Pixels(_), Meet::Pixels(px)) => {
            if mode != GoodCoverMode::Topological {
                return Err(Error::ModeMismatch("pixel covers carry no descriptions".into()));
            }
            let r = contractibility(Subject::Pixels(px), ContractMode::GridTopological, None)?;
            Ok((r.contractible, r.certificate, r.detail, px.len()))
        }
        _ => unreachable!("meets follow their cover"),
    }
}

/// Runs the contractibility check of `mode` on every nonvoid intersection of
/// `min_family` or more elements (plain intersections in topological mode,
/// descriptive ones otherwise).
pub fn check_good_cover(cover: &Cover<'_>, mode: GoodCoverMode, min_family: usize) -> Result<GoodCoverReport> {
    if let (Cover::Points { space, .. }, GoodCoverMode::Descriptive | GoodCoverMode::Degenerate) = (cover, mode) {
        space.descriptive()?;
    }
    if let (Cover::Pixels(_), GoodCoverMode::Descriptive | GoodCoverMode::Degenerate) = (cover, mode) {
        return Err(Error::ModeMismatch("pixel covers carry no descriptions".into()));
    }
    let meet_mode = if mode == GoodCoverMode::Topological {
        Mode::Plain
    } else {
        Mode::Descriptive
    };
    let families = nonvoid_families(cover, meet_mode, min_family.max(1), cover.len())?;
    let intersections = families
        .par_iter()
        .map(|(members, m)| {
            let (contractible, certificate, detail, size) = check_meet(cover, m, mode)?;
            Ok(IntersectionCheck {
                members: members.clone(),
                size,
                contractible,
                certificate,
                detail,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GoodCoverReport {
        mode,
        passed: intersections.iter().all(|c| c.contractible),
        intersections,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveUnionReport {
    pub nerve: (usize, usize),
    pub union: (usize, usize),
    pub equal: bool,
    /// Families whose pixel intersection is empty although the rectangles,
    /// read as closed unit squares, touch along an edge or a corner.
    pub touching: Vec<Vec<usize>>,
}

fn rect_of(s: &PixelSet) -> (i64, i64, i64, i64) {
    s.bounding_box().expect("filled rectangles are nonempty")
}

fn touching_families(rects: &[(i64, i64, i64, i64)]) -> Vec<Vec<usize>> {
    let m = rects.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        if mask.count_ones() < 2 || mask.count_ones() as usize > MAX_DIMENSION + 1 {
            continue;
        }
        let fam: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let lo_x = fam.iter().map(|&i| rects[i].0).max().unwrap();
        let lo_y = fam.iter().map(|&i| rects[i].1).max().unwrap();
        let hi_x = fam.iter().map(|&i| rects[i].2).min().unwrap();
        let hi_y = fam.iter().map(|&i| rects[i].3).min().unwrap();
        let pixels_meet = lo_x <= hi_x && lo_y <= hi_y;
        let squares_meet = lo_x <= hi_x + 1 && lo_y <= hi_y + 1;
        if squares_meet && !pixels_meet {
            out.push(fam);
        }
    }
    out
}

/// Compares the nerve of a cover by filled rectangles with the grid homology
/// of their union.
pub fn nerve_vs_union_check(elements: &[PixelSet]) -> Result<NerveUnionReport> {
    if let Some(i) = elements.iter().position(|e| !e.is_filled_rectangle()) {
        return Err(Error::NonConvexElement(i));
    }
    let cover = Cover::pixels(elements.to_vec())?;
    let nerve = betti(&build_nerve(&cover, Mode::Plain)?)?;
    let union = elements[1..].iter().fold(elements[0].clone(), |acc, e| acc.union(e));
    let union = grid_homology(&union);
    let rects: Vec<_> = elements.iter().map(rect_of).collect();
    Ok(NerveUnionReport {
        nerve,
        union,
        equal: nerve == union,
        touching: touching_families(&rects),
    })
}
