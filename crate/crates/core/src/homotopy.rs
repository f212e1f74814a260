//! Discretised proximal homotopies on `X × T_k` with `T_k = {0, 1/k, …, 1}`.
//!
//! `X × T_k` carries the coordinatewise product proximity: `(x, s)` and `(y, t)`
//! are related iff `x` and `y` are related and `s`, `t` are equal or adjacent
//! grid times.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descriptive::Mode;
use crate::error::{Error, Result};
use crate::jordan::grid_homology;
use crate::maps::{classify_constant, same_space, ConstantKind, FiniteMap};
use crate::pixel::PixelSet;
use crate::pointset::PointSet;
use crate::proximity::{FiniteProximitySpace, PointId, Proximity};

pub const DEFAULT_STEPS: usize = 8;

/// A homotopy table `H(x, i)` for source index `x` and grid time `i / k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    steps: usize,
    table: Vec<Vec<usize>>,
    rel: Option<PointSet>,
}

impl HomotopyWitness {
    pub fn new(steps: usize, table: Vec<Vec<usize>>, rel: Option<PointSet>) -> Result<Self> {
        if steps == 0 {
            return Err(Error::ZeroResolution);
        }
        if let Some((x, _)) = table.iter().enumerate().find(|(_, row)| row.len() != steps + 1) {
            return Err(Error::MalformedWitness(format!(
                "row {x} has {} times, expected {}",
                table[x].len(),
                steps + 1
            )));
        }
        Ok(Self { steps, table, rel })
    }

    /// Builds a witness from `(x, t_index, y)` triples, which must cover every
    /// source point at every grid time exactly once.
    pub fn from_triples(
        source: &FiniteProximitySpace,
        target: &FiniteProximitySpace,
        steps: usize,
        triples: &[(PointId, usize, PointId)],
        rel: Option<&[PointId]>,
    ) -> Result<Self> {
        if steps == 0 {
            return Err(Error::ZeroResolution);
        }
        let mut table = vec![vec![None; steps + 1]; source.len()];
        for (x, t, y) in triples {
            let i = source.index_of(x)?;
            let j = target.index_of(y)?;
            if *t > steps {
                return Err(Error::MalformedWitness(format!("time index {t} exceeds k = {steps}")));
            }
            if table[i][*t].replace(j).is_some() {
                return Err(Error::MalformedWitness(format!("({x}, {t}) assigned twice")));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(t, y)| {
                        y.ok_or_else(|| {
                            Error::MalformedWitness(format!("no value at ({}, {t})", source.id(i)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let rel = rel.map(|ids| source.set(ids.iter().cloned())).transpose()?;
        Self::new(steps, table, rel)
    }

    /// `H(x, t) = f(x)` for every `t`.
    pub fn constant(f: &FiniteMap, steps: usize) -> Result<Self> {
        let table = f.assignment().iter().map(|&y| vec![y; steps + 1]).collect();
        Self::new(steps, table, None)
    }

    /// Moves every point from `f(x)` to the target point nearest the straight
    /// line between `f(x)` and `g(x)`; ties go to the lower index.
    pub fn straight_line(f: &FiniteMap, g: &FiniteMap, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::ZeroResolution);
        }
        check_same_spaces(f, g)?;
        let target = f.target();
        let coords = target.coords_of(&target.all())?;
        let nearest = |p: [f64; 2]| {
            (0..coords.len())
                .min_by(|&a, &b| {
                    let da = crate::proximity::euclidean(coords[a], p);
                    let db = crate::proximity::euclidean(coords[b], p);
                    da.total_cmp(&db).then(a.cmp(&b))
                })
                .expect("spaces are nonempty")
        };
        let table = (0..f.source().len())
            .map(|x| {
                let (p, q) = (coords[f.apply(x)], coords[g.apply(x)]);
                (0..=steps)
                    .map(|i| match i {
                        0 => f.apply(x),
                        i if i == steps => g.apply(x),
                        i => {
                            let s = i as f64 / steps as f64;
                            nearest([p[0] + (q[0] - p[0]) * s, p[1] + (q[1] - p[1]) * s])
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(steps, table, None)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn rel(&self) -> Option<&PointSet> {
        self.rel.as_ref()
    }

    pub fn with_rel(mut self, rel: Option<PointSet>) -> Self {
        self.rel = rel;
        self
    }

    pub fn at(&self, x: usize, t: usize) -> usize {
        self.table[x][t]
    }

    /// The map `H(·, t)` as target indices.
    pub fn slice(&self, t: usize) -> Vec<usize> {
        self.table.iter().map(|row| row[t]).collect()
    }

    /// `H(x, 1 − t)`.
    pub fn reversed(&self) -> Self {
        Self {
            steps: self.steps,
            table: self
                .table
                .iter()
                .map(|row| row.iter().rev().copied().collect())
                .collect(),
            rel: self.rel.clone(),
        }
    }

    /// `h ∘ H`.
    pub fn post_compose(&self, h: &FiniteMap) -> Self {
        Self {
            steps: self.steps,
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|&y| h.apply(y)).collect())
                .collect(),
            rel: self.rel.clone(),
        }
    }

    /// `H ∘ (k × id)`, a witness on the source of `k`.
    pub fn pre_compose(&self, k: &FiniteMap) -> Self {
        Self {
            steps: self.steps,
            table: k.assignment().iter().map(|&z| self.table[z].clone()).collect(),
            rel: None,
        }
    }

    pub fn to_doc(&self, source: &FiniteProximitySpace, target: &FiniteProximitySpace) -> HomotopyDoc {
        HomotopyDoc {
            k: self.steps,
            table: self
                .table
                .iter()
                .enumerate()
                .flat_map(|(x, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(t, &y)| (source.id(x).clone(), t, target.id(y).clone()))
                })
                .collect(),
            rel: self.rel.as_ref().map(|r| source.ids_of(r)),
        }
    }
}

/// JSON form: `{k, table: [[x, t_index, y], ...], rel?: [ids]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomotopyDoc {
    pub k: usize,
    pub table: Vec<(PointId, usize, PointId)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<Vec<PointId>>,
}

impl HomotopyDoc {
    pub fn to_witness(&self, source: &FiniteProximitySpace, target: &FiniteProximitySpace) -> Result<HomotopyWitness> {
        HomotopyWitness::from_triples(source, target, self.k, &self.table, self.rel.as_deref())
    }
}

/// Splices `F` and `G` on the grid `T_{k₁+k₂}`: the first `k₁` steps replay
/// `F`, the rest replay `G`. With equal resolutions `k` this is the usual
/// `F(x, 2t)`, `G(x, 2t − 1)` reparametrisation on `T_{2k}`.
pub fn concatenate_homotopies(f: &HomotopyWitness, g: &HomotopyWitness) -> Result<HomotopyWitness> {
    if f.table.len() != g.table.len() {
        return Err(Error::MalformedWitness(format!(
            "witnesses have {} and {} source rows",
            f.table.len(),
            g.table.len()
        )));
    }
    let mut table = Vec::with_capacity(f.table.len());
    for (x, (rf, rg)) in f.table.iter().zip(&g.table).enumerate() {
        if rf[f.steps] != rg[0] {
            return Err(Error::MidpointMismatch(format!("#{x}")));
        }
        table.push(rf.iter().chain(&rg[1..]).copied().collect());
    }
    let rel = match (&f.rel, &g.rel) {
        (Some(a), Some(b)) => Some(a.intersection(b)),
        _ => None,
    };
    HomotopyWitness::new(f.steps + g.steps, table, rel)
}

/// Like [`concatenate_homotopies`] but names the offending point on a mismatch.
pub fn concatenate_in(
    source: &FiniteProximitySpace,
    f: &HomotopyWitness,
    g: &HomotopyWitness,
) -> Result<HomotopyWitness> {
    let mismatch = f
        .table
        .iter()
        .zip(&g.table)
        .position(|(rf, rg)| rf[f.steps] != rg[0]);
    match mismatch {
        Some(x) if x < source.len() => Err(Error::MidpointMismatch(source.id(x).to_string())),
        _ => concatenate_homotopies(f, g),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomotopyFailure {
    /// `H(x, 0) ≠ f(x)`.
    Start { point: PointId },
    /// `H(x, 1) ≠ g(x)`.
    End { point: PointId },
    /// Related points of `X × T_k` with unrelated images.
    Discontinuous { from: (PointId, usize), to: (PointId, usize) },
    /// A point of the rel set moves or `f`, `g` differ on it.
    RelMoved { point: PointId, time: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub mode: Mode,
    pub steps: usize,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<HomotopyFailure>,
}

fn check_same_spaces(f: &FiniteMap, g: &FiniteMap) -> Result<()> {
    if same_space(f.source(), g.source()) && same_space(f.target(), g.target()) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch("the two maps have different domains or targets".into()))
    }
}

/// Checks that `h` witnesses `f ≃ g`, relative to `h.rel()` when set.
pub fn verify_homotopy(h: &HomotopyWitness, f: &FiniteMap, g: &FiniteMap, mode: Mode) -> Result<HomotopyReport> {
    if h.steps == 0 {
        return Err(Error::ZeroResolution);
    }
    check_same_spaces(f, g)?;
    let source = f.source();
    let target = f.target();
    if h.table.len() != source.len() {
        return Err(Error::MalformedWitness(format!(
            "table has {} rows for {} source points",
            h.table.len(),
            source.len()
        )));
    }
    if let Some(y) = h.table.iter().flatten().find(|&&y| y >= target.len()) {
        return Err(Error::MalformedWitness(format!("target index {y} out of range")));
    }
    let k = h.steps;
    let report = |failure: Option<HomotopyFailure>| HomotopyReport {
        mode,
        steps: k,
        valid: failure.is_none(),
        failure,
    };
    let id = |x: usize| source.id(x).clone();

    for x in 0..source.len() {
        if h.table[x][0] != f.apply(x) {
            return Ok(report(Some(HomotopyFailure::Start { point: id(x) })));
        }
        if h.table[x][k] != g.apply(x) {
            return Ok(report(Some(HomotopyFailure::End { point: id(x) })));
        }
    }
    if let Some(rel) = &h.rel {
        for a in rel.iter() {
            if let Some(t) = (0..=k).find(|&t| h.table[a][t] != f.apply(a)) {
                return Ok(report(Some(HomotopyFailure::RelMoved { point: id(a), time: t })));
            }
        }
    }

    let src = source.relation(mode)?;
    let tgt = target.relation(mode)?;
    let bad = (0..source.len()).into_par_iter().find_map_first(|x| {
        for y in src.neighbours(x).iter() {
            for s in 0..=k {
                for t in s.saturating_sub(1)..=(s + 1).min(k) {
                    if !tgt.related(h.table[x][s], h.table[y][t]) {
                        return Some(((x, s), (y, t)));
                    }
                }
            }
        }
        None
    });
    Ok(report(bad.map(|((x, s), (y, t))| HomotopyFailure::Discontinuous {
        from: (id(x), s),
        to: (id(y), t),
    })))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContractMode {
    DegenerateDescriptive,
    Descriptive,
    GridTopological,
}

pub enum Subject<'a> {
    Points {
        space: &'a FiniteProximitySpace,
        set: &'a PointSet,
    },
    Pixels(&'a PixelSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Φ is constant on the set; the identity is homotopic to the constant map
    /// at `anchor` through a verified witness of `steps` steps.
    DegenerateConstant { anchor: PointId, steps: usize },
    /// A supplied witness verified from the identity to a map of this kind.
    SuppliedWitness { endpoint: ConstantKind, steps: usize },
    GridHomology { b0: usize, b1: usize },
    /// A single point, contractible in every sense.
    Singleton { point: PointId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractibilityReport {
    pub mode: ContractMode,
    pub contractible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub detail: String,
}

fn degenerate_certificate(space: &FiniteProximitySpace, set: &PointSet) -> Result<Option<Certificate>> {
    let d = space.descriptive()?;
    let Some(anchor) = set.first() else {
        return Ok(None);
    };
    if !d.probe().is_constant_on(set) {
        return Ok(None);
    }
    let sub = Arc::new(space.subspace(set)?);
    let id = FiniteMap::identity(sub.clone());
    let c = FiniteMap::constant(sub.clone(), sub.clone(), 0)?;
    let steps = 1;
    let table = (0..sub.len()).map(|x| vec![x, 0]).collect();
    let h = HomotopyWitness::new(steps, table, None)?;
    let r = verify_homotopy(&h, &id, &c, Mode::Descriptive)?;
    Ok(r.valid.then(|| Certificate::DegenerateConstant {
        anchor: space.id(anchor).clone(),
        steps,
    }))
}

/// Contractibility surrogates. Point sets use descriptive certificates and
/// pixel sets the grid homology test `β₀ = 1, β₁ = 0`. A `false` answer in the
/// descriptive modes means that no certificate was found.
///
/// A supplied witness is indexed by the subspace on `set` (in set order) and
/// must run from the identity to a descriptive constant map.
pub fn contractibility(
    subject: Subject<'_>,
    mode: ContractMode,
    witness: Option<&HomotopyWitness>,
) -> Result<ContractibilityReport> {
    let done = |contractible: bool, certificate: Option<Certificate>, detail: String| {
        Ok(ContractibilityReport {
            mode,
            contractible,
            certificate,
            detail,
        })
    };
    match (subject, mode) {
        (Subject::Pixels(s), ContractMode::GridTopological) => {
            let (b0, b1) = grid_homology(s);
            let ok = b0 == 1 && b1 == 0;
            done(
                ok,
                ok.then_some(Certificate::GridHomology { b0, b1 }),
                format!("grid homology ({b0}, {b1})"),
            )
        }
        (Subject::Pixels(_), _) => Err(Error::ModeMismatch(
            "descriptive contractibility needs a point set with features".into(),
        )),
        (Subject::Points { .. }, ContractMode::GridTopological) => Err(Error::ModeMismatch(
            "grid-topological contractibility needs a pixel set".into(),
        )),
        (Subject::Points { space, set }, mode) => {
            space.check_members(set)?;
            if set.is_empty() {
                return done(false, None, "empty set".into());
            }
            if let Some(cert) = degenerate_certificate(space, set)? {
                return done(true, Some(cert), "description is constant on the set".into());
            }
            if mode == ContractMode::DegenerateDescriptive {
                return done(false, None, "description is not constant on the set".into());
            }
            let Some(h) = witness else {
                return done(false, None, "no certificate found".into());
            };
            let sub = Arc::new(space.subspace(set)?);
            let id = FiniteMap::identity(sub.clone());
            if h.table.len() != sub.len() {
                return Err(Error::MalformedWitness(format!(
                    "witness has {} rows for a set of {} points",
                    h.table.len(),
                    sub.len()
                )));
            }
            let end = FiniteMap::new(sub.clone(), sub.clone(), h.slice(h.steps))?;
            let kind = classify_constant(&end)?;
            if kind == ConstantKind::NonConstant {
                return done(false, None, "supplied witness does not end at a constant map".into());
            }
            let r = verify_homotopy(h, &id, &end, Mode::Descriptive)?;
            if r.valid {
                done(
                    true,
                    Some(Certificate::SuppliedWitness {
                        endpoint: kind,
                        steps: h.steps,
                    }),
                    "supplied witness verified".into(),
                )
            } else {
                done(false, None, format!("supplied witness rejected: {:?}", r.failure))
            }
        }
    }
}
