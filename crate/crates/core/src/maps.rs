//! Maps between finite proximity spaces: continuity, composition, gluing and
//! constant-map classification.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descriptive::Mode;
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::proximity::{FiniteProximitySpace, PointId, Proximity};

pub type SpaceRef = Arc<FiniteProximitySpace>;

pub(crate) fn same_space(a: &SpaceRef, b: &SpaceRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A total map between two finite spaces, stored as target indices.
#[derive(Clone, Debug)]
pub struct FiniteMap {
    source: SpaceRef,
    target: SpaceRef,
    assignment: Vec<usize>,
}

impl PartialEq for FiniteMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && same_space(&self.source, &other.source)
            && same_space(&self.target, &other.target)
    }
}

impl FiniteMap {
    pub fn new(source: SpaceRef, target: SpaceRef, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            let missing = source.id(assignment.len().min(source.len() - 1));
            return Err(Error::NotTotal(missing.to_string()));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::ForeignPoint(format!("target index {bad}")));
        }
        Ok(Self {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(x, f(x))` id pairs; every source point must appear once.
    pub fn from_pairs(source: SpaceRef, target: SpaceRef, pairs: &[(PointId, PointId)]) -> Result<Self> {
        let mut assignment = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.index_of(x)?;
            let j = target.index_of(y)?;
            if assignment[i].replace(j).is_some_and(|prev| prev != j) {
                return Err(Error::NotTotal(format!("{x} (assigned twice)")));
            }
        }
        let assignment = assignment
            .iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::NotTotal(source.id(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(space: SpaceRef) -> Self {
        let assignment = (0..space.len()).collect();
        Self {
            target: space.clone(),
            source: space,
            assignment,
        }
    }

    pub fn constant(source: SpaceRef, target: SpaceRef, y: usize) -> Result<Self> {
        let assignment = vec![y; source.len()];
        Self::new(source, target, assignment)
    }

    pub fn source(&self) -> &SpaceRef {
        &self.source
    }

    pub fn target(&self) -> &SpaceRef {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(self.target.len(), set.iter().map(|x| self.assignment[x]))
    }

    pub fn image_of_source(&self) -> PointSet {
        PointSet::from_indices(self.target.len(), self.assignment.iter().copied())
    }

    /// `(x, f(x))` id pairs in source order.
    pub fn pairs(&self) -> Vec<(PointId, PointId)> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.source.id(x).clone(), self.target.id(y).clone()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub mode: Mode,
    pub continuous: bool,
    /// Related source points whose images are not related.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(PointId, PointId)>,
}

/// Checks that related source points have related images. Nearness of sets is
/// the pointwise lift of the point relation, so this singleton check decides
/// continuity for every pair of subsets.
pub fn check_proximal_continuity(f: &FiniteMap, mode: Mode) -> Result<ContinuityReport> {
    let src = f.source.relation(mode)?;
    let tgt = f.target.relation(mode)?;
    let n = f.source.len();
    let witness = (0..n).into_par_iter().find_map_first(|x| {
        src.neighbours(x)
            .iter()
            .find(|&y| !tgt.related(f.assignment[x], f.assignment[y]))
            .map(|y| (x, y))
    });
    Ok(ContinuityReport {
        mode,
        continuous: witness.is_none(),
        witness: witness.map(|(x, y)| (f.source.id(x).clone(), f.source.id(y).clone())),
    })
}

/// `g ∘ f`.
pub fn compose(f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
    if !same_space(&f.target, &g.source) {
        return Err(Error::SpaceMismatch(
            "target of the first map is not the source of the second".into(),
        ));
    }
    Ok(FiniteMap {
        source: f.source.clone(),
        target: g.target.clone(),
        assignment: f.assignment.iter().map(|&y| g.assignment[y]).collect(),
    })
}

fn locate(space: &FiniteProximitySpace, sub: &FiniteProximitySpace, name: &str) -> Result<Vec<usize>> {
    sub.points()
        .iter()
        .map(|p| {
            space
                .index_of(&p.id)
                .map_err(|_| Error::Gluing(format!("point `{}` of {name} is not in X", p.id)))
        })
        .collect()
}

fn closed_in(space: &FiniteProximitySpace, set: &PointSet, mode: Mode) -> Result<bool> {
    match mode {
        Mode::Plain => space.is_closed(set),
        Mode::Descriptive => space.descriptive()?.is_descriptively_closed(set),
    }
}

/// Pastes `f` (defined on the subspace A) and `g` (on B) into one map on `x`.
pub fn glue(f: &FiniteMap, g: &FiniteMap, x: SpaceRef, mode: Mode) -> Result<FiniteMap> {
    if !same_space(&f.target, &g.target) {
        return Err(Error::SpaceMismatch("the two maps have different targets".into()));
    }
    let in_a = locate(&x, &f.source, "A")?;
    let in_b = locate(&x, &g.source, "B")?;
    let n = x.len();
    let a = PointSet::from_indices(n, in_a.iter().copied());
    let b = PointSet::from_indices(n, in_b.iter().copied());
    let uncovered = x.all().difference(&a.union(&b));
    if let Some(p) = uncovered.first() {
        return Err(Error::Gluing(format!("not covering: `{}` is in neither A nor B", x.id(p))));
    }
    if !closed_in(&x, &a, mode)? {
        return Err(Error::Gluing("not closed: A".into()));
    }
    if !closed_in(&x, &b, mode)? {
        return Err(Error::Gluing("not closed: B".into()));
    }
    let mut assignment = vec![usize::MAX; n];
    for (i, &p) in in_a.iter().enumerate() {
        assignment[p] = f.assignment[i];
    }
    for (i, &p) in in_b.iter().enumerate() {
        let y = g.assignment[i];
        if a.contains(p) && assignment[p] != y {
            return Err(Error::Gluing(format!(
                "disagreement on overlap at `{}`: `{}` vs `{}`",
                x.id(p),
                f.target.id(assignment[p]),
                f.target.id(y)
            )));
        }
        assignment[p] = y;
    }
    Ok(FiniteMap {
        source: x,
        target: f.target.clone(),
        assignment,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstantKind {
    Ordinary,
    Degenerate,
    NonConstant,
}

/// True when every image point of `d` carries the same description.
pub fn is_degenerate(d: &FiniteMap) -> Result<bool> {
    let probe = d.target.descriptive()?.probe();
    Ok(probe.is_constant_on(&d.image_of_source()))
}

pub fn classify_constant(d: &FiniteMap) -> Result<ConstantKind> {
    if d.image_of_source().len() == 1 {
        return Ok(ConstantKind::Ordinary);
    }
    Ok(if is_degenerate(d)? {
        ConstantKind::Degenerate
    } else {
        ConstantKind::NonConstant
    })
}
