//! Descriptive nearness: sets are near when their feature descriptions overlap.
//!
//! Each point carries a feature vector. Two descriptions are treated as equal
//! when their Euclidean distance is at most the space's feature tolerance `ε_Φ`
//! (zero by default, which is exact equality of the stored values).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::proximity::{FiniteProximitySpace, PointId, Proximity};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(entries: Vec<f64>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn within(&self, other: &Self, tolerance: f64) -> bool {
        self.distance(other) <= tolerance
    }
}

/// Per-point descriptions together with the equality tolerance `ε_Φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeFunction {
    features: Vec<FeatureVector>,
    tolerance: f64,
    neighbours: Vec<PointSet>,
}

impl ProbeFunction {
    pub fn new(ids: &[PointId], features: Vec<FeatureVector>, tolerance: f64) -> Result<Self> {
        if !tolerance.is_finite() {
            return Err(Error::NonFinite("feature tolerance".into()));
        }
        if tolerance < 0.0 {
            return Err(Error::Negative {
                name: "feature tolerance",
                value: tolerance,
            });
        }
        let dim = features.first().map_or(0, FeatureVector::dim);
        for (id, f) in ids.iter().zip(&features) {
            if f.dim() != dim {
                return Err(Error::FeatureDimension {
                    id: id.to_string(),
                    expected: dim,
                    found: f.dim(),
                });
            }
            if f.entries().iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!("features of `{id}`")));
            }
        }
        let n = features.len();
        let neighbours = (0..n)
            .map(|i| {
                PointSet::from_indices(
                    n,
                    (0..n).filter(|&j| features[i].within(&features[j], tolerance)),
                )
            })
            .collect();
        Ok(Self {
            features,
            tolerance,
            neighbours,
        })
    }

    pub fn feature(&self, index: usize) -> &FeatureVector {
        &self.features[index]
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn same_description(&self, i: usize, j: usize) -> bool {
        self.neighbours[i].contains(j)
    }

    /// `Φ(A)` with duplicates collapsed, in first-seen order.
    pub fn description_of(&self, set: &PointSet) -> Vec<FeatureVector> {
        let mut out: Vec<FeatureVector> = Vec::new();
        for i in set.iter() {
            if !out.contains(&self.features[i]) {
                out.push(self.features[i].clone());
            }
        }
        out
    }

    /// True when every pair of members shares a description.
    pub fn is_constant_on(&self, set: &PointSet) -> bool {
        set.iter().all(|i| set.is_subset(&self.neighbours[i]))
    }
}

/// Selects which relation of a space an operation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Descriptive,
}

/// A space viewed through its probe function.
#[derive(Clone, Copy, Debug)]
pub struct DescriptiveSpace<'a> {
    base: &'a FiniteProximitySpace,
    probe: &'a ProbeFunction,
}

impl FiniteProximitySpace {
    pub fn descriptive(&self) -> Result<DescriptiveSpace<'_>> {
        match self.probe() {
            Some(probe) => Ok(DescriptiveSpace { base: self, probe }),
            None => Err(Error::MissingProbe(
                self.missing_features()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
            )),
        }
    }

    pub fn relation(&self, mode: Mode) -> Result<Relation<'_>> {
        Ok(match mode {
            Mode::Plain => Relation::Plain(self),
            Mode::Descriptive => Relation::Descriptive(self.descriptive()?),
        })
    }
}

impl<'a> DescriptiveSpace<'a> {
    pub fn base(&self) -> &'a FiniteProximitySpace {
        self.base
    }

    pub fn probe(&self) -> &'a ProbeFunction {
        self.probe
    }

    pub fn descriptive_near(&self, a: &PointSet, b: &PointSet) -> Result<bool> {
        Ok(!self.descriptive_intersection(a, b)?.is_empty())
    }

    /// `A ⋓ B`: points of `A ∪ B` whose description matches some `Φ(a)` and
    /// some `Φ(b)` that also match each other.
    pub fn descriptive_intersection(&self, a: &PointSet, b: &PointSet) -> Result<PointSet> {
        self.base.check_members(a)?;
        self.base.check_members(b)?;
        Ok(self.overlap(a, b))
    }

    /// k-fold `⋓`: points `x` of the union that see, among their description
    /// neighbours, one member of every set with all chosen members pairwise
    /// matching. For two sets this is [`Self::descriptive_intersection`].
    pub fn descriptive_intersection_of(&self, sets: &[PointSet]) -> Result<PointSet> {
        for s in sets {
            self.base.check_members(s)?;
        }
        let n = self.size();
        let Some(first) = sets.first() else {
            return Ok(PointSet::empty(n));
        };
        let union = sets.iter().fold(first.clone(), |acc, s| acc.union(s));
        Ok(PointSet::from_indices(
            n,
            union.iter().filter(|&x| {
                let nx = &self.probe.neighbours[x];
                let choices: Vec<PointSet> = sets.iter().map(|s| s.intersection(nx)).collect();
                self.has_matching_choice(&choices, &mut Vec::new())
            }),
        ))
    }

    fn has_matching_choice(&self, choices: &[PointSet], picked: &mut Vec<usize>) -> bool {
        let Some((head, rest)) = choices.split_first() else {
            return true;
        };
        head.iter().any(|c| {
            if picked.iter().all(|&p| self.probe.neighbours[p].contains(c)) {
                picked.push(c);
                let ok = self.has_matching_choice(rest, picked);
                picked.pop();
                ok
            } else {
                false
            }
        })
    }

    pub fn descriptive_closure(&self, a: &PointSet) -> Result<PointSet> {
        self.base.check_members(a)?;
        Ok(self.closure_of(a))
    }

    pub fn is_descriptively_closed(&self, a: &PointSet) -> Result<bool> {
        Ok(self.descriptive_closure(a)? == *a)
    }

    /// `B_Φ(x, ε) = { y : |Φ(x) − Φ(y)| < ε }`.
    pub fn descriptive_ball(&self, x: usize, eps: f64) -> Result<PointSet> {
        if x >= self.size() {
            return Err(Error::ForeignPoint(format!("#{x}")));
        }
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::NonPositive {
                name: "epsilon",
                value: eps,
            });
        }
        let fx = self.probe.feature(x);
        let n = self.size();
        Ok(PointSet::from_indices(
            n,
            (0..n).filter(|&y| fx.distance(self.probe.feature(y)) < eps),
        ))
    }

    /// Balls around every point, duplicates dropped, in order of first appearance.
    pub fn descriptive_open_cover(&self, eps: f64) -> Result<Vec<PointSet>> {
        let mut cover: Vec<PointSet> = Vec::new();
        for x in 0..self.size() {
            let ball = self.descriptive_ball(x, eps)?;
            if !cover.contains(&ball) {
                cover.push(ball);
            }
        }
        Ok(cover)
    }
}

impl Proximity for DescriptiveSpace<'_> {
    fn size(&self) -> usize {
        self.base.len()
    }

    fn id(&self, index: usize) -> &PointId {
        &self.base.point(index).id
    }

    fn neighbours(&self, index: usize) -> &PointSet {
        &self.probe.neighbours[index]
    }

    fn overlap(&self, a: &PointSet, b: &PointSet) -> PointSet {
        let union = a.union(b);
        let n = self.size();
        PointSet::from_indices(
            n,
            union.iter().filter(|&x| {
                let nx = &self.probe.neighbours[x];
                let from_b = b.intersection(nx);
                a.intersection(nx)
                    .iter()
                    .any(|ai| self.probe.neighbours[ai].intersects(&from_b))
            }),
        )
    }
}

/// Either relation of a space, chosen at run time.
#[derive(Clone, Copy, Debug)]
pub enum Relation<'a> {
    Plain(&'a FiniteProximitySpace),
    Descriptive(DescriptiveSpace<'a>),
}

impl Relation<'_> {
    pub fn mode(&self) -> Mode {
        match self {
            Relation::Plain(_) => Mode::Plain,
            Relation::Descriptive(_) => Mode::Descriptive,
        }
    }
}

impl Proximity for Relation<'_> {
    fn size(&self) -> usize {
        match self {
            Relation::Plain(s) => s.size(),
            Relation::Descriptive(d) => d.size(),
        }
    }

    fn id(&self, index: usize) -> &PointId {
        match self {
            Relation::Plain(s) => s.id(index),
            Relation::Descriptive(d) => d.id(index),
        }
    }

    fn neighbours(&self, index: usize) -> &PointSet {
        match self {
            Relation::Plain(s) => s.neighbours(index),
            Relation::Descriptive(d) => d.neighbours(index),
        }
    }

    fn overlap(&self, a: &PointSet, b: &PointSet) -> PointSet {
        match self {
            Relation::Plain(s) => s.overlap(a, b),
            Relation::Descriptive(d) => d.overlap(a, b),
        }
    }
}
