//! Finite proximity spaces.
//!
//! A space is a finite point set together with a point-level relation. Nearness of
//! subsets is the pointwise lift of that relation: `A near B` iff some `a ∈ A` is
//! related to some `b ∈ B`. Every rule is reflexive, so overlapping sets are near.
//! The metric rule relates two points when their Euclidean distance is at most the
//! tolerance `tau`, which makes the lifted relation coincide with `D(A, B) <= tau`
//! for the gap function `D`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::descriptive::{FeatureVector, ProbeFunction};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Opaque point identifier. JSON accepts strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PointId(String);

impl PointId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PointId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for PointId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl<'de> Deserialize<'de> for PointId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        Ok(match Raw::deserialize(deserializer)? {
            Raw::Str(s) => PointId(s),
            Raw::Int(i) => PointId(i.to_string()),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub id: PointId,
    pub coords: Option<[f64; 2]>,
    pub features: Option<FeatureVector>,
}

impl Point {
    pub fn new(id: impl Into<PointId>) -> Self {
        Self {
            id: id.into(),
            coords: None,
            features: None,
        }
    }

    pub fn at(id: impl Into<PointId>, x: f64, y: f64) -> Self {
        Self {
            id: id.into(),
            coords: Some([x, y]),
            features: None,
        }
    }

    pub fn with_features(mut self, entries: Vec<f64>) -> Self {
        self.features = Some(FeatureVector::new(entries));
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProximityRule {
    /// Explicit related pairs. Stored as given; symmetry is checked by the axiom
    /// suite rather than imposed.
    Relation(Vec<(PointId, PointId)>),
    /// Points are related when their Euclidean distance is at most `tau`.
    Metric { tau: f64 },
}

/// `D(A, B)`: a nonnegative real, or infinity when either set is empty.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum ExtendedDistance {
    Finite(f64),
    Infinite,
}

impl ExtendedDistance {
    pub fn value(self) -> f64 {
        match self {
            ExtendedDistance::Finite(v) => v,
            ExtendedDistance::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedDistance::Infinite)
    }
}

pub fn euclidean(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Gap between two coordinate sets: the minimum pairwise Euclidean distance.
pub fn hausdorff_gap_coords(a: &[[f64; 2]], b: &[[f64; 2]]) -> ExtendedDistance {
    if a.is_empty() || b.is_empty() {
        return ExtendedDistance::Infinite;
    }
    let mut best = f64::INFINITY;
    for &p in a {
        for &q in b {
            best = best.min(euclidean(p, q));
        }
    }
    ExtendedDistance::Finite(best)
}

/// Behaviour shared by every finite nearness relation in the crate: the plain
/// relation of a [`FiniteProximitySpace`] and the descriptive relation of a
/// [`crate::descriptive::DescriptiveSpace`].
///
/// Set-level methods assume their arguments belong to the space; use the
/// checked wrappers on the concrete types for untrusted input.
pub trait Proximity {
    fn size(&self) -> usize;

    fn id(&self, index: usize) -> &PointId;

    /// Points related to `index` at the point level (always contains `index`).
    fn neighbours(&self, index: usize) -> &PointSet;

    fn related(&self, i: usize, j: usize) -> bool {
        self.neighbours(i).contains(j)
    }

    fn is_near(&self, a: &PointSet, b: &PointSet) -> bool {
        a.iter().any(|i| self.neighbours(i).intersects(b))
    }

    /// The set whose nonemptiness forces nearness: `A ∩ B` for plain spaces,
    /// the descriptive intersection for descriptive ones.
    fn overlap(&self, a: &PointSet, b: &PointSet) -> PointSet;

    fn closure_of(&self, a: &PointSet) -> PointSet {
        let n = self.size();
        PointSet::from_indices(n, (0..n).filter(|&x| self.neighbours(x).intersects(a)))
    }

    fn ids_of(&self, set: &PointSet) -> Vec<PointId> {
        set.iter().map(|i| self.id(i).clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteProximitySpace {
    points: Vec<Point>,
    index: BTreeMap<PointId, usize>,
    rule: ProximityRule,
    neighbours: Vec<PointSet>,
    feature_tolerance: f64,
    probe: Option<ProbeFunction>,
    missing_features: Option<PointId>,
}

impl FiniteProximitySpace {
    pub fn new(points: Vec<Point>, rule: ProximityRule) -> Result<Self> {
        Self::with_feature_tolerance(points, rule, 0.0)
    }

    pub fn with_feature_tolerance(
        points: Vec<Point>,
        rule: ProximityRule,
        feature_tolerance: f64,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut index = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(p.id.to_string()));
            }
            if let Some([x, y]) = p.coords {
                if !x.is_finite() || !y.is_finite() {
                    return Err(Error::NonFinite(format!("coordinates of `{}`", p.id)));
                }
            }
        }
        let n = points.len();
        let mut neighbours: Vec<PointSet> = (0..n).map(|i| PointSet::from_indices(n, [i])).collect();
        match &rule {
            ProximityRule::Relation(pairs) => {
                for (a, b) in pairs {
                    let ia = *index.get(a).ok_or_else(|| Error::ForeignPoint(a.to_string()))?;
                    let ib = *index.get(b).ok_or_else(|| Error::ForeignPoint(b.to_string()))?;
                    neighbours[ia].insert(ib);
                }
            }
            ProximityRule::Metric { tau } => {
                if !tau.is_finite() {
                    return Err(Error::NonFinite("tau".into()));
                }
                if *tau < 0.0 {
                    return Err(Error::Negative {
                        name: "tau",
                        value: *tau,
                    });
                }
                let coords = points
                    .iter()
                    .map(|p| p.coords.ok_or_else(|| Error::MissingCoordinates(p.id.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                for i in 0..n {
                    for j in 0..n {
                        if euclidean(coords[i], coords[j]) <= *tau {
                            neighbours[i].insert(j);
                        }
                    }
                }
            }
        }

        let (probe, missing_features) = match points.iter().find(|p| p.features.is_none()) {
            Some(p) => (None, Some(p.id.clone())),
            None => {
                let features: Vec<FeatureVector> =
                    points.iter().map(|p| p.features.clone().unwrap()).collect();
                let ids: Vec<PointId> = points.iter().map(|p| p.id.clone()).collect();
                (
                    Some(ProbeFunction::new(&ids, features, feature_tolerance)?),
                    None,
                )
            }
        };

        Ok(Self {
            points,
            index,
            rule,
            neighbours,
            feature_tolerance,
            probe,
            missing_features,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub fn rule(&self) -> &ProximityRule {
        &self.rule
    }

    pub fn feature_tolerance(&self) -> f64 {
        self.feature_tolerance
    }

    pub fn probe(&self) -> Option<&ProbeFunction> {
        self.probe.as_ref()
    }

    pub(crate) fn missing_features(&self) -> Option<&PointId> {
        self.missing_features.as_ref()
    }

    pub fn index_of(&self, id: &PointId) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::ForeignPoint(id.to_string()))
    }

    /// Resolves ids to a subset of this space.
    pub fn set<I, T>(&self, ids: I) -> Result<PointSet>
    where
        I: IntoIterator<Item = T>,
        T: Into<PointId>,
    {
        let mut set = PointSet::empty(self.len());
        for id in ids {
            set.insert(self.index_of(&id.into())?);
        }
        Ok(set)
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn check_members(&self, set: &PointSet) -> Result<()> {
        match set.iter().find(|&i| i >= self.len()) {
            Some(i) => Err(Error::ForeignPoint(format!("#{i}"))),
            None => Ok(()),
        }
    }

    pub fn coords_of(&self, set: &PointSet) -> Result<Vec<[f64; 2]>> {
        self.check_members(set)?;
        set.iter()
            .map(|i| {
                self.points[i]
                    .coords
                    .ok_or_else(|| Error::MissingCoordinates(self.points[i].id.to_string()))
            })
            .collect()
    }

    pub fn hausdorff_gap(&self, a: &PointSet, b: &PointSet) -> Result<ExtendedDistance> {
        let ca = self.coords_of(a)?;
        let cb = self.coords_of(b)?;
        Ok(hausdorff_gap_coords(&ca, &cb))
    }

    pub fn near(&self, a: &PointSet, b: &PointSet) -> Result<bool> {
        self.check_members(a)?;
        self.check_members(b)?;
        Ok(self.is_near(a, b))
    }

    /// `{ x : {x} near A }`. Not idempotent in general: a Čech closure only
    /// stabilises when the point relation is transitive.
    pub fn closure(&self, a: &PointSet) -> Result<PointSet> {
        self.check_members(a)?;
        Ok(self.closure_of(a))
    }

    pub fn is_closed(&self, a: &PointSet) -> Result<bool> {
        Ok(self.closure(a)? == *a)
    }

    /// The subspace on `set`, with the rule restricted and point order preserved.
    pub fn subspace(&self, set: &PointSet) -> Result<Self> {
        self.check_members(set)?;
        let points: Vec<Point> = set.iter().map(|i| self.points[i].clone()).collect();
        let rule = match &self.rule {
            ProximityRule::Relation(pairs) => ProximityRule::Relation(
                pairs
                    .iter()
                    .filter(|(a, b)| {
                        set.contains(self.index[a]) && set.contains(self.index[b])
                    })
                    .cloned()
                    .collect(),
            ),
            ProximityRule::Metric { tau } => ProximityRule::Metric { tau: *tau },
        };
        Self::with_feature_tolerance(points, rule, self.feature_tolerance)
    }
}

impl Proximity for FiniteProximitySpace {
    fn size(&self) -> usize {
        self.points.len()
    }

    fn id(&self, index: usize) -> &PointId {
        &self.points[index].id
    }

    fn neighbours(&self, index: usize) -> &PointSet {
        &self.neighbours[index]
    }

    fn overlap(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.intersection(b)
    }
}
