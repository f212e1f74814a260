//! JSON documents accepted by the toolkit.
//!
//! Space: `{points: [{id, coords?, features?}], rule: {kind: "relation", pairs} |
//! {kind: "metric", tau}, feature_tolerance?}`.
//! Map: `{source, target, assignment: [[x, y], ...]}` where `source` and
//! `target` are inline spaces or paths to space files.
//! Cover: `{space?, window?: [w, h], elements: [{ids?: [...], rect?: [x0, y0, x1, y1]}]}`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::descriptive::FeatureVector;
use crate::error::{Error, Result};
use crate::pixel::PixelSet;
use crate::pointset::PointSet;
use crate::proximity::{FiniteProximitySpace, Point, PointId, ProximityRule};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub id: PointId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RuleDoc {
    Relation { pairs: Vec<(PointId, PointId)> },
    Metric { tau: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<PointDoc>,
    pub rule: RuleDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feature_tolerance: Option<f64>,
}

impl SpaceDoc {
    pub fn build(&self) -> Result<FiniteProximitySpace> {
        let points = self
            .points
            .iter()
            .map(|p| Point {
                id: p.id.clone(),
                coords: p.coords,
                features: p.features.clone().map(FeatureVector::new),
            })
            .collect();
        let rule = match &self.rule {
            RuleDoc::Relation { pairs } => ProximityRule::Relation(pairs.clone()),
            RuleDoc::Metric { tau } => ProximityRule::Metric { tau: *tau },
        };
        FiniteProximitySpace::with_feature_tolerance(points, rule, self.feature_tolerance.unwrap_or(0.0))
    }

    pub fn from_space(space: &FiniteProximitySpace) -> Self {
        Self {
            points: space
                .points()
                .iter()
                .map(|p| PointDoc {
                    id: p.id.clone(),
                    coords: p.coords,
                    features: p.features.as_ref().map(|f| f.entries().to_vec()),
                })
                .collect(),
            rule: match space.rule() {
                ProximityRule::Relation(pairs) => RuleDoc::Relation { pairs: pairs.clone() },
                ProximityRule::Metric { tau } => RuleDoc::Metric { tau: *tau },
            },
            feature_tolerance: (space.feature_tolerance() != 0.0).then_some(space.feature_tolerance()),
        }
    }
}

/// A space given inline or as a path, relative to the referencing file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceSource {
    Path(PathBuf),
    Inline(SpaceDoc),
}

impl SpaceSource {
    /// Resolves the space; `load` reads a referenced file.
    pub fn resolve<F>(&self, base: &Path, load: F) -> Result<FiniteProximitySpace>
    where
        F: FnOnce(&Path) -> Result<SpaceDoc>,
    {
        match self {
            SpaceSource::Inline(doc) => doc.build(),
            SpaceSource::Path(p) => load(&base.join(p))?.build(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: SpaceSource,
    pub target: SpaceSource,
    pub assignment: Vec<(PointId, PointId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<PointId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rect: Option<[i64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[usize; 2]>,
    pub elements: Vec<ElementDoc>,
}

pub const DEFAULT_WINDOW: [usize; 2] = [64, 64];

/// Cover elements after resolution: all point sets or all rectangles.
pub enum CoverElements {
    Points(Vec<PointSet>),
    Pixels(Vec<PixelSet>),
}

impl CoverDoc {
    pub fn elements_in(&self, space: Option<&FiniteProximitySpace>) -> Result<CoverElements> {
        if self.elements.is_empty() {
            return Err(Error::EmptyCover);
        }
        let [w, h] = self.window.unwrap_or(DEFAULT_WINDOW);
        let all_ids = self.elements.iter().all(|e| e.ids.is_some() && e.rect.is_none());
        let all_rects = self.elements.iter().all(|e| e.rect.is_some() && e.ids.is_none());
        if all_ids {
            let space = space.ok_or_else(|| Error::ModeMismatch("id elements need a space".into()))?;
            let sets = self
                .elements
                .iter()
                .map(|e| space.set(e.ids.iter().flatten().cloned()))
                .collect::<Result<Vec<_>>>()?;
            Ok(CoverElements::Points(sets))
        } else if all_rects {
            let rects = self
                .elements
                .iter()
                .map(|e| {
                    let [x0, y0, x1, y1] = e.rect.unwrap();
                    PixelSet::rectangle(w, h, x0, y0, x1, y1)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CoverElements::Pixels(rects))
        } else {
            Err(Error::ModeMismatch(
                "every element needs exactly one of `ids` or `rect`, all of the same kind".into(),
            ))
        }
    }
}
