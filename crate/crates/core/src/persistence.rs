//! Shape persistence across frame sequences.
//!
//! A frame's descriptor is the Betti pair of its shape together with the
//! free-group rank of the shape's 1-skeleton. Frames are matched greedily in
//! time order; a track records every span of frames in which its descriptor
//! was seen.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycles::{validate_cycle_system, validate_multi_cycle, CycleDoc, SystemDoc};
use crate::error::{Error, Result};
use crate::jordan::grid_homology;
use crate::nerve::{free_group_presentation, Graph};
use crate::pixel::{PixelSet, PixelSetDoc};
use crate::proximity::{FiniteProximitySpace, PointId};
use crate::schema::{SpaceDoc, SpaceSource};

pub type FrameId = PointId;

pub enum Shape {
    Cycle { space: FiniteProximitySpace, cycle: CycleDoc },
    System { space: FiniteProximitySpace, system: SystemDoc },
    Pixels(PixelSet),
}

pub struct Frame {
    pub id: FrameId,
    pub time: f64,
    /// `None` when nothing was seen in the frame.
    pub shape: Option<Shape>,
    pub features: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameDescriptor {
    pub betti: (usize, usize),
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<Vec<f64>>,
}

fn invalid(id: &FrameId, reason: impl Into<String>) -> Error {
    Error::InvalidShape {
        id: id.to_string(),
        reason: reason.into(),
    }
}

/// Betti pair and rank of the graph spanned by `edges`, over its own vertices.
fn skeleton_descriptor(edges: &BTreeSet<(usize, usize)>) -> Result<((usize, usize), usize)> {
    let used: Vec<usize> = edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let local = |v: usize| used.binary_search(&v).expect("vertex is used");
    let g = Graph {
        vertices: used.len(),
        edges: edges.iter().map(|&(u, v)| (local(u), local(v))).collect(),
    };
    let rank = free_group_presentation(&g)?.rank;
    // E - V + C = rank, so C = rank + V - E.
    let components = rank + g.vertices - g.edges.len();
    Ok(((components, rank), rank))
}

pub fn frame_descriptor(frame: &Frame) -> Result<FrameDescriptor> {
    let shape = frame.shape.as_ref().ok_or_else(|| Error::EmptyShape(frame.id.to_string()))?;
    let (betti, rank) = match shape {
        Shape::Cycle { space, cycle } => {
            let (mc, diag) = validate_multi_cycle(space, cycle).map_err(|e| invalid(&frame.id, e.to_string()))?;
            if !diag.valid {
                return Err(invalid(&frame.id, diag.issues.join("; ")));
            }
            skeleton_descriptor(&mc.skeleton_edges())?
        }
        Shape::System { space, system } => {
            let (sys, report) = validate_cycle_system(space, system).map_err(|e| invalid(&frame.id, e.to_string()))?;
            if !report.valid {
                return Err(invalid(&frame.id, report.issues.join("; ")));
            }
            skeleton_descriptor(&sys.skeleton_edges())?
        }
        Shape::Pixels(px) => {
            if px.is_empty() {
                return Err(Error::EmptyShape(frame.id.to_string()));
            }
            let (b0, b1) = grid_homology(px);
            ((b0, b1), b1)
        }
    };
    Ok(FrameDescriptor {
        betti,
        rank,
        features: frame.features.clone(),
    })
}

/// Ranks within `tol`; feature summaries are compared only when a feature
/// tolerance is given and both descriptors carry one.
pub fn descriptors_near(d1: &FrameDescriptor, d2: &FrameDescriptor, tol: usize, feature_tol: Option<f64>) -> bool {
    if d1.rank.abs_diff(d2.rank) > tol {
        return false;
    }
    match (feature_tol, &d1.features, &d2.features) {
        (Some(eps), Some(a), Some(b)) => {
            a.len() == b.len() && a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt() <= eps
        }
        _ => true,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrackOptions {
    pub tolerance: usize,
    /// Most consecutive frames a track may miss and still resume.
    pub gap: usize,
    pub feature_tolerance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub birth: f64,
    pub death: f64,
    pub frames: Vec<FrameId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistenceTrack {
    pub id: usize,
    /// The descriptor that opened the track.
    pub descriptor: FrameDescriptor,
    pub intervals: Vec<Interval>,
}

impl PersistenceTrack {
    pub fn lifetime(&self) -> f64 {
        self.intervals.iter().map(|i| i.death - i.birth).sum()
    }

    pub fn birth(&self) -> f64 {
        self.intervals.first().map_or(f64::INFINITY, |i| i.birth)
    }
}

fn check_times(frames: &[Frame]) -> Result<()> {
    for f in frames {
        if !f.time.is_finite() || f.time < 0.0 {
            return Err(Error::UnsortedFrames(format!("frame `{}` has time {}", f.id, f.time)));
        }
    }
    for w in frames.windows(2) {
        if w[1].time <= w[0].time {
            return Err(Error::UnsortedFrames(format!(
                "frame `{}` at {} does not follow `{}` at {}",
                w[1].id, w[1].time, w[0].id, w[0].time
            )));
        }
    }
    Ok(())
}

/// Descriptors of every frame, `None` for absent shapes.
pub fn frame_descriptors(frames: &[Frame]) -> Result<Vec<Option<FrameDescriptor>>> {
    frames
        .par_iter()
        .map(|f| match f.shape {
            None => Ok(None),
            Some(_) => frame_descriptor(f).map(Some),
        })
        .collect()
}

pub fn track(frames: &[Frame], opts: TrackOptions) -> Result<Vec<PersistenceTrack>> {
    check_times(frames)?;
    let descriptors = frame_descriptors(frames)?;
    Ok(track_descriptors(frames, &descriptors, opts))
}

/// The matcher alone, over precomputed descriptors.
pub fn track_descriptors(frames: &[Frame], descriptors: &[Option<FrameDescriptor>], opts: TrackOptions) -> Vec<PersistenceTrack> {
    struct Open {
        track: PersistenceTrack,
        last_seen: usize,
    }
    let mut tracks: Vec<Open> = Vec::new();
    for (i, (frame, d)) in frames.iter().zip(descriptors).enumerate() {
        let Some(d) = d else { continue };
        // Tracks are kept in creation order, so the first hit is the oldest.
        let hit = tracks.iter_mut().find(|t| {
            i - t.last_seen - 1 <= opts.gap && descriptors_near(&t.track.descriptor, d, opts.tolerance, opts.feature_tolerance)
        });
        match hit {
            Some(t) => {
                if t.last_seen + 1 == i {
                    let span = t.track.intervals.last_mut().expect("open track has an interval");
                    span.death = frame.time;
                    span.frames.push(frame.id.clone());
                } else {
                    t.track.intervals.push(Interval {
                        birth: frame.time,
                        death: frame.time,
                        frames: vec![frame.id.clone()],
                    });
                }
                t.last_seen = i;
            }
            None => {
                let id = tracks.len();
                tracks.push(Open {
                    track: PersistenceTrack {
                        id,
                        descriptor: d.clone(),
                        intervals: vec![Interval {
                            birth: frame.time,
                            death: frame.time,
                            frames: vec![frame.id.clone()],
                        }],
                    },
                    last_seen: i,
                });
            }
        }
    }
    tracks.into_iter().map(|t| t.track).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackRow {
    pub track: usize,
    pub descriptor: FrameDescriptor,
    pub intervals: Vec<[f64; 2]>,
    pub lifetime: f64,
}

pub fn report(tracks: &[PersistenceTrack]) -> Vec<TrackRow> {
    tracks
        .iter()
        .map(|t| TrackRow {
            track: t.id,
            descriptor: t.descriptor.clone(),
            intervals: t.intervals.iter().map(|i| [i.birth, i.death]).collect(),
            lifetime: t.lifetime(),
        })
        .collect()
}

#[derive(Serialize)]
struct CsvRow {
    track: usize,
    beta0: usize,
    beta1: usize,
    rank: usize,
    intervals: String,
    lifetime: f64,
}

/// Columns: `track,beta0,beta1,rank,intervals,lifetime`, intervals as
/// `birth-death` spans joined by `;`.
pub fn report_csv(rows: &[TrackRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(["track", "beta0", "beta1", "rank", "intervals", "lifetime"])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    for r in rows {
        w.serialize(CsvRow {
            track: r.track,
            beta0: r.descriptor.betti.0,
            beta1: r.descriptor.betti.1,
            rank: r.descriptor.rank,
            intervals: r
                .intervals
                .iter()
                .map(|[b, d]| format!("{b}-{d}"))
                .collect::<Vec<_>>()
                .join(";"),
            lifetime: r.lifetime,
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Barcode plot: one row per track, ordered by birth then id.
pub fn barcode_svg(rows: &[TrackRow]) -> String {
    const ROW: f64 = 20.0;
    const WIDTH: f64 = 400.0;
    const LEFT: f64 = 60.0;
    let mut order: Vec<&TrackRow> = rows.iter().collect();
    order.sort_by(|a, b| {
        let birth = |r: &TrackRow| r.intervals.first().map_or(f64::INFINITY, |i| i[0]);
        birth(a).total_cmp(&birth(b)).then(a.track.cmp(&b.track))
    });
    let times = rows.iter().flat_map(|r| r.intervals.iter().flatten().copied());
    let (t0, t1) = times.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)));
    let span = if t1 > t0 { t1 - t0 } else { 1.0 };
    let x = |t: f64| LEFT + (t - t0) / span * WIDTH;
    let height = ROW * (order.len() as f64 + 1.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{height}">"#,
        LEFT + WIDTH + 20.0
    );
    for (k, r) in order.iter().enumerate() {
        let y = ROW * (k as f64 + 0.5);
        let _ = writeln!(s, r#"<g class="track" data-track="{}">"#, r.track);
        let _ = writeln!(
            s,
            r#"<text x="4" y="{}" font-size="10">#{} rank {}</text>"#,
            y + ROW / 2.0,
            r.track,
            r.descriptor.rank
        );
        for [b, d] in &r.intervals {
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="black"/>"#,
                x(*b),
                y + 2.0,
                (x(*d) - x(*b)).max(2.0),
                ROW - 4.0
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

/// JSON: `{space?, frames: [{id, time, shape?, features?}]}`. A cycle or
/// system shape without its own space uses the file-level space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramesDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSource>,
    pub frames: Vec<FrameDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub id: FrameId,
    pub time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ShapeDoc {
    Cycle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<SpaceSource>,
        cycle: CycleDoc,
    },
    System {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<SpaceSource>,
        system: SystemDoc,
    },
    Pixels {
        width: usize,
        height: usize,
        pixels: Vec<[i64; 2]>,
    },
}

impl FramesDoc {
    /// Builds frames; `base` and `load` resolve spaces given by path.
    pub fn frames<F>(&self, base: &Path, load: F) -> Result<Vec<Frame>>
    where
        F: Fn(&Path) -> Result<SpaceDoc>,
    {
        let shared = self.space.as_ref().map(|s| s.resolve(base, &load)).transpose()?;
        let pick = |own: &Option<SpaceSource>, id: &FrameId| -> Result<FiniteProximitySpace> {
            match (own, &shared) {
                (Some(s), _) => s.resolve(base, &load),
                (None, Some(s)) => Ok(s.clone()),
                (None, None) => Err(invalid(id, "no space for cycle shape")),
            }
        };
        self.frames
            .iter()
            .map(|f| {
                let shape = match &f.shape {
                    None => None,
                    Some(ShapeDoc::Cycle { space, cycle }) => Some(Shape::Cycle {
                        space: pick(space, &f.id)?,
                        cycle: cycle.clone(),
                    }),
                    Some(ShapeDoc::System { space, system }) => Some(Shape::System {
                        space: pick(space, &f.id)?,
                        system: system.clone(),
                    }),
                    Some(ShapeDoc::Pixels { width, height, pixels }) => {
                        let doc = PixelSetDoc {
                            width: *width,
                            height: *height,
                            pixels: pixels.clone(),
                        };
                        Some(Shape::Pixels(
                            PixelSet::try_from(&doc).map_err(|e| invalid(&f.id, e.to_string()))?,
                        ))
                    }
                };
                Ok(Frame {
                    id: f.id.clone(),
                    time: f.time,
                    shape,
                    features: f.features.clone(),
                })
            })
            .collect()
    }
}

/// The two-frame butterfly example shipped with the crate.
pub const BUTTERFLY_JSON: &str = include_str!("../data/butterfly.json");

pub fn butterfly_frames() -> Result<Vec<Frame>> {
    let doc: FramesDoc = serde_json::from_str(BUTTERFLY_JSON).map_err(|e| Error::Io(e.to_string()))?;
    doc.frames(Path::new("."), |p| Err(Error::Io(format!("{}: no file loader", p.display()))))
}
