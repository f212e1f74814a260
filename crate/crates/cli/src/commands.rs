//! Subcommand bodies. Each returns the text for stdout and whether the check
//! passed.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::sync::Arc;

use prox_core::alexandrov::{alexandrov_quadruple_check, unit_circle_quadruple, AlexandrovQuadruple};
use prox_core::axioms::{check_axioms, AxiomReport, Flavor};
use prox_core::cycles::{validate_cycle_system, validate_multi_cycle};
use prox_core::descriptive::Mode;
use prox_core::homotopy::{verify_homotopy, HomotopyDoc};
use prox_core::jordan::{jordan_partition, partition_curve, partition_svg, JordanReport, Polyline};
use prox_core::maps::{check_proximal_continuity, glue, FiniteMap};
use prox_core::nerve::{
    betti, build_nerve, check_good_cover, free_group_presentation, nerve_vs_union_check, Cover, GoodCoverMode,
    Graph, NerveComplex,
};
use prox_core::persistence::{barcode_svg, report, report_csv, track, FramesDoc, ShapeDoc, TrackOptions, TrackRow};
use prox_core::pixel::PixelSet;
use prox_core::proximity::{FiniteProximitySpace, PointId, Proximity};
use prox_core::schema::{CoverDoc, CoverElements, MapDoc, SpaceDoc};
use prox_core::PointSet;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::input::{
    base_dir, load_json, load_space, resolve_space, space_loader, write_file, Context, Input, InputError,
};
use crate::{Cli, Command, CoverMode};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

fn emit<T: Serialize>(json: bool, value: &T, text: String, passed: bool) -> Input<Output> {
    let text = if json {
        let mut s = serde_json::to_string_pretty(value).map_err(|e| InputError::new(e.to_string()))?;
        s.push('\n');
        s
    } else {
        text
    };
    Ok(Output { text, passed })
}

fn mode_of(descriptive: bool) -> Mode {
    if descriptive {
        Mode::Descriptive
    } else {
        Mode::Plain
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn ids(space: &FiniteProximitySpace, set: &PointSet) -> Vec<PointId> {
    set.iter().map(|i| space.id(i).clone()).collect()
}

fn join(ids: &[PointId]) -> String {
    ids.iter().map(PointId::as_str).collect::<Vec<_>>().join(", ")
}

fn set_from(space: &FiniteProximitySpace, list: &[String], file: &Path) -> Input<PointSet> {
    space.set(list.iter().map(|s| s.trim().to_owned())).ctx(file, "--set")
}

pub fn run(cli: &Cli) -> Input<Output> {
    let json = cli.json;
    match &cli.command {
        Command::CheckAxioms {
            space,
            mode,
            tau,
            feature_tolerance,
            budget,
        } => check_axioms_cmd(json, space, mode.descriptive, *tau, *feature_tolerance, *budget),
        Command::Closure { space, set, mode } => closure_cmd(json, space, set, mode.descriptive),
        Command::Dintersect {
            space,
            sets,
            feature_tolerance,
        } => dintersect_cmd(json, space, sets, *feature_tolerance),
        Command::Continuity { map, mode } => continuity_cmd(json, map, mode.descriptive),
        Command::Glue { f, g, space, mode, out } => glue_cmd(json, f, g, space, mode.descriptive, out.as_deref()),
        Command::Homotopy { f, g, witness, mode } => homotopy_cmd(json, f, g, witness, mode.descriptive),
        Command::Cycles { shape, space, window } => cycles_cmd(json, shape, space.as_deref(), *window),
        Command::Nerve { cover, mode } => nerve_cmd(json, cover, mode.descriptive),
        Command::Betti { complex } => betti_cmd(json, complex),
        Command::Goodcover { cover, mode, min_family } => goodcover_cmd(json, cover, *mode, *min_family),
        Command::Jordan {
            curve,
            window,
            emit_svg,
            scale,
        } => jordan_cmd(json, curve, *window, emit_svg.as_deref(), *scale),
        Command::Alexandrov { quadruple, kappa } => alexandrov_cmd(json, quadruple.as_deref(), *kappa),
        Command::Track {
            frames,
            tolerance,
            gap,
            feature_tolerance,
            report,
            csv,
            barcode,
        } => track_cmd(
            json,
            frames,
            TrackOptions {
                tolerance: *tolerance,
                gap: *gap,
                feature_tolerance: *feature_tolerance,
            },
            report.as_deref(),
            csv.as_deref(),
            barcode.as_deref(),
        ),
    }
}

fn check_axioms_cmd(
    json: bool,
    path: &Path,
    descriptive: bool,
    tau: Option<f64>,
    feature_tolerance: Option<f64>,
    budget: usize,
) -> Input<Output> {
    let mut doc: SpaceDoc = load_json(path)?;
    if let Some(t) = tau {
        match &mut doc.rule {
            prox_core::schema::RuleDoc::Metric { tau } => *tau = t,
            prox_core::schema::RuleDoc::Relation { .. } => {
                return Err(InputError::new("--tau needs a metric rule").in_file(path).at("rule"));
            }
        }
    }
    if feature_tolerance.is_some() {
        doc.feature_tolerance = feature_tolerance;
    }
    let space = doc.build().ctx(path, "points")?;
    let report: AxiomReport = if descriptive {
        check_axioms(&space.descriptive().ctx(path, "points")?, Flavor::Descriptive, budget)
    } else {
        check_axioms(&space, Flavor::Cech, budget)
    };
    let mut text = String::new();
    for a in report.axioms.iter().chain([&report.symmetry_condition]) {
        let _ = writeln!(
            text,
            "{:<10} {}  {:?} {} cases  {}",
            a.name,
            verdict(a.passed),
            a.coverage,
            a.cases,
            a.statement
        );
        if let Some(w) = &a.witness {
            let _ = writeln!(text, "           witness: {}", serde_json::to_string(w).unwrap_or_default());
        }
    }
    let passed = report.all_passed();
    let _ = writeln!(
        text,
        "{} of {} axioms pass",
        report.axioms.iter().filter(|a| a.passed).count(),
        report.axioms.len()
    );
    emit(json, &report, text, passed)
}

fn closure_cmd(json: bool, path: &Path, list: &[String], descriptive: bool) -> Input<Output> {
    let space = load_space(path)?;
    let set = set_from(&space, list, path)?;
    let closure = if descriptive {
        space.descriptive().ctx(path, "points")?.descriptive_closure(&set).ctx(path, "--set")?
    } else {
        space.closure(&set).ctx(path, "--set")?
    };
    let closed = closure == set;
    let (set_ids, closure_ids) = (ids(&space, &set), ids(&space, &closure));
    let text = format!(
        "set:     {{{}}}\nclosure: {{{}}}\nclosed:  {closed}\n",
        join(&set_ids),
        join(&closure_ids)
    );
    let value = json!({ "mode": mode_of(descriptive), "set": set_ids, "closure": closure_ids, "closed": closed });
    emit(json, &value, text, true)
}

fn dintersect_cmd(json: bool, path: &Path, raw: &[String], feature_tolerance: Option<f64>) -> Input<Output> {
    let mut doc: SpaceDoc = load_json(path)?;
    if feature_tolerance.is_some() {
        doc.feature_tolerance = feature_tolerance;
    }
    let space = doc.build().ctx(path, "points")?;
    if raw.len() < 2 {
        return Err(InputError::new("give at least two --set options").at("--set"));
    }
    let sets = raw
        .iter()
        .map(|s| set_from(&space, &s.split(',').map(str::to_owned).collect::<Vec<_>>(), path))
        .collect::<Input<Vec<_>>>()?;
    let d = space.descriptive().ctx(path, "points")?;
    let meet = d.descriptive_intersection_of(&sets).ctx(path, "--set")?;
    let meet_ids = ids(&space, &meet);
    let text = format!(
        "descriptive intersection: {{{}}}\nnear: {}\n",
        join(&meet_ids),
        !meet.is_empty()
    );
    let value = json!({
        "sets": sets.iter().map(|s| ids(&space, s)).collect::<Vec<_>>(),
        "intersection": meet_ids,
        "near": !meet.is_empty(),
    });
    emit(json, &value, text, true)
}

fn load_map(path: &Path) -> Input<FiniteMap> {
    let doc: MapDoc = load_json(path)?;
    let source = Arc::new(resolve_space(&doc.source, path, "source")?);
    let target = Arc::new(resolve_space(&doc.target, path, "target")?);
    FiniteMap::from_pairs(source, target, &doc.assignment).ctx(path, "assignment")
}

fn continuity_cmd(json: bool, path: &Path, descriptive: bool) -> Input<Output> {
    let f = load_map(path)?;
    let r = check_proximal_continuity(&f, mode_of(descriptive)).ctx(path, "source")?;
    let mut text = format!("{:?} continuity: {}\n", r.mode, verdict(r.continuous));
    if let Some((x, y)) = &r.witness {
        let _ = writeln!(text, "witness: `{x}` and `{y}` are related but their images are not");
    }
    emit(json, &r, text, r.continuous)
}

#[derive(Serialize)]
struct GlueReport {
    mode: Mode,
    glued: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    continuous: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    assignment: Vec<(PointId, PointId)>,
}

fn glue_cmd(json: bool, f: &Path, g: &Path, x: &Path, descriptive: bool, out: Option<&Path>) -> Input<Output> {
    let mode = mode_of(descriptive);
    let (fm, gm) = (load_map(f)?, load_map(g)?);
    let x = Arc::new(load_space(x)?);
    let report = match glue(&fm, &gm, x.clone(), mode) {
        Ok(h) => {
            let c = check_proximal_continuity(&h, mode).ctx(f, "source")?;
            GlueReport {
                mode,
                glued: true,
                reason: None,
                continuous: Some(c.continuous),
                assignment: h.pairs(),
            }
        }
        Err(prox_core::Error::Gluing(reason)) => GlueReport {
            mode,
            glued: false,
            reason: Some(reason),
            continuous: None,
            assignment: Vec::new(),
        },
        Err(e) => return Err(InputError::from(e).in_file(f)),
    };
    if let (Some(out), true) = (out, report.glued) {
        let doc = MapDoc {
            source: prox_core::schema::SpaceSource::Inline(SpaceDoc::from_space(&x)),
            target: prox_core::schema::SpaceSource::Inline(SpaceDoc::from_space(fm.target())),
            assignment: report.assignment.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| InputError::new(e.to_string()))?;
        s.push('\n');
        write_file(out, s.as_bytes())?;
    }
    let passed = report.continuous == Some(true);
    let text = match (&report.reason, report.continuous) {
        (Some(r), _) => format!("gluing failed: {r}\n"),
        (None, c) => format!(
            "glued map: {}\n{:?} continuity: {}\n",
            report
                .assignment
                .iter()
                .map(|(a, b)| format!("{a}->{b}"))
                .collect::<Vec<_>>()
                .join(" "),
            mode,
            verdict(c == Some(true))
        ),
    };
    emit(json, &report, text, passed)
}

fn homotopy_cmd(json: bool, f: &Path, g: &Path, witness: &Path, descriptive: bool) -> Input<Output> {
    let (fm, gm) = (load_map(f)?, load_map(g)?);
    let doc: HomotopyDoc = load_json(witness)?;
    let h = doc.to_witness(fm.source(), fm.target()).ctx(witness, "table")?;
    let r = verify_homotopy(&h, &fm, &gm, mode_of(descriptive)).ctx(g, "source")?;
    let mut text = format!("{:?} homotopy on T_{}: {}\n", r.mode, r.steps, verdict(r.valid));
    if let Some(fail) = &r.failure {
        let _ = writeln!(text, "failure: {}", serde_json::to_string(fail).unwrap_or_default());
    }
    emit(json, &r, text, r.valid)
}

fn cycles_cmd(json: bool, path: &Path, space: Option<&Path>, window: Option<(usize, usize)>) -> Input<Output> {
    let shape: ShapeDoc = load_json(path)?;
    let pick = |own: &Option<prox_core::schema::SpaceSource>| -> Input<FiniteProximitySpace> {
        match (own, space) {
            (Some(s), _) => resolve_space(s, path, "space"),
            (None, Some(p)) => load_space(p),
            (None, None) => Err(InputError::new("no space: add one to the shape or pass --space")
                .in_file(path)
                .at("space")),
        }
    };
    match &shape {
        ShapeDoc::Cycle { space: own, cycle } => {
            let space = pick(own)?;
            let (_, d) = validate_multi_cycle(&space, cycle).ctx(path, "cycle")?;
            let mut text = format!(
                "cycle: {}\nsimple {}  closed {}  paths proximal {}  endpoints {}  interior pixels {}\n",
                verdict(d.valid),
                d.simple,
                d.closed,
                d.paths_proximal,
                d.endpoints_consistent,
                d.interior_pixels
            );
            for i in &d.issues {
                let _ = writeln!(text, "  {i}");
            }
            emit(json, &d, text, d.valid)
        }
        ShapeDoc::System { space: own, system } => {
            let space = pick(own)?;
            let (sys, r) = validate_cycle_system(&space, system).ctx(path, "system")?;
            let boundary = match window {
                Some((w, h)) => {
                    let curves = sys.curves(&space).ctx(path, "space")?;
                    Some(prox_core::jordan::system_boundary_check(&curves, w, h).ctx(path, "space")?)
                }
                None => None,
            };
            let mut text = format!(
                "system ({:?}): {}\nmembers valid: {}\nclasps: {}\n",
                r.mode,
                verdict(r.valid),
                r.members.iter().map(|m| verdict(m.valid)).collect::<Vec<_>>().join(" "),
                join(&r.clasps)
            );
            for i in &r.issues {
                let _ = writeln!(text, "  {i}");
            }
            if let Some(b) = &boundary {
                let _ = writeln!(
                    text,
                    "boundary: {}  interior regions {}  exterior regions {}  common boundary {}  non-simple points {}",
                    verdict(b.passed()),
                    b.interior_regions,
                    b.exterior_regions,
                    b.common_boundary,
                    b.non_simple_points.len()
                );
            }
            let passed = r.valid && boundary.as_ref().is_none_or(|b| b.passed());
            let value = json!({ "system": r, "boundary": boundary });
            emit(json, &value, text, passed)
        }
        ShapeDoc::Pixels { .. } => Err(InputError::new("pixel shapes are not cycles; use `jordan`")
            .in_file(path)
            .at("kind")),
    }
}

enum LoadedCover {
    Points(FiniteProximitySpace, Vec<PointSet>),
    Pixels(Vec<PixelSet>),
}

fn load_cover(path: &Path) -> Input<LoadedCover> {
    let doc: CoverDoc = load_json(path)?;
    let space = doc.space.as_ref().map(|s| resolve_space(s, path, "space")).transpose()?;
    match doc.elements_in(space.as_ref()).ctx(path, "elements")? {
        CoverElements::Points(sets) => Ok(LoadedCover::Points(space.expect("id elements resolved a space"), sets)),
        CoverElements::Pixels(px) => Ok(LoadedCover::Pixels(px)),
    }
}

fn complex_text(c: &NerveComplex, b: (usize, usize)) -> String {
    let simplices = c
        .simplices
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ");
    format!("nerve: {simplices}\nbetti: b0 = {}, b1 = {}\n", b.0, b.1)
}

fn nerve_cmd(json: bool, path: &Path, descriptive: bool) -> Input<Output> {
    let mode = mode_of(descriptive);
    match load_cover(path)? {
        LoadedCover::Points(space, sets) => {
            let cover = Cover::points(&space, sets).ctx(path, "elements")?;
            let c = build_nerve(&cover, mode).ctx(path, "elements")?;
            let b = betti(&c).ctx(path, "elements")?;
            let value = json!({ "mode": mode, "nerve": c, "betti": b });
            emit(json, &value, complex_text(&c, b), true)
        }
        LoadedCover::Pixels(px) => {
            if descriptive {
                return Err(InputError::new("rectangle covers have no descriptions").at("--descriptive"));
            }
            let cover = Cover::pixels(px.clone()).ctx(path, "elements")?;
            let c = build_nerve(&cover, Mode::Plain).ctx(path, "elements")?;
            let b = betti(&c).ctx(path, "elements")?;
            let r = nerve_vs_union_check(&px).ctx(path, "elements")?;
            let mut text = complex_text(&c, b);
            let _ = writeln!(
                text,
                "union:  b0 = {}, b1 = {}\nnerve matches union: {}",
                r.union.0,
                r.union.1,
                verdict(r.equal)
            );
            if !r.touching.is_empty() {
                let _ = writeln!(text, "touching but disjoint families: {:?}", r.touching);
            }
            let value = json!({ "mode": mode, "nerve": c, "betti": b, "union_check": r });
            emit(json, &value, text, r.equal)
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexInput {
    Complex { vertices: usize, simplices: Vec<Vec<usize>> },
    Graph(Graph),
}

fn betti_cmd(json: bool, path: &Path) -> Input<Output> {
    let input: ComplexInput = load_json(path)?;
    let (c, g) = match input {
        ComplexInput::Complex { vertices, simplices } => {
            let c = NerveComplex::new(vertices, simplices).ctx(path, "simplices")?;
            let g = c.skeleton();
            (Some(c), g)
        }
        ComplexInput::Graph(g) => (None, g),
    };
    let fg = free_group_presentation(&g).ctx(path, "edges")?;
    let b = match &c {
        Some(c) => betti(c).ctx(path, "simplices")?,
        None => (fg.rank + g.vertices - g.edges.len(), fg.rank),
    };
    let text = format!(
        "betti: b0 = {}, b1 = {}\n1-skeleton free group rank: {}\n",
        b.0, b.1, fg.rank
    );
    let value = json!({ "betti": b, "free_group": fg });
    emit(json, &value, text, true)
}

fn goodcover_cmd(json: bool, path: &Path, mode: CoverMode, min_family: usize) -> Input<Output> {
    let mode = match mode {
        CoverMode::Topological => GoodCoverMode::Topological,
        CoverMode::Descriptive => GoodCoverMode::Descriptive,
        CoverMode::Degenerate => GoodCoverMode::Degenerate,
    };
    let loaded = load_cover(path)?;
    let cover = match &loaded {
        LoadedCover::Points(space, sets) => Cover::points(space, sets.clone()),
        LoadedCover::Pixels(px) => Cover::pixels(px.clone()),
    }
    .ctx(path, "elements")?;
    let r = check_good_cover(&cover, mode, min_family).ctx(path, "elements")?;
    let mut text = format!("{:?} good cover: {}\n", r.mode, verdict(r.passed));
    for i in &r.intersections {
        let _ = writeln!(
            text,
            "  {:?} size {}: {}  {}",
            i.members,
            i.size,
            verdict(i.contractible),
            i.detail
        );
    }
    emit(json, &r, text, r.passed)
}

#[derive(Serialize)]
struct JordanSummary {
    boundary: usize,
    interior: usize,
    exterior: usize,
    interior_components: usize,
    flags: prox_core::jordan::JordanFlags,
}

fn jordan_cmd(json: bool, path: &Path, window: (usize, usize), svg: Option<&Path>, scale: usize) -> Input<Output> {
    let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
    let r: JordanReport = if matches!(ext.as_deref(), Some("pbm" | "pgm" | "pnm")) {
        let file = File::open(path).map_err(|e| InputError::new(e.to_string()).in_file(path))?;
        let curve = PixelSet::read_pnm(BufReader::new(file)).ctx(path, "image")?;
        partition_curve(&curve)
    } else {
        let poly: Polyline = load_json(path)?;
        jordan_partition(&poly, window.0, window.1).ctx(path, "vertices")?
    };
    if let Some(out) = svg {
        write_file(out, partition_svg(&r.partition, scale.max(1)).as_bytes())?;
    }
    let s = JordanSummary {
        boundary: r.partition.boundary.len(),
        interior: r.partition.interior.len(),
        exterior: r.partition.exterior.len(),
        interior_components: r.interior_components,
        flags: r.flags,
    };
    let text = format!(
        "boundary {} px, interior {} px in {} component(s), exterior {} px\n\
         exactly two regions: {}\ncommon boundary: {}\nnonvoid interior: {}\n",
        s.boundary,
        s.interior,
        s.interior_components,
        s.exterior,
        verdict(s.flags.exactly_two_regions),
        verdict(s.flags.common_boundary),
        verdict(s.flags.nonvoid_interior)
    );
    emit(json, &s, text, r.flags.all())
}

fn alexandrov_cmd(json: bool, path: Option<&Path>, kappa: Option<f64>) -> Input<Output> {
    let mut q: AlexandrovQuadruple = match path {
        Some(p) => load_json(p)?,
        None => unit_circle_quadruple(0.0),
    };
    if let Some(k) = kappa {
        q.kappa = k;
    }
    let field_file = path.unwrap_or(Path::new("<unit circle>"));
    let r = alexandrov_quadruple_check(&q).ctx(field_file, "points")?;
    let mut text = format!(
        "kappa {}\nangles: {:.12} {:.12} {:.12}\nangle sum: {:.12} (2pi = {:.12}) {}\neuclidean sum: {:.12}\n",
        r.kappa,
        r.angles[0],
        r.angles[1],
        r.angles[2],
        r.angle_sum,
        std::f64::consts::TAU,
        verdict(r.within_two_pi),
        r.euclidean_sum
    );
    if let Some(p) = r.perimeter_condition {
        let _ = writeln!(text, "perimeter condition: {p}");
    }
    emit(json, &r, text, r.within_two_pi)
}

fn track_cmd(
    json: bool,
    path: &Path,
    opts: TrackOptions,
    report_out: Option<&Path>,
    csv_out: Option<&Path>,
    barcode_out: Option<&Path>,
) -> Input<Output> {
    let doc: FramesDoc = load_json(path)?;
    let frames = doc.frames(&base_dir(path), space_loader).ctx(path, "frames")?;
    let tracks = track(&frames, opts).ctx(path, "frames")?;
    let rows = report(&tracks);
    let table = rows_json(&rows)?;
    if let Some(out) = report_out {
        write_file(out, table.as_bytes())?;
    }
    if let Some(out) = csv_out {
        write_file(out, report_csv(&rows).ctx(path, "frames")?.as_bytes())?;
    }
    if let Some(out) = barcode_out {
        write_file(out, barcode_svg(&rows).as_bytes())?;
    }
    let mut text = format!("{} track(s)\n", rows.len());
    for r in &rows {
        let spans = r
            .intervals
            .iter()
            .map(|[b, d]| format!("[{b}, {d}]"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            text,
            "  #{} betti ({}, {}) rank {}  {}  lifetime {} s",
            r.track, r.descriptor.betti.0, r.descriptor.betti.1, r.descriptor.rank, spans, r.lifetime
        );
    }
    let text = if json { table } else { text };
    Ok(Output { text, passed: true })
}

fn rows_json(rows: &[TrackRow]) -> Input<String> {
    let mut s = serde_json::to_string_pretty(&json!({ "tracks": rows })).map_err(|e| InputError::new(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
