mod common;

use std::sync::Arc;

use proptest::prelude::*;
use prox_core::cycles::{validate_cycle_system, validate_hcyc, validate_multi_cycle, CycleDoc};
use prox_core::descriptive::Mode;
use prox_core::homotopy::{concatenate_homotopies, Certificate, contractibility, verify_homotopy, ContractMode, HomotopyWitness, Subject};
use prox_core::jordan::{closure_boundary_interior, grid_homology, jordan_partition, Polyline};
use prox_core::maps::{check_proximal_continuity, classify_constant, glue, is_degenerate, ConstantKind, FiniteMap};
use prox_core::nerve::{
    betti, build_nerve, check_good_cover, free_group_presentation_in_order, Cover, GoodCoverMode, Graph,
    NerveComplex,
};
use prox_core::persistence::{descriptors_near, track_descriptors, Frame, FrameDescriptor, TrackOptions};
use prox_core::pixel::PixelSet;
use prox_core::proximity::{ExtendedDistance, FiniteProximitySpace, Point, Proximity, ProximityRule};
use prox_core::PointSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn subset(r: &mut ChaCha8Rng, n: usize) -> PointSet {
    PointSet::from_indices(n, (0..n).filter(|_| r.random_bool(0.4)))
}

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

// Proximity core.

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn near_is_symmetric(seed in any::<u64>(), n in 1usize..=10) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let (a, b) = (subset(&mut r, n), subset(&mut r, n));
        prop_assert_eq!(s.near(&a, &b).unwrap(), s.near(&b, &a).unwrap());
    }

    #[test]
    fn near_satisfies_the_union_law(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let (a, b, c) = (subset(&mut r, n), subset(&mut r, n), subset(&mut r, n));
        if s.near(&a, &b.union(&c)).unwrap() {
            prop_assert!(s.near(&a, &b).unwrap() || s.near(&a, &c).unwrap());
        }
    }

    #[test]
    fn near_matches_all_pairs_oracle(seed in any::<u64>(), n in 1usize..=12) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let ProximityRule::Metric { tau } = *s.rule() else { unreachable!() };
        let (a, b) = (subset(&mut r, n), subset(&mut r, n));
        let coords = |i: usize| s.point(i).coords.unwrap();
        let oracle = a.iter().any(|i| {
            b.iter().any(|j| {
                let (p, q) = (coords(i), coords(j));
                ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt() <= tau
            })
        });
        prop_assert_eq!(s.near(&a, &b).unwrap(), oracle);
    }

    #[test]
    fn gap_vanishes_on_overlap(seed in any::<u64>(), n in 1usize..=10) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let (a, b) = (subset(&mut r, n), subset(&mut r, n));
        if a.intersects(&b) {
            prop_assert_eq!(s.hausdorff_gap(&a, &b).unwrap(), ExtendedDistance::Finite(0.0));
        }
    }

    /// Idempotence holds when the point relation is transitive; for τ > 0 on
    /// scattered points it does not (see `closure_is_not_idempotent_in_general`).
    #[test]
    fn closure_is_idempotent_for_transitive_relations(seed in any::<u64>(), n in 1usize..=10) {
        let mut r = rng(seed);
        let classes: Vec<usize> = (0..n).map(|_| r.random_range(0..3)).collect();
        let pairs = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| classes[i] == classes[j])
            .map(|(i, j)| (format!("p{i}").into(), format!("p{j}").into()))
            .collect();
        let s = FiniteProximitySpace::new((0..n).map(|i| Point::new(format!("p{i}"))).collect(), ProximityRule::Relation(pairs)).unwrap();
        let a = subset(&mut r, n);
        let once = s.closure(&a).unwrap();
        prop_assert_eq!(s.closure(&once).unwrap(), once.clone());
        prop_assert!(a.is_subset(&once));

        let t = common::metric_space(&mut r, n);
        let ProximityRule::Metric { tau } = *t.rule() else { unreachable!() };
        let once = t.closure(&a).unwrap();
        let coords = |i: usize| t.point(i).coords.unwrap();
        let oracle = PointSet::from_indices(n, (0..n).filter(|&x| {
            a.iter().any(|y| {
                let (p, q) = (coords(x), coords(y));
                ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt() <= tau
            })
        }));
        prop_assert_eq!(&once, &oracle);
        prop_assert!(a.is_subset(&once));
        prop_assert!(once.is_subset(&t.closure(&once).unwrap()));
    }
}

#[test]
fn closure_is_not_idempotent_in_general() {
    let pts = (0..3).map(|i| Point::at(format!("{i}"), i as f64, 0.0)).collect();
    let s = FiniteProximitySpace::new(pts, ProximityRule::Metric { tau: 1.0 }).unwrap();
    let a = s.set(["0"]).unwrap();
    let once = s.closure(&a).unwrap();
    assert_eq!(once, s.set(["0", "1"]).unwrap());
    assert_eq!(s.closure(&once).unwrap(), s.all());
}

// Descriptive nearness.

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn descriptive_near_iff_intersection(seed in any::<u64>(), n in 1usize..=10) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let d = s.descriptive().unwrap();
        let (a, b) = (subset(&mut r, n), subset(&mut r, n));
        let meet = d.descriptive_intersection(&a, &b).unwrap();
        prop_assert_eq!(d.descriptive_near(&a, &b).unwrap(), !meet.is_empty());
        prop_assert_eq!(&meet, &d.descriptive_intersection(&b, &a).unwrap());
        prop_assert!(meet.is_subset(&a.union(&b)));
        prop_assert_eq!(meet, d.descriptive_intersection_of(&[a, b]).unwrap());
    }

    #[test]
    fn open_cover_covers(seed in any::<u64>(), n in 1usize..=10, eps in 0.01f64..3.0) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let cover = s.descriptive().unwrap().descriptive_open_cover(eps).unwrap();
        let union = cover.iter().fold(s.empty_set(), |acc, c| acc.union(c));
        prop_assert_eq!(union, s.all());
    }

    /// Verification agrees with a brute-force check of the product relation
    /// `(x, s) ~ (y, t)` iff `x ~ y` and `|s - t| <= 1`.
    #[test]
    fn product_lift_matches_oracle(seed in any::<u64>(), n in 1usize..=5, k in 1usize..=4, descriptive in any::<bool>()) {
        let mut r = rng(seed);
        let x = Arc::new(common::metric_space(&mut r, n));
        let y = Arc::new(common::metric_space(&mut r, n));
        let table: Vec<Vec<usize>> = (0..n).map(|_| (0..=k).map(|_| r.random_range(0..n)).collect()).collect();
        let h = HomotopyWitness::new(k, table.clone(), None).unwrap();
        let row = |t: usize| table.iter().map(|row| row[t]).collect::<Vec<_>>();
        let f = FiniteMap::new(x.clone(), y.clone(), row(0)).unwrap();
        let g = FiniteMap::new(x.clone(), y.clone(), row(k)).unwrap();
        let mode = if descriptive { Mode::Descriptive } else { Mode::Plain };
        let (rx, ry) = (x.relation(mode).unwrap(), y.relation(mode).unwrap());
        let mut oracle = true;
        for a in 0..n {
            for b in 0..n {
                for s in 0..=k {
                    for t in 0..=k {
                        if rx.related(a, b) && s.abs_diff(t) <= 1 && !ry.related(table[a][s], table[b][t]) {
                            oracle = false;
                        }
                    }
                }
            }
        }
        prop_assert_eq!(verify_homotopy(&h, &f, &g, mode).unwrap().valid, oracle);
    }
}

// Maps and homotopy.

proptest! {
    #![proptest_config(cases(150))]

    #[test]
    fn homotopy_is_an_equivalence(seed in any::<u64>(), k in 1usize..=8) {
        let mut r = rng(seed);
        let p = common::homotopy_pair(&mut r, k);
        for mode in [Mode::Plain, Mode::Descriptive] {
            let refl = HomotopyWitness::constant(&p.f, k).unwrap();
            prop_assert!(verify_homotopy(&refl, &p.f, &p.f, mode).unwrap().valid);
            prop_assert!(verify_homotopy(&p.h1, &p.f, &p.g, mode).unwrap().valid);
            prop_assert!(verify_homotopy(&p.h1.reversed(), &p.g, &p.f, mode).unwrap().valid);
            prop_assert!(verify_homotopy(&p.h2, &p.g, &p.e, mode).unwrap().valid);
            let cat = concatenate_homotopies(&p.h1, &p.h2).unwrap();
            prop_assert!(verify_homotopy(&cat, &p.f, &p.e, mode).unwrap().valid);
        }
    }

    #[test]
    fn glue_restricts_to_its_pieces(seed in any::<u64>(), descriptive in any::<bool>()) {
        let mut r = rng(seed);
        let inst = common::gluing_instance(&mut r, descriptive);
        let mode = if descriptive { Mode::Descriptive } else { Mode::Plain };
        let h = glue(&inst.f, &inst.g, inst.x.clone(), mode).unwrap();
        prop_assert_eq!(h.assignment(), inst.h.as_slice());
        for (set, piece) in [(&inst.a, &inst.f), (&inst.b, &inst.g)] {
            let restricted: Vec<usize> = set.iter().map(|i| h.apply(i)).collect();
            prop_assert_eq!(restricted.as_slice(), piece.assignment());
        }
    }

    /// Post- and pre-composition with continuous maps on lines of at most
    /// five points.
    #[test]
    fn composition_keeps_homotopies(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let p = common::homotopy_pair(&mut r, k);
        let lip = |r: &mut ChaCha8Rng, len: usize, m: usize| -> Vec<usize> {
            let mut v = vec![r.random_range(0..m)];
            for _ in 1..len {
                let last = *v.last().unwrap() as i64;
                v.push((last + r.random_range(-1i64..=1)).clamp(0, m as i64 - 1) as usize);
            }
            v
        };
        let z = common::line(r.random_range(1..=5));
        let hz = FiniteMap::new(p.target.clone(), z.clone(), lip(&mut r, p.target.len(), z.len())).unwrap();
        prop_assert!(check_proximal_continuity(&hz, Mode::Plain).unwrap().continuous);
        let post = p.h1.post_compose(&hz);
        let (hf, hg) = (prox_core::maps::compose(&p.f, &hz).unwrap(), prox_core::maps::compose(&p.g, &hz).unwrap());
        prop_assert!(verify_homotopy(&post, &hf, &hg, Mode::Plain).unwrap().valid);

        let w = common::line(r.random_range(1..=5));
        let kw = FiniteMap::new(w.clone(), p.source.clone(), lip(&mut r, w.len(), p.source.len())).unwrap();
        let pre = p.h1.pre_compose(&kw);
        let (fk, gk) = (prox_core::maps::compose(&kw, &p.f).unwrap(), prox_core::maps::compose(&kw, &p.g).unwrap());
        prop_assert!(verify_homotopy(&pre, &fk, &gk, Mode::Plain).unwrap().valid);
    }

    #[test]
    fn ordinary_constants_are_degenerate_and_degenerate_maps_are_dpc(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let x = Arc::new(common::metric_space(&mut r, n));
        let y = Arc::new(common::metric_space(&mut r, n));
        let anchor = r.random_range(0..n);
        let dy = y.descriptive().unwrap();
        let same: Vec<usize> = (0..n).filter(|&j| dy.probe().same_description(anchor, j) && dy.probe().feature(j) == dy.probe().feature(anchor)).collect();
        let assignment: Vec<usize> = (0..n).map(|_| same[r.random_range(0..same.len())]).collect();
        let d = FiniteMap::new(x.clone(), y.clone(), assignment).unwrap();
        let kind = classify_constant(&d).unwrap();
        if kind == ConstantKind::Ordinary {
            prop_assert!(is_degenerate(&d).unwrap());
        }
        prop_assert!(is_degenerate(&d).unwrap());
        prop_assert!(check_proximal_continuity(&d, Mode::Descriptive).unwrap().continuous);
    }
}

// Cycles.

proptest! {
    #![proptest_config(cases(60))]

    #[test]
    fn valid_systems_are_good_covers_with_clasp(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (space, doc, clasp) = common::cycle_system(&mut r);
        let (_, report) = validate_cycle_system(&space, &doc).unwrap();
        prop_assert!(report.valid, "{:?}", report.issues);
        prop_assert_eq!(report.clasps.iter().map(|c| c.as_str()).collect::<Vec<_>>(), vec![clasp.as_str()]);
        let c = space.index_of(&clasp.as_str().into()).unwrap();
        let sets: Vec<PointSet> = doc.cycles.iter().map(|cy| space.set(cy.vertices.iter().cloned()).unwrap()).collect();
        for s in &sets {
            prop_assert!(s.contains(c));
        }
        let cover = Cover::points(&space, sets).unwrap();
        let gc = check_good_cover(&cover, GoodCoverMode::Topological, 2).unwrap();
        prop_assert!(gc.passed);
        for i in &gc.intersections {
            let singleton = matches!(i.certificate, Some(Certificate::Singleton { .. }));
            prop_assert!(singleton);
        }
    }

    #[test]
    fn singleton_classes_agree_with_hcyc(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (space, doc, _) = common::cycle_system(&mut r);
        let cycle: &CycleDoc = &doc.cycles[0];
        let (_, multi) = validate_multi_cycle(&space, cycle).unwrap();
        let (_, simple) = validate_hcyc(&space, cycle).unwrap();
        prop_assert_eq!(multi.valid, simple.valid);
        prop_assert!(simple.valid);
    }
}

// Covers and nerves.

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn betti_matches_brute_force(seed in any::<u64>(), v in 1usize..=7, e in 0usize..=8) {
        let mut r = rng(seed);
        let edges = common::random_graph(&mut r, v, e);
        let c = NerveComplex::new(v, edges.iter().map(|&(a, b)| vec![a, b]).collect()).unwrap();
        prop_assert_eq!(betti(&c).unwrap(), common::graph_betti_oracle(v, &edges));
    }

    #[test]
    fn free_group_rank_ignores_forest_choice(seed in any::<u64>(), v in 1usize..=9, e in 0usize..=14) {
        let mut r = rng(seed);
        let g = Graph { vertices: v, edges: common::random_graph(&mut r, v, e) };
        let base = free_group_presentation_in_order(&g, &(0..v).collect::<Vec<_>>()).unwrap();
        let mut order: Vec<usize> = (0..v).collect();
        order.shuffle(&mut r);
        let other = free_group_presentation_in_order(&g, &order).unwrap();
        prop_assert_eq!(base.rank, other.rank);
        prop_assert_eq!(base.generators.len(), base.rank);
    }

    #[test]
    fn plain_nerve_is_inside_descriptive_nerve(seed in any::<u64>(), n in 1usize..=8, m in 1usize..=4) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let mut elements: Vec<PointSet> = (0..m).map(|_| subset(&mut r, n)).collect();
        for e in &mut elements {
            if e.is_empty() {
                e.insert(r.random_range(0..n));
            }
        }
        let cover = Cover::points(&s, elements).unwrap();
        let plain = common::simplex_set(&build_nerve(&cover, Mode::Plain).unwrap());
        let desc = common::simplex_set(&build_nerve(&cover, Mode::Descriptive).unwrap());
        prop_assert!(plain.is_subset(&desc));
    }

    #[test]
    fn degenerate_good_cover_is_descriptive(seed in any::<u64>(), n in 1usize..=8, m in 1usize..=4) {
        let mut r = rng(seed);
        let s = common::metric_space(&mut r, n);
        let elements: Vec<PointSet> = (0..m)
            .map(|_| {
                let mut e = subset(&mut r, n);
                if e.is_empty() {
                    e.insert(r.random_range(0..n));
                }
                e
            })
            .collect();
        let cover = Cover::points(&s, elements).unwrap();
        if check_good_cover(&cover, GoodCoverMode::Degenerate, 1).unwrap().passed {
            prop_assert!(check_good_cover(&cover, GoodCoverMode::Descriptive, 1).unwrap().passed);
        }
    }
}

proptest! {
    #![proptest_config(cases(60))]

    #[test]
    fn nerve_matches_union_for_rectangles(seed in any::<u64>(), m in 1usize..=5) {
        let mut r = rng(seed);
        let rects = common::random_rects(&mut r, 64, m);
        let px: Vec<PixelSet> = rects.iter().map(|&q| common::rect_pixels(64, q)).collect();
        let report = prox_core::nerve::nerve_vs_union_check(&px).unwrap();
        if report.touching.is_empty() {
            prop_assert!(report.equal, "{:?} {:?}", rects, report);
        }
    }
}

// Jordan.

/// Union-find oracle: 8-connected components of `s`, and 4-connected
/// components of its complement that do not reach the window edge.
fn homology_oracle(s: &PixelSet) -> (usize, usize) {
    let (w, h) = (s.width() as i64, s.height() as i64);
    let idx = |x: i64, y: i64| (y * w + x) as usize;
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let count = |fg: bool, offsets: &[(i64, i64)]| -> Vec<Vec<(i64, i64)>> {
        let mut parent: Vec<usize> = (0..(w * h) as usize).collect();
        for y in 0..h {
            for x in 0..w {
                if s.contains((x, y)) != fg {
                    continue;
                }
                for &(dx, dy) in offsets {
                    let (u, v) = (x + dx, y + dy);
                    if (0..w).contains(&u) && (0..h).contains(&v) && s.contains((u, v)) == fg {
                        let (a, b) = (find(&mut parent, idx(x, y)), find(&mut parent, idx(u, v)));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups = std::collections::BTreeMap::<usize, Vec<(i64, i64)>>::new();
        for y in 0..h {
            for x in 0..w {
                if s.contains((x, y)) == fg {
                    groups.entry(find(&mut parent, idx(x, y))).or_default().push((x, y));
                }
            }
        }
        groups.into_values().collect()
    };
    let eight = [(1, 0), (0, 1), (1, 1), (1, -1)];
    let four = [(1, 0), (0, 1)];
    let b0 = count(true, &eight).len();
    let holes = count(false, &four)
        .into_iter()
        .filter(|g| g.iter().all(|&(x, y)| x > 0 && y > 0 && x < w - 1 && y < h - 1))
        .count();
    (b0, holes)
}

proptest! {
    #![proptest_config(cases(300))]

    #[test]
    fn grid_homology_matches_union_find(seed in any::<u64>(), w in 1usize..=16, h in 1usize..=16, density in 0.1f64..0.9) {
        let mut r = rng(seed);
        let mut s = PixelSet::new(w, h);
        for y in 0..h as i64 {
            for x in 0..w as i64 {
                if r.random_bool(density) {
                    s.try_insert((x, y)).unwrap();
                }
            }
        }
        prop_assert_eq!(grid_homology(&s), homology_oracle(&s));
        let parts = closure_boundary_interior(&s);
        prop_assert_eq!(parts.boundary.union(&parts.interior), parts.closure.clone());
        prop_assert!(!parts.boundary.intersects(&parts.interior));
    }

    #[test]
    fn jordan_parts_partition_the_window(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = common::rectilinear_polygon(&mut r, 64, 12);
        let rep = jordan_partition(&Polyline::cycle(ring.clone()), 64, 64).unwrap();
        let p = &rep.partition;
        prop_assert!(!p.boundary.intersects(&p.interior));
        prop_assert!(!p.boundary.intersects(&p.exterior));
        prop_assert!(!p.interior.intersects(&p.exterior));
        prop_assert_eq!(p.boundary.len() + p.interior.len() + p.exterior.len(), 64 * 64);
        prop_assert!(rep.flags.all(), "{:?} {:?}", ring, rep.flags);
    }
}

// Persistence.

fn synthetic(ranks: &[Option<usize>], t0: f64) -> (Vec<Frame>, Vec<Option<FrameDescriptor>>) {
    let frames = (0..ranks.len())
        .map(|i| Frame { id: format!("{i}").into(), time: t0 + i as f64 * 0.25, shape: None, features: None })
        .collect();
    let ds = ranks.iter().map(|r| r.map(|rank| FrameDescriptor { betti: (1, rank), rank, features: None })).collect();
    (frames, ds)
}

proptest! {
    #![proptest_config(cases(300))]

    #[test]
    fn tracking_is_deterministic_and_translation_invariant(
        ranks in prop::collection::vec(prop::option::weighted(0.8, 0usize..4), 0..20),
        tol in 0usize..2, gap in 0usize..3, shift in 0.0f64..100.0,
    ) {
        let opts = TrackOptions { tolerance: tol, gap, feature_tolerance: None };
        let (frames, ds) = synthetic(&ranks, 0.0);
        let a = track_descriptors(&frames, &ds, opts);
        prop_assert_eq!(&a, &track_descriptors(&frames, &ds, opts));
        let (moved, ds2) = synthetic(&ranks, shift);
        let b = track_descriptors(&moved, &ds2, opts);
        let shape = |ts: &[prox_core::persistence::PersistenceTrack]| {
            ts.iter().map(|t| (t.descriptor.clone(), t.intervals.iter().map(|i| i.frames.clone()).collect::<Vec<_>>())).collect::<Vec<_>>()
        };
        prop_assert_eq!(shape(&a), shape(&b));

        // Every present frame sits in exactly one interval of one track.
        for (i, d) in ds.iter().enumerate() {
            let id: prox_core::proximity::PointId = format!("{i}").into();
            let hits = a.iter().flat_map(|t| &t.intervals).filter(|iv| iv.frames.contains(&id)).count();
            prop_assert_eq!(hits, usize::from(d.is_some()));
        }
    }

    #[test]
    fn strict_tracks_are_constant_runs(ranks in prop::collection::vec(0usize..4, 0..20)) {
        let present: Vec<Option<usize>> = ranks.iter().copied().map(Some).collect();
        let (frames, ds) = synthetic(&present, 0.0);
        let tracks = track_descriptors(&frames, &ds, TrackOptions::default());
        let runs = ranks.windows(2).filter(|w| w[0] != w[1]).count() + usize::from(!ranks.is_empty());
        prop_assert_eq!(tracks.len(), runs);
    }

    #[test]
    fn descriptor_nearness_is_reflexive_and_symmetric(
        r1 in 0usize..10, r2 in 0usize..10, tol in 0usize..4,
        f1 in prop::option::of(prop::collection::vec(-5.0f64..5.0, 2)),
        f2 in prop::option::of(prop::collection::vec(-5.0f64..5.0, 2)),
        eps in prop::option::of(0.0f64..3.0),
    ) {
        let d1 = FrameDescriptor { betti: (1, r1), rank: r1, features: f1 };
        let d2 = FrameDescriptor { betti: (1, r2), rank: r2, features: f2 };
        prop_assert!(descriptors_near(&d1, &d1, tol, eps));
        prop_assert_eq!(descriptors_near(&d1, &d2, tol, eps), descriptors_near(&d2, &d1, tol, eps));
    }
}

#[test]
fn degenerate_contractibility_implies_descriptive() {
    let mut r = rng(7);
    for _ in 0..100 {
        let n = r.random_range(1..=8);
        let s = common::metric_space(&mut r, n);
        let anchor = r.random_range(0..n);
        let probe = s.probe().unwrap();
        let set = PointSet::from_indices(n, (0..n).filter(|&j| probe.feature(j) == probe.feature(anchor)));
        let sub = Subject::Points { space: &s, set: &set };
        let deg = contractibility(sub, ContractMode::DegenerateDescriptive, None).unwrap();
        assert!(deg.contractible);
        let desc = contractibility(Subject::Points { space: &s, set: &set }, ContractMode::Descriptive, None).unwrap();
        assert!(desc.contractible);
    }
}
