//! Axiom verification for finite nearness relations.
//!
//! Four axioms are checked for any [`Proximity`]: far from the empty set, symmetry,
//! overlap implies nearness, and the union law. Pairs are enumerated exhaustively
//! up to [`EXHAUSTIVE_PAIRS`] points and triples up to [`EXHAUSTIVE_TRIPLES`];
//! larger spaces fall back to seeded uniform subset sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::pointset::PointSet;
use crate::proximity::{PointId, Proximity};

pub const EXHAUSTIVE_PAIRS: usize = 12;
pub const EXHAUSTIVE_TRIPLES: usize = 8;
const SAMPLING_SEED: u64 = 0x5e_ed0f_a110;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: Vec<PointId>,
    pub b: Vec<PointId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<PointId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomOutcome {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub coverage: Coverage,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axioms: Vec<AxiomOutcome>,
    /// Point-level symmetry `x near {y} => y near {x}`, reported apart from the
    /// four axioms.
    pub symmetry_condition: AxiomOutcome,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.axioms.iter().filter(|a| !a.passed)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Flavor {
    Cech,
    Descriptive,
}

impl Flavor {
    fn names(self) -> [(&'static str, &'static str); 4] {
        match self {
            Flavor::Cech => [
                ("P.0", "A is far from the empty set"),
                ("P.1", "A near B implies B near A"),
                ("P.2", "A ∩ B nonempty implies A near B"),
                ("P.3", "A near (B ∪ C) implies A near B or A near C"),
            ],
            Flavor::Descriptive => [
                ("dP.0", "A is descriptively far from the empty set"),
                ("dP.1", "A δΦ B implies B δΦ A"),
                ("dP.2", "A ⋓ B nonempty implies A δΦ B"),
                ("dP.3", "A δΦ (B ∪ C) implies A δΦ B or A δΦ C"),
            ],
        }
    }
}

struct Tally {
    name: &'static str,
    statement: &'static str,
    cases: u64,
    witness: Option<Witness>,
}

impl Tally {
    fn new((name, statement): (&'static str, &'static str)) -> Self {
        Self {
            name,
            statement,
            cases: 0,
            witness: None,
        }
    }

    fn record<P: Proximity>(&mut self, rel: &P, ok: bool, a: &PointSet, b: &PointSet, c: Option<&PointSet>) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(Witness {
                a: rel.ids_of(a),
                b: rel.ids_of(b),
                c: c.map(|c| rel.ids_of(c)),
            });
        }
    }

    fn finish(self, coverage: Coverage) -> AxiomOutcome {
        AxiomOutcome {
            name: self.name.to_owned(),
            statement: self.statement.to_owned(),
            passed: self.witness.is_none(),
            coverage,
            cases: self.cases,
            witness: self.witness,
        }
    }
}

/// Checks the four axioms. `budget` is the number of sampled pairs and triples
/// used once a space is too large to enumerate.
pub fn check_axioms<P: Proximity>(rel: &P, flavor: Flavor, budget: usize) -> AxiomReport {
    let n = rel.size();
    let names = flavor.names();
    let mut t = names.map(Tally::new);
    let empty = PointSet::empty(n);

    let pair_coverage = if n <= EXHAUSTIVE_PAIRS {
        let subsets: Vec<PointSet> = (0..1u64 << n).map(|m| PointSet::from_mask(n, m)).collect();
        for a in &subsets {
            check_empty(rel, &mut t, a, &empty);
            for b in &subsets {
                check_pair_body(rel, &mut t, a, b);
            }
        }
        Coverage::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
        for _ in 0..budget.max(1) {
            let a = random_subset(&mut rng, n);
            let b = random_subset(&mut rng, n);
            check_empty(rel, &mut t, &a, &empty);
            check_pair_body(rel, &mut t, &a, &b);
        }
        Coverage::Sampled
    };

    let triple_coverage = if n <= EXHAUSTIVE_TRIPLES {
        let count = 1usize << n;
        let subsets: Vec<PointSet> = (0..count as u64).map(|m| PointSet::from_mask(n, m)).collect();
        let mut row = vec![false; count];
        for a in &subsets {
            for (x, sx) in subsets.iter().enumerate() {
                row[x] = rel.is_near(a, sx);
            }
            for b in 0..count {
                for c in 0..count {
                    let ok = !row[b | c] || row[b] || row[c];
                    t[3].cases += 1;
                    if !ok && t[3].witness.is_none() {
                        t[3].witness = Some(Witness {
                            a: rel.ids_of(a),
                            b: rel.ids_of(&subsets[b]),
                            c: Some(rel.ids_of(&subsets[c])),
                        });
                    }
                }
            }
        }
        Coverage::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED ^ 3);
        for _ in 0..budget.max(1) {
            let a = random_subset(&mut rng, n);
            let b = random_subset(&mut rng, n);
            let c = random_subset(&mut rng, n);
            let ok = !rel.is_near(&a, &b.union(&c)) || rel.is_near(&a, &b) || rel.is_near(&a, &c);
            t[3].record(rel, ok, &a, &b, Some(&c));
        }
        Coverage::Sampled
    };

    let mut sym = Tally::new(("(*)", "x near {y} implies y near {x}"));
    for x in 0..n {
        for y in 0..n {
            let sx = PointSet::from_indices(n, [x]);
            let sy = PointSet::from_indices(n, [y]);
            let ok = !rel.is_near(&sx, &sy) || rel.is_near(&sy, &sx);
            sym.record(rel, ok, &sx, &sy, None);
        }
    }

    let [p0, p1, p2, p3] = t;
    AxiomReport {
        axioms: vec![
            p0.finish(pair_coverage),
            p1.finish(pair_coverage),
            p2.finish(pair_coverage),
            p3.finish(triple_coverage),
        ],
        symmetry_condition: sym.finish(Coverage::Exhaustive),
    }
}

impl crate::proximity::FiniteProximitySpace {
    pub fn check_cech_axioms(&self, budget: usize) -> AxiomReport {
        check_axioms(self, Flavor::Cech, budget)
    }
}

impl crate::descriptive::DescriptiveSpace<'_> {
    pub fn check_descriptive_axioms(&self, budget: usize) -> AxiomReport {
        check_axioms(self, Flavor::Descriptive, budget)
    }
}

// P.0 for a single subset, in both argument orders.
fn check_empty<P: Proximity>(rel: &P, t: &mut [Tally; 4], a: &PointSet, empty: &PointSet) {
    let ok = !rel.is_near(a, empty) && !rel.is_near(empty, a);
    t[0].record(rel, ok, a, empty, None);
}

fn check_pair_body<P: Proximity>(rel: &P, t: &mut [Tally; 4], a: &PointSet, b: &PointSet) {
    let ab = rel.is_near(a, b);
    t[1].record(rel, !ab || rel.is_near(b, a), a, b, None);
    // Only evaluate the overlap when it could refute the implication.
    let ok = ab || rel.overlap(a, b).is_empty();
    t[2].record(rel, ok, a, b, None);
}

fn random_subset<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    PointSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::{FiniteProximitySpace, Point, ProximityRule};

    #[test]
    fn metric_space_passes() {
        let pts = (0..5).map(|i| Point::at(format!("p{i}"), i as f64, (i * i) as f64 * 0.3)).collect();
        let s = FiniteProximitySpace::new(pts, ProximityRule::Metric { tau: 1.2 }).unwrap();
        let r = check_axioms(&s, Flavor::Cech, 100);
        assert!(r.all_passed(), "{r:?}");
        assert!(r.symmetry_condition.passed);
        assert_eq!(r.axioms[3].cases, 1 << 15);
        assert!(r.axioms.iter().all(|a| a.coverage == Coverage::Exhaustive));
    }

    #[test]
    fn asymmetric_pair_fails_symmetry_with_witness() {
        let s = FiniteProximitySpace::new(
            vec![Point::new("a"), Point::new("b"), Point::new("c")],
            ProximityRule::Relation(vec![("a".into(), "b".into())]),
        )
        .unwrap();
        let r = check_axioms(&s, Flavor::Cech, 100);
        let p1 = &r.axioms[1];
        assert_eq!(p1.name, "P.1");
        assert!(!p1.passed);
        let w = p1.witness.as_ref().unwrap();
        assert!(w.a.contains(&"a".into()) && w.b.contains(&"b".into()));
        assert!(r.axioms[0].passed && r.axioms[2].passed && r.axioms[3].passed);
        assert!(!r.symmetry_condition.passed);
    }

    #[test]
    fn empty_set_case_is_recorded() {
        let s = FiniteProximitySpace::new(vec![Point::new("a")], ProximityRule::Relation(vec![]))
            .unwrap();
        let r = check_axioms(&s, Flavor::Cech, 10);
        assert!(r.axioms[0].passed);
        assert_eq!(r.axioms[0].cases, 2);
    }

    #[test]
    fn large_spaces_are_sampled() {
        let pts = (0..14).map(|i| Point::at(format!("p{i}"), i as f64, 0.0)).collect();
        let s = FiniteProximitySpace::new(pts, ProximityRule::Metric { tau: 1.0 }).unwrap();
        let r = check_axioms(&s, Flavor::Cech, 500);
        assert!(r.all_passed());
        assert!(r.axioms.iter().all(|a| a.coverage == Coverage::Sampled));
        assert_eq!(r.axioms[3].cases, 500);
    }
}
