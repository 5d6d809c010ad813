//! Independent oracles and fixtures shared by the integration tests.
//!
//! Nothing here calls into the library's verifier, extractor or solvers; the
//! oracles work from plain relation matrices built from the public
//! accessors.

#![allow(dead_code)]

use std::path::PathBuf;

use itertools::Itertools;
use proptest::prelude::*;
use topmono::{
    default_ids, Alt, Alternatives, LinearOrder, NbConstraint, NbConstraintSet, PartialProfile, Profile,
    StrictPartialOrder, WeakOrder, WeakProfile,
};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn example_profile() -> WeakProfile {
    topmono::format::parse_weak_profile(&fixture("example.toc")).unwrap()
}

pub fn alts(m: usize) -> Alternatives {
    Alternatives::new(default_ids(m)).unwrap()
}

/// Weak order from a rank per alternative (lower rank is better); gaps in
/// the ranks are closed.
pub fn weak_from_ranks(ranks: &[usize]) -> WeakOrder {
    let m = ranks.len();
    let classes: Vec<Vec<Alt>> = ranks
        .iter()
        .copied()
        .sorted()
        .dedup()
        .map(|r| (0..m).filter(|&a| ranks[a] == r).map(Alt::new).collect())
        .collect();
    WeakOrder::new(m, classes).unwrap()
}

pub fn profile_from_ranks(m: usize, voters: &[Vec<usize>]) -> WeakProfile {
    Profile::from_relations(alts(m), voters.iter().map(|r| weak_from_ranks(r)).collect()).unwrap()
}

pub fn linear(m: usize, seq: &[usize]) -> LinearOrder {
    LinearOrder::new(m, seq.iter().map(|&a| Alt::new(a)).collect()).unwrap()
}

pub fn all_orders(m: usize) -> Vec<LinearOrder> {
    (0..m).permutations(m).map(|p| linear(m, &p)).collect()
}

/// Every weak order on `m` alternatives as a rank vector: the surjections
/// onto `0..k` for some `k`.
pub fn all_rank_vectors(m: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|_| 0..m)
        .multi_cartesian_product()
        .filter(|r| {
            let k = r.iter().copied().max().map_or(0, |x| x + 1);
            (0..k).all(|c| r.contains(&c))
        })
        .collect()
}

/// `geq[a][b]` iff the voter weakly prefers `a` to `b`.
pub struct Matrix {
    pub geq: Vec<Vec<bool>>,
}

impl Matrix {
    pub fn of(w: &WeakOrder) -> Self {
        let m = w.len();
        let mut level = vec![0; m];
        for (k, class) in w.classes().iter().enumerate() {
            for a in class {
                level[a.index()] = k;
            }
        }
        Matrix {
            geq: (0..m).map(|a| (0..m).map(|b| level[a] <= level[b]).collect()).collect(),
        }
    }

    fn strict(&self, a: usize, b: usize) -> bool {
        self.geq[a][b] && !self.geq[b][a]
    }

    fn tops(&self, s: &[usize]) -> Vec<usize> {
        s.iter()
            .copied()
            .filter(|&a| s.iter().all(|&b| self.geq[a][b]))
            .collect()
    }
}

/// The between-tops condition, read straight off its definition.
pub struct NaiveTm {
    m: usize,
    voters: Vec<Matrix>,
}

impl NaiveTm {
    pub fn new(p: &WeakProfile) -> Self {
        NaiveTm {
            m: p.alt_count(),
            voters: p.relations().map(Matrix::of).collect(),
        }
    }

    pub fn family(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.m).collect();
        let union: Vec<usize> = self.voters.iter().flat_map(|v| v.tops(&all)).sorted().dedup().collect();
        let mut family = vec![all];
        for t in union.into_iter().combinations(3) {
            if !family.contains(&t) {
                family.push(t);
            }
        }
        family
    }

    /// Does the tuple `(S, i, j, x, y, z)` break the condition under the
    /// order with positions `pos`?
    #[allow(clippy::too_many_arguments)]
    pub fn breaks(&self, pos: &[usize], s: &[usize], i: usize, j: usize, x: usize, y: usize, z: usize) -> bool {
        let ti = self.voters[i].tops(s);
        let tj = self.voters[j].tops(s);
        if !ti.contains(&x) || !tj.contains(&y) || !s.contains(&z) {
            return false;
        }
        let between = (pos[x] < pos[y] && pos[y] < pos[z]) || (pos[z] < pos[y] && pos[y] < pos[x]);
        if !between {
            return false;
        }
        let vi = &self.voters[i];
        if ti.contains(&z) || tj.contains(&z) {
            !vi.geq[y][z]
        } else {
            !vi.strict(y, z)
        }
    }

    pub fn holds(&self, order: &LinearOrder) -> bool {
        let pos: Vec<usize> = (0..self.m).map(|a| order.position(Alt::new(a))).collect();
        let n = self.voters.len();
        for s in self.family() {
            for i in 0..n {
                for j in 0..n {
                    for &x in &s {
                        for &y in &s {
                            for &z in &s {
                                if self.breaks(&pos, &s, i, j, x, y, z) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn decide(&self) -> bool {
        all_orders(self.m).iter().any(|o| self.holds(o))
    }
}

pub fn naive_nb_holds(order: &LinearOrder, cs: &NbConstraintSet) -> bool {
    cs.iter().all(|c| {
        let (a, b) = c.outer();
        let (p, q, r) = (order.position(a), order.position(c.middle()), order.position(b));
        !((p < q && q < r) || (r < q && q < p))
    })
}

pub fn naive_nb_sat(cs: &NbConstraintSet) -> bool {
    all_orders(cs.elements().len()).iter().any(|o| naive_nb_holds(o, cs))
}

/// Weak extensions of a partial order, by filtering every weak order.
pub fn naive_weak_extensions(p: &StrictPartialOrder) -> Vec<WeakOrder> {
    let pairs = p.pairs();
    all_rank_vectors(p.len())
        .into_iter()
        .filter(|r| pairs.iter().all(|(a, b)| r[a.index()] < r[b.index()]))
        .map(|r| weak_from_ranks(&r))
        .collect()
}

/// Top monotonicity of a partial-order profile by trying every combination
/// of weak extensions. Tiny instances only.
pub fn naive_partial_tm(p: &PartialProfile) -> bool {
    let per_voter: Vec<Vec<WeakOrder>> = p.relations().map(naive_weak_extensions).collect();
    if per_voter.is_empty() {
        return true;
    }
    per_voter.into_iter().multi_cartesian_product().any(|combo| {
        let ext = Profile::from_relations(p.alternatives().clone(), combo).unwrap();
        NaiveTm::new(&ext).decide()
    })
}

pub fn constraint(m_alts: &Alternatives, middle: &str, x: &str, z: &str) -> NbConstraint {
    let id = |s: &str| m_alts.lookup(s).unwrap();
    NbConstraint::new(id(middle), id(x), id(z)).unwrap()
}

pub fn weak_profile_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = WeakProfile> {
    (1..=max_m, 0..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(0..m, m), n).prop_map(move |v| profile_from_ranks(m, &v))
    })
}

pub fn order_strategy(m: usize) -> impl Strategy<Value = LinearOrder> {
    Just((0..m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |s| linear(m, &s))
}

pub fn profile_and_order(max_m: usize, max_n: usize) -> impl Strategy<Value = (WeakProfile, LinearOrder)> {
    weak_profile_strategy(max_m, max_n).prop_flat_map(|p| {
        let m = p.alt_count();
        (Just(p), order_strategy(m))
    })
}

pub fn nb_strategy(max_m: usize, max_c: usize) -> impl Strategy<Value = NbConstraintSet> {
    (3..=max_m).prop_flat_map(move |m| {
        prop::collection::vec((0..m, 0..m, 0..m), 0..=max_c).prop_map(move |triples| {
            let constraints = triples
                .into_iter()
                .filter(|&(y, x, z)| y != x && y != z && x != z)
                .map(|(y, x, z)| NbConstraint::new(Alt::new(y), Alt::new(x), Alt::new(z)).unwrap());
            NbConstraintSet::new(alts(m), constraints).unwrap()
        })
    })
}

/// A strict partial order on `m` alternatives: random pairs oriented along a
/// hidden permutation, so the result is acyclic.
pub fn partial_order_strategy(m: usize) -> impl Strategy<Value = StrictPartialOrder> {
    (
        Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec((0..m, 0..m), 0..=m),
    )
        .prop_map(move |(perm, pairs)| {
            let pos: Vec<usize> = (0..m).map(|a| perm.iter().position(|&b| b == a).unwrap()).collect();
            let oriented = pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| {
                if pos[a] < pos[b] {
                    (Alt::new(a), Alt::new(b))
                } else {
                    (Alt::new(b), Alt::new(a))
                }
            });
            StrictPartialOrder::new(m, oriented).unwrap()
        })
}

pub fn partial_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = PartialProfile> {
    (1..=max_m, 0..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(partial_order_strategy(m), n)
            .prop_map(move |vs| Profile::from_relations(alts(m), vs).unwrap())
    })
}

/// Every fixture file, sorted by name.
pub fn fixture_corpus() -> Vec<(String, String)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| (fixture(&n), n))
        .map(|(t, n)| (n, t))
        .collect()
}

/// Schema violations of a serialized report; empty when it validates.
pub fn schema_errors(report: &serde_json::Value) -> Vec<String> {
    let schema: serde_json::Value = serde_json::from_str(topmono::report::REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    validator.iter_errors(report).map(|e| e.to_string()).collect()
}

/// One report of each shape, built from the fixtures.
pub fn sample_reports() -> Vec<serde_json::Value> {
    use topmono::format::*;
    use topmono::report::*;
    use topmono::*;

    let p = example_profile();
    let a = p.alternatives().clone();
    let opts = SolverOptions::default();
    let limits = Limits::default();
    let mut out = Vec::new();
    for text in ["x>y>z", "y>x>z"] {
        let o = parse_order(&a, text).unwrap();
        let v = verify_tm(&p, &o).unwrap();
        out.push(serde_json::to_value(CheckReport::new(&p, text.into(), &v)).unwrap());
    }
    let d = test_tm(&p, &opts).unwrap();
    out.push(serde_json::to_value(TestReport::new("test", "nb-pipeline", &a, &d)).unwrap());
    let sp = parse_weak_profile(&fixture("single_peaked.toc")).unwrap();
    let d = test_tm_bruteforce(&sp, &limits).unwrap();
    out.push(serde_json::to_value(TestReport::new("test", "brute-force", sp.alternatives(), &d)).unwrap());
    let g = parse_partial_profile(&fixture("gadget_single.toc")).unwrap();
    let d = test_tm_partial(&g, &limits, &opts).unwrap();
    out.push(serde_json::to_value(TestReport::new("test-partial", "partial-search", g.alternatives(), &d)).unwrap());
    for nb in ["single.nb", "unsat_triple.nb"] {
        let cs = parse_nb(&fixture(nb)).unwrap();
        let s = solve_nb(&cs, &opts).unwrap();
        out.push(serde_json::to_value(SolveReport::new(cs.elements(), &s)).unwrap());
    }
    out.push(
        serde_json::to_value(DocumentReport {
            command: "extract-nb",
            document: write_nb(&extract_constraints(&p)),
        })
        .unwrap(),
    );
    for name in ["example.toc", "single_peaked.toc", "ties.toc", "no_voters.toc"] {
        let q = parse_weak_profile(&fixture(name)).unwrap();
        out.push(serde_json::to_value(analyze(&q, &limits, &opts).unwrap()).unwrap());
    }
    out.push(serde_json::to_value(ErrorReport::new("test", &Error::BudgetExhausted { budget: 3 })).unwrap());
    out
}
