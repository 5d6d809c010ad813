//! Top monotonicity of partial-order profiles: does some choice of one weak
//! extension per voter give a top monotonic weak-order profile?
//!
//! Enumerating the product of extensions directly is hopeless beyond a
//! handful of voters, so the search is organised around the witness order
//! instead. For a fixed order `o` and a fixed set `T` that contains every
//! voter's top class on A, the between-tops condition over the family built
//! from `T` splits into one check per ordered voter pair `(i, j)`, and that
//! check reads voter `i`'s full weak order but only voter `j`'s top sets.
//! Checking against a superset `T` of the real union of tops only adds
//! family members, so a success is a genuine success, and the real union is
//! among the candidates, so nothing is missed. Each `(o, T)` becomes a
//! binary constraint problem over voters, solved by backtracking with
//! forward checking.
//!
//! Two exact prunings keep the order loop short:
//!
//! * constraints forced for every extension (a voter with a greatest element
//!   always has it as sole top, and `z ≻_p y` fails the consequent in every
//!   extension) must hold in `o`, so only orders satisfying them are tried;
//! * reversing a witness order gives another witness, so only orders with
//!   the smallest-id alternative ahead of the second are tried.
//!
//! Linear extensions are tried first for every `(o, T)` pair; if none
//! succeed, all weak extensions are. Among successes, the first in the
//! enumeration order (order `o`, then `T` by size and mask, then voters'
//! extensions in their enumeration order) is reported.

use std::ops::ControlFlow;
use std::time::Instant;

use itertools::Itertools;

use crate::alternative::Alt;
use crate::decide::{test_tm, DecisionStats, TmDecision, TmStatus};
use crate::error::{Error, Result};
use crate::extensions::weak_extensions;
use crate::limits::Limits;
use crate::nb::{for_each_solution, NbConstraint, NbConstraintSet, SolverOptions};
use crate::order::{LinearOrder, WeakOrder};
use crate::profile::{PartialProfile, Profile, Voter, WeakProfile};

type Mask = u64;

fn bit(a: usize) -> Mask {
    1 << a
}

fn mask_of(alts: &[Alt]) -> Mask {
    alts.iter().fold(0, |m, a| m | bit(a.index()))
}

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..Mask::BITS as usize).filter(move |&a| mask >> a & 1 == 1)
}

/// One candidate extension of one voter, with its top sets on the current
/// family precomputed.
struct Candidate {
    rank: Vec<u32>,
    tops: Vec<Mask>,
}

/// Decides top monotonicity of a profile of strict partial orders.
pub fn test_tm_partial(profile: &PartialProfile, limits: &Limits, options: &SolverOptions) -> Result<TmDecision> {
    let started = Instant::now();
    let m = profile.alt_count();
    let n = profile.voter_count();
    if n > limits.partial_voters {
        return Err(Error::capacity(
            "voter count for partial-order testing",
            limits.partial_voters,
            n,
        ));
    }
    let extensions: Vec<Vec<WeakOrder>> = profile
        .relations()
        .map(|p| weak_extensions(p, limits))
        .collect::<Result<_>>()?;

    let all = profile.alternatives().all();
    let sources: Vec<Mask> = profile
        .relations()
        .map(|p| p.top_set(&all).map(|t| mask_of(&t)))
        .collect::<Result<_>>()?;
    let forced_tops: Mask = sources.iter().filter(|s| s.count_ones() == 1).fold(0, |a, s| a | s);
    let possible_tops: Mask = sources.iter().fold(0, |a, s| a | s);

    let forced = forced_constraints(profile, forced_tops)?;

    // candidate top unions, smallest first
    let free = possible_tops & !forced_tops;
    let mut unions: Vec<Mask> = (0..=free)
        .filter(|t| t & !free == 0)
        .map(|t| t | forced_tops)
        .filter(|&t| sources.iter().all(|s| s & t != 0))
        .collect();
    unions.sort_by_key(|t| (t.count_ones(), *t));

    let mut stats = DecisionStats::default();
    let mut found: Option<Vec<usize>> = None;
    for linear_only in [true, false] {
        let search_options = SolverOptions {
            node_budget: None,
            reversal_symmetry: true,
        };
        for_each_solution(&forced, &search_options, |seq| {
            let order = LinearOrder::from_sequence_unchecked(seq.to_vec());
            for &t in &unions {
                let problem = Problem::new(&order, t, m, &extensions, linear_only);
                if let Some(choice) = problem.solve(&mut stats) {
                    found = Some(choice);
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        if found.is_some() {
            break;
        }
    }

    let (status, witness, extension, certificate) = match found {
        Some(choice) => {
            let voters = profile
                .voters()
                .iter()
                .zip(choice)
                .enumerate()
                .map(|(k, (v, c))| Voter {
                    name: v.name.clone(),
                    relation: extensions[k][c].clone(),
                })
                .collect();
            let weak: WeakProfile = Profile::new(profile.alternatives().clone(), voters)?;
            let decision = test_tm(&weak, options)?;
            if !decision.is_top_monotonic() {
                return Err(Error::Internal(
                    "extension profile found by the partial search is not top monotonic".into(),
                ));
            }
            stats.solver_nodes += decision.stats.solver_nodes;
            stats.constraints_extracted = decision.stats.constraints_extracted;
            (
                TmStatus::TopMonotonic,
                decision.witness,
                Some(weak),
                decision.certificate,
            )
        }
        None => (TmStatus::NotTopMonotonic, None, None, None),
    };
    stats.elapsed = started.elapsed();
    Ok(TmDecision {
        status,
        witness,
        certificate,
        extension,
        stats,
    })
}

/// Constraints present in the extracted set of every extension profile.
fn forced_constraints(profile: &PartialProfile, forced_tops: Mask) -> Result<NbConstraintSet> {
    let alts = profile.alternatives();
    let top_list: Vec<Alt> = bits(forced_tops).map(Alt::new).collect();
    let family: Vec<Vec<Alt>> = std::iter::once(alts.all())
        .chain(top_list.into_iter().combinations(3))
        .collect();
    let mut cs = NbConstraintSet::empty(alts.clone());
    for set in &family {
        let greatest: Vec<Option<Alt>> = profile.relations().map(|p| p.greatest_of(set)).collect();
        for (i, p_i) in profile.relations().enumerate() {
            let Some(x) = greatest[i] else { continue };
            for y in greatest.iter().flatten().copied() {
                if y == x {
                    continue;
                }
                for &z in set {
                    if z != x && z != y && p_i.prefers(z, y) {
                        cs.insert(NbConstraint::new(y, x, z)?)?;
                    }
                }
            }
        }
    }
    Ok(cs)
}

/// The voter-assignment problem for one order and one top union.
struct Problem {
    family: Vec<Mask>,
    /// `between[x][y]`: the `z` with `y` strictly between `x` and `z`.
    between: Vec<Vec<Mask>>,
    domains: Vec<Vec<usize>>,
    candidates: Vec<Vec<Candidate>>,
}

impl Problem {
    fn new(order: &LinearOrder, union: Mask, m: usize, extensions: &[Vec<WeakOrder>], linear_only: bool) -> Self {
        let full = if m == 0 { 0 } else { Mask::MAX >> (64 - m) };
        let tops: Vec<usize> = bits(union).collect();
        let mut family: Vec<Mask> = std::iter::once(full)
            .chain(
                tops.into_iter()
                    .combinations(3)
                    .map(|c| c.iter().fold(0, |a, &x| a | bit(x))),
            )
            .collect();
        family.sort_unstable();
        family.dedup();

        let between = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| {
                        (0..m)
                            .filter(|&z| order.is_between(Alt::new(y), Alt::new(x), Alt::new(z)))
                            .fold(0, |a, z| a | bit(z))
                    })
                    .collect()
            })
            .collect();

        let mut domains = Vec::with_capacity(extensions.len());
        let mut candidates = Vec::with_capacity(extensions.len());
        for ext in extensions {
            let cands: Vec<Candidate> = ext
                .iter()
                .map(|w| Candidate {
                    rank: (0..m).map(|a| w.rank(Alt::new(a)) as u32).collect(),
                    tops: family.iter().map(|&s| top_mask(w, s)).collect(),
                })
                .collect();
            let domain = ext
                .iter()
                .enumerate()
                .filter(|(_, w)| !linear_only || w.is_linear())
                .filter(|(c, _)| cands[*c].tops[0] & !union == 0)
                .map(|(c, _)| c)
                .collect();
            domains.push(domain);
            candidates.push(cands);
        }
        Problem {
            family,
            between,
            domains,
            candidates,
        }
    }

    /// The between-tops condition with `i` supplying the weak order and `j`
    /// supplying only top sets.
    fn pair_ok(&self, i: &Candidate, j: &Candidate) -> bool {
        for (s, &set) in self.family.iter().enumerate() {
            let (ti, tj) = (i.tops[s], j.tops[s]);
            let union = ti | tj;
            for x in bits(ti) {
                for y in bits(tj) {
                    if x == y {
                        continue;
                    }
                    let zs = self.between[x][y] & set;
                    for z in bits(zs) {
                        let ok = if union >> z & 1 == 1 {
                            i.rank[y] <= i.rank[z]
                        } else {
                            i.rank[y] < i.rank[z]
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(mut self, stats: &mut DecisionStats) -> Option<Vec<usize>> {
        for k in 0..self.domains.len() {
            let cands = &self.candidates[k];
            let kept: Vec<usize> = self.domains[k]
                .iter()
                .copied()
                .filter(|&c| self.pair_ok(&cands[c], &cands[c]))
                .collect();
            self.domains[k] = kept;
            if self.domains[k].is_empty() {
                return None;
            }
        }
        let mut choice = Vec::with_capacity(self.domains.len());
        let domains = self.domains.clone();
        self.assign(domains, &mut choice, stats).then_some(choice)
    }

    fn assign(&self, domains: Vec<Vec<usize>>, choice: &mut Vec<usize>, stats: &mut DecisionStats) -> bool {
        let k = choice.len();
        if k == domains.len() {
            return true;
        }
        for &c in &domains[k] {
            stats.profiles_examined += 1;
            let chosen = &self.candidates[k][c];
            let mut next = domains.clone();
            let mut wiped = false;
            for (v, dom) in next.iter_mut().enumerate().skip(k + 1) {
                let cands = &self.candidates[v];
                dom.retain(|&d| self.pair_ok(&cands[d], chosen) && self.pair_ok(chosen, &cands[d]));
                if dom.is_empty() {
                    wiped = true;
                    break;
                }
            }
            if wiped {
                continue;
            }
            choice.push(c);
            if self.assign(next, choice, stats) {
                return true;
            }
            choice.pop();
        }
        false
    }
}

fn top_mask(w: &WeakOrder, set: Mask) -> Mask {
    let best = bits(set).map(|a| w.rank(Alt::new(a))).min().unwrap_or(0);
    bits(set)
        .filter(|&a| w.rank(Alt::new(a)) == best)
        .fold(0, |acc, a| acc | bit(a))
}
