use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::Serialize;

use crate::alternative::Alt;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::nb::{extract_constraints, solve_nb, NbConstraintSet, NbSolution, SolverOptions};
use crate::order::LinearOrder;
use crate::profile::WeakProfile;
use crate::verify::verify_tm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TmStatus {
    TopMonotonic,
    NotTopMonotonic,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecisionStats {
    pub constraints_extracted: usize,
    pub solver_nodes: u64,
    /// Weak-order profiles run through the pipeline (partial-order testing).
    pub profiles_examined: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmDecision {
    pub status: TmStatus,
    pub witness: Option<LinearOrder>,
    /// The extracted constraint set, when the decision went through
    /// extraction.
    pub certificate: Option<NbConstraintSet>,
    /// For partial-order profiles: the weak-order extension that is top
    /// monotonic.
    pub extension: Option<WeakProfile>,
    pub stats: DecisionStats,
}

impl TmDecision {
    pub fn is_top_monotonic(&self) -> bool {
        self.status == TmStatus::TopMonotonic
    }
}

/// Decides top monotonicity by extracting the non-betweenness constraints
/// and solving them exactly. A found witness is re-verified against the
/// definition before it is returned.
pub fn test_tm(profile: &WeakProfile, options: &SolverOptions) -> Result<TmDecision> {
    let started = Instant::now();
    let cs = extract_constraints(profile);
    let outcome = solve_nb(&cs, options)?;
    let witness = match outcome.solution {
        NbSolution::Sat(order) => {
            if let Some(v) = verify_tm(profile, &order)?.violated() {
                return Err(Error::Internal(format!(
                    "solver witness fails verification at voters ({}, {})",
                    v.voter_i, v.voter_j
                )));
            }
            Some(order)
        }
        NbSolution::Unsat => None,
    };
    Ok(TmDecision {
        status: if witness.is_some() {
            TmStatus::TopMonotonic
        } else {
            TmStatus::NotTopMonotonic
        },
        witness,
        stats: DecisionStats {
            constraints_extracted: cs.len(),
            solver_nodes: outcome.nodes,
            profiles_examined: 1,
            elapsed: started.elapsed(),
        },
        certificate: Some(cs),
        extension: None,
    })
}

/// The factorial oracle: tries every order in lexicographic order with
/// [`verify_tm`].
pub fn test_tm_bruteforce(profile: &WeakProfile, limits: &Limits) -> Result<TmDecision> {
    let started = Instant::now();
    let m = profile.alt_count();
    if m > limits.brute_force_alts {
        return Err(Error::capacity(
            "alternative count for brute force",
            limits.brute_force_alts,
            m,
        ));
    }
    let mut tried = 0u64;
    let mut witness = None;
    for perm in (0..m).map(Alt::new).permutations(m) {
        tried += 1;
        let order = LinearOrder::new(m, perm)?;
        if verify_tm(profile, &order)?.holds() {
            witness = Some(order);
            break;
        }
    }
    Ok(TmDecision {
        status: if witness.is_some() {
            TmStatus::TopMonotonic
        } else {
            TmStatus::NotTopMonotonic
        },
        witness,
        certificate: None,
        extension: None,
        stats: DecisionStats {
            solver_nodes: tried,
            profiles_examined: 1,
            elapsed: started.elapsed(),
            ..DecisionStats::default()
        },
    })
}
