//! JSON report bodies for the command-line tool. Their shape is pinned by
//! `schema/report.schema.json`.

use serde::Serialize;

use crate::alternative::{Alt, Alternatives};
use crate::decide::{test_tm, TmDecision, TmStatus};
use crate::error::Result;
use crate::format::format_order;
use crate::limits::Limits;
use crate::nb::{NbOutcome, SolverOptions};
use crate::profile::WeakProfile;
use crate::structure::{find_sp_axis, is_dichotomous, weak_condorcet_winners};
use crate::verify::{TmVerdict, ViolationReason};

/// The report schema, as shipped.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub witness_set: Vec<String>,
    pub voter_i: String,
    pub voter_j: String,
    pub x: String,
    pub y: String,
    pub z: String,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub order: String,
    pub holds: bool,
    pub violation: Option<ViolationReport>,
}

impl CheckReport {
    pub fn new(profile: &WeakProfile, order: String, verdict: &TmVerdict) -> Self {
        let alts = profile.alternatives();
        let name = |voter: usize| profile.voters()[voter].name.clone();
        CheckReport {
            command: "check",
            order,
            holds: verdict.holds(),
            violation: verdict.violated().map(|v| ViolationReport {
                witness_set: alts.names(&v.witness_set),
                voter_i: name(v.voter_i),
                voter_j: name(v.voter_j),
                x: alts.id(v.x).to_string(),
                y: alts.id(v.y).to_string(),
                z: alts.id(v.z).to_string(),
                reason: v.reason,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub constraints_extracted: usize,
    pub solver_nodes: u64,
    pub profiles_examined: u64,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestReport {
    pub command: &'static str,
    pub method: &'static str,
    pub status: TmStatus,
    pub witness: Option<String>,
    pub constraint_count: Option<usize>,
    /// Extension profile document, for partial-order profiles.
    pub extension: Option<String>,
    pub stats: StatsReport,
}

impl TestReport {
    pub fn new(command: &'static str, method: &'static str, alts: &Alternatives, d: &TmDecision) -> Self {
        TestReport {
            command,
            method,
            status: d.status,
            witness: d.witness.as_ref().map(|o| format_order(alts, o)),
            constraint_count: d.certificate.as_ref().map(|c| c.len()),
            extension: d.extension.as_ref().map(crate::format::write_weak_profile),
            stats: StatsReport {
                constraints_extracted: d.stats.constraints_extracted,
                solver_nodes: d.stats.solver_nodes,
                profiles_examined: d.stats.profiles_examined,
                elapsed_ms: d.stats.elapsed.as_secs_f64() * 1e3,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub command: &'static str,
    pub sat: bool,
    pub witness: Option<String>,
    pub nodes: u64,
}

impl SolveReport {
    pub fn new(alts: &Alternatives, outcome: &NbOutcome) -> Self {
        SolveReport {
            command: "solve-nb",
            sat: outcome.solution.is_sat(),
            witness: outcome.solution.witness().map(|o| format_order(alts, o)),
            nodes: outcome.nodes,
        }
    }
}

/// Commands whose output is a text document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DocumentReport {
    pub command: &'static str,
    pub document: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TmSummary {
    pub status: TmStatus,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub command: &'static str,
    pub alternatives: usize,
    pub voters: usize,
    pub dichotomous: bool,
    /// Lex-first single-peaked axis; absent for profiles with ties, with no
    /// such axis, or beyond the brute-force cap.
    pub sp_axis: Option<String>,
    pub tm: TmSummary,
    pub constraint_count: usize,
    pub condorcet_winners: Vec<String>,
    /// A subset obtained by dropping one alternative on which a top
    /// monotonic profile stops being top monotonic.
    pub non_inherited_subset: Option<Vec<String>>,
}

pub fn analyze(profile: &WeakProfile, limits: &Limits, options: &SolverOptions) -> Result<AnalyzeReport> {
    let alts = profile.alternatives();
    let m = profile.alt_count();
    let sp_axis = if profile.is_linear() && m <= limits.brute_force_alts {
        find_sp_axis(profile, limits)?.map(|o| format_order(alts, &o))
    } else {
        None
    };
    let decision = test_tm(profile, options)?;
    let non_inherited_subset = if decision.is_top_monotonic() && m > 3 {
        non_inherited_subset(profile, options)?.map(|s| alts.names(&s))
    } else {
        None
    };
    Ok(AnalyzeReport {
        command: "analyze",
        alternatives: m,
        voters: profile.voter_count(),
        dichotomous: is_dichotomous(profile),
        sp_axis,
        tm: TmSummary {
            status: decision.status,
            witness: decision.witness.as_ref().map(|o| format_order(alts, o)),
        },
        constraint_count: decision.certificate.as_ref().map_or(0, |c| c.len()),
        condorcet_winners: alts.names(&weak_condorcet_winners(profile)),
        non_inherited_subset,
    })
}

fn non_inherited_subset(profile: &WeakProfile, options: &SolverOptions) -> Result<Option<Vec<Alt>>> {
    let all = profile.alternatives().all();
    for drop in &all {
        let keep: Vec<Alt> = all.iter().copied().filter(|a| a != drop).collect();
        let sub = profile.restrict(&keep)?;
        if !test_tm(&sub, options)?.is_top_monotonic() {
            return Ok(Some(keep));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub command: String,
    pub error: String,
    pub kind: &'static str,
}

impl ErrorReport {
    pub fn new(command: impl Into<String>, err: &crate::Error) -> Self {
        use crate::Error::*;
        let kind = match err {
            Input(_) => "input",
            Capacity { .. } => "capacity",
            BudgetExhausted { .. } => "budget",
            Precondition(_) => "precondition",
            Internal(_) => "internal",
            Parse { .. } => "parse",
        };
        ErrorReport {
            command: command.into(),
            error: err.to_string(),
            kind,
        }
    }
}
