//! Deciding top monotonicity of preference profiles.
//!
//! A weak-order profile is top monotonic when some linear order of the
//! alternatives satisfies the between-tops condition for every member of
//! the triple family. [`verify_tm`] checks one order in polynomial time;
//! [`test_tm`] decides the question by extracting non-betweenness
//! constraints ([`extract_constraints`]) and solving them exactly
//! ([`solve_nb`]); [`test_tm_bruteforce`] is the permutation-scanning
//! oracle. Profiles of strict partial orders are handled by
//! [`test_tm_partial`], and [`reduce_nb_to_profile`] builds the gadget
//! profile that ties their top monotonicity to constraint satisfiability.

mod alternative;
mod decide;
mod error;
mod extensions;
pub mod format;
mod gadget;
mod generate;
mod limits;
mod nb;
mod order;
mod partial;
mod profile;
pub mod report;
mod structure;
mod verify;

pub use alternative::{is_valid_id, Alt, Alternatives, RESERVED_CHARS};
pub use decide::{test_tm, test_tm_bruteforce, DecisionStats, TmDecision, TmStatus};
pub use error::{Error, Result};
pub use extensions::{linear_extensions, weak_extensions};
pub use gadget::{gadget_constraints, reduce_nb_to_profile, single_peaked_extension};
pub use generate::{default_ids, generate, GeneratedProfile, ProfileKind};
pub use limits::Limits;
pub use nb::{
    brute_force_nb, extract_constraints, for_each_solution, order_satisfies, partial_satisfies, solve_nb, NbConstraint,
    NbConstraintSet, NbOutcome, NbSolution, OrderCheck, PartialCheck, SolverOptions,
};
pub use order::{LinearOrder, StrictPartialOrder, WeakOrder};
pub use partial::test_tm_partial;
pub use profile::{triple_family, PartialProfile, Profile, Relation, Voter, WeakProfile};
pub use structure::{
    find_sp_axis, is_dichotomous, is_single_peaked_wrt, majority_relation, weak_condorcet_winners, MajorityRelation,
    PairCounts, PairVerdict,
};
pub use verify::{verify_tm, verify_tm_counted, TmVerdict, TmViolation, ViolationReason};
