//! Structural diagnostics: single-peakedness, dichotomousness and the
//! pairwise majority relation.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::alternative::Alt;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::order::LinearOrder;
use crate::profile::WeakProfile;

/// Whether every (linear) voter declines strictly with distance from their
/// peak along `axis`, on each side.
pub fn is_single_peaked_wrt(profile: &WeakProfile, axis: &LinearOrder) -> Result<bool> {
    if axis.len() != profile.alt_count() {
        return Err(Error::input(format!(
            "axis covers {} alternatives, the profile has {}",
            axis.len(),
            profile.alt_count()
        )));
    }
    if let Some(v) = profile.voters().iter().find(|v| !v.relation.is_linear()) {
        return Err(Error::input(format!(
            "voter {} has ties; single-peakedness needs linear voters",
            v.name
        )));
    }
    Ok(profile.relations().all(|w| {
        let peak = axis.position(w.classes()[0][0]);
        let seq = axis.sequence();
        // walking away from the peak, each step must be strictly worse
        let right_ok = seq[peak..].windows(2).all(|p| w.prefers(p[0], p[1]));
        let left_ok = seq[..=peak].windows(2).all(|p| w.prefers(p[1], p[0]));
        right_ok && left_ok
    }))
}

/// The lexicographically first axis the profile is single-peaked on.
pub fn find_sp_axis(profile: &WeakProfile, limits: &Limits) -> Result<Option<LinearOrder>> {
    let m = profile.alt_count();
    if m > limits.brute_force_alts {
        return Err(Error::capacity(
            "alternative count for axis search",
            limits.brute_force_alts,
            m,
        ));
    }
    for perm in (0..m).map(Alt::new).permutations(m) {
        let axis = LinearOrder::new(m, perm)?;
        if is_single_peaked_wrt(profile, &axis)? {
            return Ok(Some(axis));
        }
    }
    Ok(None)
}

/// At most two indifference classes per voter. Total indifference counts.
pub fn is_dichotomous(profile: &WeakProfile) -> bool {
    profile.relations().all(|w| w.classes().len() <= 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairVerdict {
    FirstWins,
    SecondWins,
    Tie,
}

/// Voter counts for one unordered pair `(first, second)`, `first < second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairCounts {
    pub first_preferred: usize,
    pub second_preferred: usize,
    pub indifferent: usize,
}

impl PairCounts {
    pub fn verdict(&self) -> PairVerdict {
        use std::cmp::Ordering::*;
        match self.first_preferred.cmp(&self.second_preferred) {
            Greater => PairVerdict::FirstWins,
            Less => PairVerdict::SecondWins,
            Equal => PairVerdict::Tie,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityRelation {
    pairs: BTreeMap<(Alt, Alt), PairCounts>,
}

impl MajorityRelation {
    /// Counts oriented as asked: `(voters with a ≻ b, voters with b ≻ a,
    /// voters indifferent)`.
    pub fn counts(&self, a: Alt, b: Alt) -> Option<(usize, usize, usize)> {
        if a < b {
            self.pairs
                .get(&(a, b))
                .map(|c| (c.first_preferred, c.second_preferred, c.indifferent))
        } else {
            self.pairs
                .get(&(b, a))
                .map(|c| (c.second_preferred, c.first_preferred, c.indifferent))
        }
    }

    /// Whether a strict majority-count comparison puts `a` over `b`.
    pub fn beats(&self, a: Alt, b: Alt) -> bool {
        self.counts(a, b).is_some_and(|(ab, ba, _)| ab > ba)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Alt, Alt), &PairCounts)> + '_ {
        self.pairs.iter()
    }
}

pub fn majority_relation(profile: &WeakProfile) -> MajorityRelation {
    let m = profile.alt_count();
    let mut pairs = BTreeMap::new();
    for (a, b) in (0..m).map(Alt::new).tuple_combinations() {
        let mut counts = PairCounts {
            first_preferred: 0,
            second_preferred: 0,
            indifferent: 0,
        };
        for w in profile.relations() {
            if w.prefers(a, b) {
                counts.first_preferred += 1;
            } else if w.prefers(b, a) {
                counts.second_preferred += 1;
            } else {
                counts.indifferent += 1;
            }
        }
        pairs.insert((a, b), counts);
    }
    MajorityRelation { pairs }
}

/// Alternatives that no other alternative beats in a pairwise majority
/// comparison.
pub fn weak_condorcet_winners(profile: &WeakProfile) -> Vec<Alt> {
    let majority = majority_relation(profile);
    let alts = profile.alternatives().all();
    alts.iter()
        .copied()
        .filter(|&a| !alts.iter().any(|&b| b != a && majority.beats(b, a)))
        .collect()
}
