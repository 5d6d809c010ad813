//! Non-betweenness constraints: `(y, {x, z})` forbids `y` from lying strictly
//! between `x` and `z` in the sought linear order.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use itertools::Itertools;

use crate::alternative::{Alt, Alternatives};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::order::{LinearOrder, StrictPartialOrder};
use crate::profile::{triple_family, WeakProfile};
use crate::verify::{consequent_failure, family_tops, scan_tuples};

/// `(middle, {low, high})` with `low < high`. Field order fixes the
/// canonical ordering: by middle, then by the sorted outer pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NbConstraint {
    middle: Alt,
    low: Alt,
    high: Alt,
}

impl NbConstraint {
    pub fn new(middle: Alt, x: Alt, z: Alt) -> Result<Self> {
        if middle == x || middle == z {
            return Err(Error::input(
                "the middle of a constraint must differ from its outer pair",
            ));
        }
        if x == z {
            return Err(Error::input(
                "the outer pair of a constraint needs two distinct members",
            ));
        }
        let (low, high) = if x < z { (x, z) } else { (z, x) };
        Ok(NbConstraint { middle, low, high })
    }

    pub fn middle(&self) -> Alt {
        self.middle
    }

    /// The outer pair, sorted.
    pub fn outer(&self) -> (Alt, Alt) {
        (self.low, self.high)
    }

    pub fn members(&self) -> [Alt; 3] {
        [self.middle, self.low, self.high]
    }

    pub fn is_satisfied_by(&self, order: &LinearOrder) -> bool {
        !order.is_between(self.middle, self.low, self.high)
    }
}

/// A deduplicated set of constraints over a fixed element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NbConstraintSet {
    elements: Alternatives,
    constraints: BTreeSet<NbConstraint>,
}

impl NbConstraintSet {
    pub fn new(elements: Alternatives, constraints: impl IntoIterator<Item = NbConstraint>) -> Result<Self> {
        let mut set = NbConstraintSet::empty(elements);
        for c in constraints {
            set.insert(c)?;
        }
        Ok(set)
    }

    pub fn empty(elements: Alternatives) -> Self {
        NbConstraintSet {
            elements,
            constraints: BTreeSet::new(),
        }
    }

    /// Adds `c`; returns whether it was new.
    pub fn insert(&mut self, c: NbConstraint) -> Result<bool> {
        if c.members().iter().any(|&a| !self.elements.contains(a)) {
            return Err(Error::input(
                "constraint mentions an alternative outside the element set",
            ));
        }
        Ok(self.constraints.insert(c))
    }

    pub fn elements(&self) -> &Alternatives {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, c: &NbConstraint) -> bool {
        self.constraints.contains(c)
    }

    /// Constraints in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &NbConstraint> + '_ {
        self.constraints.iter()
    }

    pub fn is_subset(&self, other: &NbConstraintSet) -> bool {
        self.constraints.is_subset(&other.constraints)
    }
}

/// Collects `(y, {x, z})` for every tuple of the between-tops scan whose
/// consequent fails for voter `i`. One failing witness suffices; duplicates
/// from different `(S, i, j)` collapse.
pub fn extract_constraints(profile: &WeakProfile) -> NbConstraintSet {
    let family = triple_family(profile);
    let tops = family_tops(profile, &family);
    let mut out = BTreeSet::new();
    scan_tuples(&family, &tops, |s, i, j, x, y, z| {
        let z_is_top = tops[s][i].contains(&z) || tops[s][j].contains(&z);
        if consequent_failure(profile.relation(i), y, z, z_is_top).is_some() {
            // x, y, z are pairwise distinct here
            out.insert(NbConstraint::new(y, x, z).expect("distinct members"));
        }
        false
    });
    NbConstraintSet {
        elements: profile.alternatives().clone(),
        constraints: out,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderCheck {
    Satisfied,
    Violated(NbConstraint),
}

impl OrderCheck {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, OrderCheck::Satisfied)
    }
}

/// First constraint (canonical order) whose middle lies strictly between its
/// outer pair in `order`.
pub fn order_satisfies(order: &LinearOrder, cs: &NbConstraintSet) -> Result<OrderCheck> {
    if order.len() != cs.elements.len() {
        return Err(Error::input(format!(
            "order covers {} alternatives, the constraint set has {}",
            order.len(),
            cs.elements.len()
        )));
    }
    Ok(match cs.iter().find(|c| !c.is_satisfied_by(order)) {
        Some(&c) => OrderCheck::Violated(c),
        None => OrderCheck::Satisfied,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialCheck {
    Forced,
    NotForced(NbConstraint),
}

impl PartialCheck {
    pub fn is_forced(&self) -> bool {
        matches!(self, PartialCheck::Forced)
    }
}

/// Strong satisfaction: for each `(y, {x, z})`, `p` puts `y` above both or
/// below both outer members, so every linear extension of `p` satisfies the
/// set.
pub fn partial_satisfies(p: &StrictPartialOrder, cs: &NbConstraintSet) -> Result<PartialCheck> {
    if p.len() != cs.elements.len() {
        return Err(Error::input(format!(
            "partial order covers {} alternatives, the constraint set has {}",
            p.len(),
            cs.elements.len()
        )));
    }
    let forced = |c: &NbConstraint| {
        let (y, (x, z)) = (c.middle, c.outer());
        (p.prefers(y, x) && p.prefers(y, z)) || (p.prefers(x, y) && p.prefers(z, y))
    };
    Ok(match cs.iter().find(|c| !forced(c)) {
        Some(&c) => PartialCheck::NotForced(c),
        None => PartialCheck::Forced,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NbSolution {
    Sat(LinearOrder),
    Unsat,
}

impl NbSolution {
    pub fn is_sat(&self) -> bool {
        matches!(self, NbSolution::Sat(_))
    }

    pub fn witness(&self) -> Option<&LinearOrder> {
        match self {
            NbSolution::Sat(o) => Some(o),
            NbSolution::Unsat => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Abort with [`Error::BudgetExhausted`] after this many search nodes.
    pub node_budget: Option<u64>,
    /// Only explore orders placing the smallest-id alternative before the
    /// second smallest. Halves the search; the witness is then the first
    /// such order rather than the lexicographically first overall.
    pub reversal_symmetry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbOutcome {
    pub solution: NbSolution,
    /// Placements tried by the search.
    pub nodes: u64,
}

/// Exact backtracking search for an order satisfying `cs`.
///
/// Positions are filled left to right; candidates for each position are
/// tried in ascending id order, so the first order found is the
/// lexicographically first satisfying one. A branch dies as soon as a
/// middle is placed while exactly one of its outer members is already
/// placed: the other one can only land further right.
pub fn solve_nb(cs: &NbConstraintSet, options: &SolverOptions) -> Result<NbOutcome> {
    let mut first = None;
    let nodes = for_each_solution(cs, options, |seq| {
        first = Some(LinearOrder::from_sequence_unchecked(seq.to_vec()));
        ControlFlow::Break(())
    })?;
    let solution = match first {
        Some(o) => NbSolution::Sat(o),
        None => NbSolution::Unsat,
    };
    Ok(NbOutcome { solution, nodes })
}

/// Visits every satisfying order in lexicographic order (subject to
/// `reversal_symmetry`) until `visit` breaks. Returns the node count.
pub fn for_each_solution<F>(cs: &NbConstraintSet, options: &SolverOptions, visit: F) -> Result<u64>
where
    F: FnMut(&[Alt]) -> ControlFlow<()>,
{
    let m = cs.elements.len();
    if m == 0 {
        return Err(Error::input("constraint set has no elements"));
    }
    let mut as_middle: Vec<Vec<(Alt, Alt)>> = vec![Vec::new(); m];
    for c in cs.iter() {
        as_middle[c.middle.index()].push(c.outer());
    }
    let mut search = Search {
        as_middle,
        placed: vec![false; m],
        sequence: Vec::with_capacity(m),
        nodes: 0,
        budget: options.node_budget,
        symmetry: options.reversal_symmetry && m >= 2,
        visit,
    };
    let _ = search.descend()?;
    Ok(search.nodes)
}

struct Search<F> {
    as_middle: Vec<Vec<(Alt, Alt)>>,
    placed: Vec<bool>,
    sequence: Vec<Alt>,
    nodes: u64,
    budget: Option<u64>,
    symmetry: bool,
    visit: F,
}

impl<F> Search<F>
where
    F: FnMut(&[Alt]) -> ControlFlow<()>,
{
    fn can_place(&self, a: Alt) -> bool {
        if self.symmetry && a.index() == 1 && !self.placed[0] {
            return false;
        }
        self.as_middle[a.index()]
            .iter()
            .all(|&(x, z)| self.placed[x.index()] == self.placed[z.index()])
    }

    fn descend(&mut self) -> Result<ControlFlow<()>> {
        let m = self.placed.len();
        if self.sequence.len() == m {
            return Ok((self.visit)(&self.sequence));
        }
        for k in 0..m {
            if self.placed[k] {
                continue;
            }
            self.nodes += 1;
            if let Some(budget) = self.budget {
                if self.nodes > budget {
                    return Err(Error::BudgetExhausted { budget });
                }
            }
            let a = Alt::new(k);
            if !self.can_place(a) {
                continue;
            }
            self.placed[k] = true;
            self.sequence.push(a);
            let flow = self.descend()?;
            self.sequence.pop();
            self.placed[k] = false;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Exhaustive oracle: scans all permutations in lexicographic order and
/// returns the first satisfying one.
pub fn brute_force_nb(cs: &NbConstraintSet, limits: &Limits) -> Result<NbSolution> {
    let m = cs.elements.len();
    if m == 0 {
        return Err(Error::input("constraint set has no elements"));
    }
    if m > limits.brute_force_alts {
        return Err(Error::capacity(
            "element count for brute force",
            limits.brute_force_alts,
            m,
        ));
    }
    for perm in (0..m).map(Alt::new).permutations(m) {
        let order = LinearOrder::from_sequence_unchecked(perm);
        if order_satisfies(&order, cs)?.is_satisfied() {
            return Ok(NbSolution::Sat(order));
        }
    }
    Ok(NbSolution::Unsat)
}
