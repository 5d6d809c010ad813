//! The reduction from non-betweenness satisfiability to top monotonicity of
//! partial orders, and the single-peaked completion used to show that a
//! satisfiable instance yields a top monotonic gadget.

use crate::alternative::Alt;
use crate::error::{Error, Result};
use crate::nb::{NbConstraint, NbConstraintSet};
use crate::order::{LinearOrder, StrictPartialOrder, WeakOrder};
use crate::profile::{PartialProfile, Profile, Voter, WeakProfile};

fn above_all(m: usize, top: Alt) -> impl Iterator<Item = (Alt, Alt)> {
    (0..m).map(Alt::new).filter(move |&x| x != top).map(move |x| (top, x))
}

/// The three gadget voters for `(b, {a, c})`, with `(a, c)` the sorted
/// outer pair:
///
/// 1. `a ≻ c ≻ b` and `a` above everything;
/// 2. `c` above everything;
/// 3. `b` above everything.
fn gadget_voters(m: usize, c: &NbConstraint) -> [StrictPartialOrder; 3] {
    let b = c.middle();
    let (a, c) = c.outer();
    let first = StrictPartialOrder::new(m, above_all(m, a).chain([(c, b)])).expect("acyclic by construction");
    let second = StrictPartialOrder::new(m, above_all(m, c)).expect("acyclic by construction");
    let third = StrictPartialOrder::new(m, above_all(m, b)).expect("acyclic by construction");
    [first, second, third]
}

/// Builds the gadget profile: three voters per constraint, in canonical
/// constraint order, named `c<k>.1`, `c<k>.2`, `c<k>.3`.
pub fn reduce_nb_to_profile(cs: &NbConstraintSet) -> Result<PartialProfile> {
    let m = cs.elements().len();
    let voters = cs
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            gadget_voters(m, c)
                .into_iter()
                .enumerate()
                .map(move |(r, relation)| Voter {
                    name: format!("c{}.{}", k + 1, r + 1),
                    relation,
                })
        })
        .collect();
    Profile::new(cs.elements().clone(), voters)
}

/// Recovers the constraint set a gadget profile was built from.
pub fn gadget_constraints(gadget: &PartialProfile) -> Result<NbConstraintSet> {
    NbConstraintSet::new(gadget.alternatives().clone(), gadget_triples(gadget)?)
}

/// The constraint behind each consecutive voter triple.
fn gadget_triples(gadget: &PartialProfile) -> Result<Vec<NbConstraint>> {
    let m = gadget.alt_count();
    let all = gadget.alternatives().all();
    if !gadget.voter_count().is_multiple_of(3) {
        return Err(Error::input("gadget profiles have three voters per constraint"));
    }
    let mut out = Vec::with_capacity(gadget.voter_count() / 3);
    for triple in gadget.voters().chunks(3) {
        let greatest = |v: &Voter<StrictPartialOrder>| {
            v.relation
                .greatest_of(&all)
                .ok_or_else(|| Error::input(format!("voter {} has no single top alternative", v.name)))
        };
        let a = greatest(&triple[0])?;
        let c = greatest(&triple[1])?;
        let b = greatest(&triple[2])?;
        let constraint = NbConstraint::new(b, a, c)
            .map_err(|_| Error::input(format!("voters {}.. do not form a gadget", triple[0].name)))?;
        if a > c {
            return Err(Error::input(format!(
                "voters {}.. are not in canonical gadget orientation",
                triple[0].name
            )));
        }
        let expected = gadget_voters(m, &constraint);
        if triple.iter().zip(expected.iter()).any(|(v, e)| &v.relation != e) {
            return Err(Error::input(format!(
                "voters {}.. do not match the gadget shape",
                triple[0].name
            )));
        }
        out.push(constraint);
    }
    Ok(out)
}

/// Alternatives by increasing distance from `peak` along `axis`;
/// equidistant pairs list the one earlier in `axis` first.
fn outward(axis: &LinearOrder, peak: Alt) -> Vec<Alt> {
    let p = axis.position(peak);
    let mut rest: Vec<Alt> = axis.sequence().iter().copied().filter(|&a| a != peak).collect();
    rest.sort_by_key(|&a| (axis.position(a).abs_diff(p), axis.position(a)));
    std::iter::once(peak).chain(rest).collect()
}

/// Peak `a`; first the side of `axis` holding `c`, nearest first, then the
/// other side, nearest first.
fn peak_then_side(axis: &LinearOrder, a: Alt, c: Alt) -> Vec<Alt> {
    let pa = axis.position(a);
    let seq = axis.sequence();
    let left: Vec<Alt> = seq[..pa].iter().rev().copied().collect();
    let right: Vec<Alt> = seq[pa + 1..].to_vec();
    let (first, second) = if axis.position(c) > pa {
        (right, left)
    } else {
        (left, right)
    };
    std::iter::once(a).chain(first).chain(second).collect()
}

/// Completes a gadget profile to linear orders single-peaked with respect
/// to `witness`, each extending its voter's partial order.
pub fn single_peaked_extension(gadget: &PartialProfile, witness: &LinearOrder) -> Result<WeakProfile> {
    let m = gadget.alt_count();
    if witness.len() != m {
        return Err(Error::input(format!(
            "witness covers {} alternatives, the gadget has {m}",
            witness.len()
        )));
    }
    let triples = gadget_triples(gadget)?;
    if let Some(c) = triples.iter().find(|c| !c.is_satisfied_by(witness)) {
        let names = gadget.alternatives();
        let (x, z) = c.outer();
        return Err(Error::Precondition(format!(
            "witness places {} between {} and {}",
            names.id(c.middle()),
            names.id(x),
            names.id(z)
        )));
    }
    let mut voters = Vec::with_capacity(gadget.voter_count());
    for (c, triple) in triples.iter().zip(gadget.voters().chunks(3)) {
        let b = c.middle();
        let (a, c) = c.outer();
        let sequences = [peak_then_side(witness, a, c), outward(witness, c), outward(witness, b)];
        for (v, seq) in triple.iter().zip(sequences) {
            let relation = WeakOrder::from_linear(&LinearOrder::new(m, seq)?);
            if !v.relation.is_extended_by(&relation) {
                return Err(Error::Internal(format!(
                    "single-peaked completion of voter {} does not extend it",
                    v.name
                )));
            }
            voters.push(Voter {
                name: v.name.clone(),
                relation,
            });
        }
    }
    Profile::new(gadget.alternatives().clone(), voters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alternative::Alternatives;

    fn abc_constraint() -> NbConstraintSet {
        let alts = Alternatives::new(["a", "b", "c"]).unwrap();
        let c = NbConstraint::new(Alt::new(1), Alt::new(0), Alt::new(2)).unwrap();
        NbConstraintSet::new(alts, [c]).unwrap()
    }

    fn ix(v: &[usize]) -> Vec<Alt> {
        v.iter().map(|&i| Alt::new(i)).collect()
    }

    #[test]
    fn gadget_for_single_constraint() {
        let g = reduce_nb_to_profile(&abc_constraint()).unwrap();
        let (a, b, c) = (Alt::new(0), Alt::new(1), Alt::new(2));
        let pairs: Vec<_> = g.relations().map(|p| p.pairs()).collect();
        assert_eq!(pairs[0], vec![(a, b), (a, c), (c, b)]);
        assert_eq!(pairs[1], vec![(c, a), (c, b)]);
        assert_eq!(pairs[2], vec![(b, a), (b, c)]);
        let names: Vec<_> = g.voters().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["c1.1", "c1.2", "c1.3"]);
        assert_eq!(gadget_constraints(&g).unwrap(), abc_constraint());
    }

    #[test]
    fn empty_constraint_set_gives_empty_profile() {
        let alts = Alternatives::new(["a", "b", "c"]).unwrap();
        let g = reduce_nb_to_profile(&NbConstraintSet::empty(alts)).unwrap();
        assert_eq!(g.voter_count(), 0);
        let ext = single_peaked_extension(&g, &LinearOrder::identity(3)).unwrap();
        assert_eq!(ext.voter_count(), 0);
    }

    #[test]
    fn single_peaked_completion_example() {
        let g = reduce_nb_to_profile(&abc_constraint()).unwrap();
        // witness a > c > b
        let witness = LinearOrder::new(3, ix(&[0, 2, 1])).unwrap();
        let ext = single_peaked_extension(&g, &witness).unwrap();
        let seqs: Vec<_> = ext
            .relations()
            .map(|w| w.as_linear().unwrap().sequence().to_vec())
            .collect();
        assert_eq!(seqs, vec![ix(&[0, 2, 1]), ix(&[2, 0, 1]), ix(&[1, 2, 0])]);
    }

    #[test]
    fn violated_witness_is_a_precondition_error() {
        let g = reduce_nb_to_profile(&abc_constraint()).unwrap();
        let err = single_peaked_extension(&g, &LinearOrder::identity(3)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn non_gadget_is_an_input_error() {
        let alts = Alternatives::new(["a", "b", "c"]).unwrap();
        let p = Profile::from_relations(alts, vec![StrictPartialOrder::empty(3); 3]).unwrap();
        let err = single_peaked_extension(&p, &LinearOrder::identity(3)).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }
}
