use itertools::Itertools;

use crate::alternative::{Alt, Alternatives};
use crate::error::{Error, Result};
use crate::order::{StrictPartialOrder, WeakOrder};

/// A preference relation over `0..len()` alternatives.
pub trait Relation: Clone {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Relation for WeakOrder {
    fn len(&self) -> usize {
        WeakOrder::len(self)
    }
}

impl Relation for StrictPartialOrder {
    fn len(&self) -> usize {
        StrictPartialOrder::len(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Voter<R> {
    /// Opaque label, kept for reports and documents.
    pub name: String,
    pub relation: R,
}

/// Voters' relations over one shared alternative set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile<R> {
    alternatives: Alternatives,
    voters: Vec<Voter<R>>,
}

pub type WeakProfile = Profile<WeakOrder>;
pub type PartialProfile = Profile<StrictPartialOrder>;

impl<R: Relation> Profile<R> {
    pub fn new(alternatives: Alternatives, voters: Vec<Voter<R>>) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(Error::input("a profile needs at least one alternative"));
        }
        let m = alternatives.len();
        if let Some(v) = voters.iter().find(|v| v.relation.len() != m) {
            return Err(Error::input(format!(
                "voter {} ranks {} alternatives, the profile has {m}",
                v.name,
                v.relation.len()
            )));
        }
        Ok(Profile { alternatives, voters })
    }

    /// Voters named `1`, `2`, … in order.
    pub fn from_relations(alternatives: Alternatives, relations: Vec<R>) -> Result<Self> {
        let voters = relations
            .into_iter()
            .enumerate()
            .map(|(k, relation)| Voter {
                name: (k + 1).to_string(),
                relation,
            })
            .collect();
        Profile::new(alternatives, voters)
    }

    pub fn alternatives(&self) -> &Alternatives {
        &self.alternatives
    }

    pub fn voters(&self) -> &[Voter<R>] {
        &self.voters
    }

    pub fn relations(&self) -> impl Iterator<Item = &R> + '_ {
        self.voters.iter().map(|v| &v.relation)
    }

    pub fn relation(&self, voter: usize) -> &R {
        &self.voters[voter].relation
    }

    /// Number of voters, n.
    pub fn voter_count(&self) -> usize {
        self.voters.len()
    }

    /// Number of alternatives, m.
    pub fn alt_count(&self) -> usize {
        self.alternatives.len()
    }
}

impl Profile<WeakOrder> {
    /// The profile restricted to the alternatives in `keep`.
    pub fn restrict(&self, keep: &[Alt]) -> Result<Self> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let alternatives = self.alternatives.restrict(&keep)?;
        let voters = self
            .voters
            .iter()
            .map(|v| Voter {
                name: v.name.clone(),
                relation: v.relation.restrict(&keep),
            })
            .collect();
        Profile::new(alternatives, voters)
    }

    pub fn is_linear(&self) -> bool {
        self.relations().all(WeakOrder::is_linear)
    }
}

/// The family A(≿): the whole alternative set plus every 3-subset of the
/// alternatives that are top on A for some voter.
///
/// Members are sorted and deduplicated, and the family is listed in
/// lexicographic order of the members.
pub fn triple_family(profile: &WeakProfile) -> Vec<Vec<Alt>> {
    let all = profile.alternatives().all();
    let mut tops: Vec<Alt> = profile.relations().flat_map(|w| w.top_of(&all)).collect();
    tops.sort_unstable();
    tops.dedup();

    let mut family: Vec<Vec<Alt>> = std::iter::once(all).chain(tops.into_iter().combinations(3)).collect();
    family.sort();
    family.dedup();
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(i: usize) -> Vec<Alt> {
        vec![Alt::new(i)]
    }

    /// 1: {x},{y,z}  2: {y},{x,z}  3: {z},{x,y}
    pub(crate) fn dichotomous_example() -> WeakProfile {
        let alts = Alternatives::new(["x", "y", "z"]).unwrap();
        let (x, y, z) = (Alt::new(0), Alt::new(1), Alt::new(2));
        let rel = |top: Alt, rest: [Alt; 2]| WeakOrder::new(3, vec![vec![top], rest.to_vec()]).unwrap();
        Profile::from_relations(alts, vec![rel(x, [y, z]), rel(y, [x, z]), rel(z, [x, y])]).unwrap()
    }

    #[test]
    fn family_of_dichotomous_example_is_single_triple() {
        let fam = triple_family(&dichotomous_example());
        assert_eq!(fam, vec![vec![Alt::new(0), Alt::new(1), Alt::new(2)]]);
    }

    #[test]
    fn family_with_shared_top_is_just_the_whole_set() {
        let alts = Alternatives::new(["a", "b", "c"]).unwrap();
        let w = WeakOrder::new(3, vec![single(0), vec![Alt::new(1), Alt::new(2)]]).unwrap();
        let p = Profile::from_relations(alts, vec![w.clone(), w]).unwrap();
        assert_eq!(triple_family(&p), vec![p.alternatives().all()]);
    }

    #[test]
    fn family_with_three_of_four_tops() {
        let alts = Alternatives::new(["w", "x", "y", "z"]).unwrap();
        let voter = |top: usize| {
            let rest = (0..4).filter(|&i| i != top).map(Alt::new).collect();
            WeakOrder::new(4, vec![single(top), rest]).unwrap()
        };
        let p = Profile::from_relations(alts, vec![voter(1), voter(2), voter(3)]).unwrap();
        let fam = triple_family(&p);
        let ix = |v: &[usize]| v.iter().map(|&i| Alt::new(i)).collect::<Vec<_>>();
        assert_eq!(fam, vec![ix(&[0, 1, 2, 3]), ix(&[1, 2, 3])]);
    }

    #[test]
    fn profile_rejects_mismatched_voters() {
        let alts = Alternatives::new(["a", "b"]).unwrap();
        assert!(Profile::from_relations(alts, vec![WeakOrder::indifferent(3)]).is_err());
        let none = Alternatives::new(Vec::<String>::new()).unwrap();
        assert!(Profile::<WeakOrder>::from_relations(none, vec![]).is_err());
    }

    #[test]
    fn restriction_renumbers() {
        let p = dichotomous_example();
        let r = p.restrict(&[Alt::new(0), Alt::new(2)]).unwrap();
        assert_eq!(r.alternatives().ids(), ["x", "z"]);
        // voter 2 was {y},{x,z}: now a single class
        assert_eq!(r.relation(1).classes().len(), 1);
        assert!(r.relation(0).prefers(Alt::new(0), Alt::new(1)));
    }
}
