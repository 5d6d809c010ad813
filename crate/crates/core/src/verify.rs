//! Checking top monotonicity of a weak-order profile against one given
//! linear order.
//!
//! Only the between-tops condition is checked. The other condition of the
//! definition (each top set on A is a finite union of closed intervals of
//! the order) always holds for a finite alternative set, so it is treated as
//! constant-true.
//!
//! The consequent of the condition names only voter `i`. The symmetric
//! requirement on voter `j` is not imposed separately: the scan runs over
//! every ordered pair `(i, j)`, including `i == j`, which covers it.

use serde::Serialize;

use crate::alternative::Alt;
use crate::error::{Error, Result};
use crate::order::{LinearOrder, WeakOrder};
use crate::profile::{triple_family, WeakProfile};

/// Which branch of the consequent failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationReason {
    /// `z` is a top of voter `i` or `j` on `S`, yet `z ≻_i y`.
    IndifferenceRequired,
    /// `z` is not a top of either voter on `S`, yet `z ≿_i y`.
    StrictRequired,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TmViolation {
    pub witness_set: Vec<Alt>,
    pub voter_i: usize,
    pub voter_j: usize,
    pub x: Alt,
    pub y: Alt,
    pub z: Alt,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TmVerdict {
    Holds,
    Violated(TmViolation),
}

impl TmVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, TmVerdict::Holds)
    }

    pub fn violated(&self) -> Option<&TmViolation> {
        match self {
            TmVerdict::Holds => None,
            TmVerdict::Violated(v) => Some(v),
        }
    }
}

/// Evaluates the consequent for voter `i` (relation `w`): `y ≿ z` when `z`
/// is among the tops, `y ≻ z` otherwise.
pub(crate) fn consequent_failure(w: &WeakOrder, y: Alt, z: Alt, z_is_top: bool) -> Option<ViolationReason> {
    if z_is_top {
        (!w.weakly_prefers(y, z)).then_some(ViolationReason::IndifferenceRequired)
    } else {
        (!w.prefers(y, z)).then_some(ViolationReason::StrictRequired)
    }
}

/// Top sets of every voter on every member of the family: `tops[s][k]`.
pub(crate) fn family_tops(profile: &WeakProfile, family: &[Vec<Alt>]) -> Vec<Vec<Vec<Alt>>> {
    family
        .iter()
        .map(|s| profile.relations().map(|w| w.top_of(s)).collect())
        .collect()
}

/// Calls `visit(s, i, j, x, y, z)` for every tuple with pairwise distinct
/// `x, y, z` in scan order: family members ascending, then `i`, `j`, `x`,
/// `y`, `z` ascending. Stops early when `visit` returns `true`.
pub(crate) fn scan_tuples<F>(family: &[Vec<Alt>], tops: &[Vec<Vec<Alt>>], mut visit: F)
where
    F: FnMut(usize, usize, usize, Alt, Alt, Alt) -> bool,
{
    for (s, set) in family.iter().enumerate() {
        let n = tops[s].len();
        for i in 0..n {
            for j in 0..n {
                for &x in &tops[s][i] {
                    for &y in &tops[s][j] {
                        if x == y {
                            continue;
                        }
                        for &z in set {
                            if z == x || z == y {
                                continue;
                            }
                            if visit(s, i, j, x, y, z) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Checks the profile against `order`; returns the first violation in scan
/// order.
pub fn verify_tm(profile: &WeakProfile, order: &LinearOrder) -> Result<TmVerdict> {
    verify_tm_counted(profile, order).map(|(v, _)| v)
}

/// [`verify_tm`], also returning how many `(S, i, j, x, y, z)` tuples were
/// visited.
pub fn verify_tm_counted(profile: &WeakProfile, order: &LinearOrder) -> Result<(TmVerdict, u64)> {
    if order.len() != profile.alt_count() {
        return Err(Error::input(format!(
            "order covers {} alternatives, the profile has {}",
            order.len(),
            profile.alt_count()
        )));
    }
    let family = triple_family(profile);
    let tops = family_tops(profile, &family);
    let mut visited = 0u64;
    let mut found = None;
    scan_tuples(&family, &tops, |s, i, j, x, y, z| {
        visited += 1;
        if !order.is_between(y, x, z) {
            return false;
        }
        let z_is_top = tops[s][i].contains(&z) || tops[s][j].contains(&z);
        match consequent_failure(profile.relation(i), y, z, z_is_top) {
            Some(reason) => {
                found = Some(TmViolation {
                    witness_set: family[s].clone(),
                    voter_i: i,
                    voter_j: j,
                    x,
                    y,
                    z,
                    reason,
                });
                true
            }
            None => false,
        }
    });
    let verdict = match found {
        Some(v) => TmVerdict::Violated(v),
        None => TmVerdict::Holds,
    };
    Ok((verdict, visited))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alternative::Alternatives;
    use crate::profile::Profile;

    fn example() -> WeakProfile {
        let alts = Alternatives::new(["x", "y", "z"]).unwrap();
        let (x, y, z) = (Alt::new(0), Alt::new(1), Alt::new(2));
        let rel = |top: Alt, rest: [Alt; 2]| WeakOrder::new(3, vec![vec![top], rest.to_vec()]).unwrap();
        Profile::from_relations(alts, vec![rel(x, [y, z]), rel(y, [x, z]), rel(z, [x, y])]).unwrap()
    }

    #[test]
    fn dichotomous_example_fails_on_x_y_z() {
        let p = example();
        let (x, y, z) = (Alt::new(0), Alt::new(1), Alt::new(2));
        let verdict = verify_tm(&p, &LinearOrder::identity(3)).unwrap();
        assert_eq!(
            verdict,
            TmVerdict::Violated(TmViolation {
                witness_set: vec![x, y, z],
                voter_i: 0,
                voter_j: 1,
                x,
                y,
                z,
                reason: ViolationReason::StrictRequired,
            })
        );
    }

    #[test]
    fn single_voter_holds_for_every_order() {
        let alts = Alternatives::new(["a", "b", "c", "d"]).unwrap();
        let w = WeakOrder::new(
            4,
            vec![vec![Alt::new(2)], vec![Alt::new(0), Alt::new(3)], vec![Alt::new(1)]],
        )
        .unwrap();
        let p = Profile::from_relations(alts, vec![w]).unwrap();
        for perm in itertools::Itertools::permutations(0..4usize, 4) {
            let o = LinearOrder::new(4, perm.into_iter().map(Alt::new).collect()).unwrap();
            assert!(verify_tm(&p, &o).unwrap().holds());
        }
    }

    #[test]
    fn single_peaked_profile_holds_on_its_axis() {
        // axis a > b > c > d; peaks b, c, a
        let alts = Alternatives::new(["a", "b", "c", "d"]).unwrap();
        let lin = |v: &[usize]| {
            WeakOrder::from_linear(&LinearOrder::new(4, v.iter().map(|&i| Alt::new(i)).collect()).unwrap())
        };
        let p =
            Profile::from_relations(alts, vec![lin(&[1, 2, 0, 3]), lin(&[2, 3, 1, 0]), lin(&[0, 1, 2, 3])]).unwrap();
        assert!(verify_tm(&p, &LinearOrder::identity(4)).unwrap().holds());
    }

    #[test]
    fn order_must_match_alternatives() {
        assert!(verify_tm(&example(), &LinearOrder::identity(4)).is_err());
    }
}
