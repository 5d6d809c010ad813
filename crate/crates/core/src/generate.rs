//! Seeded random profile generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alternative::{Alt, Alternatives};
use crate::error::{Error, Result};
use crate::order::{LinearOrder, WeakOrder};
use crate::profile::{Profile, WeakProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    RandomWeak,
    RandomLinear,
    Dichotomous,
    SinglePeaked,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 4] = [
        ProfileKind::RandomWeak,
        ProfileKind::RandomLinear,
        ProfileKind::Dichotomous,
        ProfileKind::SinglePeaked,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::RandomWeak => "random-weak",
            ProfileKind::RandomLinear => "random-linear",
            ProfileKind::Dichotomous => "dichotomous",
            ProfileKind::SinglePeaked => "single-peaked",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProfileKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::input(format!("unknown profile kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedProfile {
    pub profile: WeakProfile,
    /// The axis single-peaked profiles were drawn along.
    pub axis: Option<LinearOrder>,
}

/// Alternative ids for generated profiles: `a`..`z`, or zero-padded `a00`,
/// `a01`, … past 26 so the ids still sort in index order.
pub fn default_ids(m: usize) -> Vec<String> {
    if m <= 26 {
        (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        let width = (m - 1).to_string().len();
        (0..m).map(|i| format!("a{i:0width$}")).collect()
    }
}

pub fn generate(kind: ProfileKind, m: usize, n: usize, seed: u64) -> Result<GeneratedProfile> {
    if m == 0 {
        return Err(Error::input("need at least one alternative"));
    }
    let alternatives = Alternatives::new(default_ids(m))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axis = match kind {
        ProfileKind::SinglePeaked => Some(random_linear(&mut rng, m)),
        _ => None,
    };
    let relations = (0..n)
        .map(|_| match kind {
            ProfileKind::RandomWeak => random_weak(&mut rng, m),
            ProfileKind::RandomLinear => WeakOrder::from_linear(&random_linear(&mut rng, m)),
            ProfileKind::Dichotomous => random_dichotomous(&mut rng, m),
            ProfileKind::SinglePeaked => single_peaked_voter(&mut rng, axis.as_ref().expect("axis drawn")),
        })
        .collect();
    Ok(GeneratedProfile {
        profile: Profile::from_relations(alternatives, relations)?,
        axis,
    })
}

fn random_linear(rng: &mut impl Rng, m: usize) -> LinearOrder {
    let mut seq: Vec<Alt> = (0..m).map(Alt::new).collect();
    seq.shuffle(rng);
    LinearOrder::from_sequence_unchecked(seq)
}

/// Each alternative draws a class label in `0..m`; empty labels are
/// dropped.
fn random_weak(rng: &mut impl Rng, m: usize) -> WeakOrder {
    let mut classes = vec![Vec::new(); m];
    for a in 0..m {
        classes[rng.random_range(0..m)].push(Alt::new(a));
    }
    classes.retain(|c| !c.is_empty());
    WeakOrder::from_classes_unchecked(m, classes)
}

/// A random non-empty top class; the rest (if any) form the second class.
fn random_dichotomous(rng: &mut impl Rng, m: usize) -> WeakOrder {
    let mut seq: Vec<Alt> = (0..m).map(Alt::new).collect();
    seq.shuffle(rng);
    let cut = rng.random_range(1..=m);
    let mut top = seq[..cut].to_vec();
    let mut rest = seq[cut..].to_vec();
    top.sort_unstable();
    rest.sort_unstable();
    let classes = if rest.is_empty() { vec![top] } else { vec![top, rest] };
    WeakOrder::from_classes_unchecked(m, classes)
}

/// A random peak, then a random merge of the two sides walking outward.
fn single_peaked_voter(rng: &mut impl Rng, axis: &LinearOrder) -> WeakOrder {
    let m = axis.len();
    let peak = rng.random_range(0..m);
    let seq = axis.sequence();
    let (mut left, mut right) = (peak, peak + 1);
    let mut ranking = vec![seq[peak]];
    while left > 0 || right < m {
        let go_left = if left == 0 {
            false
        } else if right == m {
            true
        } else {
            rng.random_bool(0.5)
        };
        if go_left {
            left -= 1;
            ranking.push(seq[left]);
        } else {
            ranking.push(seq[right]);
            right += 1;
        }
    }
    WeakOrder::from_linear(&LinearOrder::from_sequence_unchecked(ranking))
}
