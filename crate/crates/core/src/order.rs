//! The three relation types: linear orders (candidate witnesses), weak
//! orders (voter preferences with ties) and strict partial orders.

use crate::alternative::{checked_subset, Alt};
use crate::error::{Error, Result};

/// A permutation of the alternatives, read left to right as greatest to
/// least.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    sequence: Vec<Alt>,
    position: Vec<u32>,
}

impl LinearOrder {
    pub fn new(m: usize, sequence: Vec<Alt>) -> Result<Self> {
        if sequence.len() != m {
            return Err(Error::input(format!(
                "order lists {} alternatives, expected {m}",
                sequence.len()
            )));
        }
        let mut position = vec![u32::MAX; m];
        for (i, a) in sequence.iter().enumerate() {
            if a.index() >= m {
                return Err(Error::input(format!("alternative {a} is out of range")));
            }
            if position[a.index()] != u32::MAX {
                return Err(Error::input(format!("alternative {a} appears twice")));
            }
            position[a.index()] = i as u32;
        }
        Ok(LinearOrder { sequence, position })
    }

    /// The order listing alternatives by ascending index (= ascending id).
    pub fn identity(m: usize) -> Self {
        LinearOrder {
            sequence: (0..m).map(Alt::new).collect(),
            position: (0..m as u32).collect(),
        }
    }

    pub(crate) fn from_sequence_unchecked(sequence: Vec<Alt>) -> Self {
        let mut position = vec![0; sequence.len()];
        for (i, a) in sequence.iter().enumerate() {
            position[a.index()] = i as u32;
        }
        LinearOrder { sequence, position }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[Alt] {
        &self.sequence
    }

    pub fn position(&self, a: Alt) -> usize {
        self.position[a.index()] as usize
    }

    pub fn at(&self, index: usize) -> Alt {
        self.sequence[index]
    }

    pub fn reverse(&self) -> Self {
        let mut sequence = self.sequence.clone();
        sequence.reverse();
        LinearOrder::from_sequence_unchecked(sequence)
    }

    /// `x > y > z` or `z > y > x`.
    pub fn is_between(&self, y: Alt, x: Alt, z: Alt) -> bool {
        let (px, py, pz) = (self.position(x), self.position(y), self.position(z));
        (px < py && py < pz) || (pz < py && py < px)
    }
}

/// A complete, transitive preference relation stored as indifference
/// classes from most to least preferred.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakOrder {
    classes: Vec<Vec<Alt>>,
    rank: Vec<u32>,
}

impl WeakOrder {
    /// `classes` must partition `0..m` into non-empty sets.
    pub fn new(m: usize, classes: Vec<Vec<Alt>>) -> Result<Self> {
        let mut rank = vec![u32::MAX; m];
        let mut classes = classes;
        for (k, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(Error::input("empty indifference class"));
            }
            class.sort_unstable();
            for &a in class.iter() {
                if a.index() >= m {
                    return Err(Error::input(format!("alternative {a} is out of range")));
                }
                if rank[a.index()] != u32::MAX {
                    return Err(Error::input(format!("alternative {a} is listed twice")));
                }
                rank[a.index()] = k as u32;
            }
        }
        if let Some(missing) = rank.iter().position(|&r| r == u32::MAX) {
            return Err(Error::input(format!(
                "classes do not cover alternative {}",
                Alt::new(missing)
            )));
        }
        Ok(WeakOrder { classes, rank })
    }

    pub(crate) fn from_classes_unchecked(m: usize, classes: Vec<Vec<Alt>>) -> Self {
        let mut rank = vec![0; m];
        for (k, class) in classes.iter().enumerate() {
            for &a in class {
                rank[a.index()] = k as u32;
            }
        }
        WeakOrder { classes, rank }
    }

    /// Total indifference: a single class.
    pub fn indifferent(m: usize) -> Self {
        WeakOrder::from_classes_unchecked(m, vec![(0..m).map(Alt::new).collect()])
    }

    pub fn from_linear(order: &LinearOrder) -> Self {
        let classes = order.sequence().iter().map(|&a| vec![a]).collect();
        WeakOrder::from_classes_unchecked(order.len(), classes)
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn classes(&self) -> &[Vec<Alt>] {
        &self.classes
    }

    /// Index of the class holding `a`; smaller is better.
    pub fn rank(&self, a: Alt) -> usize {
        self.rank[a.index()] as usize
    }

    /// `a ≻ b`
    pub fn prefers(&self, a: Alt, b: Alt) -> bool {
        self.rank[a.index()] < self.rank[b.index()]
    }

    /// `a ≿ b`
    pub fn weakly_prefers(&self, a: Alt, b: Alt) -> bool {
        self.rank[a.index()] <= self.rank[b.index()]
    }

    /// `a ∼ b`
    pub fn is_indifferent(&self, a: Alt, b: Alt) -> bool {
        self.rank[a.index()] == self.rank[b.index()]
    }

    pub fn is_linear(&self) -> bool {
        self.classes.len() == self.rank.len()
    }

    /// The voter's linear order, if every class is a singleton.
    pub fn as_linear(&self) -> Option<LinearOrder> {
        self.is_linear()
            .then(|| LinearOrder::from_sequence_unchecked(self.classes.iter().map(|c| c[0]).collect()))
    }

    /// Maximal elements of `subset`: the members sharing the best rank.
    pub fn top_set(&self, subset: &[Alt]) -> Result<Vec<Alt>> {
        let subset = checked_subset(subset, self.len())?;
        Ok(self.top_of(&subset))
    }

    /// `top_set` without validation; `subset` must be non-empty and sorted.
    pub(crate) fn top_of(&self, subset: &[Alt]) -> Vec<Alt> {
        let best = subset.iter().map(|&a| self.rank[a.index()]).min().unwrap_or(0);
        subset
            .iter()
            .copied()
            .filter(|&a| self.rank[a.index()] == best)
            .collect()
    }

    /// Keeps only `keep` (sorted), renumbering the k-th kept alternative to
    /// `Alt::new(k)`.
    pub fn restrict(&self, keep: &[Alt]) -> WeakOrder {
        let mut remap = vec![None; self.len()];
        for (k, &a) in keep.iter().enumerate() {
            remap[a.index()] = Some(Alt::new(k));
        }
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().filter_map(|a| remap[a.index()]).collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect();
        WeakOrder::from_classes_unchecked(keep.len(), classes)
    }
}

/// An irreflexive, asymmetric, transitively closed relation. `a ≻ b` is
/// stored for every implied pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrictPartialOrder {
    m: usize,
    above: Vec<bool>,
}

impl StrictPartialOrder {
    /// Closes `pairs` transitively; a cycle (including `a ≻ a`) is an
    /// input error.
    pub fn new<I>(m: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Alt, Alt)>,
    {
        let mut above = vec![false; m * m];
        for (a, b) in pairs {
            if a.index() >= m || b.index() >= m {
                return Err(Error::input(format!("pair ({a}, {b}) is out of range")));
            }
            above[a.index() * m + b.index()] = true;
        }
        // Warshall
        for k in 0..m {
            for i in 0..m {
                if above[i * m + k] {
                    for j in 0..m {
                        if above[k * m + j] {
                            above[i * m + j] = true;
                        }
                    }
                }
            }
        }
        if let Some(a) = (0..m).find(|&a| above[a * m + a]) {
            return Err(Error::input(format!(
                "strict pairs contain a cycle through {}",
                Alt::new(a)
            )));
        }
        Ok(StrictPartialOrder { m, above })
    }

    pub fn empty(m: usize) -> Self {
        StrictPartialOrder {
            m,
            above: vec![false; m * m],
        }
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// `a ≻ b`
    pub fn prefers(&self, a: Alt, b: Alt) -> bool {
        self.above[a.index() * self.m + b.index()]
    }

    pub fn comparable(&self, a: Alt, b: Alt) -> bool {
        self.prefers(a, b) || self.prefers(b, a)
    }

    /// All pairs of the closed relation, sorted.
    pub fn pairs(&self) -> Vec<(Alt, Alt)> {
        let m = self.m;
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| self.above[a * m + b])
            .map(|(a, b)| (Alt::new(a), Alt::new(b)))
            .collect()
    }

    /// The covering pairs (transitive reduction), sorted. Closing them gives
    /// back the full relation.
    pub fn covering_pairs(&self) -> Vec<(Alt, Alt)> {
        self.pairs()
            .into_iter()
            .filter(|&(a, b)| {
                !(0..self.m)
                    .map(Alt::new)
                    .any(|c| self.prefers(a, c) && self.prefers(c, b))
            })
            .collect()
    }

    /// Maximal elements of `subset`.
    pub fn top_set(&self, subset: &[Alt]) -> Result<Vec<Alt>> {
        let subset = checked_subset(subset, self.m)?;
        Ok(subset
            .iter()
            .copied()
            .filter(|&a| !subset.iter().any(|&b| self.prefers(b, a)))
            .collect())
    }

    /// The element above every other member of `subset`, if there is one.
    pub fn greatest_of(&self, subset: &[Alt]) -> Option<Alt> {
        subset
            .iter()
            .copied()
            .find(|&a| subset.iter().all(|&b| b == a || self.prefers(a, b)))
    }

    pub fn is_extended_by(&self, weak: &WeakOrder) -> bool {
        weak.len() == self.m && self.pairs().into_iter().all(|(a, b)| weak.prefers(a, b))
    }
}
