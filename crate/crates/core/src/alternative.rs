use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters that may not appear in an alternative id; they are the
/// delimiters of the text formats.
pub const RESERVED_CHARS: [char; 6] = ['>', ',', '{', '}', '|', '#'];

/// Index of an alternative within its [`Alternatives`] set.
///
/// Alternatives are stored sorted by id, so comparing two `Alt`s of the same
/// set compares their ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alt(u32);

impl Alt {
    pub fn new(index: usize) -> Self {
        Alt(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Alt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c.is_whitespace() || RESERVED_CHARS.contains(&c))
}

/// A finite set of named alternatives, sorted by id.
///
/// Cloning is cheap; the ids are shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alternatives {
    ids: Arc<[String]>,
}

impl Alternatives {
    /// Builds the set from ids in any order. Duplicates and malformed ids are
    /// rejected. The empty set is allowed here; profiles reject it.
    pub fn new<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        if let Some(bad) = ids.iter().find(|id| !is_valid_id(id)) {
            return Err(Error::input(format!("invalid alternative id {bad:?}")));
        }
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate alternative {:?}", w[0])));
        }
        Ok(Alternatives { ids: ids.into() })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, alt: Alt) -> &str {
        &self.ids[alt.index()]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn lookup(&self, id: &str) -> Option<Alt> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .ok()
            .map(Alt::new)
    }

    pub fn iter(&self) -> impl Iterator<Item = Alt> + '_ {
        (0..self.ids.len()).map(Alt::new)
    }

    pub fn all(&self) -> Vec<Alt> {
        self.iter().collect()
    }

    pub fn contains(&self, alt: Alt) -> bool {
        alt.index() < self.ids.len()
    }

    /// Ids of `alts`, in the given order.
    pub fn names(&self, alts: &[Alt]) -> Vec<String> {
        alts.iter().map(|&a| self.id(a).to_string()).collect()
    }

    /// The subset `keep` as a fresh set. Because ids stay sorted, the k-th
    /// element of the sorted `keep` becomes `Alt::new(k)`.
    pub fn restrict(&self, keep: &[Alt]) -> Result<Self> {
        if let Some(bad) = keep.iter().find(|a| !self.contains(**a)) {
            return Err(Error::input(format!("alternative {bad} is not in the set")));
        }
        Alternatives::new(keep.iter().map(|&a| self.id(a).to_string()))
    }
}

impl fmt::Debug for Alternatives {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ids.iter()).finish()
    }
}

/// Checks that `subset` is non-empty and contained in `0..m`; returns it
/// sorted and deduplicated.
pub(crate) fn checked_subset(subset: &[Alt], m: usize) -> Result<Vec<Alt>> {
    if subset.is_empty() {
        return Err(Error::input("subset is empty"));
    }
    if let Some(bad) = subset.iter().find(|a| a.index() >= m) {
        return Err(Error::input(format!(
            "alternative {bad} is outside a relation over {m} alternatives"
        )));
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}
