//! Enumeration of the weak and linear orders extending a strict partial
//! order.
//!
//! Both enumerators peel the order from the top: the next class (or the next
//! single element) must be drawn from the current sources, the remaining
//! alternatives with nothing remaining above them. Any non-empty set of
//! sources is an antichain, so every such choice is valid and every
//! extension is produced exactly once.

use crate::alternative::Alt;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::order::{LinearOrder, StrictPartialOrder, WeakOrder};

const MASK_BITS: usize = 63;

fn sources(p: &StrictPartialOrder, remaining: u64) -> u64 {
    let m = p.len();
    (0..m)
        .filter(|&a| remaining >> a & 1 == 1)
        .filter(|&a| !(0..m).any(|b| remaining >> b & 1 == 1 && p.prefers(Alt::new(b), Alt::new(a))))
        .fold(0, |acc, a| acc | 1 << a)
}

fn members(mask: u64) -> Vec<Alt> {
    (0..MASK_BITS).filter(|&a| mask >> a & 1 == 1).map(Alt::new).collect()
}

/// Non-empty submasks of `mask` in ascending numeric order.
fn submasks_ascending(mask: u64) -> Vec<u64> {
    let mut subs = Vec::new();
    let mut sub = mask;
    while sub != 0 {
        subs.push(sub);
        sub = (sub - 1) & mask;
    }
    subs.reverse();
    subs
}

fn check_cap(what: &'static str, cap: usize, m: usize) -> Result<()> {
    let cap = cap.min(MASK_BITS);
    if m > cap {
        return Err(Error::capacity(what, cap, m));
    }
    Ok(())
}

/// Every weak order `W` with `a ≻_p b ⇒ a ≻_W b`.
///
/// Order of enumeration: the top class is chosen first, as a submask of the
/// sources in ascending bitmask order, then recursively.
pub fn weak_extensions(p: &StrictPartialOrder, limits: &Limits) -> Result<Vec<WeakOrder>> {
    let m = p.len();
    check_cap("alternative count for weak extensions", limits.weak_extension_alts, m)?;
    let mut out = Vec::new();
    let mut classes = Vec::new();
    weak_rec(p, full_mask(m), &mut classes, &mut out);
    Ok(out)
}

fn full_mask(m: usize) -> u64 {
    if m == 0 {
        0
    } else {
        u64::MAX >> (64 - m)
    }
}

fn weak_rec(p: &StrictPartialOrder, remaining: u64, classes: &mut Vec<Vec<Alt>>, out: &mut Vec<WeakOrder>) {
    if remaining == 0 {
        out.push(WeakOrder::from_classes_unchecked(p.len(), classes.clone()));
        return;
    }
    for class in submasks_ascending(sources(p, remaining)) {
        classes.push(members(class));
        weak_rec(p, remaining & !class, classes, out);
        classes.pop();
    }
}

/// Every linear order extending `p`, in lexicographic order of the
/// sequences.
pub fn linear_extensions(p: &StrictPartialOrder, limits: &Limits) -> Result<Vec<LinearOrder>> {
    let m = p.len();
    check_cap(
        "alternative count for linear extensions",
        limits.linear_extension_alts,
        m,
    )?;
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(m);
    linear_rec(p, full_mask(m), &mut seq, &mut out);
    Ok(out)
}

fn linear_rec(p: &StrictPartialOrder, remaining: u64, seq: &mut Vec<Alt>, out: &mut Vec<LinearOrder>) {
    if remaining == 0 {
        out.push(LinearOrder::from_sequence_unchecked(seq.clone()));
        return;
    }
    for a in members(sources(p, remaining)) {
        seq.push(a);
        linear_rec(p, remaining & !(1 << a.index()), seq, out);
        seq.pop();
    }
}
