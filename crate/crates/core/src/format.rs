//! Line-oriented text formats for profiles and constraint sets.
//!
//! Profile documents:
//!
//! ```text
//! # comment
//! alternatives: x, y, z
//! voter 1: {x} > {y, z}
//! voter 2: y > {x, z}
//! ```
//!
//! or, for strict partial orders, `voter <name> partial: a > c, c > b`. A
//! document holds one kind of voter only.
//!
//! Constraint documents:
//!
//! ```text
//! elements: a, b, c
//! nb: b | a, c
//! ```
//!
//! Everything from `#` to the end of a line is a comment. Errors carry a
//! 1-based line and column.

use std::fmt::Write as _;

use crate::alternative::{Alt, Alternatives};
use crate::error::{Error, Result};
use crate::nb::{NbConstraint, NbConstraintSet};
use crate::order::{LinearOrder, StrictPartialOrder, WeakOrder};
use crate::profile::{PartialProfile, Profile, Voter, WeakProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileDocument {
    Weak(WeakProfile),
    Partial(PartialProfile),
}

impl ProfileDocument {
    pub fn alternatives(&self) -> &Alternatives {
        match self {
            ProfileDocument::Weak(p) => p.alternatives(),
            ProfileDocument::Partial(p) => p.alternatives(),
        }
    }
}

/// A piece of a line with its byte offset inside the line.
#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    line: usize,
    /// the whole line, for column computation
    source: &'a str,
    offset: usize,
    text: &'a str,
}

impl<'a> Span<'a> {
    fn whole(line: usize, source: &'a str) -> Self {
        Span {
            line,
            source,
            offset: 0,
            text: source,
        }
    }

    fn column(&self) -> usize {
        self.source[..self.offset].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn sub(&self, start: usize, end: usize) -> Self {
        Span {
            text: &self.text[start..end],
            offset: self.offset + start,
            ..*self
        }
    }

    fn trim(&self) -> Self {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len().max(start);
        self.sub(start, end)
    }

    fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    fn split(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self.text.char_indices() {
            if c == sep {
                out.push(self.sub(start, i));
                start = i + c.len_utf8();
            }
        }
        out.push(self.sub(start, self.text.len()));
        out
    }

    /// Splits at the first `sep`.
    fn split_once(&self, sep: char) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(sep)?;
        Some((self.sub(0, i), self.sub(i + sep.len_utf8(), self.text.len())))
    }

    /// Strips `keyword:` from the front, tolerating spaces before the colon.
    fn strip_key(&self, keyword: &str) -> Option<Span<'a>> {
        let t = self.trim();
        let rest = t.text.strip_prefix(keyword)?;
        let after = rest.trim_start();
        let body = after.strip_prefix(':')?;
        let start = t.text.len() - body.len();
        Some(t.sub(start, t.text.len()))
    }
}

/// Content lines: comments stripped, blank lines skipped.
fn content_lines(text: &str) -> impl Iterator<Item = Span<'_>> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let span = Span::whole(k + 1, raw).sub(0, line.len());
        (!span.trim().is_empty()).then_some(span)
    })
}

fn parse_id_list(span: Span<'_>, what: &str) -> Result<Alternatives> {
    let mut ids = Vec::new();
    for item in span.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(item.error(format!("empty {what} id")));
        }
        if !crate::alternative::is_valid_id(item.text) {
            return Err(item.error(format!("invalid {what} id {:?}", item.text)));
        }
        if ids.contains(&item.text) {
            return Err(item.error(format!("duplicate {what} {:?}", item.text)));
        }
        ids.push(item.text);
    }
    Alternatives::new(ids).map_err(|e| span.error(e.to_string()))
}

fn lookup(alts: &Alternatives, span: Span<'_>) -> Result<Alt> {
    let span = span.trim();
    if span.is_empty() {
        return Err(span.error("expected an alternative"));
    }
    alts.lookup(span.text)
        .ok_or_else(|| span.error(format!("unknown alternative {:?}", span.text)))
}

enum VoterLine<'a> {
    Weak(String, Span<'a>),
    Partial(String, Span<'a>),
}

fn parse_voter_header<'a>(line: Span<'a>) -> Result<VoterLine<'a>> {
    let t = line.trim();
    let Some(rest) = t.text.strip_prefix("voter") else {
        return Err(t.error("expected `voter <name>: ...`"));
    };
    if !rest.starts_with(char::is_whitespace) {
        return Err(t.error("expected `voter <name>: ...`"));
    }
    let rest = t.sub(5, t.text.len());
    let Some((head, body)) = rest.split_once(':') else {
        return Err(rest.error("missing `:` after the voter name"));
    };
    let words: Vec<&str> = head.text.split_whitespace().collect();
    match words.as_slice() {
        [name] => Ok(VoterLine::Weak(name.to_string(), body)),
        [name, "partial"] => Ok(VoterLine::Partial(name.to_string(), body)),
        [] => Err(head.error("missing voter name")),
        _ => Err(head
            .trim()
            .error("voter names are a single token, optionally followed by `partial`")),
    }
}

fn parse_weak_body(alts: &Alternatives, body: Span<'_>) -> Result<WeakOrder> {
    let m = alts.len();
    let mut seen = vec![false; m];
    let mut classes = Vec::new();
    for class in body.split('>') {
        let class = class.trim();
        if class.is_empty() {
            return Err(class.error("empty indifference class"));
        }
        let inner = if class.text.starts_with('{') {
            if !class.text.ends_with('}') {
                return Err(class.error("unclosed `{`"));
            }
            class.sub(1, class.text.len() - 1)
        } else {
            class
        };
        let mut members = Vec::new();
        for item in inner.split(',') {
            let a = lookup(alts, item)?;
            if seen[a.index()] {
                return Err(item.trim().error(format!("alternative {:?} appears twice", alts.id(a))));
            }
            seen[a.index()] = true;
            members.push(a);
        }
        classes.push(members);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(body.error(format!(
            "classes do not partition the alternatives: {:?} is missing",
            alts.id(Alt::new(missing))
        )));
    }
    WeakOrder::new(m, classes).map_err(|e| body.error(e.to_string()))
}

fn parse_partial_body(alts: &Alternatives, body: Span<'_>) -> Result<StrictPartialOrder> {
    let mut pairs = Vec::new();
    if !body.trim().is_empty() {
        for item in body.split(',') {
            let chain = item.split('>');
            if chain.len() < 2 {
                return Err(item.trim().error("expected a strict pair `a > b`"));
            }
            let chain: Vec<Alt> = chain.into_iter().map(|s| lookup(alts, s)).collect::<Result<_>>()?;
            pairs.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
    }
    StrictPartialOrder::new(alts.len(), pairs).map_err(|e| body.error(e.to_string()))
}

/// Parses a profile document of either kind. A document without voters is
/// read as a weak-order profile.
pub fn parse_profile(text: &str) -> Result<ProfileDocument> {
    let mut lines = content_lines(text);
    let Some(first) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty document: expected `alternatives: ...`".into(),
        });
    };
    let Some(list) = first.strip_key("alternatives") else {
        return Err(first.trim().error("the first line must be `alternatives: ...`"));
    };
    let alts = parse_id_list(list, "alternative")?;
    if alts.is_empty() {
        return Err(list.error("at least one alternative is required"));
    }

    let mut weak = Vec::new();
    let mut partial = Vec::new();
    for line in lines {
        match parse_voter_header(line)? {
            VoterLine::Weak(name, body) => {
                if !partial.is_empty() {
                    return Err(line.trim().error("weak-order voter in a partial-order document"));
                }
                weak.push(Voter {
                    name,
                    relation: parse_weak_body(&alts, body)?,
                });
            }
            VoterLine::Partial(name, body) => {
                if !weak.is_empty() {
                    return Err(line.trim().error("partial-order voter in a weak-order document"));
                }
                partial.push(Voter {
                    name,
                    relation: parse_partial_body(&alts, body)?,
                });
            }
        }
    }
    Ok(if partial.is_empty() {
        ProfileDocument::Weak(Profile::new(alts, weak)?)
    } else {
        ProfileDocument::Partial(Profile::new(alts, partial)?)
    })
}

pub fn parse_weak_profile(text: &str) -> Result<WeakProfile> {
    match parse_profile(text)? {
        ProfileDocument::Weak(p) => Ok(p),
        ProfileDocument::Partial(_) => Err(Error::input("expected weak-order voters, found partial orders")),
    }
}

/// Parses a partial-order document. Weak-order voters are accepted too and
/// read as the strict part of their relation, so a voter-less document is an
/// empty partial-order profile.
pub fn parse_partial_profile(text: &str) -> Result<PartialProfile> {
    match parse_profile(text)? {
        ProfileDocument::Partial(p) => Ok(p),
        ProfileDocument::Weak(p) => {
            let m = p.alt_count();
            let voters = p
                .voters()
                .iter()
                .map(|v| {
                    let pairs = (0..m)
                        .flat_map(|a| (0..m).map(move |b| (Alt::new(a), Alt::new(b))))
                        .filter(|&(a, b)| v.relation.prefers(a, b));
                    Ok(Voter {
                        name: v.name.clone(),
                        relation: StrictPartialOrder::new(m, pairs)?,
                    })
                })
                .collect::<Result<_>>()?;
            Profile::new(p.alternatives().clone(), voters)
        }
    }
}

fn write_header(out: &mut String, key: &str, alts: &Alternatives) {
    let _ = writeln!(out, "{key}: {}", alts.ids().join(", "));
}

pub fn write_weak_profile(profile: &WeakProfile) -> String {
    let alts = profile.alternatives();
    let mut out = String::new();
    write_header(&mut out, "alternatives", alts);
    for v in profile.voters() {
        let classes: Vec<String> = v
            .relation
            .classes()
            .iter()
            .map(|c| format!("{{{}}}", alts.names(c).join(", ")))
            .collect();
        let _ = writeln!(out, "voter {}: {}", v.name, classes.join(" > "));
    }
    out
}

/// Writes each voter's covering pairs; closing them restores the relation.
pub fn write_partial_profile(profile: &PartialProfile) -> String {
    let alts = profile.alternatives();
    let mut out = String::new();
    write_header(&mut out, "alternatives", alts);
    for v in profile.voters() {
        let pairs: Vec<String> = v
            .relation
            .covering_pairs()
            .into_iter()
            .map(|(a, b)| format!("{} > {}", alts.id(a), alts.id(b)))
            .collect();
        if pairs.is_empty() {
            let _ = writeln!(out, "voter {} partial:", v.name);
        } else {
            let _ = writeln!(out, "voter {} partial: {}", v.name, pairs.join(", "));
        }
    }
    out
}

pub fn write_profile(doc: &ProfileDocument) -> String {
    match doc {
        ProfileDocument::Weak(p) => write_weak_profile(p),
        ProfileDocument::Partial(p) => write_partial_profile(p),
    }
}

pub fn parse_nb(text: &str) -> Result<NbConstraintSet> {
    let mut lines = content_lines(text);
    let Some(first) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty document: expected `elements: ...`".into(),
        });
    };
    let Some(list) = first.strip_key("elements") else {
        return Err(first.trim().error("the first line must be `elements: ...`"));
    };
    let elements = parse_id_list(list, "element")?;
    let mut cs = NbConstraintSet::empty(elements.clone());
    for line in lines {
        let Some(body) = line.strip_key("nb") else {
            return Err(line.trim().error("expected `nb: <middle> | <x>, <z>`"));
        };
        let Some((middle, outer)) = body.split_once('|') else {
            return Err(body.trim().error("missing `|` between the middle and the outer pair"));
        };
        let outer = outer.split(',');
        if outer.len() != 2 {
            return Err(outer[0].trim().error("the outer pair needs exactly two elements"));
        }
        let y = lookup(&elements, middle)?;
        let x = lookup(&elements, outer[0])?;
        let z = lookup(&elements, outer[1])?;
        let c = NbConstraint::new(y, x, z).map_err(|e| body.trim().error(e.to_string()))?;
        cs.insert(c).map_err(|e| body.error(e.to_string()))?;
    }
    Ok(cs)
}

pub fn write_nb(cs: &NbConstraintSet) -> String {
    let alts = cs.elements();
    let mut out = String::new();
    write_header(&mut out, "elements", alts);
    for c in cs.iter() {
        let (x, z) = c.outer();
        let _ = writeln!(out, "nb: {} | {}, {}", alts.id(c.middle()), alts.id(x), alts.id(z));
    }
    out
}

/// Parses `x>y>z` (spaces allowed) into an order over `alts`.
pub fn parse_order(alts: &Alternatives, text: &str) -> Result<LinearOrder> {
    let span = Span::whole(1, text);
    let seq = span
        .split('>')
        .into_iter()
        .map(|s| lookup(alts, s))
        .collect::<Result<Vec<_>>>()?;
    LinearOrder::new(alts.len(), seq).map_err(|e| Error::input(format!("order {text:?}: {e}")))
}

pub fn format_order(alts: &Alternatives, order: &LinearOrder) -> String {
    alts.names(order.sequence()).join(">")
}

/// `{a, b}` for a set of alternatives.
pub fn format_set(alts: &Alternatives, set: &[Alt]) -> String {
    format!("{{{}}}", alts.names(set).join(", "))
}
