//! The line-oriented `.ea` document format.
//!
//! ```text
//! # a comment
//! algebra C2
//!   kind table
//!   elements 0 a 1
//!   zero 0
//!   one 1
//!   a + a = 1
//! end
//!
//! algebra LEX1
//!   kind interval
//!   domain Z
//!   rank 2
//!   cone lex(product(1), product(1))
//!   unit (1,0)
//!   split 1 1
//! end
//! ```
//!
//! Sums with `0` are implied. `split h t` declares the cone as
//! `lex(first h coordinates, last t)`. Rationals are written `p/q`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::effalg::{FiniteEffectAlgebra, Host, IntervalEffectAlgebra};
use crate::pogroup::{ConePoGroup, ConeSpec, Domain};
use crate::vector::{parse_vector, Vector};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Table {
        labels: Vec<String>,
        zero: usize,
        one: usize,
        /// `a + b = c` with `a ≤ b` by index and neither summand zero.
        sums: BTreeSet<(usize, usize, usize)>,
    },
    Interval {
        domain: Domain,
        cone: ConeSpec,
        unit: Vector,
        split: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub body: Body,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Fields {
    kind: Option<(usize, String)>,
    elements: Option<(usize, Vec<String>)>,
    zero: Option<(usize, String)>,
    one: Option<(usize, String)>,
    sums: Vec<(usize, String, String, String)>,
    domain: Option<(usize, String)>,
    rank: Option<(usize, String)>,
    cone: Option<(usize, String)>,
    unit: Option<(usize, String)>,
    split: Option<(usize, String)>,
}

fn set<T>(slot: &mut Option<(usize, T)>, line: usize, key: &str, v: T) -> Result<()> {
    if slot.is_some() {
        return Err(err(line, format!("duplicate '{}'", key)));
    }
    *slot = Some((line, v));
    Ok(())
}

fn parse_sum(line: usize, s: &str) -> Result<(String, String, String)> {
    let (lhs, c) = s
        .split_once('=')
        .ok_or_else(|| err(line, format!("expected 'a + b = c', found '{}'", s)))?;
    let (a, b) = lhs
        .split_once('+')
        .ok_or_else(|| err(line, format!("expected '+' in '{}'", s)))?;
    let parts = [a.trim(), b.trim(), c.trim()];
    if let Some(p) = parts.iter().position(|p| p.is_empty() || p.contains(char::is_whitespace)) {
        let what = ["left summand", "right summand", "result"][p];
        return Err(err(line, format!("missing or malformed {} in '{}'", what, s.trim())));
    }
    Ok((parts[0].into(), parts[1].into(), parts[2].into()))
}

/// Parses a single algebra block.
pub fn parse(text: &str) -> Result<Document> {
    let mut docs = parse_all(text)?;
    match docs.len() {
        1 => Ok(docs.remove(0)),
        n => Err(err(1, format!("expected one algebra block, found {}", n))),
    }
}

/// Parses every algebra block in the text.
pub fn parse_all(text: &str) -> Result<Vec<Document>> {
    let mut out = Vec::new();
    let mut open: Option<(usize, String, Fields)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        let (key, rest) = match s.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (s, ""),
        };
        let Some((_, _, f)) = open.as_mut() else {
            if key != "algebra" || rest.is_empty() || rest.contains(char::is_whitespace) {
                return Err(err(line, "expected 'algebra NAME'"));
            }
            open = Some((line, rest.to_string(), Fields::default()));
            continue;
        };
        match key {
            "end" => {
                let (start, name, f) = open.take().unwrap();
                out.push(build(start, line, name, f)?);
            }
            "algebra" => return Err(err(line, "nested 'algebra' before 'end'")),
            "kind" => set(&mut f.kind, line, key, rest.to_string())?,
            "elements" => {
                let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if labels.is_empty() {
                    return Err(err(line, "no elements listed"));
                }
                set(&mut f.elements, line, key, labels)?
            }
            "zero" => set(&mut f.zero, line, key, rest.to_string())?,
            "one" => set(&mut f.one, line, key, rest.to_string())?,
            "domain" => set(&mut f.domain, line, key, rest.to_string())?,
            "rank" => set(&mut f.rank, line, key, rest.to_string())?,
            "cone" => set(&mut f.cone, line, key, rest.to_string())?,
            "unit" => set(&mut f.unit, line, key, rest.to_string())?,
            "split" => set(&mut f.split, line, key, rest.to_string())?,
            _ if s.contains('+') || s.contains('=') => {
                let (a, b, c) = parse_sum(line, s)?;
                f.sums.push((line, a, b, c));
            }
            _ => return Err(err(line, format!("unknown keyword '{}'", key))),
        }
    }
    if let Some((start, name, _)) = open {
        return Err(err(start, format!("algebra {} has no 'end'", name)));
    }
    Ok(out)
}

fn need<T>(slot: Option<(usize, T)>, end: usize, key: &str) -> Result<(usize, T)> {
    slot.ok_or_else(|| err(end, format!("missing '{}'", key)))
}

fn build(start: usize, end: usize, name: String, f: Fields) -> Result<Document> {
    let (kline, kind) = need(f.kind, end, "kind")?;
    let body = match kind.as_str() {
        "table" => {
            for (slot, key) in [(&f.domain, "domain"), (&f.cone, "cone"), (&f.unit, "unit"), (&f.split, "split")] {
                if let Some((l, _)) = slot {
                    return Err(err(*l, format!("'{}' is not allowed in a table", key)));
                }
            }
            let (eline, labels) = need(f.elements, end, "elements")?;
            let mut seen = BTreeSet::new();
            for l in &labels {
                if !seen.insert(l) || l.contains(['+', '=']) {
                    return Err(err(eline, format!("bad or repeated label '{}'", l)));
                }
            }
            let find = |line: usize, l: &str| {
                labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| err(line, format!("unknown element '{}'", l)))
            };
            let (zl, z) = need(f.zero, end, "zero")?;
            let (ol, o) = need(f.one, end, "one")?;
            let zero = find(zl, &z)?;
            let one = find(ol, &o)?;
            let mut sums = BTreeSet::new();
            let mut seen_pairs = std::collections::BTreeMap::new();
            for (line, a, b, c) in &f.sums {
                let (a, b, c) = (find(*line, a)?, find(*line, b)?, find(*line, c)?);
                if a == zero || b == zero {
                    let other = if a == zero { b } else { a };
                    if c != other {
                        return Err(err(*line, "a sum with 0 must return the other summand"));
                    }
                    continue;
                }
                if let Some(&old) = seen_pairs.get(&(a.min(b), a.max(b))) {
                    if old != c {
                        return Err(err(*line, format!("conflicting value for {} + {}", labels[a], labels[b])));
                    }
                }
                seen_pairs.insert((a.min(b), a.max(b)), c);
                sums.insert((a.min(b), a.max(b), c));
            }
            let body = Body::Table {
                labels,
                zero,
                one,
                sums,
            };
            host_of(&body).map_err(|e| err(start, e.to_string()))?;
            body
        }
        "interval" => {
            let table_line = [
                f.elements.as_ref().map(|(l, _)| *l),
                f.zero.as_ref().map(|(l, _)| *l),
                f.one.as_ref().map(|(l, _)| *l),
            ];
            if let Some(l) = table_line.into_iter().flatten().min() {
                return Err(err(l, "table entries are not allowed in an interval"));
            }
            if let Some((l, ..)) = f.sums.first() {
                return Err(err(*l, "sums are not allowed in an interval"));
            }
            let domain = match f.domain {
                Some((l, d)) => d.parse().map_err(|e: Error| err(l, e.to_string()))?,
                None => Domain::Integer,
            };
            let (cl, c) = need(f.cone, end, "cone")?;
            let cone: ConeSpec = c.parse().map_err(|e: Error| err(cl, e.to_string()))?;
            if let Some((l, r)) = f.rank {
                let r: usize = r.parse().map_err(|_| err(l, format!("bad rank '{}'", r)))?;
                if r != cone.rank() {
                    return Err(err(l, format!("rank {} but the cone has rank {}", r, cone.rank())));
                }
            }
            let (ul, u) = need(f.unit, end, "unit")?;
            let unit = parse_vector(&u).ok_or_else(|| err(ul, format!("bad vector '{}'", u)))?;
            let split = match f.split {
                None => None,
                Some((l, s)) => {
                    let parts: Vec<usize> = s
                        .split_whitespace()
                        .map(|p| p.parse().map_err(|_| err(l, format!("bad split '{}'", s))))
                        .collect::<Result<_>>()?;
                    match parts[..] {
                        [h, t] if h + t == cone.rank() && h > 0 && t > 0 => Some(h),
                        _ => return Err(err(l, format!("split must be 'head tail' ranks summing to {}", cone.rank()))),
                    }
                }
            };
            let body = Body::Interval {
                domain,
                cone,
                unit,
                split,
            };
            host_of(&body).map_err(|e| err(kline, e.to_string()))?;
            body
        }
        other => return Err(err(kline, format!("unknown kind '{}'", other))),
    };
    Ok(Document { name, body })
}

fn host_of(body: &Body) -> Result<Host> {
    match body {
        Body::Table {
            labels,
            zero,
            one,
            sums,
        } => {
            let mut all: Vec<(usize, usize, usize)> = sums.iter().copied().collect();
            all.extend((0..labels.len()).map(|i| (*zero, i, i)));
            Ok(Host::Finite(FiniteEffectAlgebra::from_sums(labels.clone(), *zero, *one, &all)?))
        }
        Body::Interval {
            domain,
            cone,
            unit,
            split,
        } => {
            let g = ConePoGroup::new(*domain, cone.clone(), None)?;
            let mut e = IntervalEffectAlgebra::gamma(&g, unit)?;
            if let Some(k) = split {
                e = e.with_split(*k)?;
            }
            Ok(Host::Interval(e))
        }
    }
}

impl Document {
    pub fn host(&self) -> Result<Host> {
        host_of(&self.body)
    }

    pub fn from_host(name: &str, host: &Host) -> Document {
        let body = match host {
            Host::Finite(f) => Body::Table {
                labels: f.labels().to_vec(),
                zero: f.zero_idx(),
                one: f.one_idx(),
                sums: f
                    .sum_triples()
                    .into_iter()
                    .filter(|&(a, b, _)| a <= b && a != f.zero_idx() && b != f.zero_idx())
                    .collect(),
            },
            Host::Interval(e) => Body::Interval {
                domain: e.group().domain(),
                cone: e.cone().clone(),
                unit: e.unit().clone(),
                split: e.split(),
            },
        };
        Document {
            name: name.to_string(),
            body,
        }
    }

    /// Canonical text; `parse(emit(d)) == d`.
    pub fn emit(&self) -> String {
        let mut s = format!("algebra {}\n", self.name);
        match &self.body {
            Body::Table {
                labels,
                zero,
                one,
                sums,
            } => {
                s.push_str("  kind table\n");
                let _ = writeln!(s, "  elements {}", labels.join(" "));
                let _ = writeln!(s, "  zero {}", labels[*zero]);
                let _ = writeln!(s, "  one {}", labels[*one]);
                for &(a, b, c) in sums {
                    let _ = writeln!(s, "  {} + {} = {}", labels[a], labels[b], labels[c]);
                }
            }
            Body::Interval {
                domain,
                cone,
                unit,
                split,
            } => {
                s.push_str("  kind interval\n");
                let _ = writeln!(s, "  domain {}", domain.symbol());
                let _ = writeln!(s, "  rank {}", cone.rank());
                let _ = writeln!(s, "  cone {}", cone);
                let _ = writeln!(s, "  unit {}", unit_text(unit));
                if let Some(k) = split {
                    let _ = writeln!(s, "  split {} {}", k, cone.rank() - k);
                }
            }
        }
        s.push_str("end\n");
        s
    }
}

fn unit_text(u: &Vector) -> String {
    if u.rank() == 1 {
        format!("({})", u)
    } else {
        u.to_string()
    }
}
