//! The bundled example algebras, embedded from `fixtures/*.ea`.

use crate::effalg::Host;
use crate::format::{self, Document};
use crate::{Error, Result};

/// `(name, source text)` for every bundled file.
pub const ALL: &[(&str, &str)] = &[
    ("C1", include_str!("../../../fixtures/C1.ea")),
    ("C2", include_str!("../../../fixtures/C2.ea")),
    ("C3", include_str!("../../../fixtures/C3.ea")),
    ("C4", include_str!("../../../fixtures/C4.ea")),
    ("HS4", include_str!("../../../fixtures/HS4.ea")),
    ("B4", include_str!("../../../fixtures/B4.ea")),
    ("P22", include_str!("../../../fixtures/P22.ea")),
    ("B8", include_str!("../../../fixtures/B8.ea")),
    ("LEX1", include_str!("../../../fixtures/LEX1.ea")),
    ("LEX21", include_str!("../../../fixtures/LEX21.ea")),
    ("LEX3", include_str!("../../../fixtures/LEX3.ea")),
    ("SQ", include_str!("../../../fixtures/SQ.ea")),
    ("K61", include_str!("../../../fixtures/K61.ea")),
];

pub fn source(name: &str) -> Result<&'static str> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Unsupported(format!("no fixture named {}", name)))
}

pub fn document(name: &str) -> Result<Document> {
    format::parse(source(name)?)
}

pub fn host(name: &str) -> Result<Host> {
    document(name)?.host()
}

/// Fixtures whose carrier is finite, with their tables.
pub fn finite() -> Vec<(&'static str, crate::FiniteEffectAlgebra)> {
    ALL.iter()
        .filter_map(|(n, _)| host(n).ok()?.finite().map(|f| (*n, f)))
        .collect()
}
