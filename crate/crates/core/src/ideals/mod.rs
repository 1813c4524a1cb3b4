//! Ideals on both carrier representations: generation, primes, radical,
//! quotients, and the strict / retractive / lexicographic classification.

pub mod finite;
pub mod symbolic;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::effalg::FiniteEffectAlgebra;
use crate::predicate::Pred;

/// How a generated ideal was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generation {
    /// Finite sums of elements below the generators (valid on RDP hosts).
    RieszSums,
    /// Fixpoint of downward and sum closure.
    Closure,
    /// Zero coordinates of the convex subgroup generated in the group.
    ConeFaces,
}

impl fmt::Display for Generation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generation::RieszSums => "sums below generators",
            Generation::Closure => "closure fixpoint",
            Generation::ConeFaces => "cone faces",
        })
    }
}

/// An explicit element set or a membership predicate on the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ideal {
    Finite(BTreeSet<usize>),
    Symbolic(Pred),
}

impl Ideal {
    pub fn describe_in(&self, e: Option<&FiniteEffectAlgebra>) -> String {
        match (self, e) {
            (Ideal::Finite(s), Some(e)) => format!(
                "{{{}}}",
                s.iter().map(|&i| e.label(i)).collect::<Vec<_>>().join(", ")
            ),
            (Ideal::Finite(s), None) => format!("{:?}", s),
            (Ideal::Symbolic(p), _) => format!("{{x ∈ E : {}}}", p),
        }
    }
}

/// Result of looking for the largest strict ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LargestStrict {
    /// Union of the nontrivial strict ideals.
    Nontrivial(Ideal),
    /// No nontrivial strict ideal; only `{0}` is (weakly) strict.
    WeakZero,
}

impl LargestStrict {
    pub fn nontrivial(&self) -> Option<&Ideal> {
        match self {
            LargestStrict::Nontrivial(i) => Some(i),
            LargestStrict::WeakZero => None,
        }
    }
}

/// Largest strict ideal of a finite host.
pub fn largest_strict_finite(e: &FiniteEffectAlgebra) -> LargestStrict {
    let strict = finite::strict_ideals(e);
    match strict.last() {
        Some(top) if strict.iter().all(|i| i.is_subset(top)) => {
            LargestStrict::Nontrivial(Ideal::Finite(top.clone()))
        }
        Some(_) => {
            let union: BTreeSet<usize> = strict.iter().flatten().copied().collect();
            LargestStrict::Nontrivial(Ideal::Finite(finite::closure(e, &union)))
        }
        None => LargestStrict::WeakZero,
    }
}
