//! Effect algebras in two representations behind one interface.

pub(crate) mod finite;
mod interval;
mod order;

pub use finite::{FiniteEffectAlgebra, Violation};
pub use interval::{Enumeration, IntervalEffectAlgebra};
pub use order::{classify_finite, classify_interval, OrderClass};

use std::fmt::Debug;
use std::hash::Hash;

use crate::verdict::{Budget, Finding};

/// Common partial-algebra interface of both carrier representations.
pub trait EffectAlgebra {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;
    /// `a + b` when defined.
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// `a ≤ b` iff `a + c = b` for some `c`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// The unique `c` with `a + c = b`, when `a ≤ b`.
    fn minus(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem>;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;
    fn show(&self, a: &Self::Elem) -> String;

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }
}

/// A parsed algebra of either kind.
#[derive(Clone, Debug)]
pub enum Host {
    Finite(FiniteEffectAlgebra),
    Interval(IntervalEffectAlgebra),
}

impl Host {
    /// The table form when the carrier is finite.
    pub fn finite(&self) -> Option<FiniteEffectAlgebra> {
        match self {
            Host::Finite(f) => Some(f.clone()),
            Host::Interval(i) => i.enumerate().ok().map(|e| e.algebra),
        }
    }

    pub fn check_rdp(&self, budget: &Budget) -> Finding {
        match self {
            Host::Finite(f) => f.check_rdp(),
            Host::Interval(i) => match i.enumerate() {
                Ok(e) => e.algebra.check_rdp(),
                Err(_) => i.check_rdp(budget),
            },
        }
    }
}
