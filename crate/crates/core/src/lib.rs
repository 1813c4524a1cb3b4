//! Effect algebras: finite partial-addition tables, interval algebras over
//! rational-vector po-groups, ideals, states, and lexicographic representations.

pub mod commands;
pub mod effalg;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod ideals;
pub mod lexrep;
pub mod morphisms;
pub mod pogroup;
pub mod states;
pub mod predicate;
pub mod report;
pub mod sampling;
pub mod vector;
pub mod verdict;

pub use effalg::{EffectAlgebra, FiniteEffectAlgebra, Host, IntervalEffectAlgebra};
pub use error::{Error, Result};
pub use pogroup::{ConePoGroup, ConeSpec, Domain};
pub use predicate::Pred;
pub use vector::{Rat, Vector};
pub use verdict::{Budget, Checks, Finding, Verdict};
