//! Answers for properties that may only be checkable on a bounded window.

use std::fmt;

use serde::Serialize;

/// Search limits attached to any answer that was not proved outright.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Integer half-width of the coordinate window.
    pub window: i128,
    /// Number of random samples drawn per property.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            window: 5,
            samples: 200,
            seed: 0,
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window ±{}, {} samples, seed {}",
            self.window, self.samples, self.seed
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "budget", rename_all = "lowercase")]
pub enum Verdict {
    /// Holds by an exhaustive scan or a structural argument.
    Proved,
    /// Held on every tested instance within the budget.
    Witnessed(Budget),
    /// Fails; the budget is present when the refutation is window-relative.
    Refuted(Option<Budget>),
    /// Could not be settled within the budget.
    Unknown(Budget),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Proved
        } else {
            Verdict::Refuted(None)
        }
    }

    /// Sampled answer: witnessed on success, window-relative refutation otherwise.
    pub fn sampled(b: bool, budget: Budget) -> Verdict {
        if b {
            Verdict::Witnessed(budget)
        } else {
            Verdict::Refuted(Some(budget))
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Proved | Verdict::Witnessed(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn budget(&self) -> Option<Budget> {
        match self {
            Verdict::Proved | Verdict::Refuted(None) => None,
            Verdict::Witnessed(b) | Verdict::Refuted(Some(b)) | Verdict::Unknown(b) => Some(*b),
        }
    }

    /// Conjunction: any refutation wins, then unknown, then sampled evidence.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Refuted(a), _) => Refuted(a),
            (_, Refuted(b)) => Refuted(b),
            (Unknown(a), _) => Unknown(a),
            (_, Unknown(b)) => Unknown(b),
            (Witnessed(a), _) => Witnessed(a),
            (_, Witnessed(b)) => Witnessed(b),
            (Proved, Proved) => Proved,
        }
    }

    /// Negation, keeping the evidence strength.
    pub fn not(self) -> Verdict {
        match self {
            Verdict::Proved => Verdict::Refuted(None),
            Verdict::Witnessed(b) => Verdict::Refuted(Some(b)),
            Verdict::Refuted(None) => Verdict::Proved,
            Verdict::Refuted(Some(b)) => Verdict::Witnessed(b),
            Verdict::Unknown(b) => Verdict::Unknown(b),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proved => "proved",
            Verdict::Witnessed(_) => "witnessed",
            Verdict::Refuted(None) => "refuted",
            Verdict::Refuted(Some(_)) => "refuted (window)",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.budget() {
            Some(b) => write!(f, "{} [{}]", self.label(), b),
            None => write!(f, "{}", self.label()),
        }
    }
}

/// A verdict together with a human-readable witness or counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub verdict: Verdict,
    pub detail: String,
}

impl Finding {
    pub fn new(verdict: Verdict, detail: impl Into<String>) -> Self {
        Finding {
            verdict,
            detail: detail.into(),
        }
    }

    pub fn proved(detail: impl Into<String>) -> Self {
        Self::new(Verdict::Proved, detail)
    }

    pub fn refuted(detail: impl Into<String>) -> Self {
        Self::new(Verdict::Refuted(None), detail)
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// Named findings, in report order.
pub type Checks = Vec<(String, Finding)>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_prefers_refutation() {
        let b = Budget::default();
        assert_eq!(Verdict::Proved.and(Verdict::Witnessed(b)), Verdict::Witnessed(b));
        assert_eq!(Verdict::Unknown(b).and(Verdict::Refuted(None)), Verdict::Refuted(None));
        assert_eq!(Verdict::Witnessed(b).not(), Verdict::Refuted(Some(b)));
        assert!(!Verdict::Unknown(b).holds());
    }
}
