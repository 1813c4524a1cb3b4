//! Command output: sections of asserted checks, informational facts and notes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::verdict::{Budget, Finding};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Item {
    /// Counts toward the exit code.
    Check { name: String, finding: Finding },
    Fact { name: String, finding: Finding },
    Note { key: String, value: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    pub items: Vec<Item>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section {
            title: title.into(),
            items: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, finding: Finding) -> &mut Self {
        self.items.push(Item::Check {
            name: name.into(),
            finding,
        });
        self
    }

    pub fn fact(&mut self, name: impl Into<String>, finding: Finding) -> &mut Self {
        self.items.push(Item::Fact {
            name: name.into(),
            finding,
        });
        self
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.items.push(Item::Note {
            key: key.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn checks<'a>(&mut self, list: impl IntoIterator<Item = &'a (String, Finding)>) -> &mut Self {
        for (n, f) in list {
            self.check(n.clone(), f.clone());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub budget: Budget,
    pub sections: Vec<Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
    Undecided,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::Violated => 1,
            Outcome::Undecided => 2,
        }
    }
}

impl Report {
    pub fn new(command: &str, input: &str, budget: Budget) -> Self {
        Report {
            command: command.to_string(),
            input: input.to_string(),
            budget,
            sections: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn section(&mut self, title: impl Into<String>) -> &mut Section {
        self.sections.push(Section::new(title));
        self.sections.last_mut().unwrap()
    }

    pub fn asserted(&self) -> impl Iterator<Item = (&str, &Finding)> {
        self.sections.iter().flat_map(|s| &s.items).filter_map(|i| match i {
            Item::Check { name, finding } => Some((name.as_str(), finding)),
            _ => None,
        })
    }

    pub fn find(&self, name: &str) -> Option<&Finding> {
        self.sections.iter().flat_map(|s| &s.items).find_map(|i| match i {
            Item::Check { name: n, finding } | Item::Fact { name: n, finding } if n == name => Some(finding),
            _ => None,
        })
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.sections.iter().flat_map(|s| &s.items).find_map(|i| match i {
            Item::Note { key: k, value } if k == key => Some(value.as_str()),
            _ => None,
        })
    }

    pub fn outcome(&self) -> Outcome {
        let verdicts: Vec<_> = self.asserted().map(|(_, f)| f.verdict).collect();
        if verdicts.iter().any(|v| v.is_refuted()) {
            Outcome::Violated
        } else if verdicts.iter().any(|v| v.is_unknown()) {
            Outcome::Undecided
        } else {
            Outcome::Holds
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "effectkit {} {}", self.command, self.input);
        let _ = writeln!(s, "budget: {}", self.budget);
        for sec in &self.sections {
            let _ = writeln!(s, "\n[{}]", sec.title);
            for item in &sec.items {
                let _ = match item {
                    Item::Check { name, finding } => {
                        writeln!(s, "  check {}: {} ({})", name, finding.verdict, finding.detail)
                    }
                    Item::Fact { name, finding } => {
                        writeln!(s, "  fact  {}: {} ({})", name, finding.verdict, finding.detail)
                    }
                    Item::Note { key, value } => writeln!(s, "  {}: {}", key, value),
                };
            }
        }
        let outcome = match self.outcome() {
            Outcome::Holds => "all asserted properties hold",
            Outcome::Violated => "violation found",
            Outcome::Undecided => "unknown after budget",
        };
        let _ = writeln!(s, "\nresult: {}", outcome);
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed: {} ms", ms);
        }
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            #[serde(flatten)]
            report: &'a Report,
            exit_code: i32,
        }
        serde_json::to_string_pretty(&Wire {
            report: self,
            exit_code: self.outcome().exit_code(),
        })
        .expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Verdict;

    #[test]
    fn exit_codes_follow_the_worst_check() {
        let b = Budget::default();
        let mut r = Report::new("rdp", "X", b);
        r.section("s").check("a", Finding::proved("ok")).fact("f", Finding::refuted("info"));
        assert_eq!(r.outcome(), Outcome::Holds);
        r.section("t").check("b", Finding::new(Verdict::Unknown(b), "?"));
        assert_eq!(r.outcome().exit_code(), 2);
        r.section("u").check("c", Finding::refuted("no"));
        assert_eq!(r.outcome().exit_code(), 1);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["exit_code"], 1);
        assert_eq!(json["sections"][1]["items"][0]["finding"]["verdict"]["budget"]["samples"], 200);
    }
}
