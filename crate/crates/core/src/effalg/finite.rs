use std::collections::BTreeSet;
use std::fmt;

use super::EffectAlgebra;
use crate::verdict::{Finding, Verdict};
use crate::{Error, Result};

/// Partial-addition table over `n` labelled elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteEffectAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<Option<usize>>>,
    zero: usize,
    one: usize,
    order: Vec<Vec<bool>>,
    diff: Vec<Vec<Option<usize>>>,
}

/// First failure found by [`FiniteEffectAlgebra::verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub elements: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.message)
    }
}

impl FiniteEffectAlgebra {
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<Option<usize>>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Table("no elements".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Table(format!("table is not {}×{}", n, n)));
        }
        if zero >= n || one >= n {
            return Err(Error::Table("zero or one out of range".into()));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if let Some(k) = c {
                    if *k >= n {
                        return Err(Error::Table(format!(
                            "entry {}+{} = #{} out of range",
                            labels[i], labels[j], k
                        )));
                    }
                }
            }
        }
        let mut order = vec![vec![false; n]; n];
        let mut diff = vec![vec![None; n]; n];
        for a in 0..n {
            for c in 0..n {
                if let Some(b) = table[a][c] {
                    order[a][b] = true;
                    if diff[a][b].is_none() {
                        diff[a][b] = Some(c);
                    }
                }
            }
        }
        Ok(FiniteEffectAlgebra {
            labels,
            table,
            zero,
            one,
            order,
            diff,
        })
    }

    /// Builds the table from unordered triples `a + b = c`; each triple
    /// fills both `(a,b)` and `(b,a)`.
    pub fn from_sums(
        labels: Vec<String>,
        zero: usize,
        one: usize,
        sums: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut table = vec![vec![None; n]; n];
        for &(a, b, c) in sums {
            if a >= n || b >= n || c >= n {
                return Err(Error::Table("sum index out of range".into()));
            }
            for (x, y) in [(a, b), (b, a)] {
                match table[x][y] {
                    Some(old) if old != c => {
                        return Err(Error::Table(format!(
                            "conflicting sums {}+{} = {} and = {}",
                            labels[x], labels[y], labels[old], labels[c]
                        )))
                    }
                    _ => table[x][y] = Some(c),
                }
            }
        }
        Self::from_table(labels, table, zero, one)
    }

    /// The chain `0 < 1 < ... < n`, i.e. the interval `[0, n]` of the integers.
    pub fn chain(n: usize) -> Self {
        let labels = (0..=n).map(|i| i.to_string()).collect();
        let table = (0..=n)
            .map(|i| (0..=n).map(|j| (i + j <= n).then_some(i + j)).collect())
            .collect();
        Self::from_table(labels, table, 0, n).expect("chain table is well formed")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero_idx(&self) -> usize {
        self.zero
    }

    pub fn one_idx(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    pub fn sub(&self, b: usize, a: usize) -> Option<usize> {
        self.diff[a][b]
    }

    pub fn comp(&self, a: usize) -> usize {
        self.diff[a][self.one].unwrap_or(a)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.order[a][b] || self.order[b][a]
    }

    /// Unordered triples `a + b = c` with `a ≤ b` by index.
    pub fn sum_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a..self.len() {
                if let Some(c) = self.table[a][b] {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Number of defined sums per element.
    pub fn degrees(&self) -> Vec<usize> {
        self.table
            .iter()
            .map(|row| row.iter().filter(|c| c.is_some()).count())
            .collect()
    }

    fn viol(&self, axiom: &'static str, elements: Vec<usize>, message: String) -> Violation {
        Violation {
            axiom,
            elements,
            message,
        }
    }

    /// Axioms (i)–(iv) plus the zero law, cancellativity and positivity.
    pub fn verify_axioms(&self) -> std::result::Result<(), Violation> {
        let n = self.len();
        let l = |i: usize| self.labels[i].as_str();
        let show = |c: Option<usize>| c.map_or("undefined".to_string(), |k| l(k).to_string());
        for a in 0..n {
            for b in 0..n {
                if self.table[a][b] != self.table[b][a] {
                    return Err(self.viol(
                        "(i) commutativity",
                        vec![a, b],
                        format!(
                            "{}+{} = {} but {}+{} = {}",
                            l(a),
                            l(b),
                            show(self.table[a][b]),
                            l(b),
                            l(a),
                            show(self.table[b][a])
                        ),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.table[a][b].and_then(|ab| self.table[ab][c]);
                    let right = self.table[b][c].and_then(|bc| self.table[a][bc]);
                    if left != right {
                        return Err(self.viol(
                            "(ii) associativity",
                            vec![a, b, c],
                            format!(
                                "({}+{})+{} = {} but {}+({}+{}) = {}",
                                l(a),
                                l(b),
                                l(c),
                                show(left),
                                l(a),
                                l(b),
                                l(c),
                                show(right)
                            ),
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            let comps: Vec<usize> = (0..n).filter(|&b| self.table[a][b] == Some(self.one)).collect();
            if comps.len() != 1 {
                let mut els = vec![a];
                els.extend(&comps);
                return Err(self.viol(
                    "(iii) unique complement",
                    els,
                    format!(
                        "{} has {} complements{}",
                        l(a),
                        comps.len(),
                        if comps.is_empty() {
                            String::new()
                        } else {
                            format!(
                                " ({})",
                                comps.iter().map(|&c| l(c)).collect::<Vec<_>>().join(", ")
                            )
                        }
                    ),
                ));
            }
        }
        for a in 0..n {
            if a != self.zero && self.table[a][self.one].is_some() {
                return Err(self.viol(
                    "(iv) zero-one law",
                    vec![a],
                    format!("{}+{} is defined with {} ≠ {}", l(a), l(self.one), l(a), l(self.zero)),
                ));
            }
        }
        for a in 0..n {
            if self.table[a][self.zero] != Some(a) {
                return Err(self.viol(
                    "zero law",
                    vec![a],
                    format!("{}+{} = {}", l(a), l(self.zero), show(self.table[a][self.zero])),
                ));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                for c in 0..n {
                    if let (Some(x), Some(y)) = (self.table[a][c], self.table[b][c]) {
                        if x == y {
                            return Err(self.viol(
                                "cancellativity",
                                vec![a, b, c],
                                format!("{}+{} = {}+{} = {}", l(a), l(c), l(b), l(c), l(x)),
                            ));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.table[a][b] == Some(self.zero) && (a != self.zero || b != self.zero) {
                    return Err(self.viol(
                        "positivity",
                        vec![a, b],
                        format!("{}+{} = {}", l(a), l(b), l(self.zero)),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn axiom_finding(&self) -> Finding {
        match self.verify_axioms() {
            Ok(()) => Finding::proved(format!("{} elements, exhaustive", self.len())),
            Err(v) => Finding::refuted(v.to_string()),
        }
    }

    /// Exhaustive Riesz decomposition check with the first unrefinable identity.
    pub fn check_rdp(&self) -> Finding {
        match self.rdp_counterexample() {
            None => Finding::proved(format!("{} elements, exhaustive", self.len())),
            Some((a1, a2, b1, b2)) => Finding::refuted(format!(
                "{}+{} = {}+{} has no refinement",
                self.label(a1),
                self.label(a2),
                self.label(b1),
                self.label(b2)
            )),
        }
    }

    pub fn rdp_counterexample(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.len();
        for a1 in 0..n {
            for a2 in 0..n {
                let Some(s) = self.table[a1][a2] else { continue };
                for b1 in 0..n {
                    let Some(b2) = self.diff[b1][s] else { continue };
                    if !self.refines(a1, a2, b1, b2) {
                        return Some((a1, a2, b1, b2));
                    }
                }
            }
        }
        None
    }

    /// A matrix `c11, c12, c21, c22` with `a1 = c11+c12`, `a2 = c21+c22`,
    /// `b1 = c11+c21`, `b2 = c12+c22`.
    pub fn refinement(&self, a1: usize, a2: usize, b1: usize, b2: usize) -> Option<[usize; 4]> {
        for c11 in 0..self.len() {
            let (Some(c12), Some(c21)) = (self.diff[c11][a1], self.diff[c11][b1]) else {
                continue;
            };
            let Some(c22) = self.diff[c21][a2] else { continue };
            if self.table[c12][c22] == Some(b2) {
                return Some([c11, c12, c21, c22]);
            }
        }
        None
    }

    fn refines(&self, a1: usize, a2: usize, b1: usize, b2: usize) -> bool {
        self.refinement(a1, a2, b1, b2).is_some()
    }

    /// `na` for `n = 1, 2, ...` until undefined.
    pub fn multiples(&self, a: usize) -> Vec<usize> {
        let mut out = vec![a];
        let mut s = a;
        while out.len() <= self.len() {
            match self.table[s][a] {
                Some(t) => {
                    out.push(t);
                    s = t;
                }
                None => break,
            }
        }
        out
    }

    pub fn is_infinitesimal(&self, a: usize) -> bool {
        self.multiples(a).len() > self.len()
    }

    pub fn infinitesimals(&self) -> BTreeSet<usize> {
        self.elements().filter(|&a| self.is_infinitesimal(a)).collect()
    }

    pub fn is_archimedean(&self) -> Finding {
        let inf = self.infinitesimals();
        if inf.iter().all(|&a| a == self.zero) {
            Finding::proved("only 0 is infinitesimal")
        } else {
            let nz: Vec<&str> = inf.iter().filter(|&&a| a != self.zero).map(|&a| self.label(a)).collect();
            Finding::refuted(format!("nonzero infinitesimals: {}", nz.join(", ")))
        }
    }

    pub fn lower_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        self.elements().filter(|&x| self.le(x, a) && self.le(x, b)).collect()
    }

    pub fn upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        self.elements().filter(|&x| self.le(a, x) && self.le(b, x)).collect()
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lb = self.lower_bounds(a, b);
        lb.iter().copied().find(|&m| lb.iter().all(|&x| self.le(x, m)))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ub = self.upper_bounds(a, b);
        ub.iter().copied().find(|&m| ub.iter().all(|&x| self.le(m, x)))
    }

    /// Same table with elements renamed.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        Self::from_table(labels, self.table.clone(), self.zero, self.one)
    }
}

impl EffectAlgebra for FiniteEffectAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.len()
    }

    fn sum(&self, a: &usize, b: &usize) -> Option<usize> {
        self.table[*a][*b]
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.order[*a][*b]
    }

    fn minus(&self, b: &usize, a: &usize) -> Option<usize> {
        self.diff[*a][*b]
    }

    fn complement(&self, a: &usize) -> usize {
        self.comp(*a)
    }

    fn show(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

/// Verdict helper for exhaustive finite scans.
pub(crate) fn exhaustive(ok: bool, what: impl Into<String>) -> Finding {
    Finding::new(Verdict::from_bool(ok), what)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs4() -> FiniteEffectAlgebra {
        let labels = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
        FiniteEffectAlgebra::from_sums(
            labels,
            0,
            3,
            &[(0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 1, 3), (2, 2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn chains_pass_axioms() {
        for n in 1..6 {
            assert_eq!(FiniteEffectAlgebra::chain(n).verify_axioms(), Ok(()));
        }
    }

    #[test]
    fn horizontal_sum_passes_axioms_but_not_rdp() {
        let e = hs4();
        assert_eq!(e.verify_axioms(), Ok(()));
        assert_eq!(e.rdp_counterexample(), Some((1, 1, 2, 2)));
        assert!(FiniteEffectAlgebra::chain(3).check_rdp().holds());
    }

    #[test]
    fn two_complements_violate_iii() {
        let labels = ["0", "a", "1"].iter().map(|s| s.to_string()).collect();
        let e = FiniteEffectAlgebra::from_sums(
            labels,
            0,
            2,
            &[(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 1, 2), (1, 0, 1)],
        )
        .unwrap();
        assert_eq!(e.verify_axioms(), Ok(()));
        let labels = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
        let bad = FiniteEffectAlgebra::from_sums(
            labels,
            0,
            3,
            &[(0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 3), (1, 1, 3)],
        )
        .unwrap();
        let v = bad.verify_axioms().unwrap_err();
        assert_eq!(v.axiom, "(iii) unique complement");
        assert_eq!(v.elements[0], 1);
    }

    #[test]
    fn conflicting_triples_rejected() {
        let labels = ["0", "1"].iter().map(|s| s.to_string()).collect();
        assert!(FiniteEffectAlgebra::from_sums(labels, 0, 1, &[(0, 1, 1), (1, 0, 0)]).is_err());
    }

    #[test]
    fn order_minus_complement_on_chain() {
        let c4 = FiniteEffectAlgebra::chain(4);
        assert!(c4.le(1, 3));
        assert_eq!(c4.sub(3, 1), Some(2));
        assert_eq!(c4.comp(0), 4);
        assert_eq!(c4.sub(1, 3), None);
        assert!(c4.is_archimedean().holds());
        assert_eq!(c4.infinitesimals(), [0].into_iter().collect());
    }
}
