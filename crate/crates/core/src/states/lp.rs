//! Exact two-phase simplex over rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::vector::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// Linear constraints over `x ≥ 0`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    vars: usize,
    rows: Vec<(Vec<Rat>, Sense, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

impl Outcome {
    pub fn value(&self) -> Option<Rat> {
        match self {
            Outcome::Optimal { value, .. } => Some(*value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> Rat {
        self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= f * p;
            }
        }
        self.basis[r] = c;
    }

    /// Minimises `cost` over columns `< allowed`; `false` when unbounded.
    fn minimise(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rat = cost[j]
                    - self
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| cost[b] * self.rows[i][j])
                        .sum::<Rat>();
                reduced.is_negative()
            });
            let Some(c) = entering else { return true };
            let leaving = (0..self.rows.len())
                .filter(|&i| self.rows[i][c].is_positive())
                .min_by(|&a, &b| {
                    let ra = self.rhs(a) / self.rows[a][c];
                    let rb = self.rhs(b) / self.rows[b][c];
                    ra.cmp(&rb).then(self.basis[a].cmp(&self.basis[b]))
                });
            let Some(r) = leaving else { return false };
            self.pivot(r, c);
        }
    }

    fn objective(&self, cost: &[Rat]) -> Rat {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| cost[b] * self.rhs(i))
            .sum()
    }
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constrain(&mut self, coeffs: Vec<Rat>, sense: Sense, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.vars, "constraint width");
        self.rows.push((coeffs, sense, rhs));
        self
    }

    /// Sparse form of [`Self::constrain`].
    pub fn constrain_terms(&mut self, terms: &[(usize, Rat)], sense: Sense, rhs: Rat) -> &mut Self {
        let mut c = vec![Rat::zero(); self.vars];
        for &(i, v) in terms {
            c[i] += v;
        }
        self.constrain(c, sense, rhs)
    }

    /// Phase one: a feasible basis over the structural and slack columns.
    fn phase_one(&self) -> Option<(Tableau, usize)> {
        let m = self.rows.len();
        let slacks = self.rows.iter().filter(|r| r.1 != Sense::Eq).count();
        let real = self.vars + slacks;
        let cols = real + m;
        let mut rows = Vec::with_capacity(m);
        let mut s = self.vars;
        for (i, (coeffs, sense, rhs)) in self.rows.iter().enumerate() {
            let mut row = vec![Rat::zero(); cols + 1];
            row[..self.vars].copy_from_slice(coeffs);
            match sense {
                Sense::Le => {
                    row[s] = Rat::one();
                    s += 1;
                }
                Sense::Ge => {
                    row[s] = -Rat::one();
                    s += 1;
                }
                Sense::Eq => {}
            }
            row[cols] = *rhs;
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
            row[real + i] = Rat::one();
            rows.push(row);
        }
        let mut t = Tableau {
            rows,
            basis: (real..real + m).collect(),
            cols,
        };
        let mut cost = vec![Rat::zero(); cols];
        for c in cost.iter_mut().skip(real) {
            *c = Rat::one();
        }
        t.minimise(&cost, cols);
        if !t.objective(&cost).is_zero() {
            return None;
        }
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= real {
                match (0..real).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        Some((t, real))
    }

    fn point(&self, t: &Tableau) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.vars];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < self.vars {
                x[b] = t.rhs(i);
            }
        }
        x
    }

    pub fn feasible(&self) -> Option<Vec<Rat>> {
        self.phase_one().map(|(t, _)| self.point(&t))
    }

    pub fn maximize(&self, objective: &[Rat]) -> Outcome {
        let neg: Vec<Rat> = objective.iter().map(|c| -*c).collect();
        match self.minimize(&neg) {
            Outcome::Optimal { value, point } => Outcome::Optimal {
                value: -value,
                point,
            },
            o => o,
        }
    }

    pub fn minimize(&self, objective: &[Rat]) -> Outcome {
        let Some((mut t, real)) = self.phase_one() else {
            return Outcome::Infeasible;
        };
        let mut cost = vec![Rat::zero(); t.cols];
        cost[..self.vars].copy_from_slice(objective);
        if !t.minimise(&cost, real) {
            return Outcome::Unbounded;
        }
        Outcome::Optimal {
            value: t.objective(&cost),
            point: self.point(&t),
        }
    }
}

/// Rows of `a` kept greedily while they stay linearly independent.
pub fn independent_rows(rows: &[Vec<Rat>]) -> Vec<usize> {
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    let mut kept = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        for e in &echelon {
            let lead = e.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !v[lead].is_zero() {
                let f = v[lead] / e[lead];
                for (x, y) in v.iter_mut().zip(e) {
                    *x -= f * y;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            kept.push(k);
        }
    }
    kept
}

/// `X` with `a · X = b` for square invertible `a`.
pub fn solve(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, s)| r.iter().chain(s).copied().collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let lead = m[c][c];
        for x in m[c].iter_mut() {
            *x /= lead;
        }
        let row = m[c].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != c && !r[c].is_zero() {
                let f = r[c];
                for (x, y) in r.iter_mut().zip(&row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
