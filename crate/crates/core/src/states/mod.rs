//! Real-valued states by exact linear programming, and `(H,u)`-valued states
//! with their fibre decompositions.

pub mod hu;
pub mod lp;

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::effalg::{FiniteEffectAlgebra, Host, IntervalEffectAlgebra};
use crate::sampling;
use crate::vector::{fmt_rat, Rat, Vector};
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, Result};

pub use hu::{
    decomposition_to_hu_state, find_valued_hu_state, hu_state_to_decomposition, validate_hu_state_extension, ExtensionReport,
    Fibers, HuDecomposition, HuMap, HuState,
};
use lp::{LinearProgram, Outcome, Sense};

/// Per-element values on a table, or a linear form on an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateMap {
    Table(Vec<Rat>),
    Linear(Vec<Rat>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalState {
    pub map: StateMap,
}

impl RationalState {
    pub fn at(&self, i: usize) -> Rat {
        match &self.map {
            StateMap::Table(v) => v[i],
            StateMap::Linear(_) => panic!("linear state evaluated at an index"),
        }
    }

    pub fn eval(&self, x: &Vector) -> Rat {
        match &self.map {
            StateMap::Linear(c) => c.iter().zip(x.coords()).map(|(a, b)| a * b).sum(),
            StateMap::Table(_) => panic!("table state evaluated at a vector"),
        }
    }

    pub fn describe(&self, labels: Option<&[String]>) -> String {
        match &self.map {
            StateMap::Table(v) => v
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let name = labels.map_or_else(|| i.to_string(), |l| l[i].clone());
                    format!("s({}) = {}", name, fmt_rat(r))
                })
                .collect::<Vec<_>>()
                .join(", "),
            StateMap::Linear(c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r.is_zero())
                    .map(|(i, r)| {
                        if r.is_one() {
                            format!("x{}", i)
                        } else {
                            format!("{}·x{}", fmt_rat(r), i)
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "s(x) = 0".into()
                } else {
                    format!("s(x) = {}", terms.join(" + "))
                }
            }
        }
    }
}

/// `{s(0)=0, s(1)=1, s(i)+s(j)=s(k), 0 ≤ s ≤ 1}` with one variable per element.
pub fn state_program(e: &FiniteEffectAlgebra) -> LinearProgram {
    let mut lp = LinearProgram::new(e.len());
    lp.constrain_terms(&[(e.zero_idx(), Rat::one())], Sense::Eq, Rat::zero());
    lp.constrain_terms(&[(e.one_idx(), Rat::one())], Sense::Eq, Rat::one());
    for (a, b, c) in e.sum_triples() {
        if a <= b {
            lp.constrain_terms(
                &[(a, Rat::one()), (b, Rat::one()), (c, -Rat::one())],
                Sense::Eq,
                Rat::zero(),
            );
        }
    }
    for i in e.elements() {
        lp.constrain_terms(&[(i, Rat::one())], Sense::Le, Rat::one());
    }
    lp
}

pub fn state_feasible(e: &FiniteEffectAlgebra) -> Option<RationalState> {
    state_program(e).feasible().map(|v| RationalState {
        map: StateMap::Table(v),
    })
}

fn indicator(n: usize, a: usize) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); n];
    c[a] = Rat::one();
    c
}

/// `(min s(a), max s(a))` over all states, or `None` without states.
pub fn state_extremes(e: &FiniteEffectAlgebra, a: usize) -> Option<(Rat, Rat)> {
    let lp = state_program(e);
    let c = indicator(e.len(), a);
    Some((lp.minimize(&c).value()?, lp.maximize(&c).value()?))
}

/// Extremes for every element plus the optimal states reached.
#[derive(Clone, Debug)]
pub struct StateSpace {
    pub extremes: Vec<(Rat, Rat)>,
    pub vertices: Vec<RationalState>,
}

impl StateSpace {
    pub fn is_unique(&self) -> bool {
        self.extremes.iter().all(|(lo, hi)| lo == hi)
    }
}

pub fn state_space(e: &FiniteEffectAlgebra) -> Option<StateSpace> {
    let lp = state_program(e);
    lp.feasible()?;
    let solved: Vec<[Outcome; 2]> = e
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| {
            let c = indicator(e.len(), a);
            [lp.minimize(&c), lp.maximize(&c)]
        })
        .collect();
    let mut extremes = Vec::new();
    let mut vertices: Vec<RationalState> = Vec::new();
    for [lo, hi] in solved {
        extremes.push((lo.value()?, hi.value()?));
        for o in [lo, hi] {
            if let Outcome::Optimal { point, .. } = o {
                let s = RationalState {
                    map: StateMap::Table(point),
                };
                if !vertices.contains(&s) {
                    vertices.push(s);
                }
            }
        }
    }
    Some(StateSpace { extremes, vertices })
}

/// Exact check of the state conditions on a table.
pub fn is_state(e: &FiniteEffectAlgebra, s: &RationalState) -> bool {
    let StateMap::Table(v) = &s.map else {
        return false;
    };
    v.len() == e.len()
        && v[e.one_idx()].is_one()
        && !v.iter().any(outside_unit)
        && e.sum_triples().iter().all(|&(a, b, c)| v[a] + v[b] == v[c])
}

fn outside_unit(r: &Rat) -> bool {
    *r < Rat::zero() || *r > Rat::one()
}

#[derive(Clone, Debug, Serialize)]
pub struct UniqueState {
    pub finding: Finding,
    #[serde(skip)]
    pub state: Option<RationalState>,
    /// `(element, min, max)` per element of the table decided on.
    pub extremes: Vec<(String, String, String)>,
}

impl fmt::Display for UniqueState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.finding.verdict, self.finding.detail)
    }
}

fn unique_finite(e: &FiniteEffectAlgebra) -> UniqueState {
    let Some(space) = state_space(e) else {
        return UniqueState {
            finding: Finding::refuted("no state"),
            state: None,
            extremes: Vec::new(),
        };
    };
    let extremes = space
        .extremes
        .iter()
        .enumerate()
        .map(|(i, (lo, hi))| (e.label(i).to_string(), fmt_rat(lo), fmt_rat(hi)))
        .collect();
    if space.is_unique() {
        let s = RationalState {
            map: StateMap::Table(space.extremes.iter().map(|p| p.0).collect()),
        };
        UniqueState {
            finding: Finding::proved(format!("unique state {}", s.describe(Some(e.labels())))),
            state: Some(s),
            extremes,
        }
    } else {
        let (i, (lo, hi)) = space
            .extremes
            .iter()
            .enumerate()
            .find(|(_, (lo, hi))| lo != hi)
            .expect("some extreme differs");
        UniqueState {
            finding: Finding::refuted(format!(
                "s({}) ranges over [{}, {}]",
                e.label(i),
                fmt_rat(lo),
                fmt_rat(hi)
            )),
            state: None,
            extremes,
        }
    }
}

/// Finite hosts by extremes; lexicographic intervals through their head.
pub fn unique_state(host: &Host, budget: &Budget) -> Result<UniqueState> {
    if let Some(f) = host.finite() {
        return Ok(unique_finite(&f));
    }
    let Host::Interval(e) = host else { unreachable!() };
    let (head, _) = e.head_tail().ok_or_else(|| {
        Error::Unsupported("state uniqueness needs a finite carrier or a declared lexicographic split".into())
    })?;
    let en = head.enumerate()?;
    let mut out = unique_finite(&en.algebra);
    if let Some(sh) = out.state.take() {
        let s = state_transfer(e, &sh)?;
        let check = check_interval_state(e, &s, budget);
        out.finding = Finding::new(
            Verdict::Proved.and(check.verdict),
            format!("head {} has a unique state; {} ({})", head.group().name(), s.describe(None), check.detail),
        );
        out.state = Some(s);
    }
    Ok(out)
}

/// `s(h,g) := s_H(h)` for a state given on the enumerated head.
pub fn state_transfer(e: &IntervalEffectAlgebra, head_state: &RationalState) -> Result<RationalState> {
    let (head, _) = e.head_tail().ok_or_else(|| Error::Unsupported("no declared lexicographic split".into()))?;
    let en = head.enumerate()?;
    let k = head.rank();
    let mut coeffs = vec![Rat::zero(); e.rank()];
    for (i, c) in coeffs.iter_mut().enumerate().take(k) {
        if let Some(j) = en.index_of(&Vector::unit_vector(k, i)) {
            *c = head_state.at(j);
        }
    }
    let s = RationalState {
        map: StateMap::Linear(coeffs),
    };
    for (j, h) in en.points.iter().enumerate() {
        if s.eval(&h.concat(&Vector::zero(e.rank() - k))) != head_state.at(j) {
            return Err(Error::Unsupported(format!(
                "head state is not linear at {}",
                h
            )));
        }
    }
    Ok(s)
}

/// Restriction `h ↦ s(h,0)` to the head, with `s(0,g) = 0` checked on samples.
pub fn state_restrict(
    e: &IntervalEffectAlgebra,
    s: &RationalState,
    budget: &Budget,
) -> Result<(RationalState, Finding)> {
    let (head, tail) = e.head_tail().ok_or_else(|| Error::Unsupported("no declared lexicographic split".into()))?;
    let en = head.enumerate()?;
    let pad = Vector::zero(tail.rank());
    let values = en.points.iter().map(|h| s.eval(&h.concat(&pad))).collect();
    let k = head.rank();
    let kernel: Vec<Vector> = e
        .sample_points(budget)
        .into_iter()
        .filter(|x| x.slice(0, k).is_zero())
        .collect();
    let bad = kernel.iter().find(|x| !s.eval(x).is_zero());
    let f = match bad {
        Some(x) => Finding::refuted(format!("s{} = {} ≠ 0", x, fmt_rat(&s.eval(x)))),
        None => Finding::new(
            Verdict::Witnessed(*budget),
            format!("s(0,g) = 0 on {} sampled g", kernel.len()),
        ),
    };
    Ok((
        RationalState {
            map: StateMap::Table(values),
        },
        f,
    ))
}

/// State conditions of a linear form on sampled carrier points.
pub fn check_interval_state(e: &IntervalEffectAlgebra, s: &RationalState, budget: &Budget) -> Finding {
    if !s.eval(e.unit()).is_one() {
        return Finding::refuted("s(1) ≠ 1");
    }
    let pts = e.sample_points(budget);
    if let Some(x) = pts.iter().find(|x| outside_unit(&s.eval(x))) {
        return Finding::refuted(format!("s{} = {} outside [0,1]", x, fmt_rat(&s.eval(x))));
    }
    let k = e.split().unwrap_or(e.rank());
    let pairs = sampling::pairs(&pts, budget.samples, &mut sampling::rng(budget.seed));
    for (a, b) in &pairs {
        let a0 = a.slice(0, k).concat(&Vector::zero(e.rank() - k));
        if s.eval(a) != s.eval(&a0) {
            return Finding::refuted(format!("s{} ≠ s{}", a, a0));
        }
        if a.slice(0, k) == b.slice(0, k) && s.eval(a) != s.eval(b) {
            return Finding::refuted(format!("s{} ≠ s{} with equal heads", a, b));
        }
    }
    Finding::new(
        Verdict::Witnessed(*budget),
        format!(
            "linear, within [0,1] on the grid, s(h,g) = s(h,0) on {} sampled pairs",
            pairs.len()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::rat;

    #[test]
    fn chain_state_is_unique() {
        let c3 = FiniteEffectAlgebra::chain(3);
        let space = state_space(&c3).unwrap();
        assert!(space.is_unique());
        assert_eq!(space.extremes[1], (rat(1, 3), rat(1, 3)));
    }

    #[test]
    fn horizontal_sum_has_half() {
        let hs4 = FiniteEffectAlgebra::from_sums(
            ["0", "a", "b", "1"].map(String::from).to_vec(),
            0,
            3,
            &[(0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 1, 3), (2, 2, 3)],
        )
        .unwrap();
        assert_eq!(state_extremes(&hs4, 1), Some((rat(1, 2), rat(1, 2))));
        assert!(is_state(&hs4, &state_feasible(&hs4).unwrap()));
    }
}
