//! States valued in a unital po-group interval `[0,u]_H` and the fibre
//! partitions `t ↦ E_t = s⁻¹(t)` they correspond to.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::lp::{independent_rows, solve};
use crate::effalg::{EffectAlgebra, Enumeration, FiniteEffectAlgebra, Host, IntervalEffectAlgebra};
use crate::predicate::{LinearAtom, Pred, Rel};
use crate::sampling;
use crate::vector::{Rat, Vector};
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HuMap {
    /// Image of each table element.
    Table(Vec<Vector>),
    /// `x ↦ M x + offset` on interval hosts.
    Affine { matrix: Vec<Vec<Rat>>, offset: Vector },
}

/// An additive map into `Γ(H,u)`; `target` carries `H` and `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuState {
    pub target: IntervalEffectAlgebra,
    pub map: HuMap,
}

fn affine_apply(matrix: &[Vec<Rat>], offset: &Vector, x: &Vector) -> Vector {
    Vector::new(
        matrix
            .iter()
            .zip(offset.coords())
            .map(|(row, c)| row.iter().zip(x.coords()).map(|(m, v)| m * v).sum::<Rat>() + c)
            .collect(),
    )
}

/// The carrier elements a check runs over: the whole table or grid samples.
enum Scan {
    Table(FiniteEffectAlgebra),
    Grid(IntervalEffectAlgebra, Vec<Vector>),
}

impl HuState {
    /// Projection of a lexicographic interval onto its head coordinates.
    pub fn canonical(e: &IntervalEffectAlgebra) -> Result<HuState> {
        let (head, _) = e
            .head_tail()
            .ok_or_else(|| Error::Unsupported("no declared lexicographic split".into()))?;
        let k = head.rank();
        let matrix = (0..k)
            .map(|i| {
                (0..e.rank())
                    .map(|j| if i == j { Rat::from_integer(1) } else { Rat::zero() })
                    .collect()
            })
            .collect();
        Ok(HuState {
            target: head,
            map: HuMap::Affine {
                matrix,
                offset: Vector::zero(k),
            },
        })
    }

    /// Each enumerated element sent to its own point of the interval.
    pub fn identity(en: &Enumeration, target: &IntervalEffectAlgebra) -> HuState {
        HuState {
            target: target.clone(),
            map: HuMap::Table(en.points.clone()),
        }
    }

    pub fn at(&self, i: usize) -> &Vector {
        match &self.map {
            HuMap::Table(v) => &v[i],
            HuMap::Affine { .. } => panic!("affine state evaluated at an index"),
        }
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        match &self.map {
            HuMap::Affine { matrix, offset } => affine_apply(matrix, offset, x),
            HuMap::Table(_) => panic!("table state evaluated at a vector"),
        }
    }

    fn scan(&self, host: &Host, budget: &Budget) -> Result<Scan> {
        match (&self.map, host) {
            (HuMap::Table(v), Host::Finite(f)) if v.len() == f.len() => Ok(Scan::Table(f.clone())),
            (HuMap::Table(v), Host::Interval(i)) => {
                let en = i.enumerate()?;
                if v.len() != en.points.len() {
                    return Err(Error::Shape(format!("{} values for {} elements", v.len(), en.points.len())));
                }
                Ok(Scan::Table(en.algebra))
            }
            (HuMap::Affine { matrix, offset }, Host::Interval(i))
                if matrix.len() == self.target.rank()
                    && offset.rank() == self.target.rank()
                    && matrix.iter().all(|r| r.len() == i.rank()) =>
            {
                Ok(Scan::Grid(i.clone(), i.sample_points(budget)))
            }
            _ => Err(Error::Shape("state map does not fit the host".into())),
        }
    }

    /// `s(1) = u`, image in `[0,u]_H`, additivity on defined sums.
    pub fn check(&self, host: &Host, budget: &Budget) -> Result<Finding> {
        let u = self.target.unit();
        Ok(match self.scan(host, budget)? {
            Scan::Table(f) => {
                if self.at(f.one_idx()) != u {
                    return Ok(Finding::refuted(format!("s(1) = {} ≠ {}", self.at(f.one_idx()), u)));
                }
                if let Some(i) = f.elements().find(|&i| !self.target.member(self.at(i))) {
                    return Ok(Finding::refuted(format!("s({}) = {} outside [0,u]", f.label(i), self.at(i))));
                }
                for (a, b, c) in f.sum_triples() {
                    if &(self.at(a) + self.at(b)) != self.at(c) {
                        return Ok(Finding::refuted(format!(
                            "s({}) + s({}) ≠ s({})",
                            f.label(a),
                            f.label(b),
                            f.label(c)
                        )));
                    }
                }
                Finding::proved("checked on every element and defined sum")
            }
            Scan::Grid(e, pts) => {
                if &self.apply(e.unit()) != u {
                    return Ok(Finding::refuted(format!("s(1) = {} ≠ {}", self.apply(e.unit()), u)));
                }
                if let Some(x) = pts.iter().find(|x| !self.target.member(&self.apply(x))) {
                    return Ok(Finding::refuted(format!("s{} = {} outside [0,u]", x, self.apply(x))));
                }
                let pairs = sampling::pairs(&pts, budget.samples, &mut sampling::rng(budget.seed));
                for (a, b) in pairs.iter().chain(std::iter::once(&(e.zero(), e.zero()))) {
                    if let Some(c) = e.sum(a, b) {
                        if self.apply(&c) != &self.apply(a) + &self.apply(b) {
                            return Ok(Finding::refuted(format!("s{} + s{} ≠ s{}", a, b, c)));
                        }
                    }
                }
                Finding::new(
                    Verdict::Witnessed(*budget),
                    format!("{} grid points and {} sampled pairs", pts.len(), pairs.len()),
                )
            }
        })
    }

    /// Image equals `[0,u]_H`.
    pub fn valued(&self, host: &Host, budget: &Budget) -> Result<Finding> {
        let targets = self.target.enumerate().map_err(|_| {
            Error::Unsupported(format!("target interval of {} is not finite", self.target.group().name()))
        })?;
        let image: BTreeSet<Vector> = match self.scan(host, budget)? {
            Scan::Table(f) => f.elements().map(|i| self.at(i).clone()).collect(),
            Scan::Grid(_, pts) => pts.iter().map(|x| self.apply(x)).collect(),
        };
        let missing: Vec<&Vector> = targets.points.iter().filter(|t| !image.contains(*t)).collect();
        Ok(match missing.first() {
            None => Finding::proved(format!("every t in [0,u] has a preimage ({} values)", targets.points.len())),
            Some(t) => Finding::new(
                if matches!(host, Host::Finite(_)) || host.finite().is_some() {
                    Verdict::Refuted(None)
                } else {
                    Verdict::Unknown(*budget)
                },
                format!("no preimage of {} found", t),
            ),
        })
    }
}

/// Fibres indexed by the points of a finite `[0,u]_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fibers {
    Table(Vec<(Vector, BTreeSet<usize>)>),
    Symbolic(Vec<(Vector, Pred)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuDecomposition {
    pub target: IntervalEffectAlgebra,
    pub fibers: Fibers,
}

impl HuDecomposition {
    pub fn indices(&self) -> Vec<&Vector> {
        match &self.fibers {
            Fibers::Table(f) => f.iter().map(|(t, _)| t).collect(),
            Fibers::Symbolic(f) => f.iter().map(|(t, _)| t).collect(),
        }
    }

    /// Index of the fibre holding table element `i`.
    pub fn fiber_of_index(&self, i: usize) -> Option<&Vector> {
        match &self.fibers {
            Fibers::Table(f) => f.iter().find(|(_, s)| s.contains(&i)).map(|(t, _)| t),
            Fibers::Symbolic(_) => None,
        }
    }

    /// Index of the fibre holding carrier point `x`.
    pub fn fiber_of(&self, x: &Vector) -> Option<&Vector> {
        match &self.fibers {
            Fibers::Symbolic(f) => f.iter().find(|(_, p)| p.holds(x)).map(|(t, _)| t),
            Fibers::Table(_) => None,
        }
    }

    pub fn fiber_pred(&self, t: &Vector) -> Option<&Pred> {
        match &self.fibers {
            Fibers::Symbolic(f) => f.iter().find(|(s, _)| s == t).map(|(_, p)| p),
            Fibers::Table(_) => None,
        }
    }

    pub fn fiber_set(&self, t: &Vector) -> Option<&BTreeSet<usize>> {
        match &self.fibers {
            Fibers::Table(f) => f.iter().find(|(s, _)| s == t).map(|(_, p)| p),
            Fibers::Symbolic(_) => None,
        }
    }

    /// Partition, `E_t⁻ = E_{u−t}`, and `E_s + E_t ⊆ E_{s+t}` with `s+t ≤ u`.
    pub fn validate(&self, host: &Host, budget: &Budget) -> Result<Finding> {
        let u = self.target.unit();
        match (&self.fibers, host) {
            (Fibers::Table(_), _) => {
                let f = host
                    .finite()
                    .ok_or_else(|| Error::Shape("table fibres on an infinite host".into()))?;
                for i in f.elements() {
                    let n = self.indices().iter().filter(|t| self.fiber_set(t).unwrap().contains(&i)).count();
                    if n != 1 {
                        return Ok(Finding::refuted(format!("{} lies in {} fibres", f.label(i), n)));
                    }
                }
                let at = |i: usize| self.fiber_of_index(i).unwrap();
                for i in f.elements() {
                    if at(f.comp(i)) != &(u - at(i)) {
                        return Ok(Finding::refuted(format!("(a) fails at {}", f.label(i))));
                    }
                }
                for (a, b, c) in f.sum_triples() {
                    let s = at(a) + at(b);
                    if !self.target.member(&s) || at(c) != &s {
                        return Ok(Finding::refuted(format!(
                            "(b) fails at {} + {}",
                            f.label(a),
                            f.label(b)
                        )));
                    }
                }
                Ok(Finding::proved("partition, (a) and (b) hold on the whole carrier"))
            }
            (Fibers::Symbolic(fib), Host::Interval(e)) => {
                let pts = e.sample_points(budget);
                let mut at = BTreeMap::new();
                for x in &pts {
                    let hits: Vec<&Vector> = fib.iter().filter(|(_, p)| p.holds(x)).map(|(t, _)| t).collect();
                    if hits.len() != 1 {
                        return Ok(Finding::refuted(format!("{} lies in {} fibres", x, hits.len())));
                    }
                    at.insert(x.clone(), hits[0].clone());
                }
                for x in &pts {
                    let c = e.complement(x);
                    if self.fiber_of(&c) != Some(&(u - &at[x])) {
                        return Ok(Finding::refuted(format!("(a) fails at {}", x)));
                    }
                }
                let pairs = sampling::pairs(&pts, budget.samples, &mut sampling::rng(budget.seed));
                for (a, b) in &pairs {
                    if let Some(c) = e.sum(a, b) {
                        let s = &at[a] + &at[b];
                        if !self.target.member(&s) || self.fiber_of(&c) != Some(&s) {
                            return Ok(Finding::refuted(format!("(b) fails at {} + {}", a, b)));
                        }
                    }
                }
                Ok(Finding::new(
                    Verdict::Witnessed(*budget),
                    format!("partition and (a) on {} grid points; (b) on {} sampled pairs", pts.len(), pairs.len()),
                ))
            }
            _ => Err(Error::Shape("symbolic fibres need an interval host".into())),
        }
    }
}

/// Fibres `E_t = s⁻¹(t)` of a valued state.
pub fn hu_state_to_decomposition(host: &Host, s: &HuState, budget: &Budget) -> Result<HuDecomposition> {
    let ok = s.check(host, budget)?;
    if !ok.holds() {
        return Err(Error::NotValued(ok.detail));
    }
    let valued = s.valued(host, budget)?;
    if !valued.holds() {
        return Err(Error::NotValued(valued.detail));
    }
    let targets = s.target.enumerate()?.points;
    let fibers = match &s.map {
        HuMap::Table(v) => Fibers::Table(
            targets
                .iter()
                .map(|t| (t.clone(), (0..v.len()).filter(|&i| &v[i] == t).collect()))
                .collect(),
        ),
        HuMap::Affine { matrix, offset } => Fibers::Symbolic(
            targets
                .iter()
                .map(|t| {
                    let atoms = matrix
                        .iter()
                        .zip(offset.coords())
                        .zip(t.coords())
                        .map(|((row, c), ti)| {
                            Pred::atom(LinearAtom::new(
                                row.iter().copied().enumerate(),
                                c - ti,
                                Rel::Eq,
                            ))
                        })
                        .collect();
                    (t.clone(), Pred::and(atoms))
                })
                .collect(),
        ),
    };
    let d = HuDecomposition {
        target: s.target.clone(),
        fibers,
    };
    let f = d.validate(host, budget)?;
    if f.verdict.is_refuted() {
        return Err(Error::Decomposition(f.detail));
    }
    Ok(d)
}

/// `s(x) = t` iff `x ∈ E_t`; on interval hosts the linear map is fitted
/// through sampled points and checked on the rest.
pub fn decomposition_to_hu_state(host: &Host, d: &HuDecomposition, budget: &Budget) -> Result<HuState> {
    let f = d.validate(host, budget)?;
    if f.verdict.is_refuted() {
        return Err(Error::Decomposition(f.detail));
    }
    let map = match (&d.fibers, host) {
        (Fibers::Table(fib), _) => {
            if let Some((t, _)) = fib.iter().find(|(_, s)| s.is_empty()) {
                return Err(Error::Decomposition(format!("fibre {} is empty", t)));
            }
            let n = fib.iter().map(|(_, s)| s.len()).sum();
            HuMap::Table((0..n).map(|i| d.fiber_of_index(i).unwrap().clone()).collect())
        }
        (Fibers::Symbolic(fib), Host::Interval(e)) => {
            let pts = e.sample_points(budget);
            for (t, p) in fib {
                if !pts.iter().any(|x| p.holds(x)) {
                    return Err(Error::Decomposition(format!("fibre {} has no grid point", t)));
                }
            }
            let rows: Vec<Vec<Rat>> = pts.iter().map(|x| x.coords().to_vec()).collect();
            let basis = independent_rows(&rows);
            if basis.len() < e.rank() {
                return Err(Error::Decomposition("grid points do not span the group".into()));
            }
            let a: Vec<Vec<Rat>> = basis.iter().map(|&i| rows[i].clone()).collect();
            let b: Vec<Vec<Rat>> = basis
                .iter()
                .map(|&i| d.fiber_of(&pts[i]).unwrap().coords().to_vec())
                .collect();
            let mt = solve(&a, &b).ok_or_else(|| Error::Decomposition("singular fit".into()))?;
            let h = d.target.rank();
            let matrix: Vec<Vec<Rat>> = (0..h).map(|r| mt.iter().map(|row| row[r]).collect()).collect();
            let offset = Vector::zero(h);
            if let Some(x) = pts
                .iter()
                .find(|x| Some(&affine_apply(&matrix, &offset, x)) != d.fiber_of(x))
            {
                return Err(Error::Decomposition(format!("fibre of {} is not linear in x", x)));
            }
            HuMap::Affine { matrix, offset }
        }
        _ => return Err(Error::Shape("symbolic fibres need an interval host".into())),
    };
    Ok(HuState {
        target: d.target.clone(),
        map,
    })
}

/// Backtracking search for a valued `(H,u)`-state on a finite carrier;
/// `host_table` lists the carrier in the order the host enumerates it.
pub fn find_valued_hu_state(host_table: &FiniteEffectAlgebra, target: &IntervalEffectAlgebra) -> Result<Option<HuState>> {
    let points = target.enumerate()?.points;
    let e = host_table;
    let mut order: Vec<usize> = e.elements().filter(|&i| i != e.zero_idx() && i != e.one_idx()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(e.sum_triples().iter().filter(|t| t.0 == i).count()));
    let triples = e.sum_triples();
    let mut s: Vec<Option<Vector>> = vec![None; e.len()];
    s[e.zero_idx()] = Some(target.zero());
    s[e.one_idx()] = Some(target.unit().clone());
    fn consistent(triples: &[(usize, usize, usize)], s: &[Option<Vector>]) -> bool {
        triples.iter().all(|&(a, b, c)| match (&s[a], &s[b], &s[c]) {
            (Some(x), Some(y), Some(z)) => &(x + y) == z,
            _ => true,
        })
    }
    fn go(
        k: usize,
        order: &[usize],
        points: &[Vector],
        triples: &[(usize, usize, usize)],
        s: &mut Vec<Option<Vector>>,
    ) -> Option<Vec<Vector>> {
        if k == order.len() {
            let image: BTreeSet<&Vector> = s.iter().flatten().collect();
            return (image.len() == points.len()).then(|| s.iter().flatten().cloned().collect());
        }
        for p in points {
            s[order[k]] = Some(p.clone());
            if consistent(triples, s) {
                if let Some(found) = go(k + 1, order, points, triples, s) {
                    return Some(found);
                }
            }
        }
        s[order[k]] = None;
        None
    }
    if !consistent(&triples, &s) {
        return Ok(None);
    }
    Ok(go(0, &order, &points, &triples, &mut s).map(|values| HuState {
        target: target.clone(),
        map: HuMap::Table(values),
    }))
}

/// Consequences every `(H,u)`-state has: `s(0) = 0`, monotone, `s(x⁻) = u − s(x)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub zero: Finding,
    pub monotone: Finding,
    pub complement: Finding,
}

impl ExtensionReport {
    pub fn holds(&self) -> bool {
        self.zero.holds() && self.monotone.holds() && self.complement.holds()
    }
}

pub fn validate_hu_state_extension(host: &Host, s: &HuState, budget: &Budget) -> Result<ExtensionReport> {
    let u = s.target.unit();
    let le = |a: &Vector, b: &Vector| s.target.leq(a, b);
    Ok(match s.scan(host, budget)? {
        Scan::Table(f) => {
            let zero = Finding::new(
                Verdict::from_bool(s.at(f.zero_idx()).is_zero()),
                format!("s(0) = {}", s.at(f.zero_idx())),
            );
            let bad_mono = f
                .elements()
                .flat_map(|a| f.elements().map(move |b| (a, b)))
                .find(|&(a, b)| f.le(a, b) && !le(s.at(a), s.at(b)));
            let monotone = match bad_mono {
                None => Finding::proved("a ≤ b implies s(a) ≤ s(b) on all pairs"),
                Some((a, b)) => Finding::refuted(format!("{} ≤ {} but s is not", f.label(a), f.label(b))),
            };
            let bad_comp = f.elements().find(|&a| s.at(f.comp(a)) != &(u - s.at(a)));
            let complement = match bad_comp {
                None => Finding::proved("s(a⁻) = u − s(a) on all elements"),
                Some(a) => Finding::refuted(format!("s({}⁻) ≠ u − s({})", f.label(a), f.label(a))),
            };
            ExtensionReport {
                zero,
                monotone,
                complement,
            }
        }
        Scan::Grid(e, pts) => {
            let z = s.apply(&e.zero());
            let zero = Finding::new(Verdict::from_bool(z.is_zero()), format!("s(0) = {}", z));
            let pairs = sampling::pairs(&pts, budget.samples, &mut sampling::rng(budget.seed));
            let monotone = match pairs
                .iter()
                .find(|(a, b)| e.leq(a, b) && !le(&s.apply(a), &s.apply(b)))
            {
                None => Finding::new(
                    Verdict::Witnessed(*budget),
                    format!("monotone on {} sampled pairs", pairs.len()),
                ),
                Some((a, b)) => Finding::refuted(format!("{} ≤ {} but s is not", a, b)),
            };
            let complement = match pts.iter().find(|x| s.apply(&e.complement(x)) != u - &s.apply(x)) {
                None => Finding::new(
                    Verdict::Witnessed(*budget),
                    format!("s(x⁻) = u − s(x) on {} grid points", pts.len()),
                ),
                Some(x) => Finding::refuted(format!("s({}⁻) ≠ u − s({})", x, x)),
            };
            ExtensionReport {
                zero,
                monotone,
                complement,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pogroup::{ConePoGroup, Domain};

    fn lex1() -> IntervalEffectAlgebra {
        let g = ConePoGroup::new(Domain::Integer, "lex(product(1), product(1))".parse().unwrap(), None).unwrap();
        IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[1, 0]))
            .unwrap()
            .with_split(1)
            .unwrap()
    }

    #[test]
    fn lex1_fibres_round_trip() {
        let e = lex1();
        let host = Host::Interval(e.clone());
        let b = Budget::default();
        let s = HuState::canonical(&e).unwrap();
        assert!(s.check(&host, &b).unwrap().holds());
        let d = hu_state_to_decomposition(&host, &s, &b).unwrap();
        assert_eq!(d.fiber_pred(&Vector::from_ints(&[0])).unwrap().to_string(), "x0 = 0");
        assert_eq!(d.fiber_pred(&Vector::from_ints(&[1])).unwrap().to_string(), "x0 - 1 = 0");
        assert_eq!(decomposition_to_hu_state(&host, &d, &b).unwrap(), s);
        assert!(validate_hu_state_extension(&host, &s, &b).unwrap().holds());
    }

    #[test]
    fn boolean_identity_has_singleton_fibres() {
        let z2 = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
        let b4 = IntervalEffectAlgebra::gamma(&z2, &Vector::from_ints(&[1, 1])).unwrap();
        let en = b4.enumerate().unwrap();
        let host = Host::Finite(en.algebra.clone());
        let s = HuState::identity(&en, &b4);
        let b = Budget::default();
        let d = hu_state_to_decomposition(&host, &s, &b).unwrap();
        let Fibers::Table(f) = &d.fibers else { panic!() };
        assert!(f.iter().all(|(_, s)| s.len() == 1));
        assert_eq!(decomposition_to_hu_state(&host, &d, &b).unwrap(), s);
    }

    #[test]
    fn tampered_zero_is_reported() {
        let e = lex1();
        let host = Host::Interval(e.clone());
        let mut s = HuState::canonical(&e).unwrap();
        if let HuMap::Affine { offset, .. } = &mut s.map {
            *offset = Vector::from_ints(&[1]);
        }
        let r = validate_hu_state_extension(&host, &s, &Budget::default()).unwrap();
        assert!(r.zero.verdict.is_refuted());
        assert!(!s.check(&host, &Budget::default()).unwrap().holds());
    }

    #[test]
    fn valued_search_on_chains() {
        let z = ConePoGroup::product(Domain::Integer, 1, None).unwrap();
        let c2 = FiniteEffectAlgebra::chain(2);
        let two = IntervalEffectAlgebra::gamma(&z, &Vector::from_ints(&[2])).unwrap();
        let one = IntervalEffectAlgebra::gamma(&z, &Vector::from_ints(&[1])).unwrap();
        let s = find_valued_hu_state(&c2, &two).unwrap().unwrap();
        assert_eq!(s.at(1), &Vector::from_ints(&[1]));
        assert!(find_valued_hu_state(&c2, &one).unwrap().is_none());
        let host = Host::Finite(c2);
        let d = hu_state_to_decomposition(&host, &s, &Budget::default()).unwrap();
        assert_eq!(decomposition_to_hu_state(&host, &d, &Budget::default()).unwrap(), s);
    }
}
