//! Homomorphisms: verification, kernels, isomorphism search, the ~-property
//! and fullness.

use std::collections::BTreeSet;

use crate::effalg::{EffectAlgebra, FiniteEffectAlgebra, IntervalEffectAlgebra};
use crate::ideals::finite::{self as fin, FiniteQuotient, IdealSet};
use crate::ideals::{symbolic, Ideal};
use crate::predicate::{LinearAtom, Pred, Rel};
use crate::sampling;
use crate::vector::{Rat, Vector};
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum Homomorphism {
    /// `map[i]` is the image of source element `i`.
    Table {
        source: FiniteEffectAlgebra,
        target: FiniteEffectAlgebra,
        map: Vec<usize>,
    },
    /// `x ↦ M x + offset` between intervals.
    Affine {
        source: IntervalEffectAlgebra,
        target: IntervalEffectAlgebra,
        matrix: Vec<Vec<Rat>>,
        offset: Vector,
    },
}

impl Homomorphism {
    pub fn table(source: &FiniteEffectAlgebra, target: &FiniteEffectAlgebra, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&j| j >= target.len()) {
            return Err(Error::Shape(format!(
                "map of length {} into {} elements for a source of {}",
                map.len(),
                target.len(),
                source.len()
            )));
        }
        Ok(Homomorphism::Table {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn identity(e: &FiniteEffectAlgebra) -> Self {
        Homomorphism::Table {
            source: e.clone(),
            target: e.clone(),
            map: e.elements().collect(),
        }
    }

    /// `x ↦ x/I`.
    pub fn projection(e: &FiniteEffectAlgebra, q: &FiniteQuotient) -> Self {
        Homomorphism::Table {
            source: e.clone(),
            target: q.algebra.clone(),
            map: q.class_of.clone(),
        }
    }

    pub fn affine(
        source: &IntervalEffectAlgebra,
        target: &IntervalEffectAlgebra,
        matrix: Vec<Vec<Rat>>,
        offset: Vector,
    ) -> Result<Self> {
        if matrix.len() != target.rank()
            || offset.rank() != target.rank()
            || matrix.iter().any(|r| r.len() != source.rank())
        {
            return Err(Error::Shape(format!(
                "matrix does not map rank {} to rank {}",
                source.rank(),
                target.rank()
            )));
        }
        Ok(Homomorphism::Affine {
            source: source.clone(),
            target: target.clone(),
            matrix,
            offset,
        })
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        match self {
            Homomorphism::Affine { matrix, offset, .. } => Vector::new(
                matrix
                    .iter()
                    .zip(offset.coords())
                    .map(|(row, c)| row.iter().zip(x.coords()).map(|(m, v)| m * v).sum::<Rat>() + c)
                    .collect(),
            ),
            Homomorphism::Table { .. } => panic!("table map applied to a vector"),
        }
    }

    pub fn map(&self) -> Option<&[usize]> {
        match self {
            Homomorphism::Table { map, .. } => Some(map),
            Homomorphism::Affine { .. } => None,
        }
    }

    /// Decided for tables; `None` for affine maps.
    pub fn is_surjective(&self) -> Option<bool> {
        match self {
            Homomorphism::Table { target, map, .. } => {
                let image: BTreeSet<usize> = map.iter().copied().collect();
                Some(image.len() == target.len())
            }
            Homomorphism::Affine { .. } => None,
        }
    }

    pub fn is_injective(&self) -> Option<bool> {
        match self {
            Homomorphism::Table { map, .. } => {
                let image: BTreeSet<usize> = map.iter().copied().collect();
                Some(image.len() == map.len())
            }
            Homomorphism::Affine { .. } => None,
        }
    }

    /// `f(set)`.
    pub fn image(&self, set: &IdealSet) -> IdealSet {
        match self {
            Homomorphism::Table { map, .. } => set.iter().map(|&i| map[i]).collect(),
            Homomorphism::Affine { .. } => IdealSet::new(),
        }
    }
}

/// `h(1) = 1` and `h(a+b) = h(a)+h(b)` on defined sums.
pub fn verify_hom(h: &Homomorphism, budget: &Budget) -> Finding {
    match h {
        Homomorphism::Table { source, target, map } => {
            if map[source.one_idx()] != target.one_idx() {
                return Finding::refuted(format!("h(1) = {}", target.label(map[source.one_idx()])));
            }
            for (a, b, c) in source.sum_triples() {
                if target.add(map[a], map[b]) != Some(map[c]) {
                    return Finding::refuted(format!(
                        "h({}) + h({}) ≠ h({})",
                        source.label(a),
                        source.label(b),
                        source.label(c)
                    ));
                }
            }
            Finding::proved("checked on every defined sum")
        }
        Homomorphism::Affine { source, target, .. } => {
            if &h.apply(source.unit()) != target.unit() {
                return Finding::refuted(format!("h(1) = {}", h.apply(source.unit())));
            }
            let pts = source.sample_points(budget);
            if let Some(x) = pts.iter().find(|x| !target.member(&h.apply(x))) {
                return Finding::refuted(format!("h{} = {} leaves the target", x, h.apply(x)));
            }
            let pairs = sampling::pairs(&pts, budget.samples, &mut sampling::rng(budget.seed));
            for (a, b) in pairs.iter().chain(std::iter::once(&(source.zero(), source.zero()))) {
                if let Some(c) = source.sum(a, b) {
                    if target.sum(&h.apply(a), &h.apply(b)) != Some(h.apply(&c)) {
                        return Finding::refuted(format!("h{} + h{} ≠ h{}", a, b, c));
                    }
                }
            }
            Finding::new(
                Verdict::Witnessed(*budget),
                format!("{} grid points, {} sampled pairs", pts.len(), pairs.len()),
            )
        }
    }
}

/// `Ker(h)`, with the ideal conditions checked on it.
pub fn kernel(h: &Homomorphism, budget: &Budget) -> (Ideal, Finding) {
    match h {
        Homomorphism::Table { source, target, map } => {
            let k: IdealSet = source.elements().filter(|&i| map[i] == target.zero_idx()).collect();
            let ok = fin::is_ideal(source, &k);
            (
                Ideal::Finite(k),
                Finding::new(Verdict::from_bool(ok), "kernel checked as an ideal"),
            )
        }
        Homomorphism::Affine {
            source, matrix, offset, ..
        } => {
            let atoms = matrix
                .iter()
                .zip(offset.coords())
                .map(|(row, c)| Pred::atom(LinearAtom::new(row.iter().copied().enumerate(), *c, Rel::Eq)))
                .collect();
            let p = Pred::and(atoms);
            let f = symbolic::is_ideal(source, &p, budget);
            (Ideal::Symbolic(p), f)
        }
    }
}

/// Per-element invariants preserved by any isomorphism.
fn signature(e: &FiniteEffectAlgebra) -> Vec<(usize, usize, usize, bool)> {
    let deg = e.degrees();
    e.elements()
        .map(|a| {
            let below = e.elements().filter(|&b| e.le(b, a)).count();
            let self_sum = e.add(a, a).is_some();
            (deg[a], below, e.multiples(a).len(), self_sum)
        })
        .collect()
}

/// A label bijection preserving the sum table, by backtracking with
/// candidates pruned to elements of equal signature.
pub fn iso_search(e: &FiniteEffectAlgebra, f: &FiniteEffectAlgebra) -> Option<Vec<usize>> {
    if e.len() != f.len() {
        return None;
    }
    let (se, sf) = (signature(e), signature(f));
    let mut a: Vec<usize> = se.clone().into_iter().map(|s| s.0).collect();
    let mut b: Vec<usize> = sf.clone().into_iter().map(|s| s.0).collect();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let candidates: Vec<Vec<usize>> = e
        .elements()
        .map(|x| f.elements().filter(|&y| se[x] == sf[y]).collect())
        .collect();
    let mut order: Vec<usize> = e.elements().collect();
    order.sort_by_key(|&x| candidates[x].len());
    let mut map = vec![usize::MAX; e.len()];
    let mut used = vec![false; f.len()];
    fn consistent(e: &FiniteEffectAlgebra, f: &FiniteEffectAlgebra, map: &[usize], x: usize) -> bool {
        e.elements().filter(|&y| map[y] != usize::MAX).all(|y| {
            let lhs = e.add(x, y).map(|c| map[c]);
            let rhs = f.add(map[x], map[y]);
            match lhs {
                Some(usize::MAX) => rhs.is_some(),
                other => other == rhs,
            }
        })
    }
    fn go(
        k: usize,
        order: &[usize],
        cand: &[Vec<usize>],
        e: &FiniteEffectAlgebra,
        f: &FiniteEffectAlgebra,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(&x) = order.get(k) else { return true };
        for &y in &cand[x] {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(e, f, map, x) && go(k + 1, order, cand, e, f, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
    if !go(0, &order, &candidates, e, f, &mut map, &mut used) {
        return None;
    }
    let iso = Homomorphism::Table {
        source: e.clone(),
        target: f.clone(),
        map: map.clone(),
    };
    let inv = Homomorphism::Table {
        source: f.clone(),
        target: e.clone(),
        map: invert(&map),
    };
    let b = Budget::default();
    (verify_hom(&iso, &b).holds() && verify_hom(&inv, &b).holds()).then_some(map)
}

pub fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `f(x) = f(y)` iff `x − e = y − g` for some `e ≤ x`, `g ≤ y` in the kernel.
pub fn has_sim_property(h: &Homomorphism) -> Result<Finding> {
    let Homomorphism::Table { source: e, target, map } = h else {
        return Err(Error::Unsupported("~-property is decided on tables only".into()));
    };
    if h.is_surjective() != Some(true) {
        return Err(Error::Unsupported("~-property needs a surjective homomorphism".into()));
    }
    let ker: Vec<usize> = e.elements().filter(|&i| map[i] == target.zero_idx()).collect();
    let related = |x: usize, y: usize| {
        ker.iter().any(|&a| {
            e.sub(x, a)
                .is_some_and(|xa| ker.iter().any(|&b| e.sub(y, b) == Some(xa)))
        })
    };
    for x in e.elements() {
        for y in e.elements() {
            if (map[x] == map[y]) != related(x, y) {
                return Ok(Finding::refuted(format!(
                    "{} and {}: equal images {}, kernel witnesses {}",
                    e.label(x),
                    e.label(y),
                    map[x] == map[y],
                    related(x, y)
                )));
            }
        }
    }
    Ok(Finding::proved(format!("all {} pairs agree", e.len() * e.len())))
}

/// Every defined `f(a) + f(b)` lifts to a defined sum of preimages.
pub fn is_full(h: &Homomorphism) -> Result<Finding> {
    let Homomorphism::Table { source: e, target, map } = h else {
        return Err(Error::Unsupported("fullness is decided on tables only".into()));
    };
    for a in e.elements() {
        for b in e.elements() {
            if target.add(map[a], map[b]).is_none() {
                continue;
            }
            let lifts = e.elements().any(|a1| {
                map[a1] == map[a]
                    && e
                        .elements()
                        .any(|b1| map[b1] == map[b] && e.add(a1, b1).is_some())
            });
            if !lifts {
                return Ok(Finding::refuted(format!(
                    "f({}) + f({}) has no defined lift",
                    e.label(a),
                    e.label(b)
                )));
            }
        }
    }
    Ok(Finding::proved("every defined image sum lifts"))
}

/// Kernels of Riesz projections: the projection is a homomorphism with the
/// ~-property, hence full, and its kernel is the ideal.
pub fn riesz_projection_report(e: &FiniteEffectAlgebra, i: &IdealSet) -> Result<Vec<(String, Finding)>> {
    let q = fin::quotient(e, i)?;
    let h = Homomorphism::projection(e, &q);
    let b = Budget::default();
    let (k, _) = kernel(&h, &b);
    let sim = has_sim_property(&h)?;
    let full = is_full(&h)?;
    let rdp_src = e.check_rdp();
    let rdp_q = q.algebra.check_rdp();
    Ok(vec![
        ("homomorphism".into(), verify_hom(&h, &b)),
        (
            "kernel equals ideal".into(),
            Finding::new(Verdict::from_bool(k == Ideal::Finite(i.clone())), "Ker(π_I) = I"),
        ),
        ("~-property".into(), sim.clone()),
        (
            "full".into(),
            Finding::new(
                full.verdict.and(if sim.holds() && !full.holds() {
                    Verdict::Refuted(None)
                } else {
                    Verdict::Proved
                }),
                full.detail,
            ),
        ),
        (
            "quotient inherits RDP".into(),
            Finding::new(
                Verdict::from_bool(!rdp_src.holds() || rdp_q.holds()),
                format!("source: {}; quotient: {}", rdp_src.verdict.label(), rdp_q.verdict.label()),
            ),
        ),
    ])
}
