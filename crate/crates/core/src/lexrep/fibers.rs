//! Ordered and directed decompositions, their consequences, and the
//! quotient by the zero fibre.

use serde::Serialize;

use super::view::{on_view, AnyView, View};
use crate::effalg::{EffectAlgebra, FiniteEffectAlgebra, Host};
use crate::ideals::finite as fin;
use crate::ideals::symbolic;
use crate::morphisms::{verify_hom, Homomorphism};
use crate::states::HuDecomposition;
use crate::vector::Vector;
use crate::verdict::{Budget, Checks, Finding, Verdict};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct OrderedReport {
    /// `E_s ≤ E_t` whenever `s < t`.
    pub ordered: Finding,
    /// `E_w + E_v` exists whenever `w + v < u`.
    pub sum_criterion: Finding,
    pub agree: bool,
}

impl OrderedReport {
    pub fn holds(&self) -> bool {
        self.ordered.holds()
    }
}

fn ordered_in<A: EffectAlgebra>(v: &View<A>) -> OrderedReport {
    let t = v.target;
    let u = t.unit();
    let pairs = v.pairs_where(|s, r| t.lt(s, r));
    let mut ordered = v.pass(format!("{} pairs across increasing fibres", pairs.len()));
    for &(k, l) in &pairs {
        let (x, y) = (&v.pts[k], &v.pts[l]);
        if !v.alg.leq(x, y) {
            ordered = Finding::refuted(format!(
                "{} ∈ E{} and {} ∈ E{} but {} ≰ {}",
                v.show(x),
                v.fiber[k],
                v.show(y),
                v.fiber[l],
                v.show(x),
                v.show(y)
            ));
            break;
        }
    }
    let below_u = |s: &Vector, r: &Vector| {
        let w = s + r;
        &w != u && t.group().le(&w, u)
    };
    let pairs = v.pairs_where(below_u);
    let mut sum_criterion = v.pass(format!("{} pairs with index sum below u", pairs.len()));
    for &(k, l) in &pairs {
        let (x, y) = (&v.pts[k], &v.pts[l]);
        if v.alg.sum(x, y).is_none() {
            sum_criterion = Finding::refuted(format!(
                "{} + {} undefined although {} + {} < {}",
                v.show(x),
                v.show(y),
                v.fiber[k],
                v.fiber[l],
                u
            ));
            break;
        }
    }
    let agree = ordered.holds() == sum_criterion.holds();
    OrderedReport {
        ordered,
        sum_criterion,
        agree,
    }
}

/// Fibres increase with their index, cross-checked against the sum criterion.
pub fn is_ordered_decomposition(host: &Host, d: &HuDecomposition, budget: &Budget) -> Result<OrderedReport> {
    let view = AnyView::new(host, d, budget)?;
    Ok(on_view!(&view, v => ordered_in(v)))
}

/// Fibre `t` is directed both ways.
fn directed_fiber<A: EffectAlgebra>(v: &View<A>, t: &Vector) -> Finding {
    let members = v.members(t);
    let pairs = v.pairs_where(|s, r| s == t && r == t);
    for &(k, l) in &pairs {
        let (x, y) = (&v.pts[k], &v.pts[l]);
        let lower = members
            .iter()
            .any(|&m| v.alg.leq(&v.pts[m], x) && v.alg.leq(&v.pts[m], y));
        let upper = members
            .iter()
            .any(|&m| v.alg.leq(x, &v.pts[m]) && v.alg.leq(y, &v.pts[m]));
        if !lower || !upper {
            return v.miss(format!(
                "no common {} bound of {} and {} in E{}",
                if lower { "upper" } else { "lower" },
                v.show(x),
                v.show(y),
                t
            ));
        }
    }
    v.pass(format!("{} pairs in E{} have bounds in the fibre", pairs.len(), t))
}

fn directed_in<A: EffectAlgebra>(v: &View<A>) -> Finding {
    let mut out = v.pass("every fibre is directed");
    for t in distinct(&v.fiber) {
        let f = directed_fiber(v, &t);
        if !f.holds() {
            return f;
        }
        out.verdict = out.verdict.and(f.verdict);
    }
    out
}

fn distinct(fibers: &[Vector]) -> Vec<Vector> {
    let mut ts = fibers.to_vec();
    ts.sort();
    ts.dedup();
    ts
}

/// Every fibre is upward and downward directed.
pub fn is_directed_decomposition(host: &Host, d: &HuDecomposition, budget: &Budget) -> Result<Finding> {
    let view = AnyView::new(host, d, budget)?;
    Ok(on_view!(&view, v => directed_in(v)))
}

fn consequences_in<A: EffectAlgebra>(v: &View<A>) -> Checks {
    let t = v.target;
    let u = t.unit().clone();
    let zero = t.zero();
    let mut out = Checks::new();

    let pairs = v.pairs_where(|s, r| s == &zero && r == &zero);
    let bad = pairs.iter().find(|&&(k, l)| {
        v.alg
            .sum(&v.pts[k], &v.pts[l])
            .and_then(|s| v.fiber_of(&s))
            .as_ref()
            != Some(&zero)
    });
    out.push((
        "E0 + E0 = E0".into(),
        match bad {
            Some(&(k, l)) => Finding::refuted(format!(
                "{} + {} is not in E0",
                v.show(&v.pts[k]),
                v.show(&v.pts[l])
            )),
            None => v.pass(format!("{} pairs of E0", pairs.len())),
        },
    ));

    let bound = if v.exhaustive { v.pts.len() + 1 } else { 64 };
    let zeros = v.members(&zero);
    let bad = zeros.iter().find(|&&k| v.multiple(&v.pts[k], bound).is_none());
    out.push((
        "E0 ⊆ Infin(E)".into(),
        match bad {
            Some(&k) => Finding::refuted(format!("{}·{} is undefined", bound, v.show(&v.pts[k]))),
            None => v.pass(format!("{} multiples defined for {} members", bound, zeros.len())),
        },
    ));

    let below_u = |s: &Vector, r: &Vector| {
        let w = s + r;
        w != u && t.group().le(&w, &u)
    };
    let pairs = v.pairs_where(below_u);
    let bad = pairs.iter().find(|&&(k, l)| {
        let w = &v.fiber[k] + &v.fiber[l];
        v.alg.sum(&v.pts[k], &v.pts[l]).and_then(|s| v.fiber_of(&s)) != Some(w)
    });
    let mut sums = match bad {
        Some(&(k, l)) => Finding::refuted(format!(
            "{} + {} misses E{}",
            v.show(&v.pts[k]),
            v.show(&v.pts[l]),
            &v.fiber[k] + &v.fiber[l]
        )),
        None => v.pass(format!("⊆ on {} pairs", pairs.len())),
    };
    if sums.holds() {
        let targets = distinct(&v.fiber);
        let limit = v.budget.samples.min(v.pts.len());
        'outer: for z in 0..v.pts.len() {
            if !v.exhaustive && z >= limit {
                break;
            }
            let r = &v.fiber[z];
            if r == &u {
                continue;
            }
            for s in targets.iter().filter(|s| t.group().le(s, r)) {
                let rest = r - s;
                let split = v.members(s).into_iter().any(|k| {
                    v.alg
                        .minus(&v.pts[z], &v.pts[k])
                        .and_then(|m| v.fiber_of(&m))
                        .as_ref()
                        == Some(&rest)
                });
                if !split {
                    sums = v.miss(format!("{} ∈ E{} has no part in E{}", v.show(&v.pts[z]), r, s));
                    break 'outer;
                }
            }
        }
        if sums.holds() {
            sums.detail = format!("{}; ⊇ by splitting members", sums.detail);
        }
    }
    out.push(("E_s + E_v = E_(s+v) for s+v < u".into(), sums));

    let pairs = v.pairs_where(|s, r| !t.group().le(&(s + r), &u));
    let bad = pairs.iter().find(|&&(k, l)| v.alg.sum(&v.pts[k], &v.pts[l]).is_some());
    out.push((
        "no sums across u".into(),
        match bad {
            Some(&(k, l)) => Finding::refuted(format!(
                "{} + {} is defined with index sum {}",
                v.show(&v.pts[k]),
                v.show(&v.pts[l]),
                &v.fiber[k] + &v.fiber[l]
            )),
            None => v.pass(format!("{} pairs with index sum above u undefined", pairs.len())),
        },
    ));

    out.push(("E_u directed".into(), directed_fiber(v, &u)));
    out
}

/// Consequences of orderedness on the zero fibre and fibre sums.
pub fn ordered_decomposition_consequences(host: &Host, d: &HuDecomposition, budget: &Budget) -> Result<Checks> {
    let view = AnyView::new(host, d, budget)?;
    let mut out = on_view!(&view, v => consequences_in(v));
    let zero = d.target.zero();
    let riesz = match &view {
        AnyView::Table(v) => fin::is_riesz(&v.alg, &v.members(&zero).into_iter().collect()),
        AnyView::Grid(v) => match d.fiber_pred(&zero) {
            Some(p) => symbolic::is_riesz(&v.alg, p, budget),
            None => Finding::new(Verdict::Unknown(*budget), "zero fibre has no predicate"),
        },
    };
    out.insert(2, ("E0 Riesz".into(), riesz));
    Ok(out)
}

/// `E/E0` next to `Γ(H,u)` with the class map `x/E0 ↦ t` for `x ∈ E_t`.
#[derive(Clone, Debug)]
pub struct HeadIso {
    pub quotient: FiniteEffectAlgebra,
    pub head: FiniteEffectAlgebra,
    /// Head index of each quotient class.
    pub map: Vec<usize>,
    pub finding: Finding,
}

fn class_map(
    classes: usize,
    members: impl Iterator<Item = (usize, Vector, String)>,
    head_points: &[Vector],
) -> std::result::Result<Vec<Option<usize>>, String> {
    let mut map = vec![None; classes];
    for (c, t, who) in members {
        let j = head_points
            .binary_search(&t)
            .map_err(|_| format!("fibre {} is not in [0,u]", t))?;
        match map[c] {
            Some(old) if old != j => {
                return Err(format!("class of {} meets fibres {} and {}", who, head_points[old], t))
            }
            _ => map[c] = Some(j),
        }
    }
    Ok(map)
}

pub fn quotient_head_iso(host: &Host, d: &HuDecomposition, budget: &Budget) -> Result<HeadIso> {
    let head_en = d.target.enumerate()?;
    let view = AnyView::new(host, d, budget)?;
    let zero = d.target.zero();
    let (quotient, map, sampled) = match &view {
        AnyView::Table(v) => {
            let e0 = v.members(&zero).into_iter().collect();
            let q = fin::quotient(&v.alg, &e0)?;
            let members = v
                .alg
                .elements()
                .map(|i| (q.class_of[i], v.fiber[i].clone(), v.alg.label(i).to_string()));
            let map = class_map(q.classes.len(), members, &head_en.points).map_err(Error::Decomposition)?;
            (q.algebra, map, Finding::proved("every element checked"))
        }
        AnyView::Grid(v) => {
            let pred = d
                .fiber_pred(&zero)
                .ok_or_else(|| Error::Decomposition("zero fibre has no predicate".into()))?;
            let sq = symbolic::quotient(&v.alg, pred, budget)?;
            let qen = sq.algebra.enumerate()?;
            let mut members = Vec::new();
            for (x, t) in v.pts.iter().zip(&v.fiber) {
                let c = qen
                    .index_of(&sq.project(x))
                    .ok_or_else(|| Error::Decomposition(format!("{} projects outside the quotient", x)))?;
                members.push((c, t.clone(), x.to_string()));
            }
            let map = class_map(qen.points.len(), members.into_iter(), &head_en.points)
                .map_err(Error::Decomposition)?;
            let check = Finding::new(
                sq.check.verdict.and(Verdict::Witnessed(*budget)),
                format!("classes read off {} grid points; {}", v.pts.len(), sq.check.detail),
            );
            (qen.algebra, map, check)
        }
    };
    let head = head_en.algebra;
    if let Some(c) = map.iter().position(Option::is_none) {
        let f = Finding::new(
            view_miss(&view, budget),
            format!("class {} meets no sampled fibre", quotient.label(c)),
        );
        return Ok(HeadIso {
            quotient,
            head,
            map: Vec::new(),
            finding: f,
        });
    }
    let map: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
    let h = Homomorphism::table(&quotient, &head, map.clone())?;
    let hom = verify_hom(&h, budget);
    let bij = h.is_injective() == Some(true) && h.is_surjective() == Some(true);
    let verdict = hom.verdict.and(Verdict::from_bool(bij)).and(sampled.verdict);
    let detail = if !bij {
        format!("class map is not a bijection onto {} head elements", head.len())
    } else if !hom.holds() {
        hom.detail
    } else {
        format!("bijective homomorphism onto Γ(H,u); {}", sampled.detail)
    };
    Ok(HeadIso {
        quotient,
        head,
        map,
        finding: Finding::new(verdict, detail),
    })
}

fn view_miss(view: &AnyView, budget: &Budget) -> Verdict {
    match view {
        AnyView::Table(_) => Verdict::Refuted(None),
        AnyView::Grid(_) => Verdict::Unknown(*budget),
    }
}

/// Two decompositions of one host have the same fibres on the tested carrier.
pub fn same_fibers(host: &Host, d1: &HuDecomposition, d2: &HuDecomposition, budget: &Budget) -> Result<Finding> {
    if d1.target != d2.target {
        return Ok(Finding::refuted(format!(
            "targets differ: {} and {}",
            d1.target.unit(),
            d2.target.unit()
        )));
    }
    let a = AnyView::new(host, d1, budget)?;
    let b = AnyView::new(host, d2, budget)?;
    let (fa, fb, exhaustive) = match (&a, &b) {
        (AnyView::Table(x), AnyView::Table(y)) => (&x.fiber, &y.fiber, true),
        (AnyView::Grid(x), AnyView::Grid(y)) => (&x.fiber, &y.fiber, false),
        _ => return Err(Error::Shape("one table and one symbolic decomposition".into())),
    };
    if let Some(k) = (0..fa.len()).find(|&k| fa[k] != fb[k]) {
        return Ok(Finding::refuted(format!(
            "element {} lies in E{} and E{}",
            k, fa[k], fb[k]
        )));
    }
    let v = if exhaustive {
        Verdict::Proved
    } else {
        Verdict::Witnessed(*budget)
    };
    Ok(Finding::new(v, format!("fibres agree on {} elements", fa.len())))
}
