//! Local algebras with a retractive strict radical, three ways.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{find_strong_family, is_directed_decomposition, is_ordered_decomposition};
use crate::effalg::{classify_finite, classify_interval, FiniteEffectAlgebra, Host, IntervalEffectAlgebra};
use crate::ideals::finite as fin;
use crate::ideals::symbolic::{self, Candidates};
use crate::morphisms::iso_search;
use crate::pogroup::{ConePoGroup, Domain};
use crate::predicate::Pred;
use crate::states::{hu_state_to_decomposition, Fibers, HuDecomposition, HuMap, HuState};
use crate::vector::{int, Rat, Vector};
use crate::verdict::{Budget, Checks, Finding, Verdict};
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub rdp: Finding,
    pub radical: String,
    pub checks: Checks,
    /// Local with a strict retractive radical; strong perfect over a simple
    /// Archimedean antilattice head; a lexicographic interval over such a head.
    pub branches: [Finding; 3],
    /// The branches that were decided agree.
    pub consistent: bool,
    pub head: Option<String>,
    pub tail: Option<String>,
}

impl Classification {
    pub fn branch_names() -> [&'static str; 3] {
        [
            "local, Rad strict and retractive",
            "strong perfect over a simple Archimedean antilattice head",
            "isomorphic to Γ(H ×lex G, (u,0))",
        ]
    }
}

fn consistent(branches: &[Finding; 3]) -> bool {
    let decided: BTreeSet<bool> = branches
        .iter()
        .filter(|f| !f.verdict.is_unknown())
        .map(|f| f.holds())
        .collect();
    decided.len() <= 1
}

fn all(parts: &[&Finding], detail: impl Into<String>) -> Finding {
    let v = parts.iter().fold(Verdict::Proved, |v, f| v.and(f.verdict));
    let failed: Vec<&str> = parts
        .iter()
        .filter(|f| !f.holds())
        .map(|f| f.detail.as_str())
        .collect();
    if failed.is_empty() {
        Finding::new(v, detail)
    } else {
        Finding::new(v, failed.join("; "))
    }
}

/// Antilattice, simple and Archimedean verdicts for a head.
fn head_finite_parts(q: &FiniteEffectAlgebra) -> [Finding; 3] {
    let anti = classify_finite(q).antilattice;
    let simple = fin::is_simple(q);
    [
        Finding::new(anti.verdict, format!("antilattice: {}", anti.detail)),
        Finding::new(
            Verdict::from_bool(simple),
            if simple { "simple" } else { "head has a nontrivial ideal" },
        ),
        q.is_archimedean(),
    ]
}

fn head_parts(h: &IntervalEffectAlgebra, budget: &Budget) -> [Finding; 3] {
    if let Ok(en) = h.enumerate() {
        return head_finite_parts(&en.algebra);
    }
    let anti = classify_interval(h, budget).antilattice;
    [
        Finding::new(anti.verdict, format!("antilattice: {}", anti.detail)),
        symbolic::is_simple(h, &Candidates::new(h, budget), budget),
        h.is_archimedean(budget),
    ]
}

const HEAD_OK: &str = "head is a simple Archimedean antilattice";

fn head_finite(q: &FiniteEffectAlgebra) -> Finding {
    let [a, s, r] = head_finite_parts(q);
    all(&[&a, &s, &r], HEAD_OK)
}

fn head_interval(h: &IntervalEffectAlgebra, budget: &Budget) -> Finding {
    let [a, s, r] = head_parts(h, budget);
    all(&[&a, &s, &r], HEAD_OK)
}

fn chain_target(n: usize) -> Result<IntervalEffectAlgebra> {
    let z = ConePoGroup::product(Domain::Integer, 1, None)?;
    IntervalEffectAlgebra::gamma(&z, &Vector::from_ints(&[n as i128]))
}

fn skipped(rdp: Finding, radical: String, budget: &Budget) -> Classification {
    let f = Finding::new(Verdict::Unknown(*budget), "requires RDP");
    Classification {
        rdp,
        radical,
        checks: Checks::new(),
        branches: [f.clone(), f.clone(), f],
        consistent: true,
        head: None,
        tail: None,
    }
}

fn classify_table(host: &Host, f: &FiniteEffectAlgebra, budget: &Budget) -> Result<Classification> {
    let rad = fin::radical(f);
    let radical = crate::ideals::Ideal::Finite(rad.clone()).describe_in(Some(f));
    let rdp = f.check_rdp();
    if !rdp.holds() {
        return Ok(skipped(rdp, radical, budget));
    }
    let maximal = fin::maximal_ideals(f);
    let local = Finding::new(
        Verdict::from_bool(maximal.len() == 1),
        format!("{} maximal ideals", maximal.len()),
    );
    let strict = fin::is_strict(f, &rad)?;
    let (retr, _) = fin::is_retractive(f, &rad)?;
    let first = all(&[&local, &strict, &retr], "local; Rad strict and retractive");

    let q = fin::quotient(f, &rad)?;
    let hp = head_finite(&q.algebra);
    let n = q.algebra.len() - 1;
    let target = chain_target(n)?;
    let en = target.enumerate()?;
    let mut checks: Checks = vec![
        ("local".into(), local.clone()),
        ("Rad strict".into(), strict.clone()),
        ("Rad retractive".into(), retr.clone()),
        ("head".into(), hp.clone()),
    ];
    let head_iso = iso_search(&q.algebra, &en.algebra);
    let head = head_iso.is_some().then(|| format!("(Z,{})", n));
    let second = match head_iso {
        Some(iso) => {
            let fibers = en
                .points
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    let set = f.elements().filter(|&x| iso[q.class_of[x]] == j).collect();
                    (t.clone(), set)
                })
                .collect();
            let d = HuDecomposition {
                target,
                fibers: Fibers::Table(fibers),
            };
            let ordered = is_ordered_decomposition(host, &d, budget)?.ordered;
            let directed = is_directed_decomposition(host, &d, budget)?;
            let family = find_strong_family(host, &d, budget)?.finding;
            checks.push(("ordered".into(), ordered.clone()));
            checks.push(("directed".into(), directed.clone()));
            checks.push(("strong family".into(), family.clone()));
            all(
                &[&ordered, &directed, &family, &hp],
                format!("fibres are the Rad classes over Γ(Z,{})", n),
            )
        }
        None if !hp.holds() => hp.clone(),
        None => Finding::refuted("E/Rad is not a chain"),
    };
    let chain = iso_search(f, &FiniteEffectAlgebra::chain(f.len() - 1)).is_some();
    let third = Finding::new(
        Verdict::from_bool(chain),
        if chain {
            format!("E ≅ Γ(Z ×lex O, ({},0))", f.len() - 1)
        } else {
            "a finite Γ(H ×lex G,(u,0)) has G = O and would be a chain; E is not".to_string()
        },
    );
    let branches = [first, second, third];
    Ok(Classification {
        rdp,
        radical,
        checks,
        consistent: consistent(&branches),
        branches,
        tail: head.as_ref().map(|_| "O".to_string()),
        head,
    })
}

fn selection(keep: &[usize], n: usize) -> Vec<Vec<Rat>> {
    keep.iter()
        .map(|&i| (0..n).map(|j| int((i == j) as i128)).collect())
        .collect()
}

fn classify_symbolic(e: &IntervalEffectAlgebra, budget: &Budget) -> Result<Classification> {
    let host = Host::Interval(e.clone());
    let cands = Candidates::new(e, budget);
    let rad = cands.radical();
    let radical = rad.to_string();
    let rdp = e.check_rdp(budget);
    if !rdp.holds() {
        return Ok(skipped(rdp, radical, budget));
    }
    let local = cands.is_local(budget);
    let strict = symbolic::is_strict(e, &rad, budget)?;
    let (retr, _) = symbolic::is_retractive(e, &rad, budget)?;
    let first = all(&[&local, &strict, &retr], "local; Rad strict and retractive");
    let mut checks: Checks = vec![
        ("local".into(), local),
        ("Rad strict".into(), strict),
        ("Rad retractive".into(), retr),
    ];
    let unknown = |why: &str| Finding::new(Verdict::Unknown(*budget), why);
    let keep = symbolic::face(&rad).unwrap_or_default();
    let n = e.rank();
    let (second, third, head, tail) = if keep.len() == n {
        let hp = head_interval(e, budget);
        checks.push(("head".into(), hp.clone()));
        let second = all(&[&hp], "singleton fibres over E itself with c_t = t");
        let third = all(&[&hp], format!("E = Γ({} ×lex O, ({},0))", e.group().name(), e.unit()));
        (second, third, Some(format!("({},{})", e.group().name(), e.unit())), Some("O".into()))
    } else if keep.is_empty() {
        (unknown("no proper ideal among the candidates"), unknown("no head"), None, None)
    } else {
        let sq = symbolic::quotient(e, &rad, budget)?;
        let h = &sq.algebra;
        let hp = head_interval(h, budget);
        checks.push(("head".into(), hp.clone()));
        let second = if h.is_enumerable() {
            let s = HuState {
                target: h.clone(),
                map: HuMap::Affine {
                    matrix: selection(&keep, n),
                    offset: Vector::zero(keep.len()),
                },
            };
            let d = hu_state_to_decomposition(&host, &s, budget)?;
            let ordered = is_ordered_decomposition(&host, &d, budget)?.ordered;
            let directed = is_directed_decomposition(&host, &d, budget)?;
            let family = find_strong_family(&host, &d, budget)?.finding;
            checks.push(("ordered".into(), ordered.clone()));
            checks.push(("directed".into(), directed.clone()));
            checks.push(("strong family".into(), family.clone()));
            all(
                &[&ordered, &directed, &family, &hp],
                format!("fibres of the projection onto {}", h.group().name()),
            )
        } else {
            unknown("the head interval is infinite")
        };
        let k = keep.len();
        let split = (keep == (0..k).collect::<Vec<_>>())
            .then(|| e.group().split_lex(k))
            .flatten();
        let (third, tail) = match split {
            None => (unknown("Rad is not cut out by leading lexicographic coordinates"), None),
            Some((_, g)) => {
                let fill: Vec<usize> = (k..n).collect();
                let directed = g.is_directed(budget);
                let g_rdp = g.check_rdp_cone(budget);
                let shear = symbolic::section_matrix(e, &keep, &fill);
                let f = match shear {
                    Ok(_) => all(
                        &[&hp, &directed, &g_rdp],
                        format!("E ≅ Γ({} ×lex {}, (u,0))", h.group().name(), g.name()),
                    ),
                    Err(obstruction) => unknown(&format!(
                        "unit {} has a nonzero tail and no shear removes it ({})",
                        e.unit(),
                        obstruction
                    )),
                };
                (f, Some(g.name()))
            }
        };
        (second, third, Some(format!("({},{})", h.group().name(), h.unit())), tail)
    };
    let branches = [first, second, third];
    Ok(Classification {
        rdp,
        radical,
        checks,
        consistent: consistent(&branches),
        branches,
        head,
        tail,
    })
}

/// Decides the three branches on a finite host or a symbolic interval.
pub fn classify_local_retractive(host: &Host, budget: &Budget) -> Result<Classification> {
    match (host, host.finite()) {
        (_, Some(f)) => classify_table(&Host::Finite(f.clone()), &f, budget),
        (Host::Interval(e), None) => classify_symbolic(e, budget),
        (Host::Finite(_), None) => unreachable!("finite hosts always have a table"),
    }
}

/// Maximality of the zero fibre next to simplicity of the head.
#[derive(Clone, Debug, Serialize)]
pub struct HeadMaximality {
    pub zero_fiber_maximal: Finding,
    pub head_simple_antilattice: Finding,
    pub agree: bool,
}

pub fn head_maximality(e: &IntervalEffectAlgebra, budget: &Budget) -> Result<HeadMaximality> {
    let (head, _) = e
        .head_tail()
        .ok_or_else(|| crate::Error::Unsupported("no declared lexicographic split".into()))?;
    let e0 = Pred::zero_on(0..head.rank());
    let cands = Candidates::new(e, budget);
    let maximal = cands
        .maximal()
        .into_iter()
        .any(|m| cands.included(e, m, &e0) && cands.included(e, &e0, m));
    let zero_fiber_maximal = Finding::new(
        Verdict::sampled(maximal, *budget),
        format!("{} among maximal candidates: {}", e0, maximal),
    );
    let [anti, simple, _] = head_parts(&head, budget);
    let head_simple_antilattice = all(&[&anti, &simple], "head is a simple antilattice");
    let agree = zero_fiber_maximal.holds() == head_simple_antilattice.holds();
    Ok(HeadMaximality {
        zero_fiber_maximal,
        head_simple_antilattice,
        agree,
    })
}
