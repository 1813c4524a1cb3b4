use std::collections::{BTreeSet, VecDeque};

use crate::effalg::finite::exhaustive;
use crate::effalg::FiniteEffectAlgebra;
use crate::verdict::{Finding, Verdict};
use crate::{Error, Result};

use super::Generation;

pub type IdealSet = BTreeSet<usize>;

/// Quotient `E/I` with the class of every host element.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    pub algebra: FiniteEffectAlgebra,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

pub fn is_ideal(e: &FiniteEffectAlgebra, set: &IdealSet) -> bool {
    if !set.contains(&e.zero_idx()) {
        return false;
    }
    for &b in set {
        for a in e.elements() {
            if e.le(a, b) && !set.contains(&a) {
                return false;
            }
        }
        for &c in set {
            if let Some(s) = e.add(b, c) {
                if !set.contains(&s) {
                    return false;
                }
            }
        }
    }
    true
}

/// Least ideal containing `gens`, by alternating downward and sum closure.
pub fn closure(e: &FiniteEffectAlgebra, gens: &IdealSet) -> IdealSet {
    let mut set: IdealSet = gens.clone();
    set.insert(e.zero_idx());
    loop {
        let mut next = set.clone();
        for &b in &set {
            next.extend(e.elements().filter(|&a| e.le(a, b)));
            for &c in &set {
                if let Some(s) = e.add(b, c) {
                    next.insert(s);
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Finite sums of elements lying below some generator.
pub fn riesz_sums(e: &FiniteEffectAlgebra, gens: &IdealSet) -> IdealSet {
    let below: IdealSet = e
        .elements()
        .filter(|&x| x == e.zero_idx() || gens.iter().any(|&a| e.le(x, a)))
        .collect();
    let mut set = below.clone();
    let mut queue: VecDeque<usize> = set.iter().copied().collect();
    while let Some(s) = queue.pop_front() {
        for &d in &below {
            if let Some(t) = e.add(s, d) {
                if set.insert(t) {
                    queue.push_back(t);
                }
            }
        }
    }
    set
}

/// The ideal generated by `gens`; the sum formula on RDP hosts, the closure
/// fixpoint otherwise.
pub fn generated_ideal(e: &FiniteEffectAlgebra, gens: &IdealSet) -> (IdealSet, Generation) {
    if e.rdp_counterexample().is_none() {
        (riesz_sums(e, gens), Generation::RieszSums)
    } else {
        (closure(e, gens), Generation::Closure)
    }
}

/// Every ideal, reached from `{0}` by adjoining one element at a time.
pub fn all_ideals(e: &FiniteEffectAlgebra) -> Vec<IdealSet> {
    let start = closure(e, &IdealSet::new());
    let mut seen: BTreeSet<IdealSet> = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for x in e.elements().filter(|x| !i.contains(x)) {
            let mut g = i.clone();
            g.insert(x);
            let j = closure(e, &g);
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    let mut out: Vec<IdealSet> = seen.into_iter().collect();
    out.sort_by_key(|i| (i.len(), i.iter().copied().collect::<Vec<_>>()));
    out
}

pub fn is_proper(e: &FiniteEffectAlgebra, i: &IdealSet) -> bool {
    !i.contains(&e.one_idx())
}

pub fn maximal_ideals(e: &FiniteEffectAlgebra) -> Vec<IdealSet> {
    let proper: Vec<IdealSet> = all_ideals(e).into_iter().filter(|i| is_proper(e, i)).collect();
    proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .cloned()
        .collect()
}

/// `I₀(x) ∩ I₀(y) ⊆ I` implies `x ∈ I` or `y ∈ I`.
pub fn is_prime(e: &FiniteEffectAlgebra, i: &IdealSet) -> bool {
    let gens: Vec<IdealSet> = e
        .elements()
        .map(|x| closure(e, &IdealSet::from([x])))
        .collect();
    for x in e.elements() {
        for y in e.elements() {
            if i.contains(&x) || i.contains(&y) {
                continue;
            }
            if gens[x].intersection(&gens[y]).all(|z| i.contains(z)) {
                return false;
            }
        }
    }
    true
}

/// Proper prime ideals.
pub fn prime_ideals(e: &FiniteEffectAlgebra) -> Vec<IdealSet> {
    all_ideals(e)
        .into_iter()
        .filter(|i| is_proper(e, i) && is_prime(e, i))
        .collect()
}

/// Intersection of the maximal ideals.
pub fn radical(e: &FiniteEffectAlgebra) -> IdealSet {
    let mut it = maximal_ideals(e).into_iter();
    match it.next() {
        None => e.elements().collect(),
        Some(first) => it.fold(first, |acc, m| acc.intersection(&m).copied().collect()),
    }
}

pub fn is_local(e: &FiniteEffectAlgebra) -> bool {
    maximal_ideals(e).len() == 1
}

pub fn is_simple(e: &FiniteEffectAlgebra) -> bool {
    all_ideals(e).len() == 2
}

/// `i ≤ a + b` with `i ∈ I` splits as `i ≤ iₐ + i_b`, `iₐ ≤ a`, `i_b ≤ b` in `I`.
pub fn is_riesz(e: &FiniteEffectAlgebra, i: &IdealSet) -> Finding {
    if e.rdp_counterexample().is_none() {
        return Finding::proved("host has RDP");
    }
    for &x in i {
        for a in e.elements() {
            for b in e.elements() {
                let Some(s) = e.add(a, b) else { continue };
                if !e.le(x, s) {
                    continue;
                }
                let ok = i.iter().filter(|&&ia| e.le(ia, a)).any(|&ia| {
                    i.iter()
                        .filter(|&&ib| e.le(ib, b))
                        .any(|&ib| e.add(ia, ib).is_some_and(|t| e.le(x, t)))
                });
                if !ok {
                    return Finding::refuted(format!(
                        "{} ≤ {}+{} does not split inside the ideal",
                        e.label(x),
                        e.label(a),
                        e.label(b)
                    ));
                }
            }
        }
    }
    Finding::proved("exhaustive scan")
}

/// `a ~ b` iff `a − e = b − f` for some `e ≤ a`, `f ≤ b` in `I`.
pub fn related(e: &FiniteEffectAlgebra, i: &IdealSet, a: usize, b: usize) -> bool {
    i.iter()
        .filter_map(|&x| e.sub(a, x))
        .any(|m| i.iter().any(|&y| e.sub(b, y) == Some(m)))
}

pub fn quotient(e: &FiniteEffectAlgebra, i: &IdealSet) -> Result<FiniteQuotient> {
    let riesz = is_riesz(e, i);
    if !riesz.holds() {
        return Err(Error::NotRiesz(riesz.detail));
    }
    let n = e.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let members: Vec<usize> = (a..n)
            .filter(|&b| class_of[b] == usize::MAX && related(e, i, a, b))
            .collect();
        for &b in &members {
            class_of[b] = k;
        }
        classes.push(members);
    }
    for a in 0..n {
        for b in 0..n {
            if (class_of[a] == class_of[b]) != related(e, i, a, b) {
                return Err(Error::NotRiesz(format!(
                    "congruence is not transitive at {}, {}",
                    e.label(a),
                    e.label(b)
                )));
            }
        }
    }
    let m = classes.len();
    let mut table = vec![vec![None; m]; m];
    for a in 0..n {
        for b in 0..n {
            if let Some(s) = e.add(a, b) {
                let (p, q, r) = (class_of[a], class_of[b], class_of[s]);
                match table[p][q] {
                    Some(old) if old != r => {
                        return Err(Error::NotRiesz(format!(
                            "sum of classes of {} and {} is not well defined",
                            e.label(a),
                            e.label(b)
                        )))
                    }
                    _ => table[p][q] = Some(r),
                }
            }
        }
    }
    let labels = classes
        .iter()
        .map(|c| format!("[{}]", e.label(c[0])))
        .collect();
    let algebra = FiniteEffectAlgebra::from_table(
        labels,
        table,
        class_of[e.zero_idx()],
        class_of[e.one_idx()],
    )?;
    Ok(FiniteQuotient {
        algebra,
        class_of,
        classes,
    })
}

/// `x/I < y/I` implies `x < y`.
pub fn is_strict(e: &FiniteEffectAlgebra, i: &IdealSet) -> Result<Finding> {
    let q = quotient(e, i)?;
    let qa = &q.algebra;
    for x in e.elements() {
        for y in e.elements() {
            let (cx, cy) = (q.class_of[x], q.class_of[y]);
            if cx != cy && qa.le(cx, cy) && !(x != y && e.le(x, y)) {
                return Ok(Finding::refuted(format!(
                    "{}/I < {}/I but not {} < {}",
                    e.label(x),
                    e.label(y),
                    e.label(x),
                    e.label(y)
                )));
            }
        }
    }
    Ok(Finding::proved("exhaustive scan"))
}

/// A homomorphism `δ: E/I → E` with `π ∘ δ = id`, by backtracking over class
/// representatives.
pub fn find_section(e: &FiniteEffectAlgebra, q: &FiniteQuotient) -> Option<Vec<usize>> {
    let qa = &q.algebra;
    let m = qa.len();
    let mut assign: Vec<Option<usize>> = vec![None; m];
    fn consistent(
        e: &FiniteEffectAlgebra,
        qa: &FiniteEffectAlgebra,
        assign: &[Option<usize>],
        k: usize,
    ) -> bool {
        let dk = assign[k].unwrap();
        if k == qa.one_idx() && dk != e.one_idx() {
            return false;
        }
        for p in 0..qa.len() {
            let Some(dp) = assign[p] else { continue };
            if let Some(r) = qa.add(k, p) {
                match (e.add(dk, dp), assign[r]) {
                    (None, _) => return false,
                    (Some(s), Some(dr)) if s != dr => return false,
                    _ => {}
                }
            }
            for r in 0..qa.len() {
                let Some(dr) = assign[r] else { continue };
                if qa.add(p, r) == Some(k) && e.add(dp, dr) != Some(dk) {
                    return false;
                }
            }
        }
        true
    }
    fn go(
        e: &FiniteEffectAlgebra,
        q: &FiniteQuotient,
        assign: &mut Vec<Option<usize>>,
        k: usize,
    ) -> bool {
        if k == assign.len() {
            return true;
        }
        for &cand in &q.classes[k] {
            assign[k] = Some(cand);
            if consistent(e, &q.algebra, assign, k) && go(e, q, assign, k + 1) {
                return true;
            }
        }
        assign[k] = None;
        false
    }
    if go(e, q, &mut assign, 0) {
        Some(assign.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

pub fn is_retractive(e: &FiniteEffectAlgebra, i: &IdealSet) -> Result<(Finding, Option<Vec<usize>>)> {
    let q = quotient(e, i)?;
    Ok(match find_section(e, &q) {
        Some(s) => {
            let shown: Vec<String> = s
                .iter()
                .enumerate()
                .map(|(k, &x)| format!("{} ↦ {}", q.algebra.label(k), e.label(x)))
                .collect();
            (Finding::proved(format!("section {}", shown.join(", "))), Some(s))
        }
        None => (
            Finding::refuted("no homomorphic section exists (exhaustive backtracking)"),
            None,
        ),
    })
}

pub fn is_nontrivial(e: &FiniteEffectAlgebra, i: &IdealSet) -> bool {
    i.len() > 1 && is_proper(e, i)
}

pub fn is_lexicographic(e: &FiniteEffectAlgebra, i: &IdealSet) -> Result<Finding> {
    if !is_nontrivial(e, i) {
        return Ok(Finding::refuted("trivial ideal"));
    }
    let strict = is_strict(e, i)?;
    let (retr, _) = is_retractive(e, i)?;
    let prime = exhaustive(is_prime(e, i), "prime by definition");
    let v = strict.verdict.and(retr.verdict).and(prime.verdict);
    Ok(Finding::new(
        v,
        format!(
            "strict: {}; retractive: {}; prime: {}",
            strict.verdict.label(),
            retr.verdict.label(),
            prime.verdict.label()
        ),
    ))
}

/// `I ∪ I⁻` and whether it is closed as a subalgebra.
pub fn subalgebra_of_ideal(e: &FiniteEffectAlgebra, i: &IdealSet) -> (IdealSet, Finding) {
    let mut s = i.clone();
    s.extend(i.iter().map(|&x| e.comp(x)));
    let closed = s.contains(&e.one_idx())
        && s.iter().all(|&a| s.contains(&e.comp(a)))
        && s.iter()
            .all(|&a| s.iter().all(|&b| e.add(a, b).map_or(true, |c| s.contains(&c))));
    (s, Finding::new(Verdict::from_bool(closed), "subalgebra conditions"))
}

/// Nontrivial proper strict ideals, smallest first.
pub fn strict_ideals(e: &FiniteEffectAlgebra) -> Vec<IdealSet> {
    all_ideals(e)
        .into_iter()
        .filter(|i| is_nontrivial(e, i))
        .filter(|i| is_strict(e, i).map(|f| f.holds()).unwrap_or(false))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pogroup::{ConePoGroup, Domain};
    use crate::effalg::IntervalEffectAlgebra;
    use crate::vector::Vector;

    fn b4() -> FiniteEffectAlgebra {
        let z2 = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
        IntervalEffectAlgebra::gamma(&z2, &Vector::from_ints(&[1, 1]))
            .unwrap()
            .enumerate()
            .unwrap()
            .algebra
    }

    #[test]
    fn generated_ideals() {
        let b = b4();
        let a = b.index_of("(1,0)").unwrap();
        let (i, how) = generated_ideal(&b, &IdealSet::from([a]));
        assert_eq!(how, Generation::RieszSums);
        assert_eq!(i, IdealSet::from([0, a]));
        let c4 = FiniteEffectAlgebra::chain(4);
        assert_eq!(generated_ideal(&c4, &IdealSet::from([1])).0.len(), 5);
    }

    #[test]
    fn boolean_square_ideals() {
        let b = b4();
        assert_eq!(all_ideals(&b).len(), 4);
        let max = maximal_ideals(&b);
        assert_eq!(max.len(), 2);
        assert_eq!(prime_ideals(&b), max);
        assert_eq!(radical(&b), IdealSet::from([0]));
        assert!(!is_local(&b));
    }

    #[test]
    fn chain_is_simple() {
        let c = FiniteEffectAlgebra::chain(3);
        assert!(is_simple(&c));
        assert!(is_local(&c));
        assert_eq!(prime_ideals(&c), vec![IdealSet::from([0])]);
    }

    #[test]
    fn quotient_of_boolean_square() {
        let b = b4();
        let a = b.index_of("(1,0)").unwrap();
        let q = quotient(&b, &IdealSet::from([0, a])).unwrap();
        assert_eq!(q.algebra.len(), 2);
        assert_eq!(q.algebra.verify_axioms(), Ok(()));
        let i = IdealSet::from([0, a]);
        assert!(!is_strict(&b, &i).unwrap().holds());
        assert!(is_retractive(&b, &i).unwrap().0.holds());
        assert!(is_prime(&b, &i));
        assert!(!is_lexicographic(&b, &i).unwrap().holds());
        let (s, closed) = subalgebra_of_ideal(&b, &i);
        assert_eq!(s.len(), 4);
        assert!(closed.holds());
    }

    #[test]
    fn zero_ideal_is_strict_and_retractive() {
        let c = FiniteEffectAlgebra::chain(4);
        let z = IdealSet::from([0]);
        assert!(is_strict(&c, &z).unwrap().holds());
        assert!(is_retractive(&c, &z).unwrap().0.holds());
        assert_eq!(subalgebra_of_ideal(&c, &z).0, IdealSet::from([0, 4]));
        assert!(strict_ideals(&c).is_empty());
    }
}
