use super::*;
use crate::effalg::{Host, IntervalEffectAlgebra};
use crate::morphisms::iso_search;
use crate::pogroup::{ConePoGroup, Domain};
use crate::states::{hu_state_to_decomposition, HuDecomposition, HuState};
use crate::vector::{int, Vector};
use crate::verdict::{Budget, Verdict};
use crate::FiniteEffectAlgebra;

fn lex(cone: &str, unit: &[i128]) -> IntervalEffectAlgebra {
    let g = ConePoGroup::new(Domain::Integer, cone.parse().unwrap(), None).unwrap();
    IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(unit))
        .unwrap()
        .with_split(1)
        .unwrap()
}

fn lex1() -> IntervalEffectAlgebra {
    lex("lex(product(1), product(1))", &[1, 0])
}

fn lex21() -> IntervalEffectAlgebra {
    lex("lex(product(1), product(1))", &[2, 1])
}

fn lex3() -> IntervalEffectAlgebra {
    lex("lex(product(1), lex(product(1), product(1)))", &[1, 0, 0])
}

fn canonical(e: &IntervalEffectAlgebra) -> (Host, HuDecomposition) {
    let host = Host::Interval(e.clone());
    let s = HuState::canonical(e).unwrap();
    let d = hu_state_to_decomposition(&host, &s, &Budget::default()).unwrap();
    (host, d)
}

#[test]
fn lex_fixtures_are_ordered_and_directed() {
    let b = Budget::default();
    for e in [lex1(), lex21(), lex3()] {
        let (host, d) = canonical(&e);
        let r = is_ordered_decomposition(&host, &d, &b).unwrap();
        assert!(r.ordered.holds(), "{:?}", r);
        assert!(r.sum_criterion.holds(), "{:?}", r);
        assert!(r.agree);
        assert!(is_directed_decomposition(&host, &d, &b).unwrap().holds());
        for (name, f) in ordered_decomposition_consequences(&host, &d, &b).unwrap() {
            assert!(f.holds(), "{}: {}", name, f.detail);
        }
    }
}

#[test]
fn b4_identity_decomposition() {
    let g = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
    let e = IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[1, 1])).unwrap();
    let en = e.enumerate().unwrap();
    let host = Host::Interval(e.clone());
    let s = HuState::identity(&en, &e);
    let b = Budget::default();
    let d = hu_state_to_decomposition(&host, &s, &b).unwrap();
    let r = is_ordered_decomposition(&host, &d, &b).unwrap();
    assert_eq!(r.ordered.verdict, Verdict::Proved);
    assert!(r.agree);
    assert_eq!(is_directed_decomposition(&host, &d, &b).unwrap().verdict, Verdict::Proved);
    let fam = find_strong_family(&host, &d, &b).unwrap();
    let f = fam.family.unwrap();
    let rep = represent(&host, &f, &d, &b).unwrap();
    assert!(rep.holds(), "{:?}", rep.checks);
    assert_eq!(rep.tail.name(), "O");
    assert!(same_fibers(&host, &d, &d, &b).unwrap().holds());
}

#[test]
fn head_quotients() {
    let b = Budget::default();
    let (host, d) = canonical(&lex1());
    let iso = quotient_head_iso(&host, &d, &b).unwrap();
    assert!(iso.finding.holds(), "{}", iso.finding.detail);
    assert_eq!(iso.quotient.len(), 2);
    assert!(iso_search(&iso.quotient, &FiniteEffectAlgebra::chain(1)).is_some());
    let (host, d) = canonical(&lex21());
    let iso = quotient_head_iso(&host, &d, &b).unwrap();
    assert!(iso.finding.holds(), "{}", iso.finding.detail);
    assert_eq!(iso.quotient.len(), 3);
    assert!(iso_search(&iso.quotient, &FiniteEffectAlgebra::chain(2)).is_some());
}

#[test]
fn families_and_representations() {
    let b = Budget::default();
    let (host, d) = canonical(&lex1());
    let fam = find_strong_family(&host, &d, &b).unwrap();
    let f = fam.family.expect("LEX1 family");
    assert_eq!(f.to_string(), "t ↦ (t,0)");
    let rep = represent(&host, &f, &d, &b).unwrap();
    assert!(rep.holds(), "{:?}", rep.checks);
    assert_eq!(rep.head.name(), "Z");
    assert_eq!(rep.tail.name(), "Z");

    let (host, d) = canonical(&lex3());
    let f = find_strong_family(&host, &d, &b).unwrap().family.expect("LEX3 family");
    assert_eq!(f.to_string(), "t ↦ (t,0,0)");
    let rep = represent(&host, &f, &d, &b).unwrap();
    assert!(rep.holds(), "{:?}", rep.checks);
    assert_eq!(rep.tail.name(), "Z ×lex Z");

    let (host, d) = canonical(&lex21());
    let fam = find_strong_family(&host, &d, &b).unwrap();
    assert!(fam.family.is_none());
    assert_eq!(fam.finding.verdict, Verdict::Refuted(None));
    assert_eq!(fam.finding.detail, "2·c₁ = (2,1) unsolvable");
}

#[test]
fn tail_maps() {
    let b = Budget::default();
    let z = ConePoGroup::product(Domain::Integer, 1, None).unwrap();
    let id = functor_map(&lex1(), &[vec![int(1)]], &z, &b).unwrap();
    assert!(id.homomorphism.holds());
    assert!(id.injective.holds() && id.surjective.holds());
    let double = functor_map(&lex1(), &[vec![int(2)]], &z, &b).unwrap();
    assert!(double.homomorphism.holds());
    assert_eq!(double.injective.verdict, Verdict::Proved);
    assert!(double.surjective.verdict.is_refuted());
    let proj = functor_map(&lex3(), &[vec![int(1), int(0)]], &z, &b).unwrap();
    assert!(proj.homomorphism.holds());
    assert!(proj.surjective.holds());
    assert!(proj.injective.verdict.is_refuted());
    assert!(functor_map(&lex1(), &[vec![int(-1)]], &z, &b).is_err());
}

fn k61() -> IntervalEffectAlgebra {
    let g = ConePoGroup::new(
        Domain::Rational,
        "custom(2)[x0 = 0 & x1 = 0 | x0 > 0 & x1 > 0]".parse().unwrap(),
        None,
    )
    .unwrap();
    IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[1, 1])).unwrap()
}

fn b4() -> Host {
    let g = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
    Host::Interval(IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[1, 1])).unwrap())
}

#[test]
fn classification_branches() {
    let b = Budget::default();
    let c = classify_local_retractive(&Host::Interval(lex1()), &b).unwrap();
    assert!(c.branches.iter().all(|f| f.holds()), "{:?}", c.branches);
    assert!(c.consistent);
    assert_eq!(c.tail.as_deref(), Some("Z"));
    let c = classify_local_retractive(&Host::Interval(lex3()), &b).unwrap();
    assert!(c.branches.iter().all(|f| f.holds()), "{:?}", c.branches);
    assert_eq!(c.tail.as_deref(), Some("Z ×lex Z"));
    let c = classify_local_retractive(&Host::Interval(lex21()), &b).unwrap();
    assert!(c.branches[0].verdict.is_refuted(), "{:?}", c.branches);
    assert!(c.branches[1].verdict.is_refuted(), "{:?}", c.branches);
    assert!(c.consistent);
    let c = classify_local_retractive(&Host::Interval(k61()), &b).unwrap();
    assert!(c.branches.iter().all(|f| f.holds()), "{:?}", c);
    assert_eq!(c.tail.as_deref(), Some("O"));
    for n in 1..5 {
        let c = classify_local_retractive(&Host::Finite(FiniteEffectAlgebra::chain(n)), &b).unwrap();
        assert!(c.branches.iter().all(|f| f.verdict == Verdict::Proved), "{:?}", c.branches);
    }
    let c = classify_local_retractive(&b4(), &b).unwrap();
    assert!(c.branches.iter().all(|f| f.verdict.is_refuted()), "{:?}", c.branches);
    assert!(c.consistent);
}

#[test]
fn zero_fibre_maximal_iff_head_simple() {
    let b = Budget::default();
    let m = head_maximality(&lex3(), &b).unwrap();
    assert!(m.zero_fiber_maximal.holds() && m.head_simple_antilattice.holds());
    let g = ConePoGroup::new(
        Domain::Integer,
        "lex(product(1), lex(product(1), product(1)))".parse().unwrap(),
        None,
    )
    .unwrap();
    let split2 = IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[1, 0, 0]))
        .unwrap()
        .with_split(2)
        .unwrap();
    let m = head_maximality(&split2, &b).unwrap();
    assert!(!m.zero_fiber_maximal.holds());
    assert!(!m.head_simple_antilattice.holds());
    assert!(m.agree);
}

#[test]
fn subdirect_factors() {
    let s = subdirect_decompose(&b4()).unwrap();
    assert!(s.holds(), "{:?}", s.checks);
    assert_eq!(s.factors.len(), 2);
    assert!(s.factors.iter().all(|f| f.quotient.algebra.len() == 2));
    let s = subdirect_decompose(&Host::Finite(FiniteEffectAlgebra::chain(3))).unwrap();
    assert_eq!(s.factors.len(), 1);
    assert!(s.holds());
    let g = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
    let p22 = Host::Interval(IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[2, 2])).unwrap());
    let s = subdirect_decompose(&p22).unwrap();
    assert!(s.holds(), "{:?}", s.checks);
    assert!(s.factors.iter().all(|f| f.quotient.algebra.len() == 3));
}
