use effectkit::effalg::classify_finite;
use effectkit::ideals::finite as fin;
use effectkit::lexrep::same_fibers;
use effectkit::morphisms::{verify_hom, Homomorphism};
use effectkit::states::{
    self, find_valued_hu_state, hu_state_to_decomposition, HuState, RationalState, StateMap,
};
use effectkit::{fixtures, Budget, ConePoGroup, Domain, FiniteEffectAlgebra, Host, IntervalEffectAlgebra, Rat, Vector};

fn tables() -> Vec<(&'static str, FiniteEffectAlgebra)> {
    fixtures::finite()
}

fn interval(name: &str) -> IntervalEffectAlgebra {
    match fixtures::host(name).unwrap() {
        Host::Interval(e) => e,
        Host::Finite(_) => panic!("{} is a table", name),
    }
}

fn chain_interval(n: i128) -> IntervalEffectAlgebra {
    let g = ConePoGroup::product(Domain::Integer, 1, None).unwrap();
    IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[n])).unwrap()
}

#[test]
fn strict_ideals_are_a_chain_killed_by_every_state() {
    for (name, e) in tables() {
        let strict = fin::strict_ideals(&e);
        for (k, i) in strict.iter().enumerate() {
            for j in &strict[k..] {
                assert!(i.is_subset(j) || j.is_subset(i), "{}: incomparable strict ideals", name);
            }
            for &a in i {
                if let Some((_, hi)) = states::state_extremes(&e, a) {
                    assert_eq!(hi, Rat::from_integer(0), "{}: a state is positive on {}", name, e.label(a));
                }
            }
        }
    }
}

#[test]
fn riesz_quotients_detect_primes() {
    for (name, e) in tables().into_iter().filter(|(_, e)| e.check_rdp().holds()) {
        for i in fin::all_ideals(&e) {
            if !fin::is_proper(&e, &i) || !fin::is_riesz(&e, &i).holds() {
                continue;
            }
            let q = fin::quotient(&e, &i).unwrap();
            assert_eq!(
                fin::is_prime(&e, &i),
                classify_finite(&q.algebra).antilattice.holds(),
                "{}: ideal of size {}",
                name,
                i.len()
            );
        }
    }
}

#[test]
fn projections_carry_ideals_to_ideals() {
    let b = Budget::default();
    for (name, e) in tables() {
        let ideals = fin::all_ideals(&e);
        for k in ideals.iter().filter(|k| fin::is_riesz(&e, k).holds()) {
            let q = fin::quotient(&e, k).unwrap();
            let h = Homomorphism::projection(&e, &q);
            assert!(verify_hom(&h, &b).holds());
            for i in &ideals {
                let img = h.image(i);
                assert!(fin::is_ideal(&q.algebra, &img), "{}: image not an ideal", name);
                if k.is_subset(i) && fin::is_proper(&e, i) {
                    assert!(fin::is_proper(&q.algebra, &img));
                    assert_eq!(fin::is_prime(&e, i), fin::is_prime(&q.algebra, &img), "{}", name);
                    if fin::is_nontrivial(&q.algebra, &img) {
                        assert_eq!(
                            fin::is_strict(&e, i).unwrap().holds(),
                            fin::is_strict(&q.algebra, &img).unwrap().holds(),
                            "{}",
                            name
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn valued_states_on_chains_share_fibres() {
    let b = Budget::default();
    for n in 1..=5 {
        let target = chain_interval(n);
        let en = target.enumerate().unwrap();
        let host = Host::Finite(en.algebra.clone());
        let found = find_valued_hu_state(&en.algebra, &target).unwrap().expect("chain maps onto itself");
        let d1 = hu_state_to_decomposition(&host, &HuState::identity(&en, &target), &b).unwrap();
        let d2 = hu_state_to_decomposition(&host, &found, &b).unwrap();
        assert!(same_fibers(&host, &d1, &d2, &b).unwrap().holds(), "chain {}", n);
        assert!(find_valued_hu_state(&en.algebra, &chain_interval(n + 1)).unwrap().is_none());
    }
}

#[test]
fn lex_decompositions_survive_a_round_trip() {
    let b = Budget::default();
    for name in ["LEX1", "LEX21", "LEX3"] {
        let e = interval(name);
        let host = Host::Interval(e.clone());
        let s = HuState::canonical(&e).unwrap();
        let d = hu_state_to_decomposition(&host, &s, &b).unwrap();
        let s2 = states::decomposition_to_hu_state(&host, &d, &b).unwrap();
        let d2 = hu_state_to_decomposition(&host, &s2, &b).unwrap();
        assert!(same_fibers(&host, &d, &d2, &b).unwrap().holds(), "{}", name);
    }
}

#[test]
fn head_states_transfer_and_restrict_back() {
    let b = Budget::default();
    for name in ["LEX1", "LEX21", "LEX3"] {
        let e = interval(name);
        let (head, _) = e.head_tail().unwrap();
        let en = head.enumerate().unwrap();
        let hs = states::state_feasible(&en.algebra).expect("head has a state");
        let s = states::state_transfer(&e, &hs).unwrap();
        assert!(states::check_interval_state(&e, &s, &b).holds(), "{}", name);
        let (back, f) = states::state_restrict(&e, &s, &b).unwrap();
        assert!(f.holds(), "{}: {}", name, f.detail);
        for j in en.algebra.elements() {
            assert_eq!(back.at(j), hs.at(j), "{} at {}", name, en.points[j]);
        }
    }
}

#[test]
fn states_ignore_the_tail() {
    let b = Budget::default();
    for name in ["LEX1", "LEX3"] {
        let e = interval(name);
        let k = e.split().unwrap();
        let mut coeffs = vec![Rat::from_integer(0); e.rank()];
        coeffs[0] = Rat::from_integer(1);
        coeffs[k] = Rat::from_integer(1);
        let tilted = RationalState { map: StateMap::Linear(coeffs) };
        assert!(!states::check_interval_state(&e, &tilted, &b).holds(), "{}", name);
    }
}
