use std::collections::BTreeSet;

use proptest::prelude::*;

use effectkit::effalg::classify_finite;
use effectkit::ideals::finite as fin;
use effectkit::morphisms::{has_sim_property, is_full, iso_search, kernel, verify_hom, Homomorphism};
use effectkit::ideals::Ideal;
use effectkit::states;
use effectkit::vector::rat;
use effectkit::{
    fixtures, Budget, ConePoGroup, Domain, EffectAlgebra, FiniteEffectAlgebra, IntervalEffectAlgebra,
    Rat, Vector,
};

fn group(cone: &str) -> ConePoGroup {
    ConePoGroup::new(Domain::Integer, cone.parse().unwrap(), None).unwrap()
}

fn vec_of(rank: usize, w: i128) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-w..=w, rank).prop_map(|v| Vector::from_ints(&v))
}

/// Finite intervals `Γ(Z^k, u)` with at most 12 elements.
fn product_interval() -> impl Strategy<Value = FiniteEffectAlgebra> {
    prop::collection::vec(1i128..=3, 1..=3)
        .prop_filter("small", |u| u.iter().map(|x| x + 1).product::<i128>() <= 12)
        .prop_map(|u| {
            let g = ConePoGroup::product(Domain::Integer, u.len(), None).unwrap();
            IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&u))
                .unwrap()
                .enumerate()
                .unwrap()
                .algebra
        })
}

/// Elements of `Γ(Z lex Z, (1,0))`: `(0,n)` with `n ≥ 0` or `(1,-n)`.
fn lex1_element() -> impl Strategy<Value = Vector> {
    (0i128..=1, 0i128..=5).prop_map(|(t, n)| Vector::from_ints(&[t, if t == 0 { n } else { -n }]))
}

fn pool() -> Vec<FiniteEffectAlgebra> {
    let mut out: Vec<FiniteEffectAlgebra> = (1..=5).map(FiniteEffectAlgebra::chain).collect();
    out.extend(fixtures::finite().into_iter().map(|(_, f)| f).filter(|f| f.len() <= 6));
    for u in [[1, 2], [2, 1]] {
        let g = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
        out.push(IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&u)).unwrap().enumerate().unwrap().algebra);
    }
    out
}

/// The same structure with element `i` renamed to `perm[i]`.
fn permuted(e: &FiniteEffectAlgebra, perm: &[usize]) -> FiniteEffectAlgebra {
    let mut labels = vec![String::new(); e.len()];
    for i in e.elements() {
        labels[perm[i]] = e.label(i).to_string();
    }
    let sums: Vec<_> = e.sum_triples().into_iter().map(|(a, b, c)| (perm[a], perm[b], perm[c])).collect();
    FiniteEffectAlgebra::from_sums(labels, perm[e.zero_idx()], perm[e.one_idx()], &sums).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn iso_oracle(e: &FiniteEffectAlgebra, f: &FiniteEffectAlgebra) -> bool {
    e.len() == f.len()
        && permutations(e.len()).iter().any(|p| {
            p[e.zero_idx()] == f.zero_idx()
                && p[e.one_idx()] == f.one_idx()
                && e.elements().all(|a| e.elements().all(|b| e.add(a, b).map(|c| p[c]) == f.add(p[a], p[b])))
        })
}

/// Min and max of `s(a)` over states with values in `(1/d)Z`, `d ≤ 12`.
fn grid_state_oracle(e: &FiniteEffectAlgebra) -> Option<Vec<(Rat, Rat)>> {
    let free: Vec<usize> = e.elements().filter(|&i| i != e.zero_idx() && i != e.one_idx()).collect();
    let mut best: Option<Vec<(Rat, Rat)>> = None;
    for d in 1..=12i128 {
        let mut vals = vec![Rat::from_integer(0); e.len()];
        vals[e.one_idx()] = Rat::from_integer(1);
        let mut idx = vec![0i128; free.len()];
        loop {
            for (k, &i) in free.iter().enumerate() {
                vals[i] = rat(idx[k], d);
            }
            if e.sum_triples().iter().all(|&(a, b, c)| vals[a] + vals[b] == vals[c]) {
                let b = best.get_or_insert_with(|| vals.iter().map(|v| (*v, *v)).collect());
                for (slot, v) in b.iter_mut().zip(&vals) {
                    slot.0 = slot.0.min(*v);
                    slot.1 = slot.1.max(*v);
                }
            }
            let mut k = 0;
            while k < idx.len() && idx[k] == d {
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
            idx[k] += 1;
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_translation_invariant(
        cone in prop::sample::select(vec![
            "product(2)",
            "lex(product(1), product(1))",
            "custom(2)[x0 = 0 & x1 = 0 | x0 > 0 & x1 > 0]",
        ]),
        g in vec_of(2, 6), h in vec_of(2, 6), f in vec_of(2, 6),
    ) {
        let grp = group(cone);
        let le = |a: &Vector, b: &Vector| grp.leq(a, b).unwrap();
        prop_assert!(le(&g, &g));
        if le(&g, &h) {
            prop_assert!(le(&(&g + &f), &(&h + &f)));
            if le(&h, &g) {
                prop_assert_eq!(&g, &h);
            }
            if le(&h, &f) {
                prop_assert!(le(&g, &f));
            }
        }
    }

    #[test]
    fn lex_cone_unfolds(g in vec_of(3, 4)) {
        let head = ConePoGroup::product(Domain::Integer, 1, Some(Vector::from_ints(&[1]))).unwrap();
        let tail = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
        let lex = ConePoGroup::lex_product(&head, &tail).unwrap();
        let pos = lex.cone_contains(&g).unwrap();
        let c = g.coords();
        let expected = c[0] > Rat::from_integer(0)
            || (c[0] == Rat::from_integer(0) && tail.cone_contains(&g.slice(1, 2)).unwrap());
        prop_assert_eq!(pos, expected);
        if pos && c[0] == Rat::from_integer(0) {
            prop_assert!(tail.cone_contains(&g.slice(1, 2)).unwrap());
        }
    }

    #[test]
    fn lex_quadruples_refine(x in lex1_element(), y in lex1_element(), z in lex1_element()) {
        let grp = group("lex(product(1), product(1))");
        let e = IntervalEffectAlgebra::gamma(&grp, &Vector::from_ints(&[1, 0])).unwrap();
        let (a1, a2, b1) = (x, y, z);
        let s = e.sum(&a1, &a2);
        prop_assume!(s.is_some());
        let s = s.unwrap();
        prop_assume!(e.leq(&b1, &s));
        let b2 = e.minus(&s, &b1).unwrap();
        let found = (0..=1).any(|t| (-12..=12).any(|g| {
            let c11 = Vector::from_ints(&[t, g]);
            if !e.contains(&c11) || !e.leq(&c11, &a1) || !e.leq(&c11, &b1) {
                return false;
            }
            let c12 = e.minus(&a1, &c11).unwrap();
            let c21 = e.minus(&b1, &c11).unwrap();
            match (e.minus(&a2, &c21), e.minus(&b2, &c12)) {
                (Some(c22), Some(c22b)) => c22 == c22b,
                _ => false,
            }
        }));
        prop_assert!(found, "{} + {} = {} + {}", a1, a2, b1, b2);
    }

    #[test]
    fn table_identities(e in product_interval()) {
        prop_assert!(e.verify_axioms().is_ok());
        for a in e.elements() {
            prop_assert_eq!(e.comp(e.comp(a)), a);
            for b in e.elements() {
                prop_assert_eq!(e.add(a, b).is_some(), e.le(a, e.comp(b)));
                if let Some(d) = e.sub(b, a) {
                    prop_assert_eq!(e.add(d, a), Some(b));
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_cone_order(u in prop::collection::vec(1i128..=2, 1..=3)) {
        let g = ConePoGroup::product(Domain::Integer, u.len(), None).unwrap();
        let e = IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&u)).unwrap();
        let en = e.enumerate().unwrap();
        prop_assert!(en.algebra.verify_axioms().is_ok());
        for (i, p) in en.points.iter().enumerate() {
            for (j, q) in en.points.iter().enumerate() {
                prop_assert_eq!(en.algebra.le(i, j), g.leq(p, q).unwrap());
            }
        }
    }

    #[test]
    fn order_shape_implications(e in product_interval()) {
        let oc = classify_finite(&e);
        if oc.linear.holds() {
            prop_assert!(oc.lattice.holds() && oc.antilattice.holds());
        }
        if oc.lattice.holds() && oc.antilattice.holds() {
            prop_assert!(oc.linear.holds());
        }
        if let Some(ax) = &oc.mv_axioms {
            prop_assert!(ax.holds(), "{}", ax.detail);
        }
    }

    #[test]
    fn riesz_projections_behave(e in product_interval()) {
        prop_assert!(e.check_rdp().holds());
        let b = Budget::default();
        for i in fin::all_ideals(&e) {
            if !fin::is_riesz(&e, &i).holds() {
                continue;
            }
            let q = fin::quotient(&e, &i).unwrap();
            let h = Homomorphism::projection(&e, &q);
            prop_assert!(verify_hom(&h, &b).holds());
            let (k, _) = kernel(&h, &b);
            prop_assert_eq!(k, Ideal::Finite(i.clone()));
            prop_assert!(has_sim_property(&h).unwrap().holds());
            prop_assert!(is_full(&h).unwrap().holds());
            prop_assert!(q.algebra.check_rdp().holds());
            let proper = fin::is_proper(&e, &i);
            prop_assert_eq!(fin::is_prime(&e, &i) && proper, classify_finite(&q.algebra).antilattice.holds() && proper);
        }
    }

    #[test]
    fn iso_search_matches_permutations(a in 0usize..10, b in 0usize..10, seed in any::<u64>()) {
        let pool = pool();
        let e = &pool[a % pool.len()];
        let f = &pool[b % pool.len()];
        prop_assert_eq!(iso_search(e, f).is_some(), iso_oracle(e, f));
        let mut perm: Vec<usize> = e.elements().collect();
        let n = perm.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let g = permuted(e, &perm);
        let m = iso_search(e, &g).expect("a relabelled copy is isomorphic");
        for x in e.elements() {
            for y in e.elements() {
                prop_assert_eq!(e.add(x, y).map(|c| m[c]), g.add(m[x], m[y]));
            }
        }
    }

    #[test]
    fn rdp_matches_brute_force(e in product_interval()) {
        let n = e.len();
        let mut oracle = true;
        'outer: for a1 in 0..n { for a2 in 0..n { for b1 in 0..n { for b2 in 0..n {
            let Some(s) = e.add(a1, a2) else { continue };
            if e.add(b1, b2) != Some(s) { continue; }
            let ok = (0..n).any(|c11| (0..n).any(|c12| (0..n).any(|c21| (0..n).any(|c22|
                e.add(c11, c12) == Some(a1) && e.add(c21, c22) == Some(a2)
                    && e.add(c11, c21) == Some(b1) && e.add(c12, c22) == Some(b2)))));
            if !ok { oracle = false; break 'outer; }
        }}}}
        prop_assert_eq!(e.check_rdp().holds(), oracle);
    }
}

#[test]
fn state_solver_matches_grid_oracle() {
    for e in pool() {
        let oracle = grid_state_oracle(&e);
        assert_eq!(states::state_feasible(&e).is_some(), oracle.is_some());
        let Some(oracle) = oracle else { continue };
        for a in e.elements() {
            assert_eq!(states::state_extremes(&e, a), Some(oracle[a]), "element {}", e.label(a));
        }
    }
}

#[test]
fn hs4_state_is_one_half() {
    let e = fixtures::host("HS4").unwrap().finite().unwrap();
    let o = grid_state_oracle(&e).unwrap();
    assert!(o.iter().skip(1).take(2).all(|&(lo, hi)| lo == rat(1, 2) && hi == rat(1, 2)));
}

#[test]
fn chain_and_square_are_not_isomorphic() {
    let c3 = FiniteEffectAlgebra::chain(3);
    let b4 = fixtures::host("B4").unwrap().finite().unwrap();
    assert!(!iso_oracle(&c3, &b4));
    assert!(iso_search(&c3, &b4).is_none());
    let seen: BTreeSet<Vec<usize>> = permutations(4).into_iter().collect();
    assert_eq!(seen.len(), 24);
}
