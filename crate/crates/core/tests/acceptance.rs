//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::time::Instant;

use effectkit::commands::{Context, Registry};
use effectkit::effalg::classify_interval;
use effectkit::fixtures;
use effectkit::format;
use effectkit::ideals::{finite as fin, symbolic as sym};
use effectkit::lexrep;
use effectkit::morphisms::{has_sim_property, is_full, iso_search, Homomorphism};
use effectkit::states::{self, decomposition_to_hu_state, hu_state_to_decomposition, HuState};
use effectkit::{Budget, FiniteEffectAlgebra, Host, IntervalEffectAlgebra, Pred, Vector};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn budget() -> Budget {
    Budget::default()
}

fn interval(name: &str) -> IntervalEffectAlgebra {
    match fixtures::host(name).unwrap() {
        Host::Interval(e) => e,
        Host::Finite(_) => panic!("{} is a table", name),
    }
}

/// Brute force: search every 2×2 matrix for each `a1+a2 = b1+b2`.
fn rdp_oracle(e: &FiniteEffectAlgebra) -> bool {
    let n = e.len();
    let add = |a: usize, b: usize| e.add(a, b);
    for a1 in 0..n {
        for a2 in 0..n {
            let Some(s) = add(a1, a2) else { continue };
            for b1 in 0..n {
                for b2 in 0..n {
                    if add(b1, b2) != Some(s) {
                        continue;
                    }
                    let refined = (0..n).any(|c11| {
                        (0..n).any(|c12| {
                            add(c11, c12) == Some(a1)
                                && (0..n).any(|c21| {
                                    add(c11, c21) == Some(b1)
                                        && (0..n).any(|c22| {
                                            add(c21, c22) == Some(a2) && add(c12, c22) == Some(b2)
                                        })
                                })
                        })
                    });
                    if !refined {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Downward and sum closure iterated to a fixpoint.
fn closure_oracle(e: &FiniteEffectAlgebra, g: usize) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = [e.zero_idx(), g].into();
    loop {
        let mut next = set.clone();
        for &y in &set {
            for x in e.elements() {
                if e.elements().any(|z| e.add(x, z) == Some(y)) {
                    next.insert(x);
                }
            }
            for &z in &set {
                if let Some(s) = e.add(y, z) {
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

fn c1_axioms_and_rdp() -> Outcome {
    let finite = fixtures::finite();
    ensure!(finite.len() == 8, "expected 8 finite fixtures, found {}", finite.len());
    for (name, e) in &finite {
        ensure!(e.verify_axioms().is_ok(), "{} fails the axioms", name);
        ensure!(e.len() <= 12, "{} too large", name);
        let oracle = rdp_oracle(e);
        ensure!(e.check_rdp().holds() == oracle, "{}: RDP verdict disagrees with the oracle", name);
        ensure!(oracle == (*name != "HS4"), "{}: unexpected RDP value {}", name, oracle);
    }
    Ok(format!("{} finite fixtures, HS4 the only RDP failure", finite.len()))
}

fn c2_generated_ideals() -> Outcome {
    let mut count = 0;
    for (name, e) in fixtures::finite() {
        for g in e.elements() {
            let (got, _) = fin::generated_ideal(&e, &[g].into());
            ensure!(got == closure_oracle(&e, g), "{}: ideal generated by {} differs", name, e.label(g));
            count += 1;
        }
    }
    Ok(format!("{} singleton generators", count))
}

fn c3_infinitesimals_in_radical() -> Outcome {
    for (name, e) in fixtures::finite() {
        if e.check_rdp().holds() {
            ensure!(e.infinitesimals().is_subset(&fin::radical(&e)), "{}: Infin ⊄ Rad", name);
        }
    }
    let b = budget();
    let e = interval("LEX1");
    let infin = e.infinitesimal_pred().ok_or("LEX1 has no infinitesimal predicate")?;
    let cands = sym::Candidates::new(&e, &b);
    let rad = cands.radical();
    for x in cands.grid() {
        let expected = x.coords()[0] == 0.into();
        ensure!(infin.holds(x) == expected, "Infin membership of {} is {}", x, infin.holds(x));
        ensure!(e.is_infinitesimal(x, 64) == expected, "{} multiples disagree", x);
        ensure!(!expected || sym::contains(&e, &rad, x), "{} infinitesimal outside Rad", x);
    }
    Ok(format!("LEX1 Infin = {{{}}} ⊆ Rad = {{{}}}", infin, rad))
}

fn c4_lex3_lexicographic_ideals() -> Outcome {
    let b = budget();
    let e = interval("LEX3");
    let cands = sym::Candidates::new(&e, &b);
    let i1: Pred = "x0 = 0 & x1 = 0".parse().unwrap();
    let i2: Pred = "x0 = 0".parse().unwrap();
    let mut lex = Vec::new();
    for p in &cands.ideals {
        if sym::is_lexicographic(&e, p, &b).map_err(|e| e.to_string())?.holds() {
            lex.push(p.clone());
        }
    }
    ensure!(lex.len() == 2, "{} lexicographic candidates: {:?}", lex.len(), lex);
    let same = |p: &Pred, q: &Pred| cands.included(&e, p, q) && cands.included(&e, q, p);
    ensure!(same(&lex[0], &i1) && same(&lex[1], &i2), "found {} and {}", lex[0], lex[1]);
    ensure!(cands.included(&e, &i1, &i2) && !cands.included(&e, &i2, &i1), "I₁ ⊂ I₂ fails");
    Ok(format!("{} candidates; I₁ = {{{}}} ⊂ I₂ = {{{}}}", cands.ideals.len(), lex[0], lex[1]))
}

fn c5_counterexamples() -> Outcome {
    let b = budget();
    let e = interval("LEX21");
    let cands = sym::Candidates::new(&e, &b);
    let nt = cands.nontrivial();
    ensure!(nt.len() == 1, "LEX21 has {} nontrivial candidates", nt.len());
    let (f, s) = sym::is_retractive(&e, nt[0], &b).map_err(|e| e.to_string())?;
    ensure!(f.verdict.is_refuted() && s.is_none(), "LEX21 ideal not refuted: {}", f.detail);
    ensure!(f.detail == "2·c₁ = (2,1) unsolvable", "certificate {}", f.detail);
    let sq = interval("SQ");
    let cands = sym::Candidates::new(&sq, &b);
    let nt = cands.nontrivial();
    ensure!(nt.len() == 2, "SQ has {} nontrivial candidates", nt.len());
    for p in &nt {
        let strict = sym::is_strict(&sq, p, &b).map_err(|e| e.to_string())?;
        ensure!(strict.verdict.is_refuted(), "SQ ideal {} strict", p);
    }
    Ok(format!("LEX21: {}; SQ: 2 non-strict ideals", f.detail))
}

fn valued_states() -> Vec<(String, Host, HuState)> {
    let mut out = Vec::new();
    for (name, _) in fixtures::ALL {
        let host = fixtures::host(name).unwrap();
        let state = match &host {
            Host::Interval(e) if e.split().is_some() => HuState::canonical(e).ok(),
            Host::Interval(e) => e.enumerate().ok().map(|en| HuState::identity(&en, e)),
            Host::Finite(f) if name.starts_with('C') => {
                let n = f.len() as i128 - 1;
                let z = effectkit::ConePoGroup::product(effectkit::Domain::Integer, 1, None).unwrap();
                let target = IntervalEffectAlgebra::gamma(&z, &Vector::from_ints(&[n])).unwrap();
                states::find_valued_hu_state(f, &target).unwrap()
            }
            Host::Finite(_) => None,
        };
        if let Some(s) = state {
            out.push((name.to_string(), host, s));
        }
    }
    out
}

fn c6_state_decomposition_bijection() -> Outcome {
    let b = budget();
    let all = valued_states();
    for (name, host, s) in &all {
        let d = hu_state_to_decomposition(host, s, &b).map_err(|e| format!("{}: {}", name, e))?;
        let s2 = decomposition_to_hu_state(host, &d, &b).map_err(|e| format!("{}: {}", name, e))?;
        ensure!(&s2 == s, "{}: state round trip changed the map", name);
        let d2 = hu_state_to_decomposition(host, &s2, &b).map_err(|e| e.to_string())?;
        ensure!(d2 == d, "{}: decomposition round trip changed the fibres", name);
    }
    ensure!(all.len() >= 10, "only {} fixtures carry valued states", all.len());
    Ok(format!("{} fixtures round-trip both ways", all.len()))
}

fn canonical(name: &str) -> (Host, states::HuDecomposition) {
    let e = interval(name);
    let s = HuState::canonical(&e).unwrap();
    let host = Host::Interval(e);
    let d = hu_state_to_decomposition(&host, &s, &budget()).unwrap();
    (host, d)
}

fn c7_ordered_decompositions() -> Outcome {
    let b = budget();
    for name in ["LEX1", "LEX21", "LEX3"] {
        let (host, d) = canonical(name);
        let rep = lexrep::is_ordered_decomposition(&host, &d, &b).map_err(|e| e.to_string())?;
        ensure!(rep.agree && rep.holds(), "{}: criteria {} vs {}", name, rep.ordered.detail, rep.sum_criterion.detail);
        let checks = lexrep::ordered_decomposition_consequences(&host, &d, &b).map_err(|e| e.to_string())?;
        for key in ["E_s + E_v = E_(s+v) for s+v < u", "no sums across u"] {
            let f = checks.iter().find(|(n, _)| n == key).map(|(_, f)| f).ok_or(format!("{} missing", key))?;
            ensure!(f.holds(), "{}: {} failed: {}", name, key, f.detail);
        }
    }
    Ok("LEX1, LEX21, LEX3 ordered with agreeing criteria".into())
}

fn c8_quotient_heads() -> Outcome {
    let b = budget();
    for (name, size) in [("LEX1", 2), ("LEX21", 3)] {
        let (host, d) = canonical(name);
        let iso = lexrep::quotient_head_iso(&host, &d, &b).map_err(|e| e.to_string())?;
        ensure!(iso.finding.holds(), "{}: {}", name, iso.finding.detail);
        ensure!(iso.quotient.len() == size, "{}: quotient has {} elements", name, iso.quotient.len());
        let chain = FiniteEffectAlgebra::chain(size - 1);
        ensure!(iso_search(&iso.quotient, &chain).is_some(), "{}: quotient not a chain", name);
    }
    Ok("E/E₀ ≅ C₁ and C₂".into())
}

fn c9_unique_states() -> Outcome {
    let b = budget();
    for name in ["LEX1", "LEX21"] {
        let e = interval(name);
        let u = states::unique_state(&Host::Interval(e.clone()), &b).map_err(|e| e.to_string())?;
        ensure!(u.finding.holds(), "{}: {}", name, u.finding.detail);
        let s = u.state.ok_or("no state")?;
        let pts = e.sample_points(&b);
        let pairs = effectkit::sampling::pairs(&pts, b.samples, &mut effectkit::sampling::rng(b.seed));
        ensure!(pairs.len() == 200, "{} pairs sampled", pairs.len());
        for (x, y) in &pairs {
            if x.coords()[0] == y.coords()[0] {
                ensure!(s.eval(x) == s.eval(y), "{}: s depends on g at {} and {}", name, x, y);
            }
        }
    }
    let u = states::unique_state(&fixtures::host("B4").unwrap(), &b).map_err(|e| e.to_string())?;
    ensure!(u.finding.verdict.is_refuted(), "B4 unique");
    let atom = u.extremes.iter().find(|(x, ..)| x == "(1,0)").ok_or("atom missing")?;
    ensure!(atom.1 == "0" && atom.2 == "1", "B4 atom extremes {:?}", atom);
    Ok("LEX1 and LEX21 unique; B4 atom ranges over [0, 1]".into())
}

fn c10_representations() -> Outcome {
    let b = budget();
    for (name, tail) in [("LEX1", "Z"), ("LEX3", "Z ×lex Z")] {
        let (host, d) = canonical(name);
        let fam = lexrep::find_strong_family(&host, &d, &b).map_err(|e| e.to_string())?;
        let f = fam.family.ok_or(format!("{}: {}", name, fam.finding.detail))?;
        let rep = lexrep::represent(&host, &f, &d, &b).map_err(|e| e.to_string())?;
        ensure!(rep.holds(), "{}: {:?}", name, rep.checks);
        ensure!(rep.tail.name() == tail, "{}: tail {}", name, rep.tail.name());
        for key in ["ψ∘φ = id", "φ∘ψ = id"] {
            let (_, f) = rep.checks.iter().find(|(n, _)| n == key).ok_or(format!("{} missing", key))?;
            ensure!(f.holds(), "{}: {} failed: {}", name, key, f.detail);
        }
    }
    let (host, d) = canonical("LEX21");
    let fam = lexrep::find_strong_family(&host, &d, &b).map_err(|e| e.to_string())?;
    ensure!(fam.family.is_none() && fam.finding.verdict.is_refuted(), "LEX21 represented");
    Ok(format!("tails Z and Z ×lex Z; LEX21: {}", fam.finding.detail))
}

fn c11_classification() -> Outcome {
    let b = budget();
    let c = lexrep::classify_local_retractive(&Host::Interval(interval("LEX1")), &b).map_err(|e| e.to_string())?;
    ensure!(c.branches.iter().all(|f| f.holds()), "LEX1 branches {:?}", c.branches);
    let c = lexrep::classify_local_retractive(&Host::Interval(interval("LEX21")), &b).map_err(|e| e.to_string())?;
    ensure!(c.branches[0].verdict.is_refuted(), "LEX21 branch (i): {}", c.branches[0].detail);
    let (host, d) = canonical("LEX21");
    ensure!(lexrep::find_strong_family(&host, &d, &b).map_err(|e| e.to_string())?.family.is_none(), "LEX21 family");
    let mut decided = 0;
    for (name, _) in fixtures::ALL {
        let c = lexrep::classify_local_retractive(&fixtures::host(name).unwrap(), &b).map_err(|e| e.to_string())?;
        ensure!(c.consistent, "{}: branches disagree {:?}", name, c.branches);
        let known: Vec<bool> = c.branches.iter().filter(|f| !f.verdict.is_unknown()).map(|f| f.holds()).collect();
        ensure!(known.windows(2).all(|w| w[0] == w[1]), "{}: decided branches differ", name);
        decided += known.len();
    }
    Ok(format!("{} decided branch verdicts, none in conflict", decided))
}

fn c12_k61() -> Outcome {
    let b = budget();
    let e = interval("K61");
    let oc = classify_interval(&e, &b);
    ensure!(oc.antilattice.holds(), "antilattice: {}", oc.antilattice.detail);
    ensure!(oc.lattice.verdict.is_refuted(), "lattice: {}", oc.lattice.detail);
    let cands = sym::Candidates::new(&e, &b);
    let simple = sym::is_simple(&e, &cands, &b);
    ensure!(simple.holds(), "simple: {}", simple.detail);
    let rdp = e.check_rdp(&b);
    ensure!(rdp.holds(), "RDP: {}", rdp.detail);
    Ok(format!("antilattice {}, lattice {}, simple {}, RDP {}", oc.antilattice.verdict.label(), oc.lattice.verdict.label(), simple.verdict.label(), rdp.verdict.label()))
}

fn c13_subdirect() -> Outcome {
    let mut n = 0;
    for (name, e) in fixtures::finite() {
        if !e.check_rdp().holds() {
            continue;
        }
        let sd = lexrep::subdirect_decompose(&Host::Finite(e)).map_err(|e| e.to_string())?;
        ensure!(sd.holds(), "{}: {:?}", name, sd.checks);
        ensure!(sd.checks.len() == 6, "{}: {} checks", name, sd.checks.len());
        n += 1;
    }
    Ok(format!("{} RDP fixtures embed subdirectly", n))
}

fn c14_riesz_projections() -> Outcome {
    let mut count = 0;
    for (name, e) in fixtures::finite() {
        if !e.check_rdp().holds() {
            continue;
        }
        for i in fin::all_ideals(&e) {
            if !fin::is_riesz(&e, &i).holds() {
                continue;
            }
            let q = fin::quotient(&e, &i).map_err(|e| e.to_string())?;
            let h = Homomorphism::projection(&e, &q);
            let sim = has_sim_property(&h).map_err(|e| e.to_string())?;
            let full = is_full(&h).map_err(|e| e.to_string())?;
            ensure!(sim.holds() && full.holds(), "{}: {} / {}", name, sim.detail, full.detail);
            ensure!(q.algebra.check_rdp().holds(), "{}: quotient loses RDP", name);
            count += 1;
        }
    }
    Ok(format!("{} Riesz projections", count))
}

fn c15_determinism() -> Outcome {
    let reg = Registry::default();
    let b = Budget { seed: 11, ..budget() };
    let mut runs = 0;
    for (name, text) in fixtures::ALL {
        let doc = format::parse(text).map_err(|e| e.to_string())?;
        let again = format::parse(&doc.emit()).map_err(|e| e.to_string())?;
        ensure!(again == doc && again.emit() == doc.emit(), "{} does not round-trip", name);
        let ctx = Context::new(doc, b).map_err(|e| e.to_string())?;
        for cmd in reg.iter() {
            let a = cmd.run(&ctx).map(|r| (r.to_text(), r.to_json())).map_err(|e| e.to_string());
            let c = cmd.run(&ctx).map(|r| (r.to_text(), r.to_json())).map_err(|e| e.to_string());
            ensure!(a == c, "{} {} differs between runs", cmd.name(), name);
            runs += 1;
        }
    }
    Ok(format!("{} fixtures round-trip; {} command runs repeat byte for byte", fixtures::ALL.len(), runs))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("axioms and brute-force RDP", c1_axioms_and_rdp),
        ("generated ideal equals closure", c2_generated_ideals),
        ("Infin ⊆ Rad", c3_infinitesimals_in_radical),
        ("LEX3 lexicographic ideals", c4_lex3_lexicographic_ideals),
        ("non-retractive and non-strict examples", c5_counterexamples),
        ("state and decomposition bijection", c6_state_decomposition_bijection),
        ("ordered decompositions", c7_ordered_decompositions),
        ("quotient by the zero fibre", c8_quotient_heads),
        ("unique states", c9_unique_states),
        ("lexicographic representation", c10_representations),
        ("classification consistency", c11_classification),
        ("K61 order shape", c12_k61),
        ("subdirect embedding", c13_subdirect),
        ("Riesz projections", c14_riesz_projections),
        ("determinism and round trip", c15_determinism),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = started.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {} ({}) [{} ms]", k + 1, title, detail, ms),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {} ({}) [{} ms]", k + 1, title, why, ms);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
