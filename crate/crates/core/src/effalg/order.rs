use super::finite::exhaustive;
use super::{EffectAlgebra, FiniteEffectAlgebra, IntervalEffectAlgebra};
use crate::sampling;
use crate::vector::Vector;
use crate::verdict::{Budget, Finding, Verdict};

/// Lattice-theoretic shape of the induced order.
#[derive(Clone, Debug)]
pub struct OrderClass {
    pub linear: Finding,
    pub lattice: Finding,
    pub antilattice: Finding,
    pub mv: Finding,
    /// `a ⊕ b = a + (a⁻ ∧ b)`, emitted for finite MV-effect algebras.
    pub mv_table: Option<Vec<Vec<usize>>>,
    /// The MV-algebra axioms checked on `mv_table`.
    pub mv_axioms: Option<Finding>,
}

pub fn classify_finite(e: &FiniteEffectAlgebra) -> OrderClass {
    let n = e.len();
    let mut incomparable = None;
    let mut no_meet = None;
    let mut bounded_incomparable = None;
    for a in 0..n {
        for b in a + 1..n {
            let comparable = e.comparable(a, b);
            let (m, j) = (e.meet(a, b), e.join(a, b));
            if !comparable && incomparable.is_none() {
                incomparable = Some((a, b));
            }
            if (m.is_none() || j.is_none()) && no_meet.is_none() {
                no_meet = Some((a, b));
            }
            if !comparable && (m.is_some() || j.is_some()) && bounded_incomparable.is_none() {
                bounded_incomparable = Some((a, b));
            }
        }
    }
    let pair = |p: (usize, usize)| format!("{}, {}", e.label(p.0), e.label(p.1));
    let linear = match incomparable {
        None => exhaustive(true, "all pairs comparable"),
        Some(p) => exhaustive(false, format!("{} incomparable", pair(p))),
    };
    let lattice = match no_meet {
        None => exhaustive(true, "all pairs have meet and join"),
        Some(p) => exhaustive(false, format!("{} lack a meet or join", pair(p))),
    };
    let antilattice = match bounded_incomparable {
        None => exhaustive(true, "only comparable pairs have meets or joins"),
        Some(p) => exhaustive(false, format!("{} incomparable with a meet or join", pair(p))),
    };
    let rdp = e.check_rdp();
    let mv_holds = lattice.holds() && rdp.holds();
    let mv = exhaustive(
        mv_holds,
        if mv_holds {
            "lattice with RDP".to_string()
        } else if !lattice.holds() {
            "not a lattice".to_string()
        } else {
            format!("no RDP: {}", rdp.detail)
        },
    );
    let (mv_table, mv_axioms) = if mv_holds {
        let t = mv_table(e);
        let ax = mv_axioms(e, &t);
        (Some(t), Some(ax))
    } else {
        (None, None)
    };
    OrderClass {
        linear,
        lattice,
        antilattice,
        mv,
        mv_table,
        mv_axioms,
    }
}

fn mv_table(e: &FiniteEffectAlgebra) -> Vec<Vec<usize>> {
    e.elements()
        .map(|a| {
            e.elements()
                .map(|b| {
                    let m = e.meet(e.comp(a), b).expect("lattice");
                    e.add(a, m).expect("a + (a⁻ ∧ b) is defined")
                })
                .collect()
        })
        .collect()
}

/// Commutative monoid plus `x** = x`, `x ⊕ 1 = 1`, `1 = 0*`, and
/// `x ⊕ (x ⊕ y*)* = y ⊕ (y ⊕ x*)*`.
fn mv_axioms(e: &FiniteEffectAlgebra, t: &[Vec<usize>]) -> Finding {
    let (zero, one) = (e.zero_idx(), e.one_idx());
    let star = |x: usize| e.comp(x);
    let l = |x: usize| e.label(x).to_string();
    for x in e.elements() {
        if t[x][zero] != x {
            return Finding::refuted(format!("{} ⊕ 0 ≠ {}", l(x), l(x)));
        }
        if star(star(x)) != x {
            return Finding::refuted(format!("{}** ≠ {}", l(x), l(x)));
        }
        if t[x][one] != one {
            return Finding::refuted(format!("{} ⊕ 1 ≠ 1", l(x)));
        }
        for y in e.elements() {
            if t[x][y] != t[y][x] {
                return Finding::refuted(format!("⊕ not commutative at {}, {}", l(x), l(y)));
            }
            if t[x][star(t[x][star(y)])] != t[y][star(t[y][star(x)])] {
                return Finding::refuted(format!("axiom (iv) fails at {}, {}", l(x), l(y)));
            }
            for z in e.elements() {
                if t[t[x][y]][z] != t[x][t[y][z]] {
                    return Finding::refuted(format!(
                        "⊕ not associative at {}, {}, {}",
                        l(x),
                        l(y),
                        l(z)
                    ));
                }
            }
        }
    }
    if star(zero) != one {
        return Finding::refuted("0* ≠ 1");
    }
    Finding::proved("all MV axioms hold exhaustively")
}

/// Grid-relative meet: a coarse-grid lower bound above every fine-grid lower bound.
fn grid_meet(
    e: &IntervalEffectAlgebra,
    coarse: &[Vector],
    fine: &[Vector],
    a: &Vector,
    b: &Vector,
) -> Option<Vector> {
    let lower: Vec<&Vector> = fine.iter().filter(|x| e.leq(x, a) && e.leq(x, b)).collect();
    coarse
        .iter()
        .filter(|m| e.leq(m, a) && e.leq(m, b))
        .find(|m| lower.iter().all(|x| e.leq(x, m)))
        .cloned()
}

fn grid_join(
    e: &IntervalEffectAlgebra,
    coarse: &[Vector],
    fine: &[Vector],
    a: &Vector,
    b: &Vector,
) -> Option<Vector> {
    let upper: Vec<&Vector> = fine.iter().filter(|x| e.leq(a, x) && e.leq(b, x)).collect();
    coarse
        .iter()
        .filter(|m| e.leq(a, m) && e.leq(b, m))
        .find(|m| upper.iter().all(|x| e.leq(m, x)))
        .cloned()
}

/// Sampled classification: pairs are drawn from the coarse grid and bounds
/// are compared against the grid twice as fine.
pub fn classify_interval(e: &IntervalEffectAlgebra, budget: &Budget) -> OrderClass {
    let rdp = e.check_rdp(budget);
    if e.cone().is_linear() {
        let lin = Finding::proved("linearly ordered cone");
        let mv = Finding::new(Verdict::Proved.and(rdp.verdict), format!("chain; {}", rdp.detail));
        return OrderClass {
            linear: lin.clone(),
            lattice: Finding::proved("chains are lattices"),
            antilattice: Finding::proved("chains are antilattices"),
            mv,
            mv_table: None,
            mv_axioms: None,
        };
    }
    let coarse = e.sample_points(budget);
    let fine = e.refined_points(budget);
    let mut rng = sampling::rng(budget.seed);
    let pairs = sampling::pairs(&coarse, budget.samples, &mut rng);
    let mut incomparable = None;
    let mut no_bound = None;
    let mut bounded_incomparable = None;
    for (a, b) in &pairs {
        let comparable = e.leq(a, b) || e.leq(b, a);
        if comparable {
            continue;
        }
        if incomparable.is_none() {
            incomparable = Some((a.clone(), b.clone()));
        }
        let m = grid_meet(e, &coarse, &fine, a, b);
        let j = grid_join(e, &coarse, &fine, a, b);
        if (m.is_none() || j.is_none()) && no_bound.is_none() {
            no_bound = Some((a.clone(), b.clone(), m.is_none()));
        }
        if (m.is_some() || j.is_some()) && bounded_incomparable.is_none() {
            bounded_incomparable = Some((a.clone(), b.clone(), m.or(j).unwrap()));
        }
    }
    let linear = match &incomparable {
        Some((a, b)) => Finding::refuted(format!("{} and {} incomparable", a, b)),
        None => Finding::new(Verdict::Witnessed(*budget), "no sampled pair incomparable"),
    };
    let lattice = match &no_bound {
        Some((a, b, meet)) => Finding::new(
            Verdict::Refuted(Some(*budget)),
            format!(
                "{} and {} have no {} on the grid",
                a,
                b,
                if *meet { "meet" } else { "join" }
            ),
        ),
        None => Finding::new(Verdict::Witnessed(*budget), "every sampled pair has meet and join"),
    };
    let antilattice = match &bounded_incomparable {
        Some((a, b, m)) => Finding::new(
            Verdict::Refuted(Some(*budget)),
            format!("{} and {} incomparable with bound {}", a, b, m),
        ),
        None => Finding::new(
            Verdict::Witnessed(*budget),
            "no sampled incomparable pair has a meet or join",
        ),
    };
    let mv = Finding::new(
        lattice.verdict.and(rdp.verdict),
        if lattice.holds() {
            format!("lattice; {}", rdp.detail)
        } else {
            "not a lattice".to_string()
        },
    );
    OrderClass {
        linear,
        lattice,
        antilattice,
        mv,
        mv_table: None,
        mv_axioms: None,
    }
}
