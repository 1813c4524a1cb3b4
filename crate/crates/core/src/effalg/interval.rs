use std::collections::BTreeMap;

use num_traits::Zero;

use super::{EffectAlgebra, FiniteEffectAlgebra};
use crate::pogroup::{find_refinement, ConePoGroup, ConeSpec, Domain};
use crate::predicate::Pred;
use crate::sampling;
use crate::vector::{Rat, Vector};
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, Result};

/// The interval `[0, u]` of a po-group with `a + b` defined iff `a + b ≤ u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalEffectAlgebra {
    group: ConePoGroup,
    unit: Vector,
    split: Option<usize>,
}

/// A finite interval materialised as a table, with the point behind each index.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub algebra: FiniteEffectAlgebra,
    pub points: Vec<Vector>,
}

impl Enumeration {
    pub fn index_of(&self, v: &Vector) -> Option<usize> {
        self.points.binary_search(v).ok()
    }
}

impl IntervalEffectAlgebra {
    pub fn gamma(group: &ConePoGroup, u: &Vector) -> Result<Self> {
        let g = group.with_unit(u.clone())?;
        Ok(IntervalEffectAlgebra {
            group: g,
            unit: u.clone(),
            split: None,
        })
    }

    /// Declares `lex(first k coordinates, rest)` as the head/tail split.
    pub fn with_split(mut self, k: usize) -> Result<Self> {
        if self.group.split_lex(k).is_none() {
            return Err(Error::Unsupported(format!(
                "cone {} has no lexicographic split after {} coordinates",
                self.group.cone(),
                k
            )));
        }
        self.split = Some(k);
        Ok(self)
    }

    pub fn group(&self) -> &ConePoGroup {
        &self.group
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn split(&self) -> Option<usize> {
        self.split
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn cone(&self) -> &ConeSpec {
        self.group.cone()
    }

    /// `0 ≤ a ≤ u` in the group.
    pub fn member(&self, a: &Vector) -> bool {
        self.group.in_group(a)
            && self.group.cone().contains(a.coords())
            && self.group.cone().contains((&self.unit - a).coords())
    }

    /// Head interval `Γ(H, u_H)` and tail group `G` of the declared split.
    pub fn head_tail(&self) -> Option<(IntervalEffectAlgebra, ConePoGroup)> {
        let k = self.split?;
        let (head, tail) = self.group.split_lex(k)?;
        let hu = self.unit.slice(0, k);
        let head = IntervalEffectAlgebra::gamma(&head, &hu).ok()?;
        Some((head, tail))
    }

    /// Finite exactly when the group is `Zⁿ` with the coordinatewise order.
    pub fn is_enumerable(&self) -> bool {
        self.group.domain() == Domain::Integer && matches!(self.group.cone(), ConeSpec::Product(_))
    }

    pub fn enumerate(&self) -> Result<Enumeration> {
        if !self.is_enumerable() {
            let why = match (self.group.domain(), self.group.cone()) {
                (Domain::Rational, _) => "rational intervals are dense".to_string(),
                (_, ConeSpec::Lex(l, _)) => format!(
                    "(0,g) lies in the carrier for every g ≥ 0 in the last {} coordinates",
                    self.rank() - l.rank()
                ),
                _ => "custom cones are never enumerated".to_string(),
            };
            return Err(Error::InfiniteCarrier(why));
        }
        let axes: Vec<Vec<Rat>> = self
            .unit
            .coords()
            .iter()
            .map(|c| sampling::axis(&Rat::zero(), c, 1))
            .collect();
        let points = sampling::box_points(&axes);
        let index: BTreeMap<&Vector, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = points
            .iter()
            .map(|a| {
                points
                    .iter()
                    .map(|b| index.get(&(a + b)).copied())
                    .collect()
            })
            .collect();
        let labels = points.iter().map(|p| p.to_string()).collect();
        let zero = index[&Vector::zero(self.rank())];
        let one = index[&self.unit];
        let algebra = FiniteEffectAlgebra::from_table(labels, table, zero, one)?;
        Ok(Enumeration { algebra, points })
    }

    /// Carrier points on the grid of step `1/den` inside the search window.
    pub fn grid(&self, window: i128, den: i128) -> Vec<Vector> {
        sampling::window_box(&self.unit, window, den)
            .into_iter()
            .filter(|p| self.member(p))
            .collect()
    }

    /// Carrier points on the coarse search grid.
    pub fn sample_points(&self, budget: &Budget) -> Vec<Vector> {
        self.grid(budget.window, self.group.domain().den())
    }

    /// Carrier points on the grid twice as fine as [`Self::sample_points`].
    pub fn refined_points(&self, budget: &Budget) -> Vec<Vector> {
        let den = match self.group.domain() {
            Domain::Integer => 1,
            Domain::Rational => 2 * self.group.domain().den(),
        };
        self.grid(budget.window, den)
    }

    /// Windowed Riesz decomposition check over the sampled carrier.
    pub fn check_rdp(&self, budget: &Budget) -> Finding {
        let pts = self.sample_points(budget);
        let cone = |v: &Vector| self.group.cone().contains(v.coords());
        let dens = self.group.refinement_dens(self.group.domain().den());
        let mut all_pairs = Vec::new();
        for a in &pts {
            for b in &pts {
                if let Some(s) = self.sum(a, b) {
                    all_pairs.push((a.clone(), b.clone(), s));
                }
            }
        }
        let cap = budget.samples * 20;
        let exhaustive = all_pairs.len() <= cap;
        let chosen = if exhaustive {
            all_pairs
        } else {
            sampling::subset(&all_pairs, cap, &mut sampling::rng(budget.seed))
        };
        let mut count = 0usize;
        for (a1, a2, s) in &chosen {
            for b1 in pts.iter().filter(|b| self.leq(b, s)) {
                count += 1;
                if find_refinement(&cone, a1, a2, b1, &dens).is_none() {
                    let b2 = s - b1;
                    return Finding::new(
                        Verdict::Refuted(Some(*budget)),
                        format!("{}+{} = {}+{} has no refinement on the grid", a1, a2, b1, b2),
                    );
                }
            }
        }
        let structural = self.group.check_rdp_cone(budget);
        let note = if structural.verdict == Verdict::Proved {
            format!("; cone: {}", structural.detail)
        } else {
            String::new()
        };
        Finding::new(
            Verdict::Witnessed(*budget),
            format!(
                "{} identities over {} carrier points refined{}{}",
                count,
                pts.len(),
                if exhaustive { "" } else { " (sampled sums)" },
                note
            ),
        )
    }

    /// Infinitesimals as a predicate when the cone structure determines them.
    pub fn infinitesimal_pred(&self) -> Option<Pred> {
        infin(self.group.cone(), self.unit.coords(), 0)
    }

    pub fn is_infinitesimal(&self, a: &Vector, bound: usize) -> bool {
        let mut s = a.clone();
        for _ in 1..bound {
            match self.sum(&s, a) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    /// `Infin(E) = {0}`.
    pub fn is_archimedean(&self, budget: &Budget) -> Finding {
        let pts = self.sample_points(budget);
        match self.infinitesimal_pred() {
            Some(p) => match pts.iter().find(|a| !a.is_zero() && p.holds(a)) {
                Some(a) => Finding::refuted(format!("{} is a nonzero infinitesimal", a)),
                None if p == Pred::zero_on(0..self.rank()) => {
                    Finding::proved("infinitesimals are {0} by the cone structure")
                }
                None => Finding::new(
                    Verdict::Witnessed(*budget),
                    format!("infinitesimals {} have no nonzero grid point", p),
                ),
            },
            None => {
                let bound = 64 * (budget.window as usize + 1) * self.group.domain().den() as usize;
                match pts.iter().find(|a| !a.is_zero() && self.is_infinitesimal(a, bound)) {
                    Some(a) => Finding::new(
                        Verdict::Unknown(*budget),
                        format!("{}·{} is still defined", bound, a),
                    ),
                    None => Finding::new(
                        Verdict::Witnessed(*budget),
                        format!("every nonzero grid point has an undefined multiple below {}", bound),
                    ),
                }
            }
        }
    }

    fn point_label(&self, a: &Vector) -> String {
        a.to_string()
    }
}

/// Strictly positive `b` with `n·b < v` for all `n`.
fn strict_infin(cone: &ConeSpec, v: &[Rat], offset: usize) -> Option<Pred> {
    match cone {
        ConeSpec::Product(_) => Some(Pred::False),
        ConeSpec::Lex(l, r) => {
            let lr = l.rank();
            let head_zero = Pred::zero_on(offset..offset + lr);
            let tail_pos = Pred::and(vec![
                r.to_predicate(offset + lr),
                Pred::not(Pred::zero_on(offset + lr..offset + cone.rank())),
            ]);
            Some(Pred::or(vec![
                Pred::and(vec![head_zero, tail_pos]),
                strict_infin(l, &v[..lr], offset)?,
            ]))
        }
        ConeSpec::Custom { .. } => None,
    }
}

fn infin(cone: &ConeSpec, u: &[Rat], offset: usize) -> Option<Pred> {
    match cone {
        ConeSpec::Product(n) => Some(Pred::zero_on(offset..offset + n)),
        ConeSpec::Lex(l, _) => {
            let lr = l.rank();
            Some(Pred::or(vec![
                Pred::zero_on(offset..offset + lr),
                strict_infin(l, &u[..lr], offset)?,
            ]))
        }
        ConeSpec::Custom { .. } => None,
    }
}

impl EffectAlgebra for IntervalEffectAlgebra {
    type Elem = Vector;

    fn zero(&self) -> Vector {
        Vector::zero(self.rank())
    }

    fn one(&self) -> Vector {
        self.unit.clone()
    }

    fn contains(&self, a: &Vector) -> bool {
        self.member(a)
    }

    fn sum(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        let s = a + b;
        self.group
            .cone()
            .contains((&self.unit - &s).coords())
            .then_some(s)
    }

    fn leq(&self, a: &Vector, b: &Vector) -> bool {
        self.group.le(a, b)
    }

    fn minus(&self, b: &Vector, a: &Vector) -> Option<Vector> {
        self.leq(a, b).then(|| b - a)
    }

    fn complement(&self, a: &Vector) -> Vector {
        &self.unit - a
    }

    fn show(&self, a: &Vector) -> String {
        self.point_label(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::rat;

    fn lex(unit: &[i128], split: usize) -> IntervalEffectAlgebra {
        let cone = ConeSpec::lex(ConeSpec::Product(1), ConeSpec::Product(unit.len() - 1));
        let g = ConePoGroup::new(Domain::Integer, cone, None).unwrap();
        IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(unit))
            .unwrap()
            .with_split(split)
            .unwrap()
    }

    #[test]
    fn enumerate_products() {
        let z1 = ConePoGroup::product(Domain::Integer, 1, None).unwrap();
        let c4 = IntervalEffectAlgebra::gamma(&z1, &Vector::from_ints(&[4])).unwrap();
        let e = c4.enumerate().unwrap();
        assert_eq!(e.algebra.len(), 5);
        assert_eq!(e.algebra.verify_axioms(), Ok(()));
        let z2 = ConePoGroup::product(Domain::Integer, 2, None).unwrap();
        let b4 = IntervalEffectAlgebra::gamma(&z2, &Vector::from_ints(&[1, 1])).unwrap();
        let e = b4.enumerate().unwrap();
        assert_eq!(e.algebra.len(), 4);
        let a = e.index_of(&Vector::from_ints(&[1, 0])).unwrap();
        let b = e.index_of(&Vector::from_ints(&[0, 1])).unwrap();
        assert!(!e.algebra.comparable(a, b));
    }

    #[test]
    fn lex_interval_is_infinite() {
        let e = lex(&[1, 0], 1);
        assert!(matches!(e.enumerate(), Err(Error::InfiniteCarrier(_))));
        assert!(e.member(&Vector::from_ints(&[0, 100])));
        assert!(e.member(&Vector::from_ints(&[1, -100])));
        assert!(!e.member(&Vector::from_ints(&[1, 1])));
    }

    #[test]
    fn lex_infinitesimals() {
        let e = lex(&[1, 0], 1);
        let p = e.infinitesimal_pred().unwrap();
        assert_eq!(p.to_string(), "x0 = 0");
        assert!(e.is_infinitesimal(&Vector::from_ints(&[0, 7]), 1000));
        assert!(e.is_archimedean(&Budget::default()).verdict.is_refuted());
    }

    #[test]
    fn rational_square_rdp_and_archimedean() {
        let q2 = ConePoGroup::product(Domain::Rational, 2, None).unwrap();
        let sq = IntervalEffectAlgebra::gamma(&q2, &Vector::from_ints(&[1, 1])).unwrap();
        let b = Budget::default();
        assert!(sq.check_rdp(&b).holds());
        assert_eq!(sq.is_archimedean(&b).verdict, Verdict::Proved);
        assert!(sq.member(&Vector::new(vec![rat(1, 3), rat(1, 2)])));
    }

    #[test]
    fn head_tail_of_nested_lex() {
        let g = ConePoGroup::new(
            Domain::Integer,
            "lex(product(1), lex(product(1), product(1)))".parse().unwrap(),
            None,
        )
        .unwrap();
        let e = IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(&[1, 0, 0]))
            .unwrap()
            .with_split(1)
            .unwrap();
        let (head, tail) = e.head_tail().unwrap();
        assert_eq!(head.unit(), &Vector::from_ints(&[1]));
        assert_eq!(tail.name(), "Z ×lex Z");
    }
}
