//! Rational-vector Abelian po-groups with configurable positive cones.
//!
//! A group is `Zⁿ` or `Qⁿ` ordered by a [`ConeSpec`]. Cones are either
//! structural (coordinatewise products and lexicographic pairs) or a custom
//! predicate in the inequality language of [`crate::predicate`].

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::predicate::{LinearAtom, Pred, Rel};
use crate::sampling::{self, axis, box_points};
use crate::vector::{int, rat, Rat, Vector};
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integer,
    Rational,
}

impl Domain {
    /// Grid step denominator used for bounded searches.
    pub fn den(self) -> i128 {
        match self {
            Domain::Integer => 1,
            Domain::Rational => sampling::RATIONAL_DEN,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Domain::Integer => "Z",
            Domain::Rational => "Q",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Integer => "integer",
            Domain::Rational => "rational",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Domain> {
        match s.trim() {
            "integer" | "Z" => Ok(Domain::Integer),
            "rational" | "Q" => Ok(Domain::Rational),
            other => Err(Error::Unsupported(format!("domain '{}'", other))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConeSpec {
    /// Coordinatewise order on `rank` coordinates.
    Product(usize),
    /// Lexicographic order: the left part decides unless it is zero.
    Lex(Box<ConeSpec>, Box<ConeSpec>),
    Custom { rank: usize, pred: Pred },
}

impl ConeSpec {
    pub fn lex(left: ConeSpec, right: ConeSpec) -> ConeSpec {
        ConeSpec::Lex(Box::new(left), Box::new(right))
    }

    pub fn rank(&self) -> usize {
        match self {
            ConeSpec::Product(n) => *n,
            ConeSpec::Lex(l, r) => l.rank() + r.rank(),
            ConeSpec::Custom { rank, .. } => *rank,
        }
    }

    pub fn contains(&self, g: &[Rat]) -> bool {
        match self {
            ConeSpec::Product(_) => g.iter().all(|c| !c.is_negative()),
            ConeSpec::Lex(l, r) => {
                let (gl, gr) = g.split_at(l.rank());
                if gl.iter().all(Zero::is_zero) {
                    r.contains(gr)
                } else {
                    l.contains(gl)
                }
            }
            ConeSpec::Custom { pred, .. } => pred.eval(g),
        }
    }

    /// In the cone and nonzero.
    pub fn strictly_contains(&self, g: &[Rat]) -> bool {
        !g.iter().all(Zero::is_zero) && self.contains(g)
    }

    /// Linearly ordered: `Z`, `Q`, and lexicographic towers of them.
    pub fn is_linear(&self) -> bool {
        match self {
            ConeSpec::Product(n) => *n <= 1,
            ConeSpec::Lex(l, r) => l.is_linear() && r.is_linear(),
            ConeSpec::Custom { .. } => false,
        }
    }

    pub fn is_structural(&self) -> bool {
        match self {
            ConeSpec::Product(_) => true,
            ConeSpec::Lex(l, r) => l.is_structural() && r.is_structural(),
            ConeSpec::Custom { .. } => false,
        }
    }

    /// The membership condition as a predicate over `x_offset, x_offset+1, ...`.
    pub fn to_predicate(&self, offset: usize) -> Pred {
        match self {
            ConeSpec::Product(n) => Pred::and(
                (0..*n)
                    .map(|i| Pred::atom(LinearAtom::coord(offset + i, Rel::Ge)))
                    .collect(),
            ),
            ConeSpec::Lex(l, r) => {
                let zero_l = Pred::zero_on(offset..offset + l.rank());
                Pred::or(vec![
                    Pred::and(vec![l.to_predicate(offset), Pred::not(zero_l.clone())]),
                    Pred::and(vec![zero_l, r.to_predicate(offset + l.rank())]),
                ])
            }
            ConeSpec::Custom { pred, .. } => pred.shifted(offset),
        }
    }

    /// Re-associates a lexicographic tower as `lex(first k coordinates, rest)`.
    pub fn split_lex(&self, k: usize) -> Option<(ConeSpec, ConeSpec)> {
        match self {
            ConeSpec::Lex(l, r) => {
                let lr = l.rank();
                if k == lr {
                    Some(((**l).clone(), (**r).clone()))
                } else if k < lr {
                    let (a, b) = l.split_lex(k)?;
                    Some((a, ConeSpec::lex(b, (**r).clone())))
                } else {
                    let (a, b) = r.split_lex(k - lr)?;
                    Some((ConeSpec::lex((**l).clone(), a), b))
                }
            }
            _ => None,
        }
    }

    /// Image of the cone under projection onto `keep` (sorted), when that
    /// image is again a cone of this kind.
    pub fn project(&self, keep: &[usize]) -> Option<ConeSpec> {
        if keep.len() == self.rank() {
            return Some(self.clone());
        }
        match self {
            ConeSpec::Product(_) => Some(ConeSpec::Product(keep.len())),
            ConeSpec::Lex(l, r) => {
                let lr = l.rank();
                let (kl, kr): (Vec<usize>, Vec<usize>) = keep.iter().partition(|&&i| i < lr);
                let kr: Vec<usize> = kr.into_iter().map(|i| i - lr).collect();
                if kr.is_empty() {
                    l.project(&kl)
                } else if kl.len() == lr {
                    Some(ConeSpec::lex((**l).clone(), r.project(&kr)?))
                } else {
                    None
                }
            }
            ConeSpec::Custom { .. } => None,
        }
    }

    /// Coordinates forced to zero in the convex subgroup generated by `g ≥ 0`.
    pub fn zero_face(&self, g: &[Rat]) -> Option<Vec<usize>> {
        match self {
            ConeSpec::Product(_) => Some(
                g.iter()
                    .enumerate()
                    .filter(|(_, c)| c.is_zero())
                    .map(|(i, _)| i)
                    .collect(),
            ),
            ConeSpec::Lex(l, r) => {
                let lr = l.rank();
                let (gl, gr) = g.split_at(lr);
                if gl.iter().all(Zero::is_zero) {
                    let mut z: Vec<usize> = (0..lr).collect();
                    z.extend(r.zero_face(gr)?.into_iter().map(|i| i + lr));
                    Some(z)
                } else {
                    l.zero_face(gl)
                }
            }
            ConeSpec::Custom { .. } => None,
        }
    }

    /// Readable group name such as `Z`, `Q^2`, `Z ×lex Z`.
    pub fn group_name(&self, domain: Domain) -> String {
        let d = domain.symbol();
        match self {
            ConeSpec::Product(0) => "O".to_string(),
            ConeSpec::Product(1) => d.to_string(),
            ConeSpec::Product(n) => format!("{}^{}", d, n),
            ConeSpec::Lex(l, r) => {
                let wrap = |c: &ConeSpec| {
                    let s = c.group_name(domain);
                    if matches!(c, ConeSpec::Lex(..)) {
                        format!("({})", s)
                    } else {
                        s
                    }
                };
                format!("{} ×lex {}", wrap(l), wrap(r))
            }
            ConeSpec::Custom { rank, .. } => format!("{}^{} (custom cone)", d, rank),
        }
    }
}

impl fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeSpec::Product(n) => write!(f, "product({})", n),
            ConeSpec::Lex(l, r) => write!(f, "lex({}, {})", l, r),
            ConeSpec::Custom { rank, pred } => write!(f, "custom({})[{}]", rank, pred),
        }
    }
}

impl FromStr for ConeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConeSpec> {
        let (cone, rest) = parse_cone(s.trim())?;
        if !rest.trim().is_empty() {
            return Err(Error::Predicate(format!("trailing text after cone: '{}'", rest.trim())));
        }
        Ok(cone)
    }
}

fn parse_rank(s: &str) -> Result<(usize, &str)> {
    let s = s.trim_start();
    let s = s
        .strip_prefix('(')
        .ok_or_else(|| Error::Predicate("expected '(' after cone kind".into()))?;
    let close = s
        .find(')')
        .ok_or_else(|| Error::Predicate("missing ')' after rank".into()))?;
    let n = s[..close]
        .trim()
        .parse()
        .map_err(|_| Error::Predicate(format!("bad rank '{}'", s[..close].trim())))?;
    Ok((n, &s[close + 1..]))
}

fn parse_cone(s: &str) -> Result<(ConeSpec, &str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix("product") {
        let (n, rest) = parse_rank(rest)?;
        Ok((ConeSpec::Product(n), rest))
    } else if let Some(rest) = s.strip_prefix("custom") {
        let (rank, rest) = parse_rank(rest)?;
        let rest = rest
            .trim_start()
            .strip_prefix('[')
            .ok_or_else(|| Error::Predicate("expected '[' after custom rank".into()))?;
        let close = rest
            .find(']')
            .ok_or_else(|| Error::Predicate("missing ']' after predicate".into()))?;
        let pred: Pred = rest[..close].parse()?;
        if let Some(v) = pred.max_var() {
            if v >= rank {
                return Err(Error::Predicate(format!(
                    "variable x{} out of range for rank {}",
                    v, rank
                )));
            }
        }
        Ok((ConeSpec::Custom { rank, pred }, &rest[close + 1..]))
    } else if let Some(rest) = s.strip_prefix("lex") {
        let rest = rest
            .trim_start()
            .strip_prefix('(')
            .ok_or_else(|| Error::Predicate("expected '(' after lex".into()))?;
        let (l, rest) = parse_cone(rest)?;
        let rest = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| Error::Predicate("expected ',' between lex factors".into()))?;
        let (r, rest) = parse_cone(rest)?;
        let rest = rest
            .trim_start()
            .strip_prefix(')')
            .ok_or_else(|| Error::Predicate("expected ')' closing lex".into()))?;
        Ok((ConeSpec::lex(l, r), rest))
    } else {
        Err(Error::Predicate(format!("unknown cone expression '{}'", s)))
    }
}

/// An Abelian po-group `Zⁿ` or `Qⁿ` with positive cone and optional unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoGroup {
    domain: Domain,
    cone: ConeSpec,
    unit: Option<Vector>,
}

impl ConePoGroup {
    pub fn new(domain: Domain, cone: ConeSpec, unit: Option<Vector>) -> Result<Self> {
        let g = ConePoGroup { domain, cone, unit: None };
        if let Some(u) = &unit {
            g.check_rank(u)?;
            if !g.in_group(u) || u.is_zero() || !g.cone.contains(u.coords()) {
                return Err(Error::BadUnit(u.to_string()));
            }
        }
        Ok(ConePoGroup { unit, ..g })
    }

    /// `Zⁿ` (or `Qⁿ`) with the coordinatewise order.
    pub fn product(domain: Domain, rank: usize, unit: Option<Vector>) -> Result<Self> {
        Self::new(domain, ConeSpec::Product(rank), unit)
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn cone(&self) -> &ConeSpec {
        &self.cone
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn with_unit(&self, unit: Vector) -> Result<Self> {
        Self::new(self.domain, self.cone.clone(), Some(unit))
    }

    pub fn name(&self) -> String {
        self.cone.group_name(self.domain)
    }

    pub fn check_rank(&self, g: &Vector) -> Result<()> {
        if g.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: g.rank(),
            });
        }
        Ok(())
    }

    /// Right rank and, for integer groups, integral coordinates.
    pub fn in_group(&self, g: &Vector) -> bool {
        g.rank() == self.rank() && (self.domain == Domain::Rational || g.is_integral())
    }

    pub fn cone_contains(&self, g: &Vector) -> Result<bool> {
        self.check_rank(g)?;
        Ok(self.cone.contains(g.coords()))
    }

    /// `g ≤ h` iff `h − g` is in the cone.
    pub fn leq(&self, g: &Vector, h: &Vector) -> Result<bool> {
        self.check_rank(g)?;
        self.check_rank(h)?;
        Ok(self.cone.contains((h - g).coords()))
    }

    pub(crate) fn le(&self, g: &Vector, h: &Vector) -> bool {
        self.cone.contains((h - g).coords())
    }

    /// `H ×lex G` with unit `(u, 0)`.
    pub fn lex_product(head: &ConePoGroup, tail: &ConePoGroup) -> Result<ConePoGroup> {
        let u = head.unit.as_ref().ok_or(Error::NoUnit)?;
        let domain = if head.domain == Domain::Integer && tail.domain == Domain::Integer {
            Domain::Integer
        } else {
            Domain::Rational
        };
        ConePoGroup::new(
            domain,
            ConeSpec::lex(head.cone.clone(), tail.cone.clone()),
            Some(u.concat(&Vector::zero(tail.rank()))),
        )
    }

    /// The factors of `lex(first k coordinates, rest)`, the head carrying the
    /// matching part of the unit.
    pub fn split_lex(&self, k: usize) -> Option<(ConePoGroup, ConePoGroup)> {
        let (l, r) = self.cone.split_lex(k)?;
        let head_unit = self.unit.as_ref().map(|u| u.slice(0, k));
        let head = ConePoGroup::new(self.domain, l, head_unit).ok()?;
        let tail = ConePoGroup::new(self.domain, r, None).ok()?;
        Some((head, tail))
    }

    /// Grid points of the box `[-w, w]^rank` with step `1/den`.
    fn window_points(&self, w: i128, den: i128) -> Vec<Vector> {
        let ax = axis(&int(-w), &int(w), den);
        box_points(&vec![ax; self.rank()])
    }

    /// Window and step used for windowed cone searches.
    fn search_grid(&self, budget: &Budget) -> (i128, i128) {
        match self.domain {
            Domain::Integer => (budget.window, 1),
            Domain::Rational => (budget.window.min(2), 2),
        }
    }

    fn random_point(&self, w: i128, rng: &mut impl Rng) -> Vector {
        Vector::new(
            (0..self.rank())
                .map(|_| match self.domain {
                    Domain::Integer => int(rng.gen_range(-w..=w)),
                    Domain::Rational => {
                        let d = rng.gen_range(1..=12);
                        rat(rng.gen_range(-w * d..=w * d), d)
                    }
                })
                .collect(),
        )
    }

    /// Cone axioms `0 ∈ C`, `C + C ⊆ C`, `C ∩ −C = {0}`.
    pub fn verify_cone_axioms(&self, budget: &Budget) -> Finding {
        if self.cone.is_structural() {
            return Finding::proved("structural cone");
        }
        let zero = Vector::zero(self.rank());
        if !self.cone.contains(zero.coords()) {
            return Finding::refuted("0 is not in the cone");
        }
        let (w, den) = self.search_grid(budget);
        let mut pts: Vec<Vector> = self
            .window_points(w, den)
            .into_iter()
            .filter(|p| self.cone.contains(p.coords()))
            .collect();
        let mut rng = sampling::rng(budget.seed);
        for _ in 0..budget.samples {
            let p = self.random_point(budget.window, &mut rng);
            if self.cone.contains(p.coords()) {
                pts.push(p);
            }
        }
        for p in &pts {
            if !p.is_zero() && self.cone.contains((-p).coords()) {
                return Finding::new(
                    Verdict::Refuted(None),
                    format!("{} and its negative are both positive", p),
                );
            }
        }
        for (a, b) in sampling::pairs(&pts, budget.samples * 10, &mut rng) {
            let s = &a + &b;
            if !self.cone.contains(s.coords()) {
                return Finding::refuted(format!("{} + {} = {} leaves the cone", a, b, s));
            }
        }
        Finding::new(
            Verdict::Witnessed(*budget),
            format!("{} cone points checked", pts.len()),
        )
    }

    /// Every element lies below some multiple of the unit.
    pub fn strong_unit(&self, budget: &Budget) -> Finding {
        let u = match &self.unit {
            Some(u) => u,
            None => return Finding::refuted("no unit"),
        };
        match structural_strong_unit(&self.cone, u.coords()) {
            Some(true) => Finding::proved("structural"),
            Some(false) => Finding::refuted(format!("{} is not a strong unit", u)),
            None => {
                let mut rng = sampling::rng(budget.seed);
                let bound = 4 * budget.window * self.domain.den() + 4;
                for _ in 0..budget.samples {
                    let g = self.random_point(budget.window, &mut rng);
                    let found = (0..=bound).any(|n| self.le(&g, &u.times(n)));
                    if !found {
                        return Finding::new(
                            Verdict::Unknown(*budget),
                            format!("unverified: no n ≤ {} with {} ≤ n·{}", bound, g, u),
                        );
                    }
                }
                Finding::new(Verdict::Witnessed(*budget), "unverified beyond samples")
            }
        }
    }

    /// Upward directedness.
    pub fn is_directed(&self, budget: &Budget) -> Finding {
        if let Some(true) = structural_directed(&self.cone) {
            return Finding::proved("structural");
        }
        let (w, den) = self.search_grid(budget);
        let pts = self.window_points(w, den);
        let tops = self.window_points(2 * w + 1, den);
        let mut rng = sampling::rng(budget.seed);
        for (x, y) in sampling::pairs(&pts, budget.samples, &mut rng) {
            if !tops.iter().any(|z| self.le(&x, z) && self.le(&y, z)) {
                return Finding::new(
                    Verdict::Refuted(Some(*budget)),
                    format!("{} and {} have no common upper bound in the window", x, y),
                );
            }
        }
        Finding::new(Verdict::Witnessed(*budget), "every sampled pair has an upper bound")
    }

    /// Riesz decomposition property of the positive cone.
    pub fn check_rdp_cone(&self, budget: &Budget) -> Finding {
        if let Some(reason) = structural_rdp(&self.cone) {
            return Finding::proved(reason);
        }
        let (w, den) = self.search_grid(budget);
        let pts: Vec<Vector> = self
            .window_points(w, den)
            .into_iter()
            .filter(|p| self.cone.contains(p.coords()))
            .collect();
        let cone = |v: &Vector| self.cone.contains(v.coords());
        let dens = self.refinement_dens(den);
        let total = pts.len().pow(3);
        let check = |a1: &Vector, a2: &Vector, b1: &Vector| -> Option<String> {
            let b2 = &(a1 + a2) - b1;
            if !cone(&b2) {
                return None;
            }
            if find_refinement(&cone, a1, a2, b1, &dens).is_none() {
                return Some(format!("{} + {} = {} + {}", a1, a2, b1, b2));
            }
            None
        };
        let (tested, failure) = if total <= 150_000 {
            let mut fail = None;
            'outer: for a1 in &pts {
                for a2 in &pts {
                    for b1 in &pts {
                        if let Some(f) = check(a1, a2, b1) {
                            fail = Some(f);
                            break 'outer;
                        }
                    }
                }
            }
            (total, fail)
        } else {
            let mut rng = sampling::rng(budget.seed);
            let n = budget.samples * 100;
            let mut fail = None;
            for _ in 0..n {
                let pick = |r: &mut rand_chacha::ChaCha8Rng| pts[r.gen_range(0..pts.len())].clone();
                let (a1, a2, b1) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                if let Some(f) = check(&a1, &a2, &b1) {
                    fail = Some(f);
                    break;
                }
            }
            (n, fail)
        };
        match failure {
            Some(f) => Finding::new(
                Verdict::Refuted(Some(*budget)),
                format!("no refinement within the window for {}", f),
            ),
            None => Finding::new(
                Verdict::Witnessed(*budget),
                format!("{} quadruples over {} cone points refined", tested, pts.len()),
            ),
        }
    }

    /// Denominators tried for refinement entries, coarse to fine.
    pub(crate) fn refinement_dens(&self, den: i128) -> Vec<i128> {
        match self.domain {
            Domain::Integer => vec![1],
            Domain::Rational => vec![den, 2 * den, 4 * den],
        }
    }
}

impl fmt::Display for ConePoGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.domain, self.cone)?;
        if let Some(u) = &self.unit {
            write!(f, " unit {}", u)?;
        }
        Ok(())
    }
}

fn structural_strong_unit(cone: &ConeSpec, u: &[Rat]) -> Option<bool> {
    match cone {
        ConeSpec::Product(_) => Some(u.iter().all(Signed::is_positive)),
        ConeSpec::Lex(l, _) => {
            let ul = &u[..l.rank()];
            if ul.iter().all(Zero::is_zero) {
                return Some(false);
            }
            structural_strong_unit(l, ul)
        }
        ConeSpec::Custom { .. } => None,
    }
}

fn structural_directed(cone: &ConeSpec) -> Option<bool> {
    match cone {
        ConeSpec::Product(_) => Some(true),
        ConeSpec::Lex(l, r) => {
            if l.rank() == 0 {
                structural_directed(r)
            } else {
                structural_directed(l)
            }
        }
        ConeSpec::Custom { .. } => None,
    }
}

fn structural_rdp(cone: &ConeSpec) -> Option<String> {
    match cone {
        ConeSpec::Product(n) if *n <= 1 => Some("linearly ordered".to_string()),
        ConeSpec::Lex(l, r) if l.is_linear() => {
            structural_rdp(r).map(|_| "linear left factor, right factor with RDP".to_string())
        }
        _ => None,
    }
}

/// Searches `c11` with `0 ≤ c11 ≤ a1, b1` and `b1 − a2 ≤ c11`; the remaining
/// entries are then determined.
pub(crate) fn find_refinement(
    cone: &dyn Fn(&Vector) -> bool,
    a1: &Vector,
    a2: &Vector,
    b1: &Vector,
    dens: &[i128],
) -> Option<Vector> {
    let lower = b1 - a2;
    let ok = |c: &Vector| cone(c) && cone(&(a1 - c)) && cone(&(b1 - c)) && cone(&(c - &lower));
    let n = a1.rank();
    let pick = |f: &dyn Fn(&Rat, &Rat) -> Rat, x: &Vector, y: &Vector| {
        Vector::new((0..n).map(|i| f(&x[i], &y[i])).collect())
    };
    let zero = Vector::zero(n);
    let meet = pick(&|a, b| *a.min(b), a1, b1);
    let floor = pick(&|a, b| *a.max(b), &zero, &lower);
    for c in [meet.clone(), floor.clone(), zero.clone(), a1.clone(), b1.clone()] {
        if ok(&c) {
            return Some(c);
        }
    }
    let pts = [&zero, a1, b1, &lower];
    let lo = Vector::new(
        (0..n)
            .map(|i| pts.iter().map(|p| p[i]).min().unwrap())
            .collect(),
    );
    let hi = Vector::new(
        (0..n)
            .map(|i| pts.iter().map(|p| p[i]).max().unwrap())
            .collect(),
    );
    for &den in dens {
        let axes: Vec<Vec<Rat>> = (0..n).map(|i| axis(&lo[i], &hi[i], den)).collect();
        if let Some(c) = box_points(&axes).into_iter().find(|c| ok(c)) {
            return Some(c);
        }
    }
    None
}

/// Parses `cone@unit` with an optional `rational:` prefix, e.g. `product(1)@2`.
pub fn parse_group(s: &str) -> Result<ConePoGroup> {
    let (domain, rest) = match s.split_once(':') {
        Some((d, r)) if !d.contains('(') => (d.parse()?, r),
        _ => (Domain::Integer, s),
    };
    let (cone, unit) = match rest.rsplit_once('@') {
        Some((c, u)) => (c, Some(u)),
        None => (rest, None),
    };
    let cone: ConeSpec = cone.parse()?;
    let unit = match unit {
        Some(u) => Some(
            crate::vector::parse_vector(u)
                .ok_or_else(|| Error::Predicate(format!("bad unit '{}'", u)))?,
        ),
        None => None,
    };
    ConePoGroup::new(domain, cone, unit)
}
