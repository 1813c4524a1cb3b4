//! Ideals of interval algebras as predicates over the coordinates.
//!
//! Ideals of the form `{x ∈ E : xᵢ = 0 for i ∈ Z}` (faces) are the ones the
//! cone structure produces; quotients by them are projections onto `Z`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::effalg::{classify_finite, classify_interval, EffectAlgebra, IntervalEffectAlgebra};
use crate::pogroup::{ConePoGroup, Domain};
use crate::predicate::{Pred, Rel};
use crate::sampling;
use crate::vector::{fmt_rat, int, Rat, Vector};
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, Result};

use super::{Generation, Ideal, LargestStrict};

/// Coordinates constrained to zero when `pred` is a conjunction of `xᵢ = 0`.
pub fn face(pred: &Pred) -> Option<Vec<usize>> {
    fn atom_coord(p: &Pred) -> Option<usize> {
        match p {
            Pred::Atom(a) if a.rel() == Rel::Eq => {
                let vars = p.vars();
                (vars.len() == 1 && a.value(&vec![Rat::zero(); vars[0] + 1]).is_zero()).then_some(vars[0])
            }
            _ => None,
        }
    }
    match pred {
        Pred::True => Some(Vec::new()),
        Pred::And(ps) => {
            let mut z: Vec<usize> = ps.iter().map(atom_coord).collect::<Option<_>>()?;
            z.sort_unstable();
            z.dedup();
            Some(z)
        }
        p => atom_coord(p).map(|i| vec![i]),
    }
}

pub fn zero_ideal(e: &IntervalEffectAlgebra) -> Pred {
    Pred::zero_on(0..e.rank())
}

pub fn contains(e: &IntervalEffectAlgebra, pred: &Pred, x: &Vector) -> bool {
    e.member(x) && pred.holds(x)
}

/// Ideal generated by `gens`, read off the faces of the cone.
pub fn generated_ideal(e: &IntervalEffectAlgebra, gens: &[Vector]) -> Result<(Pred, Generation)> {
    let mut zero: BTreeSet<usize> = (0..e.rank()).collect();
    for g in gens {
        if !e.member(g) {
            return Err(Error::NotInCarrier(g.to_string()));
        }
        let z = e.cone().zero_face(g.coords()).ok_or_else(|| {
            Error::Unsupported("ideal generation on a custom cone is undecided".into())
        })?;
        let z: BTreeSet<usize> = z.into_iter().collect();
        zero = zero.intersection(&z).copied().collect();
    }
    Ok((Pred::zero_on(zero), Generation::ConeFaces))
}

/// Membership signature of a predicate over the sample grid.
fn signature(e: &IntervalEffectAlgebra, pred: &Pred, grid: &[Vector]) -> Vec<bool> {
    grid.iter().map(|x| contains(e, pred, x)).collect()
}

/// Ideals worth testing on a symbolic host: faces generated by grid points,
/// every coordinate face of a custom cone, `{0}` and `E`, deduplicated by
/// their members on the grid and ordered by size.
#[derive(Clone, Debug)]
pub struct Candidates {
    grid: Vec<Vector>,
    pub ideals: Vec<Pred>,
    signatures: Vec<Vec<bool>>,
    unit_index: Option<usize>,
}

impl Candidates {
    pub fn new(e: &IntervalEffectAlgebra, budget: &Budget) -> Candidates {
        let grid = e.sample_points(budget);
        let mut preds = vec![zero_ideal(e), Pred::True];
        if e.cone().is_structural() {
            for g in &grid {
                if let Ok((p, _)) = generated_ideal(e, std::slice::from_ref(g)) {
                    preds.push(p);
                }
            }
        } else {
            let r = e.rank();
            for mask in 0u32..(1 << r) {
                preds.push(Pred::zero_on((0..r).filter(|i| mask & (1 << i) != 0)));
            }
        }
        let mut seen: BTreeMap<Vec<bool>, Pred> = BTreeMap::new();
        for p in preds {
            let s = signature(e, &p, &grid);
            seen.entry(s).or_insert(p);
        }
        let mut pairs: Vec<(Vec<bool>, Pred)> = seen.into_iter().collect();
        pairs.sort_by_key(|(s, p)| (s.iter().filter(|b| **b).count(), p.to_string()));
        let unit_index = grid.iter().position(|x| x == e.unit());
        let (signatures, ideals) = pairs.into_iter().unzip();
        Candidates {
            grid,
            ideals,
            signatures,
            unit_index,
        }
    }

    fn size(&self, k: usize) -> usize {
        self.signatures[k].iter().filter(|b| **b).count()
    }

    fn proper(&self, k: usize) -> bool {
        self.unit_index.map_or(true, |u| !self.signatures[k][u])
    }

    fn subset(&self, a: usize, b: usize) -> bool {
        self.signatures[a]
            .iter()
            .zip(&self.signatures[b])
            .all(|(x, y)| !x || *y)
    }

    pub fn is_nontrivial(&self, k: usize) -> bool {
        self.size(k) > 1 && self.proper(k)
    }

    pub fn nontrivial(&self) -> Vec<&Pred> {
        (0..self.ideals.len())
            .filter(|&k| self.is_nontrivial(k))
            .map(|k| &self.ideals[k])
            .collect()
    }

    pub fn maximal(&self) -> Vec<&Pred> {
        let proper: Vec<usize> = (0..self.ideals.len()).filter(|&k| self.proper(k)).collect();
        proper
            .iter()
            .filter(|&&a| {
                !proper
                    .iter()
                    .any(|&b| self.size(b) > self.size(a) && self.subset(a, b))
            })
            .map(|&k| &self.ideals[k])
            .collect()
    }

    /// Intersection of the maximal candidates.
    pub fn radical(&self) -> Pred {
        Pred::and(self.maximal().into_iter().cloned().collect())
    }

    pub fn is_local(&self, budget: &Budget) -> Finding {
        let m = self.maximal();
        let names: Vec<String> = m.iter().map(|p| p.to_string()).collect();
        Finding::new(
            Verdict::sampled(m.len() == 1, *budget),
            format!("maximal candidates: {}", names.join("; ")),
        )
    }

    /// `p ⊆ q` on the grid.
    pub fn included(&self, e: &IntervalEffectAlgebra, p: &Pred, q: &Pred) -> bool {
        self.grid
            .iter()
            .all(|x| !contains(e, p, x) || contains(e, q, x))
    }

    pub fn grid(&self) -> &[Vector] {
        &self.grid
    }
}

/// Sampled check that a predicate cuts out an ideal.
pub fn is_ideal(e: &IntervalEffectAlgebra, pred: &Pred, budget: &Budget) -> Finding {
    let grid = e.sample_points(budget);
    let members: Vec<&Vector> = grid.iter().filter(|x| contains(e, pred, x)).collect();
    if !contains(e, pred, &e.zero()) {
        return Finding::refuted("0 is not a member");
    }
    for b in &members {
        if let Some(a) = grid.iter().find(|a| e.leq(a, b) && !contains(e, pred, a)) {
            return Finding::refuted(format!("{} ≤ {} but {} is not a member", a, b, a));
        }
        for c in &members {
            if let Some(s) = e.sum(b, c) {
                if !contains(e, pred, &s) {
                    return Finding::refuted(format!("{}+{} = {} leaves the set", b, c, s));
                }
            }
        }
    }
    Finding::new(
        Verdict::Witnessed(*budget),
        format!("{} grid members closed downward and under sums", members.len()),
    )
}

/// Riesz property, inherited from the host's RDP.
pub fn is_riesz(e: &IntervalEffectAlgebra, _pred: &Pred, budget: &Budget) -> Finding {
    let rdp = e.check_rdp(budget);
    if rdp.holds() {
        Finding::new(rdp.verdict, format!("host has RDP ({})", rdp.detail))
    } else {
        Finding::new(Verdict::Unknown(*budget), "host RDP not established")
    }
}

/// `E/I` as the interval of the projected group.
#[derive(Clone, Debug)]
pub struct SymbolicQuotient {
    pub algebra: IntervalEffectAlgebra,
    pub keep: Vec<usize>,
    /// Sampled verification that the projection realises `~_I`.
    pub check: Finding,
}

impl SymbolicQuotient {
    pub fn project(&self, x: &Vector) -> Vector {
        x.select(&self.keep)
    }
}

pub fn quotient(e: &IntervalEffectAlgebra, pred: &Pred, budget: &Budget) -> Result<SymbolicQuotient> {
    let keep = face(pred).ok_or_else(|| {
        Error::Unsupported(format!("quotient by non-face ideal {}", pred))
    })?;
    if keep.is_empty() {
        return Err(Error::Unsupported("quotient by the whole algebra is trivial".into()));
    }
    let cone = e.cone().project(&keep).ok_or_else(|| {
        Error::Unsupported(format!(
            "projection of {} onto coordinates {:?} is not a cone",
            e.cone(),
            keep
        ))
    })?;
    let group = ConePoGroup::new(e.group().domain(), cone, None)?;
    let mut algebra = IntervalEffectAlgebra::gamma(&group, &e.unit().select(&keep))?;
    if keep.len() == e.rank() {
        if let Some(k) = e.split() {
            algebra = algebra.with_split(k)?;
        }
    }
    let check = verify_projection(e, pred, &keep, &algebra, budget);
    Ok(SymbolicQuotient {
        algebra,
        keep,
        check,
    })
}

/// Classes of the projection agree with `~_I` on sampled same-class pairs.
fn verify_projection(
    e: &IntervalEffectAlgebra,
    pred: &Pred,
    keep: &[usize],
    q: &IntervalEffectAlgebra,
    budget: &Budget,
) -> Finding {
    let grid = e.sample_points(budget);
    let mut classes: BTreeMap<Vector, Vec<&Vector>> = BTreeMap::new();
    for x in &grid {
        let t = x.select(keep);
        if !q.member(&t) {
            return Finding::refuted(format!("{} projects outside the quotient", x));
        }
        classes.entry(t).or_default().push(x);
    }
    let mut rng = sampling::rng(budget.seed);
    for _ in 0..budget.samples {
        let x = &grid[rng.gen_range(0..grid.len())];
        let class = &classes[&x.select(keep)];
        let y = class[rng.gen_range(0..class.len())];
        let found = class.iter().any(|m| {
            e.leq(m, x)
                && e.leq(m, y)
                && contains(e, pred, &(x - m))
                && contains(e, pred, &(y - m))
        });
        if !found {
            return Finding::new(
                Verdict::Unknown(*budget),
                format!("no common part of {} and {} found on the grid", x, y),
            );
        }
    }
    Finding::new(
        Verdict::Witnessed(*budget),
        format!("{} classes on the grid; sampled pairs related", classes.len()),
    )
}

fn is_zero_ideal(e: &IntervalEffectAlgebra, pred: &Pred) -> bool {
    face(pred).is_some_and(|z| z.len() == e.rank())
}

/// `x/I < y/I` implies `x < y`.
pub fn is_strict(e: &IntervalEffectAlgebra, pred: &Pred, budget: &Budget) -> Result<Finding> {
    if is_zero_ideal(e, pred) {
        return Ok(Finding::proved("x/{0} < y/{0} means x < y"));
    }
    let q = quotient(e, pred, budget)?;
    let k = q.keep.len();
    if q.keep == (0..k).collect::<Vec<_>>() && e.cone().split_lex(k).is_some() {
        return Ok(Finding::proved(format!(
            "quotient is the head of a lexicographic split after {} coordinates",
            k
        )));
    }
    let grid = e.sample_points(budget);
    let all: Vec<(Vector, Vector)> = grid
        .iter()
        .flat_map(|x| grid.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let pairs = sampling::subset(&all, budget.samples * 20, &mut sampling::rng(budget.seed));
    for (x, y) in pairs {
        let (px, py) = (q.project(&x), q.project(&y));
        if q.algebra.lt(&px, &py) && !e.lt(&x, &y) {
            return Ok(Finding::refuted(format!(
                "{}/I < {}/I but not {} < {}",
                x, y, x, y
            )));
        }
    }
    Ok(Finding::new(Verdict::Witnessed(*budget), "no sampled pair breaks strictness"))
}

/// A section `t ↦ δ(t)` that keeps the quotient coordinates and fills the
/// others linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSection {
    pub keep: Vec<usize>,
    pub fill: Vec<usize>,
    /// One row per filled coordinate, one column per kept coordinate.
    pub matrix: Vec<Vec<Rat>>,
}

impl LinearSection {
    pub fn apply(&self, t: &Vector) -> Vector {
        let n = self.keep.len() + self.fill.len();
        let mut out = vec![Rat::zero(); n];
        for (j, &i) in self.keep.iter().enumerate() {
            out[i] = t[j];
        }
        for (row, &i) in self.matrix.iter().zip(&self.fill) {
            out[i] = row.iter().zip(t.coords()).map(|(m, x)| m * x).sum();
        }
        Vector::new(out)
    }
}

impl fmt::Display for LinearSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.keep.len() + self.fill.len();
        let mut parts = vec![String::new(); n];
        let tname = |j: usize| {
            if self.keep.len() == 1 {
                "t".to_string()
            } else {
                format!("t{}", j)
            }
        };
        for (j, &i) in self.keep.iter().enumerate() {
            parts[i] = tname(j);
        }
        for (row, &i) in self.matrix.iter().zip(&self.fill) {
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(|(j, m)| {
                    if m.is_one() {
                        tname(j)
                    } else {
                        format!("{}·{}", fmt_rat(m), tname(j))
                    }
                })
                .collect();
            parts[i] = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
        }
        if n == 1 {
            write!(f, "t ↦ {}", parts[0])
        } else {
            write!(f, "t ↦ ({})", parts.join(","))
        }
    }
}

/// Integer vector `m` with `m·a = target`, or `None` when `gcd(a) ∤ target`.
fn solve_integer(a: &[i128], target: i128) -> Option<Vec<i128>> {
    if target == 0 {
        return Some(vec![0; a.len()]);
    }
    let mut g = 0i128;
    let mut coef: Vec<i128> = vec![0; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        if g == 0 {
            g = ai.abs();
            coef[i] = ai.signum();
            continue;
        }
        let ext = g.extended_gcd(&ai);
        for c in coef.iter_mut() {
            *c *= ext.x;
        }
        coef[i] = ext.y;
        g = ext.gcd;
    }
    if g == 0 || target % g != 0 {
        return None;
    }
    let k = target / g;
    Some(coef.into_iter().map(|c| c * k).collect())
}

/// Why no linear section exists, or the section's matrix.
pub(crate) fn section_matrix(
    e: &IntervalEffectAlgebra,
    keep: &[usize],
    fill: &[usize],
) -> std::result::Result<Vec<Vec<Rat>>, String> {
    let uz = e.unit().select(keep);
    let uf = e.unit().select(fill);
    let mut rows = Vec::new();
    for (r, f) in fill.iter().enumerate() {
        let target = uf[r];
        let row = match e.group().domain() {
            Domain::Rational => {
                let mut row = vec![Rat::zero(); keep.len()];
                if !target.is_zero() {
                    let j = (0..keep.len()).find(|&j| !uz[j].is_zero()).ok_or("zero unit")?;
                    row[j] = target / uz[j];
                }
                row
            }
            Domain::Integer => {
                let a: Vec<i128> = uz.coords().iter().map(|c| c.to_integer()).collect();
                match solve_integer(&a, target.to_integer()) {
                    Some(m) => m.into_iter().map(int).collect(),
                    None => {
                        let obstruction = if keep.len() == 1 {
                            format!("{}·c₁ = {} unsolvable", fmt_rat(&uz[0]), e.unit())
                        } else {
                            let g = a.iter().fold(0i128, |g, x| g.gcd(x));
                            format!(
                                "coordinate {} of δ(u) = {} needs a multiple of {} equal to {}: unsolvable",
                                f,
                                e.unit(),
                                g,
                                fmt_rat(&target)
                            )
                        };
                        return Err(obstruction);
                    }
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Checks that `δ` is a homomorphism into `E` splitting the projection.
fn verify_section(
    e: &IntervalEffectAlgebra,
    q: &SymbolicQuotient,
    s: &LinearSection,
    budget: &Budget,
) -> Finding {
    let (pts, exhaustive) = match q.algebra.enumerate() {
        Ok(en) => (en.points, true),
        Err(_) => (q.algebra.sample_points(budget), false),
    };
    for t in &pts {
        let d = s.apply(t);
        if !e.member(&d) {
            return Finding::refuted(format!("δ({}) = {} is outside the carrier", t, d));
        }
        if q.project(&d) != *t {
            return Finding::refuted(format!("π(δ({})) ≠ {}", t, t));
        }
    }
    if s.apply(q.algebra.unit()) != *e.unit() {
        return Finding::refuted("δ(1) ≠ 1");
    }
    let pairs: Vec<(Vector, Vector)> = if exhaustive {
        pts.iter()
            .flat_map(|a| pts.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    } else {
        sampling::pairs(&pts, budget.samples, &mut sampling::rng(budget.seed))
    };
    for (a, b) in pairs {
        if let Some(c) = q.algebra.sum(&a, &b) {
            match e.sum(&s.apply(&a), &s.apply(&b)) {
                Some(d) if d == s.apply(&c) => {}
                _ => return Finding::refuted(format!("δ({}) + δ({}) ≠ δ({})", a, b, c)),
            }
        }
    }
    if exhaustive {
        Finding::proved(format!("section {} checked on all {} quotient elements", s, pts.len()))
    } else {
        Finding::new(Verdict::Witnessed(*budget), format!("section {} checked on samples", s))
    }
}

pub fn is_retractive(
    e: &IntervalEffectAlgebra,
    pred: &Pred,
    budget: &Budget,
) -> Result<(Finding, Option<LinearSection>)> {
    let q = quotient(e, pred, budget)?;
    let fill: Vec<usize> = (0..e.rank()).filter(|i| !q.keep.contains(i)).collect();
    let matrix = match section_matrix(e, &q.keep, &fill) {
        Ok(m) => m,
        Err(obstruction) => {
            let certain = q.algebra.is_enumerable();
            let v = if certain {
                Verdict::Refuted(None)
            } else {
                Verdict::Unknown(*budget)
            };
            return Ok((Finding::new(v, obstruction), None));
        }
    };
    let s = LinearSection {
        keep: q.keep.clone(),
        fill,
        matrix,
    };
    let f = verify_section(e, &q, &s, budget);
    if f.holds() {
        Ok((f, Some(s)))
    } else {
        Ok((
            Finding::new(Verdict::Unknown(*budget), format!("linear candidate failed: {}", f.detail)),
            None,
        ))
    }
}

/// Prime iff the quotient is an antilattice.
pub fn is_prime(e: &IntervalEffectAlgebra, pred: &Pred, budget: &Budget) -> Result<Finding> {
    if face(pred).is_some_and(|z| z.is_empty()) {
        return Ok(Finding::refuted("improper ideal"));
    }
    let q = quotient(e, pred, budget)?;
    if q.algebra.cone().is_linear() {
        return Ok(Finding::proved(format!(
            "quotient {} is linearly ordered",
            q.algebra.group().name()
        )));
    }
    let anti = match q.algebra.enumerate() {
        Ok(en) => classify_finite(&en.algebra).antilattice,
        Err(_) => classify_interval(&q.algebra, budget).antilattice,
    };
    Ok(Finding::new(anti.verdict, format!("quotient antilattice: {}", anti.detail)))
}

pub fn is_nontrivial(e: &IntervalEffectAlgebra, pred: &Pred, budget: &Budget) -> bool {
    let grid = e.sample_points(budget);
    !contains(e, pred, e.unit()) && grid.iter().any(|x| !x.is_zero() && contains(e, pred, x))
}

pub fn is_lexicographic(e: &IntervalEffectAlgebra, pred: &Pred, budget: &Budget) -> Result<Finding> {
    if !is_nontrivial(e, pred, budget) {
        return Ok(Finding::refuted("trivial ideal"));
    }
    let strict = is_strict(e, pred, budget)?;
    let (retr, _) = is_retractive(e, pred, budget)?;
    let prime = is_prime(e, pred, budget)?;
    Ok(Finding::new(
        strict.verdict.and(retr.verdict).and(prime.verdict),
        format!(
            "strict: {}; retractive: {}; prime: {}",
            strict.verdict.label(),
            retr.verdict.label(),
            prime.verdict.label()
        ),
    ))
}

/// `I ∪ I⁻`, with the subalgebra conditions checked on the grid.
pub fn subalgebra_of_ideal(e: &IntervalEffectAlgebra, pred: &Pred, budget: &Budget) -> (Pred, Finding) {
    let sub = Pred::or(vec![pred.clone(), pred.reflected(e.unit())]);
    let grid = e.sample_points(budget);
    let members: Vec<&Vector> = grid.iter().filter(|x| contains(e, &sub, x)).collect();
    let mut ok = contains(e, &sub, e.unit());
    for a in &members {
        ok &= contains(e, &sub, &e.complement(a));
        for b in &members {
            if let Some(c) = e.sum(a, b) {
                ok &= contains(e, &sub, &c);
            }
        }
    }
    let whole = members.len() == grid.len();
    (
        sub,
        Finding::new(
            Verdict::sampled(ok, *budget),
            format!(
                "{} of {} grid points{}",
                members.len(),
                grid.len(),
                if whole { " (the whole carrier)" } else { "" }
            ),
        ),
    )
}

/// Simplicity: every nontrivial candidate must fail to be an ideal, and every
/// sampled nonzero element must generate the whole algebra.
pub fn is_simple(e: &IntervalEffectAlgebra, cands: &Candidates, budget: &Budget) -> Finding {
    let nontrivial = cands.nontrivial();
    for p in &nontrivial {
        if is_ideal(e, p, budget).holds() {
            return Finding::new(
                if e.cone().is_structural() {
                    Verdict::Refuted(None)
                } else {
                    Verdict::Refuted(Some(*budget))
                },
                format!("nontrivial ideal {}", p),
            );
        }
    }
    let tested = cands.ideals.len();
    let grid = cands.grid();
    for a in grid.iter().filter(|a| !a.is_zero()) {
        if !generates_all(e, a, budget) {
            return Finding::new(
                Verdict::Unknown(*budget),
                format!("could not show that {} generates E", a),
            );
        }
    }
    Finding::new(
        Verdict::Witnessed(*budget),
        format!(
            "{} candidate ideals on the grid, all trivial or refuted; every nonzero grid element generates E",
            tested
        ),
    )
}

/// `a` generates `E`: by the cone faces, or because `u/k ≤ a` for some `k`.
fn generates_all(e: &IntervalEffectAlgebra, a: &Vector, budget: &Budget) -> bool {
    if let Some(z) = e.cone().zero_face(a.coords()) {
        return z.is_empty();
    }
    if e.group().domain() == Domain::Integer {
        return false;
    }
    let limit = 8 * budget.window.max(1) * e.group().domain().den();
    (1..=limit).any(|k| e.leq(&e.unit().scale(&Rat::new(1, k)), a))
}

/// Largest strict ideal among the nontrivial candidates.
pub fn largest_strict(e: &IntervalEffectAlgebra, cands: &Candidates, budget: &Budget) -> LargestStrict {
    let strict: Vec<&Pred> = cands
        .nontrivial()
        .into_iter()
        .filter(|p| is_strict(e, p, budget).map(|f| f.holds()).unwrap_or(false))
        .collect();
    match strict.last() {
        Some(top) => LargestStrict::Nontrivial(Ideal::Symbolic((*top).clone())),
        None => LargestStrict::WeakZero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pogroup::ConeSpec;

    fn lex(cone: &str, unit: &[i128]) -> IntervalEffectAlgebra {
        let g = ConePoGroup::new(Domain::Integer, cone.parse().unwrap(), None).unwrap();
        IntervalEffectAlgebra::gamma(&g, &Vector::from_ints(unit)).unwrap()
    }

    fn lex1() -> IntervalEffectAlgebra {
        lex("lex(product(1), product(1))", &[1, 0])
    }

    #[test]
    fn generated_in_lex1() {
        let e = lex1();
        let (p, how) = generated_ideal(&e, &[Vector::from_ints(&[0, 1])]).unwrap();
        assert_eq!(p.to_string(), "x0 = 0");
        assert_eq!(how, Generation::ConeFaces);
        let (all, _) = generated_ideal(&e, &[Vector::from_ints(&[1, -3])]).unwrap();
        assert_eq!(all, Pred::True);
    }

    #[test]
    fn lex1_quotient_and_section() {
        let e = lex1();
        let b = Budget::default();
        let e0: Pred = "x0 = 0".parse().unwrap();
        let q = quotient(&e, &e0, &b).unwrap();
        assert_eq!(q.algebra.enumerate().unwrap().algebra.len(), 2);
        assert!(q.check.holds());
        let (f, s) = is_retractive(&e, &e0, &b).unwrap();
        assert_eq!(f.verdict, Verdict::Proved);
        assert_eq!(s.unwrap().to_string(), "t ↦ (t,0)");
        assert_eq!(is_strict(&e, &e0, &b).unwrap().verdict, Verdict::Proved);
        assert!(is_lexicographic(&e, &e0, &b).unwrap().holds());
    }

    #[test]
    fn lex21_obstruction() {
        let e = lex("lex(product(1), product(1))", &[2, 1]);
        let (f, s) = is_retractive(&e, &"x0 = 0".parse().unwrap(), &Budget::default()).unwrap();
        assert_eq!(f.verdict, Verdict::Refuted(None));
        assert_eq!(f.detail, "2·c₁ = (2,1) unsolvable");
        assert!(s.is_none());
    }

    #[test]
    fn integer_solver() {
        assert_eq!(solve_integer(&[2], 1), None);
        let m = solve_integer(&[4, 6], 10).unwrap();
        assert_eq!(m[0] * 4 + m[1] * 6, 10);
        assert_eq!(solve_integer(&[1, 0], 0), Some(vec![0, 0]));
    }

    #[test]
    fn face_recognition() {
        assert_eq!(face(&"x0 = 0 & x2 = 0".parse().unwrap()), Some(vec![0, 2]));
        assert_eq!(face(&Pred::True), Some(vec![]));
        assert_eq!(face(&"x0 = 1".parse().unwrap()), None);
        assert_eq!(face(&"x0 >= 0".parse().unwrap()), None);
    }

    #[test]
    fn rational_square_candidates() {
        let q2 = ConePoGroup::new(Domain::Rational, ConeSpec::Product(2), None).unwrap();
        let sq = IntervalEffectAlgebra::gamma(&q2, &Vector::from_ints(&[1, 1])).unwrap();
        let b = Budget::default();
        let c = Candidates::new(&sq, &b);
        let nt = c.nontrivial();
        assert_eq!(nt.len(), 2);
        for p in nt {
            assert!(is_strict(&sq, p, &b).unwrap().verdict.is_refuted());
        }
        assert_eq!(largest_strict(&sq, &c, &b), LargestStrict::WeakZero);
    }
}
