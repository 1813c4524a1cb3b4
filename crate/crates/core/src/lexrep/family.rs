//! Additive sections `t ↦ c_t`, the isomorphism onto `Γ(H ×lex G, (u,0))`,
//! and the induced maps on tails.

use std::fmt;

use num_traits::{One, Zero};

use super::view::AnyView;
use crate::effalg::{EffectAlgebra, FiniteEffectAlgebra, Host, IntervalEffectAlgebra};
use crate::ideals::symbolic::{self, LinearSection};
use crate::morphisms::{invert, verify_hom, Homomorphism};
use crate::pogroup::{ConePoGroup, Domain};
use crate::sampling;
use crate::states::lp::independent_rows;
use crate::states::HuDecomposition;
use crate::vector::{Rat, Vector};
use crate::verdict::{Budget, Checks, Finding, Verdict};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    /// `(t, c_t)` for every point of a finite `[0,u]_H`, as host indices.
    Table(Vec<(Vector, usize)>),
    Linear(LinearSection),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongFamily {
    pub target: IntervalEffectAlgebra,
    pub section: Section,
}

impl StrongFamily {
    pub fn at_index(&self, t: &Vector) -> Option<usize> {
        match &self.section {
            Section::Table(v) => v.iter().find(|(s, _)| s == t).map(|(_, c)| *c),
            Section::Linear(_) => None,
        }
    }

    pub fn at_point(&self, t: &Vector) -> Option<Vector> {
        match &self.section {
            Section::Linear(s) => Some(s.apply(t)),
            Section::Table(_) => None,
        }
    }

    pub fn describe(&self, labels: Option<&[String]>) -> String {
        match &self.section {
            Section::Linear(s) => s.to_string(),
            Section::Table(v) => v
                .iter()
                .map(|(t, c)| {
                    let name = labels.and_then(|l| l.get(*c)).cloned().unwrap_or_else(|| c.to_string());
                    format!("c{} = {}", t, name)
                })
                .collect::<Vec<_>>()
                .join(", "),
        }
    }
}

impl fmt::Display for StrongFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(None))
    }
}

#[derive(Clone, Debug)]
pub struct FamilySearch {
    pub family: Option<StrongFamily>,
    pub finding: Finding,
}

/// Generators `e_i` of a finite product interval `[0,u]`.
fn atoms(u: &Vector) -> Vec<usize> {
    (0..u.rank()).filter(|&i| !u[i].is_zero()).collect()
}

struct TableSearch<'a> {
    f: &'a FiniteEffectAlgebra,
    fiber: &'a [Vector],
    points: &'a [Vector],
    u: &'a Vector,
    atoms: Vec<usize>,
}

impl TableSearch<'_> {
    /// `c_t = Σ t_i·a_i` over the first `depth` atoms, or `None` when a sum
    /// is undefined or leaves its fibre.
    fn values(&self, chosen: &[usize]) -> Option<Vec<Option<usize>>> {
        let supported = |t: &Vector| {
            (0..t.rank()).all(|i| t[i].is_zero() || self.atoms[..chosen.len()].contains(&i))
        };
        let mut out = vec![None; self.points.len()];
        for (j, t) in self.points.iter().enumerate() {
            if !supported(t) {
                continue;
            }
            let mut c = self.f.zero_idx();
            for (a, &i) in chosen.iter().zip(&self.atoms) {
                for _ in 0..t[i].to_integer() {
                    c = self.f.add(c, *a)?;
                }
            }
            if &self.fiber[c] != t {
                return None;
            }
            out[j] = Some(c);
        }
        Some(out)
    }

    fn search(&self, chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
        let vals = self.values(chosen)?;
        if chosen.len() == self.atoms.len() {
            let c: Vec<usize> = vals.into_iter().collect::<Option<_>>()?;
            let ui = self.points.binary_search(self.u).ok()?;
            if c[ui] != self.f.one_idx() {
                return None;
            }
            for (a, s) in self.points.iter().enumerate() {
                for (b, t) in self.points.iter().enumerate() {
                    if let Ok(k) = self.points.binary_search(&(s + t)) {
                        if self.f.add(c[a], c[b]) != Some(c[k]) {
                            return None;
                        }
                    }
                }
            }
            return Some(c);
        }
        let i = self.atoms[chosen.len()];
        let e_i = Vector::unit_vector(self.u.rank(), i);
        for a in self.f.elements().filter(|&a| self.fiber[a] == e_i) {
            chosen.push(a);
            if let Some(c) = self.search(chosen) {
                return Some(c);
            }
            chosen.pop();
        }
        None
    }
}

fn family_table(f: &FiniteEffectAlgebra, fiber: &[Vector], d: &HuDecomposition) -> Result<FamilySearch> {
    let points = d.target.enumerate()?.points;
    let s = TableSearch {
        f,
        fiber,
        points: &points,
        u: d.target.unit(),
        atoms: atoms(d.target.unit()),
    };
    Ok(match s.search(&mut Vec::new()) {
        Some(c) => FamilySearch {
            family: Some(StrongFamily {
                target: d.target.clone(),
                section: Section::Table(points.iter().cloned().zip(c).collect()),
            }),
            finding: Finding::proved("additive section found over the atoms of [0,u]"),
        },
        None => FamilySearch {
            family: None,
            finding: Finding::refuted(format!(
                "no choice of c on the {} atoms extends additively with c_u = 1",
                s.atoms.len()
            )),
        },
    })
}

/// Coordinates cut out by the zero fibre, when the fibre index is the
/// projection onto them.
fn projection_coords(e: &IntervalEffectAlgebra, d: &HuDecomposition, budget: &Budget) -> Result<Vec<usize>> {
    let zero = d.target.zero();
    let pred = d
        .fiber_pred(&zero)
        .ok_or_else(|| Error::Decomposition("zero fibre has no predicate".into()))?;
    let keep = symbolic::face(pred)
        .ok_or_else(|| Error::Unsupported(format!("zero fibre {} is not a coordinate face", pred)))?;
    if keep.len() != d.target.rank() {
        return Err(Error::Unsupported("fibre index is not a coordinate projection".into()));
    }
    if let Some(x) = e
        .sample_points(budget)
        .into_iter()
        .find(|x| d.fiber_of(x) != Some(&x.select(&keep)))
    {
        return Err(Error::Unsupported(format!(
            "fibre of {} is not its projection onto {:?}",
            x, keep
        )));
    }
    Ok(keep)
}

fn family_linear(e: &IntervalEffectAlgebra, d: &HuDecomposition, budget: &Budget) -> Result<FamilySearch> {
    projection_coords(e, d, budget)?;
    let pred = d.fiber_pred(&d.target.zero()).unwrap();
    let (found, section) = symbolic::is_retractive(e, pred, budget)?;
    let Some(s) = section else {
        return Ok(FamilySearch {
            family: None,
            finding: found,
        });
    };
    let family = StrongFamily {
        target: d.target.clone(),
        section: Section::Linear(s),
    };
    let f = verify_family(e, d, &family)?;
    Ok(FamilySearch {
        family: f.holds().then_some(family),
        finding: Finding::new(f.verdict.and(found.verdict), format!("{}; {}", f.detail, found.detail)),
    })
}

/// `c_t ∈ E_t`, `c_u = 1` and `c_v + c_t = c_(v+t)` on all of `[0,u]_H`.
fn verify_family(e: &IntervalEffectAlgebra, d: &HuDecomposition, fam: &StrongFamily) -> Result<Finding> {
    let points = d.target.enumerate()?.points;
    let c = |t: &Vector| fam.at_point(t).unwrap();
    for t in &points {
        if d.fiber_of(&c(t)) != Some(t) {
            return Ok(Finding::refuted(format!("c{} = {} is not in E{}", t, c(t), t)));
        }
    }
    if &c(d.target.unit()) != e.unit() {
        return Ok(Finding::refuted("c_u ≠ 1"));
    }
    for s in &points {
        for t in &points {
            let w = s + t;
            if d.target.member(&w) && e.sum(&c(s), &c(t)) != Some(c(&w)) {
                return Ok(Finding::refuted(format!("c{} + c{} ≠ c{}", s, t, w)));
            }
        }
    }
    Ok(Finding::proved(format!("family checked on all {} indices", points.len())))
}

/// Additive section through the fibres: by search over atom images on
/// tables, by the linear section of the zero fibre on intervals.
pub fn find_strong_family(host: &Host, d: &HuDecomposition, budget: &Budget) -> Result<FamilySearch> {
    match AnyView::new(host, d, budget)? {
        AnyView::Table(v) => family_table(&v.alg, &v.fiber, d),
        AnyView::Grid(v) => family_linear(&v.alg, d, budget),
    }
}

/// `E ≅ Γ(H ×lex G, (u,0))` through `x ↦ (t, x − c_t)` for `x ∈ E_t`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub head: ConePoGroup,
    pub tail: ConePoGroup,
    pub target: IntervalEffectAlgebra,
    pub forward: Homomorphism,
    pub backward: Homomorphism,
    pub section: String,
    pub checks: Checks,
}

impl Representation {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, f)| f.holds())
    }
}

fn identity_rows(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

fn represent_linear(
    e: &IntervalEffectAlgebra,
    fam: &StrongFamily,
    d: &HuDecomposition,
    budget: &Budget,
) -> Result<Representation> {
    let Section::Linear(s) = &fam.section else {
        return Err(Error::Decomposition("table family on a symbolic host".into()));
    };
    let keep = projection_coords(e, d, budget)?;
    let k = keep.len();
    if keep != (0..k).collect::<Vec<_>>() || s.keep != keep {
        return Err(Error::Unsupported("zero fibre must cut out the leading coordinates".into()));
    }
    let fam_ok = verify_family(e, d, fam)?;
    if !fam_ok.holds() {
        return Err(Error::Decomposition(fam_ok.detail));
    }
    let (_, tail) = e
        .group()
        .split_lex(k)
        .ok_or_else(|| Error::Unsupported(format!("{} has no lexicographic split after {}", e.cone(), k)))?;
    let head = d.target.group().clone();
    let target = IntervalEffectAlgebra::gamma(
        &ConePoGroup::lex_product(&head, &tail)?,
        &d.target.unit().concat(&Vector::zero(tail.rank())),
    )?
    .with_split(k)?;
    let n = e.rank();
    // φ(x) = (x_head, x_tail − S·x_head), ψ(t, g) = (t, S·t + g)
    let mut fwd = identity_rows(n);
    let mut bwd = identity_rows(n);
    for (j, row) in s.matrix.iter().enumerate() {
        for (m, c) in row.iter().enumerate() {
            fwd[s.fill[j]][m] = -*c;
            bwd[s.fill[j]][m] = *c;
        }
    }
    let forward = Homomorphism::affine(e, &target, fwd, Vector::zero(n))?;
    let backward = Homomorphism::affine(&target, e, bwd, Vector::zero(n))?;

    let mut rng = sampling::rng(budget.seed);
    let host_pts = sampling::subset(&e.sample_points(budget), budget.samples, &mut rng);
    let target_pts = sampling::subset(&target.sample_points(budget), budget.samples, &mut rng);
    let witnessed = |what: String| Finding::new(Verdict::Witnessed(*budget), what);

    let landing = match host_pts.iter().find(|x| {
        let y = forward.apply(x);
        !target.member(&y) || Some(&y.slice(0, k)) != d.fiber_of(x)
    }) {
        Some(x) => Finding::refuted(format!("{} ↦ {} leaves its fibre's slice", x, forward.apply(x))),
        None => witnessed(format!("{} host samples land in {{t}}×G", host_pts.len())),
    };
    let left = match host_pts.iter().find(|x| &backward.apply(&forward.apply(x)) != *x) {
        Some(x) => Finding::refuted(format!("ψφ{} ≠ {}", x, x)),
        None => witnessed(format!("identity on {} host samples", host_pts.len())),
    };
    let right = match target_pts.iter().find(|y| &forward.apply(&backward.apply(y)) != *y) {
        Some(y) => Finding::refuted(format!("φψ{} ≠ {}", y, y)),
        None => witnessed(format!("identity on {} target samples", target_pts.len())),
    };
    let checks = vec![
        ("host RDP".into(), e.check_rdp(budget)),
        ("tail RDP".into(), tail.check_rdp_cone(budget)),
        ("tail directed".into(), tail.is_directed(budget)),
        ("family".into(), fam_ok),
        ("φ homomorphism".into(), verify_hom(&forward, budget)),
        ("ψ homomorphism".into(), verify_hom(&backward, budget)),
        ("φ(E_t) ⊆ {t}×G".into(), landing),
        ("ψ∘φ = id".into(), left),
        ("φ∘ψ = id".into(), right),
    ];
    Ok(Representation {
        head,
        tail,
        target,
        forward,
        backward,
        section: s.to_string(),
        checks,
    })
}

fn represent_table(
    f: &FiniteEffectAlgebra,
    fiber: &[Vector],
    fam: &StrongFamily,
    d: &HuDecomposition,
) -> Result<Representation> {
    let head_en = d.target.enumerate()?;
    let c = |t: &Vector| fam.at_index(t);
    for t in &head_en.points {
        match c(t) {
            Some(x) if &fiber[x] == t => {}
            _ => return Err(Error::Decomposition(format!("c{} is missing or not in E{}", t, t))),
        }
    }
    let zero = d.target.zero();
    let e0: Vec<usize> = f.elements().filter(|&i| fiber[i] == zero).collect();
    let closed = e0
        .iter()
        .all(|&a| e0.iter().all(|&b| f.add(a, b).is_some_and(|s| fiber[s] == zero)));
    let monoid = Finding::new(
        Verdict::from_bool(closed && e0 == [f.zero_idx()]),
        if closed {
            format!("E0 = {{0}}, the cone of the trivial group O ({} members)", e0.len())
        } else {
            "E0 is not closed under +".to_string()
        },
    );
    let tail = ConePoGroup::product(Domain::Integer, 0, None)?;
    let head = d.target.group().clone();
    let target = IntervalEffectAlgebra::gamma(&ConePoGroup::lex_product(&head, &tail)?, d.target.unit())?;
    let map: Vec<usize> = f
        .elements()
        .map(|x| head_en.index_of(&fiber[x]).expect("fibre index in [0,u]"))
        .collect();
    let split = f.elements().all(|x| c(&fiber[x]) == Some(x));
    let forward = Homomorphism::table(f, &head_en.algebra, map.clone())?;
    let bij = forward.is_injective() == Some(true) && forward.is_surjective() == Some(true);
    let bijection = Finding::new(
        Verdict::from_bool(bij && split),
        if bij {
            format!("{} elements, each x = c_t for its fibre t", f.len())
        } else {
            "x ↦ t is not a bijection".to_string()
        },
    );
    let hom = verify_hom(&forward, &Budget::default());
    let (backward, back_hom) = if bij {
        let b = Homomorphism::table(&head_en.algebra, f, invert(&map))?;
        let h = verify_hom(&b, &Budget::default());
        (b, h)
    } else {
        (forward.clone(), Finding::refuted("no inverse"))
    };
    let checks = vec![
        ("host RDP".into(), f.check_rdp()),
        ("E0 cancellative monoid".into(), monoid),
        ("φ bijective".into(), bijection),
        ("φ homomorphism".into(), hom),
        ("ψ homomorphism".into(), back_hom),
    ];
    Ok(Representation {
        head,
        tail,
        target,
        forward,
        backward,
        section: fam.describe(Some(f.labels())),
        checks,
    })
}

/// Representation of a strong decomposition; errors when the family does
/// not run through the fibres.
pub fn represent(host: &Host, fam: &StrongFamily, d: &HuDecomposition, budget: &Budget) -> Result<Representation> {
    if fam.target != d.target {
        return Err(Error::Decomposition("family and decomposition index different intervals".into()));
    }
    match AnyView::new(host, d, budget)? {
        AnyView::Table(v) => represent_table(&v.alg, &v.fiber, fam, d),
        AnyView::Grid(v) => represent_linear(&v.alg, fam, d, budget),
    }
}

/// `(t, g) ↦ (t, h(g))` on `Γ(H ×lex G, (u,0))`.
#[derive(Clone, Debug)]
pub struct FunctorMap {
    pub map: Homomorphism,
    pub homomorphism: Finding,
    pub injective: Finding,
    pub surjective: Finding,
}

fn tail_points(g: &ConePoGroup, budget: &Budget) -> Vec<Vector> {
    let den = g.domain().den();
    sampling::window_box(&Vector::zero(g.rank()), budget.window, den)
        .into_iter()
        .filter(|p| g.cone().contains(p.coords()))
        .collect()
}

/// Lifts a cone-preserving tail map `h` (one row per target coordinate)
/// to the lexicographic interval `e` with declared split.
pub fn functor_map(
    e: &IntervalEffectAlgebra,
    h: &[Vec<Rat>],
    target_tail: &ConePoGroup,
    budget: &Budget,
) -> Result<FunctorMap> {
    let (head, tail) = e
        .head_tail()
        .ok_or_else(|| Error::Unsupported("functor action needs a declared lexicographic split".into()))?;
    let (k, m, m1) = (head.rank(), tail.rank(), target_tail.rank());
    if h.len() != m1 || h.iter().any(|r| r.len() != m) {
        return Err(Error::Shape(format!("tail map must be {}×{}", m1, m)));
    }
    let apply_h = |g: &Vector| {
        Vector::new(
            h.iter()
                .map(|row| row.iter().zip(g.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    };
    for g in tail_points(&tail, budget) {
        let img = apply_h(&g);
        if !target_tail.cone().contains(img.coords()) {
            return Err(Error::NotPositive(format!("{} ≥ 0 maps to {}", g, img)));
        }
    }
    let head_group = head.group().clone();
    let target = IntervalEffectAlgebra::gamma(
        &ConePoGroup::lex_product(&head_group, target_tail)?,
        &head.unit().concat(&Vector::zero(m1)),
    )?
    .with_split(k)?;
    let mut matrix = vec![vec![Rat::zero(); k + m]; k + m1];
    for (i, row) in matrix.iter_mut().enumerate().take(k) {
        row[i] = Rat::one();
    }
    for (r, hr) in h.iter().enumerate() {
        matrix[k + r][k..].copy_from_slice(hr);
    }
    let map = Homomorphism::affine(e, &target, matrix, Vector::zero(k + m1))?;
    let homomorphism = verify_hom(&map, budget);

    let columns: Vec<Vec<Rat>> = (0..m).map(|j| h.iter().map(|r| r[j]).collect()).collect();
    let rank = independent_rows(&columns).len();
    let injective = Finding::new(
        Verdict::from_bool(rank == m),
        format!("tail map has rank {} on {} coordinates", rank, m),
    );

    let sources = e.sample_points(budget);
    let image: std::collections::BTreeSet<Vector> = sources.iter().map(|x| map.apply(x)).collect();
    let goals = sampling::subset(&target.sample_points(budget), budget.samples, &mut sampling::rng(budget.seed));
    let surjective = match goals.iter().find(|y| !image.contains(*y)) {
        Some(y) => Finding::new(
            Verdict::Refuted(Some(*budget)),
            format!("no preimage of {} among {} grid points", y, sources.len()),
        ),
        None => Finding::new(
            Verdict::Witnessed(*budget),
            format!("{} sampled targets have grid preimages", goals.len()),
        ),
    };
    Ok(FunctorMap {
        map,
        homomorphism,
        injective,
        surjective,
    })
}
