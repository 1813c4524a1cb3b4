//! Embedding a finite RDP algebra into the product of its prime quotients.

use crate::effalg::{classify_finite, FiniteEffectAlgebra, Host};
use crate::ideals::finite::{self as fin, FiniteQuotient, IdealSet};
use crate::ideals::Ideal;
use crate::morphisms::{verify_hom, Homomorphism};
use crate::verdict::{Budget, Checks, Finding};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Factor {
    pub prime: IdealSet,
    pub quotient: FiniteQuotient,
    pub antilattice: Finding,
}

#[derive(Clone, Debug)]
pub struct Subdirect {
    pub host: FiniteEffectAlgebra,
    pub rdp: Finding,
    pub factors: Vec<Factor>,
    /// Class of each host element in every factor.
    pub embedding: Vec<Vec<usize>>,
    pub checks: Checks,
}

impl Subdirect {
    pub fn holds(&self) -> bool {
        self.rdp.holds() && self.checks.iter().all(|(_, f)| f.holds())
    }

    pub fn describe_factor(&self, k: usize) -> String {
        let f = &self.factors[k];
        format!(
            "E/{} with {} elements",
            Ideal::Finite(f.prime.clone()).describe_in(Some(&self.host)),
            f.quotient.algebra.len()
        )
    }

}

fn exhaustive(ok: Option<String>, pass: impl Into<String>) -> Finding {
    match ok {
        None => Finding::proved(pass),
        Some(why) => Finding::refuted(why),
    }
}

fn checks(e: &FiniteEffectAlgebra, factors: &[Factor], emb: &[Vec<usize>]) -> Checks {
    let mut out = Checks::new();
    let meet: IdealSet = factors
        .iter()
        .fold(e.elements().collect(), |acc, f| acc.intersection(&f.prime).copied().collect());
    out.push((
        "∩P = {0}".into(),
        exhaustive(
            (meet != IdealSet::from([e.zero_idx()])).then(|| {
                format!(
                    "intersection of {} primes is {}",
                    factors.len(),
                    Ideal::Finite(meet.clone()).describe_in(Some(e))
                )
            }),
            format!("intersection of {} primes", factors.len()),
        ),
    ));
    let mut hom = Finding::proved(format!("{} projections", factors.len()));
    for f in factors {
        let h = verify_hom(&Homomorphism::projection(e, &f.quotient), &Budget::default());
        if !h.holds() {
            hom = h;
            break;
        }
    }
    out.push(("projections are homomorphisms".into(), hom));
    let onto = factors
        .iter()
        .position(|f| (0..f.quotient.algebra.len()).any(|c| !f.quotient.class_of.contains(&c)));
    out.push((
        "projections surjective".into(),
        exhaustive(onto.map(|k| format!("factor {} is not covered", k)), "every class is hit"),
    ));
    let below = |a: usize, b: usize| {
        factors
            .iter()
            .zip(0..)
            .all(|(f, k)| f.quotient.algebra.le(emb[a][k], emb[b][k]))
    };
    let mut order = None;
    for a in e.elements() {
        for b in e.elements() {
            if below(a, b) != e.le(a, b) {
                order = Some(format!(
                    "{} ≤ {} is {} but the images say {}",
                    e.label(a),
                    e.label(b),
                    e.le(a, b),
                    below(a, b)
                ));
            }
        }
    }
    out.push((
        "order embedding".into(),
        exhaustive(order, format!("{} pairs", e.len() * e.len())),
    ));
    let anti = factors.iter().find(|f| !f.antilattice.holds());
    out.push((
        "factors antilattice".into(),
        exhaustive(
            anti.map(|f| f.antilattice.detail.clone()),
            format!("{} factors", factors.len()),
        ),
    ));
    let mut lattice = None;
    let mut count = 0;
    for a in e.elements() {
        for b in e.elements() {
            for (bound, name) in [(e.meet(a, b), "meet"), (e.join(a, b), "join")] {
                let Some(m) = bound else { continue };
                count += 1;
                for (k, f) in factors.iter().enumerate() {
                    let q = &f.quotient.algebra;
                    let image = if name == "meet" {
                        q.meet(emb[a][k], emb[b][k])
                    } else {
                        q.join(emb[a][k], emb[b][k])
                    };
                    if image != Some(emb[m][k]) && lattice.is_none() {
                        lattice = Some(format!(
                            "{} of {} and {} is not preserved in factor {}",
                            name,
                            e.label(a),
                            e.label(b),
                            k
                        ));
                    }
                }
            }
        }
    }
    out.push((
        "meets and joins preserved".into(),
        exhaustive(lattice, format!("{} existing bounds", count)),
    ));
    out
}

/// Factors `E/P` over all proper primes `P` and the map `x ↦ (x/P)_P`.
pub fn subdirect_decompose(host: &Host) -> Result<Subdirect> {
    let e = host
        .finite()
        .ok_or_else(|| Error::Unsupported("subdirect decomposition needs a finite carrier".into()))?;
    let rdp = e.check_rdp();
    if !rdp.holds() {
        return Ok(Subdirect {
            host: e,
            rdp,
            factors: Vec::new(),
            embedding: Vec::new(),
            checks: Checks::new(),
        });
    }
    let factors: Vec<Factor> = fin::prime_ideals(&e)
        .into_iter()
        .map(|p| {
            let quotient = fin::quotient(&e, &p)?;
            let antilattice = classify_finite(&quotient.algebra).antilattice;
            Ok(Factor {
                prime: p,
                quotient,
                antilattice,
            })
        })
        .collect::<Result<_>>()?;
    let embedding: Vec<Vec<usize>> = e
        .elements()
        .map(|x| factors.iter().map(|f| f.quotient.class_of[x]).collect())
        .collect();
    let checks = checks(&e, &factors, &embedding);
    Ok(Subdirect {
        host: e,
        rdp,
        factors,
        embedding,
        checks,
    })
}
