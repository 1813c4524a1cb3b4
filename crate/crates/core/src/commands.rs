//! The command suite as trait objects looked up by name in a [`Registry`].

use crate::effalg::{classify_finite, classify_interval, Host, IntervalEffectAlgebra, OrderClass};
use crate::format::{self, Document};
use crate::ideals::{self, finite as fin, symbolic as sym, Ideal};
use crate::lexrep;
use crate::pogroup::{parse_group, ConePoGroup};
use crate::report::{Report, Section};
use crate::states::{self, Fibers, HuDecomposition, HuState};
use crate::vector::fmt_rat;
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, FiniteEffectAlgebra, Result};

/// Everything a command may read.
pub struct Context {
    pub name: String,
    pub doc: Document,
    pub host: Host,
    pub budget: Budget,
    /// `--head`: a unital po-group `(H,u)`.
    pub head: Option<ConePoGroup>,
}

impl Context {
    pub fn new(doc: Document, budget: Budget) -> Result<Self> {
        let host = doc.host()?;
        Ok(Context {
            name: doc.name.clone(),
            doc,
            host,
            budget,
            head: None,
        })
    }

    pub fn from_text(text: &str, budget: Budget) -> Result<Self> {
        Self::new(format::parse(text)?, budget)
    }

    pub fn with_head(mut self, target: Option<&str>) -> Result<Self> {
        self.head = target.map(parse_group).transpose()?;
        Ok(self)
    }

    fn report(&self, command: &str) -> Report {
        Report::new(command, &self.name, self.budget)
    }
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, ctx: &Context) -> Result<Report>;
}

pub struct Registry {
    commands: Vec<Box<dyn Command>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry { commands: Vec::new() };
        r.register(Box::new(Check));
        r.register(Box::new(Rdp));
        r.register(Box::new(Ideals));
        r.register(Box::new(States));
        r.register(Box::new(Decompose));
        r.register(Box::new(Represent));
        r.register(Box::new(Subdirect));
        r.register(Box::new(Classify));
        r
    }
}

impl Registry {
    pub fn register(&mut self, c: Box<dyn Command>) {
        self.commands.retain(|old| old.name() != c.name());
        self.commands.push(c);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Command> {
        self.commands.iter().map(|c| c.as_ref())
    }

    pub fn run(&self, name: &str, ctx: &Context) -> Result<Report> {
        self.get(name)
            .ok_or_else(|| Error::Unsupported(format!("no command '{}'", name)))?
            .run(ctx)
    }
}

fn order_facts(sec: &mut Section, oc: &OrderClass) {
    sec.fact("linear", oc.linear.clone())
        .fact("lattice", oc.lattice.clone())
        .fact("antilattice", oc.antilattice.clone())
        .fact("MV-effect algebra", oc.mv.clone());
}

fn label_set(e: &FiniteEffectAlgebra, s: &fin::IdealSet) -> String {
    Ideal::Finite(s.clone()).describe_in(Some(e))
}

fn unknown_on_err(r: Result<Finding>, budget: &Budget) -> Finding {
    r.unwrap_or_else(|e| Finding::new(Verdict::Unknown(*budget), e.to_string()))
}

struct Check;

impl Command for Check {
    fn name(&self) -> &'static str {
        "check"
    }

    fn about(&self) -> &'static str {
        "validate the structure and report the refinement property"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        let b = &ctx.budget;
        let sec = r.section("structure");
        let round = format::parse(&ctx.doc.emit()).map(|d| d == ctx.doc);
        sec.check(
            "canonical form round trip",
            Finding::new(Verdict::from_bool(matches!(round, Ok(true))), "parse(emit(doc))"),
        );
        match &ctx.host {
            Host::Finite(f) => {
                sec.note("kind", "table").note("elements", f.len());
                sec.check("effect algebra axioms", f.axiom_finding());
            }
            Host::Interval(e) => {
                sec.note("kind", "interval")
                    .note("group", e.group().name())
                    .note("unit", e.unit());
                sec.check("cone axioms", e.group().verify_cone_axioms(b));
                sec.check("strong unit", e.group().strong_unit(b));
                if let Some(f) = ctx.host.finite() {
                    sec.note("elements", f.len());
                    sec.check("effect algebra axioms", f.axiom_finding());
                }
            }
        }
        sec.fact("RDP", ctx.host.check_rdp(b));
        Ok(r)
    }
}

struct Rdp;

impl Command for Rdp {
    fn name(&self) -> &'static str {
        "rdp"
    }

    fn about(&self) -> &'static str {
        "decide the Riesz decomposition property"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        let sec = r.section("refinement");
        if let Some(f) = ctx.host.finite() {
            sec.note("elements", f.len());
        }
        sec.check("RDP", ctx.host.check_rdp(&ctx.budget));
        Ok(r)
    }
}

struct Ideals;

impl Ideals {
    fn finite(r: &mut Report, e: &FiniteEffectAlgebra) -> Result<()> {
        let all = fin::all_ideals(e);
        let rad = fin::radical(e);
        let infin = e.infinitesimals();
        let rdp = e.check_rdp();
        let sec = r.section("ideal lattice");
        sec.note("ideals", all.len())
            .note("maximal", fin::maximal_ideals(e).iter().map(|m| label_set(e, m)).collect::<Vec<_>>().join(" "))
            .note("prime", fin::prime_ideals(e).iter().map(|m| label_set(e, m)).collect::<Vec<_>>().join(" "))
            .note("Rad", label_set(e, &rad))
            .note("Infin", label_set(e, &infin));
        sec.fact("local", Finding::new(Verdict::from_bool(fin::is_local(e)), "unique maximal ideal"))
            .fact("simple", Finding::new(Verdict::from_bool(fin::is_simple(e)), "only {0} and E"))
            .fact("Archimedean", e.is_archimedean());
        let inside = infin.is_subset(&rad);
        let inclusion = Finding::new(
            Verdict::from_bool(inside),
            format!("{} ⊆ {}", label_set(e, &infin), label_set(e, &rad)),
        );
        if rdp.holds() {
            sec.check("Infin ⊆ Rad", inclusion);
        } else {
            sec.fact("RDP", rdp);
            sec.fact("Infin ⊆ Rad", inclusion);
        }
        match ideals::largest_strict_finite(e) {
            ideals::LargestStrict::Nontrivial(i) => sec.note("largest strict", i.describe_in(Some(e))),
            ideals::LargestStrict::WeakZero => sec.note("largest strict", "{0} (weakly)"),
        };
        for i in all.iter().filter(|i| fin::is_nontrivial(e, i)) {
            let sec = r.section(format!("ideal {}", label_set(e, i)));
            sec.fact("Riesz", fin::is_riesz(e, i));
            sec.fact("prime", Finding::new(Verdict::from_bool(fin::is_prime(e, i)), "exhaustive"));
            sec.fact("strict", fin::is_strict(e, i)?);
            sec.fact("retractive", fin::is_retractive(e, i)?.0);
            sec.fact("lexicographic", fin::is_lexicographic(e, i)?);
        }
        Ok(())
    }

    fn symbolic(r: &mut Report, e: &IntervalEffectAlgebra, b: &Budget) {
        let cands = sym::Candidates::new(e, b);
        let rad = cands.radical();
        let sec = r.section("ideal candidates");
        sec.note("candidates", cands.ideals.len())
            .note("maximal", cands.maximal().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; "))
            .note("Rad", &rad);
        sec.fact("local", cands.is_local(b))
            .fact("simple", sym::is_simple(e, &cands, b))
            .fact("Archimedean", e.is_archimedean(b));
        let rdp = e.check_rdp(b);
        let inclusion = match e.infinitesimal_pred() {
            Some(p) => {
                sec.note("Infin", &p);
                Finding::new(
                    Verdict::sampled(cands.included(e, &p, &rad), *b),
                    format!("{{{}}} ⊆ {{{}}} on the grid", p, rad),
                )
            }
            None => {
                let bad = cands
                    .grid()
                    .iter()
                    .find(|x| e.is_infinitesimal(x, 64) && !sym::contains(e, &rad, x));
                Finding::new(
                    Verdict::sampled(bad.is_none(), *b),
                    bad.map_or("64-fold multiples inside Rad on the grid".into(), |x| {
                        format!("{} is infinitesimal but outside Rad", x)
                    }),
                )
            }
        };
        if rdp.holds() {
            sec.check("Infin ⊆ Rad", inclusion);
        } else {
            sec.fact("RDP", rdp);
            sec.fact("Infin ⊆ Rad", inclusion);
        }
        match sym::largest_strict(e, &cands, b) {
            ideals::LargestStrict::Nontrivial(i) => sec.note("largest strict", i.describe_in(None)),
            ideals::LargestStrict::WeakZero => sec.note("largest strict", "{0} (weakly)"),
        };
        for p in cands.nontrivial() {
            let sec = r.section(format!("ideal {{x ∈ E : {}}}", p));
            sec.fact("ideal", sym::is_ideal(e, p, b));
            sec.fact("Riesz", sym::is_riesz(e, p, b));
            sec.fact("prime", unknown_on_err(sym::is_prime(e, p, b), b));
            sec.fact("strict", unknown_on_err(sym::is_strict(e, p, b), b));
            sec.fact("retractive", unknown_on_err(sym::is_retractive(e, p, b).map(|x| x.0), b));
            sec.fact("lexicographic", unknown_on_err(sym::is_lexicographic(e, p, b), b));
        }
    }
}

impl Command for Ideals {
    fn name(&self) -> &'static str {
        "ideals"
    }

    fn about(&self) -> &'static str {
        "enumerate ideals, maximal and prime ideals, Rad and infinitesimals"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        match (ctx.host.finite(), &ctx.host) {
            (Some(f), _) => Self::finite(&mut r, &f)?,
            (None, Host::Interval(e)) => Self::symbolic(&mut r, e, &ctx.budget),
            (None, Host::Finite(_)) => unreachable!(),
        }
        Ok(r)
    }
}

struct States;

impl Command for States {
    fn name(&self) -> &'static str {
        "states"
    }

    fn about(&self) -> &'static str {
        "state existence, per-element extremes and uniqueness"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        let b = &ctx.budget;
        let sec = r.section("states");
        if let Some(f) = ctx.host.finite() {
            let Some(space) = states::state_space(&f) else {
                sec.check("state exists", Finding::refuted("no state"));
                return Ok(r);
            };
            sec.check("state exists", Finding::proved(format!("{} optimal vertices", space.vertices.len())));
            for (i, (lo, hi)) in space.extremes.iter().enumerate() {
                sec.note(format!("s({})", f.label(i)), format!("[{}, {}]", fmt_rat(lo), fmt_rat(hi)));
            }
            sec.fact("unique state", states::unique_state(&ctx.host, b)?.finding);
            return Ok(r);
        }
        let Host::Interval(e) = &ctx.host else { unreachable!() };
        let u = states::unique_state(&ctx.host, b)?;
        for (x, lo, hi) in &u.extremes {
            sec.note(format!("head s({})", x), format!("[{}, {}]", lo, hi));
        }
        sec.fact("unique state", u.finding.clone());
        match &u.state {
            Some(s) => {
                sec.note("state", s.describe(None));
                sec.check("state conditions", states::check_interval_state(e, s, b));
                let (back, kernel) = states::state_restrict(e, s, b)?;
                sec.check("s(0,g) = 0", kernel);
                let again = states::state_transfer(e, &back)?;
                sec.check(
                    "transfer round trip",
                    Finding::new(Verdict::from_bool(&again == s), "restrict then transfer"),
                );
            }
            None => {
                sec.check(
                    "state exists",
                    Finding::new(Verdict::Unknown(*b), "head state is not unique; no single state reported"),
                );
            }
        }
        Ok(r)
    }
}

/// The state a decomposition comes from, and how it was obtained.
fn resolve_state(ctx: &Context) -> Result<(Option<HuState>, String)> {
    let canonical = |e: &IntervalEffectAlgebra| HuState::canonical(e).map(|s| (Some(s), "head projection".to_string()));
    let Some(g) = &ctx.head else {
        return match &ctx.host {
            Host::Interval(e) if e.split().is_some() => canonical(e),
            _ => Err(Error::Unsupported(
                "this algebra declares no lexicographic split; pass --head".into(),
            )),
        };
    };
    let u = g
        .unit()
        .ok_or_else(|| Error::Unsupported("--head needs a unit, e.g. integer:product(1)@2".into()))?;
    let target = IntervalEffectAlgebra::gamma(g, u)?;
    if let Host::Interval(e) = &ctx.host {
        if let Some((head, _)) = e.head_tail() {
            if head.cone() == target.cone() && head.unit() == target.unit() && head.group().domain() == g.domain() {
                return canonical(e);
            }
        }
    }
    let f = ctx.host.finite().ok_or_else(|| {
        Error::Unsupported("a search for (H,u)-states needs a finite carrier or the declared head".into())
    })?;
    Ok((states::find_valued_hu_state(&f, &target)?, "search over the table".into()))
}

fn fiber_notes(sec: &mut Section, host: &Host, d: &HuDecomposition) {
    match &d.fibers {
        Fibers::Table(list) => {
            let f = host.finite().expect("table fibres come from a finite carrier");
            for (t, s) in list {
                sec.note(format!("E_{}", t), label_set(&f, s));
            }
        }
        Fibers::Symbolic(list) => {
            for (t, p) in list {
                sec.note(format!("E_{}", t), format!("{{x ∈ E : {}}}", p));
            }
        }
    }
}

struct Decompose;

impl Command for Decompose {
    fn name(&self) -> &'static str {
        "decompose"
    }

    fn about(&self) -> &'static str {
        "fibre decomposition of a valued (H,u)-state; --head chooses (H,u)"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        let b = &ctx.budget;
        let (state, how) = resolve_state(ctx)?;
        let sec = r.section("state");
        sec.note("found by", how);
        let Some(s) = state else {
            sec.check("valued (H,u)-state", Finding::refuted("no additive map onto [0,u] exists"));
            return Ok(r);
        };
        sec.note("target", format!("Γ({}, {})", s.target.group().name(), s.target.unit()));
        sec.check("state conditions", s.check(&ctx.host, b)?);
        sec.check("valued", s.valued(&ctx.host, b)?);
        let ext = states::validate_hu_state_extension(&ctx.host, &s, b)?;
        sec.check("s(0) = 0", ext.zero)
            .check("monotone", ext.monotone)
            .check("s(x⁻) = u − s(x)", ext.complement);
        let d = states::hu_state_to_decomposition(&ctx.host, &s, b)?;
        let sec = r.section("decomposition");
        fiber_notes(sec, &ctx.host, &d);
        sec.check("fibre conditions", d.validate(&ctx.host, b)?);
        let back = states::decomposition_to_hu_state(&ctx.host, &d, b)?;
        sec.check(
            "state round trip",
            Finding::new(Verdict::from_bool(back == s), "fibres back to the same state"),
        );
        let ord = lexrep::is_ordered_decomposition(&ctx.host, &d, b)?;
        sec.fact("ordered", ord.ordered)
            .fact("sum criterion", ord.sum_criterion)
            .check(
                "orderedness criteria agree",
                Finding::new(Verdict::from_bool(ord.agree), "fibre order against sum existence"),
            )
            .fact("directed", lexrep::is_directed_decomposition(&ctx.host, &d, b)?);
        Ok(r)
    }
}

struct Represent;

impl Command for Represent {
    fn name(&self) -> &'static str {
        "represent"
    }

    fn about(&self) -> &'static str {
        "recover (H,u), G and the section c_t, and verify E ≅ Γ(H ×lex G, (u,0))"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        let b = &ctx.budget;
        let (state, how) = resolve_state(ctx)?;
        let sec = r.section("family");
        sec.note("state found by", how);
        let Some(s) = state else {
            sec.check("valued (H,u)-state", Finding::refuted("no additive map onto [0,u] exists"));
            return Ok(r);
        };
        let d = states::hu_state_to_decomposition(&ctx.host, &s, b)?;
        let search = lexrep::find_strong_family(&ctx.host, &d, b)?;
        sec.check("strong family", search.finding);
        let Some(fam) = search.family else {
            return Ok(r);
        };
        let labels = ctx.host.finite().map(|f| f.labels().to_vec());
        sec.note("section", fam.describe(labels.as_deref()));
        let rep = lexrep::represent(&ctx.host, &fam, &d, b)?;
        let sec = r.section("representation");
        sec.note("head", format!("({},{})", rep.head.name(), s.target.unit()))
            .note("tail", rep.tail.name())
            .note("section", &rep.section)
            .note("target", format!("Γ({}, {})", rep.target.group().name(), rep.target.unit()));
        sec.checks(&rep.checks);
        Ok(r)
    }
}

struct Subdirect;

impl Command for Subdirect {
    fn name(&self) -> &'static str {
        "subdirect"
    }

    fn about(&self) -> &'static str {
        "embed a finite RDP algebra into the product of its prime quotients"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        let sd = lexrep::subdirect_decompose(&ctx.host)?;
        let sec = r.section("subdirect product");
        sec.check("RDP", sd.rdp.clone());
        sec.note("factors", sd.factors.len());
        for k in 0..sd.factors.len() {
            sec.note(format!("factor {}", k), sd.describe_factor(k));
        }
        sec.checks(&sd.checks);
        Ok(r)
    }
}

struct Classify;

impl Command for Classify {
    fn name(&self) -> &'static str {
        "classify"
    }

    fn about(&self) -> &'static str {
        "order shape, simplicity and the three local-retractive characterizations"
    }

    fn run(&self, ctx: &Context) -> Result<Report> {
        let mut r = ctx.report(self.name());
        let b = &ctx.budget;
        let sec = r.section("order");
        match (ctx.host.finite(), &ctx.host) {
            (Some(f), _) => {
                order_facts(sec, &classify_finite(&f));
                sec.fact("simple", Finding::new(Verdict::from_bool(fin::is_simple(&f)), "exhaustive"));
                sec.fact("Archimedean", f.is_archimedean());
            }
            (None, Host::Interval(e)) => {
                order_facts(sec, &classify_interval(e, b));
                let cands = sym::Candidates::new(e, b);
                sec.fact("simple", sym::is_simple(e, &cands, b));
                sec.fact("Archimedean", e.is_archimedean(b));
            }
            (None, Host::Finite(_)) => unreachable!(),
        }
        sec.fact("RDP", ctx.host.check_rdp(b));
        let c = lexrep::classify_local_retractive(&ctx.host, b)?;
        let sec = r.section("characterizations");
        sec.note("Rad", &c.radical);
        if let Some(h) = &c.head {
            sec.note("head", h);
        }
        if let Some(t) = &c.tail {
            sec.note("tail", t);
        }
        for ((name, f), k) in lexrep::Classification::branch_names().iter().zip(&c.branches).zip(1..) {
            sec.fact(format!("({}) {}", roman(k), name), f.clone());
        }
        let decided = c.branches.iter().filter(|f| !f.verdict.is_unknown()).count();
        sec.check(
            "branches consistent",
            Finding::new(
                Verdict::from_bool(c.consistent),
                format!("{} of 3 branches decided", decided),
            ),
        );
        let sec = r.section("supporting checks");
        for (n, f) in &c.checks {
            sec.fact(n.clone(), f.clone());
        }
        Ok(r)
    }
}

fn roman(k: usize) -> &'static str {
    ["", "i", "ii", "iii"][k]
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = "algebra C2\n kind table\n elements 0 a 1\n zero 0\n one 1\n a + a = 1\nend\n";
    const LEX21: &str = "algebra LEX21\n kind interval\n cone lex(product(1), product(1))\n unit (2,1)\n split 1 1\nend\n";

    #[test]
    fn registry_lists_the_suite() {
        let reg = Registry::default();
        let names: Vec<_> = reg.iter().map(|c| c.name()).collect();
        assert_eq!(
            names,
            ["check", "rdp", "ideals", "states", "decompose", "represent", "subdirect", "classify"]
        );
        assert!(reg.get("nope").is_none());
    }

    #[test]
    fn chain_passes_everything_it_asserts() {
        let reg = Registry::default();
        let ctx = Context::from_text(C2, Budget::default()).unwrap();
        for name in ["check", "rdp", "ideals", "states", "subdirect", "classify"] {
            let r = reg.run(name, &ctx).unwrap();
            assert_eq!(r.outcome().exit_code(), 0, "{}\n{}", name, r.to_text());
        }
        let ctx = ctx.with_head(Some("integer:product(1)@2")).unwrap();
        let r = reg.run("decompose", &ctx).unwrap();
        assert_eq!(r.outcome().exit_code(), 0, "{}", r.to_text());
        assert!(matches!(reg.run("decompose", &Context::from_text(C2, Budget::default()).unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn lex21_has_no_representation() {
        let ctx = Context::from_text(LEX21, Budget::default()).unwrap();
        let r = Registry::default().run("represent", &ctx).unwrap();
        assert_eq!(r.outcome().exit_code(), 1);
        assert!(r.find("strong family").unwrap().detail.contains("2·c₁ = (2,1) unsolvable"));
    }
}
