//! A decomposition seen through the carrier elements a check runs over.

use crate::effalg::{EffectAlgebra, FiniteEffectAlgebra, Host, IntervalEffectAlgebra};
use crate::sampling;
use crate::states::{Fibers, HuDecomposition};
use crate::vector::Vector;
use crate::verdict::{Budget, Finding, Verdict};
use crate::{Error, Result};

pub(crate) struct View<'a, A: EffectAlgebra> {
    pub alg: A,
    pub pts: Vec<A::Elem>,
    /// Fibre index of `pts[k]`.
    pub fiber: Vec<Vector>,
    lookup: Box<dyn Fn(&A::Elem) -> Option<Vector> + 'a>,
    pub exhaustive: bool,
    pub budget: Budget,
    pub target: &'a IntervalEffectAlgebra,
}

pub(crate) enum AnyView<'a> {
    Table(View<'a, FiniteEffectAlgebra>),
    Grid(View<'a, IntervalEffectAlgebra>),
}

/// Runs the same generic body on either kind of view.
macro_rules! on_view {
    ($v:expr, $name:ident => $body:expr) => {
        match $v {
            $crate::lexrep::view::AnyView::Table($name) => $body,
            $crate::lexrep::view::AnyView::Grid($name) => $body,
        }
    };
}
pub(crate) use on_view;

impl<'a> AnyView<'a> {
    pub fn new(host: &Host, d: &'a HuDecomposition, budget: &Budget) -> Result<AnyView<'a>> {
        match &d.fibers {
            Fibers::Table(_) => {
                let f = host
                    .finite()
                    .ok_or_else(|| Error::Shape("table fibres on an infinite host".into()))?;
                let fiber: Vec<Vector> = f
                    .elements()
                    .map(|i| {
                        d.fiber_of_index(i)
                            .cloned()
                            .ok_or_else(|| Error::Decomposition(format!("{} lies in no fibre", f.label(i))))
                    })
                    .collect::<Result<_>>()?;
                let table = fiber.clone();
                Ok(AnyView::Table(View {
                    pts: f.elements().collect(),
                    alg: f,
                    fiber,
                    lookup: Box::new(move |i: &usize| table.get(*i).cloned()),
                    exhaustive: true,
                    budget: *budget,
                    target: &d.target,
                }))
            }
            Fibers::Symbolic(_) => {
                let Host::Interval(e) = host else {
                    return Err(Error::Shape("symbolic fibres need an interval host".into()));
                };
                let pts = e.sample_points(budget);
                let fiber = pts
                    .iter()
                    .map(|x| {
                        d.fiber_of(x)
                            .cloned()
                            .ok_or_else(|| Error::Decomposition(format!("{} lies in no fibre", x)))
                    })
                    .collect::<Result<_>>()?;
                Ok(AnyView::Grid(View {
                    alg: e.clone(),
                    pts,
                    fiber,
                    lookup: Box::new(move |x: &Vector| d.fiber_of(x).cloned()),
                    exhaustive: false,
                    budget: *budget,
                    target: &d.target,
                }))
            }
        }
    }
}

impl<A: EffectAlgebra> View<'_, A> {
    pub fn fiber_of(&self, x: &A::Elem) -> Option<Vector> {
        (self.lookup)(x)
    }

    pub fn show(&self, x: &A::Elem) -> String {
        self.alg.show(x)
    }

    /// Index pairs whose fibre indices satisfy `keep`; all of them on a
    /// table, a seeded sample of the budget size on a grid.
    pub fn pairs_where(&self, keep: impl Fn(&Vector, &Vector) -> bool) -> Vec<(usize, usize)> {
        let n = self.pts.len();
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|k| (0..n).map(move |l| (k, l)))
            .filter(|&(k, l)| keep(&self.fiber[k], &self.fiber[l]))
            .collect();
        if self.exhaustive || all.len() <= self.budget.samples {
            all
        } else {
            sampling::subset(&all, self.budget.samples, &mut sampling::rng(self.budget.seed))
        }
    }

    /// Indices of points in fibre `t`.
    pub fn members(&self, t: &Vector) -> Vec<usize> {
        (0..self.pts.len()).filter(|&k| &self.fiber[k] == t).collect()
    }

    pub fn pass(&self, detail: impl Into<String>) -> Finding {
        let v = if self.exhaustive {
            Verdict::Proved
        } else {
            Verdict::Witnessed(self.budget)
        };
        Finding::new(v, detail)
    }

    /// A search that came up empty: final on a table, inconclusive on a grid.
    pub fn miss(&self, detail: impl Into<String>) -> Finding {
        let v = if self.exhaustive {
            Verdict::Refuted(None)
        } else {
            Verdict::Unknown(self.budget)
        };
        Finding::new(v, detail)
    }

    /// `n·x` when defined.
    pub fn multiple(&self, x: &A::Elem, n: usize) -> Option<A::Elem> {
        let mut s = self.alg.zero();
        for _ in 0..n {
            s = self.alg.sum(&s, x)?;
        }
        Some(s)
    }
}
