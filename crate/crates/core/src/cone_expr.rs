//! Symbolic accept cones and their membership oracles.

use crate::conic::{Affine, ConeKind, ConicSystem, Verdict};
use crate::error::Result;
use crate::linalg::{self, CoordVec};
use crate::lp::VarKind;
use crate::polycone::PolyCone;
use crate::scalar::Scalar;
use crate::space::OptionSpace;
use crate::subspace::Subspace;

/// Expression tree for a closed convex cone of options.
#[derive(Clone, Debug)]
pub enum ConeExpr<Sp: OptionSpace> {
    /// `cone(gens)`, plus the background cone when `background` is set.
    Gen { gens: Vec<CoordVec<Sp::Scalar>>, background: bool },
    /// `{u : e∗u ∈ child}`
    Pullback { event: Sp::Event, child: Box<ConeExpr<Sp>> },
    Intersect(Vec<ConeExpr<Sp>>),
    Sum(Vec<ConeExpr<Sp>>),
    /// `child + span`
    SpanAug { child: Box<ConeExpr<Sp>>, span: Subspace<Sp::Scalar> },
}

impl<Sp: OptionSpace> ConeExpr<Sp> {
    pub fn gen(gens: Vec<CoordVec<Sp::Scalar>>, background: bool) -> Self {
        ConeExpr::Gen { gens, background }
    }

    pub fn background() -> Self {
        ConeExpr::Gen { gens: Vec::new(), background: true }
    }

    pub fn subspace(span: Subspace<Sp::Scalar>) -> Self {
        ConeExpr::span_aug(ConeExpr::gen(Vec::new(), false), span)
    }

    pub fn whole(space: &Sp) -> Self {
        ConeExpr::subspace(Subspace::full(space.dim()))
    }

    /// Pullback, simplified through the unit and null events.
    pub fn pullback(space: &Sp, event: &Sp::Event, child: Self) -> Self {
        if space.event_eq(event, &space.unit_event()) {
            child
        } else if space.event_eq(event, &space.null_event()) {
            ConeExpr::whole(space)
        } else {
            ConeExpr::Pullback { event: event.clone(), child: Box::new(child) }
        }
    }

    /// Intersection with nested intersections flattened and structural duplicates dropped.
    pub fn intersect(space: &Sp, children: Vec<Self>) -> Self {
        let mut flat: Vec<Self> = Vec::new();
        for c in children {
            let parts = match c {
                ConeExpr::Intersect(cs) => cs,
                other => vec![other],
            };
            for p in parts {
                if !flat.iter().any(|q| q.structural_eq(space, &p)) {
                    flat.push(p);
                }
            }
        }
        assert!(!flat.is_empty(), "intersection of no cones");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            ConeExpr::Intersect(flat)
        }
    }

    pub fn sum(space: &Sp, children: Vec<Self>) -> Self {
        let mut flat: Vec<Self> = Vec::new();
        for c in children {
            let parts = match c {
                ConeExpr::Sum(cs) => cs,
                other => vec![other],
            };
            for p in parts {
                if !flat.iter().any(|q| q.structural_eq(space, &p)) {
                    flat.push(p);
                }
            }
        }
        assert!(!flat.is_empty(), "sum of no cones");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            ConeExpr::Sum(flat)
        }
    }

    pub fn span_aug(child: Self, span: Subspace<Sp::Scalar>) -> Self {
        if span.is_zero() {
            return child;
        }
        match child {
            ConeExpr::SpanAug { child, span: inner } => {
                let s = inner.sum(&span).expect("same ambient");
                ConeExpr::SpanAug { child, span: s }
            }
            other => ConeExpr::SpanAug { child: Box::new(other), span },
        }
    }

    /// Same tree up to event equality, subspace equality and generator order.
    pub fn structural_eq(&self, space: &Sp, other: &Self) -> bool {
        use ConeExpr::*;
        match (self, other) {
            (Gen { gens: a, background: ba }, Gen { gens: b, background: bb }) => {
                ba == bb
                    && a.iter().all(|g| b.iter().any(|h| linalg::vec_eq(g, h)))
                    && b.iter().all(|h| a.iter().any(|g| linalg::vec_eq(g, h)))
            }
            (Pullback { event: e, child: c }, Pullback { event: f, child: d }) => {
                space.event_eq(e, f) && c.structural_eq(space, d)
            }
            (Intersect(a), Intersect(b)) | (Sum(a), Sum(b)) => {
                a.len() == b.len()
                    && a.iter().all(|x| b.iter().any(|y| x.structural_eq(space, y)))
                    && b.iter().all(|y| a.iter().any(|x| x.structural_eq(space, y)))
            }
            (SpanAug { child: c, span: s }, SpanAug { child: d, span: t }) => {
                s.equals(t).unwrap_or(false) && c.structural_eq(space, d)
            }
            _ => false,
        }
    }

    /// Does the cone contain the background cone by construction?
    pub fn contains_background(&self, space: &Sp) -> bool {
        match self {
            ConeExpr::Gen { background, .. } => *background,
            // e∗ maps the background into itself (monotonicity).
            ConeExpr::Pullback { child, .. } => child.contains_background(space),
            ConeExpr::Intersect(cs) => cs.iter().all(|c| c.contains_background(space)),
            ConeExpr::Sum(cs) => cs.iter().any(|c| c.contains_background(space)),
            ConeExpr::SpanAug { child, span } => span.is_full() || child.contains_background(space),
        }
    }

    /// Add the constraints saying `target ∈ self` to `sys`.
    pub fn compile(&self, space: &Sp, target: Affine<Sp::Scalar>, sys: &mut ConicSystem<Sp::Scalar>) {
        let d = space.dim();
        match self {
            ConeExpr::Gen { gens, background } => {
                let mut residual = target;
                for g in gens {
                    let j = sys.add_unknown(VarKind::NonNeg);
                    residual = residual.minus_term(j, g.clone());
                }
                let cone = if *background { ConeKind::Background } else { ConeKind::Subspace(Subspace::zero(d)) };
                sys.require(residual, cone);
            }
            ConeExpr::Pullback { event, child } => {
                let m = space.calloff_matrix(event);
                child.compile(space, target.map(&m), sys);
            }
            ConeExpr::Intersect(cs) => {
                for c in cs {
                    c.compile(space, target.clone(), sys);
                }
            }
            ConeExpr::Sum(cs) => {
                let mut rest = target;
                for c in &cs[..cs.len() - 1] {
                    let mut part = Affine::constant(linalg::zeros(d));
                    for k in 0..d {
                        let j = sys.add_unknown(VarKind::Free);
                        let e = linalg::unit(d, k);
                        part.terms.push((j, e.clone()));
                        rest = rest.minus_term(j, e);
                    }
                    c.compile(space, part, sys);
                }
                cs[cs.len() - 1].compile(space, rest, sys);
            }
            ConeExpr::SpanAug { child, span } => {
                let mut rest = target;
                for b in span.basis() {
                    let j = sys.add_unknown(VarKind::Free);
                    rest = rest.minus_term(j, b.clone());
                }
                child.compile(space, rest, sys);
            }
        }
    }

    /// Exact polyhedral form, available when the background is polyhedral.
    pub fn flatten(&self, space: &Sp) -> Option<PolyCone<Sp::Scalar>> {
        let d = space.dim();
        Some(match self {
            ConeExpr::Gen { gens, background } => {
                let mut all = gens.clone();
                if *background {
                    all.extend(space.background_generators()?);
                }
                PolyCone::from_generators(d, all).ok()?.complete()
            }
            ConeExpr::Pullback { event, child } => {
                child.flatten(space)?.pullback(&space.calloff_matrix(event), d).ok()?
            }
            ConeExpr::Intersect(cs) => {
                let mut it = cs.iter();
                let mut acc = it.next()?.flatten(space)?;
                for c in it {
                    acc = acc.intersect(&c.flatten(space)?).ok()?;
                }
                acc
            }
            ConeExpr::Sum(cs) => {
                let mut it = cs.iter();
                let mut acc = it.next()?.flatten(space)?;
                for c in it {
                    acc = acc.sum(&c.flatten(space)?).ok()?;
                }
                acc
            }
            ConeExpr::SpanAug { child, span } => child.flatten(space)?.sum(&PolyCone::from_subspace(span)).ok()?,
        })
    }

    /// Membership by compiling to a conic system and asking the space's oracle.
    pub fn member_by_system(&self, space: &Sp, u: &[Sp::Scalar]) -> Result<Verdict> {
        space.check_option(u)?;
        let mut sys = ConicSystem::new();
        self.compile(space, Affine::constant(u.to_vec()), &mut sys);
        space.decide(&sys)
    }

    /// Number of nodes, for diagnostics.
    pub fn size(&self) -> usize {
        match self {
            ConeExpr::Gen { .. } => 1,
            ConeExpr::Pullback { child, .. } | ConeExpr::SpanAug { child, .. } => 1 + child.size(),
            ConeExpr::Intersect(cs) | ConeExpr::Sum(cs) => 1 + cs.iter().map(|c| c.size()).sum::<usize>(),
        }
    }
}

/// An accept cone together with its flattened polyhedral form, when one exists.
#[derive(Clone, Debug)]
pub struct Cone<Sp: OptionSpace> {
    pub expr: ConeExpr<Sp>,
    pub flat: Option<PolyCone<Sp::Scalar>>,
}

impl<Sp: OptionSpace> Cone<Sp> {
    pub fn new(space: &Sp, expr: ConeExpr<Sp>) -> Self {
        let flat = expr.flatten(space);
        Cone { expr, flat }
    }

    pub fn member(&self, space: &Sp, u: &[Sp::Scalar]) -> Result<Verdict> {
        space.check_option(u)?;
        match &self.flat {
            Some(p) => Ok(Verdict::from_bool(p.contains(u))),
            None => self.expr.member_by_system(space, u),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.flat.is_some() && Sp::Scalar::EXACT
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::ClassicalSpace;
    use crate::Rational;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn flatten_and_system_agree() {
        let s = ClassicalSpace::with_size(2).unwrap();
        let c = ConeExpr::gen(vec![q(&[-1, 2])], true);
        let e = s.event(&["a"]).unwrap();
        let p = ConeExpr::pullback(&s, &e, c.clone());
        let flat = Cone::new(&s, p.clone());
        for u in [q(&[1, -5]), q(&[-1, 5]), q(&[0, -3]), q(&[2, -1])] {
            assert_eq!(flat.member(&s, &u).unwrap(), p.member_by_system(&s, &u).unwrap(), "{u:?}");
        }
        assert!(flat.member(&s, &q(&[1, -5])).unwrap().is_yes());
        assert!(flat.member(&s, &q(&[-1, 5])).unwrap().is_no());
    }

    #[test]
    fn unit_and_null_pullbacks_simplify() {
        let s = ClassicalSpace::with_size(2).unwrap();
        let c = ConeExpr::<ClassicalSpace>::background();
        assert!(ConeExpr::pullback(&s, &s.unit_event(), c.clone()).structural_eq(&s, &c));
        let whole = ConeExpr::pullback(&s, &s.null_event(), c.clone());
        assert!(Cone::new(&s, whole).member(&s, &q(&[-4, -4])).unwrap().is_yes());
        let both = ConeExpr::intersect(&s, vec![c.clone(), c.clone()]);
        assert!(both.structural_eq(&s, &c));
    }

    #[test]
    fn sum_with_subspace() {
        let s = ClassicalSpace::with_size(3).unwrap();
        let span = Subspace::span(3, &[q(&[0, 0, 1])]).unwrap();
        let c = ConeExpr::sum(&s, vec![ConeExpr::background(), ConeExpr::subspace(span)]);
        let u = q(&[1, 0, -7]);
        assert!(c.member_by_system(&s, &u).unwrap().is_yes());
        assert!(Cone::new(&s, c.clone()).member(&s, &u).unwrap().is_yes());
        assert!(c.member_by_system(&s, &q(&[-1, 0, 0])).unwrap().is_no());
    }
}
