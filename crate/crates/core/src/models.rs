//! Assessments, statement models, DI models and the closure operator.
//!
//! A model keeps its accept set as a closed cone expression and its reject
//! set symbolically, in one of two forms:
//!
//! * `Minus(S₁,…,S_m)`: reject `= −(accept ∖ ∪ S_i)`. Every model produced by
//!   the belief-change operators has this shape.
//! * `Rays(R, background)`: reject `= ∪_{r∈R} (shull(r) − accept)`, the raw
//!   closure formula, plus `−((B∖{0}) + accept)` when `background` is set.
//!
//! Classical cones flatten to polyhedra, so everything there is exact. The
//! quantum side decides single memberships numerically and model inclusion by
//! structural rules backed by a witness search.

use num_traits::One;
use serde_json::{json, Value};

use crate::cone_expr::{Cone, ConeExpr};
use crate::conic::{Affine, ConeKind, ConicSystem, Verdict};
use crate::error::{Error, Result};
use crate::io::SpaceIo;
use crate::linalg::{self, CoordVec};
use crate::lp::VarKind;
use crate::polycone::PolyCone;
use crate::report::{AxiomResult, Check};
use crate::sample::{trial_rng, Sampling, DEFAULT_RANGE};
use crate::scalar::Scalar;
use crate::space::OptionSpace;
use crate::subspace::Subspace;

/// Normalized ray length below which a numerical ray test is inconclusive.
pub const RAY_DELTA: f64 = 1e-7;
/// Random probes per inclusion check when no exact procedure applies.
pub const INCLUSION_SAMPLES: usize = 200;

/// Finite accept and reject statement lists.
#[derive(Clone, Debug)]
pub struct Assessment<S: Scalar> {
    pub accept: Vec<CoordVec<S>>,
    pub reject: Vec<CoordVec<S>>,
}

impl<S: Scalar> Default for Assessment<S> {
    fn default() -> Self {
        Assessment { accept: Vec::new(), reject: Vec::new() }
    }
}

impl<S: Scalar> Assessment<S> {
    pub fn new(accept: Vec<CoordVec<S>>, reject: Vec<CoordVec<S>>) -> Self {
        Assessment { accept, reject }
    }

    /// Accept every vector of `span` (both signs of a basis).
    pub fn indifferent_to(span: &Subspace<S>) -> Self {
        let accept = span.basis().iter().flat_map(|b| [b.clone(), linalg::neg(b)]).collect();
        Assessment { accept, reject: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.accept.is_empty() && self.reject.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut a = self.clone();
        a.accept.extend(other.accept.iter().cloned());
        a.reject.extend(other.reject.iter().cloned());
        a
    }
}

#[derive(Clone, Debug)]
pub enum Reject<S: Scalar> {
    Minus(Vec<Subspace<S>>),
    Rays { rays: Vec<CoordVec<S>>, background: bool },
}

#[derive(Clone, Debug)]
pub struct StatementModel<Sp: OptionSpace> {
    pub accept: Cone<Sp>,
    pub reject: Reject<Sp::Scalar>,
}

/// Result of a closure: a statement model, or the top assessment `⟨𝒪,𝒪⟩`.
#[derive(Clone, Debug)]
pub enum Closure<Sp: OptionSpace> {
    Model(StatementModel<Sp>),
    Inconsistent,
}

impl<Sp: OptionSpace> Closure<Sp> {
    pub fn is_inconsistent(&self) -> bool {
        matches!(self, Closure::Inconsistent)
    }

    pub fn model(&self) -> Option<&StatementModel<Sp>> {
        match self {
            Closure::Model(m) => Some(m),
            Closure::Inconsistent => None,
        }
    }

    pub fn into_model(self) -> Result<StatementModel<Sp>> {
        match self {
            Closure::Model(m) => Ok(m),
            Closure::Inconsistent => Err(Error::Precondition("model is inconsistent".into())),
        }
    }
}

/// Membership flags of one option.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Status {
    pub accepted: Verdict,
    pub rejected: Verdict,
    pub desirable: Verdict,
    pub indifferent: Verdict,
}

impl Status {
    pub fn unresolved(&self) -> Verdict {
        self.accepted.not().and(self.rejected.not())
    }

    pub fn has_unknown(&self) -> bool {
        [self.accepted, self.rejected, self.desirable, self.indifferent].contains(&Verdict::Unknown)
    }

    pub fn agrees(&self, other: &Status) -> Verdict {
        let pairs = [
            (self.accepted, other.accepted),
            (self.rejected, other.rejected),
            (self.desirable, other.desirable),
            (self.indifferent, other.indifferent),
        ];
        pairs.iter().fold(Verdict::Yes, |acc, (a, b)| {
            let v = if *a == Verdict::Unknown || *b == Verdict::Unknown { Verdict::Unknown } else { Verdict::from_bool(a == b) };
            acc.and(v)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Accept,
    Reject,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Inclusion<S: Scalar> {
    Verified,
    Falsified { part: Part, witness: CoordVec<S> },
    Unknown,
}

impl<S: Scalar> Inclusion<S> {
    pub fn is_verified(&self) -> bool {
        matches!(self, Inclusion::Verified)
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Inclusion::Falsified { .. })
    }

    fn then(self, next: impl FnOnce() -> Result<Self>) -> Result<Self> {
        match self {
            Inclusion::Verified => next(),
            Inclusion::Unknown => match next()? {
                f @ Inclusion::Falsified { .. } => Ok(f),
                _ => Ok(Inclusion::Unknown),
            },
            f => Ok(f),
        }
    }
}

fn inf_normalize<S: Scalar>(v: &[S]) -> CoordVec<S> {
    let big = v.iter().fold(S::zero(), |a, x| if x.abs() > a { x.abs() } else { a });
    if big.is_negligible() {
        v.to_vec()
    } else {
        v.iter().map(|x| x.clone() / big.clone()).collect()
    }
}

/// Simplify an excluded-subspace list: drop members contained in another.
fn simplify_excluded<S: Scalar>(list: Vec<Subspace<S>>) -> Vec<Subspace<S>> {
    let mut out: Vec<Subspace<S>> = Vec::new();
    for (i, s) in list.iter().enumerate() {
        let redundant = list.iter().enumerate().any(|(j, t)| {
            j != i && t.includes(s).unwrap_or(false) && (!s.includes(t).unwrap_or(false) || j < i)
        });
        if !redundant {
            out.push(s.clone());
        }
    }
    out
}

/// Exact test: `∃ λ > 0` with `λ r − u` inside the cone `{x : h·x ≥ 0}`.
fn ray_reaches<S: Scalar>(halfspaces: &[CoordVec<S>], r: &[S], u: &[S]) -> bool {
    let mut lo: Option<S> = None;
    let mut hi: Option<S> = None;
    for h in halfspaces {
        let a = linalg::dot(h, r);
        let b = linalg::dot(h, u);
        if a.is_negligible() {
            if b.is_pos() {
                return false;
            }
        } else {
            let q = b / a.clone();
            if a.is_pos() {
                if lo.as_ref().is_none_or(|l| q > *l) {
                    lo = Some(q);
                }
            } else if hi.as_ref().is_none_or(|h| q < *h) {
                hi = Some(q);
            }
        }
    }
    match hi {
        None => true,
        Some(h) => h.is_pos() && lo.is_none_or(|l| !(l - h.clone()).is_pos()),
    }
}

/// A point of the cone spanned by `gens` that avoids every subspace in `subs`.
fn point_outside<S: Scalar>(gens: &[CoordVec<S>], subs: &[Subspace<S>]) -> Option<CoordVec<S>> {
    let outside = |x: &CoordVec<S>| !subs.iter().any(|s| s.contains(x));
    if let Some(g) = gens.iter().find(|g| outside(g)) {
        return Some(g.clone());
    }
    let d = gens.first()?.len();
    for p in 1..16u32 {
        let x = gens
            .iter()
            .enumerate()
            .fold(linalg::zeros(d), |acc, (k, g)| linalg::axpy(&acc, &S::from_int((k as i64 + 1).pow(p)), g));
        if outside(&x) {
            return Some(x);
        }
    }
    None
}

impl<Sp: OptionSpace> StatementModel<Sp> {
    /// `⟨accept, −(accept ∖ ∪excluded)⟩`.
    pub fn minus(space: &Sp, accept: ConeExpr<Sp>, excluded: Vec<Subspace<Sp::Scalar>>) -> Self {
        let mut excluded = simplify_excluded(excluded);
        if excluded.is_empty() {
            excluded.push(Subspace::zero(space.dim()));
        }
        StatementModel { accept: Cone::new(space, accept), reject: Reject::Minus(excluded) }
    }

    /// The background model `⟨B, −(B∖{0})⟩`.
    pub fn vacuous(space: &Sp) -> Self {
        Self::minus(space, ConeExpr::background(), vec![Subspace::zero(space.dim())])
    }

    /// Canonical DI model with desirable set `posi(gens ∪ B≻0) + I` and
    /// indifference `I`, or inconsistency when `D ∩ I ≠ ∅`.
    pub fn least_resolved_di(
        space: &Sp,
        gens: Vec<CoordVec<Sp::Scalar>>,
        indifference: Subspace<Sp::Scalar>,
        background: bool,
    ) -> Result<Closure<Sp>> {
        for g in &gens {
            space.check_option(g)?;
        }
        match di_incompatible(space, &gens, &indifference, background)? {
            Verdict::Yes => Ok(Closure::Inconsistent),
            Verdict::No => {
                let accept = ConeExpr::span_aug(ConeExpr::gen(gens, background), indifference.clone());
                Ok(Closure::Model(Self::minus(space, accept, vec![indifference])))
            }
            Verdict::Unknown => Err(Error::Undecided("compatibility of desirable and indifferent options".into())),
        }
    }

    /// Excluded subspaces, when the reject set has the `Minus` form.
    pub fn excluded(&self) -> Option<&[Subspace<Sp::Scalar>]> {
        match &self.reject {
            Reject::Minus(s) => Some(s),
            Reject::Rays { .. } => None,
        }
    }

    /// The indifference space of a canonical DI model.
    pub fn indifference(&self) -> Option<&Subspace<Sp::Scalar>> {
        match self.excluded() {
            Some([s]) => Some(s),
            _ => None,
        }
    }

    /// Does the model have the restricted form `⟨D ∪ {0}, −D⟩`?
    pub fn is_restricted_di(&self) -> bool {
        self.indifference().is_some_and(|s| s.is_zero())
    }

    pub fn accepts(&self, space: &Sp, u: &[Sp::Scalar]) -> Result<Verdict> {
        self.accept.member(space, u)
    }

    pub fn rejects(&self, space: &Sp, u: &[Sp::Scalar]) -> Result<Verdict> {
        space.check_option(u)?;
        let mu = linalg::neg(u);
        match &self.reject {
            Reject::Minus(excluded) => {
                if excluded.iter().any(|s| s.contains(&mu)) {
                    return Ok(Verdict::No);
                }
                self.accept.member(space, &mu)
            }
            Reject::Rays { rays, background } => {
                let mut all = rays.clone();
                if let (true, Some(g)) = (*background, space.background_generators()) {
                    all.extend(g.iter().map(|x| linalg::neg(x)));
                }
                let numeric_background = *background && space.background_generators().is_none();
                if let Some(flat) = &self.accept.flat {
                    let h = flat.halfspaces();
                    return Ok(Verdict::from_bool(all.iter().any(|r| ray_reaches(&h, r, u))));
                }
                self.rejects_numeric(space, &all, numeric_background, u)
            }
        }
    }

    fn rejects_numeric(&self, space: &Sp, rays: &[CoordVec<Sp::Scalar>], background: bool, u: &[Sp::Scalar]) -> Result<Verdict> {
        let d = space.dim();
        if linalg::is_zero_vec(u) {
            let mut v = Verdict::No;
            for r in rays {
                v = v.or(self.accept.member(space, r)?);
            }
            if background {
                v = v.or(self.background_reaches(space, &linalg::zeros(d), Sp::Scalar::one())?);
            }
            return Ok(v);
        }
        let u = inf_normalize(u);
        let delta = Sp::Scalar::from_float(RAY_DELTA).expect("representable");
        let mut v = Verdict::No;
        for r in rays {
            let r = inf_normalize(r);
            let mut sys = ConicSystem::new();
            let j = sys.add_unknown(VarKind::NonNeg);
            let target = Affine { offset: linalg::axpy(&linalg::neg(&u), &delta, &r), terms: vec![(j, r.clone())] };
            self.accept.expr.compile(space, target, &mut sys);
            v = v.or(space.decide(&sys)?);
        }
        if background {
            v = v.or(self.background_reaches(space, &u, delta)?);
        }
        if v == Verdict::Yes {
            return Ok(v);
        }
        // Below the normalized threshold only the λ = 0 endpoint can be settled.
        match self.accept.member(space, &linalg::neg(&u))? {
            Verdict::No => Ok(Verdict::No),
            _ => Ok(Verdict::Unknown),
        }
    }

    /// `∃ y ⪰ 0` with `<1, y> = scale` and `−u − y ∈ accept`.
    fn background_reaches(&self, space: &Sp, u: &[Sp::Scalar], scale: Sp::Scalar) -> Result<Verdict> {
        let d = space.dim();
        let mut sys = ConicSystem::new();
        let mut y = Affine::constant(linalg::zeros(d));
        let mut total = Affine::constant(vec![-scale]);
        let unit = space.unit_option();
        let mut rest = Affine::constant(linalg::neg(u));
        for k in 0..d {
            let j = sys.add_unknown(VarKind::Free);
            let e = linalg::unit(d, k);
            y.terms.push((j, e.clone()));
            total.terms.push((j, vec![unit[k].clone()]));
            rest = rest.minus_term(j, e);
        }
        sys.require(y, ConeKind::Background);
        sys.require(total, ConeKind::Subspace(Subspace::zero(1)));
        self.accept.expr.compile(space, rest, &mut sys);
        space.decide(&sys)
    }

    pub fn status(&self, space: &Sp, u: &[Sp::Scalar]) -> Result<Status> {
        let accepted = self.accepts(space, u)?;
        let rejected = self.rejects(space, u)?;
        let mu = linalg::neg(u);
        let desirable = accepted.and(self.rejects(space, &mu)?);
        let indifferent = accepted.and(self.accepts(space, &mu)?);
        Ok(Status { accepted, rejected, desirable, indifferent })
    }

    /// Reject set as finitely many rays against the accept cone.
    pub fn to_rays(&self, space: &Sp) -> Result<(Vec<CoordVec<Sp::Scalar>>, bool)> {
        match &self.reject {
            Reject::Rays { rays, background } => Ok((rays.clone(), *background)),
            Reject::Minus(excluded) => {
                let [s] = excluded.as_slice() else {
                    return Err(Error::Unsupported("closing a model with several excluded subspaces".into()));
                };
                if let Some(flat) = &self.accept.flat {
                    let gens = flat.generators();
                    let outside: Vec<_> = gens.iter().filter(|g| !s.contains(g)).cloned().collect();
                    if !face_of(space, &outside, s)? {
                        return Err(Error::Unsupported("excluded subspace does not cut a face of the accept cone".into()));
                    }
                    return Ok((outside.iter().map(|g| linalg::neg(g)).collect(), false));
                }
                let bare = ConeExpr::<Sp>::background();
                if s.is_zero() && self.accept.expr.structural_eq(space, &bare) {
                    return Ok((Vec::new(), true));
                }
                Err(Error::Unsupported("ray form of a non-polyhedral model other than the background".into()))
            }
        }
    }

    /// Models whose components are identical expressions.
    pub fn structural_eq(&self, space: &Sp, other: &Self) -> bool {
        if !self.accept.expr.structural_eq(space, &other.accept.expr) {
            return false;
        }
        match (&self.reject, &other.reject) {
            (Reject::Minus(a), Reject::Minus(b)) => {
                a.len() == b.len()
                    && a.iter().all(|s| b.iter().any(|t| s.equals(t).unwrap_or(false)))
                    && b.iter().all(|t| a.iter().any(|s| s.equals(t).unwrap_or(false)))
            }
            (Reject::Rays { rays: a, background: x }, Reject::Rays { rays: b, background: y }) => {
                x == y
                    && a.iter().all(|r| b.iter().any(|s| linalg::vec_eq(r, s)))
                    && b.iter().all(|s| a.iter().any(|r| linalg::vec_eq(r, s)))
            }
            _ => false,
        }
    }
}

/// Is `K ∩ S` a face of `K = cone(outside ∪ (K ∩ S))`, i.e. can no
/// nonnegative combination of generators outside `S` with unit weight land in `S`?
fn face_of<Sp: OptionSpace>(space: &Sp, outside: &[CoordVec<Sp::Scalar>], s: &Subspace<Sp::Scalar>) -> Result<bool> {
    if outside.is_empty() {
        return Ok(true);
    }
    let d = space.dim();
    let mut sys = ConicSystem::new();
    let mut x = Affine::constant(linalg::zeros(d));
    let mut total = Affine::constant(vec![-Sp::Scalar::one()]);
    for g in outside {
        let j = sys.add_unknown(VarKind::NonNeg);
        x.terms.push((j, g.clone()));
        total.terms.push((j, vec![Sp::Scalar::one()]));
    }
    sys.require(x, ConeKind::Subspace(s.clone()));
    sys.require(total, ConeKind::Subspace(Subspace::zero(1)));
    Ok(space.decide(&sys)?.is_no())
}

/// Does `cone(gens ∪ B) ∖ {0}` meet `I`? Decided as the feasibility of a
/// unit-weight combination landing in `I`.
pub fn di_incompatible<Sp: OptionSpace>(
    space: &Sp,
    gens: &[CoordVec<Sp::Scalar>],
    indifference: &Subspace<Sp::Scalar>,
    background: bool,
) -> Result<Verdict> {
    let d = space.dim();
    let mut sys = ConicSystem::new();
    let mut x = Affine::constant(linalg::zeros(d));
    let mut total = Affine::constant(vec![-Sp::Scalar::one()]);
    for g in gens {
        let j = sys.add_unknown(VarKind::NonNeg);
        x.terms.push((j, g.clone()));
        total.terms.push((j, vec![Sp::Scalar::one()]));
    }
    if background {
        let unit = space.unit_option();
        let mut y = Affine::constant(linalg::zeros(d));
        for k in 0..d {
            let j = sys.add_unknown(VarKind::Free);
            let e = linalg::unit(d, k);
            y.terms.push((j, e.clone()));
            x.terms.push((j, e));
            total.terms.push((j, vec![unit[k].clone()]));
        }
        sys.require(y, ConeKind::Background);
    }
    if sys.unknowns.is_empty() {
        return Ok(Verdict::No);
    }
    sys.require(x, ConeKind::Subspace(indifference.clone()));
    sys.require(total, ConeKind::Subspace(Subspace::zero(1)));
    space.decide(&sys)
}

/// Least resolved model including `base ∪ a` (Eq. of the closure operator),
/// or inconsistency.
pub fn close_union<Sp: OptionSpace>(space: &Sp, base: &StatementModel<Sp>, a: &Assessment<Sp::Scalar>) -> Result<Closure<Sp>> {
    for u in a.accept.iter().chain(&a.reject) {
        space.check_option(u)?;
    }
    if a.is_empty() {
        return Ok(Closure::Model(base.clone()));
    }
    let (mut rays, background) = base.to_rays(space)?;
    rays.extend(a.reject.iter().cloned());
    let expr = if a.accept.is_empty() {
        base.accept.expr.clone()
    } else {
        ConeExpr::sum(space, vec![base.accept.expr.clone(), ConeExpr::gen(a.accept.clone(), false)])
    };
    let model = StatementModel { accept: Cone::new(space, expr), reject: Reject::Rays { rays, background } };
    match model.rejects(space, &linalg::zeros(space.dim()))? {
        Verdict::No => Ok(Closure::Model(model)),
        Verdict::Yes => Ok(Closure::Inconsistent),
        Verdict::Unknown => Err(Error::Undecided("closability of the assessment".into())),
    }
}

/// `cls(background ∪ a)`.
pub fn close<Sp: OptionSpace>(space: &Sp, a: &Assessment<Sp::Scalar>, background: &StatementModel<Sp>) -> Result<Closure<Sp>> {
    close_union(space, background, a)
}

/// `posi(A_⊵) ∩ A_⊲ = ∅`, relative to a background.
pub fn deductively_closable<Sp: OptionSpace>(
    space: &Sp,
    a: &Assessment<Sp::Scalar>,
    background: &StatementModel<Sp>,
) -> Result<bool> {
    Ok(!close(space, a, background)?.is_inconsistent())
}

/// Componentwise intersection of two `Minus` models.
pub fn meet<Sp: OptionSpace>(space: &Sp, m1: &StatementModel<Sp>, m2: &StatementModel<Sp>) -> Result<StatementModel<Sp>> {
    match (&m1.reject, &m2.reject) {
        (Reject::Minus(s1), Reject::Minus(s2)) => {
            let accept = ConeExpr::intersect(space, vec![m1.accept.expr.clone(), m2.accept.expr.clone()]);
            let mut excluded = s1.clone();
            excluded.extend(s2.iter().cloned());
            Ok(StatementModel::minus(space, accept, excluded))
        }
        _ => Err(Error::Unsupported("meet of ray-form models".into())),
    }
}

// ---------------------------------------------------------------------------
// Inclusion

/// Structural sufficient condition for `x ⊆ y` between cone expressions.
pub fn expr_includes<Sp: OptionSpace>(space: &Sp, x: &ConeExpr<Sp>, y: &ConeExpr<Sp>) -> Result<bool> {
    if let ConeExpr::SpanAug { span, .. } = y {
        if span.is_full() {
            return Ok(true);
        }
    }
    if x.structural_eq(space, y) {
        return Ok(true);
    }
    let member = |u: &CoordVec<Sp::Scalar>| -> Result<bool> { Ok(y.member_by_system(space, u)?.is_yes()) };
    let inside = match x {
        ConeExpr::Sum(xs) => {
            let mut all = true;
            for c in xs {
                if !expr_includes(space, c, y)? {
                    all = false;
                    break;
                }
            }
            all
        }
        ConeExpr::SpanAug { child, span } => {
            let in_kernel = match y {
                ConeExpr::Pullback { event, .. } => span.basis().iter().all(|b| space.kernel(event).contains(b)),
                _ => false,
            };
            let mut ok = expr_includes(space, child, y)?;
            if ok && !in_kernel {
                for b in span.basis() {
                    if !(member(b)? && member(&linalg::neg(b))?) {
                        ok = false;
                        break;
                    }
                }
            }
            ok
        }
        ConeExpr::Intersect(xs) => {
            let mut any = false;
            for c in xs {
                if expr_includes(space, c, y)? {
                    any = true;
                    break;
                }
            }
            any
        }
        ConeExpr::Gen { gens, background } => {
            let mut ok = !*background || y.contains_background(space);
            for g in gens {
                if !ok {
                    break;
                }
                ok = member(g)?;
            }
            ok
        }
        ConeExpr::Pullback { event, child } => match y {
            ConeExpr::Pullback { event: f, child: c } if space.event_eq(event, f) => expr_includes(space, child, c)?,
            _ => false,
        },
    };
    if inside {
        return Ok(true);
    }
    match y {
        ConeExpr::Sum(ys) => {
            for c in ys {
                if expr_includes(space, x, c)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        ConeExpr::Intersect(ys) => {
            for c in ys {
                if !expr_includes(space, x, c)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ConeExpr::SpanAug { child, .. } => expr_includes(space, x, child),
        _ => Ok(false),
    }
}

fn collect_vectors<Sp: OptionSpace>(e: &ConeExpr<Sp>, out: &mut Vec<CoordVec<Sp::Scalar>>) {
    match e {
        ConeExpr::Gen { gens, .. } => out.extend(gens.iter().cloned()),
        ConeExpr::Pullback { child, .. } => collect_vectors(child, out),
        ConeExpr::Intersect(cs) | ConeExpr::Sum(cs) => cs.iter().for_each(|c| collect_vectors(c, out)),
        ConeExpr::SpanAug { child, span } => {
            out.extend(span.basis().iter().cloned());
            collect_vectors(child, out);
        }
    }
}

/// Candidate options for witness searches: structural vectors, probes and
/// random small-integer options, each in both signs.
pub fn probes<Sp: Sampling>(space: &Sp, models: &[&StatementModel<Sp>], count: usize) -> Vec<CoordVec<Sp::Scalar>> {
    let mut rng = trial_rng(0x1d_e5_1b_1e, count as u64);
    let mut base = Vec::new();
    for m in models {
        collect_vectors(&m.accept.expr, &mut base);
        if let Reject::Rays { rays, .. } = &m.reject {
            base.extend(rays.iter().cloned());
        }
        if let Reject::Minus(ex) = &m.reject {
            for s in ex {
                base.extend(s.basis().iter().cloned());
            }
        }
    }
    base.push(space.unit_option());
    base.extend(space.probe_options(&mut rng));
    for _ in 0..count {
        base.push(space.random_option(&mut rng, DEFAULT_RANGE));
    }
    base.iter().flat_map(|u| [u.clone(), linalg::neg(u)]).collect()
}

/// Is `m1` less resolved than `m2` (componentwise inclusion)?
pub fn model_include<Sp: Sampling>(space: &Sp, m1: &StatementModel<Sp>, m2: &StatementModel<Sp>) -> Result<Inclusion<Sp::Scalar>> {
    if let (Some(k1), Some(k2)) = (&m1.accept.flat, &m2.accept.flat) {
        return exact_include(space, m1, m2, k1, k2);
    }
    let accept = if expr_includes(space, &m1.accept.expr, &m2.accept.expr)? {
        Inclusion::Verified
    } else {
        sampled(space, m1, m2, Part::Accept)?
    };
    accept.then(|| {
        if structural_reject_include(space, m1, m2)? {
            Ok(Inclusion::Verified)
        } else {
            sampled(space, m1, m2, Part::Reject)
        }
    })
}

fn sampled<Sp: Sampling>(space: &Sp, m1: &StatementModel<Sp>, m2: &StatementModel<Sp>, part: Part) -> Result<Inclusion<Sp::Scalar>> {
    for u in probes(space, &[m1, m2], INCLUSION_SAMPLES) {
        let (a, b) = match part {
            Part::Accept => (m1.accepts(space, &u)?, m2.accepts(space, &u)?),
            Part::Reject => (m1.rejects(space, &u)?, m2.rejects(space, &u)?),
        };
        if a.is_yes() && b.is_no() {
            return Ok(Inclusion::Falsified { part, witness: u });
        }
    }
    Ok(Inclusion::Unknown)
}

/// Reject inclusion from the representations alone, given accept inclusion.
fn structural_reject_include<Sp: OptionSpace>(space: &Sp, m1: &StatementModel<Sp>, m2: &StatementModel<Sp>) -> Result<bool> {
    match (&m1.reject, &m2.reject) {
        (Reject::Minus(s1), Reject::Minus(s2)) => {
            Ok(s2.iter().all(|t| s1.iter().any(|s| s.includes(t).unwrap_or(false))))
        }
        (Reject::Rays { rays, background }, _) => {
            for r in rays {
                if !m2.rejects(space, r)?.is_yes() {
                    return Ok(false);
                }
            }
            if *background {
                let covers = match &m2.reject {
                    Reject::Rays { background: b2, .. } => *b2,
                    Reject::Minus(s2) => s2.iter().all(|s| s.is_zero()) && m2.accept.expr.contains_background(space),
                };
                if !covers {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

fn exact_include<Sp: OptionSpace>(
    space: &Sp,
    m1: &StatementModel<Sp>,
    m2: &StatementModel<Sp>,
    k1: &PolyCone<Sp::Scalar>,
    k2: &PolyCone<Sp::Scalar>,
) -> Result<Inclusion<Sp::Scalar>> {
    for g in k1.generators() {
        if !k2.contains(&g) {
            return Ok(Inclusion::Falsified { part: Part::Accept, witness: g });
        }
    }
    let falsified = |x: CoordVec<Sp::Scalar>| Inclusion::Falsified { part: Part::Reject, witness: linalg::neg(&x) };
    match (&m1.reject, &m2.reject) {
        (Reject::Rays { .. }, _) => {
            let (rays, _) = m1.to_rays(space)?;
            let mut all = rays;
            if let Reject::Rays { background: true, .. } = &m1.reject {
                all.extend(space.background_generators().unwrap_or_default().iter().map(|g| linalg::neg(g)));
            }
            for r in all {
                if !m2.rejects(space, &r)?.is_yes() {
                    return Ok(Inclusion::Falsified { part: Part::Reject, witness: r });
                }
            }
            Ok(Inclusion::Verified)
        }
        (Reject::Minus(s1), Reject::Minus(s2)) => {
            for t in s2 {
                let part = k1.restrict(t)?;
                if let Some(x) = uncovered(&part, s1) {
                    return Ok(falsified(x));
                }
            }
            Ok(Inclusion::Verified)
        }
        (Reject::Minus(s1), Reject::Rays { .. }) => {
            let (mut rays, background) = m2.to_rays(space)?;
            if background {
                rays.extend(space.background_generators().unwrap_or_default().iter().map(|g| linalg::neg(g)));
            }
            let h = k2.halfspaces();
            for face in blocked_faces(&h, &rays) {
                let mut hs = k1.halfspaces();
                for &j in &face {
                    hs.push(h[j].clone());
                    hs.push(linalg::neg(&h[j]));
                }
                let part = PolyCone::from_halfspaces(space.dim(), hs)?.complete();
                if let Some(x) = uncovered(&part, s1) {
                    return Ok(falsified(x));
                }
            }
            Ok(Inclusion::Verified)
        }
    }
}

/// A point of `part` outside every subspace of `subs`, if `part` is not
/// contained in a single one of them.
fn uncovered<S: Scalar>(part: &PolyCone<S>, subs: &[Subspace<S>]) -> Option<CoordVec<S>> {
    let gens = part.generators();
    if subs.iter().any(|s| gens.iter().all(|g| s.contains(g))) {
        return None;
    }
    Some(point_outside(&gens, subs).expect("a convex cone is never covered by finitely many proper subspaces"))
}

/// Faces of `{x : h·x ≥ 0}` made of points `y` from which no ray `r` can be
/// followed: for every `r` some active facet has `h·r < 0`. Returned as
/// minimal sets of facet indices to be made active.
fn blocked_faces<S: Scalar>(h: &[CoordVec<S>], rays: &[CoordVec<S>]) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> = vec![Vec::new()];
    for r in rays {
        let neg: Vec<usize> = (0..h.len()).filter(|&i| linalg::dot(&h[i], r).is_neg()).collect();
        let mut next: Vec<Vec<usize>> = Vec::new();
        for f in &faces {
            if f.iter().any(|j| neg.contains(j)) {
                next.push(f.clone());
            } else {
                for &i in &neg {
                    let mut g = f.clone();
                    g.push(i);
                    g.sort_unstable();
                    g.dedup();
                    next.push(g);
                }
            }
        }
        next.sort();
        next.dedup();
        let minimal: Vec<Vec<usize>> = next
            .iter()
            .filter(|f| !next.iter().any(|g| g != *f && g.iter().all(|j| f.contains(j))))
            .cloned()
            .collect();
        faces = minimal;
    }
    faces
}

/// Inclusion between closures; the top `⟨𝒪,𝒪⟩` includes everything.
pub fn closure_include<Sp: Sampling>(space: &Sp, a: &Closure<Sp>, b: &Closure<Sp>) -> Result<Inclusion<Sp::Scalar>> {
    match (a, b) {
        (_, Closure::Inconsistent) => Ok(Inclusion::Verified),
        (Closure::Inconsistent, Closure::Model(m)) => {
            // The top rejects 0; no statement model does.
            let zero = linalg::zeros(space.dim());
            Ok(match m.rejects(space, &zero)? {
                Verdict::No => Inclusion::Falsified { part: Part::Reject, witness: zero },
                _ => Inclusion::Unknown,
            })
        }
        (Closure::Model(x), Closure::Model(y)) => model_include(space, x, y),
    }
}

/// Mutual inclusion.
pub fn closure_equal<Sp: Sampling>(space: &Sp, a: &Closure<Sp>, b: &Closure<Sp>) -> Result<Inclusion<Sp::Scalar>> {
    closure_include(space, a, b)?.then(|| closure_include(space, b, a))
}

/// Is every statement of `a` in `m`?
pub fn assessment_in_model<Sp: OptionSpace>(space: &Sp, a: &Assessment<Sp::Scalar>, m: &StatementModel<Sp>) -> Result<Inclusion<Sp::Scalar>> {
    let mut unknown = false;
    for u in &a.accept {
        match m.accepts(space, u)? {
            Verdict::No => return Ok(Inclusion::Falsified { part: Part::Accept, witness: u.clone() }),
            Verdict::Unknown => unknown = true,
            Verdict::Yes => {}
        }
    }
    for u in &a.reject {
        match m.rejects(space, u)? {
            Verdict::No => return Ok(Inclusion::Falsified { part: Part::Reject, witness: u.clone() }),
            Verdict::Unknown => unknown = true,
            Verdict::Yes => {}
        }
    }
    Ok(if unknown { Inclusion::Unknown } else { Inclusion::Verified })
}

// ---------------------------------------------------------------------------
// Axiom checkers

fn verdict_check<Sp: SpaceIo>(space: &Sp, v: Verdict, u: &[Sp::Scalar]) -> Check {
    match v {
        Verdict::Yes => Check::pass(),
        Verdict::No => Check::fail(json!({"option": space.option_to_json(u)})),
        Verdict::Unknown => Check::unknown(json!({"option": space.option_to_json(u)})),
    }
}

fn all_checks(checks: Vec<Check>) -> Check {
    let r = AxiomResult::aggregate("", checks);
    Check { outcome: r.outcome, witness: r.witness }
}

fn background_probes<Sp: Sampling>(space: &Sp, samples: usize) -> Vec<CoordVec<Sp::Scalar>> {
    let mut rng = trial_rng(0xba_c6_0d, samples as u64);
    let mut out = space.background_generators().unwrap_or_default();
    out.push(space.unit_option());
    out.extend(space.probe_options(&mut rng));
    out
}

/// M1–M4 on a statement model. M1 and M2 are decided on 0 and the
/// background probes; M3 and M4 on sampled pairs.
pub fn check_axioms_m<Sp: Sampling + SpaceIo>(space: &Sp, m: &StatementModel<Sp>, samples: usize, seed: u64) -> Result<Vec<AxiomResult>> {
    let zero = linalg::zeros(space.dim());
    let mut m1 = vec![verdict_check(space, m.accepts(space, &zero)?, &zero)];
    for b in background_probes(space, samples) {
        m1.push(verdict_check(space, m.accepts(space, &b)?, &b));
    }
    let m2 = verdict_check(space, m.rejects(space, &zero)?.not(), &zero);

    let mut rng = trial_rng(seed, 0);
    let pool: Vec<CoordVec<Sp::Scalar>> = probes(space, &[m], samples)
        .into_iter()
        .chain((0..samples).map(|_| space.random_option(&mut rng, DEFAULT_RANGE)))
        .collect();
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for u in &pool {
        if m.accepts(space, u)?.is_yes() {
            accepted.push(u.clone());
        }
        if m.rejects(space, u)?.is_yes() {
            rejected.push(u.clone());
        }
    }
    let mut m3 = Vec::new();
    let mut m4 = Vec::new();
    for i in 0..samples.min(accepted.len().max(rejected.len()) * 4) {
        if !accepted.is_empty() {
            let a = &accepted[i % accepted.len()];
            let b = &accepted[(i * 7 + 3) % accepted.len()];
            let lam = Sp::Scalar::from_int(1 + (i % 3) as i64);
            let s = linalg::axpy(a, &lam, b);
            let v = m.accepts(space, &s)?;
            m3.push(match v {
                Verdict::Yes => Check::pass(),
                _ => {
                    let w = json!({"u": space.option_to_json(a), "v": space.option_to_json(b), "sum": space.option_to_json(&s)});
                    if v.is_no() { Check::fail(w) } else { Check::unknown(w) }
                }
            });
            if !rejected.is_empty() {
                let r = &rejected[(i * 5 + 1) % rejected.len()];
                let s = linalg::axpy(&linalg::scale(r, &lam), &-Sp::Scalar::one(), a);
                let v = m.rejects(space, &s)?;
                m4.push(match v {
                    Verdict::Yes => Check::pass(),
                    _ => {
                        let w = json!({"rejected": space.option_to_json(r), "accepted": space.option_to_json(a)});
                        if v.is_no() { Check::fail(w) } else { Check::unknown(w) }
                    }
                });
            }
        }
    }
    if m4.is_empty() {
        m4.push(Check::vacuous());
    }
    Ok(vec![
        AxiomResult::aggregate("M1", m1),
        AxiomResult::aggregate("M2", vec![m2]),
        AxiomResult::aggregate("M3", m3),
        AxiomResult::aggregate("M4", m4),
    ])
}

/// DI1–DI4 plus the canonical invariant `u, −u accepted ⟺ u ∈ I` on samples.
pub fn check_axioms_di<Sp: Sampling + SpaceIo>(space: &Sp, m: &StatementModel<Sp>, samples: usize, seed: u64) -> Result<Vec<AxiomResult>> {
    let indiff = m
        .indifference()
        .cloned()
        .ok_or_else(|| Error::Precondition("DI checks need a model with one indifference space".into()))?;
    let mut di1 = Vec::new();
    for b in background_probes(space, samples) {
        di1.push(verdict_check(space, m.accepts(space, &b)?, &b));
        let nb = linalg::neg(&b);
        di1.push(verdict_check(space, m.rejects(space, &nb)?, &nb));
    }
    for b in indiff.basis() {
        for x in [b.clone(), linalg::neg(b)] {
            di1.push(verdict_check(space, m.accepts(space, &x)?, &x));
        }
    }
    let zero = linalg::zeros(space.dim());
    let di2 = verdict_check(space, m.status(space, &zero)?.desirable.not(), &zero);

    let mut rng = trial_rng(seed, 1);
    let pool: Vec<CoordVec<Sp::Scalar>> = probes(space, &[m], samples / 4)
        .into_iter()
        .chain((0..samples).map(|_| space.random_option(&mut rng, DEFAULT_RANGE)))
        .collect();
    let mut desirable = Vec::new();
    let mut canon = Vec::new();
    for u in &pool {
        let st = m.status(space, u)?;
        if st.desirable.is_yes() {
            desirable.push(u.clone());
        }
        let both = st.indifferent;
        let in_i = Verdict::from_bool(indiff.contains(u));
        canon.push(match (both, in_i) {
            (Verdict::Unknown, _) => Check::unknown(json!({"option": space.option_to_json(u)})),
            (a, b) if a == b => Check::pass(),
            _ => Check::fail(json!({"option": space.option_to_json(u)})),
        });
        // DI condition: rejected ⇒ −u accepted; accepted ⇒ desirable or indifferent.
        let cond = st.rejected.not().or(m.accepts(space, &linalg::neg(u))?).and(st.accepted.not().or(st.desirable.or(st.indifferent)));
        canon.push(verdict_check(space, cond, u));
    }
    let mut di3 = Vec::new();
    let mut di4 = Vec::new();
    for i in 0..desirable.len().min(samples) {
        let a = &desirable[i];
        let b = &desirable[(i * 7 + 3) % desirable.len()];
        let s = linalg::add(a, b);
        di3.push(verdict_check(space, m.status(space, &s)?.desirable, &s));
        if let Some(basis) = indiff.basis().get(i % indiff.basis().len().max(1)) {
            let t = linalg::axpy(a, &Sp::Scalar::from_int((i % 5) as i64 - 2), basis);
            di4.push(verdict_check(space, m.status(space, &t)?.desirable, &t));
        }
    }
    if di3.is_empty() {
        di3.push(Check::vacuous());
    }
    if di4.is_empty() {
        di4.push(if indiff.is_zero() { Check::pass() } else { Check::vacuous() });
    }
    Ok(vec![
        AxiomResult::aggregate("DI1", di1),
        AxiomResult::aggregate("DI2", vec![di2]),
        AxiomResult::aggregate("DI3", di3),
        AxiomResult::aggregate("DI4", di4),
        AxiomResult::aggregate("DI-canonical", vec![all_checks(canon)]),
    ])
}

/// D1–D3 for `D = posi(gens ∪ B≻0)` (or `posi(gens)` without background).
pub fn check_coherent_d<Sp: Sampling + SpaceIo>(space: &Sp, gens: &[CoordVec<Sp::Scalar>], background: bool) -> Result<Vec<AxiomResult>> {
    let zero = Subspace::zero(space.dim());
    let d1 = if background {
        Check::pass()
    } else {
        let cone = Cone::new(space, ConeExpr::gen(gens.to_vec(), false));
        let mut checks = Vec::new();
        for b in background_probes(space, 8) {
            checks.push(verdict_check(space, cone.member(space, &b)?, &b));
        }
        all_checks(checks)
    };
    let d2 = match di_incompatible(space, gens, &zero, background)? {
        Verdict::No => Check::pass(),
        Verdict::Yes => Check::fail(json!({"generators": space.options_to_json(gens)})),
        Verdict::Unknown => Check::unknown(json!({"generators": space.options_to_json(gens)})),
    };
    Ok(vec![
        AxiomResult::aggregate("D1", vec![d1]),
        AxiomResult::aggregate("D2", vec![d2]),
        AxiomResult::aggregate("D3", vec![Check::pass()]),
    ])
}

/// Witness JSON for a failed inclusion.
pub fn inclusion_witness<Sp: SpaceIo>(space: &Sp, inc: &Inclusion<Sp::Scalar>) -> Value {
    match inc {
        Inclusion::Falsified { part, witness } => json!({"part": part, "option": space.option_to_json(witness)}),
        _ => Value::Null,
    }
}
