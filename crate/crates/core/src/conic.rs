//! Conic feasibility systems shared by the membership oracles.
//!
//! A system asks whether shared unknowns `μ` exist such that every
//! constraint `M0 + Σ μ_j M_j` lies in its cone. Polyhedral and subspace
//! constraints are decided here by exact LP; the positive semidefinite
//! background of the quantum space is handled in [`crate::psd`].

use crate::error::{Error, Result};
use crate::linalg::{self, CoordVec};
use crate::lp::{LinearProgram, LpOutcome, VarKind};
use crate::polycone::PolyCone;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Tri-state answer of a membership oracle. `Unknown` only arises from the
/// numerical PSD oracle when the margin falls inside the tolerance band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }

    pub fn not(self) -> Self {
        match self {
            Verdict::Yes => Verdict::No,
            Verdict::No => Verdict::Yes,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    /// Kleene conjunction.
    pub fn and(self, other: Self) -> Self {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Unknown,
        }
    }

    /// Kleene disjunction.
    pub fn or(self, other: Self) -> Self {
        self.not().and(other.not()).not()
    }
}

#[derive(Clone, Debug)]
pub enum ConeKind<S: Scalar> {
    Poly(PolyCone<S>),
    Subspace(Subspace<S>),
    /// The space's own background cone: the orthant for gambles, the PSD cone
    /// for Hermitian operators.
    Background,
}

/// Affine expression `offset + Σ μ_j coeff_j` in the shared unknowns.
#[derive(Clone, Debug)]
pub struct Affine<S: Scalar> {
    pub offset: CoordVec<S>,
    pub terms: Vec<(usize, CoordVec<S>)>,
}

impl<S: Scalar> Affine<S> {
    pub fn constant(offset: CoordVec<S>) -> Self {
        Affine { offset, terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    /// Image under a linear map given by its rows.
    pub fn map(&self, rows: &[CoordVec<S>]) -> Self {
        Affine {
            offset: linalg::mat_vec(rows, &self.offset),
            terms: self.terms.iter().map(|(j, c)| (*j, linalg::mat_vec(rows, c))).collect(),
        }
    }

    /// `self - μ_j · v`
    pub fn minus_term(mut self, j: usize, v: CoordVec<S>) -> Self {
        self.terms.push((j, linalg::neg(&v)));
        self
    }

    pub fn eval(&self, mu: &[S]) -> CoordVec<S> {
        self.terms.iter().fold(self.offset.clone(), |acc, (j, c)| linalg::axpy(&acc, &mu[*j], c))
    }

    /// Dense coefficient rows: `out[j]` is the total coefficient vector of `μ_j`.
    pub fn dense(&self, n_unknowns: usize) -> Vec<CoordVec<S>> {
        let mut out = vec![linalg::zeros(self.dim()); n_unknowns];
        for (j, c) in &self.terms {
            out[*j] = linalg::add(&out[*j], c);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ConicConstraint<S: Scalar> {
    pub expr: Affine<S>,
    pub cone: ConeKind<S>,
}

#[derive(Clone, Debug, Default)]
pub struct ConicSystem<S: Scalar> {
    pub unknowns: Vec<VarKind>,
    pub constraints: Vec<ConicConstraint<S>>,
}

impl<S: Scalar> ConicSystem<S> {
    pub fn new() -> Self {
        ConicSystem { unknowns: Vec::new(), constraints: Vec::new() }
    }

    pub fn add_unknown(&mut self, kind: VarKind) -> usize {
        self.unknowns.push(kind);
        self.unknowns.len() - 1
    }

    pub fn require(&mut self, expr: Affine<S>, cone: ConeKind<S>) {
        self.constraints.push(ConicConstraint { expr, cone });
    }

    pub fn has_background(&self) -> bool {
        self.constraints.iter().any(|c| matches!(c.cone, ConeKind::Background))
    }

    /// Check a candidate assignment against every polyhedral/subspace
    /// constraint (background read as the orthant).
    pub fn is_satisfied_polyhedral(&self, mu: &[S]) -> bool {
        let signs = mu.iter().zip(&self.unknowns).all(|(v, k)| *k == VarKind::Free || !v.is_neg());
        signs
            && self.constraints.iter().all(|c| {
                let x = c.expr.eval(mu);
                match &c.cone {
                    ConeKind::Poly(p) => p.contains(&x),
                    ConeKind::Subspace(s) => s.contains(&x),
                    ConeKind::Background => x.iter().all(|v| !v.is_neg()),
                }
            })
    }
}

impl ConicSystem<f64> {
    /// Polyhedral and subspace constraints only; background constraints are skipped.
    pub fn is_satisfied_linear(&self, mu: &[f64]) -> bool {
        self.constraints.iter().all(|c| {
            let x = c.expr.eval(mu);
            match &c.cone {
                ConeKind::Poly(p) => p.contains(&x),
                ConeKind::Subspace(s) => s.contains(&x),
                ConeKind::Background => true,
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeasibilityCertificate<S: Scalar> {
    /// Values of the unknowns (or nonnegative generator weights).
    Feasible { weights: Vec<S> },
    /// Separating functional: LP Farkas multipliers for general systems, a
    /// vector in option coordinates for cone membership.
    Infeasible { functional: Vec<S> },
}

impl<S: Scalar> FeasibilityCertificate<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityCertificate::Feasible { .. })
    }
}

/// Translate a polyhedral system into an LP over the unknowns.
fn build_lp<S: Scalar>(sys: &ConicSystem<S>) -> Result<LinearProgram<S>> {
    if sys.constraints.is_empty() {
        return Err(Error::Input("conic system without constraints".into()));
    }
    let n = sys.unknowns.len();
    let mut lp = LinearProgram::new(sys.unknowns.clone());
    for c in &sys.constraints {
        let d = c.expr.dim();
        for (_, v) in &c.expr.terms {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
        }
        let coeffs = c.expr.dense(n);
        let row_for = |h: &[S]| -> (Vec<S>, S) {
            (coeffs.iter().map(|m| linalg::dot(h, m)).collect(), -linalg::dot(h, &c.expr.offset))
        };
        match &c.cone {
            ConeKind::Poly(p) => {
                if p.ambient() != d {
                    return Err(Error::DimensionMismatch { expected: p.ambient(), found: d });
                }
                for h in p.halfspaces() {
                    let (a, b) = row_for(&h);
                    lp.add_ge(a, b);
                }
            }
            ConeKind::Subspace(s) => {
                if s.ambient() != d {
                    return Err(Error::DimensionMismatch { expected: s.ambient(), found: d });
                }
                for h in s.annihilator() {
                    let (a, b) = row_for(&h);
                    lp.add_eq(a, b);
                }
            }
            ConeKind::Background => {
                for k in 0..d {
                    let (a, b) = row_for(&linalg::unit(d, k));
                    lp.add_ge(a, b);
                }
            }
        }
    }
    Ok(lp)
}

/// Exact feasibility of a system whose cones are polyhedral or subspaces.
pub fn lp_feasible<S: Scalar>(sys: &ConicSystem<S>) -> Result<FeasibilityCertificate<S>> {
    let lp = build_lp(sys)?;
    Ok(match lp.solve() {
        LpOutcome::Optimal { x, .. } | LpOutcome::Unbounded { x } => FeasibilityCertificate::Feasible { weights: x },
        LpOutcome::Infeasible { farkas } => FeasibilityCertificate::Infeasible { functional: farkas },
    })
}

/// Is `target` a nonnegative combination of `generators`?
pub fn posi_member<S: Scalar>(generators: &[CoordVec<S>], target: &[S]) -> Result<FeasibilityCertificate<S>> {
    let d = target.len();
    for g in generators {
        if g.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: g.len() });
        }
    }
    let mut lp = LinearProgram::nonneg(generators.len());
    for k in 0..d {
        lp.add_eq(generators.iter().map(|g| g[k].clone()).collect(), target[k].clone());
    }
    Ok(match lp.solve() {
        LpOutcome::Optimal { x, .. } | LpOutcome::Unbounded { x } => FeasibilityCertificate::Feasible { weights: x },
        LpOutcome::Infeasible { farkas } => FeasibilityCertificate::Infeasible { functional: farkas },
    })
}

/// Independent check of a [`posi_member`] certificate.
pub fn verify_posi_certificate<S: Scalar>(
    generators: &[CoordVec<S>],
    target: &[S],
    cert: &FeasibilityCertificate<S>,
) -> bool {
    match cert {
        FeasibilityCertificate::Feasible { weights } => {
            weights.len() == generators.len()
                && weights.iter().all(|w| !w.is_neg())
                && linalg::vec_eq(
                    &generators
                        .iter()
                        .zip(weights)
                        .fold(linalg::zeros(target.len()), |acc, (g, w)| linalg::axpy(&acc, w, g)),
                    target,
                )
        }
        FeasibilityCertificate::Infeasible { functional } => {
            functional.len() == target.len()
                && generators.iter().all(|g| !linalg::dot(functional, g).is_pos())
                && linalg::dot(functional, target).is_pos()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    fn gens() -> Vec<Vec<Rational>> {
        vec![q(&[1, 0]), q(&[0, 1]), q(&[-1, 2])]
    }

    #[test]
    fn normalized_zero_combination_is_infeasible() {
        let mut sys = ConicSystem::new();
        let mut sum = Affine::constant(q(&[0, 0]));
        let mut total = Affine::constant(q(&[-1]));
        for g in gens() {
            let j = sys.add_unknown(VarKind::NonNeg);
            sum = sum.minus_term(j, linalg::neg(&g));
            total = total.minus_term(j, q(&[-1]));
        }
        sys.require(sum, ConeKind::Subspace(Subspace::zero(2)));
        sys.require(total, ConeKind::Subspace(Subspace::zero(1)));
        let cert = lp_feasible(&sys).unwrap();
        assert!(!cert.is_feasible());
        let lp = build_lp(&sys).unwrap();
        if let FeasibilityCertificate::Infeasible { functional } = cert {
            assert!(lp.verify_farkas(&functional));
        }
    }

    #[test]
    fn target_equal_to_generator() {
        let cert = posi_member(&gens(), &q(&[-1, 2])).unwrap();
        assert!(verify_posi_certificate(&gens(), &q(&[-1, 2]), &cert));
        assert!(cert.is_feasible());
    }

    #[test]
    fn negative_axis_is_separated() {
        let cert = posi_member(&gens(), &q(&[-1, 0])).unwrap();
        assert!(!cert.is_feasible());
        assert!(verify_posi_certificate(&gens(), &q(&[-1, 0]), &cert));
    }

    #[test]
    fn mismatched_dimension_is_an_input_error() {
        assert!(posi_member(&gens(), &q(&[1, 2, 3])).is_err());
    }
}
