//! Semidefinite membership by semi-infinite LP column generation.
//!
//! Every background constraint `X(μ) ⪰ 0` is relaxed to finitely many cuts
//! `v* X(μ) v ≥ t`. The LP maximizes `t`; the minimum eigenvalue of `X` at
//! the LP point gives a lower bound on the true margin and its eigenvectors
//! become new cuts.

use num_complex::Complex64;

use crate::conic::{ConeKind, ConicSystem, Verdict};
use crate::error::{Error, Result};
use crate::hermitian::{outer, CMatrix};
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, VarKind};

/// Member iff the certified margin is at least this.
pub const MEMBER_TOL: f64 = -1e-9;
/// Non-member iff the margin bound is at most this.
pub const NON_MEMBER_TOL: f64 = -1e-6;
pub const MAX_ROUNDS: usize = 500;
pub const GAP_TOL: f64 = 1e-10;
/// Bounds this close are treated as converged.
pub const CONVERGED_GAP: f64 = 1e-9;
/// Box on the unknowns after each constraint is scaled to unit max-entry.
pub const UNKNOWN_BOX: f64 = 1e3;
/// Entries below this are rounding residue and are dropped before rescaling.
pub const CHOP_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Margin {
    /// Minimum eigenvalue attained at `point` (certified lower bound).
    pub lower: f64,
    /// LP relaxation value (upper bound); `-inf` when the linear part is infeasible.
    pub upper: f64,
    pub rounds: usize,
    pub point: Vec<f64>,
    pub verdict: Verdict,
}

fn classify(lower: f64, upper: f64) -> Option<Verdict> {
    if lower >= MEMBER_TOL {
        Some(Verdict::Yes)
    } else if upper <= NON_MEMBER_TOL {
        Some(Verdict::No)
    } else {
        None
    }
}

fn seed_cuts(n: usize) -> Vec<Vec<Complex64>> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for i in 0..n {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[i] = Complex64::new(1.0, 0.0);
        out.push(v);
    }
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                v[i] = Complex64::new(r, 0.0);
                v[j] = Complex64::new(a * r, b * r);
                out.push(v);
            }
        }
    }
    out
}

/// Largest `t` such that some admissible `μ` makes every background
/// constraint `⪰ t·I` while the polyhedral and subspace constraints hold.
pub fn psd_margin(sys: &ConicSystem<f64>, n: usize) -> Result<Margin> {
    if sys.constraints.is_empty() {
        return Err(Error::Input("conic system without constraints".into()));
    }
    let m = sys.unknowns.len();
    // Positive rescaling per constraint leaves membership unchanged.
    let mut scaled = sys.clone();
    for c in scaled.constraints.iter_mut() {
        let d = c.expr.dim();
        if matches!(c.cone, ConeKind::Background) && d != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: d });
        }
        let chop = |v: &mut Vec<f64>| v.iter_mut().filter(|x| x.abs() < CHOP_TOL).for_each(|x| *x = 0.0);
        chop(&mut c.expr.offset);
        c.expr.terms.iter_mut().for_each(|(_, v)| chop(v));
        let mut big = c.expr.offset.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for (_, v) in &c.expr.terms {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            big = v.iter().fold(big, |a, x| a.max(x.abs()));
        }
        if !big.is_finite() {
            return Err(Error::Input("non-finite conic data".into()));
        }
        if big > 0.0 {
            let s = 1.0 / big;
            c.expr.offset = linalg::scale(&c.expr.offset, &s);
            for (_, v) in c.expr.terms.iter_mut() {
                *v = linalg::scale(v, &s);
            }
        }
    }
    let dense: Vec<Vec<Vec<f64>>> = scaled.constraints.iter().map(|c| c.expr.dense(m)).collect();
    let psd_idx: Vec<usize> =
        (0..scaled.constraints.len()).filter(|&i| matches!(scaled.constraints[i].cone, ConeKind::Background)).collect();

    let eval_min = |mu: &[f64]| -> Result<(f64, Vec<(usize, Vec<f64>, CMatrix)>)> {
        let mut lo = f64::INFINITY;
        let mut spectra = Vec::new();
        for &i in &psd_idx {
            let x = scaled.constraints[i].expr.eval(mu);
            let mat = CMatrix::from_coords(n, &x)?;
            let (vals, vecs) = mat.eigh()?;
            lo = lo.min(vals[0]);
            spectra.push((i, vals, vecs));
        }
        Ok((lo, spectra))
    };

    if m == 0 {
        // No unknowns: read the eigenvalues off directly.
        let linear_ok = scaled.is_satisfied_linear(&[]);
        let (lo, _) = eval_min(&[])?;
        let (lower, upper) = if linear_ok { (lo, lo) } else { (f64::NEG_INFINITY, f64::NEG_INFINITY) };
        let verdict = classify(lower, upper).unwrap_or(Verdict::Unknown);
        return Ok(Margin { lower, upper, rounds: 0, point: Vec::new(), verdict });
    }

    // LP columns: μ (with box) then t.
    let mut kinds = scaled.unknowns.clone();
    kinds.push(VarKind::Free);
    let t_col = m;
    let mut base = LinearProgram::new(kinds);
    for (ci, c) in scaled.constraints.iter().enumerate() {
        let row_for = |h: &[f64]| -> (Vec<f64>, f64) {
            let mut a: Vec<f64> = dense[ci].iter().map(|col| linalg::dot(h, col)).collect();
            a.push(0.0);
            (a, -linalg::dot(h, &c.expr.offset))
        };
        match &c.cone {
            ConeKind::Poly(p) => {
                for h in p.halfspaces() {
                    let (a, b) = row_for(&h);
                    base.add_ge(a, b);
                }
            }
            ConeKind::Subspace(s) => {
                for h in s.annihilator() {
                    let (a, b) = row_for(&h);
                    base.add_eq(a, b);
                }
            }
            ConeKind::Background => {}
        }
    }
    for j in 0..m {
        let mut a = vec![0.0; m + 1];
        a[j] = 1.0;
        base.add_le(a.clone(), UNKNOWN_BOX);
        if scaled.unknowns[j] == VarKind::Free {
            base.add_ge(a, -UNKNOWN_BOX);
        }
    }
    let mut tcap = vec![0.0; m + 1];
    tcap[t_col] = 1.0;
    base.add_le(tcap.clone(), 1.0);
    base.maximize(tcap);

    let cut_row = |ci: usize, v: &[Complex64]| -> (Vec<f64>, f64) {
        let w = outer(v).coords();
        let mut a: Vec<f64> = dense[ci].iter().map(|col| linalg::dot(&w, col)).collect();
        a.push(-1.0);
        (a, -linalg::dot(&w, &scaled.constraints[ci].expr.offset))
    };
    let mut lp = base;
    for &ci in &psd_idx {
        for v in seed_cuts(n) {
            let (a, b) = cut_row(ci, &v);
            lp.add_ge(a, b);
        }
    }

    let mut lower = f64::NEG_INFINITY;
    let mut best_point = vec![0.0; m];
    let mut upper = f64::INFINITY;
    let mut rounds = 0;
    for round in 1..=MAX_ROUNDS {
        rounds = round;
        let x = match lp.solve() {
            LpOutcome::Optimal { x, .. } | LpOutcome::Unbounded { x } => x,
            // Cuts leave `t` free below, so only the first round can be
            // genuinely infeasible; later infeasibility is numerical breakdown.
            LpOutcome::Infeasible { .. } if round > 1 => break,
            LpOutcome::Infeasible { .. } => {
                return Ok(Margin {
                    lower: f64::NEG_INFINITY,
                    upper: f64::NEG_INFINITY,
                    rounds: round,
                    point: Vec::new(),
                    verdict: Verdict::No,
                });
            }
        };
        if x[t_col] < lower - GAP_TOL {
            // The relaxation cannot fall below a margin already attained.
            break;
        }
        upper = upper.min(x[t_col]);
        let mu = &x[..m];
        let (lo, spectra) = eval_min(mu)?;
        if lo > lower {
            lower = lo;
            best_point = mu.to_vec();
        }
        if let Some(verdict) = classify(lower, upper) {
            return Ok(Margin { lower, upper, rounds: round, point: best_point, verdict });
        }
        if upper - lower < CONVERGED_GAP {
            break;
        }
        let mut added = false;
        for (ci, vals, vecs) in spectra {
            for (k, &l) in vals.iter().enumerate() {
                if l < x[t_col] - GAP_TOL {
                    let (a, b) = cut_row(ci, &vecs.column(k));
                    lp.add_ge(a, b);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let verdict = if lower >= MEMBER_TOL { Verdict::Yes } else { Verdict::Unknown };
    Ok(Margin { lower, upper: upper.max(lower), rounds, point: best_point, verdict })
}

/// Membership verdict for a single Hermitian matrix.
pub fn psd_verdict(a: &CMatrix) -> Result<Verdict> {
    let (vals, _) = a.eigh()?;
    Ok(classify(vals[0], vals[0]).unwrap_or(Verdict::Unknown))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::Affine;

    fn diag(d: &[f64]) -> Vec<f64> {
        CMatrix::from_real_diag(d).coords()
    }

    #[test]
    fn boundary_member() {
        let mut sys = ConicSystem::new();
        sys.require(Affine::constant(diag(&[1.0, 0.0])), ConeKind::Background);
        let m = psd_margin(&sys, 2).unwrap();
        assert_eq!(m.verdict, Verdict::Yes);
        assert!(m.lower.abs() < 1e-15);
    }

    #[test]
    fn shifted_identity_has_positive_margin() {
        let mut sys = ConicSystem::new();
        let j = sys.add_unknown(VarKind::NonNeg);
        sys.require(Affine::constant(diag(&[2.0, 2.0])).minus_term(j, diag(&[1.0, 1.0])), ConeKind::Background);
        let m = psd_margin(&sys, 2).unwrap();
        assert_eq!(m.verdict, Verdict::Yes);
        assert!(m.lower > 0.0);
    }

    #[test]
    fn indefinite_is_rejected() {
        let mut sys = ConicSystem::new();
        sys.require(Affine::constant(diag(&[-1.0, 3.0])), ConeKind::Background);
        let m = psd_margin(&sys, 2).unwrap();
        assert_eq!(m.verdict, Verdict::No);
        assert!((m.upper + 1.0 / 3.0).abs() < 1e-12, "margin is reported on the unit-scaled constraint");
    }

    #[test]
    fn cone_sum_membership_needs_cuts() {
        // Pauli X is indefinite, but X - λG with G = X - I equals I at λ = 1.
        let a = CMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        let g = a.sub(&CMatrix::identity(2));
        let mut sys = ConicSystem::new();
        let j = sys.add_unknown(VarKind::NonNeg);
        sys.require(Affine::constant(a.coords()).minus_term(j, g.coords()), ConeKind::Background);
        assert_eq!(psd_margin(&sys, 2).unwrap().verdict, Verdict::Yes);
    }
}
