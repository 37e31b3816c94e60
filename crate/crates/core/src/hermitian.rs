//! Dense complex matrices, Hermitian eigendecomposition by cyclic Jacobi,
//! and the isometric real coordinates of the Hermitian operators.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Entrywise tolerance for accepting input as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Frobenius tolerance for `P² = P`.
pub const PROJECTOR_TOL: f64 = 1e-10;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            data.extend(r);
        }
        Ok(CMatrix { n, data })
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, C64::new(v, 0.0));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        CMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `P A P`
    pub fn compress(&self, p: &Self) -> Self {
        p.mul(self).mul(p)
    }

    /// `(A + A*) / 2`
    pub fn hermitian_part(&self) -> Self {
        self.add(&self.adjoint()).scale(0.5)
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Fails with the first offending entry when `A ≠ A*` beyond `tol`.
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        for i in 0..self.n {
            for j in i..self.n {
                let gap = (self.get(i, j) - self.get(j, i).conj()).norm();
                if gap > tol || !gap.is_finite() {
                    return Err(Error::NotHermitian { row: i, col: j, gap });
                }
            }
        }
        Ok(())
    }

    /// Real coordinates: diagonal entries, then `√2·Re a_ij`, then `√2·Im a_ij` for `i < j`.
    /// The map is an isometry from the Frobenius inner product to the dot product.
    pub fn coords(&self) -> Vec<f64> {
        let n = self.n;
        let mut v: Vec<f64> = (0..n).map(|i| self.get(i, i).re).collect();
        for i in 0..n {
            for j in i + 1..n {
                v.push(SQRT2 * self.get(i, j).re);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                v.push(SQRT2 * self.get(i, j).im);
            }
        }
        v
    }

    pub fn from_coords(n: usize, v: &[f64]) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: v.len() });
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, C64::new(v[i], 0.0));
        }
        let pairs = n * (n - 1) / 2;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let z = C64::new(v[n + k], v[n + pairs + k]) / SQRT2;
                m.set(i, j, z);
                m.set(j, i, z.conj());
                k += 1;
            }
        }
        Ok(m)
    }

    /// Eigenvalues in ascending order and the unitary whose columns are the
    /// matching eigenvectors.
    pub fn eigh(&self) -> Result<(Vec<f64>, CMatrix)> {
        self.check_hermitian(HERMITIAN_TOL.max(1e-12 * self.frobenius()))?;
        Ok(jacobi(&self.hermitian_part()))
    }

    pub fn min_eigen(&self) -> Result<(f64, Vec<C64>)> {
        let (vals, vecs) = self.eigh()?;
        Ok((vals[0], vecs.column(0)))
    }
}

/// `v v*`
pub fn outer(v: &[C64]) -> CMatrix {
    let n = v.len();
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, v[i] * v[j].conj());
        }
    }
    m
}

pub fn vdot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Gram–Schmidt (twice) keeping vectors whose residual norm exceeds `tol`.
pub fn orthonormalize(vectors: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = vdot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > tol {
            basis.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// Orthogonal projector onto the span of `vectors`.
pub fn projector_onto(n: usize, vectors: &[Vec<C64>]) -> CMatrix {
    orthonormalize(vectors, 1e-10).iter().fold(CMatrix::zeros(n), |acc, q| acc.add(&outer(q)))
}

/// Validate `P` as an orthogonal projector and snap it to the exact projector
/// onto its eigenvectors with eigenvalue at least one half.
pub fn normalize_projector(p: &CMatrix) -> Result<CMatrix> {
    p.check_hermitian(HERMITIAN_TOL)?;
    let drift = p.mul(p).sub(p).frobenius();
    if drift > PROJECTOR_TOL {
        return Err(Error::NotProjector(drift));
    }
    Ok(projector_onto(p.n(), &range_basis(p)))
}

/// Orthonormal basis of the range of a projector (eigenvalues ≥ 1/2).
pub fn range_basis(p: &CMatrix) -> Vec<Vec<C64>> {
    let (vals, vecs) = jacobi(&p.hermitian_part());
    vals.iter().enumerate().filter(|(_, &l)| l >= 0.5).map(|(j, _)| vecs.column(j)).collect()
}

fn jacobi(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.n();
    let mut a = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let beta = a.get(p, q);
                let mag = beta.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let alpha = a.get(p, p).re;
                let gamma = a.get(q, q).re;
                let phase = beta / mag;
                let theta = (gamma - alpha) / (2.0 * mag);
                let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = [[c, s], [-s·conj(phase), c·conj(phase)]] on columns p, q.
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * g_pp + akq * g_qp);
                    a.set(k, q, akp * g_pq + akq * g_qq);
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * g_pp + vkq * g_qp);
                    v.set(k, q, vkp * g_pq + vkq * g_qq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, g_pp.conj() * apk + g_qp.conj() * aqk);
                    a.set(q, k, g_pq.conj() * apk + g_qq.conj() * aqk);
                }
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));
                a.set(p, p, C64::new(a.get(p, p).re, 0.0));
                a.set(q, q, C64::new(a.get(q, q).re, 0.0));
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let vals = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut sorted = CMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            sorted.set(k, new, v.get(k, old));
        }
    }
    (vals, sorted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn reconstruct(vals: &[f64], q: &CMatrix) -> CMatrix {
        q.mul(&CMatrix::from_real_diag(vals)).mul(&q.adjoint())
    }

    #[test]
    fn diagonal_spectrum() {
        let (vals, _) = CMatrix::from_real_diag(&[3.0, 1.0]).eigh().unwrap();
        assert_eq!(vals, vec![1.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let a = CMatrix::from_rows(vec![vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap();
        let (vals, q) = a.eigh().unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        assert!(reconstruct(&vals, &q).sub(&a).frobenius() < 1e-12);
    }

    #[test]
    fn complex_entries_reconstruct() {
        let a = CMatrix::from_rows(vec![
            vec![c(2., 0.), c(1., -2.), c(0., 1.)],
            vec![c(1., 2.), c(-1., 0.), c(3., 0.5)],
            vec![c(0., -1.), c(3., -0.5), c(0.5, 0.)],
        ])
        .unwrap();
        let (vals, q) = a.eigh().unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!(reconstruct(&vals, &q).sub(&a).frobenius() < 1e-11);
        assert!(q.adjoint().mul(&q).sub(&CMatrix::identity(3)).frobenius() < 1e-11);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let a = CMatrix::from_rows(vec![vec![c(0., 0.), c(1., 0.)], vec![c(2., 0.), c(0., 0.)]]).unwrap();
        assert!(matches!(a.eigh(), Err(Error::NotHermitian { row: 0, col: 1, .. })));
    }

    #[test]
    fn coordinates_are_isometric() {
        let a = CMatrix::from_rows(vec![vec![c(1., 0.), c(2., -1.)], vec![c(2., 1.), c(-3., 0.)]]).unwrap();
        let v = a.coords();
        let norm_sq: f64 = v.iter().map(|x| x * x).sum();
        assert!((norm_sq - a.frobenius().powi(2)).abs() < 1e-12);
        assert!(CMatrix::from_coords(2, &v).unwrap().sub(&a).frobenius() < 1e-14);
        let id = CMatrix::identity(2).coords();
        assert_eq!(id.iter().filter(|x| **x != 0.0).count(), 2);
    }

    #[test]
    fn projector_snapping() {
        let v = vec![c(1., 0.), c(1., 0.)];
        let p = projector_onto(2, &[v]);
        let noisy = p.add(&CMatrix::identity(2).scale(1e-13));
        let snapped = normalize_projector(&noisy).unwrap();
        assert!(snapped.sub(&p).frobenius() < 1e-14);
        assert!(normalize_projector(&CMatrix::identity(2).scale(0.9)).is_err());
    }
}
