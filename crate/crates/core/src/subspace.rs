//! Linear subspaces of the coordinate space, stored in reduced echelon form.

use crate::error::{Error, Result};
use crate::linalg::{self, CoordVec};
use crate::scalar::Scalar;

/// A linear subspace of `S^dim`. The basis is kept in reduced row echelon
/// form, so two equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S: Scalar> {
    dim: usize,
    basis: Vec<CoordVec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::span(dim, &linalg::identity(dim)).expect("identity has ambient length")
    }

    pub fn span(dim: usize, vectors: &[CoordVec<S>]) -> Result<Self> {
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        let (basis, pivots) = linalg::rref(vectors, dim);
        Ok(Subspace { dim, basis, pivots })
    }

    /// `{x : a · x = 0 for every a in annihilators}`.
    pub fn from_annihilators(dim: usize, annihilators: &[CoordVec<S>]) -> Result<Self> {
        for v in annihilators {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        Self::span(dim, &linalg::nullspace(annihilators, dim))
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CoordVec<S>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// Basis of the orthogonal complement under the coordinate inner product.
    pub fn annihilator(&self) -> Vec<CoordVec<S>> {
        linalg::nullspace(&self.basis, self.dim)
    }

    pub fn orthogonal_complement(&self) -> Self {
        Self::span(self.dim, &self.annihilator()).expect("same ambient")
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.dim, &all)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut ann = self.annihilator();
        ann.extend(other.annihilator());
        Self::from_annihilators(self.dim, &ann)
    }

    /// Residual of `v` after eliminating along the echelon basis.
    fn reduce(&self, v: &[S]) -> CoordVec<S> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            r = linalg::axpy(&r, &-f, b);
        }
        r
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        if S::EXACT {
            linalg::is_zero_vec(&self.reduce(v))
        } else {
            // Rank test is scale-aware in float mode.
            let mut rows = self.basis.clone();
            rows.push(v.to_vec());
            linalg::rank(&rows, self.dim) == self.basis.len()
        }
    }

    pub fn includes(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis.iter().all(|b| self.contains(b)))
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.includes(other)? && other.includes(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn sum_of_axes() {
        let a = Subspace::span(3, &[q(&[1, 0, 0])]).unwrap();
        let b = Subspace::span(3, &[q(&[0, 0, 1])]).unwrap();
        assert_eq!(a.sum(&b).unwrap().dimension(), 2);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = Subspace::span(3, &[q(&[1, 0, 0]), q(&[0, 0, 1])]).unwrap();
        let b = Subspace::span(3, &[q(&[1, 0, 0]), q(&[0, 1, 0])]).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, Subspace::span(3, &[q(&[1, 0, 0])]).unwrap());
    }

    #[test]
    fn kernel_sum_example() {
        // kernels of {a,b} and {b,c} over {a,b,c}
        let k1 = Subspace::span(3, &[q(&[0, 0, 1])]).unwrap();
        let k2 = Subspace::span(3, &[q(&[1, 0, 0])]).unwrap();
        let expected = Subspace::from_annihilators(3, &[q(&[0, 1, 0])]).unwrap();
        assert!(k1.sum(&k2).unwrap().equals(&expected).unwrap());
    }

    #[test]
    fn mismatched_dimensions() {
        let a = Subspace::<Rational>::zero(2);
        let b = Subspace::<Rational>::zero(3);
        assert!(a.sum(&b).is_err());
        assert!(Subspace::span(2, &[q(&[1, 2, 3])]).is_err());
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span(3, &[q(&[1, 1, 0]), q(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[q(&[1, 2, 1]), q(&[1, 0, -1])]).unwrap();
        assert_eq!(a, b);
    }
}
