//! Polyhedral cones in generator (V) and halfspace (H) form, with
//! double-description conversion between the two.

use crate::error::{Error, Result};
use crate::linalg::{self, CoordVec};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    VToH,
    HToV,
}

/// Closed polyhedral cone. `generators` spans the cone by nonnegative
/// combinations; each halfspace row `h` means `<h, x> >= 0`.
#[derive(Clone, Debug)]
pub struct PolyCone<S: Scalar> {
    dim: usize,
    generators: Option<Vec<CoordVec<S>>>,
    halfspaces: Option<Vec<CoordVec<S>>>,
}

impl<S: Scalar> PolyCone<S> {
    pub fn from_generators(dim: usize, generators: Vec<CoordVec<S>>) -> Result<Self> {
        check_len(dim, &generators)?;
        Ok(PolyCone { dim, generators: Some(generators), halfspaces: None })
    }

    pub fn from_halfspaces(dim: usize, halfspaces: Vec<CoordVec<S>>) -> Result<Self> {
        check_len(dim, &halfspaces)?;
        Ok(PolyCone { dim, generators: None, halfspaces: Some(halfspaces) })
    }

    /// `{x : x >= 0}`.
    pub fn orthant(dim: usize) -> Self {
        let basis = linalg::identity(dim);
        PolyCone { dim, generators: Some(basis.clone()), halfspaces: Some(basis) }
    }

    pub fn whole(dim: usize) -> Self {
        PolyCone { dim, generators: Some(plus_minus(&linalg::identity(dim))), halfspaces: Some(Vec::new()) }
    }

    pub fn origin(dim: usize) -> Self {
        PolyCone { dim, generators: Some(Vec::new()), halfspaces: Some(plus_minus(&linalg::identity(dim))) }
    }

    pub fn from_subspace(s: &Subspace<S>) -> Self {
        PolyCone {
            dim: s.ambient(),
            generators: Some(plus_minus(s.basis())),
            halfspaces: Some(plus_minus(&s.annihilator())),
        }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Convert in the given direction; the result carries both representations.
    pub fn dd_convert(&self, direction: Direction) -> Result<Self> {
        match direction {
            Direction::VToH => {
                let g = self
                    .generators
                    .as_ref()
                    .ok_or_else(|| Error::Input("V-representation missing".into()))?;
                let h = dual_generators(self.dim, g);
                Ok(PolyCone { dim: self.dim, generators: Some(g.clone()), halfspaces: Some(h) })
            }
            Direction::HToV => {
                let h = self
                    .halfspaces
                    .as_ref()
                    .ok_or_else(|| Error::Input("H-representation missing".into()))?;
                let g = dual_generators(self.dim, h);
                Ok(PolyCone { dim: self.dim, generators: Some(g), halfspaces: Some(h.clone()) })
            }
        }
    }

    /// Both representations present.
    pub fn complete(&self) -> Self {
        match (&self.generators, &self.halfspaces) {
            (Some(_), Some(_)) => self.clone(),
            (Some(_), None) => self.dd_convert(Direction::VToH).expect("generators present"),
            (None, Some(_)) => self.dd_convert(Direction::HToV).expect("halfspaces present"),
            (None, None) => unreachable!("a cone always carries one representation"),
        }
    }

    pub fn generators(&self) -> Vec<CoordVec<S>> {
        match &self.generators {
            Some(g) => g.clone(),
            None => self.complete().generators.unwrap_or_default(),
        }
    }

    pub fn halfspaces(&self) -> Vec<CoordVec<S>> {
        match &self.halfspaces {
            Some(h) => h.clone(),
            None => self.complete().halfspaces.unwrap_or_default(),
        }
    }

    /// Canonical generating set: lineality basis in both signs, then extreme rays.
    pub fn minimal_generators(&self) -> Vec<CoordVec<S>> {
        dual_generators(self.dim, &self.halfspaces())
    }

    pub fn contains(&self, x: &[S]) -> bool {
        x.len() == self.dim && self.halfspaces().iter().all(|h| !linalg::dot(h, x).is_neg())
    }

    pub fn lineality(&self) -> Subspace<S> {
        Subspace::from_annihilators(self.dim, &self.halfspaces()).expect("same ambient")
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality().is_zero()
    }

    pub fn includes(&self, other: &Self) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.includes(other) && other.includes(self)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut h = self.halfspaces();
        h.extend(other.halfspaces());
        Ok(PolyCone::from_halfspaces(self.dim, h)?.complete())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut g = self.generators();
        g.extend(other.generators());
        Ok(PolyCone::from_generators(self.dim, g)?.complete())
    }

    /// `{x : map(x) ∈ self}` for a linear map given by its rows (`self.dim × dim_in`).
    pub fn pullback(&self, map_rows: &[CoordVec<S>], dim_in: usize) -> Result<Self> {
        if map_rows.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: map_rows.len() });
        }
        let t = linalg::transpose(map_rows, dim_in);
        let h = self.halfspaces().iter().map(|h| linalg::mat_vec(&t, h)).collect();
        Ok(PolyCone::from_halfspaces(dim_in, h)?.complete())
    }

    /// Intersection with a linear subspace.
    pub fn restrict(&self, s: &Subspace<S>) -> Result<Self> {
        self.intersect(&PolyCone::from_subspace(s))
    }
}

fn check_len<S: Scalar>(dim: usize, vs: &[CoordVec<S>]) -> Result<()> {
    for v in vs {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
    }
    Ok(())
}

fn plus_minus<S: Scalar>(vs: &[CoordVec<S>]) -> Vec<CoordVec<S>> {
    vs.iter().flat_map(|v| [v.clone(), linalg::neg(v)]).collect()
}

/// Generators of `{x : <a, x> >= 0 for every row a}` by incremental double
/// description. The lineality space is carried explicitly and factored out
/// whenever a new row cuts it; rays are combined only across adjacent pairs
/// (algebraic rank test).
pub fn dual_generators<S: Scalar>(dim: usize, rows: &[CoordVec<S>]) -> Vec<CoordVec<S>> {
    let mut lin: Vec<CoordVec<S>> = linalg::identity(dim);
    let mut rays: Vec<CoordVec<S>> = Vec::new();
    let mut processed: Vec<CoordVec<S>> = Vec::new();

    for h in rows {
        if linalg::is_zero_vec(h) {
            continue;
        }
        if let Some(k) = lin.iter().position(|l| !linalg::dot(h, l).is_negligible()) {
            let mut l0 = lin.swap_remove(k);
            let mut hl0 = linalg::dot(h, &l0);
            if hl0.is_neg() {
                l0 = linalg::neg(&l0);
                hl0 = -hl0;
            }
            let project = |v: &CoordVec<S>| {
                let f = linalg::dot(h, v) / hl0.clone();
                linalg::axpy(v, &-f, &l0)
            };
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(l0);
        } else {
            let target_rank = (dim - lin.len()).saturating_sub(2);
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            let mut next = Vec::new();
            for r in rays.drain(..) {
                let s = linalg::dot(h, &r);
                if s.is_pos() {
                    pos.push((r, s));
                } else if s.is_neg() {
                    neg.push((r, s));
                } else {
                    next.push(r);
                }
            }
            for (p, sp) in &pos {
                for (n, sn) in &neg {
                    let tight: Vec<CoordVec<S>> = processed
                        .iter()
                        .filter(|a| linalg::dot(a, p).is_negligible() && linalg::dot(a, n).is_negligible())
                        .cloned()
                        .collect();
                    if linalg::rank(&tight, dim) != target_rank {
                        continue;
                    }
                    let combo = linalg::sub(&linalg::scale(n, sp), &linalg::scale(p, sn));
                    next.push(linalg::normalize_ray(&combo));
                }
            }
            next.extend(pos.into_iter().map(|(r, _)| r));
            rays = next;
        }
        processed.push(h.clone());
    }

    let lin_space = Subspace::span(dim, &lin).expect("ambient");
    let (lin_rref, pivots) = linalg::rref(lin_space.basis(), dim);
    let mut out: Vec<CoordVec<S>> = plus_minus(lin_space.basis());
    let mut seen: Vec<CoordVec<S>> = Vec::new();
    for r in rays {
        let mut r = r;
        for (b, &p) in lin_rref.iter().zip(&pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                r = linalg::axpy(&r, &-f, b);
            }
        }
        if linalg::is_zero_vec(&r) {
            continue;
        }
        let r = linalg::normalize_ray(&r);
        if !seen.iter().any(|s| linalg::vec_eq(s, &r)) {
            seen.push(r.clone());
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn orthant_v_to_h() {
        let c = PolyCone::from_generators(2, vec![q(&[1, 0]), q(&[0, 1])]).unwrap();
        let h = c.dd_convert(Direction::VToH).unwrap().halfspaces();
        assert_eq!(h.len(), 2);
        assert!(h.contains(&q(&[1, 0])) && h.contains(&q(&[0, 1])));
    }

    #[test]
    fn orthant_h_to_v_round_trip() {
        let c = PolyCone::from_halfspaces(2, vec![q(&[1, 0]), q(&[0, 1])]).unwrap();
        let v = c.dd_convert(Direction::HToV).unwrap();
        let back = PolyCone::from_generators(2, v.generators()).unwrap();
        assert!(back.equals(&PolyCone::orthant(2)));
    }

    #[test]
    fn single_halfspace_has_two_lineality_directions() {
        let h = vec![vec![Rational::ratio(1, 2), Rational::ratio(1, 3), Rational::ratio(1, 6)]];
        let c = PolyCone::from_halfspaces(3, h.clone()).unwrap().complete();
        assert_eq!(c.lineality().dimension(), 2);
        let g = c.generators();
        // two lineality directions in both signs plus one ray
        assert_eq!(g.len(), 5);
        for v in &g {
            assert!(!linalg::dot(&h[0], v).is_neg());
        }
    }

    #[test]
    fn degenerate_cone_with_implicit_equality() {
        let c = PolyCone::from_halfspaces(3, vec![q(&[1, 0, 0]), q(&[-1, 0, 0]), q(&[0, 1, 0])]).unwrap();
        let g = c.minimal_generators();
        let back = PolyCone::from_generators(3, g).unwrap();
        assert!(back.equals(&c.complete()));
        assert_eq!(c.lineality().dimension(), 1);
    }

    #[test]
    fn pullback_through_indicator() {
        // cone{e_a, e_b, (-1,2)} pulled back through f -> 1_{a} f
        let c = PolyCone::from_generators(2, vec![q(&[1, 0]), q(&[0, 1]), q(&[-1, 2])]).unwrap();
        let m = vec![q(&[1, 0]), q(&[0, 0])];
        let p = c.pullback(&m, 2).unwrap();
        let expected = PolyCone::from_halfspaces(2, vec![q(&[1, 0])]).unwrap();
        assert!(p.equals(&expected.complete()));
    }
}
