//! Dense vector and row-echelon helpers over any [`Scalar`].

use crate::scalar::Scalar;

pub type CoordVec<S> = Vec<S>;

pub fn zeros<S: Scalar>(d: usize) -> Vec<S> {
    vec![S::zero(); d]
}

pub fn unit<S: Scalar>(d: usize, i: usize) -> Vec<S> {
    let mut v = zeros(d);
    v[i] = S::one();
    v
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn neg<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -x.clone()).collect()
}

/// `a + s * b`
pub fn axpy<S: Scalar>(a: &[S], s: &S, b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + s.clone() * y.clone()).collect()
}

pub fn is_zero_vec<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(|x| x.is_negligible())
}

pub fn norm_sq<S: Scalar>(a: &[S]) -> S {
    dot(a, a)
}

pub fn mat_vec<S: Scalar>(rows: &[Vec<S>], x: &[S]) -> Vec<S> {
    rows.iter().map(|r| dot(r, x)).collect()
}

pub fn transpose<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], bcols: usize) -> Vec<Vec<S>> {
    let bt = transpose(b, bcols);
    a.iter().map(|r| bt.iter().map(|c| dot(r, c)).collect()).collect()
}

pub fn identity<S: Scalar>(d: usize) -> Vec<Vec<S>> {
    (0..d).map(|i| unit(d, i)).collect()
}

/// Vectors equal up to the scalar tolerance.
pub fn vec_eq<S: Scalar>(a: &[S], b: &[S]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).is_negligible())
}

/// Positive rescaling so that the largest-magnitude entry has absolute value one.
/// Used to canonicalize rays; the zero vector is returned unchanged.
pub fn normalize_ray<S: Scalar>(v: &[S]) -> Vec<S> {
    let mut best = S::zero();
    for x in v {
        if x.abs() > best {
            best = x.abs();
        }
    }
    if best.is_negligible() {
        return v.to_vec();
    }
    v.iter().map(|x| x.clone() / best.clone()).collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        let mut pick: Option<usize> = None;
        for i in r..m.len() {
            if m[i][c].is_negligible() {
                continue;
            }
            match pick {
                None => pick = Some(i),
                Some(p) if !S::EXACT && m[i][c].abs() > m[p][c].abs() => pick = Some(i),
                _ => {}
            }
            if S::EXACT {
                break;
            }
        }
        let Some(p) = pick else { continue };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        m[r][c] = S::one();
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..ncols {
                let v = m[r][j].clone();
                m[i][j] = m[i][j].clone() - f.clone() * v;
            }
            m[i][c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    if !S::EXACT {
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                if x.is_negligible() {
                    *x = S::zero();
                }
            }
        }
    }
    (m, pivots)
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row · x = 0 for all rows}`.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(ncols);
            v[f] = S::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}
