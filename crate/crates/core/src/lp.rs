//! Dense two-phase simplex with Bland's pivot rule, generic over [`Scalar`].
//!
//! Exact over rationals; over floats every sign decision goes through
//! [`Scalar::is_negligible`]. Infeasible systems come back with a Farkas
//! multiplier vector that can be checked independently with
//! [`LinearProgram::verify_farkas`].

use crate::linalg;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    NonNeg,
    Free,
}

#[derive(Clone, Debug)]
pub struct LinearProgram<S: Scalar> {
    kinds: Vec<VarKind>,
    eq: Vec<(Vec<S>, S)>,
    ge: Vec<(Vec<S>, S)>,
    objective: Option<Vec<S>>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome<S: Scalar> {
    /// Optimal (or merely feasible when no objective was given).
    Optimal { x: Vec<S>, value: S },
    /// Multipliers `y` over `[eq rows.., ge rows..]` with `y_ge >= 0`,
    /// `yᵀA <= 0` on nonnegative columns, `= 0` on free ones, and `yᵀb > 0`.
    Infeasible { farkas: Vec<S> },
    Unbounded { x: Vec<S> },
}

impl<S: Scalar> LpOutcome<S> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(kinds: Vec<VarKind>) -> Self {
        LinearProgram { kinds, eq: Vec::new(), ge: Vec::new(), objective: None }
    }

    pub fn nonneg(n: usize) -> Self {
        Self::new(vec![VarKind::NonNeg; n])
    }

    pub fn num_vars(&self) -> usize {
        self.kinds.len()
    }

    pub fn add_var(&mut self, kind: VarKind) -> usize {
        self.kinds.push(kind);
        for (a, _) in self.eq.iter_mut().chain(self.ge.iter_mut()) {
            a.push(S::zero());
        }
        if let Some(c) = self.objective.as_mut() {
            c.push(S::zero());
        }
        self.kinds.len() - 1
    }

    pub fn add_eq(&mut self, a: Vec<S>, b: S) {
        assert_eq!(a.len(), self.kinds.len());
        self.eq.push((a, b));
    }

    pub fn add_ge(&mut self, a: Vec<S>, b: S) {
        assert_eq!(a.len(), self.kinds.len());
        self.ge.push((a, b));
    }

    pub fn add_le(&mut self, a: Vec<S>, b: S) {
        self.add_ge(linalg::neg(&a), -b);
    }

    /// Maximize `c · x`.
    pub fn maximize(&mut self, c: Vec<S>) {
        assert_eq!(c.len(), self.kinds.len());
        self.objective = Some(c);
    }

    pub fn rows(&self) -> impl Iterator<Item = &(Vec<S>, S)> {
        self.eq.iter().chain(self.ge.iter())
    }

    /// Independent check of an infeasibility certificate against the original data.
    pub fn verify_farkas(&self, y: &[S]) -> bool {
        let m = self.eq.len() + self.ge.len();
        if y.len() != m {
            return false;
        }
        if y[self.eq.len()..].iter().any(|v| v.is_neg()) {
            return false;
        }
        let mut yb = S::zero();
        let mut ya = linalg::zeros::<S>(self.kinds.len());
        for (yi, (a, b)) in y.iter().zip(self.rows()) {
            yb = yb + yi.clone() * b.clone();
            ya = linalg::axpy(&ya, yi, a);
        }
        if !yb.is_pos() {
            return false;
        }
        ya.iter().zip(&self.kinds).all(|(v, k)| match k {
            VarKind::NonNeg => !v.is_pos(),
            VarKind::Free => v.is_negligible(),
        })
    }

    /// Check that `x` satisfies every constraint.
    pub fn is_satisfied(&self, x: &[S]) -> bool {
        if x.len() != self.kinds.len() {
            return false;
        }
        let signs = x.iter().zip(&self.kinds).all(|(v, k)| *k == VarKind::Free || !v.is_neg());
        signs
            && self.eq.iter().all(|(a, b)| (linalg::dot(a, x) - b.clone()).is_negligible())
            && self.ge.iter().all(|(a, b)| !(linalg::dot(a, x) - b.clone()).is_neg())
    }

    pub fn solve(&self) -> LpOutcome<S> {
        Tableau::build(self).run(self)
    }
}

/// Standard-form tableau: columns are split variables, slacks, artificials.
struct Tableau<S: Scalar> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    basis: Vec<usize>,
    /// original variable j -> (positive column, optional negative column)
    var_cols: Vec<(usize, Option<usize>)>,
    /// row sign flips applied to make rhs nonnegative
    flips: Vec<bool>,
    n_struct: usize,
    n_cols: usize,
    alive: Vec<bool>,
}

impl<S: Scalar> Tableau<S> {
    fn build(lp: &LinearProgram<S>) -> Self {
        let m_eq = lp.eq.len();
        let m = m_eq + lp.ge.len();
        let mut var_cols = Vec::new();
        let mut col = 0;
        for k in &lp.kinds {
            match k {
                VarKind::NonNeg => {
                    var_cols.push((col, None));
                    col += 1;
                }
                VarKind::Free => {
                    var_cols.push((col, Some(col + 1)));
                    col += 2;
                }
            }
        }
        let slack0 = col;
        let n_struct = slack0 + lp.ge.len();
        let n_cols = n_struct + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut flips = Vec::with_capacity(m);
        for (i, (a, b)) in lp.rows().enumerate() {
            let mut row = linalg::zeros::<S>(n_cols);
            for (j, (p, n)) in var_cols.iter().enumerate() {
                row[*p] = a[j].clone();
                if let Some(n) = n {
                    row[*n] = -a[j].clone();
                }
            }
            if i >= m_eq {
                row[slack0 + i - m_eq] = -S::one();
            }
            let flip = b.is_negative();
            let mut b = b.clone();
            if flip {
                row = linalg::neg(&row);
                b = -b;
            }
            row[n_struct + i] = S::one();
            rows.push(row);
            rhs.push(b);
            flips.push(flip);
        }
        Tableau {
            rows,
            rhs,
            basis: (0..m).map(|i| n_struct + i).collect(),
            var_cols,
            flips,
            n_struct,
            n_cols,
            alive: vec![true; m],
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = S::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rhs[r] = self.rhs[r].clone() * inv;
        self.rows[r][c] = S::one();
        for i in 0..self.rows.len() {
            if i == r || !self.alive[i] || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.n_cols {
                if self.rows[r][j].is_zero() {
                    continue;
                }
                let v = self.rows[r][j].clone();
                self.rows[i][j] = self.rows[i][j].clone() - f.clone() * v;
            }
            self.rows[i][c] = S::zero();
            self.rhs[i] = self.rhs[i].clone() - f * self.rhs[r].clone();
            if !S::EXACT && self.rhs[i].is_negligible() {
                self.rhs[i] = S::zero();
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs for minimizing `cost` over the allowed columns.
    fn reduced_costs(&self, cost: &[S]) -> Vec<S> {
        let mut d = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            if !self.alive[i] {
                continue;
            }
            let cb = cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.n_cols {
                d[j] = d[j].clone() - cb.clone() * row[j].clone();
            }
        }
        d
    }

    /// Minimize `cost` with Bland's rule. Returns false on unboundedness
    /// (leaving the entering column in `unbounded_col`).
    fn simplex(&mut self, cost: &[S], allowed: usize) -> Result<(), usize> {
        loop {
            let d = self.reduced_costs(cost);
            let entering = (0..allowed).find(|&j| d[j].is_neg() && !self.basis.contains(&j));
            let Some(c) = entering else { return Ok(()) };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                if !self.alive[i] || !self.rows[i][c].is_pos() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / self.rows[i][c].clone();
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        let diff = ratio.clone() - lr.clone();
                        if diff.is_neg() || (diff.is_negligible() && self.basis[i] < self.basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(c),
            }
        }
    }

    fn extract(&self) -> Vec<S> {
        let mut z = linalg::zeros::<S>(self.n_cols);
        for (i, &b) in self.basis.iter().enumerate() {
            if self.alive[i] {
                z[b] = self.rhs[i].clone();
            }
        }
        self.var_cols
            .iter()
            .map(|(p, n)| match n {
                Some(n) => z[*p].clone() - z[*n].clone(),
                None => z[*p].clone(),
            })
            .collect()
    }

    fn run(mut self, lp: &LinearProgram<S>) -> LpOutcome<S> {
        let m = self.rows.len();
        let mut phase1 = linalg::zeros::<S>(self.n_cols);
        for i in 0..m {
            phase1[self.n_struct + i] = S::one();
        }
        // Phase I never reports unboundedness: the objective is bounded below by zero.
        let _ = self.simplex(&phase1, self.n_cols);
        let infeas = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= self.n_struct)
            .fold(S::zero(), |acc, (i, _)| acc + self.rhs[i].clone());
        if infeas.is_pos() {
            let d = self.reduced_costs(&phase1);
            let farkas = (0..m)
                .map(|i| {
                    let y = S::one() - d[self.n_struct + i].clone();
                    if self.flips[i] {
                        -y
                    } else {
                        y
                    }
                })
                .collect();
            return LpOutcome::Infeasible { farkas };
        }
        // Drive zero-level artificials out of the basis, dropping redundant rows.
        for i in 0..m {
            if self.basis[i] < self.n_struct {
                continue;
            }
            match (0..self.n_struct).find(|&j| !self.rows[i][j].is_negligible()) {
                Some(j) => self.pivot(i, j),
                None => self.alive[i] = false,
            }
        }
        let Some(c) = lp.objective.as_ref() else {
            return LpOutcome::Optimal { x: self.extract(), value: S::zero() };
        };
        let mut cost = linalg::zeros::<S>(self.n_cols);
        for (j, (p, n)) in self.var_cols.iter().enumerate() {
            cost[*p] = -c[j].clone();
            if let Some(n) = n {
                cost[*n] = c[j].clone();
            }
        }
        match self.simplex(&cost, self.n_struct) {
            Ok(()) => {
                let x = self.extract();
                let value = linalg::dot(c, &x);
                LpOutcome::Optimal { x, value }
            }
            Err(_) => LpOutcome::Unbounded { x: self.extract() },
        }
    }
}
