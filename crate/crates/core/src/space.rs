//! Option spaces: gambles on a finite possibility space and Hermitian
//! operators on a finite-dimensional Hilbert space.
//!
//! Both are handled through real coordinates of ambient dimension `d`
//! (`|Ω|` or `n²`). Events act on coordinates as linear idempotent maps.

use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::conic::{lp_feasible, ConicSystem, Verdict};
use crate::error::{Error, Result};
use crate::hermitian::{self, CMatrix};
use crate::linalg::{self, CoordVec};
use crate::psd;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::Rational;

/// Weak-ordering tolerance on the smallest eigenvalue.
pub const QUANTUM_WEAK_TOL: f64 = 1e-10;
/// Frobenius tolerance for projector equality.
pub const EVENT_EQ_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceDescriptor {
    Classical { atoms: Vec<String> },
    Quantum { dim: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventClass {
    Regular,
    Proper,
    Improper,
}

pub trait OptionSpace: Clone + Debug + Send + Sync + 'static {
    type Scalar: Scalar;
    type Event: Clone + Debug + Send + Sync;

    fn descriptor(&self) -> SpaceDescriptor;
    /// Ambient coordinate dimension.
    fn dim(&self) -> usize;
    fn unit_option(&self) -> CoordVec<Self::Scalar>;

    fn background_weak(&self, u: &[Self::Scalar]) -> bool;
    fn background_strict(&self, u: &[Self::Scalar]) -> bool {
        !linalg::is_zero_vec(u) && self.background_weak(u)
    }
    /// Smallest `α ≥ 0` with `u + α·1 ⪰ 0`.
    fn archimedean_bound(&self, u: &[Self::Scalar]) -> Self::Scalar;
    /// Finite generators of the background cone, when it is polyhedral.
    fn background_generators(&self) -> Option<Vec<CoordVec<Self::Scalar>>>;

    fn unit_event(&self) -> Self::Event;
    fn null_event(&self) -> Self::Event;
    fn call_off(&self, e: &Self::Event, u: &[Self::Scalar]) -> CoordVec<Self::Scalar>;
    /// Matrix of `u ↦ e∗u` in coordinates, as rows.
    fn calloff_matrix(&self, e: &Self::Event) -> Vec<CoordVec<Self::Scalar>>;
    fn kernel(&self, e: &Self::Event) -> Subspace<Self::Scalar>;
    fn complement(&self, e: &Self::Event) -> Self::Event;
    fn meet(&self, e1: &Self::Event, e2: &Self::Event) -> Self::Event;
    fn event_eq(&self, e1: &Self::Event, e2: &Self::Event) -> bool;
    /// The event whose kernel is `k`, if any.
    fn event_from_kernel(&self, k: &Subspace<Self::Scalar>) -> Result<Self::Event>;
    /// Split `f ∈ I_{e1 ⊓ e2}` into `f1 ∈ I_{e1}` and `f2 ∈ I_{e2}` with `f1 + f2 = f`.
    fn kernel_sum_decompose(
        &self,
        e1: &Self::Event,
        e2: &Self::Event,
        f: &[Self::Scalar],
    ) -> Result<(CoordVec<Self::Scalar>, CoordVec<Self::Scalar>)>;

    /// Feasibility of a conic system whose background cone is this space's.
    fn decide(&self, sys: &ConicSystem<Self::Scalar>) -> Result<Verdict>;

    /// `e1 ⊑ e2`, decided by kernel inclusion `I_{e2} ⊆ I_{e1}`.
    fn order_leq(&self, e1: &Self::Event, e2: &Self::Event) -> bool {
        self.kernel(e1).includes(&self.kernel(e2)).expect("same ambient")
    }

    fn classify(&self, e: &Self::Event) -> EventClass {
        if self.event_eq(e, &self.null_event()) {
            EventClass::Improper
        } else if self.event_eq(e, &self.unit_event()) {
            EventClass::Regular
        } else {
            EventClass::Proper
        }
    }

    fn check_option(&self, u: &[Self::Scalar]) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.len() });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSpace {
    atoms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalEvent {
    mask: Vec<bool>,
}

impl ClassicalEvent {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        ClassicalEvent { mask }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn size(&self) -> usize {
        self.mask.iter().filter(|b| **b).count()
    }
}

impl ClassicalSpace {
    pub fn new(atoms: Vec<String>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Input("a possibility space needs at least one atom".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for a in &atoms {
            if !seen.insert(a) {
                return Err(Error::Input(format!("duplicate atom '{a}'")));
            }
        }
        Ok(ClassicalSpace { atoms })
    }

    /// Atoms named `a`, `b`, `c`, …
    pub fn with_size(k: usize) -> Result<Self> {
        Self::new((0..k).map(atom_name).collect())
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Result<usize> {
        self.atoms
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::Input(format!("unknown atom '{name}'")))
    }

    pub fn event(&self, members: &[&str]) -> Result<ClassicalEvent> {
        let mut mask = vec![false; self.atoms.len()];
        for m in members {
            mask[self.atom_index(m)?] = true;
        }
        Ok(ClassicalEvent { mask })
    }

    pub fn event_members(&self, e: &ClassicalEvent) -> Vec<String> {
        self.atoms.iter().zip(&e.mask).filter(|(_, b)| **b).map(|(a, _)| a.clone()).collect()
    }

    /// All `2^|Ω|` events.
    pub fn all_events(&self) -> Vec<ClassicalEvent> {
        let k = self.atoms.len();
        (0..1usize << k).map(|bits| ClassicalEvent { mask: (0..k).map(|i| bits >> i & 1 == 1).collect() }).collect()
    }
}

fn atom_name(i: usize) -> String {
    let letters = "abcdefghijklmnopqrstuvwxyz".as_bytes();
    if i < 26 {
        (letters[i] as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl OptionSpace for ClassicalSpace {
    type Scalar = Rational;
    type Event = ClassicalEvent;

    fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor::Classical { atoms: self.atoms.clone() }
    }

    fn dim(&self) -> usize {
        self.atoms.len()
    }

    fn unit_option(&self) -> Vec<Rational> {
        vec![Rational::one(); self.dim()]
    }

    fn background_weak(&self, u: &[Rational]) -> bool {
        u.iter().all(|x| !x.is_neg())
    }

    fn archimedean_bound(&self, u: &[Rational]) -> Rational {
        let min = u.iter().cloned().fold(Rational::zero(), |m, x| if x < m { x } else { m });
        -min
    }

    fn background_generators(&self) -> Option<Vec<Vec<Rational>>> {
        Some(linalg::identity(self.dim()))
    }

    fn unit_event(&self) -> ClassicalEvent {
        ClassicalEvent { mask: vec![true; self.dim()] }
    }

    fn null_event(&self) -> ClassicalEvent {
        ClassicalEvent { mask: vec![false; self.dim()] }
    }

    fn call_off(&self, e: &ClassicalEvent, u: &[Rational]) -> Vec<Rational> {
        u.iter().zip(&e.mask).map(|(x, &m)| if m { x.clone() } else { Rational::zero() }).collect()
    }

    fn calloff_matrix(&self, e: &ClassicalEvent) -> Vec<Vec<Rational>> {
        let d = self.dim();
        (0..d).map(|i| if e.mask[i] { linalg::unit(d, i) } else { linalg::zeros(d) }).collect()
    }

    fn kernel(&self, e: &ClassicalEvent) -> Subspace<Rational> {
        let d = self.dim();
        let basis: Vec<_> = (0..d).filter(|&i| !e.mask[i]).map(|i| linalg::unit(d, i)).collect();
        Subspace::span(d, &basis).expect("ambient")
    }

    fn complement(&self, e: &ClassicalEvent) -> ClassicalEvent {
        ClassicalEvent { mask: e.mask.iter().map(|b| !b).collect() }
    }

    fn meet(&self, e1: &ClassicalEvent, e2: &ClassicalEvent) -> ClassicalEvent {
        ClassicalEvent { mask: e1.mask.iter().zip(&e2.mask).map(|(a, b)| *a && *b).collect() }
    }

    fn event_eq(&self, e1: &ClassicalEvent, e2: &ClassicalEvent) -> bool {
        e1 == e2
    }

    fn event_from_kernel(&self, k: &Subspace<Rational>) -> Result<ClassicalEvent> {
        let d = self.dim();
        let e = ClassicalEvent { mask: (0..d).map(|i| !k.contains(&linalg::unit(d, i))).collect() };
        if self.kernel(&e).equals(k)? {
            Ok(e)
        } else {
            Err(Error::Precondition("subspace is not the kernel of an event".into()))
        }
    }

    fn kernel_sum_decompose(
        &self,
        e1: &ClassicalEvent,
        e2: &ClassicalEvent,
        f: &[Rational],
    ) -> Result<(Vec<Rational>, Vec<Rational>)> {
        self.check_option(f)?;
        let m = self.meet(e1, e2);
        if !linalg::is_zero_vec(&self.call_off(&m, f)) {
            return Err(Error::Precondition("option is not in the kernel of the meet".into()));
        }
        // f1 = ½(1 − 1_{E1} + 1_{E2}) f, f2 = f − f1.
        let half = Rational::ratio(1, 2);
        let f1: Vec<Rational> = (0..f.len())
            .map(|i| {
                let w = Rational::one() - indicator(e1.mask[i]) + indicator(e2.mask[i]);
                half.clone() * w * f[i].clone()
            })
            .collect();
        let f2 = linalg::sub(f, &f1);
        Ok((f1, f2))
    }

    fn decide(&self, sys: &ConicSystem<Rational>) -> Result<Verdict> {
        Ok(Verdict::from_bool(lp_feasible(sys)?.is_feasible()))
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumSpace {
    n: usize,
}

/// An orthogonal projector, kept exactly idempotent up to rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumEvent {
    p: CMatrix,
}

impl QuantumEvent {
    /// Validate and snap a projector.
    pub fn from_projector(p: &CMatrix) -> Result<Self> {
        Ok(QuantumEvent { p: hermitian::normalize_projector(p)? })
    }

    /// Projector onto the span of the given vectors.
    pub fn from_span(n: usize, vectors: &[Vec<Complex64>]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        Ok(QuantumEvent { p: hermitian::projector_onto(n, vectors) })
    }

    pub fn projector(&self) -> &CMatrix {
        &self.p
    }

    pub fn rank(&self) -> usize {
        self.p.trace().re.round() as usize
    }

    pub fn range_basis(&self) -> Vec<Vec<Complex64>> {
        hermitian::range_basis(&self.p)
    }
}

impl QuantumSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("Hilbert space dimension must be positive".into()));
        }
        Ok(QuantumSpace { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_matrix(&self, u: &[f64]) -> Result<CMatrix> {
        CMatrix::from_coords(self.n, u)
    }

    pub fn from_matrix(&self, a: &CMatrix) -> Result<Vec<f64>> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.n() });
        }
        a.check_hermitian(hermitian::HERMITIAN_TOL)?;
        Ok(a.coords())
    }

    fn mat(&self, u: &[f64]) -> CMatrix {
        CMatrix::from_coords(self.n, u).expect("coordinate length checked by caller")
    }

    /// `lim (P1 P2)^k` by von Neumann's alternating projections. Returns the
    /// event and the Frobenius step sizes of the iteration.
    pub fn altproj_meet(&self, e1: &QuantumEvent, e2: &QuantumEvent) -> Result<(QuantumEvent, Vec<f64>)> {
        let step = e1.p.mul(&e2.p);
        let mut x = step.clone();
        let mut history = Vec::new();
        for _ in 0..10_000 {
            let next = x.mul(&step);
            let delta = next.sub(&x).frobenius();
            history.push(delta);
            x = next;
            if delta <= 1e-12 {
                let sym = x.hermitian_part();
                let snapped = hermitian::projector_onto(self.n, &hermitian::range_basis(&sym));
                return Ok((QuantumEvent { p: snapped }, history));
            }
        }
        Err(Error::Convergence { iterations: 10_000, residual: *history.last().unwrap_or(&f64::NAN) })
    }
}

impl OptionSpace for QuantumSpace {
    type Scalar = f64;
    type Event = QuantumEvent;

    fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor::Quantum { dim: self.n }
    }

    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn unit_option(&self) -> Vec<f64> {
        CMatrix::identity(self.n).coords()
    }

    fn background_weak(&self, u: &[f64]) -> bool {
        match self.mat(u).eigh() {
            Ok((vals, _)) => vals[0] >= -QUANTUM_WEAK_TOL,
            Err(_) => false,
        }
    }

    fn archimedean_bound(&self, u: &[f64]) -> f64 {
        let (vals, _) = self.mat(u).eigh().expect("coordinates are Hermitian");
        (-vals[0]).max(0.0)
    }

    fn background_generators(&self) -> Option<Vec<Vec<f64>>> {
        None
    }

    fn unit_event(&self) -> QuantumEvent {
        QuantumEvent { p: CMatrix::identity(self.n) }
    }

    fn null_event(&self) -> QuantumEvent {
        QuantumEvent { p: CMatrix::zeros(self.n) }
    }

    fn call_off(&self, e: &QuantumEvent, u: &[f64]) -> Vec<f64> {
        self.mat(u).compress(&e.p).hermitian_part().coords()
    }

    fn calloff_matrix(&self, e: &QuantumEvent) -> Vec<Vec<f64>> {
        let d = self.dim();
        let cols: Vec<Vec<f64>> = (0..d).map(|k| self.call_off(e, &linalg::unit(d, k))).collect();
        linalg::transpose(&cols, d)
    }

    fn kernel(&self, e: &QuantumEvent) -> Subspace<f64> {
        let d = self.dim();
        Subspace::from_annihilators(d, &self.calloff_matrix(e)).expect("ambient")
    }

    fn complement(&self, e: &QuantumEvent) -> QuantumEvent {
        QuantumEvent { p: CMatrix::identity(self.n).sub(&e.p) }
    }

    fn meet(&self, e1: &QuantumEvent, e2: &QuantumEvent) -> QuantumEvent {
        // Complement of range(I − P1) + range(I − P2).
        let mut vs = self.complement(e1).range_basis();
        vs.extend(self.complement(e2).range_basis());
        let q = hermitian::projector_onto(self.n, &vs);
        QuantumEvent { p: CMatrix::identity(self.n).sub(&q) }
    }

    fn event_eq(&self, e1: &QuantumEvent, e2: &QuantumEvent) -> bool {
        e1.p.sub(&e2.p).frobenius() <= EVENT_EQ_TOL
    }

    fn event_from_kernel(&self, k: &Subspace<f64>) -> Result<QuantumEvent> {
        // The call-off map is the orthogonal projection onto I_e^⊥ in
        // coordinates, and P = P·I·P, so P is the projection of the identity.
        let d = self.dim();
        let perp = orthonormal_rows(&k.annihilator());
        let unit = self.unit_option();
        let proj = perp.iter().fold(linalg::zeros(d), |acc, q| linalg::axpy(&acc, &linalg::dot(q, &unit), q));
        let p = self.mat(&proj);
        let e = QuantumEvent::from_projector(&p)
            .map_err(|_| Error::Precondition("subspace is not the kernel of an event".into()))?;
        if self.kernel(&e).equals(k)? {
            Ok(e)
        } else {
            Err(Error::Precondition("subspace is not the kernel of an event".into()))
        }
    }

    fn kernel_sum_decompose(&self, e1: &QuantumEvent, e2: &QuantumEvent, f: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check_option(f)?;
        let m = self.meet(e1, e2);
        let a = self.mat(f);
        if a.compress(&m.p).frobenius() > 1e-8 * (1.0 + a.frobenius()) {
            return Err(Error::Precondition("option is not in the kernel of the meet".into()));
        }
        // B'_N = Σ_{k≤N} (P2P1)^k P2AP2 (P1P2)^k − (P1P2)^{k+1} A (P2P1)^{k+1}
        // lies in I_{e1}; A − B'_N lies in I_{e2} once the series has converged.
        let (p1, p2) = (&e1.p, &e2.p);
        let p12 = p1.mul(p2);
        let p21 = p2.mul(p1);
        let mut left = CMatrix::identity(self.n); // (P2P1)^k
        let mut right = CMatrix::identity(self.n); // (P1P2)^k
        let p2ap2 = a.compress(p2);
        let mut b = CMatrix::zeros(self.n);
        for _ in 0..100_000 {
            let next_left = left.mul(&p21);
            let next_right = right.mul(&p12);
            let term = left.mul(&p2ap2).mul(&right).sub(&next_right.mul(&a).mul(&next_left));
            b = b.add(&term);
            left = next_left;
            right = next_right;
            let f2 = a.sub(&b);
            if f2.compress(p2).frobenius() <= 1e-10 {
                let f1 = b.hermitian_part();
                return Ok((f1.coords(), a.sub(&f1).coords()));
            }
        }
        Err(Error::Convergence { iterations: 100_000, residual: a.sub(&b).compress(p2).frobenius() })
    }

    fn decide(&self, sys: &ConicSystem<f64>) -> Result<Verdict> {
        Ok(psd::psd_margin(sys, self.n)?.verdict)
    }
}

/// Orthonormalize real rows (modified Gram–Schmidt, tolerance 1e-10).
fn orthonormal_rows(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let mut w = r.clone();
        for _ in 0..2 {
            for q in &out {
                let c = linalg::dot(q, &w);
                w = linalg::axpy(&w, &-c, q);
            }
        }
        let norm = linalg::norm_sq(&w).sqrt();
        if norm > 1e-10 {
            out.push(linalg::scale(&w, &(1.0 / norm)));
        }
    }
    out
}
