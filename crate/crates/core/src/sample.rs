//! Deterministic random instances: options, events, generators.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hermitian::CMatrix;
use crate::linalg::CoordVec;
use crate::scalar::Scalar;
use crate::space::{ClassicalEvent, ClassicalSpace, OptionSpace, QuantumEvent, QuantumSpace};
use crate::Rational;

/// Default integer coefficient range for sampled options.
pub const DEFAULT_RANGE: i64 = 3;

/// Independent stream for trial `index` under `seed`, identical under any schedule.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

pub trait Sampling: OptionSpace {
    /// Option with small-integer coordinates in `[-range, range]`.
    fn random_option(&self, rng: &mut ChaCha8Rng, range: i64) -> CoordVec<Self::Scalar>;
    fn random_event(&self, rng: &mut ChaCha8Rng) -> Self::Event;
    /// A handful of background-strict options, used as structured probes.
    fn probe_options(&self, rng: &mut ChaCha8Rng) -> Vec<CoordVec<Self::Scalar>>;
    /// Every event, when there are finitely many.
    fn exhaustive_events(&self) -> Option<Vec<Self::Event>> {
        None
    }
}

impl Sampling for ClassicalSpace {
    fn random_option(&self, rng: &mut ChaCha8Rng, range: i64) -> Vec<Rational> {
        (0..self.dim()).map(|_| Rational::from_int(rng.gen_range(-range..=range))).collect()
    }

    fn random_event(&self, rng: &mut ChaCha8Rng) -> ClassicalEvent {
        ClassicalEvent::from_mask((0..self.dim()).map(|_| rng.gen_bool(0.5)).collect())
    }

    fn exhaustive_events(&self) -> Option<Vec<ClassicalEvent>> {
        Some(self.all_events())
    }

    fn probe_options(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let mut out: Vec<Vec<Rational>> = (0..d).map(|i| crate::linalg::unit(d, i)).collect();
        out.push((0..d).map(|_| Rational::from_int(rng.gen_range(0..=3))).collect());
        out
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

impl Sampling for QuantumSpace {
    fn random_option(&self, rng: &mut ChaCha8Rng, range: i64) -> Vec<f64> {
        let n = self.n();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(rng.gen_range(-range..=range) as f64, 0.0));
            for j in i + 1..n {
                let z = Complex64::new(rng.gen_range(-range..=range) as f64, rng.gen_range(-range..=range) as f64);
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m.coords()
    }

    fn random_event(&self, rng: &mut ChaCha8Rng) -> QuantumEvent {
        let n = self.n();
        let j = rng.gen_range(0..=n);
        let vecs: Vec<Vec<Complex64>> = (0..j).map(|_| random_vector(rng, n)).collect();
        QuantumEvent::from_span(n, &vecs).expect("random span yields a projector")
    }

    fn probe_options(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..2 * n).map(|_| crate::hermitian::outer(&random_vector(rng, n)).coords()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(7, 3).gen();
        let b: u64 = trial_rng(7, 3).gen();
        let c: u64 = trial_rng(7, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn quantum_events_cover_null_and_unit() {
        let s = QuantumSpace::new(2).unwrap();
        let mut ranks = [false; 3];
        let mut rng = trial_rng(1, 0);
        for _ in 0..60 {
            ranks[s.random_event(&mut rng).rank()] = true;
        }
        assert!(ranks.iter().all(|&r| r));
    }
}
