//! Seeded instance generators shared by the benchmarks.

use maxplus::{conjugate, GenPerm, Matrix, MaxPlus};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut StdRng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |_, _| MaxPlus::new(rng.gen_range(-10.0..=10.0)))
}

pub fn random_diagonal(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-5.0..=5.0)).collect()
}

/// pdiag(d) hidden behind a random diagonal similarity.
pub fn random_pdiagable(rng: &mut StdRng, n: usize) -> Matrix {
    let d = random_diagonal(rng, n);
    let p = (0..n).map(|_| rng.gen_range(-10.0..=10.0)).collect();
    conjugate(&Matrix::pdiag(&d), &GenPerm::diagonal(p).unwrap()).unwrap()
}
