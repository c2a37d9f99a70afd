//! Seeded random states and Gram matrices for property checks and the
//! criteria harness.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// Needed for no_std float math; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::matrix;
use crate::model::{DensityMatrix, GramMatrix};

/// Standard normal via Box-Muller.
pub fn gauss<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = loop {
        let u = rng.gen::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

fn random_unit_vector<R: Rng>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(gauss(rng), gauss(rng)))
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-like random pure state.
pub fn random_pure<R: Rng>(n: usize, rng: &mut R) -> DensityMatrix {
    let amps = random_unit_vector(n, rng);
    DensityMatrix::from_pure_amplitudes(&amps).expect("normalized by construction")
}

/// Pure state with all populations 1/n and random phases.
pub fn random_equal_population_pure<R: Rng>(n: usize, rng: &mut R) -> DensityMatrix {
    let a = 1.0 / (n as f64).sqrt();
    let amps: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(a, rng.gen::<f64>() * 2.0 * PI))
        .collect();
    DensityMatrix::from_pure_amplitudes(&amps).expect("normalized by construction")
}

/// Fully incoherent state with random populations.
pub fn random_diagonal<R: Rng>(n: usize, rng: &mut R) -> DensityMatrix {
    let mut p: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = p.iter().sum();
    for v in &mut p {
        *v /= total;
    }
    DensityMatrix::diagonal(&p).expect("valid populations")
}

/// Convex mixture of k random pure states.
pub fn random_mixture<R: Rng>(n: usize, k: usize, rng: &mut R) -> DensityMatrix {
    let k = k.max(1);
    let mut w: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    for v in &mut w {
        *v /= total;
    }
    let mut entries = vec![Complex64::default(); n * n];
    for &weight in &w {
        let p = random_pure(n, rng);
        for (e, x) in entries.iter_mut().zip(p.entries().iter()) {
            *e += x * weight;
        }
    }
    DensityMatrix::new(n, matrix::hermitize(n, &entries)).expect("convex mixture is valid")
}

/// Mixed sampling strategy: pure states, mixtures and decohered pures, so
/// both the boundary and the interior of the state space are covered.
pub fn random_density<R: Rng>(n: usize, rng: &mut R) -> DensityMatrix {
    match rng.gen_range(0..4u8) {
        0 => random_pure(n, rng),
        1 => random_mixture(n, rng.gen_range(2..=n + 1), rng),
        2 => {
            let rho = random_pure(n, rng);
            rho.decohere(&random_gram(n, rng)).expect("same dimension")
        }
        _ => random_mixture(n, rng.gen_range(2..=2 * n), rng),
    }
}

/// Gram of random ancilla vectors of a random common dimension; dimension 1
/// gives unit-modulus overlaps, dimension >= n can reach near-orthogonality.
pub fn random_gram<R: Rng>(n: usize, rng: &mut R) -> GramMatrix {
    let dim = rng.gen_range(1..=n + 1);
    let states: Vec<Vec<Complex64>> = (0..n).map(|_| random_unit_vector(dim, rng)).collect();
    GramMatrix::from_ancilla_states(&states).expect("normalized by construction")
}

/// Extremal Gram from a random partition of the paths: ancilla states are
/// identical within a group and orthogonal across groups (0/1 overlaps).
pub fn random_partition_gram<R: Rng>(n: usize, rng: &mut R) -> GramMatrix {
    let groups = rng.gen_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..groups)).collect();
    let mut entries = vec![Complex64::default(); n * n];
    for r in 0..n {
        for c in 0..n {
            if labels[r] == labels[c] {
                entries[matrix::idx(n, r, c)] = Complex64::new(1.0, 0.0);
            }
        }
    }
    GramMatrix::new(n, entries).expect("partition Gram is valid")
}

/// Random Hermitian matrix with entries of order 1 (not a state).
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let mut a = vec![Complex64::default(); n * n];
    for r in 0..n {
        for c in r..n {
            if r == c {
                a[matrix::idx(n, r, c)] = Complex64::new(gauss(rng), 0.0);
            } else {
                let z = Complex64::new(gauss(rng), gauss(rng));
                a[matrix::idx(n, r, c)] = z;
                a[matrix::idx(n, c, r)] = z.conj();
            }
        }
    }
    a
}
