#![allow(dead_code)]

use mean_transform::{ComplexMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Gram-Schmidt on a Gaussian matrix.
pub fn unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = gaussian(rng, n);
    let mut q = ComplexMatrix::zeros(n);
    for j in 0..n {
        let mut v = g.column(j);
        for k in 0..j {
            let qk = q.column(k);
            let c: C64 = qk.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(&qk) {
                *vi -= c * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<C64> = v.iter().map(|z| z / norm).collect();
        q.set_column(j, &v);
    }
    q
}

/// Product of an `n × r` and an `r × n` Gaussian factor.
pub fn low_rank(rng: &mut ChaCha8Rng, n: usize, r: usize) -> ComplexMatrix {
    let a = gaussian(rng, n);
    let b = gaussian(rng, n);
    let mut proj = ComplexMatrix::zeros(n);
    for k in 0..r {
        proj[(k, k)] = C64::new(1.0, 0.0);
    }
    &(&a * &proj) * &b
}

pub fn normal(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let u = unitary(rng, n);
    let d = vector(rng, n);
    &(&u * &ComplexMatrix::from_diag(&d)) * &u.adjoint()
}

/// Quasinormal in finite dimensions means normal; zero eigenvalues keep the
/// polar factor a proper partial isometry.
pub fn quasinormal(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let u = unitary(rng, n);
    let d: Vec<C64> = (0..n)
        .map(|k| {
            if k % 3 == 2 {
                C64::new(0.0, 0.0)
            } else {
                C64::from_polar(rng.random_range(0.1..2.0), rng.random_range(0.0..std::f64::consts::TAU))
            }
        })
        .collect();
    &(&u * &ComplexMatrix::from_diag(&d)) * &u.adjoint()
}
