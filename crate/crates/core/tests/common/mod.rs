//! Helpers shared by the integration test suites: seeded generators that
//! stay independent of the crate's own eigensolvers, plus the raw
//! power-series exponential used as an oracle.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use onewave::matkit::{norm2, Matrix};

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random orthogonal matrix by Gram–Schmidt on Gaussian columns.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
            for c in &cols {
                let d: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                for i in 0..n {
                    v[i] -= d * c[i];
                }
            }
            let nv = norm2(&v);
            if nv < 1e-6 {
                cols.clear();
                break;
            }
            cols.push(v.into_iter().map(|a| a / nv).collect());
        }
        if cols.len() == n {
            let mut o = Matrix::zeros(n);
            for (j, c) in cols.iter().enumerate() {
                for i in 0..n {
                    o.set(i, j, c[i]);
                }
            }
            return o;
        }
    }
}

/// Symmetric matrix with prescribed eigenvalues in a random orthogonal
/// frame — the eigenvalues are known by construction, independent of any
/// eigensolver.
pub fn symmetric_with_eigenvalues(rng: &mut ChaCha8Rng, lambdas: &[f64]) -> Matrix {
    let o = random_orthogonal(rng, lambdas.len());
    o.matmul(&Matrix::diag(lambdas).unwrap()).matmul(&o.transpose())
}

pub fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Matrix {
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = scale * (2.0 * rng.gen::<f64>() - 1.0);
            a.set(i, j, v);
            a.set(j, i, -v);
        }
    }
    a
}

/// Reference exponential: the raw power series summed to machine
/// convergence. No scaling, no squaring — a separate route from the
/// implementation.
pub fn series_exp_oracle(x: &Matrix) -> Matrix {
    let mut sum = Matrix::identity(x.n());
    let mut term = Matrix::identity(x.n());
    for k in 1..400 {
        term = term.matmul(x).scale(1.0 / k as f64);
        let before = sum.frobenius_norm();
        sum = sum.add(&term);
        if term.frobenius_norm() <= 1e-30 * before.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum
}

pub fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let nv = norm2(&v);
        if nv > 1e-6 {
            return v.into_iter().map(|a| a / nv).collect();
        }
    }
}
