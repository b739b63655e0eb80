#![allow(dead_code)]

use num_complex::Complex64;
use sigma_bounds::{generate, GeneratorSpec, Matrix};

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Random matrix of one of the three numeric families, picked by `kind`.
pub fn random_matrix(kind: u8, m: usize, n: usize, density: f64, seed: u64) -> Matrix {
    let spec = match kind % 3 {
        0 => GeneratorSpec::UniformNonneg { m, n, density },
        1 => GeneratorSpec::Signed { m, n, density },
        _ => GeneratorSpec::Complex { m, n, density },
    };
    generate(&spec, seed).unwrap()
}

/// Dense `AA*` formed entry by entry.
pub fn explicit_gram(a: &Matrix) -> Vec<Vec<Complex64>> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut g = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for (i, row) in g.iter_mut().enumerate() {
        for (k, gik) in row.iter_mut().enumerate() {
            for j in 0..n {
                *gik += a.get(i, j) * a.get(k, j).conj();
            }
        }
    }
    g
}

pub fn mat_vec(g: &[Vec<Complex64>], x: &[Complex64]) -> Vec<Complex64> {
    g.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}
