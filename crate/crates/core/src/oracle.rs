//! Reference value of `sigma(A)` used to check every bound.
//!
//! Power iteration on the Gram operator of the smaller side, restarted from
//! fixed-seed random vectors. It shares the mat-vec kernels with the walk
//! engine but nothing else: no all-ones start, no walk ratios. Matrices with
//! at most two rows or columns are solved in closed form.

use crate::error::{Error, Result};
use crate::matrix::{adjoint_gram_apply, gram_apply, Matrix, Mode};
use crate::scalar::{dot, norm2, Entry};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const START_SEED: u64 = 0x51_6d_a0_5e_ed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Stop when `||G v - lambda v|| / lambda` falls to this value.
    pub tol: f64,
    pub max_iter: usize,
    /// Extra start vectors allowed beyond the first.
    pub restarts: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            tol: 1e-12,
            max_iter: 10_000,
            restarts: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub sigma: f64,
    pub iterations: usize,
    /// `||AA* v - sigma^2 v|| / sigma^2` at the returned vector, or the
    /// absolute residual when `sigma = 0`.
    pub residual: f64,
    pub converged: bool,
    pub restarts_used: usize,
}

impl OracleResult {
    fn exact_zero() -> Self {
        OracleResult {
            sigma: 0.0,
            iterations: 0,
            residual: 0.0,
            converged: true,
            restarts_used: 0,
        }
    }
}

/// `sigma(A)`: closed form when `min(m, n) <= 2`, power iteration otherwise.
pub fn reference_sigma(a: &Matrix, cfg: &OracleConfig) -> OracleResult {
    if a.is_zero() {
        return OracleResult::exact_zero();
    }
    if a.nrows().min(a.ncols()) <= 2 {
        let g = small_gram(a);
        let (lambda, residual) = g.top_eigenpair_residual();
        return OracleResult {
            sigma: lambda.sqrt(),
            iterations: 0,
            residual,
            converged: residual <= cfg.tol,
            restarts_used: 0,
        };
    }
    power_sigma(a, cfg)
}

/// Power iteration only, regardless of shape.
pub fn power_sigma(a: &Matrix, cfg: &OracleConfig) -> OracleResult {
    if a.is_zero() {
        return OracleResult::exact_zero();
    }
    match a.mode() {
        Mode::Real => power_restarts::<f64>(a, cfg),
        Mode::Complex => power_restarts::<Complex64>(a, cfg),
    }
}

/// Closed-form `sigma(A)` for matrices with at most two rows or columns.
pub fn exact_small_sigma(a: &Matrix) -> Result<f64> {
    if a.nrows().min(a.ncols()) > 2 {
        return Err(Error::Shape(format!(
            "closed form needs min(m, n) <= 2, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(small_gram(a).top_eigenvalue().sqrt())
}

/// Hermitian Gram matrix of size 1 or 2 (`[[g11, g12], [conj g12, g22]]`).
struct SmallGram {
    dim: usize,
    g11: f64,
    g22: f64,
    g12: Complex64,
}

fn small_gram(a: &Matrix) -> SmallGram {
    // Rows of the matrix whose Gram is small: rows of A if m <= 2, else rows
    // of A* (columns of A).
    let use_rows = a.nrows() <= 2;
    let dim = if use_rows { a.nrows() } else { a.ncols() };
    let mut lines = vec![Vec::new(); dim];
    for (i, j, z) in a.entries() {
        if use_rows {
            lines[i].push((j, z));
        } else {
            lines[j].push((i, z.conj()));
        }
    }
    let sq = |l: &[(usize, Complex64)]| l.iter().map(|(_, z)| z.norm_sqr()).sum::<f64>();
    let g11 = sq(&lines[0]);
    if dim == 1 {
        return SmallGram {
            dim,
            g11,
            g22: 0.0,
            g12: Complex64::new(0.0, 0.0),
        };
    }
    let g22 = sq(&lines[1]);
    let mut second = std::collections::HashMap::new();
    for &(k, z) in &lines[1] {
        second.insert(k, z);
    }
    let mut g12 = Complex64::new(0.0, 0.0);
    for &(k, z) in &lines[0] {
        if let Some(w) = second.get(&k) {
            g12 += z * w.conj();
        }
    }
    SmallGram { dim, g11, g22, g12 }
}

impl SmallGram {
    fn top_eigenvalue(&self) -> f64 {
        if self.dim == 1 {
            return self.g11;
        }
        let mean = 0.5 * (self.g11 + self.g22);
        let half = 0.5 * (self.g11 - self.g22);
        mean + half.hypot(self.g12.norm())
    }

    fn top_eigenpair_residual(&self) -> (f64, f64) {
        let lambda = self.top_eigenvalue();
        if self.dim == 1 || lambda == 0.0 {
            return (lambda, 0.0);
        }
        // Two null vectors of G - lambda I; take the better conditioned one.
        let v1 = [self.g12, Complex64::new(lambda - self.g11, 0.0)];
        let v2 = [Complex64::new(lambda - self.g22, 0.0), self.g12.conj()];
        let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
        let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
        let (v, nv) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
        if nv == 0.0 {
            // G is a multiple of the identity.
            return (lambda, 0.0);
        }
        let gv0 = v[0] * self.g11 + self.g12 * v[1] - v[0] * lambda;
        let gv1 = self.g12.conj() * v[0] + v[1] * self.g22 - v[1] * lambda;
        let res = (gv0.norm_sqr() + gv1.norm_sqr()).sqrt() / nv.sqrt();
        (lambda, res / lambda)
    }
}

struct PowerRun {
    lambda: f64,
    residual: f64,
    iterations: usize,
    converged: bool,
}

fn random_start<T: Entry>(len: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let re = rng.random_range(-1.0..1.0);
            if T::IS_COMPLEX {
                T::from_complex(Complex64::new(re, rng.random_range(-1.0..1.0)))
            } else {
                T::from_real(re)
            }
        })
        .collect()
}

/// Gram operator of the smaller side of `a`.
fn small_side_gram<T: Entry>(a: &Matrix, x: &[T]) -> Vec<T> {
    if a.ncols() < a.nrows() {
        adjoint_gram_apply(a, x).expect("shape")
    } else {
        gram_apply(a, x).expect("shape")
    }
}

fn power_run<T: Entry>(
    a: &Matrix,
    start: Vec<T>,
    tol: f64,
    max_iter: usize,
    mut trace: Option<&mut Vec<f64>>,
) -> PowerRun {
    let mut v = start;
    let nv = norm2(&v);
    let inv = 1.0 / nv;
    v.iter_mut().for_each(|x| *x = x.scale(inv));

    let mut last = PowerRun {
        lambda: 0.0,
        residual: f64::INFINITY,
        iterations: 0,
        converged: false,
    };
    for it in 1..=max_iter {
        let w = small_side_gram(a, &v);
        let lambda = dot(&v, &w).re().max(0.0);
        let res: f64 = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (*wi - vi.scale(lambda)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let rel = if lambda > 0.0 { res / lambda } else { res };
        if let Some(t) = trace.as_deref_mut() {
            t.push(lambda);
        }
        last = PowerRun {
            lambda,
            residual: rel,
            iterations: it,
            converged: rel <= tol,
        };
        if last.converged {
            break;
        }
        let nw = norm2(&w);
        if nw == 0.0 {
            break;
        }
        let inv = 1.0 / nw;
        v = w.into_iter().map(|x| x.scale(inv)).collect();
    }
    last
}

fn power_restarts<T: Entry>(a: &Matrix, cfg: &OracleConfig) -> OracleResult {
    let len = a.nrows().min(a.ncols());
    let mut best: Option<PowerRun> = None;
    let mut total_iters = 0;
    let mut runs = 0;
    // At least two starts, so that one start that happens to be orthogonal
    // to the top eigenspace cannot decide the answer. Further starts only
    // while the best run has not converged or the first two disagree.
    let mut agreed = false;
    while runs <= cfg.restarts {
        let run = power_run::<T>(a, random_start(len, START_SEED + runs as u64), cfg.tol, cfg.max_iter, None);
        total_iters += run.iterations;
        runs += 1;
        if let Some(b) = &best {
            let scale = b.lambda.max(run.lambda).max(f64::MIN_POSITIVE);
            agreed = b.converged && run.converged && (b.lambda - run.lambda).abs() <= 1e-10 * scale;
        }
        if best.as_ref().is_none_or(|b| run.lambda > b.lambda) {
            best = Some(run);
        }
        if runs >= 2 && agreed {
            break;
        }
    }
    let best = best.expect("at least one run");
    OracleResult {
        sigma: best.lambda.sqrt(),
        iterations: total_iters,
        residual: best.residual,
        converged: best.converged,
        restarts_used: runs - 1,
    }
}

/// Rayleigh quotients of one power-iteration run, for inspection.
pub fn rayleigh_trace(a: &Matrix, iterations: usize) -> Vec<f64> {
    let mut trace = Vec::with_capacity(iterations);
    let len = a.nrows().min(a.ncols());
    match a.mode() {
        Mode::Real => {
            power_run::<f64>(a, random_start(len, START_SEED), 0.0, iterations, Some(&mut trace));
        }
        Mode::Complex => {
            power_run::<Complex64>(a, random_start(len, START_SEED), 0.0, iterations, Some(&mut trace));
        }
    }
    trace
}
