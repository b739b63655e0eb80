//! Seeded random matrices and small graph adjacency matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorSpec {
    /// Entries in (0, 1], each present with probability `density`.
    UniformNonneg { m: usize, n: usize, density: f64 },
    /// Entries in [-1, 1].
    Signed { m: usize, n: usize, density: f64 },
    /// Real and imaginary parts in [-1, 1].
    Complex { m: usize, n: usize, density: f64 },
    /// Adjacency matrix of the star with `n` leaves, `(n+1) x (n+1)`.
    Star(usize),
    /// Adjacency matrix of the path on `n` vertices.
    Path(usize),
    /// Adjacency matrix of a random bipartite graph with parts of size `m`
    /// and `n`, each cross edge present with probability `prob`.
    RandomBipartite { m: usize, n: usize, prob: f64 },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::UniformNonneg { m, n, density } => write!(f, "uniform-nonneg({m},{n},{density})"),
            GeneratorSpec::Signed { m, n, density } => write!(f, "signed({m},{n},{density})"),
            GeneratorSpec::Complex { m, n, density } => write!(f, "complex({m},{n},{density})"),
            GeneratorSpec::Star(n) => write!(f, "star({n})"),
            GeneratorSpec::Path(n) => write!(f, "path({n})"),
            GeneratorSpec::RandomBipartite { m, n, prob } => write!(f, "random-bipartite({m},{n},{prob})"),
        }
    }
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| cfg_err(format!("generator spec {s:?} lacks arguments")))?;
        if !s.ends_with(')') {
            return Err(cfg_err(format!("generator spec {s:?} lacks closing parenthesis")));
        }
        let name = s[..open].trim();
        let args: Vec<&str> = s[open + 1..s.len() - 1].split(',').map(str::trim).collect();
        let int = |k: usize| -> Result<usize> {
            let t = args.get(k).ok_or_else(|| cfg_err(format!("{name}: missing argument {}", k + 1)))?;
            match t.parse::<usize>() {
                Ok(0) | Err(_) => Err(cfg_err(format!("{name}: {t:?} is not a positive integer"))),
                Ok(v) => Ok(v),
            }
        };
        let frac = |k: usize, allow_zero: bool| -> Result<f64> {
            let t = args.get(k).ok_or_else(|| cfg_err(format!("{name}: missing argument {}", k + 1)))?;
            let v: f64 = t.parse().map_err(|_| cfg_err(format!("{name}: {t:?} is not a number")))?;
            let ok = if allow_zero { (0.0..=1.0).contains(&v) } else { v > 0.0 && v <= 1.0 };
            if !ok {
                return Err(cfg_err(format!("{name}: {v} outside the allowed range")));
            }
            Ok(v)
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() != k {
                return Err(cfg_err(format!("{name} takes {k} arguments, got {}", args.len())));
            }
            Ok(())
        };
        let spec = match name {
            "uniform-nonneg" => {
                arity(3)?;
                GeneratorSpec::UniformNonneg { m: int(0)?, n: int(1)?, density: frac(2, false)? }
            }
            "signed" => {
                arity(3)?;
                GeneratorSpec::Signed { m: int(0)?, n: int(1)?, density: frac(2, false)? }
            }
            "complex" => {
                arity(3)?;
                GeneratorSpec::Complex { m: int(0)?, n: int(1)?, density: frac(2, false)? }
            }
            "star" => {
                arity(1)?;
                GeneratorSpec::Star(int(0)?)
            }
            "path" => {
                arity(1)?;
                GeneratorSpec::Path(int(0)?)
            }
            "random-bipartite" => {
                arity(3)?;
                GeneratorSpec::RandomBipartite { m: int(0)?, n: int(1)?, prob: frac(2, true)? }
            }
            other => return Err(cfg_err(format!("unknown generator {other:?}"))),
        };
        Ok(spec)
    }
}

fn random_entries(
    m: usize,
    n: usize,
    density: f64,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Complex64,
    complex: bool,
) -> Result<Matrix> {
    if density >= 1.0 {
        let data: Vec<Complex64> = (0..m * n).map(|_| draw(rng)).collect();
        return if complex {
            Matrix::from_dense_complex(m, n, data)
        } else {
            Matrix::from_dense(m, n, data.into_iter().map(|z| z.re).collect())
        };
    }
    let mut t = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if rng.random_bool(density) {
                t.push((i, j, draw(rng)));
            }
        }
    }
    if complex {
        Matrix::from_complex_triplets(m, n, &t)
    } else {
        let t: Vec<_> = t.into_iter().map(|(i, j, z)| (i, j, z.re)).collect();
        Matrix::from_triplets(m, n, &t)
    }
}

fn symmetric_adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Matrix> {
    let mut t = Vec::with_capacity(2 * edges.len());
    for &(u, v) in edges {
        t.push((u, v, 1.0));
        t.push((v, u, 1.0));
    }
    Matrix::from_triplets(n, n, &t)
}

/// Deterministic matrix for a fixed `(spec, seed)`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        GeneratorSpec::UniformNonneg { m, n, density } => random_entries(
            m,
            n,
            density,
            &mut rng,
            |r| Complex64::new(1.0 - r.random::<f64>(), 0.0),
            false,
        ),
        GeneratorSpec::Signed { m, n, density } => random_entries(
            m,
            n,
            density,
            &mut rng,
            |r| Complex64::new(r.random_range(-1.0..=1.0), 0.0),
            false,
        ),
        GeneratorSpec::Complex { m, n, density } => random_entries(
            m,
            n,
            density,
            &mut rng,
            |r| Complex64::new(r.random_range(-1.0..=1.0), r.random_range(-1.0..=1.0)),
            true,
        ),
        GeneratorSpec::Star(n) => {
            let edges: Vec<_> = (1..=n).map(|leaf| (0, leaf)).collect();
            symmetric_adjacency(n + 1, &edges)
        }
        GeneratorSpec::Path(n) => {
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            symmetric_adjacency(n, &edges)
        }
        GeneratorSpec::RandomBipartite { m, n, prob } => {
            let mut edges = Vec::new();
            for u in 0..m {
                for v in 0..n {
                    if rng.random_bool(prob) {
                        edges.push((u, m + v));
                    }
                }
            }
            symmetric_adjacency(m + n, &edges)
        }
    }
}
