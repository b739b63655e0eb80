//! Walk quantities `w^r(k)` (row sums of `(AA*)^r`) and `w^r` (their total),
//! computed by repeated Gram applications to the all-ones vector.
//!
//! `w^r` grows like `sigma^(2r)` and overflows `f64` quickly, so each step
//! divides the iterate by its max-norm and adds the logarithm of the divisor
//! to a running `log_scale`. The true values are `exp(log_scale) * v[k]`.

use crate::error::{Error, Result};
use crate::matrix::{gram_apply, Matrix, Mode};
use crate::scalar::{max_norm, Entry};
use num_complex::Complex64;

/// The scaled iterate. Real-mode matrices stay on the real path.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkVector {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl WalkVector {
    pub fn len(&self) -> usize {
        match self {
            WalkVector::Real(v) => v.len(),
            WalkVector::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            WalkVector::Real(v) => Some(v),
            WalkVector::Complex(_) => None,
        }
    }

    pub fn get(&self, k: usize) -> Complex64 {
        match self {
            WalkVector::Real(v) => Complex64::new(v[k], 0.0),
            WalkVector::Complex(v) => v[k],
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            WalkVector::Real(v) => v.iter().all(|x| *x == 0.0),
            WalkVector::Complex(v) => v.iter().all(|z| z.re == 0.0 && z.im == 0.0),
        }
    }

    /// Real part of the entry sum. For a Gram power applied to the all-ones
    /// vector the exact sum is real.
    pub fn sum_re(&self) -> f64 {
        match self {
            WalkVector::Real(v) => v.iter().sum(),
            WalkVector::Complex(v) => v.iter().map(|z| z.re).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    pub r: usize,
    pub v: WalkVector,
    pub log_scale: f64,
}

impl WalkState {
    /// Reconstructed row walk values `w^r(k)`. May overflow for large `r`.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let s = self.log_scale.exp();
        (0..self.v.len()).map(|k| self.v.get(k) * s).collect()
    }

    pub fn is_dead(&self) -> bool {
        self.r > 0 && self.v.is_zero()
    }
}

/// State at `r = 0`: `(AA*)^0 = I`, so every row sum is one.
pub fn walk_init(a: &Matrix) -> WalkState {
    let m = a.nrows();
    let v = match a.mode() {
        Mode::Real => WalkVector::Real(vec![1.0; m]),
        Mode::Complex => WalkVector::Complex(vec![Complex64::new(1.0, 0.0); m]),
    };
    WalkState { r: 0, v, log_scale: 0.0 }
}

fn rebase<T: Entry>(mut v: Vec<T>, log_scale: f64) -> (Vec<T>, f64) {
    let mx = max_norm(&v);
    if mx == 0.0 {
        return (v, log_scale);
    }
    let inv = 1.0 / mx;
    for x in v.iter_mut() {
        *x = x.scale(inv);
    }
    (v, log_scale + mx.ln())
}

/// Advances `s` by one Gram application and rebases to unit max-norm.
pub fn walk_step(a: &Matrix, s: &WalkState) -> Result<WalkState> {
    let (v, log_scale) = match &s.v {
        WalkVector::Real(x) => {
            if a.mode() != Mode::Real {
                return Err(Error::ModeMismatch);
            }
            let (v, l) = rebase(gram_apply(a, x)?, s.log_scale);
            (WalkVector::Real(v), l)
        }
        WalkVector::Complex(x) => {
            let (v, l) = rebase(gram_apply(a, x)?, s.log_scale);
            (WalkVector::Complex(v), l)
        }
    };
    Ok(WalkState {
        r: s.r + 1,
        v,
        log_scale,
    })
}

/// Scaled walk total at one level: `w^r = exp(log_scale) * total_scaled`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkTotal {
    pub r: usize,
    pub total_scaled: f64,
    pub log_scale: f64,
}

impl WalkTotal {
    pub fn value(&self) -> f64 {
        self.total_scaled * self.log_scale.exp()
    }
}

/// Every level `0..=depth` of one walk, kept so that bounds can pair any
/// two levels `r` and `r + p`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkLedger {
    states: Vec<WalkState>,
    totals: Vec<WalkTotal>,
}

impl WalkLedger {
    pub fn new(a: &Matrix) -> Self {
        let s0 = walk_init(a);
        let t0 = WalkTotal {
            r: 0,
            total_scaled: s0.v.sum_re(),
            log_scale: 0.0,
        };
        WalkLedger {
            states: vec![s0],
            totals: vec![t0],
        }
    }

    /// Ledger holding levels `0..=depth`.
    pub fn build(a: &Matrix, depth: usize) -> Result<Self> {
        let mut l = Self::new(a);
        l.extend_to(a, depth)?;
        Ok(l)
    }

    /// Walks further until `depth` is recorded. `a` must be the matrix the
    /// ledger was started from.
    pub fn extend_to(&mut self, a: &Matrix, depth: usize) -> Result<()> {
        if self.states[0].v.len() != a.nrows() {
            return Err(Error::Shape("ledger was built for a different matrix".into()));
        }
        while self.depth() < depth {
            let last = self.states.last().expect("ledger is never empty");
            let next = if last.is_dead() {
                WalkState {
                    r: last.r + 1,
                    v: last.v.clone(),
                    log_scale: last.log_scale,
                }
            } else {
                walk_step(a, last)?
            };
            self.totals.push(WalkTotal {
                r: next.r,
                total_scaled: next.v.sum_re(),
                log_scale: next.log_scale,
            });
            self.states.push(next);
        }
        Ok(())
    }

    /// Deepest recorded level.
    pub fn depth(&self) -> usize {
        self.states.len() - 1
    }

    fn check_level(&self, r: usize) -> Result<()> {
        if r > self.depth() {
            return Err(Error::LevelOutOfRange {
                requested: r,
                depth: self.depth(),
            });
        }
        Ok(())
    }

    pub fn state(&self, r: usize) -> Result<&WalkState> {
        self.check_level(r)?;
        Ok(&self.states[r])
    }

    /// Scaled row values and log-scale at level `r`.
    pub fn row_values(&self, r: usize) -> Result<(&WalkVector, f64)> {
        let s = self.state(r)?;
        Ok((&s.v, s.log_scale))
    }

    /// Scaled total and log-scale at level `r`.
    pub fn total(&self, r: usize) -> Result<WalkTotal> {
        self.check_level(r)?;
        Ok(self.totals[r])
    }

    /// True once the iterate has become exactly zero.
    pub fn died_by(&self, r: usize) -> bool {
        self.states.iter().take(r + 1).any(|s| s.is_dead())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m22() -> Matrix {
        Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap()
    }

    fn star3() -> Matrix {
        Matrix::from_triplets(4, 4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 0, 1.0), (2, 0, 1.0), (3, 0, 1.0)])
            .unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn init_is_all_ones() {
        let s = walk_init(&Matrix::zeros(3, 2).unwrap());
        assert_eq!(s.r, 0);
        assert_eq!(s.v, WalkVector::Real(vec![1.0; 3]));
        assert_eq!(s.log_scale, 0.0);
        assert_eq!(walk_init(&Matrix::from_rows(&[[5.0]]).unwrap()).v, WalkVector::Real(vec![1.0]));
        assert_eq!(walk_init(&Matrix::zeros(2, 2).unwrap()).v.len(), 2);
    }

    #[test]
    fn one_step_rebases_to_unit_max() {
        let s = walk_step(&m22(), &walk_init(&m22())).unwrap();
        assert_eq!(s.r, 1);
        let v = s.v.as_real().unwrap();
        assert!(close(v[0], 16.0 / 36.0, 1e-15));
        assert_eq!(v[1], 1.0);
        assert!(close(s.log_scale, 36f64.ln(), 1e-15));

        let star = star3();
        let s = walk_step(&star, &walk_init(&star)).unwrap();
        assert_eq!(s.v, WalkVector::Real(vec![1.0; 4]));
        assert!(close(s.log_scale, 3f64.ln(), 1e-15));
    }

    #[test]
    fn walk_dies_on_balanced_columns() {
        let a = Matrix::from_rows(&[[1.0], [-1.0]]).unwrap();
        let s = walk_step(&a, &walk_init(&a)).unwrap();
        assert_eq!(s.v, WalkVector::Real(vec![0.0, 0.0]));
        assert_eq!(s.log_scale, 0.0);
        assert!(s.is_dead());
        let l = WalkLedger::build(&a, 4).unwrap();
        for r in 1..=4 {
            assert_eq!(l.total(r).unwrap().value(), 0.0);
        }
        assert!(l.died_by(1));
    }

    #[test]
    fn ledger_reconstructs_exact_values() {
        let l = WalkLedger::build(&m22(), 2).unwrap();
        let (v, ls) = l.row_values(0).unwrap();
        assert_eq!(v, &WalkVector::Real(vec![1.0, 1.0]));
        assert_eq!(ls, 0.0);
        let w2 = l.state(2).unwrap().reconstruct();
        assert!(close(w2[0].re, 476.0, 1e-13));
        assert!(close(w2[1].re, 1076.0, 1e-13));
        assert_eq!(l.total(0).unwrap().value(), 2.0);
        assert!(close(l.total(1).unwrap().value(), 52.0, 1e-13));
        assert!(close(l.total(2).unwrap().value(), 1552.0, 1e-13));

        let star = WalkLedger::build(&star3(), 1).unwrap();
        for w in star.state(1).unwrap().reconstruct() {
            assert!(close(w.re, 3.0, 1e-15));
        }
        assert_eq!(
            star.row_values(2).unwrap_err(),
            Error::LevelOutOfRange { requested: 2, depth: 1 }
        );
        assert!(star.total(5).is_err());
    }

    #[test]
    fn complex_walk_totals_are_real() {
        let a = Matrix::from_dense_complex(
            2,
            2,
            vec![
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(-1.0, 0.5),
                Complex64::new(3.0, 0.0),
            ],
        )
        .unwrap();
        let l = WalkLedger::build(&a, 3).unwrap();
        for r in 0..=3 {
            let s = l.state(r).unwrap().reconstruct();
            let sum: Complex64 = s.iter().sum();
            assert!(sum.im.abs() <= 1e-12 * sum.re.abs());
            assert!(close(l.total(r).unwrap().value(), sum.re, 1e-14));
        }
    }

    #[test]
    fn extend_rejects_other_matrix() {
        let mut l = WalkLedger::new(&m22());
        assert!(l.extend_to(&Matrix::identity(3).unwrap(), 2).is_err());
    }

    #[test]
    fn large_powers_do_not_overflow() {
        let a = Matrix::from_rows(&[[1e3, 2e3], [3e3, 4e3]]).unwrap();
        let l = WalkLedger::build(&a, 200).unwrap();
        let t = l.total(200).unwrap();
        assert!(t.total_scaled.is_finite() && t.log_scale.is_finite());
        assert!(t.log_scale > 709.0);
    }
}
