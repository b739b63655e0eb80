//! Element types the kernels are generic over.

use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Sub};

/// Matrix entries are complex numbers; real-mode matrices keep `im == 0`.
pub type Scalar = Complex64;

/// Field element used by the mat-vec kernels: `f64` for the real fast path,
/// `Complex64` otherwise.
pub trait Entry:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + 'static
{
    const IS_COMPLEX: bool;

    fn conj(self) -> Self;
    fn modulus(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn re(self) -> f64;
    fn from_real(x: f64) -> Self;
    /// Drops the imaginary part when `Self` is real.
    fn from_complex(z: Complex64) -> Self;
    fn to_complex(self) -> Complex64;
    fn scale(self, s: f64) -> Self;
}

impl Entry for f64 {
    const IS_COMPLEX: bool = false;

    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.abs()
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        self * self
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn from_complex(z: Complex64) -> Self {
        z.re
    }
    #[inline]
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Entry for Complex64 {
    const IS_COMPLEX: bool = true;

    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn from_complex(z: Complex64) -> Self {
        z
    }
    #[inline]
    fn to_complex(self) -> Complex64 {
        self
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// Euclidean norm of a vector.
pub fn norm2<T: Entry>(x: &[T]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus.
pub fn max_norm<T: Entry>(x: &[T]) -> f64 {
    x.iter().fold(0.0_f64, |acc, v| acc.max(v.modulus()))
}

/// Inner product `<x, y> = sum conj(x_i) y_i`.
pub fn dot<T: Entry>(x: &[T], y: &[T]) -> T {
    let mut s = T::zero();
    for (a, b) in x.iter().zip(y) {
        s += a.conj() * *b;
    }
    s
}
