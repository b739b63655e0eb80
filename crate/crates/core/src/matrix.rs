//! Dense and compressed-sparse-row matrices, entry moduli, margin sums, and
//! the Gram operator `x -> A(A* x)`.
//!
//! Matrices are immutable after construction. Sparse storage is kept in
//! canonical form (sorted column indices, no duplicates, no stored zeros) so
//! that every kernel visits entries in one fixed order and floating-point
//! results are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::scalar::{Entry, Scalar};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
enum Layout {
    Dense,
    Csr {
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Values {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl Values {
    fn len(&self) -> usize {
        match self {
            Values::Real(v) => v.len(),
            Values::Complex(v) => v.len(),
        }
    }

    #[inline]
    fn get(&self, k: usize) -> Complex64 {
        match self {
            Values::Real(v) => Complex64::new(v[k], 0.0),
            Values::Complex(v) => v[k],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    layout: Layout,
    values: Values,
}

/// Shape, stored-nonzero count and arithmetic mode of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDescriptor {
    pub nrows: usize,
    pub ncols: usize,
    pub nnz: usize,
    pub mode: Mode,
    pub sparse: bool,
}

/// Row sums `r_i` and column sums `c_j` of `|A|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginSums {
    pub row_sums: Vec<f64>,
    pub col_sums: Vec<f64>,
}

impl MarginSums {
    pub fn total(&self) -> f64 {
        self.row_sums.iter().sum()
    }
}

/// Iterates `(storage position, column)` pairs of one row in stored order.
struct RowPositions<'a> {
    cols: Option<&'a [usize]>,
    base: usize,
    len: usize,
    pos: usize,
}

impl Iterator for RowPositions<'_> {
    type Item = (usize, usize);

    #[inline]
    fn next(&mut self) -> Option<(usize, usize)> {
        if self.pos == self.len {
            return None;
        }
        let p = self.pos;
        self.pos += 1;
        Some(match self.cols {
            Some(c) => (self.base + p, c[p]),
            None => (self.base + p, p),
        })
    }
}

fn check_shape(nrows: usize, ncols: usize) -> Result<()> {
    if nrows == 0 || ncols == 0 {
        return Err(Error::Shape(format!(
            "matrix dimensions must be positive, got {nrows}x{ncols}"
        )));
    }
    Ok(())
}

fn check_finite(z: Complex64, row: usize, col: usize) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { row, col })
    }
}

impl Matrix {
    /// Real dense matrix from row-major data.
    pub fn from_dense(nrows: usize, ncols: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(nrows, ncols)?;
        if data.len() != nrows * ncols {
            return Err(Error::Shape(format!(
                "dense data has {} values, expected {}",
                data.len(),
                nrows * ncols
            )));
        }
        for (k, &x) in data.iter().enumerate() {
            check_finite(Complex64::new(x, 0.0), k / ncols, k % ncols)?;
        }
        Ok(Matrix {
            nrows,
            ncols,
            layout: Layout::Dense,
            values: Values::Real(data),
        })
    }

    /// Complex dense matrix from row-major data.
    pub fn from_dense_complex(nrows: usize, ncols: usize, data: Vec<Complex64>) -> Result<Self> {
        check_shape(nrows, ncols)?;
        if data.len() != nrows * ncols {
            return Err(Error::Shape(format!(
                "dense data has {} values, expected {}",
                data.len(),
                nrows * ncols
            )));
        }
        for (k, &z) in data.iter().enumerate() {
            check_finite(z, k / ncols, k % ncols)?;
        }
        Ok(Matrix {
            nrows,
            ncols,
            layout: Layout::Dense,
            values: Values::Complex(data),
        })
    }

    /// Real dense matrix from a slice of equal-length rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_dense(nrows, ncols, data)
    }

    /// Real CSR matrix from coordinate triplets. Duplicates are summed and
    /// zeros dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let t: Vec<_> = triplets
            .iter()
            .map(|&(i, j, x)| (i, j, Complex64::new(x, 0.0)))
            .collect();
        Self::build_csr(nrows, ncols, t, Mode::Real)
    }

    /// Complex CSR matrix from coordinate triplets.
    pub fn from_complex_triplets(
        nrows: usize,
        ncols: usize,
        triplets: &[(usize, usize, Complex64)],
    ) -> Result<Self> {
        Self::build_csr(nrows, ncols, triplets.to_vec(), Mode::Complex)
    }

    fn build_csr(
        nrows: usize,
        ncols: usize,
        mut t: Vec<(usize, usize, Complex64)>,
        mode: Mode,
    ) -> Result<Self> {
        check_shape(nrows, ncols)?;
        for &(i, j, z) in &t {
            if i >= nrows || j >= ncols {
                return Err(Error::Shape(format!(
                    "entry ({i}, {j}) out of range for {nrows}x{ncols}"
                )));
            }
            check_finite(z, i, j)?;
        }
        // Stable sort keeps duplicate summation in input order.
        t.sort_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(t.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(t.len());
        let mut rows_of = Vec::with_capacity(t.len());
        let mut k = 0;
        while k < t.len() {
            let (i, j, mut z) = t[k];
            k += 1;
            while k < t.len() && t[k].0 == i && t[k].1 == j {
                z += t[k].2;
                k += 1;
            }
            if z != Complex64::new(0.0, 0.0) {
                col_idx.push(j);
                vals.push(z);
                rows_of.push(i);
            }
        }
        for &i in &rows_of {
            row_ptr[i + 1] += 1;
        }
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        let values = match mode {
            Mode::Real => Values::Real(vals.iter().map(|z| z.re).collect()),
            Mode::Complex => Values::Complex(vals),
        };
        Ok(Matrix {
            nrows,
            ncols,
            layout: Layout::Csr { row_ptr, col_idx },
            values,
        })
    }

    /// Real CSR matrix from raw parts; the parts must already be canonical.
    pub fn from_csr(
        nrows: usize,
        ncols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        check_shape(nrows, ncols)?;
        validate_csr(nrows, ncols, &row_ptr, &col_idx, values.len())?;
        for i in 0..nrows {
            for k in row_ptr[i]..row_ptr[i + 1] {
                check_finite(Complex64::new(values[k], 0.0), i, col_idx[k])?;
                if values[k] == 0.0 {
                    return Err(Error::InvalidSparse(format!(
                        "explicit zero stored at ({i}, {})",
                        col_idx[k]
                    )));
                }
            }
        }
        Ok(Matrix {
            nrows,
            ncols,
            layout: Layout::Csr { row_ptr, col_idx },
            values: Values::Real(values),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let t: Vec<_> = (0..n).map(|i| (i, i, 1.0)).collect();
        Self::from_triplets(n, n, &t)
    }

    /// Sparse all-zero matrix (empty pattern).
    pub fn zeros(nrows: usize, ncols: usize) -> Result<Self> {
        Self::from_triplets(nrows, ncols, &[])
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn mode(&self) -> Mode {
        match self.values {
            Values::Real(_) => Mode::Real,
            Values::Complex(_) => Mode::Complex,
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.layout, Layout::Csr { .. })
    }

    /// Number of nonzero entries (stored entries for CSR, nonzero values for
    /// dense storage).
    pub fn nnz(&self) -> usize {
        match (&self.layout, &self.values) {
            (Layout::Csr { .. }, v) => v.len(),
            (Layout::Dense, Values::Real(v)) => v.iter().filter(|x| **x != 0.0).count(),
            (Layout::Dense, Values::Complex(v)) => v.iter().filter(|z| !num_traits::Zero::is_zero(*z)).count(),
        }
    }

    pub fn descriptor(&self) -> MatrixDescriptor {
        MatrixDescriptor {
            nrows: self.nrows,
            ncols: self.ncols,
            nnz: self.nnz(),
            mode: self.mode(),
            sparse: self.is_sparse(),
        }
    }

    #[inline]
    fn row_positions(&self, i: usize) -> RowPositions<'_> {
        match &self.layout {
            Layout::Dense => RowPositions {
                cols: None,
                base: i * self.ncols,
                len: self.ncols,
                pos: 0,
            },
            Layout::Csr { row_ptr, col_idx } => {
                let (s, e) = (row_ptr[i], row_ptr[i + 1]);
                RowPositions {
                    cols: Some(&col_idx[s..e]),
                    base: s,
                    len: e - s,
                    pos: 0,
                }
            }
        }
    }

    /// Entry `(i, j)`, zero when not stored.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        match &self.layout {
            Layout::Dense => self.values.get(i * self.ncols + j),
            Layout::Csr { row_ptr, col_idx } => {
                let cols = &col_idx[row_ptr[i]..row_ptr[i + 1]];
                match cols.binary_search(&j) {
                    Ok(p) => self.values.get(row_ptr[i] + p),
                    Err(_) => Complex64::new(0.0, 0.0),
                }
            }
        }
    }

    /// Nonzero entries `(i, j, a_ij)` in row-major stored order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            self.row_positions(i)
                .map(move |(k, j)| (i, j, self.values.get(k)))
                .filter(|(_, _, z)| z.re != 0.0 || z.im != 0.0)
        })
    }

    /// Row-major dense copy of all entries.
    pub fn to_dense_values(&self) -> Vec<Scalar> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.nrows * self.ncols];
        for (i, j, z) in self.entries() {
            out[i * self.ncols + j] = z;
        }
        out
    }

    /// Same entries in dense storage, mode preserved.
    pub fn to_dense(&self) -> Matrix {
        let d = self.to_dense_values();
        let values = match self.mode() {
            Mode::Real => Values::Real(d.iter().map(|z| z.re).collect()),
            Mode::Complex => Values::Complex(d),
        };
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            layout: Layout::Dense,
            values,
        }
    }

    /// Same entries in canonical CSR storage, mode preserved.
    pub fn to_csr(&self) -> Matrix {
        let t: Vec<_> = self.entries().collect();
        Self::build_csr(self.nrows, self.ncols, t, self.mode()).expect("entries are in range")
    }

    /// Entries of the real part; `None` for complex-mode matrices.
    pub fn real_values(&self) -> Option<&[f64]> {
        match &self.values {
            Values::Real(v) => Some(v),
            Values::Complex(_) => None,
        }
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        match &self.values {
            Values::Real(v) => v.iter().map(|x| x * x).sum(),
            Values::Complex(v) => v.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        match &self.values {
            Values::Real(v) => v.iter().all(|x| *x == 0.0),
            Values::Complex(v) => v.iter().all(|z| z.re == 0.0 && z.im == 0.0),
        }
    }

    fn map_values(&self, f_real: impl Fn(f64) -> f64, f_cpx: impl Fn(Complex64) -> Complex64) -> Matrix {
        let values = match &self.values {
            Values::Real(v) => Values::Real(v.iter().map(|&x| f_real(x)).collect()),
            Values::Complex(v) => Values::Complex(v.iter().map(|&z| f_cpx(z)).collect()),
        };
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            layout: self.layout.clone(),
            values,
        }
    }

    /// `c * A` for a real factor `c != 0`.
    pub fn scaled(&self, c: f64) -> Result<Matrix> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::Config(format!("scale factor must be finite and nonzero, got {c}")));
        }
        Ok(self.map_values(|x| c * x, |z| z * c))
    }

    /// Complex conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let t: Vec<_> = self.entries().map(|(i, j, z)| (j, i, z.conj())).collect();
        let csr = Self::build_csr(self.ncols, self.nrows, t, self.mode()).expect("entries are in range");
        if self.is_sparse() {
            csr
        } else {
            csr.to_dense()
        }
    }

    /// `B[i][j] = A[row_perm[i]][col_perm[j]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Matrix> {
        let rinv = invert_permutation(row_perm, self.nrows)?;
        let cinv = invert_permutation(col_perm, self.ncols)?;
        let t: Vec<_> = self.entries().map(|(i, j, z)| (rinv[i], cinv[j], z)).collect();
        let csr = Self::build_csr(self.nrows, self.ncols, t, self.mode())?;
        Ok(if self.is_sparse() { csr } else { csr.to_dense() })
    }

    /// Block with the given rows and columns, in the given order. Storage
    /// follows the parent.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        let mut col_map = vec![usize::MAX; self.ncols];
        for (b, &j) in cols.iter().enumerate() {
            if j >= self.ncols {
                return Err(Error::Shape(format!("column {j} out of range")));
            }
            col_map[j] = b;
        }
        let mut t = Vec::new();
        for (a, &i) in rows.iter().enumerate() {
            if i >= self.nrows {
                return Err(Error::Shape(format!("row {i} out of range")));
            }
            for (k, j) in self.row_positions(i) {
                let z = self.values.get(k);
                if col_map[j] != usize::MAX && (z.re != 0.0 || z.im != 0.0) {
                    t.push((a, col_map[j], z));
                }
            }
        }
        let csr = Self::build_csr(rows.len(), cols.len(), t, self.mode())?;
        Ok(if self.is_sparse() { csr } else { csr.to_dense() })
    }
}

fn validate_csr(nrows: usize, ncols: usize, row_ptr: &[usize], col_idx: &[usize], nvals: usize) -> Result<()> {
    if row_ptr.len() != nrows + 1 || row_ptr[0] != 0 {
        return Err(Error::InvalidSparse("row pointer array malformed".into()));
    }
    if row_ptr.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidSparse("row pointers must be non-decreasing".into()));
    }
    if row_ptr[nrows] != col_idx.len() || col_idx.len() != nvals {
        return Err(Error::InvalidSparse("index and value arrays disagree in length".into()));
    }
    for i in 0..nrows {
        let cols = &col_idx[row_ptr[i]..row_ptr[i + 1]];
        if cols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSparse(format!(
                "column indices of row {i} not strictly increasing"
            )));
        }
        if cols.last().is_some_and(|&j| j >= ncols) {
            return Err(Error::InvalidSparse(format!("column index out of range in row {i}")));
        }
    }
    Ok(())
}

fn invert_permutation(perm: &[usize], n: usize) -> Result<Vec<usize>> {
    if perm.len() != n {
        return Err(Error::Shape(format!("permutation length {} != {n}", perm.len())));
    }
    let mut inv = vec![usize::MAX; n];
    for (new, &old) in perm.iter().enumerate() {
        if old >= n || inv[old] != usize::MAX {
            return Err(Error::Shape("not a permutation".into()));
        }
        inv[old] = new;
    }
    Ok(inv)
}

/// `|A|`: same shape and pattern, real mode, entries replaced by their moduli.
pub fn modulus_matrix(a: &Matrix) -> Matrix {
    let values = match &a.values {
        Values::Real(v) => Values::Real(v.iter().map(|x| x.abs()).collect()),
        Values::Complex(v) => Values::Real(v.iter().map(|z| z.norm()).collect()),
    };
    Matrix {
        nrows: a.nrows,
        ncols: a.ncols,
        layout: a.layout.clone(),
        values,
    }
}

/// Row and column sums of `|A|`, accumulated in stored order.
pub fn margin_sums(a: &Matrix) -> MarginSums {
    let mut row_sums = vec![0.0; a.nrows];
    let mut col_sums = vec![0.0; a.ncols];
    for (i, rs) in row_sums.iter_mut().enumerate() {
        for (k, j) in a.row_positions(i) {
            let m = a.values.get(k).norm();
            *rs += m;
            col_sums[j] += m;
        }
    }
    MarginSums { row_sums, col_sums }
}

fn apply_kernel<T: Entry>(a: &Matrix, val: impl Fn(usize) -> T, x: &[T]) -> Vec<T> {
    let mut y = vec![T::zero(); a.nrows];
    for (i, yi) in y.iter_mut().enumerate() {
        let mut s = T::zero();
        for (k, j) in a.row_positions(i) {
            s += val(k) * x[j];
        }
        *yi = s;
    }
    y
}

fn adjoint_kernel<T: Entry>(a: &Matrix, val: impl Fn(usize) -> T, x: &[T]) -> Vec<T> {
    let mut z = vec![T::zero(); a.ncols];
    let zero = T::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == zero {
            continue;
        }
        for (k, j) in a.row_positions(i) {
            z[j] += val(k).conj() * xi;
        }
    }
    z
}

fn check_vector_mode<T: Entry>(a: &Matrix) -> Result<()> {
    if a.mode() == Mode::Complex && !T::IS_COMPLEX {
        return Err(Error::ModeMismatch);
    }
    Ok(())
}

/// `y = A x`.
pub fn apply<T: Entry>(a: &Matrix, x: &[T]) -> Result<Vec<T>> {
    check_vector_mode::<T>(a)?;
    if x.len() != a.ncols {
        return Err(Error::Shape(format!(
            "vector length {} != column count {}",
            x.len(),
            a.ncols
        )));
    }
    Ok(match &a.values {
        Values::Real(v) => apply_kernel(a, |k| T::from_real(v[k]), x),
        Values::Complex(v) => apply_kernel(a, |k| T::from_complex(v[k]), x),
    })
}

/// `z = A* x`, scattered row by row.
pub fn adjoint_apply<T: Entry>(a: &Matrix, x: &[T]) -> Result<Vec<T>> {
    check_vector_mode::<T>(a)?;
    if x.len() != a.nrows {
        return Err(Error::Shape(format!(
            "vector length {} != row count {}",
            x.len(),
            a.nrows
        )));
    }
    Ok(match &a.values {
        Values::Real(v) => adjoint_kernel(a, |k| T::from_real(v[k]), x),
        Values::Complex(v) => adjoint_kernel(a, |k| T::from_complex(v[k]), x),
    })
}

/// One application of the Gram operator, `A (A* x)`, as two mat-vec passes.
/// `AA*` is never formed.
pub fn gram_apply<T: Entry>(a: &Matrix, x: &[T]) -> Result<Vec<T>> {
    let z = adjoint_apply(a, x)?;
    apply(a, &z)
}

/// `A* (A x)`, the Gram operator of the other side.
pub fn adjoint_gram_apply<T: Entry>(a: &Matrix, x: &[T]) -> Result<Vec<T>> {
    let z = apply(a, x)?;
    adjoint_apply(a, &z)
}

/// Sum of all entries of `AA*`, computed as `||A* 1||^2`.
pub fn entry_sum_gram(a: &Matrix) -> f64 {
    match a.mode() {
        Mode::Real => {
            let z = adjoint_apply(a, &vec![1.0_f64; a.nrows]).expect("shape");
            z.iter().map(|v| v * v).sum()
        }
        Mode::Complex => {
            let z = adjoint_apply(a, &vec![Complex64::new(1.0, 0.0); a.nrows]).expect("shape");
            z.iter().map(|v| v.norm_sqr()).sum()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m22() -> Matrix {
        Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap()
    }

    fn star(n: usize) -> Matrix {
        let mut t = Vec::new();
        for leaf in 1..=n {
            t.push((0, leaf, 1.0));
            t.push((leaf, 0, 1.0));
        }
        Matrix::from_triplets(n + 1, n + 1, &t).unwrap()
    }

    #[test]
    fn modulus_removes_signs_and_phases() {
        let a = Matrix::from_rows(&[[1.0, -2.0], [3.0, 4.0]]).unwrap();
        let m = modulus_matrix(&a);
        assert_eq!(m, Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap());

        let c = Matrix::from_dense_complex(1, 1, vec![Complex64::new(3.0, 4.0)]).unwrap();
        let mc = modulus_matrix(&c);
        assert_eq!(mc.mode(), Mode::Real);
        assert_eq!(mc.get(0, 0).re, 5.0);

        let id = Matrix::identity(3).unwrap();
        assert_eq!(modulus_matrix(&id), id);
    }

    #[test]
    fn margins_of_small_cases() {
        let s = margin_sums(&m22());
        assert_eq!(s.row_sums, vec![3.0, 7.0]);
        assert_eq!(s.col_sums, vec![4.0, 6.0]);

        let s = margin_sums(&star(3));
        assert_eq!(s.row_sums, vec![3.0, 1.0, 1.0, 1.0]);
        assert_eq!(s.col_sums, vec![3.0, 1.0, 1.0, 1.0]);

        let s = margin_sums(&Matrix::zeros(2, 3).unwrap());
        assert_eq!(s.row_sums, vec![0.0; 2]);
        assert_eq!(s.col_sums, vec![0.0; 3]);
    }

    #[test]
    fn gram_apply_examples() {
        let id = Matrix::identity(3).unwrap();
        assert_eq!(gram_apply(&id, &[1.0, 1.0, 1.0]).unwrap(), vec![1.0, 1.0, 1.0]);
        assert_eq!(gram_apply(&m22(), &[1.0, 1.0]).unwrap(), vec![16.0, 36.0]);
        let a = Matrix::from_rows(&[[1.0], [-1.0]]).unwrap();
        assert_eq!(gram_apply(&a, &[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn gram_apply_rejects_bad_inputs() {
        assert!(matches!(gram_apply(&m22(), &[1.0]), Err(Error::Shape(_))));
        let c = Matrix::from_dense_complex(1, 1, vec![Complex64::new(0.0, 1.0)]).unwrap();
        assert_eq!(gram_apply(&c, &[1.0]), Err(Error::ModeMismatch));
        let y = gram_apply(&c, &[Complex64::new(1.0, 0.0)]).unwrap();
        assert_eq!(y, vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn entry_sum_examples() {
        assert_eq!(entry_sum_gram(&Matrix::from_rows(&[[1.0], [-1.0]]).unwrap()), 0.0);
        assert_eq!(entry_sum_gram(&m22()), 52.0);
        assert_eq!(entry_sum_gram(&Matrix::identity(5).unwrap()), 5.0);
    }

    #[test]
    fn triplets_are_canonicalized() {
        let a = Matrix::from_triplets(2, 3, &[(1, 2, 1.0), (0, 1, 2.0), (1, 2, 3.0), (0, 0, 0.0), (1, 0, 5.0), (1, 0, -5.0)])
            .unwrap();
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.get(1, 2).re, 4.0);
        assert_eq!(a.get(0, 1).re, 2.0);
        assert_eq!(a.get(1, 0).re, 0.0);
        assert_eq!(a.to_dense().to_csr(), a);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Matrix::from_dense(0, 2, vec![]), Err(Error::Shape(_))));
        assert!(matches!(Matrix::from_dense(1, 2, vec![1.0]), Err(Error::Shape(_))));
        assert_eq!(
            Matrix::from_dense(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
        assert!(matches!(Matrix::from_triplets(2, 2, &[(2, 0, 1.0)]), Err(Error::Shape(_))));
        assert!(matches!(
            Matrix::from_csr(2, 2, vec![0, 2, 2], vec![1, 0], vec![1.0, 1.0]),
            Err(Error::InvalidSparse(_))
        ));
        assert!(matches!(
            Matrix::from_csr(2, 2, vec![0, 1, 1], vec![0], vec![0.0]),
            Err(Error::InvalidSparse(_))
        ));
        assert!(Matrix::from_csr(2, 2, vec![0, 1, 2], vec![1, 0], vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn submatrix_and_permutation() {
        let a = m22();
        let b = a.submatrix(&[1], &[0, 1]).unwrap();
        assert_eq!(b, Matrix::from_rows(&[[3.0, 4.0]]).unwrap());
        let p = a.permuted(&[1, 0], &[1, 0]).unwrap();
        assert_eq!(p, Matrix::from_rows(&[[4.0, 3.0], [2.0, 1.0]]).unwrap());
        assert!(a.permuted(&[0, 0], &[0, 1]).is_err());
    }
}
