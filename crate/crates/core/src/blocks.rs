//! Bounds for block-partitioned matrices.
//!
//! Compressing each block `A_ij` to its largest singular value gives a small
//! nonnegative matrix `B` with `sigma(A) <= sigma(B)`. The refined/support
//! chain applied to `B` then bounds `sigma(B)` and hence `sigma(A)`.

use crate::bounds::{refined_bound, support_bound, BoundKind, BoundValue};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::{reference_sigma, OracleConfig, OracleResult};
use serde::{Deserialize, Serialize};

/// Row and column index partitions. Parts may be arbitrary index sets; each
/// block keeps its indices in the order listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    row_parts: Vec<Vec<usize>>,
    col_parts: Vec<Vec<usize>>,
}

fn check_cover(parts: &[Vec<usize>], n: usize, what: &str) -> Result<()> {
    if parts.is_empty() {
        return Err(Error::Partition(format!("no {what} parts")));
    }
    let mut seen = vec![false; n];
    for (k, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::Partition(format!("{what} part {k} is empty")));
        }
        for &i in part {
            if i >= n {
                return Err(Error::Partition(format!("{what} index {i} out of range 0..{n}")));
            }
            if seen[i] {
                return Err(Error::Partition(format!("{what} index {i} appears twice")));
            }
            seen[i] = true;
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::Partition(format!("{what} index {i} not covered")));
    }
    Ok(())
}

fn contiguous(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let p: Vec<usize> = (start..start + s).collect();
            start += s;
            p
        })
        .collect()
}

impl BlockPartition {
    pub fn new(row_parts: Vec<Vec<usize>>, col_parts: Vec<Vec<usize>>) -> Self {
        BlockPartition { row_parts, col_parts }
    }

    /// Contiguous blocks of the given sizes.
    pub fn from_sizes(row_sizes: &[usize], col_sizes: &[usize]) -> Self {
        BlockPartition {
            row_parts: contiguous(row_sizes),
            col_parts: contiguous(col_sizes),
        }
    }

    /// One block holding the whole matrix.
    pub fn trivial(nrows: usize, ncols: usize) -> Self {
        Self::from_sizes(&[nrows], &[ncols])
    }

    /// Every index in its own part.
    pub fn finest(nrows: usize, ncols: usize) -> Self {
        Self::from_sizes(&vec![1; nrows], &vec![1; ncols])
    }

    pub fn row_parts(&self) -> &[Vec<usize>] {
        &self.row_parts
    }

    pub fn col_parts(&self) -> &[Vec<usize>] {
        &self.col_parts
    }

    /// Checks that the parts partition `0..nrows` and `0..ncols`.
    pub fn validate(&self, nrows: usize, ncols: usize) -> Result<()> {
        check_cover(&self.row_parts, nrows, "row")?;
        check_cover(&self.col_parts, ncols, "column")
    }
}

/// Parses comma-separated part sizes such as `"2,2"`.
pub fn parse_part_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(0) => Err(Error::Partition("part sizes must be positive".into())),
                Ok(v) => Ok(v),
                Err(_) => Err(Error::Partition(format!("bad part size {t:?}"))),
            }
        })
        .collect()
}

/// `B = (sigma(A_ij))` together with the oracle run behind each entry.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressionMatrix {
    pub b: Matrix,
    /// Row-major, one per block.
    pub block_oracles: Vec<OracleResult>,
}

/// Builds the block-sigma compression matrix of `a`.
pub fn compress(a: &Matrix, part: &BlockPartition) -> Result<CompressionMatrix> {
    compress_with(a, part, &OracleConfig::default())
}

pub fn compress_with(a: &Matrix, part: &BlockPartition, cfg: &OracleConfig) -> Result<CompressionMatrix> {
    part.validate(a.nrows(), a.ncols())?;
    let p = part.row_parts.len();
    let q = part.col_parts.len();
    let mut data = Vec::with_capacity(p * q);
    let mut block_oracles = Vec::with_capacity(p * q);
    for rows in &part.row_parts {
        for cols in &part.col_parts {
            let block = a.submatrix(rows, cols)?;
            let res = reference_sigma(&block, cfg);
            data.push(res.sigma);
            block_oracles.push(res);
        }
    }
    Ok(CompressionMatrix {
        b: Matrix::from_dense(p, q, data)?,
        block_oracles,
    })
}

/// `sigma(A) <= sigma(B)`, reported as a bound with `p = 1`.
pub fn block_sigma_bound(a: &Matrix, part: &BlockPartition) -> Result<BoundValue> {
    let c = compress(a, part)?;
    Ok(block_sigma_bound_from(&c))
}

pub fn block_sigma_bound_from(c: &CompressionMatrix) -> BoundValue {
    let s = reference_sigma(&c.b, &OracleConfig::default()).sigma;
    BoundValue {
        kind: BoundKind::Upper,
        value: s,
        raw_2p_value: s * s,
        r: 0,
        p: 1,
        certified: true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartinBounds {
    /// `max_i sum_k sigma(A_ik) C_k`, with `C_k` the column sums of `B`.
    pub mid: BoundValue,
    /// `max over nonzero blocks of R_i C_j`.
    pub support: BoundValue,
}

/// The refined/support chain applied to the compression matrix.
pub fn block_partin_bound(a: &Matrix, part: &BlockPartition) -> Result<PartinBounds> {
    let c = compress(a, part)?;
    block_partin_bound_from(&c)
}

pub fn block_partin_bound_from(c: &CompressionMatrix) -> Result<PartinBounds> {
    if c.b.is_zero() {
        let z = BoundValue {
            kind: BoundKind::Upper,
            value: 0.0,
            raw_2p_value: 0.0,
            r: 0,
            p: 1,
            certified: true,
        };
        return Ok(PartinBounds { mid: z, support: z });
    }
    Ok(PartinBounds {
        mid: refined_bound(&c.b)?,
        support: support_bound(&c.b)?,
    })
}
