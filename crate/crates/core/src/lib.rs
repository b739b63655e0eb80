//! Certified bounds on the largest singular value of a matrix.
//!
//! The cheap end of the toolbox is the row/column-sum family
//! ([`schur_bound`], [`refined_bound`], [`support_bound`]). The walk-ratio
//! bounds ([`walk_upper_bound`], [`walk_lower_bound`]) trade a few Gram
//! applications for tighter values and, iterated by [`sandwich_estimate`],
//! close in on `sigma(A)` itself for nonnegative matrices. Block partitions
//! are handled in [`blocks`]; [`oracle`] supplies an independent reference
//! value for verification.
//!
//! ```
//! use sigma_bounds::{refined_bound, schur_bound, walk_lower_bound, Matrix};
//!
//! let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
//! assert_eq!(schur_bound(&a).unwrap().raw_2p_value, 42.0);
//! assert_eq!(refined_bound(&a).unwrap().raw_2p_value, 36.0);
//! assert_eq!(walk_lower_bound(&a, 0, 1).unwrap().raw_2p_value, 26.0);
//! ```

pub mod blocks;
pub mod bounds;
pub mod error;
pub mod generate;
pub mod matrix;
pub mod mtx;
pub mod oracle;
pub mod scalar;
pub mod walk;

pub use blocks::{
    block_partin_bound, block_sigma_bound, compress, parse_part_sizes, BlockPartition, CompressionMatrix, PartinBounds,
};
pub use bounds::{
    bound_report, degeneracy_check, refined_bound, rowwise_walk_estimate, sandwich_estimate, schur_bound,
    support_bound, walk_lower_bound, walk_upper_bound, BoundKind, BoundReport, BoundValue, DegeneracyReport,
    SandwichConfig, SandwichOutcome,
};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorSpec};
pub use matrix::{
    adjoint_apply, apply, entry_sum_gram, gram_apply, margin_sums, modulus_matrix, MarginSums, Matrix,
    MatrixDescriptor, Mode,
};
pub use mtx::{parse_matrix_market, parse_matrix_market_str, to_matrix_market_string, write_matrix_market};
pub use oracle::{exact_small_sigma, reference_sigma, OracleConfig, OracleResult};
pub use scalar::Scalar;
pub use walk::{walk_init, walk_step, WalkLedger, WalkState, WalkTotal, WalkVector};
