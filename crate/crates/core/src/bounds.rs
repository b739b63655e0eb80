//! Scalar bounds on `sigma(A)`.
//!
//! Row/column-sum bounds:
//!
//! ```text
//! sigma^2 <= max_i sum_j |a_ij| c_j          (refined)
//!         <= max_{a_ij != 0} r_i c_j         (support)
//!         <= max_{i, j} r_i c_j              (Schur)
//! ```
//!
//! Walk-ratio bounds, with `w^r(k)` the row sums of `(AA*)^r`:
//!
//! ```text
//! sigma^(2p) <= max_{k : w^r_|A|(k) != 0} w^(r+p)_|A|(k) / w^r_|A|(k)
//! sigma^(2p) >= w^(r+p)_A / w^r_A                    when sum(AA*) != 0
//! ```
//!
//! The lower ratio tends to `sigma^(2p)` as `r` grows unless the top
//! eigenspace of `AA*` is orthogonal to the all-ones vector; the upper ratio
//! tends to `sigma(|A|)^(2p)`. [`sandwich_estimate`] iterates both until they
//! meet.

use crate::error::{Error, Result};
use crate::matrix::{entry_sum_gram, gram_apply, margin_sums, modulus_matrix, Matrix, MatrixDescriptor, Mode};
use crate::oracle::{reference_sigma, OracleConfig, OracleResult};
use crate::scalar::norm2;
use crate::walk::{WalkLedger, WalkVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
    Estimate,
}

/// A bound on `sigma` (`value`) and on `sigma^(2p)` (`raw_2p_value`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub kind: BoundKind,
    pub value: f64,
    pub raw_2p_value: f64,
    pub r: usize,
    pub p: usize,
    pub certified: bool,
}

impl BoundValue {
    fn from_raw(kind: BoundKind, raw: f64, r: usize, p: usize, certified: bool) -> Self {
        BoundValue {
            kind,
            value: raw.powf(1.0 / (2 * p) as f64),
            raw_2p_value: raw,
            r,
            p,
            certified,
        }
    }

    /// Built from `ln(raw)` so that `value` stays finite when `raw` does not.
    fn from_log_raw(kind: BoundKind, log_raw: f64, raw: f64, r: usize, p: usize, certified: bool) -> Self {
        let value = if log_raw == f64::NEG_INFINITY {
            0.0
        } else {
            (log_raw / (2 * p) as f64).exp()
        };
        BoundValue {
            kind,
            value,
            raw_2p_value: raw,
            r,
            p,
            certified,
        }
    }

    fn exact_zero(kind: BoundKind, r: usize, p: usize) -> Self {
        BoundValue {
            kind,
            value: 0.0,
            raw_2p_value: 0.0,
            r,
            p,
            certified: true,
        }
    }
}

fn require_nonzero(a: &Matrix) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroMatrix)
    } else {
        Ok(())
    }
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Config("p must be at least 1".into()));
    }
    Ok(())
}

/// `sigma^2 <= max_{i,j} r_i c_j`.
pub fn schur_bound(a: &Matrix) -> Result<BoundValue> {
    require_nonzero(a)?;
    let s = margin_sums(a);
    let rmax = s.row_sums.iter().cloned().fold(0.0, f64::max);
    let cmax = s.col_sums.iter().cloned().fold(0.0, f64::max);
    Ok(BoundValue::from_raw(BoundKind::Upper, rmax * cmax, 0, 1, true))
}

/// `sigma^2 <= max_i sum_j |a_ij| c_j`.
pub fn refined_bound(a: &Matrix) -> Result<BoundValue> {
    require_nonzero(a)?;
    let abs = modulus_matrix(a);
    let s = margin_sums(a);
    let per_row = crate::matrix::apply(&abs, &s.col_sums)?;
    let raw = per_row.iter().cloned().fold(0.0, f64::max);
    Ok(BoundValue::from_raw(BoundKind::Upper, raw, 0, 1, true))
}

/// `sigma^2 <= max over nonzero a_ij of r_i c_j`.
pub fn support_bound(a: &Matrix) -> Result<BoundValue> {
    require_nonzero(a)?;
    let s = margin_sums(a);
    let raw = a
        .entries()
        .map(|(i, j, _)| s.row_sums[i] * s.col_sums[j])
        .fold(0.0, f64::max);
    Ok(BoundValue::from_raw(BoundKind::Upper, raw, 0, 1, true))
}

/// Upper bound from a ledger built on `|A|`, levels `r` and `r + p`.
pub fn walk_upper_from_ledger(ledger: &WalkLedger, r: usize, p: usize) -> Result<BoundValue> {
    check_p(p)?;
    let (den, den_log) = ledger.row_values(r)?;
    let (num, num_log) = ledger.row_values(r + p)?;
    let (den, num) = match (den, num) {
        (WalkVector::Real(d), WalkVector::Real(n)) => (d, n),
        _ => return Err(Error::ModeMismatch),
    };
    let mut best: Option<f64> = None;
    for (d, n) in den.iter().zip(num) {
        if *d > 0.0 {
            let q = n / d;
            if best.is_none_or(|b| q > b) {
                best = Some(q);
            }
        }
    }
    let ratio = best.ok_or(Error::DeadWalk { level: r })?;
    let dlog = num_log - den_log;
    let log_raw = if ratio > 0.0 { dlog + ratio.ln() } else { f64::NEG_INFINITY };
    let raw = dlog.exp() * ratio;
    Ok(BoundValue::from_log_raw(BoundKind::Upper, log_raw, raw, r, p, true))
}

/// `sigma^(2p) <= max_k w^(r+p)_|A|(k) / w^r_|A|(k)` over `k` with
/// `w^r_|A|(k) != 0`.
pub fn walk_upper_bound(a: &Matrix, r: usize, p: usize) -> Result<BoundValue> {
    require_nonzero(a)?;
    check_p(p)?;
    let abs = modulus_matrix(a);
    let ledger = WalkLedger::build(&abs, r + p)?;
    walk_upper_from_ledger(&ledger, r, p)
}

/// Lower bound from a ledger built on `A` itself.
pub fn walk_lower_from_ledger(ledger: &WalkLedger, r: usize, p: usize) -> Result<BoundValue> {
    check_p(p)?;
    let den = ledger.total(r)?;
    let num = ledger.total(r + p)?;
    if !(den.total_scaled > 0.0) {
        return Err(Error::Numerical(format!(
            "walk total at level {r} is {:e} although the entry sum of AA* is positive",
            den.total_scaled
        )));
    }
    let ratio = num.total_scaled.max(0.0) / den.total_scaled;
    let dlog = num.log_scale - den.log_scale;
    let log_raw = if ratio > 0.0 { dlog + ratio.ln() } else { f64::NEG_INFINITY };
    let raw = dlog.exp() * ratio;
    Ok(BoundValue::from_log_raw(BoundKind::Lower, log_raw, raw, r, p, true))
}

/// `sigma^(2p) >= w^(r+p)_A / w^r_A`.
pub fn walk_lower_bound(a: &Matrix, r: usize, p: usize) -> Result<BoundValue> {
    check_p(p)?;
    let d = degeneracy_check(a);
    if d.w1_zero {
        return Err(Error::TheoremInapplicable { entry_sum: d.entry_sum });
    }
    let ledger = WalkLedger::build(a, r + p)?;
    walk_lower_from_ledger(&ledger, r, p)
}

/// Per-row walk ratio on `A` itself, `max_k Re(w^(r+p)_A(k) / w^r_A(k))`
/// over rows with `w^r_A(k) != 0`. Not a bound for finite `r`; it tends to
/// `sigma^(2p)` for matrices whose top eigenspace is not orthogonal to the
/// all-ones vector.
pub fn rowwise_walk_estimate(a: &Matrix, r: usize, p: usize) -> Result<BoundValue> {
    require_nonzero(a)?;
    check_p(p)?;
    let ledger = WalkLedger::build(a, r + p)?;
    let (den, den_log) = ledger.row_values(r)?;
    let (num, num_log) = ledger.row_values(r + p)?;
    let mut best: Option<f64> = None;
    for k in 0..den.len() {
        let d = den.get(k);
        if d.re != 0.0 || d.im != 0.0 {
            let q = (num.get(k) / d).re;
            if best.is_none_or(|b| q > b) {
                best = Some(q);
            }
        }
    }
    let ratio = best.ok_or(Error::DeadWalk { level: r })?.max(0.0);
    let dlog = num_log - den_log;
    let log_raw = if ratio > 0.0 { dlog + ratio.ln() } else { f64::NEG_INFINITY };
    Ok(BoundValue::from_log_raw(
        BoundKind::Estimate,
        log_raw,
        dlog.exp() * ratio,
        r,
        p,
        false,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    /// `sum(AA*) <= 1e-12 * ||A||_F^2`.
    pub w1_zero: bool,
    pub entry_sum: f64,
    /// `||AA* 1||_2`.
    pub gram_ones_residual: f64,
}

/// Detects `sum(AA*) = 0`, in which case the all-ones vector is a null vector
/// of `AA*` and every walk total `w^r`, `r >= 1`, vanishes.
pub fn degeneracy_check(a: &Matrix) -> DegeneracyReport {
    let entry_sum = entry_sum_gram(a);
    let fro = a.frobenius_norm_sqr();
    let residual = match a.mode() {
        Mode::Real => norm2(&gram_apply(a, &vec![1.0_f64; a.nrows()]).expect("shape")),
        Mode::Complex => norm2(&gram_apply(a, &vec![Complex64::new(1.0, 0.0); a.nrows()]).expect("shape")),
    };
    DegeneracyReport {
        w1_zero: entry_sum <= 1e-12 * fro,
        entry_sum,
        gram_ones_residual: residual,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichConfig {
    pub p: usize,
    pub rel_tol: f64,
    pub r_max: usize,
}

impl Default for SandwichConfig {
    fn default() -> Self {
        SandwichConfig {
            p: 1,
            rel_tol: 1e-9,
            r_max: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichOutcome {
    /// The certified lower bound at `r_stop`, tagged as an estimate.
    pub estimate: BoundValue,
    pub upper_trace: Vec<BoundValue>,
    pub lower_trace: Vec<BoundValue>,
    pub converged: bool,
    pub r_stop: usize,
}

/// Walks `|A|` (upper bounds) and `A` (lower bounds) side by side for
/// `r = 0, 1, ...` until the relative gap of the `sigma^(2p)` bounds drops
/// below `rel_tol` or `r_max` is reached.
///
/// For signed or complex `A` the upper sequence tends to `sigma(|A|)^(2p)`,
/// which may exceed `sigma(A)^(2p)`; the gap then never closes and
/// `converged` stays false.
pub fn sandwich_estimate(a: &Matrix, cfg: &SandwichConfig) -> Result<SandwichOutcome> {
    check_p(cfg.p)?;
    if !(cfg.rel_tol > 0.0) {
        return Err(Error::Config("rel_tol must be positive".into()));
    }
    let d = degeneracy_check(a);
    if d.w1_zero {
        return Err(Error::TheoremInapplicable { entry_sum: d.entry_sum });
    }
    let p = cfg.p;
    let abs = modulus_matrix(a);
    let mut up_ledger = WalkLedger::new(&abs);
    let mut lo_ledger = WalkLedger::new(a);
    let mut upper_trace = Vec::new();
    let mut lower_trace = Vec::new();
    let mut r = 0;
    loop {
        up_ledger.extend_to(&abs, r + p)?;
        lo_ledger.extend_to(a, r + p)?;
        let up = walk_upper_from_ledger(&up_ledger, r, p)?;
        let lo = walk_lower_from_ledger(&lo_ledger, r, p)?;
        upper_trace.push(up);
        lower_trace.push(lo);
        let gap = (up.raw_2p_value - lo.raw_2p_value) / lo.raw_2p_value.max(f64::MIN_POSITIVE);
        let converged = gap < cfg.rel_tol;
        if converged || r >= cfg.r_max {
            let estimate = BoundValue {
                kind: BoundKind::Estimate,
                certified: false,
                ..lo
            };
            return Ok(SandwichOutcome {
                estimate,
                upper_trace,
                lower_trace,
                converged,
                r_stop: r,
            });
        }
        r += 1;
    }
}

/// All bounds for one matrix at one `(r, p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub matrix: MatrixDescriptor,
    pub bounds: BTreeMap<String, BoundValue>,
    /// True when the matrix is zero and every bound collapsed to sigma = 0.
    pub exact_zero: bool,
    /// Why the lower walk bound is missing, if it is.
    pub lower_inapplicable: Option<String>,
    pub oracle: Option<OracleResult>,
}

impl BoundReport {
    /// Every certified lower value is at most every certified upper value,
    /// within relative `slack`.
    pub fn is_consistent(&self, slack: f64) -> bool {
        let certified = |k| {
            self.bounds
                .values()
                .filter(move |b| b.certified && b.kind == k)
                .map(|b| b.value)
        };
        let max_lower = certified(BoundKind::Lower).fold(0.0, f64::max);
        certified(BoundKind::Upper).all(|u| max_lower <= u * (1.0 + slack))
    }
}

/// Schur, refined, support and both walk bounds at `(r, p)`, plus the oracle
/// when `oracle` is given.
pub fn bound_report(a: &Matrix, r: usize, p: usize, oracle: Option<&OracleConfig>) -> Result<BoundReport> {
    check_p(p)?;
    let mut bounds = BTreeMap::new();
    if a.is_zero() {
        for name in ["schur", "refined", "support", "walk_upper"] {
            let (rr, pp) = if name == "walk_upper" { (r, p) } else { (0, 1) };
            bounds.insert(name.to_string(), BoundValue::exact_zero(BoundKind::Upper, rr, pp));
        }
        bounds.insert("walk_lower".into(), BoundValue::exact_zero(BoundKind::Lower, r, p));
        return Ok(BoundReport {
            matrix: a.descriptor(),
            bounds,
            exact_zero: true,
            lower_inapplicable: None,
            oracle: oracle.map(|c| reference_sigma(a, c)),
        });
    }
    bounds.insert("schur".into(), schur_bound(a)?);
    bounds.insert("refined".into(), refined_bound(a)?);
    bounds.insert("support".into(), support_bound(a)?);
    bounds.insert("walk_upper".into(), walk_upper_bound(a, r, p)?);
    let lower_inapplicable = match walk_lower_bound(a, r, p) {
        Ok(b) => {
            bounds.insert("walk_lower".into(), b);
            None
        }
        Err(e @ Error::TheoremInapplicable { .. }) => Some(e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(BoundReport {
        matrix: a.descriptor(),
        bounds,
        exact_zero: false,
        lower_inapplicable,
        oracle: oracle.map(|c| reference_sigma(a, c)),
    })
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

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    const SIGMA2_M22: f64 = 29.866_068_747_318_506;

    #[test]
    fn schur_examples() {
        assert_eq!(schur_bound(&star(3)).unwrap().raw_2p_value, 9.0);
        assert_eq!(schur_bound(&Matrix::identity(4).unwrap()).unwrap().raw_2p_value, 1.0);
        let b = schur_bound(&m22()).unwrap();
        assert_eq!(b.raw_2p_value, 42.0);
        assert_eq!(b.kind, BoundKind::Upper);
        assert!(b.certified);
        assert!(rel(b.value, 42f64.sqrt()) < 1e-15);
    }

    #[test]
    fn refined_examples() {
        assert_eq!(refined_bound(&star(3)).unwrap().raw_2p_value, 3.0);
        assert_eq!(refined_bound(&m22()).unwrap().raw_2p_value, 36.0);
        assert_eq!(refined_bound(&Matrix::identity(3).unwrap()).unwrap().raw_2p_value, 1.0);
    }

    #[test]
    fn support_examples() {
        assert_eq!(support_bound(&star(3)).unwrap().raw_2p_value, 3.0);
        assert_eq!(support_bound(&m22()).unwrap().raw_2p_value, 42.0);
        let d = Matrix::from_triplets(2, 2, &[(0, 0, 2.0), (1, 1, 5.0)]).unwrap();
        assert_eq!(support_bound(&d).unwrap().raw_2p_value, 25.0);
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        let z = Matrix::zeros(3, 3).unwrap();
        assert_eq!(schur_bound(&z), Err(Error::ZeroMatrix));
        assert_eq!(refined_bound(&z), Err(Error::ZeroMatrix));
        assert_eq!(support_bound(&z), Err(Error::ZeroMatrix));
        assert_eq!(walk_upper_bound(&z, 1, 1), Err(Error::ZeroMatrix));
        let rep = bound_report(&z, 2, 1, Some(&OracleConfig::default())).unwrap();
        assert!(rep.exact_zero);
        assert!(rep.bounds.values().all(|b| b.value == 0.0));
        assert_eq!(rep.oracle.unwrap().sigma, 0.0);
    }

    #[test]
    fn walk_upper_examples() {
        assert!(rel(walk_upper_bound(&star(3), 0, 1).unwrap().raw_2p_value, 3.0) < 1e-15);
        let b = walk_upper_bound(&m22(), 1, 1).unwrap();
        assert!(rel(b.raw_2p_value, 1076.0 / 36.0) < 1e-13);
        assert!(b.raw_2p_value >= SIGMA2_M22);
        let id = Matrix::identity(5).unwrap();
        for (r, p) in [(0, 1), (3, 2), (7, 3)] {
            let b = walk_upper_bound(&id, r, p).unwrap();
            assert!(rel(b.raw_2p_value, 1.0) < 1e-15);
            assert!(rel(b.value, 1.0) < 1e-15);
        }
        assert!(matches!(walk_upper_bound(&m22(), 0, 0), Err(Error::Config(_))));
    }

    #[test]
    fn walk_lower_examples() {
        let b = walk_lower_bound(&star(3), 0, 1).unwrap();
        assert!(rel(b.raw_2p_value, 3.0) < 1e-15);
        assert_eq!(b.kind, BoundKind::Lower);
        let b = walk_lower_bound(&m22(), 1, 1).unwrap();
        assert!(rel(b.raw_2p_value, 1552.0 / 52.0) < 1e-13);
        assert!(b.raw_2p_value <= SIGMA2_M22);
        let a = Matrix::from_rows(&[[1.0], [-1.0]]).unwrap();
        for (r, p) in [(0, 1), (2, 3)] {
            assert!(matches!(
                walk_lower_bound(&a, r, p),
                Err(Error::TheoremInapplicable { .. })
            ));
        }
    }

    #[test]
    fn degeneracy_examples() {
        let d = degeneracy_check(&Matrix::from_rows(&[[1.0], [-1.0]]).unwrap());
        assert!(d.w1_zero);
        assert!(d.gram_ones_residual <= 1e-15);
        assert!(!degeneracy_check(&m22()).w1_zero);
        assert!(degeneracy_check(&Matrix::zeros(2, 2).unwrap()).w1_zero);
    }

    #[test]
    fn sandwich_examples() {
        let s = sandwich_estimate(&star(3), &SandwichConfig { p: 1, rel_tol: 1e-9, r_max: 10 }).unwrap();
        assert!(s.converged);
        assert_eq!(s.r_stop, 0);
        assert!(rel(s.estimate.raw_2p_value, 3.0) < 1e-15);
        assert_eq!(s.estimate.kind, BoundKind::Estimate);

        let s = sandwich_estimate(&m22(), &SandwichConfig { p: 1, rel_tol: 1e-6, r_max: 100 }).unwrap();
        assert!(s.converged);
        assert!(rel(s.estimate.raw_2p_value, SIGMA2_M22) < 1e-6);
        assert_eq!(s.upper_trace.len(), s.r_stop + 1);

        // AA^T = 2I but |A| is all ones: lower stays at 2, upper at 4.
        let a = Matrix::from_rows(&[[1.0, -1.0], [1.0, 1.0]]).unwrap();
        let s = sandwich_estimate(&a, &SandwichConfig { p: 1, rel_tol: 1e-9, r_max: 20 }).unwrap();
        assert!(!s.converged);
        assert_eq!(s.r_stop, 20);
        assert!(s.lower_trace.iter().all(|b| rel(b.raw_2p_value, 2.0) < 1e-14));
        assert!(s.upper_trace.iter().all(|b| rel(b.raw_2p_value, 4.0) < 1e-14));

        let deg = Matrix::from_rows(&[[1.0], [-1.0]]).unwrap();
        assert!(matches!(
            sandwich_estimate(&deg, &SandwichConfig::default()),
            Err(Error::TheoremInapplicable { .. })
        ));
    }

    #[test]
    fn rowwise_estimate_approaches_sigma() {
        let e = rowwise_walk_estimate(&m22(), 30, 1).unwrap();
        assert!(rel(e.raw_2p_value, SIGMA2_M22) < 1e-10);
        assert!(!e.certified);
    }

    #[test]
    fn report_marks_inapplicable_lower() {
        let a = Matrix::from_rows(&[[1.0], [-1.0]]).unwrap();
        let rep = bound_report(&a, 0, 1, None).unwrap();
        assert!(rep.lower_inapplicable.is_some());
        assert!(!rep.bounds.contains_key("walk_lower"));
        assert!(rep.is_consistent(1e-8));
        let rep = bound_report(&m22(), 1, 1, None).unwrap();
        assert_eq!(rep.bounds.len(), 5);
        assert!(rep.is_consistent(1e-8));
    }
}
