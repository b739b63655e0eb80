use proptest::prelude::*;
use sigma_bounds::Matrix;
use sigma_bounds_cli::{
    bench::run_bench, run, Command, OutputFormat, ReportDocument, RunConfig, StatusKind, EXIT_INAPPLICABLE, EXIT_OK,
    EXIT_PARSE, EXIT_USAGE,
};
use std::path::{Path, PathBuf};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn bin(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_sigma-bounds"))
        .args(args)
        .output()
        .unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn bounds_on_star() {
    let doc = run(&RunConfig::new(Command::Bounds).with_input(fixture("star4.mtx"))).unwrap();
    assert_eq!(doc.exit_code(), EXIT_OK);
    let b = doc.bounds.unwrap();
    assert!(close(b.bounds["schur"].raw_2p_value, 9.0, 1e-12));
    assert!(close(b.bounds["refined"].raw_2p_value, 3.0, 1e-12));
    assert!(close(b.bounds["walk_lower"].raw_2p_value, 3.0, 1e-12));
    assert!(close(doc.oracle.unwrap().sigma.powi(2), 3.0, 1e-10));
}

#[test]
fn zero_matrix_is_exact() {
    let doc = run(&RunConfig::new(Command::Bounds).with_input(fixture("zero.mtx"))).unwrap();
    assert_eq!(doc.exit_code(), EXIT_OK);
    let b = doc.bounds.unwrap();
    assert!(b.exact_zero);
    assert!(b.bounds.values().all(|v| v.value == 0.0));
}

#[test]
fn balanced_matrix_reports_inapplicable() {
    let doc = run(&RunConfig::new(Command::Bounds).with_input(fixture("balanced.mtx"))).unwrap();
    assert_eq!(doc.status.kind, StatusKind::TheoremInapplicable);
    assert_eq!(doc.exit_code(), EXIT_INAPPLICABLE);
    let b = doc.bounds.unwrap();
    assert!(b.lower_inapplicable.is_some());
    assert!(!b.bounds.contains_key("walk_lower"));

    let out = bin(&["bounds", fixture("balanced.mtx").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_INAPPLICABLE));
}

#[test]
fn estimate_on_dense_fixture() {
    let mut cfg = RunConfig::new(Command::Estimate).with_input(fixture("dense22.mtx"));
    cfg.rel_tol = 1e-6;
    let doc = run(&cfg).unwrap();
    let est = doc.estimate.unwrap();
    assert!(est.converged);
    let sigma = doc.oracle.unwrap().sigma;
    assert!(close(est.estimate.value, sigma, 1e-6));
    assert!(!est.estimate.certified);
}

#[test]
fn blocks_on_block_diagonal() {
    let mut cfg = RunConfig::new(Command::Blocks).with_input(fixture("blockdiag4.mtx"));
    cfg.row_parts = Some("2,2".into());
    cfg.col_parts = Some("2,2".into());
    let doc = run(&cfg).unwrap();
    let blocks = doc.blocks.unwrap();
    let sigma = doc.oracle.unwrap().sigma;
    assert!(close(blocks.block_sigma.value, sigma, 1e-10));
    assert!(blocks.block_sigma.value <= blocks.mid.value * (1.0 + 1e-12));
    assert!(blocks.mid.value <= blocks.support.value * (1.0 + 1e-12));
}

#[test]
fn bad_partition_is_usage_error() {
    let mut cfg = RunConfig::new(Command::Blocks).with_input(fixture("star4.mtx"));
    cfg.row_parts = Some("2,2".into());
    cfg.col_parts = Some("3,3".into());
    assert_eq!(run(&cfg).unwrap_err().exit_code(), EXIT_USAGE);
}

#[test]
fn exit_codes_from_binary() {
    let bad = bin(&["bounds", fixture("bad_index.mtx").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line"));

    assert_eq!(bin(&["bounds"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["frobnicate", "x.mtx"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["bench", "--gen", "blob(3)"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["bounds", "/nonexistent/m.mtx"]).status.code().map(|c| c != 0), Some(true));
    assert_eq!(bin(&["--help"]).status.code(), Some(EXIT_OK));

    let ok = bin(&["oracle", fixture("hermitian3.mtx").to_str().unwrap(), "--format", "json-like"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let doc = ReportDocument::from_json(&String::from_utf8(ok.stdout).unwrap()).unwrap();
    assert!(doc.oracle.unwrap().converged);
}

#[test]
fn human_output_mentions_bounds() {
    let out = bin(&["bounds", fixture("dense22.mtx").to_str().unwrap(), "--r", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    for key in ["schur", "refined", "support", "walk_upper", "walk_lower"] {
        assert!(text.contains(key), "{key} missing from:\n{text}");
    }
}

#[test]
fn validation_rejects_bad_configs() {
    let base = RunConfig::new(Command::Bounds).with_input("m.mtx");
    assert!(base.validate().is_ok());
    let mut c = base.clone();
    c.p = 0;
    assert!(c.validate().is_err());
    let mut c = base.clone();
    c.rel_tol = f64::NAN;
    assert!(c.validate().is_err());
    let mut c = base.clone();
    c.r_max = 0;
    assert!(c.validate().is_err());
    assert!(RunConfig::new(Command::Bounds).validate().is_err());
    assert!(RunConfig::new(Command::Bench).validate().is_err());
    assert!(RunConfig::new(Command::Blocks).with_input("m.mtx").validate().is_err());
}

#[test]
fn bench_rows_are_sound() {
    for spec in ["uniform-nonneg(15,10,0.5)", "signed(12,12,0.3)", "complex(8,11,1.0)", "path(9)", "random-bipartite(5,6,0.4)"] {
        let report = run_bench(&spec.parse().unwrap(), 3, 6, 2, 2).unwrap();
        assert_eq!(report.rows.len(), 6);
        for row in &report.rows {
            assert!(row.upper_ok && row.lower_ok, "{spec} trial {}", row.trial);
        }
    }
}

#[test]
fn bench_trials_are_independent_of_thread_order() {
    let spec = "signed(10,7,0.5)".parse().unwrap();
    let a = run_bench(&spec, 11, 12, 1, 1).unwrap();
    let b = run_bench(&spec, 11, 12, 1, 1).unwrap();
    assert_eq!(a, b);
    assert!(a.rows.iter().enumerate().all(|(k, r)| r.trial == k));
}

#[test]
fn written_matrix_runs_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.mtx");
    let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
    std::fs::write(&path, sigma_bounds::to_matrix_market_string(&a)).unwrap();
    let mut cfg = RunConfig::new(Command::Bounds).with_input(&path);
    cfg.format = OutputFormat::Json;
    let b = run(&cfg).unwrap().bounds.unwrap();
    assert_eq!(b.bounds["schur"].raw_2p_value, 42.0);
    assert_eq!(b.bounds["refined"].raw_2p_value, 36.0);
    assert_eq!(b.bounds["walk_lower"].raw_2p_value, 26.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bench_documents_round_trip(seed in any::<u64>(), trials in 1usize..5, r in 0usize..4, p in 1usize..3) {
        let mut cfg = RunConfig::new(Command::Bench);
        cfg.generator = Some("complex(6,5,0.6)".into());
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.r = r;
        cfg.p = p;
        let doc = run(&cfg).unwrap();
        prop_assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc.clone());
        let again = run(&cfg).unwrap();
        prop_assert_eq!(again.bench, doc.bench);
    }
}
