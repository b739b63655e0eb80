//! Library side of the `sigma-bounds` command: configuration, the report
//! document, and the human-readable renderer.
//!
//! Every run produces one [`ReportDocument`]. Its JSON form has a fixed field
//! set (see the README); all fields except `timings_ms` are a deterministic
//! function of the configuration and input.

pub mod bench;
pub mod config;

use serde::{Deserialize, Serialize};
use sigma_bounds::blocks::{block_partin_bound_from, block_sigma_bound_from, compress_with};
use sigma_bounds::{
    bound_report, parse_matrix_market, parse_part_sizes, reference_sigma, sandwich_estimate, BlockPartition,
    BoundReport, BoundValue, GeneratorSpec, MatrixDescriptor, OracleConfig, OracleResult, SandwichConfig,
    SandwichOutcome,
};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

pub use bench::{BenchReport, BenchRow};
pub use config::{Command, OutputFormat, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sigma_bounds::Error> for CliError {
    fn from(e: sigma_bounds::Error) -> Self {
        use sigma_bounds::Error as E;
        match e {
            E::Parse { .. } => CliError::Parse(e.to_string()),
            E::Config(_) | E::Partition(_) => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusKind {
    Ok,
    TheoremInapplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Status {
    pub kind: StatusKind,
    pub exit_code: i32,
    pub message: Option<String>,
}

impl Status {
    fn ok() -> Self {
        Status {
            kind: StatusKind::Ok,
            exit_code: EXIT_OK,
            message: None,
        }
    }

    fn inapplicable(message: String) -> Self {
        Status {
            kind: StatusKind::TheoremInapplicable,
            exit_code: EXIT_INAPPLICABLE,
            message: Some(message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    pub row_parts: Vec<usize>,
    pub col_parts: Vec<usize>,
    /// Row-major block-sigma matrix.
    pub compression: Vec<Vec<f64>>,
    pub block_sigma: BoundValue,
    pub mid: BoundValue,
    pub support: BoundValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: Command,
    pub status: Status,
    pub matrix: Option<MatrixDescriptor>,
    pub bounds: Option<BoundReport>,
    pub oracle: Option<OracleResult>,
    pub estimate: Option<SandwichOutcome>,
    pub blocks: Option<BlockReport>,
    pub bench: Option<BenchReport>,
    /// Wall-clock milliseconds per stage; excluded from determinism.
    pub timings_ms: BTreeMap<String, f64>,
}

impl ReportDocument {
    fn new(command: Command) -> Self {
        ReportDocument {
            command,
            status: Status::ok(),
            matrix: None,
            bounds: None,
            oracle: None,
            estimate: None,
            blocks: None,
            bench: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

struct Stopwatch<'a> {
    timings: &'a mut BTreeMap<String, f64>,
}

impl Stopwatch<'_> {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        self.timings
            .insert(stage.to_string(), t0.elapsed().as_secs_f64() * 1e3);
        out
    }
}

/// Executes one command. Errors that prevent a report from being produced
/// are returned as [`CliError`]; a lower bound that does not apply still
/// yields a document, with status `theorem-inapplicable` and exit code 3.
pub fn run(cfg: &RunConfig) -> Result<ReportDocument, CliError> {
    cfg.validate()?;
    let mut doc = ReportDocument::new(cfg.command);
    let mut timings = BTreeMap::new();
    let mut sw = Stopwatch { timings: &mut timings };
    let oracle_cfg = OracleConfig::default();

    if cfg.command == Command::Bench {
        let spec: GeneratorSpec = cfg.generator.as_deref().unwrap_or_default().parse()?;
        let report = sw.time("bench", || bench::run_bench(&spec, cfg.seed, cfg.trials, cfg.r, cfg.p))?;
        doc.bench = Some(report);
        doc.timings_ms = timings;
        return Ok(doc);
    }

    let path = cfg.input.as_ref().expect("validated");
    let a = sw.time("parse", || parse_matrix_market(path))?;
    doc.matrix = Some(a.descriptor());

    match cfg.command {
        Command::Bounds => {
            let rep = sw.time("bounds", || bound_report(&a, cfg.r, cfg.p, None))?;
            if cfg.with_oracle {
                doc.oracle = Some(sw.time("oracle", || reference_sigma(&a, &oracle_cfg)));
            }
            if let Some(msg) = &rep.lower_inapplicable {
                doc.status = Status::inapplicable(msg.clone());
            }
            doc.bounds = Some(rep);
        }
        Command::Estimate => {
            let sc = SandwichConfig {
                p: cfg.p,
                rel_tol: cfg.rel_tol,
                r_max: cfg.r_max,
            };
            match sw.time("estimate", || sandwich_estimate(&a, &sc)) {
                Ok(out) => doc.estimate = Some(out),
                Err(e @ sigma_bounds::Error::TheoremInapplicable { .. }) => {
                    doc.status = Status::inapplicable(e.to_string());
                }
                Err(e) => return Err(e.into()),
            }
            if cfg.with_oracle {
                doc.oracle = Some(sw.time("oracle", || reference_sigma(&a, &oracle_cfg)));
            }
        }
        Command::Oracle => {
            doc.oracle = Some(sw.time("oracle", || reference_sigma(&a, &oracle_cfg)));
        }
        Command::Blocks => {
            let rows = parse_part_sizes(cfg.row_parts.as_deref().expect("validated"))?;
            let cols = parse_part_sizes(cfg.col_parts.as_deref().expect("validated"))?;
            let part = BlockPartition::from_sizes(&rows, &cols);
            let c = sw.time("compress", || compress_with(&a, &part, &oracle_cfg))?;
            let block_sigma = block_sigma_bound_from(&c);
            let pb = block_partin_bound_from(&c)?;
            let compression = (0..c.b.nrows())
                .map(|i| (0..c.b.ncols()).map(|j| c.b.get(i, j).re).collect())
                .collect();
            doc.blocks = Some(BlockReport {
                row_parts: rows,
                col_parts: cols,
                compression,
                block_sigma,
                mid: pb.mid,
                support: pb.support,
            });
            if cfg.with_oracle {
                doc.oracle = Some(sw.time("oracle", || reference_sigma(&a, &oracle_cfg)));
            }
        }
        Command::Bench => unreachable!(),
    }
    doc.timings_ms = timings;
    Ok(doc)
}

fn fmt_bound(out: &mut String, name: &str, b: &BoundValue) {
    let kind = match b.kind {
        sigma_bounds::BoundKind::Upper => "upper",
        sigma_bounds::BoundKind::Lower => "lower",
        sigma_bounds::BoundKind::Estimate => "estimate",
    };
    writeln!(
        out,
        "  {name:<12} {kind:<8} r={:<3} p={:<2} sigma {:<22.15e} sigma^2p {:.15e}",
        b.r, b.p, b.value, b.raw_2p_value
    )
    .unwrap();
}

fn fmt_oracle(out: &mut String, o: &OracleResult) {
    writeln!(
        out,
        "oracle: sigma = {:.15e} (sigma^2 = {:.15e}), iterations {}, residual {:.3e}, converged {}",
        o.sigma,
        o.sigma * o.sigma,
        o.iterations,
        o.residual,
        o.converged
    )
    .unwrap();
}

/// Plain-text rendering of a report.
pub fn render_human(doc: &ReportDocument) -> String {
    let mut out = String::new();
    if let Some(m) = &doc.matrix {
        writeln!(
            out,
            "matrix: {}x{}, nnz {}, {:?}, {}",
            m.nrows,
            m.ncols,
            m.nnz,
            m.mode,
            if m.sparse { "sparse" } else { "dense" }
        )
        .unwrap();
    }
    if let Some(rep) = &doc.bounds {
        if rep.exact_zero {
            writeln!(out, "all-zero matrix: sigma = 0 exactly").unwrap();
        }
        writeln!(out, "bounds:").unwrap();
        for (name, b) in &rep.bounds {
            fmt_bound(&mut out, name, b);
        }
    }
    if let Some(est) = &doc.estimate {
        writeln!(
            out,
            "estimate: converged {} at r = {} (p = {})",
            est.converged, est.r_stop, est.estimate.p
        )
        .unwrap();
        writeln!(out, "  {:>5} {:>24} {:>24}", "r", "lower sigma", "upper sigma").unwrap();
        for (lo, up) in est.lower_trace.iter().zip(&est.upper_trace) {
            writeln!(out, "  {:>5} {:>24.15e} {:>24.15e}", lo.r, lo.value, up.value).unwrap();
        }
        fmt_bound(&mut out, "estimate", &est.estimate);
    }
    if let Some(b) = &doc.blocks {
        writeln!(out, "blocks: rows {:?} x cols {:?}", b.row_parts, b.col_parts).unwrap();
        for row in &b.compression {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.6e}")).collect();
            writeln!(out, "  [{}]", cells.join(", ")).unwrap();
        }
        fmt_bound(&mut out, "sigma(B)", &b.block_sigma);
        fmt_bound(&mut out, "mid", &b.mid);
        fmt_bound(&mut out, "support", &b.support);
    }
    if let Some(o) = &doc.oracle {
        fmt_oracle(&mut out, o);
    }
    if let Some(bench) = &doc.bench {
        writeln!(out, "bench: {} x {} trials, seed {}", bench.generator, bench.trials, bench.seed).unwrap();
        let names: Vec<&String> = bench.rows.first().map(|r| r.bounds.keys().collect()).unwrap_or_default();
        let mut header = format!("  {:>5} {:>10} {:>14}", "trial", "shape", "sigma");
        for n in &names {
            write!(header, " {n:>11}").unwrap();
        }
        writeln!(out, "{header}  sound").unwrap();
        for row in &bench.rows {
            let shape = format!("{}x{}", row.matrix.nrows, row.matrix.ncols);
            write!(out, "  {:>5} {:>10} {:>14.6e}", row.trial, shape, row.oracle_sigma).unwrap();
            for n in &names {
                match row.tightness.get(*n) {
                    Some(t) => write!(out, " {t:>11.6}").unwrap(),
                    None => write!(out, " {:>11}", "-").unwrap(),
                }
            }
            writeln!(out, "  {}", row.upper_ok && row.lower_ok).unwrap();
        }
    }
    if let Some(msg) = &doc.status.message {
        writeln!(out, "note: {msg}").unwrap();
    }
    out
}
