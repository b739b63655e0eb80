use clap::Parser;
use sigma_bounds_cli::{render_human, run, Command, OutputFormat, RunConfig, EXIT_USAGE};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Bounds on the largest singular value of a Matrix Market matrix.
#[derive(Debug, Parser)]
#[command(name = "sigma-bounds", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Matrix Market input (not used by `bench`).
    file: Option<PathBuf>,
    /// Walk level of the denominator.
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Power: bounds are on sigma^(2p).
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Relative gap at which `estimate` stops.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long = "r-max", default_value_t = 1000)]
    r_max: usize,
    /// Contiguous row part sizes, e.g. "2,2".
    #[arg(long)]
    row_parts: Option<String>,
    #[arg(long)]
    col_parts: Option<String>,
    /// Generator for `bench`, e.g. "signed(20,20,0.3)".
    #[arg(long)]
    gen: Option<String>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Skip the reference sigma computation.
    #[arg(long)]
    no_oracle: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let cfg = RunConfig {
        command: cli.command,
        input: cli.file,
        r: cli.r,
        p: cli.p,
        rel_tol: cli.tol,
        r_max: cli.r_max,
        row_parts: cli.row_parts,
        col_parts: cli.col_parts,
        generator: cli.gen,
        trials: cli.trials,
        seed: cli.seed,
        format: cli.format,
        with_oracle: !cli.no_oracle,
    };
    match run(&cfg) {
        Ok(doc) => {
            let text = match cfg.format {
                OutputFormat::Human => render_human(&doc),
                OutputFormat::Json => doc.to_json() + "\n",
            };
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if let Some(msg) = &doc.status.message {
                eprintln!("sigma-bounds: {msg}");
            }
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("sigma-bounds: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
