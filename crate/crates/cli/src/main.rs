//! `jcmix`: run one Jaynes-Cummings entropy scenario and write its time series.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use jcmix_core::{emit, emit_to_path, run_scenario, ConfigPatch, JcError, OutputFormat, RunReport};

/// Simulate the resonant Jaynes-Cummings model for a field that starts in
/// P|alpha><alpha| + (1-P)|-alpha><-alpha| with the atom excited, and emit
/// inversion, purity, entropies and parity overlaps on a lambda*t grid.
#[derive(Debug, Parser)]
#[command(name = "jcmix", version)]
struct Cli {
    /// Flat key=value config file; flags override its entries.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    alpha_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha_im: Option<f64>,
    /// Weight of |alpha> in the initial mixture.
    #[arg(long)]
    p_plus: Option<f64>,
    /// Fock truncation; defaults to a size derived from |alpha|.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Threshold on max |<j|Pi|k>| for the validity window.
    #[arg(long)]
    pi_tol: Option<f64>,
    #[arg(long, value_name = "csv|json")]
    format: Option<String>,
    /// Data file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Skip the per-point diagonalization.
    #[arg(long)]
    no_oracle: bool,
    /// Write the run report as JSON.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// No summary on stderr.
    #[arg(long, short)]
    quiet: bool,
}

impl Cli {
    fn patch(&self) -> Result<ConfigPatch, JcError> {
        Ok(ConfigPatch {
            alpha_re: self.alpha_re,
            alpha_im: self.alpha_im,
            p_plus: self.p_plus,
            dim: self.dim,
            t_max: self.t_max,
            steps: self.steps,
            pi_tol: self.pi_tol,
            truncation_tol: None,
            oracle: self.no_oracle.then_some(false),
            format: self.format.as_deref().map(str::parse::<OutputFormat>).transpose()?,
            out: self.out.clone(),
        })
    }
}

fn write_report(report: &RunReport, path: &PathBuf) -> Result<(), JcError> {
    let io_err = |source| JcError::Io {
        path: path.clone(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    serde_json::to_writer_pretty(&mut w, report).map_err(|e| JcError::Serialize(e.to_string()))?;
    w.write_all(b"\n").map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn summarize(report: &RunReport) {
    let c = &report.comparison;
    let fmt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.6e}"));
    eprintln!(
        "points={} alpha={} p_plus={} dim={} elapsed={:.3}s",
        report.points,
        report.config.alpha,
        report.config.p_plus,
        report.config.dim,
        report.wall_clock_seconds
    );
    eprintln!(
        "validity window: [0, {}] (pi_tol={:e})",
        c.window_end.map_or("empty".to_string(), |t| t.to_string()),
        report.config.pi_tol
    );
    eprintln!(
        "entropy gap: in-window max {}, out-of-window max {} at t={}",
        fmt(c.max_gap_in_window),
        fmt(c.max_gap_out_window),
        c.out_window_argmax_t.map_or("n/a".to_string(), |t| t.to_string())
    );
    eprintln!(
        "revival center: {}",
        c.revival_center.map_or("n/a".to_string(), |t| t.to_string())
    );
}

fn run(cli: &Cli) -> Result<(), JcError> {
    let base = match &cli.config {
        Some(path) => ConfigPatch::from_file(path)?,
        None => ConfigPatch::default(),
    };
    let config = base.merge(cli.patch()?).resolve()?;
    let result = run_scenario(&config)?;
    match &config.out {
        Some(path) => emit_to_path(&result.records, config.format, path)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&result.records, config.format, &mut lock)?;
            lock.flush().map_err(|source| JcError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
        }
    }
    if let Some(path) = &cli.report {
        write_report(&result.report, path)?;
    }
    if !cli.quiet {
        summarize(&result.report);
    }
    Ok(())
}

fn exit_code(err: &JcError) -> u8 {
    match err {
        JcError::InvalidConfig(_) => 2,
        JcError::TruncationInsufficient { .. } => 3,
        JcError::Io { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: invalid-config: {first}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let detail = match &err {
                JcError::InvalidConfig(msg) => msg.clone(),
                other => other.to_string(),
            };
            eprintln!("error: {}: {detail}", err.category());
            ExitCode::from(exit_code(&err))
        }
    }
}
