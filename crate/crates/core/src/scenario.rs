//! Time-grid scenarios: configuration, per-point records, summary report and
//! CSV/JSON emission.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    atomic_density, atomic_inversion, branch_gram, evolve_branches_with_tol, field_density_mixed,
    field_purity,
};
use crate::entropy::{atomic_entropy, mixed_field_entropy, oracle_entropy};
use crate::error::{JcError, Result};
use crate::fock::{coherent_state_with_tol, default_dim, DEFAULT_TRUNCATION_TOL};

/// Default threshold on `max |<j|Pi|k>|` for the validity window.
pub const DEFAULT_PI_TOL: f64 = 1e-6;

/// Revival search starts after this time.
pub const REVIVAL_SEARCH_START: f64 = 15.0;

/// CSV column order.
pub const CSV_HEADER: [&str; 10] = [
    "t",
    "W",
    "xi_F",
    "S_A",
    "S_F_mix_analytic",
    "S_F_oracle",
    "pi_cc",
    "pi_ss",
    "pi_cs_abs",
    "valid",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = JcError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(JcError::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// A single run: initial field, truncation, time grid and output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    /// Coherent amplitude; serialized as `[re, im]`.
    pub alpha: Complex64,
    /// Weight `P` of `|alpha>` in the initial mixture; `|-alpha>` gets `1 - P`.
    pub p_plus: f64,
    pub dim: usize,
    /// Grid is `t_i = i * t_max / steps` for `i = 0..=steps`, in units of `lambda t`.
    pub t_max: f64,
    pub steps: usize,
    pub pi_tol: f64,
    pub truncation_tol: f64,
    /// Diagonalize the field density matrix at every grid point.
    pub oracle: bool,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let alpha = Complex64::new(4.0, 0.0);
        ScenarioConfig {
            alpha,
            p_plus: 0.5,
            dim: default_dim(alpha),
            t_max: 30.0,
            steps: 600,
            pi_tol: DEFAULT_PI_TOL,
            truncation_tol: DEFAULT_TRUNCATION_TOL,
            oracle: true,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

impl ScenarioConfig {
    pub fn t_grid(&self) -> Vec<f64> {
        let h = self.t_max / self.steps as f64;
        (0..=self.steps).map(|i| i as f64 * h).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(JcError::InvalidConfig(msg));
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return bad(format!("alpha must be finite, got {}", self.alpha));
        }
        if !(0.0..=1.0).contains(&self.p_plus) {
            return bad(format!("p_plus must lie in [0, 1], got {}", self.p_plus));
        }
        if self.dim == 0 {
            return bad("dim must be positive".into());
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return bad(format!("t_max must be positive, got {}", self.t_max));
        }
        if self.steps == 0 {
            return bad("steps must be positive".into());
        }
        if !(self.pi_tol > 0.0) {
            return bad(format!("pi_tol must be positive, got {}", self.pi_tol));
        }
        if !(self.truncation_tol > 0.0) {
            return bad(format!(
                "truncation_tol must be positive, got {}",
                self.truncation_tol
            ));
        }
        Ok(())
    }

    /// `key=value` lines that [`ConfigPatch::parse`] reads back into this config.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        line("alpha_re", format!("{:?}", self.alpha.re));
        line("alpha_im", format!("{:?}", self.alpha.im));
        line("p_plus", format!("{:?}", self.p_plus));
        line("dim", self.dim.to_string());
        line("t_max", format!("{:?}", self.t_max));
        line("steps", self.steps.to_string());
        line("pi_tol", format!("{:?}", self.pi_tol));
        line("truncation_tol", format!("{:?}", self.truncation_tol));
        line("oracle", self.oracle.to_string());
        line("format", self.format.to_string());
        if let Some(out) = &self.out {
            line("out", out.display().to_string());
        }
        s
    }
}

/// Partial configuration from a file or command-line flags. Unset fields
/// fall back to [`ScenarioConfig::default`]; an unset `dim` is derived from
/// `alpha`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigPatch {
    pub alpha_re: Option<f64>,
    pub alpha_im: Option<f64>,
    pub p_plus: Option<f64>,
    pub dim: Option<usize>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub pi_tol: Option<f64>,
    pub truncation_tol: Option<f64>,
    pub oracle: Option<bool>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| JcError::InvalidConfig(format!("cannot parse {key}={value:?}")))
}

impl ConfigPatch {
    /// Flat `key=value` text. Blank lines and `#` comments are ignored;
    /// dashes in keys are read as underscores.
    pub fn parse(text: &str) -> Result<Self> {
        let mut patch = ConfigPatch::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                JcError::InvalidConfig(format!("line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "alpha_re" => patch.alpha_re = Some(parse_value(&key, value)?),
                "alpha_im" => patch.alpha_im = Some(parse_value(&key, value)?),
                "p_plus" => patch.p_plus = Some(parse_value(&key, value)?),
                "dim" => patch.dim = Some(parse_value(&key, value)?),
                "t_max" => patch.t_max = Some(parse_value(&key, value)?),
                "steps" => patch.steps = Some(parse_value(&key, value)?),
                "pi_tol" => patch.pi_tol = Some(parse_value(&key, value)?),
                "truncation_tol" => patch.truncation_tol = Some(parse_value(&key, value)?),
                "oracle" => patch.oracle = Some(parse_value(&key, value)?),
                "format" => patch.format = Some(value.parse()?),
                "out" => patch.out = Some(PathBuf::from(value)),
                _ => {
                    return Err(JcError::InvalidConfig(format!(
                        "line {}: unknown key {key:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(patch)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let mut text = String::new();
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|source| JcError::Io {
                path: path.to_path_buf(),
                source,
            })?;
        Self::parse(&text)
    }

    /// Fields set in `over` win.
    pub fn merge(self, over: ConfigPatch) -> ConfigPatch {
        ConfigPatch {
            alpha_re: over.alpha_re.or(self.alpha_re),
            alpha_im: over.alpha_im.or(self.alpha_im),
            p_plus: over.p_plus.or(self.p_plus),
            dim: over.dim.or(self.dim),
            t_max: over.t_max.or(self.t_max),
            steps: over.steps.or(self.steps),
            pi_tol: over.pi_tol.or(self.pi_tol),
            truncation_tol: over.truncation_tol.or(self.truncation_tol),
            oracle: over.oracle.or(self.oracle),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
        }
    }

    pub fn resolve(self) -> Result<ScenarioConfig> {
        let d = ScenarioConfig::default();
        let alpha = Complex64::new(
            self.alpha_re.unwrap_or(d.alpha.re),
            self.alpha_im.unwrap_or(d.alpha.im),
        );
        let config = ScenarioConfig {
            alpha,
            p_plus: self.p_plus.unwrap_or(d.p_plus),
            dim: self.dim.unwrap_or_else(|| default_dim(alpha)),
            t_max: self.t_max.unwrap_or(d.t_max),
            steps: self.steps.unwrap_or(d.steps),
            pi_tol: self.pi_tol.unwrap_or(d.pi_tol),
            truncation_tol: self.truncation_tol.unwrap_or(d.truncation_tol),
            oracle: self.oracle.unwrap_or(d.oracle),
            format: self.format.unwrap_or(d.format),
            out: self.out,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Observables at one grid time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeSeriesRecord {
    pub t: f64,
    /// Atomic inversion.
    #[serde(rename = "W")]
    pub w: f64,
    /// `1 - Tr (rho_F^mix)^2`.
    #[serde(rename = "xi_F")]
    pub xi_f: f64,
    #[serde(rename = "S_A")]
    pub s_a: f64,
    #[serde(rename = "S_F_mix_analytic")]
    pub s_f_mix_analytic: f64,
    /// `None` when the oracle was skipped.
    #[serde(rename = "S_F_oracle")]
    pub s_f_oracle: Option<f64>,
    pub pi_cc: f64,
    pub pi_ss: f64,
    pub pi_cs_abs: f64,
    pub valid: bool,
}

impl TimeSeriesRecord {
    /// `|oracle - analytic|`, when the oracle ran.
    pub fn entropy_gap(&self) -> Option<f64> {
        self.s_f_oracle.map(|o| (o - self.s_f_mix_analytic).abs())
    }

    /// `max(|Pi_cc|, |Pi_ss|, |Pi_cs|)`.
    pub fn max_pi(&self) -> f64 {
        self.pi_cc.abs().max(self.pi_ss.abs()).max(self.pi_cs_abs)
    }
}

/// Evaluates every observable at a single time.
pub fn evaluate_point(config: &ScenarioConfig, t: f64) -> Result<TimeSeriesRecord> {
    let b = evolve_branches_with_tol(config.alpha, t, config.dim, config.truncation_tol)?;
    let rho_mix = field_density_mixed(&b, config.p_plus);
    let gram = branch_gram(&b);
    let mixed = mixed_field_entropy(&b, config.p_plus, config.pi_tol);
    let oracle = if config.oracle {
        Some(oracle_entropy(&rho_mix)?)
    } else {
        None
    };
    Ok(TimeSeriesRecord {
        t,
        w: atomic_inversion(&b),
        xi_f: field_purity(&rho_mix),
        s_a: atomic_entropy(&atomic_density(&b, config.p_plus)),
        s_f_mix_analytic: mixed.value,
        s_f_oracle: oracle,
        pi_cc: gram.p_cc.re,
        pi_ss: gram.p_ss.re,
        pi_cs_abs: gram.p_cs.norm(),
        valid: mixed.valid,
    })
}

/// Landmarks extracted from a finished time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct FigureComparison {
    /// Last grid time of the longest valid prefix; `None` if `t = 0` is already invalid.
    pub window_end: Option<f64>,
    pub max_gap_in_window: Option<f64>,
    pub max_gap_out_window: Option<f64>,
    pub out_window_argmax_t: Option<f64>,
    /// Time of the largest `|W|` after [`REVIVAL_SEARCH_START`].
    pub revival_center: Option<f64>,
}

fn argmax_by<'a, I, F>(records: I, key: F) -> Option<(f64, f64)>
where
    I: IntoIterator<Item = &'a TimeSeriesRecord>,
    F: Fn(&TimeSeriesRecord) -> Option<f64>,
{
    records
        .into_iter()
        .filter_map(|r| key(r).map(|v| (r.t, v)))
        .fold(None, |best, (t, v)| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((t, v)),
        })
}

pub fn compare_figures(records: &[TimeSeriesRecord]) -> FigureComparison {
    let prefix = records.iter().take_while(|r| r.valid).count();
    let (inside, outside) = records.split_at(prefix);
    let out_max = argmax_by(outside, |r| r.entropy_gap());
    FigureComparison {
        window_end: inside.last().map(|r| r.t),
        max_gap_in_window: argmax_by(inside, |r| r.entropy_gap()).map(|(_, g)| g),
        max_gap_out_window: out_max.map(|(_, g)| g),
        out_window_argmax_t: out_max.map(|(t, _)| t),
        revival_center: argmax_by(
            records.iter().filter(|r| r.t > REVIVAL_SEARCH_START),
            |r| Some(r.w.abs()),
        )
        .map(|(t, _)| t),
    }
}

/// Summary of a run; `config` and `config_text` reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: ScenarioConfig,
    pub config_text: String,
    pub points: usize,
    #[serde(flatten)]
    pub comparison: FigureComparison,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub records: Vec<TimeSeriesRecord>,
    pub report: RunReport,
}

/// Evaluates the whole grid; points run in parallel and come back in grid order.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioRun> {
    let start = Instant::now();
    config.validate()?;
    coherent_state_with_tol(config.alpha, config.dim, config.truncation_tol)?;
    let records = config
        .t_grid()
        .into_par_iter()
        .map(|t| evaluate_point(config, t))
        .collect::<Result<Vec<_>>>()?;
    let comparison = compare_figures(&records);
    let report = RunReport {
        config: config.clone(),
        config_text: config.to_config_text(),
        points: records.len(),
        comparison,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    Ok(ScenarioRun { records, report })
}

/// 17 significant digits, enough to round-trip any `f64`.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv<W: Write>(records: &[TimeSeriesRecord], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            fmt_float(r.t),
            fmt_float(r.w),
            fmt_float(r.xi_f),
            fmt_float(r.s_a),
            fmt_float(r.s_f_mix_analytic),
            r.s_f_oracle.map(fmt_float).unwrap_or_default(),
            fmt_float(r.pi_cc),
            fmt_float(r.pi_ss),
            fmt_float(r.pi_cs_abs),
            r.valid.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes records in the requested format.
pub fn emit<W: Write>(records: &[TimeSeriesRecord], format: OutputFormat, mut out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(records, out).map_err(|e| JcError::Serialize(e.to_string())),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, records)
                .map_err(|e| JcError::Serialize(e.to_string()))?;
            out.write_all(b"\n")
                .map_err(|e| JcError::Serialize(e.to_string()))
        }
    }
}

/// [`emit`] into a file, with the path attached to any I/O failure.
pub fn emit_to_path(records: &[TimeSeriesRecord], format: OutputFormat, path: &Path) -> Result<()> {
    let io_err = |source| JcError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    emit(records, format, &mut w).map_err(|e| match e {
        JcError::Serialize(msg) => JcError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::other(msg),
        },
        other => other,
    })?;
    w.flush().map_err(io_err)
}

fn parse_field<T: FromStr>(rec: &csv::StringRecord, i: usize) -> Result<T> {
    let raw = rec.get(i).unwrap_or("");
    raw.parse().map_err(|_| {
        JcError::Serialize(format!("column {}: cannot parse {raw:?}", CSV_HEADER[i]))
    })
}

/// Reads back CSV produced by [`emit`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<TimeSeriesRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr
        .headers()
        .map_err(|e| JcError::Serialize(e.to_string()))?
        .clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(JcError::Serialize(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| JcError::Serialize(e.to_string()))?;
        let oracle = match row.get(5) {
            Some("") | None => None,
            Some(_) => Some(parse_field(&row, 5)?),
        };
        out.push(TimeSeriesRecord {
            t: parse_field(&row, 0)?,
            w: parse_field(&row, 1)?,
            xi_f: parse_field(&row, 2)?,
            s_a: parse_field(&row, 3)?,
            s_f_mix_analytic: parse_field(&row, 4)?,
            s_f_oracle: oracle,
            pi_cc: parse_field(&row, 6)?,
            pi_ss: parse_field(&row, 7)?,
            pi_cs_abs: parse_field(&row, 8)?,
            valid: parse_field(&row, 9)?,
        });
    }
    Ok(out)
}
