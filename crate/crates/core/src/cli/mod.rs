//! Command-line frontend: `eval`, `sweep`, `simulate`, `fit` and `check`.
//!
//! Exit codes: 0 on success, 1 for usage or configuration errors, 2 for
//! domain or computation errors (including a failing diagnostic in `check`).

pub mod check;
pub mod config;
pub mod format;
pub mod svg;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::calibration::{fit_cobb_douglas, Sample};
use crate::error::Error;
use crate::exec::Execution;
use crate::production::FactorBundle;
use crate::scenario::{detect_collapse, run_scenario, TimeSeriesRecord};
use crate::transition::{PowerCurvePoint, TransitionParams};

pub use config::{parse_config, Config, ConfigError};
pub use format::{format_number, format_optional};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;

pub const POWER_CURVE_HEADER: &str = "L_AGI,w_h,w_AGI,P_h";
pub const SERIES_HEADER: &str =
    "t,s,beta1,beta2,K,K_AGI,L_h,L_AGI,Y,w_h,w_AGI,p_h_elastic,p_h_transition,wage_bill";
pub const CHART_TITLE: &str = "Decline of human economic power with increasing AGI labor";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Sweep,
    Simulate,
    Fit,
    Check,
}

impl Command {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "eval" => Some(Self::Eval),
            "sweep" => Some(Self::Sweep),
            "simulate" => Some(Self::Simulate),
            "fit" => Some(Self::Fit),
            "check" => Some(Self::Check),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub config: PathBuf,
    pub out_dir: PathBuf,
    pub points: Option<usize>,
    pub lambdas: Vec<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config {path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("{0} diagnostic(s) failed, see check.txt")]
    DiagnosticsFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Config { .. } | Self::Io { .. } | Self::Input { .. } => {
                EXIT_USAGE
            }
            Self::Compute(_) | Self::DiagnosticsFailed(_) => EXIT_COMPUTATION,
        }
    }
}

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    /// Lines meant for stdout (e.g. the collapse report).
    pub messages: Vec<String>,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_artifact(
    out_dir: &Path,
    name: &str,
    contents: &str,
    outcome: &mut Outcome,
) -> Result<(), CliError> {
    let path = out_dir.join(name);
    fs::write(&path, contents).map_err(io_err(&path))?;
    outcome.files.push(path);
    Ok(())
}

pub fn execute(inv: &Invocation) -> Result<Outcome, CliError> {
    if inv.command != Command::Sweep && (inv.points.is_some() || !inv.lambdas.is_empty()) {
        return Err(CliError::Usage(
            "--points and --lambda only apply to `sweep`".into(),
        ));
    }
    let text = fs::read_to_string(&inv.config).map_err(io_err(&inv.config))?;
    let config = parse_config(&text).map_err(|source| CliError::Config {
        path: inv.config.clone(),
        source,
    })?;
    fs::create_dir_all(&inv.out_dir).map_err(io_err(&inv.out_dir))?;
    let config_err = |source| CliError::Config {
        path: inv.config.clone(),
        source,
    };

    let mut outcome = Outcome::default();
    match inv.command {
        Command::Eval => {
            let model = config.require_model().map_err(config_err)?;
            write_artifact(&inv.out_dir, "eval.csv", &eval_csv(model)?, &mut outcome)?;
        }
        Command::Sweep => {
            let n_points = inv.points.unwrap_or(config.transition.n_points);
            if n_points < 2 {
                return Err(CliError::Usage("--points must be at least 2".into()));
            }
            let base = config.transition.params;
            let lambdas = if inv.lambdas.is_empty() {
                vec![base.lambda()]
            } else {
                inv.lambdas.clone()
            };
            let mut curves = Vec::with_capacity(lambdas.len());
            for &lambda in &lambdas {
                let tp = TransitionParams::new(base.w0(), base.w_inf(), lambda)
                    .map_err(|e| CliError::Usage(format!("--lambda {lambda}: {e}")))?;
                curves.push((lambda, tp.power_curve(n_points)?));
            }
            write_artifact(
                &inv.out_dir,
                "power_curve.csv",
                &power_curve_csv(&curves[0].1)?,
                &mut outcome,
            )?;
            if curves.len() > 1 {
                write_artifact(
                    &inv.out_dir,
                    "power_curves.csv",
                    &power_curves_long_csv(&curves)?,
                    &mut outcome,
                )?;
            }
            let chart: Vec<svg::Curve<'_>> = curves
                .iter()
                .map(|(lambda, points)| svg::Curve {
                    label: format!("lambda = {lambda}"),
                    points,
                })
                .collect();
            write_artifact(
                &inv.out_dir,
                "power_curve.svg",
                &svg::render_power_curves(CHART_TITLE, &chart),
                &mut outcome,
            )?;
        }
        Command::Simulate => {
            let cfg = config.scenario_config().map_err(config_err)?;
            let series = run_scenario(&cfg)?;
            write_artifact(
                &inv.out_dir,
                "series.csv",
                &series_csv(&series)?,
                &mut outcome,
            )?;
            let line = match detect_collapse(&series, cfg.collapse_threshold)? {
                Some(t) => format!("collapse_step={t}"),
                None => "collapse_step=none".to_string(),
            };
            outcome.messages.push(line);
        }
        Command::Fit => {
            let spec = config.require_fit().map_err(config_err)?;
            let input = match inv.config.parent() {
                Some(dir) if spec.input.is_relative() => dir.join(&spec.input),
                _ => spec.input.clone(),
            };
            let names: Vec<&str> = spec.factors.iter().map(String::as_str).collect();
            let samples = read_samples(&input, &names)?;
            let fit = fit_cobb_douglas(&samples, &names)?;
            let mut csv = String::from("parameter,value\n");
            csv.push_str(&format!("A,{}\n", format_number(fit.tfp_estimate)?));
            for (name, e) in &fit.elasticity_estimates {
                csv.push_str(&format!("{name},{}\n", format_number(*e)?));
            }
            csv.push_str(&format!(
                "rss,{}\n",
                format_number(fit.residual_sum_squares)?
            ));
            csv.push_str(&format!(
                "samples,{}\n",
                format_number(fit.sample_count as f64)?
            ));
            write_artifact(&inv.out_dir, "fit.csv", &csv, &mut outcome)?;
        }
        Command::Check => {
            let diagnostics = check::run_diagnostics(&config, Execution::default())?;
            let mut text = String::new();
            for d in &diagnostics {
                text.push_str(&d.to_string());
                text.push('\n');
            }
            write_artifact(&inv.out_dir, "check.txt", &text, &mut outcome)?;
            let failed = diagnostics.iter().filter(|d| !d.passed).count();
            if failed > 0 {
                return Err(CliError::DiagnosticsFailed(failed));
            }
        }
    }
    Ok(outcome)
}

pub fn eval_csv(model: &crate::models::ModelParams) -> Result<String, Error> {
    let mut csv = String::from("quantity,value\n");
    csv.push_str(&format!("Y,{}\n", format_number(model.output()?)?));
    for (factor, wage) in model.wages()? {
        csv.push_str(&format!("w_{factor},{}\n", format_number(wage)?));
    }
    Ok(csv)
}

pub fn power_curve_csv(points: &[PowerCurvePoint]) -> Result<String, Error> {
    let mut csv = String::with_capacity(64 * (points.len() + 1));
    csv.push_str(POWER_CURVE_HEADER);
    csv.push('\n');
    for p in points {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            format_number(p.l_agi)?,
            format_number(p.w_h)?,
            format_number(p.w_agi)?,
            format_optional(p.p_h)?
        ));
    }
    Ok(csv)
}

/// All swept curves in one table, prefixed by their decay constant.
pub fn power_curves_long_csv(curves: &[(f64, Vec<PowerCurvePoint>)]) -> Result<String, Error> {
    let mut csv = format!("lambda,{POWER_CURVE_HEADER}\n");
    for (lambda, points) in curves {
        let lambda = format_number(*lambda)?;
        for line in power_curve_csv(points)?.lines().skip(1) {
            csv.push_str(&lambda);
            csv.push(',');
            csv.push_str(line);
            csv.push('\n');
        }
    }
    Ok(csv)
}

pub fn series_csv(series: &[TimeSeriesRecord]) -> Result<String, Error> {
    let mut csv = String::with_capacity(200 * (series.len() + 1));
    csv.push_str(SERIES_HEADER);
    csv.push('\n');
    for r in series {
        let cells = [
            format_number(r.s)?,
            format_number(r.beta1)?,
            format_number(r.beta2)?,
            format_number(r.k)?,
            format_number(r.k_agi)?,
            format_number(r.l_h)?,
            format_number(r.l_agi)?,
            format_number(r.y)?,
            format_number(r.w_h)?,
            format_number(r.w_agi)?,
            format_number(r.p_h_elastic)?,
            format_optional(r.p_h_transition)?,
            format_number(r.wage_bill)?,
        ];
        csv.push_str(&r.t.to_string());
        for c in cells {
            csv.push(',');
            csv.push_str(&c);
        }
        csv.push('\n');
    }
    Ok(csv)
}

/// Reads `Y,<factor>,...` sample tables. Column order is free; every listed
/// factor and `Y` must be present.
pub fn read_samples(path: &Path, factors: &[&str]) -> Result<Vec<Sample>, CliError> {
    let input_err = |message: String| CliError::Input {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| input_err(e.to_string()))?;
    let headers = reader
        .headers()
        .map_err(|e| input_err(e.to_string()))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| input_err(format!("missing column `{name}`")))
    };
    let y_col = column("Y")?;
    let cols: Vec<(&str, usize)> = factors
        .iter()
        .map(|&f| column(f).map(|c| (f, c)))
        .collect::<Result<_, _>>()?;

    let mut samples = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| input_err(e.to_string()))?;
        let cell = |col: usize, name: &str| -> Result<f64, CliError> {
            let raw = record.get(col).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    input_err(format!(
                        "row {}: `{name}` = `{raw}` is not a finite number",
                        row + 2
                    ))
                })
        };
        let y = cell(y_col, "Y")?;
        let mut quantities = Vec::with_capacity(cols.len());
        for &(name, col) in &cols {
            quantities.push((name, cell(col, name)?));
        }
        let bundle = FactorBundle::new(quantities)?;
        samples.push(Sample::new(bundle, y));
    }
    Ok(samples)
}
