use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expspline::admissibility::DEFAULT_SCAN_POINTS;
use expspline::fundamental::{DEFAULT_SYMBOL_GRID, DEFAULT_WINDOW, SERIES_MARGIN};
use expspline::{
    check_admissibility, compute_coefficients, emit_figure_data, figure_sweeps, integrand_h, linspace, reconstruct,
    AdmissibilityReport, CaseFile, CurveMeta, CurveSample, CurveValues, Error, ExpBSpline, FourierInversion,
    FundamentalSplineModel, QuadratureSpec, SeriesTruncation, SplineParams,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{emit, render_curve, write_atomic, Format};

/// Fundamental cardinal exponential splines of real order.
#[derive(Debug, Parser)]
#[command(name = "expspline", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the admissibility report as JSON; exit 2 when not admissible.
    Admissible(AdmissibleArgs),
    /// Evaluate E, L (series or Fourier route) or h on a uniform grid.
    Eval(EvalArgs),
    /// Dump the coefficients c_k of L as `k,c_k`.
    Coeffs(CoeffsArgs),
    /// Reconstruct a function from integer samples read from a JSON case file.
    Reconstruct(ReconstructArgs),
    /// Write the reference figure sweeps, one file per panel.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaPreset {
    Sqrt6,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "sigma_preset",
        conflicts_with = "sigma_preset"
    )]
    pub sigma: Option<f64>,
    #[arg(long, value_enum)]
    pub sigma_preset: Option<SigmaPreset>,
}

impl ParamArgs {
    fn sigma(&self) -> f64 {
        match (self.sigma, self.sigma_preset) {
            (Some(s), _) => s,
            (None, Some(SigmaPreset::Sqrt6)) => 6f64.sqrt(),
            // clap enforces one of the two.
            (None, None) => f64::NAN,
        }
    }

    /// Parameters for a fundamental-spline command, which needs σ > 1.
    fn fundamental(&self) -> Result<SplineParams, Failure> {
        let sigma = self.sigma();
        if sigma.is_nan() || sigma <= 1.0 {
            return Err(Failure::Usage(format!("sigma must be > 1, got {sigma}")));
        }
        self.spline()
    }

    fn spline(&self) -> Result<SplineParams, Failure> {
        SplineParams::new(self.a, self.sigma()).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// Symbol grid size M (power of two).
    #[arg(long, default_value_t = DEFAULT_SYMBOL_GRID)]
    pub grid_size: usize,
    /// Coefficient window [−W, W].
    #[arg(long, default_value_t = DEFAULT_WINDOW.1)]
    pub window: i64,
}

impl SeriesArgs {
    fn model(&self, p: SplineParams) -> Result<FundamentalSplineModel, Failure> {
        if self.window < 0 {
            return Err(Failure::Usage(format!("window must be >= 0, got {}", self.window)));
        }
        Ok(compute_coefficients(p, self.grid_size, (-self.window, self.window))?)
    }
}

#[derive(Debug, Args)]
pub struct AdmissibleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_SCAN_POINTS)]
    pub scan_points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Bspline,
    #[value(name = "L")]
    L,
    #[value(name = "Lfourier")]
    LFourier,
    H,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Fourier route: the integral runs over K periods on each side.
    #[arg(long, default_value_t = QuadratureSpec::default().periods)]
    pub periods: usize,
    #[arg(long, default_value_t = QuadratureSpec::default().nodes_per_period)]
    pub nodes_per_period: usize,
    #[arg(long, default_value_t = QuadratureSpec::default().tail_tol)]
    pub tail_tol: f64,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub series: SeriesArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[arg(long)]
    pub case: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    NotAdmissible(Box<AdmissibilityReport>),
    Internal(String),
}

impl Failure {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Failure::Internal(format!("{}: {e}", path.display()))
    }

    pub fn report(self) -> ExitCode {
        match self {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(64)
            }
            Failure::NotAdmissible(report) => {
                if let Ok(json) = serde_json::to_string_pretty(&report) {
                    println!("{json}");
                }
                eprintln!(
                    "error: a={} sigma={} is not admissible",
                    report.params.a(),
                    report.params.sigma()
                );
                ExitCode::from(2)
            }
            Failure::Internal(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAdmissible(report) => Failure::NotAdmissible(report),
            Error::Domain(_) | Error::Config(_) | Error::Range { .. } | Error::Json(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl Command {
    pub fn run(&self) -> Result<ExitCode, Failure> {
        match self {
            Command::Admissible(args) => admissible(args),
            Command::Eval(args) => eval(args).map(|_| ExitCode::SUCCESS),
            Command::Coeffs(args) => coeffs(args).map(|_| ExitCode::SUCCESS),
            Command::Reconstruct(args) => reconstruct_case(args).map(|_| ExitCode::SUCCESS),
            Command::Figures(args) => figures(args).map(|_| ExitCode::SUCCESS),
        }
    }
}

fn admissible(args: &AdmissibleArgs) -> Result<ExitCode, Failure> {
    let p = args.params.fundamental()?;
    let report = check_admissibility(p, args.scan_points)?;
    emit(
        args.out.as_deref(),
        &(serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n"),
    )?;
    Ok(if report.admissible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn eval(args: &EvalArgs) -> Result<(), Failure> {
    let grid = linspace(args.from, args.to, args.n)?;
    let p = match args.what {
        What::Bspline => args.params.spline()?,
        _ => args.params.fundamental()?,
    };
    let meta = |function: &str| CurveMeta {
        a: p.a(),
        sigma: p.sigma(),
        function: function.into(),
    };
    let curve = match args.what {
        What::Bspline => {
            let e = ExpBSpline::new(p, SeriesTruncation::default())?;
            let values = grid.iter().map(|&x| e.eval(x)).collect();
            CurveSample::new(grid, CurveValues::Real(values), meta("bspline"))?
        }
        What::L => {
            let model = args.series.model(p)?;
            let values = grid.par_iter().map(|&x| model.eval(x)).collect::<Result<Vec<_>, _>>()?;
            CurveSample::new(grid, CurveValues::Real(values), meta("L"))?
        }
        What::LFourier => {
            let quad = QuadratureSpec {
                periods: args.periods,
                nodes_per_period: args.nodes_per_period,
                tail_tol: args.tail_tol,
            };
            let inv = FourierInversion::new(p, quad)?;
            let values = grid.iter().map(|&x| inv.eval(x)).collect::<Result<Vec<_>, _>>()?;
            CurveSample::new(grid, CurveValues::Real(values), meta("L_fourier"))?
        }
        What::H => {
            let report = check_admissibility(p, DEFAULT_SCAN_POINTS)?;
            if !report.admissible {
                return Err(Failure::NotAdmissible(Box::new(report)));
            }
            let values = grid
                .par_iter()
                .map(|&xi| integrand_h(p, xi))
                .collect::<Result<Vec<_>, _>>()?;
            CurveSample::new(grid, CurveValues::from_complex(&values), meta("h"))?
        }
    };
    emit(args.output.out.as_deref(), &render_curve(&curve, args.output.format)?)
}

#[derive(Serialize)]
struct CoefficientTable<'a> {
    version: &'a str,
    params: SplineParams,
    grid_size: usize,
    window: (i64, i64),
    coefficients: Vec<CoefficientRow>,
}

#[derive(Serialize)]
struct CoefficientRow {
    k: i64,
    c: f64,
}

fn coeffs(args: &CoeffsArgs) -> Result<(), Failure> {
    let p = args.params.fundamental()?;
    let model = args.series.model(p)?;
    let text = match args.output.format {
        Format::Csv => {
            let mut out = format!(
                "# expspline {} function=coefficients a={} sigma={} grid_size={} window={}\nk,c_k\n",
                env!("CARGO_PKG_VERSION"),
                p.a(),
                p.sigma(),
                model.symbol_grid_size(),
                args.series.window
            );
            for (k, c) in model.coefficients() {
                out.push_str(&format!("{k},{c:.16e}\n"));
            }
            out
        }
        Format::Json => {
            let table = CoefficientTable {
                version: env!("CARGO_PKG_VERSION"),
                params: p,
                grid_size: model.symbol_grid_size(),
                window: model.window(),
                coefficients: model.coefficients().map(|(k, c)| CoefficientRow { k, c }).collect(),
            };
            serde_json::to_string_pretty(&table).map_err(Error::from)? + "\n"
        }
    };
    emit(args.output.out.as_deref(), &text)
}

fn reconstruct_case(args: &ReconstructArgs) -> Result<(), Failure> {
    let text =
        std::fs::read_to_string(&args.case).map_err(|e| Failure::Usage(format!("{}: {e}", args.case.display())))?;
    let file = CaseFile::from_json(&text)?;
    let sigma = file.params.sigma();
    if sigma.is_nan() || sigma <= 1.0 {
        return Err(Failure::Usage(format!("sigma must be > 1, got {sigma}")));
    }
    let (lo, hi) = file
        .samples
        .iter()
        .fold((i64::MAX, i64::MIN), |(lo, hi), s| (lo.min(s.k), hi.max(s.k)));
    if file.samples.is_empty() || !file.grid.from.is_finite() || !file.grid.to.is_finite() {
        return Err(Failure::Usage("case needs samples and a finite grid".into()));
    }
    // Every shift t − k must stay inside the reliable range of the series.
    let spread = [file.grid.from - hi as f64, file.grid.to - lo as f64]
        .iter()
        .fold(0.0f64, |m, d| m.max(d.abs()));
    let window = (spread.ceil() as i64 + SERIES_MARGIN + 1).max(DEFAULT_WINDOW.1);
    let grid_size = (2 * window as usize + 2).next_power_of_two().max(DEFAULT_SYMBOL_GRID);
    let model = compute_coefficients(file.params, grid_size, (-window, window))?;
    let case = file.build(&model)?;
    let rec = reconstruct(&case)?;
    emit(
        args.output.out.as_deref(),
        &render_curve(&rec.curve, args.output.format)?,
    )?;
    let summary = format!(
        "max_integer_error: {:e}\nflagged_points: {}",
        rec.max_integer_error,
        rec.flagged.len()
    );
    // Keep stdout parseable when the curve itself went there.
    if args.output.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn figures(args: &FiguresArgs) -> Result<(), Failure> {
    std::fs::create_dir_all(&args.out_dir).map_err(|e| Failure::io(&args.out_dir, e))?;
    for sweep in figure_sweeps() {
        let curves = emit_figure_data(sweep.kind, &sweep.params, &sweep.grid)?;
        let text = match args.format {
            Format::Csv => curves.iter().map(CurveSample::to_csv).collect::<String>(),
            Format::Json => serde_json::to_string_pretty(&curves).map_err(Error::from)? + "\n",
        };
        let path = args.out_dir.join(format!("{}.{}", sweep.name, args.format.extension()));
        write_atomic(&path, &text)?;
        println!("{}", path.display());
    }
    Ok(())
}
