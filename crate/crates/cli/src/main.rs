mod manifest;

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use multisection::bench::{DEFAULT_MIN_LOOPS, DEFAULT_WARMUP_LOOPS};
use multisection::corpus::{builtin, BUILTIN_NAMES, FORMULAS};
use multisection::convergence::REPORTED_UNDERFLOW_EXPONENT;
use multisection::*;
use serde::Serialize;
use serde_json::json;

use manifest::RunManifest;

#[derive(Parser)]
#[command(name = "multisection", version, about = "Multisection root finding and section-count calibration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and print the root.
    Solve(SolveArgs),
    /// Time the multisection loop over a range of N, fit m N + c and report.
    Calibrate(CalibrateArgs),
    /// Evaluate the cost model for a given c/m ratio.
    Predict(PredictArgs),
    /// Error-bound sequence, underflow exponent and corpus bound checks.
    Appendix(AppendixArgs),
}

#[derive(Args, Serialize)]
struct ProblemSelector {
    /// Corpus problem, 1-based.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6), conflicts_with = "function")]
    corpus: Option<u8>,
    /// Named builtin function, used with --lo and --hi.
    #[arg(long, requires_all = ["lo", "hi"])]
    function: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<f64>,
}

#[derive(Args, Serialize)]
struct SolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    problem: ProblemSelector,
    #[arg(long, default_value_t = 2)]
    sections: usize,
    /// Stop once the interval width is at most this. Defaults to machine epsilon.
    #[arg(long)]
    width_tol: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    residual_tol: f64,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Serialize)]
struct CalibrateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    problem: ProblemSelector,
    /// Comma-separated section counts. Defaults to 2..=250.
    #[arg(long, value_delimiter = ',')]
    n_values: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_MIN_LOOPS)]
    min_loops: usize,
    #[arg(long, default_value_t = DEFAULT_WARMUP_LOOPS)]
    warmup: usize,
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Replace the wall clock with a synthetic one charging m N + c seconds per loop.
    #[arg(long, requires = "synthetic_c")]
    synthetic_m: Option<f64>,
    #[arg(long, requires = "synthetic_m")]
    synthetic_c: Option<f64>,
}

#[derive(Args, Serialize)]
struct PredictArgs {
    /// R = c / m.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["m", "c"], required_unless_present_all = ["m", "c"])]
    ratio: Option<f64>,
    /// Seconds per function evaluation.
    #[arg(long, allow_hyphen_values = true, requires = "c")]
    m: Option<f64>,
    /// Fixed seconds per loop.
    #[arg(long, allow_hyphen_values = true, requires = "m")]
    c: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    width: f64,
    /// Absolute tolerance. Defaults to machine epsilon.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// Write (N, T_f, T_t) to this CSV file.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Largest N in the curve; raised to cover the real optimum.
    #[arg(long, default_value_t = 250)]
    n_max: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Serialize)]
struct AppendixArgs {
    #[arg(long, default_value_t = 1.0)]
    width: f64,
    #[arg(long, default_value_t = 2)]
    sections: usize,
    #[arg(long, default_value_t = f64::EPSILON)]
    eps: f64,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Bracket { .. } | Error::NoSignChange { .. }) => 2,
            CliError::Core(
                Error::Domain(_) | Error::InvalidInterval { .. } | Error::InvalidOptions(_) | Error::Range(_),
            )
            | CliError::Usage(_) => 3,
            CliError::Core(Error::Fit { .. } | Error::Degenerate(_)) => 4,
            CliError::Core(Error::BoundViolation { .. }) => 5,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<V> = std::result::Result<V, CliError>;

fn io_at<V>(path: &Path, r: std::io::Result<V>) -> CliResult<V> {
    r.map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// The selected problem and a display label for summary rows.
fn select_problem(sel: &ProblemSelector) -> CliResult<(Problem64, String)> {
    if let Some(name) = &sel.function {
        let f = builtin::<f64>(name).ok_or_else(|| {
            CliError::Usage(format!("unknown function {name:?}; expected one of {}", BUILTIN_NAMES.join(", ")))
        })?;
        let (lo, hi) = (sel.lo.expect("clap requires lo"), sel.hi.expect("clap requires hi"));
        let bracket = Interval::new(lo, hi)?;
        return Ok((Problem::new(name.clone(), f, bracket), name.clone()));
    }
    if sel.lo.is_some() || sel.hi.is_some() {
        return Err(CliError::Usage("--lo and --hi are only used with --function".into()));
    }
    let index = usize::from(sel.corpus.unwrap_or(1)) - 1;
    let problem = corpus::<f64>().swap_remove(index);
    Ok((problem, FORMULAS[index].to_string()))
}

#[derive(Serialize)]
struct SolveReport<'a> {
    problem: &'a str,
    lo: f64,
    hi: f64,
    sections: usize,
    root: f64,
    residual: f64,
    iterations: usize,
    function_evaluations: usize,
    termination: &'static str,
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::ExactZero => "exact_zero",
        Termination::WidthReached => "width_reached",
        Termination::ResidualReached => "residual_reached",
        Termination::MaxIterations => "max_iterations",
    }
}

fn cmd_solve(args: &SolveArgs) -> CliResult<()> {
    let (problem, _) = select_problem(&args.problem)?;
    let options = SolveOptions {
        sections: args.sections,
        width_tolerance: args.width_tol.unwrap_or(f64::EPSILON),
        residual_tolerance: args.residual_tol,
        max_iterations: args.max_iterations,
        record_trace: false,
    };
    let result = solve(&problem, &options)?;
    let report = SolveReport {
        problem: &problem.id,
        lo: problem.bracket.lo(),
        hi: problem.bracket.hi(),
        sections: result.sections,
        root: result.root,
        residual: result.residual,
        iterations: result.iterations,
        function_evaluations: result.function_evaluations,
        termination: termination_name(result.termination),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("problem      {} on {}", report.problem, problem.bracket);
        println!("sections     {}", report.sections);
        println!("root         {}", report.root);
        println!("residual     {:e}", report.residual);
        println!("iterations   {}", report.iterations);
        println!("evaluations  {}", report.function_evaluations);
        println!("termination  {}", report.termination);
    }
    Ok(())
}

#[derive(Serialize)]
struct FitFile<'a> {
    problem: &'a str,
    m: f64,
    c: f64,
    r_squared: f64,
    low_confidence: bool,
    samples: usize,
    synthetic_clock: bool,
}

#[derive(Serialize)]
struct ReportFile {
    #[serde(rename = "R")]
    ratio: f64,
    n_min_real: f64,
    n_min_integer: usize,
    rel_eff: f64,
    r_squared: f64,
    measured_ratio: f64,
}

fn write_json(path: &Path, value: &impl Serialize) -> CliResult<()> {
    let json = serde_json::to_string_pretty(value).expect("serializable");
    io_at(path, fs::write(path, json + "\n"))
}

fn cmd_calibrate(args: &CalibrateArgs) -> CliResult<()> {
    let (problem, label) = select_problem(&args.problem)?;
    let problem_id = problem.id.clone();
    let bracket = problem.bracket;
    let mut config = SweepConfig::new(problem);
    if !args.n_values.is_empty() {
        config.n_values = args.n_values.clone();
    }
    config.min_loops = args.min_loops;
    config.warmup_loops = args.warmup;
    config.validate()?;

    io_at(&args.out, fs::create_dir_all(&args.out))?;
    let mut manifest = RunManifest::new("calibrate", json!(args));
    let manifest_path = args.out.join("manifest.json");
    let result = match (args.synthetic_m, args.synthetic_c) {
        (Some(m), Some(c)) => {
            let mut clock = SyntheticClock::new(CostModel::new(m, c)?);
            run_calibration(&config, &mut clock, &args.out, &mut manifest)
        }
        _ => run_calibration(&config, &mut MonotonicClock::new(), &args.out, &mut manifest),
    };
    let calibration = match result {
        Ok(cal) => cal,
        Err(e) => {
            manifest.status = format!("failed: {e}");
            io_at(&manifest_path, manifest.write(&manifest_path))?;
            return Err(e);
        }
    };

    let fit_path = args.out.join("fit.json");
    write_json(
        &fit_path,
        &FitFile {
            problem: &problem_id,
            m: calibration.fit.m,
            c: calibration.fit.c,
            r_squared: calibration.fit.r_squared,
            low_confidence: calibration.fit.low_confidence,
            samples: calibration.samples.len(),
            synthetic_clock: args.synthetic_m.is_some(),
        },
    )?;
    manifest.outputs.push(fit_path);

    let report = &calibration.report;
    let report_path = args.out.join("report.json");
    write_json(
        &report_path,
        &ReportFile {
            ratio: report.ratio,
            n_min_real: report.n_min_real,
            n_min_integer: report.n_min_integer,
            rel_eff: report.rel_eff,
            r_squared: calibration.fit.r_squared,
            measured_ratio: calibration.measured_ratio,
        },
    )?;
    manifest.outputs.push(report_path);

    let curve_path = args.out.join("curve.csv");
    let scale = ProblemScale::with_width(bracket.width())?;
    write_curve(&curve_path, &calibration.fit.cost_model()?, &scale, report.curve.len() + 1)?;
    manifest.outputs.push(curve_path);
    io_at(&manifest_path, manifest.write(&manifest_path))?;

    if calibration.fit.low_confidence {
        eprintln!("warning: fit from {} points is low-confidence", calibration.samples.len());
    }
    println!("f(x) | [a,b] | R (=c/m) | N_min | r^2 | RelEff | measured ratio");
    println!(
        "{label} | [{}, {}] | {:.2e} | {} | {:.3} | {:.3} | {:.3}",
        bracket.lo(),
        bracket.hi(),
        report.ratio,
        report.n_min_integer,
        calibration.fit.r_squared,
        report.rel_eff,
        calibration.measured_ratio
    );
    Ok(())
}

fn run_calibration<C: Clock>(
    config: &SweepConfig<f64>,
    clock: &mut C,
    out: &Path,
    manifest: &mut RunManifest,
) -> CliResult<Calibration> {
    let csv_path = out.join("sweep.csv");
    let file = io_at(&csv_path, File::create(&csv_path))?;
    manifest.outputs.push(csv_path);
    let mut writer = SweepCsvWriter::new(BufWriter::new(file))?;
    let mut write_error = None;
    let samples = sweep(config, clock, |sample| {
        eprintln!(
            "N = {:>3}  {:.4e} s/loop  (sd {:.2e})",
            sample.sections, sample.mean_loop_seconds, sample.stddev_loop_seconds
        );
        if write_error.is_none() {
            write_error = writer.push(sample).err();
        }
    })?;
    if let Some(e) = write_error {
        return Err(e.into());
    }
    Ok(calibrate_from_samples(config, samples, clock)?)
}

fn write_curve(path: &Path, cost: &CostModel64, scale: &ProblemScale64, n_max: usize) -> CliResult<()> {
    let mut body = String::from("N,T_f,T_t\n");
    for n in 2..=n_max {
        let evals = total_function_evals(n, scale)?;
        let time = total_time(n, cost, scale)?;
        body.push_str(&format!("{n},{evals},{time}\n"));
    }
    io_at(path, fs::write(path, body))
}

#[derive(Serialize)]
struct PredictReport {
    #[serde(rename = "R")]
    ratio: f64,
    n_min_real: f64,
    n_min_integer: usize,
    rel_eff: f64,
}

fn cmd_predict(args: &PredictArgs) -> CliResult<()> {
    // With only R given, time is measured in units of m.
    let cost = match (args.ratio, args.m, args.c) {
        (Some(r), _, _) => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::Usage(format!("--ratio must be positive and finite, got {r}")));
            }
            CostModel::new(1.0, r)?
        }
        (None, Some(m), Some(c)) => CostModel::new(m, c)?,
        _ => return Err(CliError::Usage("give --ratio or both --m and --c".into())),
    };
    let ratio = cost.ratio();
    let report = PredictReport {
        ratio,
        n_min_real: n_min_real(ratio)?,
        n_min_integer: n_min_integer(ratio)?,
        rel_eff: rel_eff(ratio)?,
    };

    if let Some(path) = &args.curve {
        let scale = ProblemScale::new(args.width, args.mu.unwrap_or(f64::EPSILON))?;
        let n_max = args.n_max.max(report.n_min_real.ceil() as usize).max(2);
        write_curve(path, &cost, &scale, n_max)?;
        let mut manifest = RunManifest::new("predict", json!(args));
        manifest.outputs.push(path.clone());
        let manifest_path = path.with_extension("manifest.json");
        io_at(&manifest_path, manifest.write(&manifest_path))?;
    }

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("R              {}", report.ratio);
        println!("n_min_real     {:.4}", report.n_min_real);
        println!("n_min_integer  {}", report.n_min_integer);
        println!("rel_eff        {:.3}", report.rel_eff);
    }
    Ok(())
}

fn cmd_appendix(args: &AppendixArgs) -> CliResult<()> {
    let seq = BoundSequence::new(args.width, args.sections)?;
    let first = first_index_below(&seq, args.eps)?;
    println!("first_index_below(eps = {:e}) = {first}", args.eps);
    println!("z (subnormal)      = {}", underflow_exponent(args.width)?);
    println!(
        "z (flush-to-zero)  = {}",
        underflow_exponent_with(args.width, UnderflowMode::FlushToZero)?
    );
    println!("z (reported, width 1) = {REPORTED_UNDERFLOW_EXPONENT}");

    let mut violation = None;
    for problem in corpus::<f64>() {
        match verify_error_bounds(&problem, args.sections) {
            Ok(report) => println!(
                "bounds {:<13} N = {}: ok over {} iterations",
                problem.id,
                args.sections,
                report.checks.len()
            ),
            Err(e @ Error::BoundViolation { .. }) => {
                println!("bounds {:<13} N = {}: {e}", problem.id, args.sections);
                violation.get_or_insert(e);
            }
            Err(e) => return Err(e.into()),
        }
    }
    match violation {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Calibrate(args) => cmd_calibrate(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Appendix(args) => cmd_appendix(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
