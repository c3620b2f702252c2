//! Host calibration of the per-loop cost `m N + c`.
//!
//! Whole solves are timed in batches and the elapsed time is divided by the
//! number of N-section loops they executed, so no clock read sits inside a
//! loop body. The clock is injectable: [`SyntheticClock`] advances by exactly
//! `m N + c` per loop and drives jitter-free end-to-end tests.

use std::hint::black_box;
use std::io::{Read, Write};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{efficiency_report, CostModel, EfficiencyReport, ProblemScale};
use crate::scalar::Scalar;
use crate::solver::{solve, Problem, SolveOptions};

pub const SWEEP_CSV_HEADER: [&str; 4] = ["N", "mean_loop_seconds", "stddev_loop_seconds", "loop_count"];

pub const DEFAULT_MIN_LOOPS: usize = 1000;
pub const DEFAULT_WARMUP_LOOPS: usize = 100;

/// Measurement batches per sample; the spread across them is the reported
/// dispersion.
const BATCHES: usize = 10;

pub trait Clock {
    /// Seconds since an arbitrary fixed origin.
    fn now(&mut self) -> f64;

    /// Smallest observable clock increment, in seconds.
    fn resolution(&mut self) -> f64;

    /// Notified after each solve with the loops it executed. Real clocks
    /// ignore this.
    fn record_loops(&mut self, _sections: usize, _loops: usize) {}
}

/// Wraps [`Instant`].
#[derive(Debug, Clone, Copy)]
pub struct MonotonicClock {
    origin: Instant,
}

impl MonotonicClock {
    pub fn new() -> Self {
        MonotonicClock {
            origin: Instant::now(),
        }
    }
}

impl Default for MonotonicClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for MonotonicClock {
    fn now(&mut self) -> f64 {
        self.origin.elapsed().as_secs_f64()
    }

    fn resolution(&mut self) -> f64 {
        let mut best = f64::INFINITY;
        for _ in 0..16 {
            let start = Instant::now();
            let mut next = Instant::now();
            while next == start {
                next = Instant::now();
            }
            best = best.min((next - start).as_secs_f64());
        }
        best
    }
}

/// Deterministic clock: every N-section loop takes exactly `m N + c`.
#[derive(Debug, Clone, Copy)]
pub struct SyntheticClock {
    pub cost: CostModel<f64>,
    elapsed: f64,
}

impl SyntheticClock {
    pub fn new(cost: CostModel<f64>) -> Self {
        SyntheticClock { cost, elapsed: 0.0 }
    }
}

impl Clock for SyntheticClock {
    fn now(&mut self) -> f64 {
        self.elapsed
    }

    fn resolution(&mut self) -> f64 {
        0.0
    }

    fn record_loops(&mut self, sections: usize, loops: usize) {
        self.elapsed += self.cost.loop_time(sections) * loops as f64;
    }
}

/// Mean wall time per N-section loop at one `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingSample {
    pub sections: usize,
    pub mean_loop_seconds: f64,
    pub stddev_loop_seconds: f64,
    pub loop_count: usize,
}

#[derive(Debug, Clone)]
pub struct SweepConfig<T> {
    pub n_values: Vec<usize>,
    pub min_loops: usize,
    pub warmup_loops: usize,
    pub problem: Problem<T>,
}

impl<T: Scalar> SweepConfig<T> {
    /// All `N` in `[2, 250]`, 1000 measured loops, 100 warmup loops.
    pub fn new(problem: Problem<T>) -> Self {
        SweepConfig {
            n_values: (2..=250).collect(),
            min_loops: DEFAULT_MIN_LOOPS,
            warmup_loops: DEFAULT_WARMUP_LOOPS,
            problem,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::InvalidOptions("sweep needs at least one N".into()));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidOptions(format!(
                "sections must satisfy N >= 2, got {n}"
            )));
        }
        if self.min_loops == 0 {
            return Err(Error::InvalidOptions("min_loops must be positive".into()));
        }
        Ok(())
    }
}

fn bench_options<T: Scalar>(sections: usize) -> SolveOptions<T> {
    // Zero residual tolerance: every solve runs its full iteration count.
    SolveOptions {
        residual_tolerance: T::zero(),
        record_trace: false,
        ..SolveOptions::with_sections(sections)
    }
}

/// Runs full solves until at least `loops` N-section loops have executed.
/// Returns `(loops, solves)`.
fn run_loops<T: Scalar, C: Clock>(
    problem: &Problem<T>,
    options: &SolveOptions<T>,
    loops: usize,
    clock: &mut C,
) -> Result<(usize, usize)> {
    let mut done = 0;
    let mut solves = 0;
    while done < loops {
        let result = black_box(solve(black_box(problem), options)?);
        let iterations = result.iterations.max(1);
        clock.record_loops(options.sections, iterations);
        done += iterations;
        solves += 1;
    }
    Ok((done, solves))
}

pub fn measure_loop_time<T: Scalar, C: Clock>(
    problem: &Problem<T>,
    sections: usize,
    min_loops: usize,
    warmup_loops: usize,
    clock: &mut C,
) -> Result<TimingSample> {
    let options = bench_options(sections);
    options.validate()?;
    if min_loops == 0 {
        return Err(Error::InvalidOptions("min_loops must be positive".into()));
    }

    run_loops(problem, &options, warmup_loops, clock)?;

    let per_batch = min_loops.div_ceil(BATCHES);
    let mut batch_means = Vec::with_capacity(BATCHES);
    let mut total_loops = 0;
    let start = clock.now();
    let mut mark = start;
    for _ in 0..BATCHES {
        let (loops, _) = run_loops(problem, &options, per_batch, clock)?;
        let now = clock.now();
        batch_means.push((now - mark) / loops as f64);
        total_loops += loops;
        mark = now;
    }
    let total = mark - start;

    let resolution = clock.resolution();
    if resolution > 0.01 * total {
        return Err(Error::Clock { resolution, total });
    }

    let mean = total / total_loops as f64;
    let spread = batch_means.iter().map(|b| (b - mean).powi(2)).sum::<f64>()
        / (batch_means.len() - 1) as f64;
    Ok(TimingSample {
        sections,
        mean_loop_seconds: mean,
        stddev_loop_seconds: spread.sqrt(),
        loop_count: total_loops,
    })
}

/// Wall time of one complete solve at `sections`, averaged over enough
/// solves to cover `min_loops` loops.
pub fn measure_solve_time<T: Scalar, C: Clock>(
    problem: &Problem<T>,
    sections: usize,
    min_loops: usize,
    warmup_loops: usize,
    clock: &mut C,
) -> Result<f64> {
    let options = bench_options(sections);
    options.validate()?;
    run_loops(problem, &options, warmup_loops, clock)?;
    let start = clock.now();
    let (_, solves) = run_loops(problem, &options, min_loops.max(1), clock)?;
    Ok((clock.now() - start) / solves as f64)
}

/// One sample per distinct `N`, measured in ascending order. `progress` is
/// called after each sample.
pub fn sweep<T: Scalar, C: Clock>(
    config: &SweepConfig<T>,
    clock: &mut C,
    mut progress: impl FnMut(&TimingSample),
) -> Result<Vec<TimingSample>> {
    config.validate()?;
    let mut n_values = config.n_values.clone();
    n_values.sort_unstable();
    n_values.dedup();

    let mut samples = Vec::with_capacity(n_values.len());
    for n in n_values {
        let sample = measure_loop_time(&config.problem, n, config.min_loops, config.warmup_loops, clock)?;
        progress(&sample);
        samples.push(sample);
    }
    Ok(samples)
}

/// Least-squares line `mean_loop_seconds = m N + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub m: f64,
    pub c: f64,
    pub r_squared: f64,
    /// Fewer than three samples: the line passes through every point and
    /// `r_squared` carries no information.
    pub low_confidence: bool,
}

impl LinearFit {
    pub fn cost_model(&self) -> Result<CostModel<f64>> {
        CostModel::new(self.m, self.c)
    }
}

/// Unweighted ordinary least squares on `(N, mean_loop_seconds)`.
pub fn fit_linear(samples: &[TimingSample]) -> Result<LinearFit> {
    if samples.len() < 2 {
        return Err(Error::Degenerate(format!(
            "need at least two samples, got {}",
            samples.len()
        )));
    }
    let count = samples.len() as f64;
    let mean_n = samples.iter().map(|s| s.sections as f64).sum::<f64>() / count;
    let mean_t = samples.iter().map(|s| s.mean_loop_seconds).sum::<f64>() / count;

    let (mut s_nn, mut s_nt, mut s_tt) = (0.0, 0.0, 0.0);
    for s in samples {
        let dn = s.sections as f64 - mean_n;
        let dt = s.mean_loop_seconds - mean_t;
        s_nn += dn * dn;
        s_nt += dn * dt;
        s_tt += dt * dt;
    }
    if s_nn == 0.0 {
        return Err(Error::Degenerate("all samples share the same N".into()));
    }

    let m = s_nt / s_nn;
    let c = mean_t - m * mean_n;
    if !(m > 0.0 && c > 0.0) {
        return Err(Error::Fit { m, c });
    }

    let ss_res: f64 = samples
        .iter()
        .map(|s| (s.mean_loop_seconds - (m * s.sections as f64 + c)).powi(2))
        .sum();
    let r_squared = if s_tt == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / s_tt).clamp(0.0, 1.0)
    };

    Ok(LinearFit {
        m,
        c,
        r_squared,
        low_confidence: samples.len() < 3,
    })
}

/// Row-at-a-time sweep CSV output, flushed after every row so an
/// interrupted sweep leaves a readable prefix.
pub struct SweepCsvWriter<W: Write> {
    out: csv::Writer<W>,
}

impl<W: Write> SweepCsvWriter<W> {
    pub fn new(writer: W) -> Result<Self> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(SWEEP_CSV_HEADER)?;
        out.flush().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(SweepCsvWriter { out })
    }

    pub fn push(&mut self, s: &TimingSample) -> Result<()> {
        // `Display` for f64 is the shortest round-trip decimal, never
        // scientific notation.
        self.out.write_record([
            s.sections.to_string(),
            s.mean_loop_seconds.to_string(),
            s.stddev_loop_seconds.to_string(),
            s.loop_count.to_string(),
        ])?;
        self.out.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

pub fn write_sweep_csv<W: Write>(writer: W, samples: &[TimingSample]) -> Result<()> {
    let mut out = SweepCsvWriter::new(writer)?;
    samples.iter().try_for_each(|s| out.push(s))
}

pub fn read_sweep_csv<R: Read>(reader: R) -> Result<Vec<TimingSample>> {
    let mut input = csv::Reader::from_reader(reader);
    let header = input.headers()?.clone();
    if header.iter().ne(SWEEP_CSV_HEADER) {
        return Err(Error::Csv(format!("unexpected header {:?}", header)));
    }
    let parse_err = |field: &str, e: &dyn std::fmt::Display| Error::Csv(format!("{field}: {e}"));
    input
        .records()
        .map(|record| {
            let record = record?;
            let field = |i: usize| record.get(i).unwrap_or("");
            Ok(TimingSample {
                sections: field(0).parse().map_err(|e| parse_err("N", &e))?,
                mean_loop_seconds: field(1).parse().map_err(|e| parse_err("mean_loop_seconds", &e))?,
                stddev_loop_seconds: field(2)
                    .parse()
                    .map_err(|e| parse_err("stddev_loop_seconds", &e))?,
                loop_count: field(3).parse().map_err(|e| parse_err("loop_count", &e))?,
            })
        })
        .collect()
}

/// Sweep, fit and model report, plus a direct measurement of full-solve
/// wall time at `N = 2` and at the predicted optimum.
#[derive(Debug, Clone)]
pub struct Calibration {
    pub samples: Vec<TimingSample>,
    pub fit: LinearFit,
    pub report: EfficiencyReport<f64>,
    pub solve_seconds_bisection: f64,
    pub solve_seconds_optimal: f64,
    /// `solve_seconds_optimal / solve_seconds_bisection`.
    pub measured_ratio: f64,
}

pub fn calibrate<C: Clock>(
    config: &SweepConfig<f64>,
    clock: &mut C,
    progress: impl FnMut(&TimingSample),
) -> Result<Calibration> {
    let samples = sweep(config, clock, progress)?;
    calibrate_from_samples(config, samples, clock)
}

/// The part of [`calibrate`] after the sweep, for callers that persist the
/// samples before fitting.
pub fn calibrate_from_samples<C: Clock>(
    config: &SweepConfig<f64>,
    samples: Vec<TimingSample>,
    clock: &mut C,
) -> Result<Calibration> {
    let fit = fit_linear(&samples)?;
    let cost = fit.cost_model()?;
    let problem = &config.problem;
    let scale = ProblemScale::with_width(problem.bracket.width())?;

    let ratio = cost.ratio();
    let n_real = crate::model::n_min_real(ratio)?;
    let sweep_max = samples.iter().map(|s| s.sections).max().unwrap_or(2);
    let top = sweep_max.max(n_real.ceil() as usize).max(2);
    let report = efficiency_report(&cost, &scale, 2..=top)?;

    let (loops, warmup) = (config.min_loops, config.warmup_loops);
    let bisection = measure_solve_time(problem, 2, loops, warmup, clock)?;
    let optimal = measure_solve_time(problem, report.n_min_integer, loops, warmup, clock)?;

    Ok(Calibration {
        samples,
        fit,
        report,
        solve_seconds_bisection: bisection,
        solve_seconds_optimal: optimal,
        measured_ratio: optimal / bisection,
    })
}
