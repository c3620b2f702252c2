//! N-section bracketing iteration.
//!
//! Each iteration places `N - 1` equispaced nodes in the current bracket,
//! evaluates all of them, and keeps the leftmost of the `N` subintervals
//! across which `f` changes sign. Bisection is the `N = 2` case.
//!
//! Termination is driven by the *nominal* bracket width `(b - a) / N^i`,
//! tracked by repeated division exactly as [`predicted_max_iterations`]
//! computes it. The actual bracket can stall at one ulp wide long before
//! the nominal width reaches the tolerance; tracking the nominal width keeps
//! the iteration count equal to the prediction regardless of the magnitude
//! of the root.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Closed interval `[lo, hi]` with finite endpoints and `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> T {
        self.lo + (self.hi - self.lo) / T::lit(2.0)
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Sign of a function value. Zero is its own case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// `None` for NaN.
    pub fn of<T: Scalar>(value: T) -> Option<Sign> {
        if value.is_nan() {
            None
        } else if value > T::zero() {
            Some(Sign::Positive)
        } else if value < T::zero() {
            Some(Sign::Negative)
        } else {
            Some(Sign::Zero)
        }
    }

    /// True for a strict `+`/`-` pair.
    pub fn opposes(self, other: Sign) -> bool {
        matches!(
            (self, other),
            (Sign::Negative, Sign::Positive) | (Sign::Positive, Sign::Negative)
        )
    }
}

pub type Function<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A target function with its bracketing interval.
#[derive(Clone)]
pub struct Problem<T> {
    pub id: String,
    pub f: Function<T>,
    pub bracket: Interval<T>,
    pub reference_root: Option<T>,
}

impl<T: Scalar> Problem<T> {
    pub fn new<F>(id: impl Into<String>, f: F, bracket: Interval<T>) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Problem {
            id: id.into(),
            f: Arc::new(f),
            bracket,
            reference_root: None,
        }
    }

    /// Attaches a known root; it must lie inside the bracket.
    pub fn with_reference_root(mut self, root: T) -> Result<Self> {
        if !self.bracket.contains(root) {
            return Err(Error::Domain(format!(
                "reference root {} outside bracket {}",
                root, self.bracket
            )));
        }
        self.reference_root = Some(root);
        Ok(self)
    }

    pub fn eval(&self, x: T) -> T {
        (self.f)(x)
    }
}

impl<T: fmt::Debug> fmt::Debug for Problem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("id", &self.id)
            .field("bracket", &self.bracket)
            .field("reference_root", &self.reference_root)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions<T> {
    /// Number of subintervals per iteration, `N >= 2`.
    pub sections: usize,
    /// Absolute width at which iteration stops. Defaults to machine epsilon.
    pub width_tolerance: T,
    /// Early exit when some node has `|f| <= residual_tolerance`. Zero
    /// disables it, leaving only exact zeros as early exits.
    pub residual_tolerance: T,
    /// Defaults to the predicted iteration count plus two.
    pub max_iterations: Option<usize>,
    /// Keep an [`IterationRecord`] per iteration in the result.
    pub record_trace: bool,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        SolveOptions {
            sections: 2,
            width_tolerance: T::epsilon(),
            residual_tolerance: T::zero(),
            max_iterations: None,
            record_trace: true,
        }
    }
}

impl<T: Scalar> SolveOptions<T> {
    pub fn with_sections(sections: usize) -> Self {
        SolveOptions {
            sections,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sections < 2 {
            return Err(Error::InvalidOptions(format!(
                "sections must satisfy N >= 2, got {}",
                self.sections
            )));
        }
        if !(self.width_tolerance > T::zero()) {
            return Err(Error::InvalidOptions(format!(
                "width tolerance must be positive, got {}",
                self.width_tolerance
            )));
        }
        if !(self.residual_tolerance >= T::zero()) {
            return Err(Error::InvalidOptions(format!(
                "residual tolerance must be non-negative, got {}",
                self.residual_tolerance
            )));
        }
        Ok(())
    }
}

/// One pass of the N-section iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<T> {
    /// 1-based.
    pub index: usize,
    pub interval_before: Interval<T>,
    /// `(x_j, f(x_j))` for `j = 1..N-1`, left to right.
    pub evaluated_nodes: Vec<(T, T)>,
    pub chosen_subinterval: Interval<T>,
    /// 0-based position of the chosen subinterval among the `N`.
    pub chosen_index: usize,
    /// Leftmost node where `f` was exactly zero.
    pub exact_root: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ExactZero,
    WidthReached,
    ResidualReached,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<T> {
    pub root: T,
    /// `f(root)`. Not counted in `function_evaluations`.
    pub residual: T,
    pub iterations: usize,
    /// `(N - 1) * iterations + 2`.
    pub function_evaluations: usize,
    pub sections: usize,
    pub final_interval: Interval<T>,
    /// Empty unless `record_trace` was set.
    pub trace: Vec<IterationRecord<T>>,
    pub termination: Termination,
}

fn evaluate<T: Scalar>(f: &dyn Fn(T) -> T, x: T) -> Result<(T, Sign)> {
    let fx = f(x);
    let sign = Sign::of(fx).ok_or(Error::Evaluation { x: x.as_f64() })?;
    Ok((fx, sign))
}

fn evaluate_bracket<T: Scalar>(problem: &Problem<T>) -> Result<((T, Sign), (T, Sign))> {
    let Interval { lo, hi } = problem.bracket;
    let at_lo = evaluate(&*problem.f, lo)?;
    let at_hi = evaluate(&*problem.f, hi)?;
    if at_lo.1 != Sign::Zero && at_lo.1 == at_hi.1 {
        return Err(Error::Bracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: at_lo.0.as_f64(),
            f_hi: at_hi.0.as_f64(),
        });
    }
    Ok((at_lo, at_hi))
}

/// Signs of `f` at the bracket endpoints. Succeeds when they are strictly
/// opposite or at least one is exactly zero.
pub fn validate_bracket<T: Scalar>(problem: &Problem<T>) -> Result<(Sign, Sign)> {
    let ((_, lo), (_, hi)) = evaluate_bracket(problem)?;
    Ok((lo, hi))
}

/// Runs a single N-section pass over `interval`, given the signs of `f` at
/// its endpoints (neither zero).
pub fn multisect_step<T, F>(
    interval: Interval<T>,
    endpoint_signs: (Sign, Sign),
    sections: usize,
    f: F,
) -> Result<IterationRecord<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if sections < 2 {
        return Err(Error::InvalidOptions(format!(
            "sections must satisfy N >= 2, got {sections}"
        )));
    }
    let mut nodes = Vec::with_capacity(sections - 1);
    let outcome = step(interval, endpoint_signs, sections, &f, &mut nodes)?;
    Ok(outcome.into_record(1, interval, nodes))
}

struct StepOutcome<T> {
    chosen: Interval<T>,
    chosen_index: usize,
    signs: (Sign, Sign),
    exact_root: Option<T>,
}

impl<T: Scalar> StepOutcome<T> {
    fn into_record(self, index: usize, before: Interval<T>, nodes: Vec<(T, T)>) -> IterationRecord<T> {
        IterationRecord {
            index,
            interval_before: before,
            evaluated_nodes: nodes,
            chosen_subinterval: self.chosen,
            chosen_index: self.chosen_index,
            exact_root: self.exact_root,
        }
    }
}

/// Fills `nodes` with the `N - 1` evaluations and picks the subinterval.
fn step<T: Scalar>(
    interval: Interval<T>,
    (lo_sign, hi_sign): (Sign, Sign),
    sections: usize,
    f: &dyn Fn(T) -> T,
    nodes: &mut Vec<(T, T)>,
) -> Result<StepOutcome<T>> {
    let Interval { lo, hi } = interval;
    let width = hi - lo;
    let n = T::from_count(sections);

    nodes.clear();
    for j in 1..sections {
        // Each node is recomputed from the current endpoints.
        let x = lo + (T::from_count(j) * width) / n;
        let (fx, _) = evaluate(f, x)?;
        nodes.push((x, fx));
    }

    let abscissa = |k: usize| match k {
        0 => lo,
        k if k == sections => hi,
        k => nodes[k - 1].0,
    };
    let sign_at = |k: usize| match k {
        0 => lo_sign,
        k if k == sections => hi_sign,
        k => Sign::of(nodes[k - 1].1).expect("NaN rejected on evaluation"),
    };

    if let Some(j) = nodes.iter().position(|&(_, fx)| fx == T::zero()) {
        return Ok(StepOutcome {
            chosen: Interval {
                lo: abscissa(j),
                hi: nodes[j].0,
            },
            chosen_index: j,
            signs: (sign_at(j), Sign::Zero),
            exact_root: Some(nodes[j].0),
        });
    }

    let chosen = (0..sections)
        .find(|&k| sign_at(k).opposes(sign_at(k + 1)))
        .ok_or(Error::NoSignChange {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        })?;

    Ok(StepOutcome {
        chosen: Interval {
            lo: abscissa(chosen),
            hi: abscissa(chosen + 1),
        },
        chosen_index: chosen,
        signs: (sign_at(chosen), sign_at(chosen + 1)),
        exact_root: None,
    })
}

/// Smallest `M` with `(b - a) / N^M <= mu`, where `N^M` is applied as `M`
/// successive divisions in working precision. This is the same sequence the
/// solver tracks, so exact-power boundaries agree by construction.
pub fn predicted_max_iterations<T: Scalar>(
    interval: Interval<T>,
    mu: T,
    sections: usize,
) -> Result<usize> {
    if !(mu > T::zero()) {
        return Err(Error::Domain(format!("mu must be positive, got {mu}")));
    }
    if sections < 2 {
        return Err(Error::Domain(format!(
            "sections must satisfy N >= 2, got {sections}"
        )));
    }
    let n = T::from_count(sections);
    let mut bound = interval.width();
    let mut iterations = 0;
    while bound > mu {
        bound = bound / n;
        iterations += 1;
    }
    Ok(iterations)
}

pub fn solve<T: Scalar>(problem: &Problem<T>, options: &SolveOptions<T>) -> Result<SolveResult<T>> {
    options.validate()?;
    let f = &*problem.f;
    let sections = options.sections;
    let ((f_lo, lo_sign), (_, hi_sign)) = evaluate_bracket(problem)?;

    let finish = |root: T, interval, iterations, trace, termination, residual: Option<T>| {
        SolveResult {
            root,
            residual: residual.unwrap_or_else(|| f(root)),
            iterations,
            function_evaluations: (sections - 1) * iterations + 2,
            sections,
            final_interval: interval,
            trace,
            termination,
        }
    };

    let bracket = problem.bracket;
    if lo_sign == Sign::Zero {
        return Ok(finish(bracket.lo, bracket, 0, Vec::new(), Termination::ExactZero, Some(f_lo)));
    }
    if hi_sign == Sign::Zero {
        return Ok(finish(bracket.hi, bracket, 0, Vec::new(), Termination::ExactZero, None));
    }

    let budget = predicted_max_iterations(bracket, options.width_tolerance, sections)?;
    let cap = options.max_iterations.unwrap_or(budget + 2);
    let n = T::from_count(sections);

    let mut interval = bracket;
    let mut signs = (lo_sign, hi_sign);
    let mut nominal_width = bracket.width();
    let mut iterations = 0;
    let mut nodes = Vec::with_capacity(sections - 1);
    let mut trace = Vec::with_capacity(if options.record_trace { budget.min(cap) } else { 0 });

    let (root, termination, residual) = loop {
        if nominal_width <= options.width_tolerance {
            break (interval.midpoint(), Termination::WidthReached, None);
        }
        if iterations >= cap {
            break (interval.midpoint(), Termination::MaxIterations, None);
        }
        let before = interval;
        let outcome = step(interval, signs, sections, f, &mut nodes)?;
        iterations += 1;
        nominal_width = nominal_width / n;
        interval = outcome.chosen;
        signs = outcome.signs;

        let mut exit = outcome
            .exact_root
            .map(|x| (x, Termination::ExactZero, Some(T::zero())));
        if exit.is_none() && options.residual_tolerance > T::zero() {
            exit = nodes
                .iter()
                .filter(|(_, fx)| fx.abs() <= options.residual_tolerance)
                .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("no NaN"))
                .map(|&(x, fx)| (x, Termination::ResidualReached, Some(fx)));
        }
        if options.record_trace {
            trace.push(outcome.into_record(iterations, before, nodes.clone()));
        }
        if let Some(exit) = exit {
            break exit;
        }
    };

    Ok(finish(root, interval, iterations, trace, termination, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn problem(f: fn(f64) -> f64, lo: f64, hi: f64) -> Problem<f64> {
        Problem::new("test", f, Interval::new(lo, hi).unwrap())
    }

    #[test]
    fn interval_rejects_bad_endpoints() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn bracket_signs() {
        let p = problem(|x| x * x - 8.0, -5.0, -2.0);
        assert_eq!(validate_bracket(&p).unwrap(), (Sign::Positive, Sign::Negative));

        let p = problem(|x| x, -1.0, 1.0);
        assert_eq!(validate_bracket(&p).unwrap(), (Sign::Negative, Sign::Positive));

        let p = problem(|x| x * x - 8.0, 3.0, 5.0);
        assert!(matches!(validate_bracket(&p), Err(Error::Bracket { .. })));

        let p = problem(|x| x, 0.0, 1.0);
        assert_eq!(validate_bracket(&p).unwrap(), (Sign::Zero, Sign::Positive));

        let p = problem(|x| if x > 0.0 { f64::NAN } else { x }, -1.0, 1.0);
        assert!(matches!(validate_bracket(&p), Err(Error::Evaluation { .. })));
    }

    #[test]
    fn negative_zero_is_zero() {
        assert_eq!(Sign::of(-0.0_f64), Some(Sign::Zero));
        assert!(!Sign::Zero.opposes(Sign::Positive));
    }

    #[test]
    fn step_bisection_hits_midpoint_root() {
        let interval = Interval::new(-1.0, 1.0).unwrap();
        let rec = multisect_step(interval, (Sign::Negative, Sign::Positive), 2, |x: f64| x).unwrap();
        assert_eq!(rec.evaluated_nodes, vec![(0.0, 0.0)]);
        assert_eq!(rec.exact_root, Some(0.0));
    }

    #[test]
    fn step_tenths_node_is_exact() {
        // (3 * 1) / 10 rounds to the same double as the literal 0.3.
        assert_eq!((3.0_f64 * 1.0) / 10.0, 0.3);
        let interval = Interval::new(0.0, 1.0).unwrap();
        let rec =
            multisect_step(interval, (Sign::Negative, Sign::Positive), 10, |x: f64| x - 0.3)
                .unwrap();
        assert_eq!(rec.evaluated_nodes.len(), 9);
        assert_eq!(rec.exact_root, Some(0.3));
        assert_eq!(rec.chosen_subinterval, Interval::new(0.2, 0.3).unwrap());
    }

    #[test]
    fn step_quarters_on_sin_minus_cos() {
        let f = |x: f64| x.sin() - x.cos();
        let interval = Interval::new(0.0, FRAC_PI_2).unwrap();
        let rec = multisect_step(interval, (Sign::Negative, Sign::Positive), 4, f).unwrap();
        let xs: Vec<f64> = rec.evaluated_nodes.iter().map(|n| n.0).collect();
        assert_eq!(xs, vec![FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8]);

        // Oracle: direct sign evaluation at the three nodes. The double
        // nearest pi/4 lies just below the true root, so f there is negative
        // and the sign change falls in the third subinterval.
        let edges = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2];
        let oracle = edges
            .windows(2)
            .position(|w| (f(w[0]) < 0.0) != (f(w[1]) < 0.0))
            .unwrap();
        assert_eq!(oracle, 2);
        assert_eq!(rec.chosen_index, oracle);
        assert_eq!(
            rec.chosen_subinterval,
            Interval::new(edges[oracle], edges[oracle + 1]).unwrap()
        );
    }

    #[test]
    fn step_takes_leftmost_of_several_sign_changes() {
        // Roots at -0.5 and 0.5 and 1.5; f(-1) < 0 and f(2) > 0.
        let f = |x: f64| (x + 0.5) * (x - 0.5) * (x - 1.5);
        let interval = Interval::new(-1.0, 2.0).unwrap();
        let rec = multisect_step(interval, (Sign::Negative, Sign::Positive), 3, f).unwrap();
        assert_eq!(rec.chosen_subinterval, Interval::new(-1.0, 0.0).unwrap());
    }

    #[test]
    fn step_without_sign_change_errors() {
        let interval = Interval::new(0.0, 1.0).unwrap();
        let rec = multisect_step(interval, (Sign::Positive, Sign::Positive), 4, |_x: f64| 1.0);
        assert!(matches!(rec, Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn iteration_prediction() {
        let unit = Interval::new(0.0, 1.0).unwrap();
        let eps = f64::EPSILON;
        assert_eq!(predicted_max_iterations(unit, eps, 2).unwrap(), 52);
        assert_eq!(predicted_max_iterations(unit, eps, 16).unwrap(), 13);
        let quarter_turn = Interval::new(0.0, FRAC_PI_2).unwrap();
        assert_eq!(predicted_max_iterations(quarter_turn, eps, 2).unwrap(), 53);
        assert!(matches!(predicted_max_iterations(unit, 0.0, 2), Err(Error::Domain(_))));
        assert!(matches!(predicted_max_iterations(unit, -1.0, 2), Err(Error::Domain(_))));
        assert_eq!(predicted_max_iterations(unit, 2.0, 2).unwrap(), 0);
    }

    #[test]
    fn iteration_prediction_matches_log_formula_off_boundaries() {
        let eps = f64::EPSILON;
        for &width in &[0.3, 1.7, 3.0, 9.0, 20.0, 123.4] {
            for n in 2..=250 {
                let ratio = (width / eps).ln() / (n as f64).ln();
                if (ratio - ratio.round()).abs() < 1e-9 {
                    continue;
                }
                let interval = Interval::new(0.0, width).unwrap();
                assert_eq!(
                    predicted_max_iterations(interval, eps, n).unwrap(),
                    ratio.ceil() as usize,
                    "width {width}, N {n}"
                );
            }
        }
    }

    #[test]
    fn solve_sqrt8() {
        let p = problem(|x| x * x - 8.0, -5.0, -2.0);
        let r = solve(&p, &SolveOptions::default()).unwrap();
        assert!((r.root - (-2.8284271247461903)).abs() <= 2f64.powi(-51));
        assert_eq!(r.termination, Termination::WidthReached);
        assert_eq!(r.iterations, predicted_max_iterations(p.bracket, f64::EPSILON, 2).unwrap());
        assert_eq!(r.function_evaluations, r.iterations + 2);
    }

    #[test]
    fn solve_identity_exact_zero() {
        let p = problem(|x| x, -1.0, 1.0);
        let r = solve(&p, &SolveOptions::default()).unwrap();
        assert_eq!(r.root, 0.0);
        assert_eq!(r.termination, Termination::ExactZero);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.function_evaluations, 3);
    }

    #[test]
    fn solve_sin_minus_cos_81_sections() {
        let p = problem(|x| x.sin() - x.cos(), 0.0, FRAC_PI_2);
        let r = solve(&p, &SolveOptions::with_sections(81)).unwrap();
        assert!((r.root - FRAC_PI_4).abs() <= 2f64.powi(-51));
        assert_eq!(r.function_evaluations, 80 * r.iterations + 2);
    }

    #[test]
    fn solve_endpoint_root() {
        let p = problem(|x| x - 1.0, 0.0, 1.0);
        let r = solve(&p, &SolveOptions::default()).unwrap();
        assert_eq!(r.root, 1.0);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.function_evaluations, 2);
        assert_eq!(r.termination, Termination::ExactZero);
    }

    #[test]
    fn solve_residual_early_exit() {
        let p = problem(|x| x * x - 8.0, -5.0, -2.0);
        let opts = SolveOptions {
            residual_tolerance: 1e-3,
            ..SolveOptions::with_sections(10)
        };
        let r = solve(&p, &opts).unwrap();
        assert_eq!(r.termination, Termination::ResidualReached);
        assert!(r.residual.abs() <= 1e-3);
        assert!(r.iterations < predicted_max_iterations(p.bracket, f64::EPSILON, 10).unwrap());
    }

    #[test]
    fn solve_max_iterations_is_a_result() {
        let p = problem(|x| x * x - 8.0, -5.0, -2.0);
        let opts = SolveOptions {
            max_iterations: Some(5),
            ..SolveOptions::default()
        };
        let r = solve(&p, &opts).unwrap();
        assert_eq!(r.termination, Termination::MaxIterations);
        assert_eq!(r.iterations, 5);
        assert!(r.final_interval.contains(-8f64.sqrt()));
    }

    #[test]
    fn solve_rejects_one_section() {
        let p = problem(|x| x, -1.0, 1.0);
        let err = solve(&p, &SolveOptions::with_sections(1)).unwrap_err();
        assert!(err.to_string().contains("N >= 2"));
    }

    #[test]
    fn solve_propagates_bad_bracket() {
        let p = problem(|x| x * x - 8.0, 3.0, 5.0);
        assert!(matches!(solve(&p, &SolveOptions::default()), Err(Error::Bracket { .. })));
    }

    #[test]
    fn solve_in_single_precision() {
        let p = Problem::new("f32", |x: f32| x * x - 2.0, Interval::new(0.0_f32, 2.0).unwrap());
        let r = solve(&p, &SolveOptions::default()).unwrap();
        assert!((r.root - std::f32::consts::SQRT_2).abs() <= 2.0 * f32::EPSILON);
        assert_eq!(r.iterations, 24);
    }

    #[test]
    fn reference_root_must_be_inside() {
        let p = problem(|x| x, -1.0, 1.0);
        assert!(p.clone().with_reference_root(2.0).is_err());
        assert_eq!(p.with_reference_root(0.0).unwrap().reference_root, Some(0.0));
    }
}
