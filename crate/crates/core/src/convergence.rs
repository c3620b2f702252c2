//! Error-bound sequence of the N-section method.
//!
//! After `i` iterations the approximation `p_i` satisfies
//! `|p_i - p| <= B_i = (b - a) / N^i`, and `B_{i+1} = B_i / N <= B_i / 2`,
//! so the bound converges linearly even where the error ratio
//! `|p_{i+1} - p| / |p_i - p|` does not. In floating point `B_i` reaches
//! exactly zero after finitely many divisions.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::solver::{solve, Problem, SolveOptions};

/// Published root of a bisection counterexample whose error ratio never
/// settles into monotone decrease. Documentation only; the defining
/// function is not available, so nothing is computed from it.
pub const COUNTEREXAMPLE_ROOT: f64 = 0.564468413605939;

/// Underflow exponent reported for halving on the original experimental
/// platform, kept for side-by-side display with the host value.
pub const REPORTED_UNDERFLOW_EXPONENT: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSequence<T> {
    initial_width: T,
    base: usize,
}

impl<T: Scalar> BoundSequence<T> {
    pub fn new(initial_width: T, base: usize) -> Result<Self> {
        if !(initial_width > T::zero() && initial_width.is_finite()) {
            return Err(Error::Domain(format!(
                "initial width must be positive and finite, got {initial_width}"
            )));
        }
        if base < 2 {
            return Err(Error::Domain(format!("base must satisfy N >= 2, got {base}")));
        }
        Ok(BoundSequence { initial_width, base })
    }

    pub fn initial_width(&self) -> T {
        self.initial_width
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// `B_0, B_1, ...`, each the previous divided by `N` in working
    /// precision. Infinite; settles at zero.
    pub fn iter(&self) -> impl Iterator<Item = T> {
        let n = T::from_count(self.base);
        std::iter::successors(Some(self.initial_width), move |&b| Some(b / n))
    }
}

/// `B_i` by `i` successive divisions, matching the solver's arithmetic.
pub fn bound_at<T: Scalar>(seq: &BoundSequence<T>, i: usize) -> T {
    let n = T::from_count(seq.base);
    let mut bound = seq.initial_width;
    for _ in 0..i {
        if bound == T::zero() {
            break;
        }
        bound = bound / n;
    }
    bound
}

/// Smallest `i` with `B_i <= eps`, for `0 < eps <= b - a`.
pub fn first_index_below<T: Scalar>(seq: &BoundSequence<T>, eps: T) -> Result<usize> {
    if !(eps > T::zero() && eps <= seq.initial_width) {
        return Err(Error::Domain(format!(
            "eps must lie in (0, {}], got {eps}",
            seq.initial_width
        )));
    }
    Ok(seq
        .iter()
        .position(|b| b <= eps)
        .expect("bound sequence reaches zero"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnderflowMode {
    /// IEEE 754 gradual underflow through the subnormal range.
    Gradual,
    /// Any subnormal result is replaced by zero.
    FlushToZero,
}

/// Number of halvings that take `width` to exactly zero, with subnormals.
pub fn underflow_exponent<T: Scalar>(width: T) -> Result<usize> {
    underflow_exponent_with(width, UnderflowMode::Gradual)
}

pub fn underflow_exponent_with<T: Scalar>(width: T, mode: UnderflowMode) -> Result<usize> {
    if !(width > T::zero() && width.is_finite()) {
        return Err(Error::Domain(format!(
            "width must be positive and finite, got {width}"
        )));
    }
    let two = T::lit(2.0);
    let mut value = width;
    let mut halvings = 0;
    while value != T::zero() {
        value = value / two;
        if mode == UnderflowMode::FlushToZero && value < T::min_positive_value() {
            value = T::zero();
        }
        halvings += 1;
    }
    Ok(halvings)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck<T> {
    pub iteration: usize,
    pub approximation: T,
    pub error: T,
    pub bound: T,
}

impl<T: Scalar> BoundCheck<T> {
    pub fn margin(&self) -> T {
        self.bound - self.error
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub problem_id: String,
    pub sections: usize,
    pub checks: Vec<BoundCheck<T>>,
}

/// Solves `problem` with `sections` and checks `|p_i - p| <= B_i` at every
/// iteration, where `p_i` is the exact-zero node when one was hit and the
/// midpoint of the retained subinterval otherwise.
pub fn verify_error_bounds<T: Scalar>(problem: &Problem<T>, sections: usize) -> Result<BoundReport<T>> {
    let root = problem.reference_root.ok_or_else(|| {
        Error::Domain(format!("problem {} has no reference root", problem.id))
    })?;
    let result = solve(problem, &SolveOptions::with_sections(sections))?;
    let seq = BoundSequence::new(problem.bracket.width(), sections)?;

    let mut bounds = seq.iter().skip(1);
    let mut checks = Vec::with_capacity(result.trace.len());
    for record in &result.trace {
        let bound = bounds.next().expect("infinite sequence");
        let approximation = record
            .exact_root
            .unwrap_or_else(|| record.chosen_subinterval.midpoint());
        let error = (approximation - root).abs();
        if error > bound {
            return Err(Error::BoundViolation {
                iteration: record.index,
                error: error.as_f64(),
                bound: bound.as_f64(),
            });
        }
        checks.push(BoundCheck {
            iteration: record.index,
            approximation,
            error,
            bound,
        });
    }
    Ok(BoundReport {
        problem_id: problem.id.clone(),
        sections,
        checks,
    })
}
