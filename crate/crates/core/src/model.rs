//! Wall-clock cost model for the N-section method.
//!
//! A loop over `N` sections is assumed to cost `m N + c`, and a solve runs
//! `ln((b - a) / mu) / ln N` loops (kept continuous here; the solver owns
//! the integer reality). The total time
//!
//! ```text
//! T_t(N) = (m N + c) ln((b - a) / mu) / ln N
//! ```
//!
//! is minimised where `N ln N = N + R` with `R = c / m`, whose solution is
//! `N_min = R / W(R / e)`.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::lambert::lambert_w0;
use crate::scalar::Scalar;

/// Per-loop cost `m N + c`, both terms in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel<T> {
    pub m: T,
    pub c: T,
}

impl<T: Scalar> CostModel<T> {
    pub fn new(m: T, c: T) -> Result<Self> {
        let cost = CostModel { m, c };
        cost.check()?;
        Ok(cost)
    }

    fn check(&self) -> Result<()> {
        if !(self.m > T::zero() && self.m.is_finite() && self.c > T::zero() && self.c.is_finite()) {
            return Err(Error::Domain(format!(
                "cost model needs m > 0 and c > 0, got m = {}, c = {}",
                self.m, self.c
            )));
        }
        Ok(())
    }

    /// `R = c / m`.
    pub fn ratio(&self) -> T {
        self.c / self.m
    }

    pub fn loop_time(&self, sections: usize) -> T {
        self.m * T::from_count(sections) + self.c
    }
}

/// Bracket width and absolute stopping width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemScale<T> {
    pub width: T,
    pub mu: T,
}

impl<T: Scalar> ProblemScale<T> {
    pub fn new(width: T, mu: T) -> Result<Self> {
        let scale = ProblemScale { width, mu };
        scale.log_ratio()?;
        Ok(scale)
    }

    /// Scale with `mu` at machine epsilon.
    pub fn with_width(width: T) -> Result<Self> {
        Self::new(width, T::epsilon())
    }

    /// `ln(width / mu)`.
    pub fn log_ratio(&self) -> Result<T> {
        if !(self.mu > T::zero() && self.width > self.mu && self.width.is_finite()) {
            return Err(Error::Domain(format!(
                "problem scale needs width > mu > 0, got width = {}, mu = {}",
                self.width, self.mu
            )));
        }
        Ok((self.width / self.mu).ln())
    }
}

fn check_sections(sections: usize) -> Result<()> {
    if sections < 2 {
        return Err(Error::Domain(format!(
            "sections must satisfy N >= 2, got {sections}"
        )));
    }
    Ok(())
}

fn check_ratio<T: Scalar>(ratio: T) -> Result<()> {
    if !(ratio > T::zero() && ratio.is_finite()) {
        return Err(Error::Domain(format!("R = c/m must be positive, got {ratio}")));
    }
    Ok(())
}

/// `T_f(N) = (N - 1) ln(width / mu) / ln N`.
pub fn total_function_evals<T: Scalar>(sections: usize, scale: &ProblemScale<T>) -> Result<T> {
    check_sections(sections)?;
    let n = T::from_count(sections);
    Ok((n - T::one()) * scale.log_ratio()? / n.ln())
}

/// `T_t(N) = (m N + c) ln(width / mu) / ln N`.
pub fn total_time<T: Scalar>(
    sections: usize,
    cost: &CostModel<T>,
    scale: &ProblemScale<T>,
) -> Result<T> {
    check_sections(sections)?;
    cost.check()?;
    let n = T::from_count(sections);
    Ok(cost.loop_time(sections) * scale.log_ratio()? / n.ln())
}

/// Real-valued minimiser `R / W(R / e)` of `T_t`. Tends to `e` as `R -> 0`.
pub fn n_min_real<T: Scalar>(ratio: T) -> Result<T> {
    check_ratio(ratio)?;
    let x = ratio / T::E();
    let w = lambert_w0(x)?;
    if x < T::epsilon() {
        // Same value through e^W = x / W; stays accurate when x is subnormal.
        return Ok(T::E() * w.exp());
    }
    Ok(ratio / w)
}

/// `T_t` up to the positive factor `m ln(width / mu)`, which does not move
/// the argmin.
fn shape<T: Scalar>(sections: usize, ratio: T) -> T {
    let n = T::from_count(sections);
    (n + ratio) / n.ln()
}

/// Integer section count minimising `T_t`: the better of `floor` and `ceil`
/// of [`n_min_real`], both clamped to at least 2, ties going to the smaller.
///
/// Only `R` matters; `m`, `width` and `mu` scale `T_t` uniformly.
pub fn n_min_integer<T: Scalar>(ratio: T) -> Result<usize> {
    let real = n_min_real(ratio)?;
    let floor = real.floor().to_usize().unwrap_or(usize::MAX).max(2);
    let ceil = real.ceil().to_usize().unwrap_or(usize::MAX).max(2);
    if shape(ceil, ratio) < shape(floor, ratio) {
        Ok(ceil)
    } else {
        Ok(floor)
    }
}

/// `T_t(N_min) / T_t(2)` at the real-valued `N_min`:
///
/// ```text
/// RelEff = (R ln 2 / (2 + R)) ((N_min + R) / (R ln N_min))
/// ```
pub fn rel_eff<T: Scalar>(ratio: T) -> Result<T> {
    let n = n_min_real(ratio)?;
    // The R in the numerator and denominator cancels.
    Ok(T::LN_2() * (n + ratio) / ((T::lit(2.0) + ratio) * n.ln()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyReport<T> {
    /// `R = c / m`.
    pub ratio: T,
    pub n_min_real: T,
    /// Clamped into the report's N range.
    pub n_min_integer: usize,
    pub rel_eff: T,
    /// `T_t(n_min_integer) / T_t(2)`.
    pub integer_ratio: T,
    pub t_t_at_2: T,
    pub t_t_at_min: T,
    /// `(N, T_t(N))` over the requested range.
    pub curve: Vec<(usize, T)>,
}

pub fn efficiency_report<T: Scalar>(
    cost: &CostModel<T>,
    scale: &ProblemScale<T>,
    n_range: RangeInclusive<usize>,
) -> Result<EfficiencyReport<T>> {
    let (first, last) = (*n_range.start(), *n_range.end());
    if first != 2 || last < first {
        return Err(Error::Range(format!(
            "N range must start at 2 and be non-empty, got {first}..={last}"
        )));
    }
    cost.check()?;
    scale.log_ratio()?;

    let ratio = cost.ratio();
    let n_min_real = n_min_real(ratio)?;
    let n_min_integer = n_min_integer(ratio)?.clamp(first, last);
    let curve = n_range
        .map(|n| total_time(n, cost, scale).map(|t| (n, t)))
        .collect::<Result<Vec<_>>>()?;
    let t_t_at_2 = total_time(2, cost, scale)?;
    let t_t_at_min = total_time(n_min_integer, cost, scale)?;

    Ok(EfficiencyReport {
        ratio,
        n_min_real,
        n_min_integer,
        rel_eff: rel_eff(ratio)?,
        integer_ratio: t_t_at_min / t_t_at_2,
        t_t_at_2,
        t_t_at_min,
        curve,
    })
}
