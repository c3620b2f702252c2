//! Principal branch of the Lambert W function on `x >= 0`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_ITERATIONS: usize = 50;

/// Above this the product `w e^w` is formed in log space to avoid overflow.
const LOG_SPACE_THRESHOLD: f64 = 1e20;

fn step_tolerance<T: Scalar>() -> T {
    T::lit(1e-15).max(T::lit(2.0) * T::epsilon())
}

/// `W(x)` for `x >= 0`: the unique `w >= 0` with `w e^w = x`.
///
/// Starts from `ln(1 + x)` and refines with Halley's method until the step
/// falls below `1e-15 * (1 + |w|)` (or two ulps in single precision).
pub fn lambert_w0<T: Scalar>(x: T) -> Result<T> {
    if x.is_nan() || x < T::zero() {
        return Err(Error::Domain(format!(
            "Lambert W0 is evaluated on x >= 0 only, got {x}"
        )));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    if x.is_infinite() {
        return Ok(x);
    }

    let tol = step_tolerance::<T>();
    let one = T::one();
    let two = T::lit(2.0);
    let mut w = x.ln_1p();

    if x > T::lit(LOG_SPACE_THRESHOLD) {
        // Newton on g(w) = w + ln w - ln x.
        let log_x = x.ln();
        for _ in 0..MAX_ITERATIONS {
            let g = w + w.ln() - log_x;
            let step = g * w / (w + one);
            w = w - step;
            if step.abs() <= tol * (one + w.abs()) {
                return Ok(w);
            }
        }
    } else {
        for _ in 0..MAX_ITERATIONS {
            let ew = w.exp();
            let residual = w * ew - x;
            let w1 = w + one;
            let step = residual / (ew * w1 - (w + two) * residual / (two * w1));
            w = w - step;
            if step.abs() <= tol * (one + w.abs()) {
                return Ok(w);
            }
        }
    }

    Err(Error::Convergence {
        x: x.as_f64(),
        iterations: MAX_ITERATIONS,
    })
}

/// Relative residual of `e^{W(x)} = x / W(x)`.
pub fn check_w_identity<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!(
            "identity check needs x > 0, got {x}"
        )));
    }
    let w = lambert_w0(x)?;
    let rhs = x / w;
    Ok((w.exp() - rhs).abs() / rhs)
}
