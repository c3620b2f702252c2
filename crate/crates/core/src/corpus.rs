//! The six benchmark equations, compiled in as named builtins.

use crate::scalar::Scalar;
use crate::solver::{Interval, Problem};

/// Root of `e^x - 2 - x` on `[1, 4]`, i.e. `-2 - W_{-1}(-e^{-2})`,
/// evaluated at 40 significant digits and rounded to binary64.
pub const EXP_MINUS_TWO_MINUS_X_ROOT: f64 = 1.1461932206205825;

/// `e^{7/2}` rounded to binary64.
pub const LN_X_SQUARED_ROOT: f64 = 33.11545195869231;

pub fn sin_minus_cos<T: Scalar>(x: T) -> T {
    x.sin() - x.cos()
}

pub fn exp_minus_two_minus_x<T: Scalar>(x: T) -> T {
    x.exp() - T::lit(2.0) - x
}

pub fn square_minus_eight<T: Scalar>(x: T) -> T {
    x * x - T::lit(8.0)
}

pub fn shifted_reciprocal<T: Scalar>(x: T) -> T {
    T::one() / (T::lit(10.0) - x) - T::lit(0.25)
}

pub fn damped_sine<T: Scalar>(x: T) -> T {
    (-x).exp() * x.sin()
}

pub fn log_square_minus_seven<T: Scalar>(x: T) -> T {
    (x * x).ln() - T::lit(7.0)
}

/// Named builtins by id, for callers that select a function by name.
pub fn builtin<T: Scalar>(name: &str) -> Option<fn(T) -> T> {
    let f: fn(T) -> T = match name {
        "sin-cos" => sin_minus_cos,
        "exp-2-x" => exp_minus_two_minus_x,
        "square-8" => square_minus_eight,
        "reciprocal" => shifted_reciprocal,
        "damped-sine" => damped_sine,
        "log-square-7" => log_square_minus_seven,
        "identity" => |x| x,
        _ => return None,
    };
    Some(f)
}

pub const BUILTIN_NAMES: [&str; 7] = [
    "sin-cos",
    "exp-2-x",
    "square-8",
    "reciprocal",
    "damped-sine",
    "log-square-7",
    "identity",
];

/// Human-readable formula for each corpus entry, in corpus order.
pub const FORMULAS: [&str; 6] = [
    "sin x - cos x",
    "e^x - 2 - x",
    "x^2 - 8",
    "1/(10 - x) - 1/4",
    "e^-x sin x",
    "ln(x^2) - 7",
];

/// The benchmark problems with their brackets and reference roots.
pub fn corpus<T: Scalar>() -> Vec<Problem<T>> {
    let entry = |id: &str, f: fn(T) -> T, lo: f64, hi: f64, root: f64| {
        let bracket = Interval::new(T::lit(lo), T::lit(hi)).expect("corpus bracket");
        Problem::new(id, f, bracket)
            .with_reference_root(T::lit(root))
            .expect("corpus root inside bracket")
    };
    vec![
        entry(
            "sin-cos",
            sin_minus_cos,
            0.0,
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_4,
        ),
        entry("exp-2-x", exp_minus_two_minus_x, 1.0, 4.0, EXP_MINUS_TWO_MINUS_X_ROOT),
        entry("square-8", square_minus_eight, -5.0, -2.0, -2.0 * std::f64::consts::SQRT_2),
        entry("reciprocal", shifted_reciprocal, -2.0, 7.0, 6.0),
        entry("damped-sine", damped_sine, -8.0, -5.0, -std::f64::consts::TAU),
        entry("log-square-7", log_square_minus_seven, 20.0, 40.0, LN_X_SQUARED_ROOT),
    ]
}
