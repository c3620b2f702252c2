use thiserror::Error;

pub type Result<V> = std::result::Result<V, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid interval [{lo}, {hi}]: endpoints must be finite with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid solve options: {0}")]
    InvalidOptions(String),

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("function evaluated to NaN at x = {x}")]
    Evaluation { x: f64 },

    #[error("sign change lost on [{lo}, {hi}] (interval at precision floor)")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("Lambert W iteration did not converge for x = {x} after {iterations} iterations")]
    Convergence { x: f64, iterations: usize },

    #[error("range error: {0}")]
    Range(String),

    #[error("degenerate fit input: {0}")]
    Degenerate(String),

    #[error("unusable calibration: fitted m = {m}, c = {c} (both must be positive)")]
    Fit { m: f64, c: f64 },

    #[error("clock resolution {resolution} s exceeds 1% of measured total {total} s")]
    Clock { resolution: f64, total: f64 },

    #[error(
        "error bound violated at iteration {iteration}: |p_i - p| = {error} > B_i = {bound}"
    )]
    BoundViolation { iteration: usize, error: f64, bound: f64 },

    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}
