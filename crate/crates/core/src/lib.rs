//! Multisection (N-section) root finding, together with a wall-clock cost
//! model that predicts the section count minimising total solve time.
//!
//! The numerical core is generic over the floating-point type through
//! [`Scalar`]; the `*64` / `*32` aliases below pin the common choices.
//!
//! ```
//! use multisection::{corpus, solve, SolveOptions};
//!
//! let problems = corpus::<f64>();
//! let result = solve(&problems[0], &SolveOptions::with_sections(4)).unwrap();
//! assert!((result.root - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
//! ```

pub mod bench;
pub mod convergence;
pub mod corpus;
mod error;
pub mod lambert;
pub mod model;
mod scalar;
pub mod solver;

pub use crate::bench::{
    calibrate, calibrate_from_samples, fit_linear, measure_loop_time, measure_solve_time,
    read_sweep_csv, sweep, write_sweep_csv, Calibration,
    Clock, LinearFit, MonotonicClock, SweepConfig, SweepCsvWriter, SyntheticClock, TimingSample, SWEEP_CSV_HEADER,
};
pub use crate::convergence::{
    bound_at, first_index_below, underflow_exponent, underflow_exponent_with, verify_error_bounds,
    BoundReport, BoundSequence, UnderflowMode,
};
pub use crate::corpus::corpus;
pub use crate::error::{Error, Result};
pub use crate::lambert::{check_w_identity, lambert_w0};
pub use crate::model::{
    efficiency_report, n_min_integer, n_min_real, rel_eff, total_function_evals, total_time,
    CostModel, EfficiencyReport, ProblemScale,
};
pub use crate::scalar::Scalar;
pub use crate::solver::{
    multisect_step, predicted_max_iterations, solve, validate_bracket, Interval, IterationRecord,
    Problem, Sign, SolveOptions, SolveResult, Termination,
};

pub type Interval64 = Interval<f64>;
pub type Problem64 = Problem<f64>;
pub type SolveOptions64 = SolveOptions<f64>;
pub type SolveResult64 = SolveResult<f64>;
pub type CostModel64 = CostModel<f64>;
pub type ProblemScale64 = ProblemScale<f64>;
pub type EfficiencyReport64 = EfficiencyReport<f64>;
pub type BoundSequence64 = BoundSequence<f64>;

pub type Interval32 = Interval<f32>;
pub type Problem32 = Problem<f32>;
pub type SolveOptions32 = SolveOptions<f32>;
pub type SolveResult32 = SolveResult<f32>;
pub type CostModel32 = CostModel<f32>;
pub type ProblemScale32 = ProblemScale<f32>;
pub type EfficiencyReport32 = EfficiencyReport<f32>;
pub type BoundSequence32 = BoundSequence<f32>;
