//! Pattern-weighted linear statistics `Σ(f, m, ·)`, their deterministic
//! limits `I(f, m)`, and the experiment harness around them.

mod experiment;
mod integral;
mod statistic;
mod studies;
mod testfn;

pub use experiment::{
    mean_variance, replica_seed, run_bernoulli_field, run_lln_experiment, run_lln_experiment_tol, schur_window_len, ExperimentResult, LlnSpec,
    DEFAULT_INTEGRAL_TOL,
};
pub use integral::{limit_integral_pp, limit_integral_schur};
pub use statistic::{
    empirical_statistic_pp, empirical_statistic_schur, empirical_statistic_schur_with_range, pp_window_bounds,
    schur_sum_range, schur_window,
};
pub use studies::{
    convergence_study, decorrelation_study, loglog_slope, pp_base, round_half_down, schur_base, ConvergenceRow,
    ConvergenceTable, DecorrelationRow, DecorrelationTable, StudyModel,
};
pub use testfn::TestFunction;

/// Sum in a fixed binary-tree order, independent of thread scheduling.
pub fn pairwise_sum_real(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n if n <= 8 => v.iter().sum(),
        n => pairwise_sum_real(&v[..n / 2]) + pairwise_sum_real(&v[n / 2..]),
    }
}
