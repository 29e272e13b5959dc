//! Batch front end: TOML run descriptions, subcommand dispatch and
//! machine-readable outputs.
//!
//! Every output opens with the version stamp and the full config echo, as
//! `#` lines in text files and as `version`/`config` keys in JSON.

mod config;
mod dispatch;

pub use config::{
    parse_config, parse_config_raw, ComplexValue, GConfig, ModelName, RunConfig, SiteValue, Subcommand, Tolerances,
};
pub use dispatch::{
    dispatch, exit_code, lln_tolerance, num, version_stamp, Outcome, DEFAULT_MAX_WEIGHT_PLANCHEREL, DEFAULT_MAX_WEIGHT_PP,
};

/// Environment variable overriding the worker-thread count.
pub const THREADS_ENV: &str = "DPPLIMITS_THREADS";

/// Sizes the global worker pool from `DPPLIMITS_THREADS` when set.
pub fn init_threads() -> crate::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| crate::Error::Usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(crate::Error::Usage(format!("{THREADS_ENV} must be positive")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| crate::Error::Usage(e.to_string()))?;
    }
    Ok(())
}
