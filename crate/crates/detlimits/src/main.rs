use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use detlimits::cli::{dispatch, exit_code, init_threads, parse_config_raw, ModelName, RunConfig, SiteValue, Subcommand};
use detlimits::{Error, Result};

/// Correlation kernels, exact samplers and law-of-large-numbers experiments
/// for Schur measures and random plane partitions.
///
/// Keys come from the TOML file given by --config; flags override them.
#[derive(Parser, Debug)]
#[command(name = "detlimits", version)]
struct Args {
    #[arg(value_enum)]
    subcommand: Subcommand,
    /// TOML run description.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelName>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<f64>,
    /// `a,b` on ℤ or `t_min,t_max,h_min,h_max` on ℤ × ½ℤ.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
    /// Comma-separated sites: integers or `t:h`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pattern: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    sites: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    scales: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    position: Option<Vec<f64>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    replicas: Option<usize>,
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    stream: Option<u64>,
    /// Output stem; extensions are appended. Stdout when omitted.
    #[arg(long)]
    output: Option<String>,
}

fn site_values(v: Vec<String>) -> Vec<SiteValue> {
    v.into_iter()
        .map(|s| match s.trim().parse::<i64>() {
            Ok(i) => SiteValue::Int(i),
            Err(_) => SiteValue::Text(s),
        })
        .collect()
}

fn build_config(args: Args) -> Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => parse_config_raw(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    match cfg.subcommand {
        Some(s) if s != args.subcommand => {
            return Err(Error::Usage(format!("config is for `{}`, command line asks for `{}`", s.name(), args.subcommand.name())))
        }
        _ => cfg.subcommand = Some(args.subcommand),
    }
    macro_rules! set {
        ($($f:ident),*) => { $( if args.$f.is_some() { cfg.$f = args.$f; } )* };
    }
    set!(model, theta, alpha, q, r, u, tau, chi, window, scales, position, samples, replicas, steps, max_weight, seed, output);
    if let Some(s) = args.stream {
        cfg.stream = s;
    }
    if let Some(p) = args.pattern {
        cfg.pattern = Some(site_values(p));
    }
    if let Some(p) = args.sites {
        cfg.sites = Some(site_values(p));
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let result = init_threads().and_then(|_| build_config(args)).and_then(|cfg| dispatch(&cfg));
    if let Err(e) = &result {
        eprintln!("detlimits: {e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
