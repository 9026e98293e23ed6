use std::f64::consts::PI;
use std::path::PathBuf;

use wedgewave::laplace::convergence::{observed_orders, refinement_study, ManufacturedCase};

use crate::config::{ScenarioConfig, MAX_NODES};
use crate::error::{CliError, CliResult};
use crate::output::{num, write_file, Csv};
use crate::Status;

pub const MIN_INTERIOR_ORDER: f64 = 1.9;
pub const MIN_FLUX_ORDER: f64 = 1.8;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Scenario file supplying the wedge angle and the coarsest grid.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    /// Exponent of the manufactured mode; with no `--mu` the three standard
    /// cases (1, π/3), (0.8, π/2), (1.7, 3π/4) are run.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Wedge angle for `--mu` when no config is given.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

const COLUMNS: [&str; 10] = [
    "mu", "alpha", "level", "n_r", "n_theta", "h", "interior_error", "flux_error", "interior_order", "flux_order",
];

pub fn run(args: &Args) -> CliResult<Status> {
    if args.levels < 2 {
        return Err(CliError::Usage(format!("--levels must be at least 2, got {}", args.levels)));
    }
    let (mut n_r, mut n_theta, mut r_min, mut r_max) = (48, 24, 0.1, 10.0);
    let mut cfg_alpha = None;
    if let Some(path) = &args.config {
        let cfg = ScenarioConfig::load(path)?;
        (n_r, n_theta, r_min, r_max) = (cfg.grid.n_r, cfg.grid.n_theta, cfg.grid.r_min, cfg.grid.r_max);
        cfg_alpha = Some(cfg.alpha);
    }
    let finest = (n_r << (args.levels - 1)).saturating_mul(n_theta << (args.levels - 1));
    if args.levels > 8 || finest > MAX_NODES {
        return Err(CliError::Usage(format!("finest level would exceed {MAX_NODES} nodes")));
    }
    let cases: Vec<(f64, f64)> = match (args.mu, args.alpha.or(cfg_alpha)) {
        (Some(mu), Some(alpha)) => vec![(mu, alpha)],
        (Some(_), None) => return Err(CliError::Usage("--mu needs --alpha or --config".into())),
        (None, Some(alpha)) => vec![(1.0, alpha)],
        (None, None) => vec![(1.0, PI / 3.0), (0.8, PI / 2.0), (1.7, 3.0 * PI / 4.0)],
    };

    let mut csv = Csv::with_header(&COLUMNS);
    let mut pass = true;
    for (mu, alpha) in cases {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(CliError::Usage(format!("mu must be positive, got {mu}")));
        }
        let case = ManufacturedCase { mu, alpha, r_min, r_max };
        let levels = refinement_study(&case, n_r, n_theta, args.levels).map_err(|e| match e {
            wedgewave::Error::InvalidInput(_) | wedgewave::Error::Domain(_) => CliError::from_validation(e),
            other => CliError::Numerical(other),
        })?;
        for (k, level) in levels.iter().enumerate() {
            let (oi, of) = if k == 0 {
                (String::new(), String::new())
            } else {
                let (oi, of) = observed_orders(&levels[k - 1], level);
                (num(oi), num(of))
            };
            csv.row([
                num(mu),
                num(alpha),
                k.to_string(),
                level.n_r.to_string(),
                level.n_theta.to_string(),
                num(level.h),
                num(level.interior_error),
                num(level.flux_error),
                oi,
                of,
            ]);
        }
        let (oi, of) = observed_orders(&levels[levels.len() - 2], &levels[levels.len() - 1]);
        pass &= oi >= MIN_INTERIOR_ORDER && of >= MIN_FLUX_ORDER;
    }
    match &args.csv {
        Some(path) => write_file(path, csv.as_str())?,
        None => print!("{}", csv.as_str()),
    }
    Ok(Status::from_bool(pass))
}
