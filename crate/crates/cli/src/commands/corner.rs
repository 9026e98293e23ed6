use std::path::PathBuf;

use wedgewave::corner::{corner_check, m0_samples, Verdict};

use crate::error::{CliError, CliResult};
use crate::output::{num, write_file, Csv};
use crate::{print_json, Status};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Wedge angle in radians, in (0, π].
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Sobolev exponent.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, default_value_t = 50.0)]
    pub tau_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub n_samples: usize,
    /// Where to write the (τ, |M0|) samples.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub fn run(args: &Args) -> CliResult<Status> {
    let report = corner_check(args.alpha, args.s, args.tau_max, args.n_samples).map_err(CliError::from_validation)?;
    if let Some(path) = &args.csv {
        let mut csv = Csv::with_header(&["tau", "abs_m0"]);
        for (tau, m) in m0_samples(args.alpha, args.s, args.tau_max, args.n_samples)? {
            csv.row([num(tau), num(m)]);
        }
        write_file(path, csv.as_str())?;
    }
    print_json(&report);
    Ok(Status::from_bool(report.verdict == Verdict::Pass))
}
