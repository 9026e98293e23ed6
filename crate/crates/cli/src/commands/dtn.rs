use std::path::PathBuf;

use serde::Serialize;
use wedgewave::oracles::gaussian_bump;
use wedgewave::{assemble_dtn, dirichlet_energy, solve_mixed_bvp, ArcBc};

use super::scenario;
use crate::error::{CliError, CliResult};
use crate::output::{num, write_file, Csv};
use crate::{print_json, Status};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Scenario file; the built-in quarter-plane scenario if omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory for the matrix and eigenvalue dumps (overrides the config).
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Report {
    alpha: f64,
    r_min: f64,
    r_max: f64,
    n_r: usize,
    n_theta: usize,
    asymmetry: f64,
    max_asymmetry: f64,
    lambda_min: f64,
    lambda_max: f64,
    unclamped_lambda_min: f64,
    clamped_eigenvalues: usize,
    bump_center: f64,
    bump_width: f64,
    green_identity_rel_error: f64,
    pass: bool,
}

pub fn run(args: &Args) -> CliResult<Status> {
    let cfg = scenario(args.config.as_ref())?;
    let geom = cfg.geometry()?;
    let grid = cfg.log_grid()?;
    let op = assemble_dtn(&geom, &grid)?;

    // bump centred on the geometric middle of the radial range
    let center = (grid.r_min() * grid.r_max()).sqrt();
    let width = 0.5 * center;
    let f = gaussian_bump(&grid, center, width, 1.0)?;
    let u = solve_mixed_bvp(&geom, &grid, &f, &ArcBc::RobinAsymptotic)?;
    let energy = dirichlet_energy(&u);
    let green = (op.quadratic_form(&f)? - energy).abs() / energy;

    if let Some(dir) = args.dump.as_ref().or(cfg.outputs.dump_operator.as_ref()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.clone(),
            source,
        })?;
        let mut matrix = Csv::default();
        for row in op.matrix().row_iter() {
            matrix.row(row.iter().map(|&x| num(x)));
        }
        write_file(&dir.join("dtn_matrix.csv"), matrix.as_str())?;
        let mut eig = Csv::with_header(&["k", "eigenvalue"]);
        for (k, &l) in op.eigenvalues().iter().enumerate() {
            eig.row([k.to_string(), num(l)]);
        }
        write_file(&dir.join("dtn_eigenvalues.csv"), eig.as_str())?;
    }

    let pass = op.asymmetry() <= cfg.checks.max_asymmetry && op.eigenvalues().iter().all(|&l| l >= 0.0);
    print_json(&Report {
        alpha: cfg.alpha,
        r_min: grid.r_min(),
        r_max: grid.r_max(),
        n_r: grid.n_r(),
        n_theta: grid.n_theta(),
        asymmetry: op.asymmetry(),
        max_asymmetry: cfg.checks.max_asymmetry,
        lambda_min: op.eigenvalues()[0],
        lambda_max: op.lambda_max(),
        unclamped_lambda_min: op.unclamped_min_eigenvalue(),
        clamped_eigenvalues: op.clamped().len(),
        bump_center: center,
        bump_width: width,
        green_identity_rel_error: green,
        pass,
    });
    Ok(Status::from_bool(pass))
}
