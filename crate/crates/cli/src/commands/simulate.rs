use std::path::PathBuf;

use serde::Serialize;
use wedgewave::assemble_dtn;
use wedgewave::evolution::{apriori_bound_check, energy, simulate};

use super::scenario;
use crate::error::CliResult;
use crate::output::{eta_svg, num, write_file, Csv};
use crate::{print_json, Status};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Scenario file; the built-in quarter-plane scenario if omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Trajectory CSV (overrides the config); stdout if neither is set.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// SVG plot of η(r) at the output times (overrides the config).
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Summary {
    states: usize,
    /// `None` when forcing feeds energy into the system.
    max_energy_drift: Option<f64>,
    energy_drift_tol: f64,
    apriori_lhs: f64,
    apriori_rhs: f64,
    apriori_pass: bool,
    pass: bool,
}

const COLUMNS: [&str; 11] = [
    "row", "t", "node_index", "r", "v", "v_t", "eta", "energy", "apriori_lhs", "apriori_rhs", "",
];

pub fn run(args: &Args) -> CliResult<Status> {
    let cfg = scenario(args.config.as_ref())?;
    let geom = cfg.geometry()?;
    let grid = cfg.log_grid()?;
    let sim = cfg.simulation(&grid)?;
    let op = assemble_dtn(&geom, &grid)?;
    let traj = simulate(&op, &sim)?;
    let bound = apriori_bound_check(&op, sim.g, &sim, &traj)?;
    let energies = traj
        .iter()
        .map(|s| energy(&op, sim.g, &s.v, &s.v_t))
        .collect::<Result<Vec<_>, _>>()?;

    let r = grid.r();
    let mut csv = Csv::with_header(&COLUMNS[..10]);
    for ((s, e), lhs) in traj.iter().zip(&energies).zip(&bound.per_state) {
        for (i, &ri) in r.iter().enumerate() {
            csv.row([
                "node".into(),
                num(s.t),
                i.to_string(),
                num(ri),
                num(s.v[i]),
                num(s.v_t[i]),
                num(s.eta[i]),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        csv.row([
            "summary".into(),
            num(s.t),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            num(*e),
            num(*lhs),
            num(bound.rhs),
        ]);
    }

    let max_energy_drift = sim.forcing.is_none().then(|| {
        let e0 = energies[0];
        let scale = if e0 > 0.0 { e0 } else { 1.0 };
        energies.iter().map(|e| (e - e0).abs() / scale).fold(0.0, f64::max)
    });
    let drift_ok = max_energy_drift.is_none_or(|d| d <= cfg.checks.energy_drift_tol);

    match args.csv.as_ref().or(cfg.outputs.csv_path.as_ref()) {
        Some(path) => write_file(path, csv.as_str())?,
        None => print!("{}", csv.as_str()),
    }
    if let Some(path) = args.svg.as_ref().or(cfg.outputs.svg_path.as_ref()) {
        let series: Vec<(f64, Vec<f64>)> = traj.iter().map(|s| (s.t, s.eta.clone())).collect();
        write_file(path, &eta_svg(r, &series))?;
    }

    let summary = Summary {
        states: traj.len(),
        max_energy_drift,
        energy_drift_tol: cfg.checks.energy_drift_tol,
        apriori_lhs: bound.lhs,
        apriori_rhs: bound.rhs,
        apriori_pass: bound.pass,
        pass: drift_ok && bound.pass,
    };
    if args.csv.is_some() || cfg.outputs.csv_path.is_some() {
        print_json(&summary);
    } else {
        eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    }
    Ok(Status::from_bool(summary.pass))
}
