//! Manufactured-solution refinement studies with the cosine-mode family.

use serde::{Deserialize, Serialize};

use super::{normal_derivative_on_gamma1, solve_mixed_bvp, ArcBc, HarmonicField, LogRadialGrid};
use crate::error::{Error, Result};
use crate::geometry::WedgeGeometry;
use crate::modes::{cosine_mode_eval, exact_dtn_of_cosine_mode};

/// `w = r^μ cos(μ(α - θ))` on `[r_min, r_max]`, with exact arc data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManufacturedCase {
    pub mu: f64,
    pub alpha: f64,
    #[serde(default = "default_r_min")]
    pub r_min: f64,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
}

fn default_r_min() -> f64 {
    0.1
}

fn default_r_max() -> f64 {
    10.0
}

impl ManufacturedCase {
    pub fn new(mu: f64, alpha: f64) -> Self {
        Self {
            mu,
            alpha,
            r_min: default_r_min(),
            r_max: default_r_max(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceLevel {
    pub n_r: usize,
    pub n_theta: usize,
    /// Radial spacing `dρ`; `dθ` shrinks by the same factor up to rounding.
    pub h: f64,
    /// Max-node error of the solved field.
    pub interior_error: f64,
    /// Max error of the `Γ1` flux against `-μ sin(μα) r^{μ-1}`.
    pub flux_error: f64,
}

pub fn manufactured_level(case: &ManufacturedCase, n_r: usize, n_theta: usize) -> Result<ConvergenceLevel> {
    let geom = WedgeGeometry::new(case.alpha)?;
    let grid = LogRadialGrid::new(case.r_min, case.r_max, n_r, n_theta, case.alpha)?;
    let (mu, alpha) = (case.mu, case.alpha);
    let exact = HarmonicField::from_fn(&grid, |r, t| cosine_mode_eval(mu, alpha, r, t));
    let inner = (0..n_theta).map(|j| exact.get(0, j)).collect();
    let outer = (0..n_theta).map(|j| exact.get(n_r - 1, j)).collect();
    let u = solve_mixed_bvp(&geom, &grid, &exact.trace(), &ArcBc::ExactDirichlet { inner, outer })?;
    let interior_error = max_abs_diff(u.values(), exact.values());
    let flux = normal_derivative_on_gamma1(&u)?;
    let flux_exact: Vec<f64> = grid.r().iter().map(|&r| exact_dtn_of_cosine_mode(mu, alpha, r).1).collect();
    Ok(ConvergenceLevel {
        n_r,
        n_theta,
        h: grid.d_rho(),
        interior_error,
        flux_error: max_abs_diff(&flux, &flux_exact),
    })
}

/// Runs `n_levels` levels, doubling both node counts each time.
pub fn refinement_study(case: &ManufacturedCase, n_r: usize, n_theta: usize, n_levels: usize) -> Result<Vec<ConvergenceLevel>> {
    if n_levels < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 levels, got {n_levels}")));
    }
    (0..n_levels)
        .map(|k| manufactured_level(case, n_r << k, n_theta << k))
        .collect()
}

/// `(interior, flux)` orders between consecutive levels.
pub fn observed_orders(coarse: &ConvergenceLevel, fine: &ConvergenceLevel) -> (f64, f64) {
    let ratio = (coarse.h / fine.h).ln();
    (
        (coarse.interior_error / fine.interior_error).ln() / ratio,
        (coarse.flux_error / fine.flux_error).ln() / ratio,
    )
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
