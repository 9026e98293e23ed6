use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_NODES: usize = 8;

/// Truncated sector `r_min ≤ r ≤ r_max`, `0 ≤ θ ≤ α`, mapped to a rectangle by
/// `ρ = ln r` and discretized uniformly in both `ρ` and `θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRadialGrid {
    r_min: f64,
    r_max: f64,
    alpha: f64,
    n_r: usize,
    n_theta: usize,
    d_rho: f64,
    d_theta: f64,
    rho: Vec<f64>,
    r: Vec<f64>,
    surface_weights: Vec<f64>,
}

impl LogRadialGrid {
    pub fn new(r_min: f64, r_max: f64, n_r: usize, n_theta: usize, alpha: f64) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite() && r_min > 0.0 && r_max > r_min) {
            return Err(Error::InvalidInput(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n_r < MIN_NODES || n_theta < MIN_NODES {
            return Err(Error::InvalidInput(format!(
                "need at least {MIN_NODES} nodes per direction, got n_r = {n_r}, n_theta = {n_theta}"
            )));
        }
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= std::f64::consts::PI) {
            return Err(Error::Domain(format!("wedge angle must lie in (0, pi], got {alpha}")));
        }
        let (rho_min, rho_max) = (r_min.ln(), r_max.ln());
        let d_rho = (rho_max - rho_min) / (n_r - 1) as f64;
        let d_theta = alpha / (n_theta - 1) as f64;
        let rho: Vec<f64> = (0..n_r).map(|i| rho_min + i as f64 * d_rho).collect();
        let mut r: Vec<f64> = rho.iter().map(|p| p.exp()).collect();
        // pin the end nodes so that the weights integrate constants exactly
        r[0] = r_min;
        r[n_r - 1] = r_max;
        let mut surface_weights: Vec<f64> = r.iter().map(|ri| ri * d_rho).collect();
        surface_weights[0] *= 0.5;
        surface_weights[n_r - 1] *= 0.5;
        Ok(Self {
            r_min,
            r_max,
            alpha,
            n_r,
            n_theta,
            d_rho,
            d_theta,
            rho,
            r,
            surface_weights,
        })
    }

    /// Same node layout on the sector dilated by `c`.
    pub fn dilated(&self, c: f64) -> Result<Self> {
        Self::new(self.r_min * c, self.r_max * c, self.n_r, self.n_theta, self.alpha)
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }
    pub fn r_max(&self) -> f64 {
        self.r_max
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn n_r(&self) -> usize {
        self.n_r
    }
    pub fn n_theta(&self) -> usize {
        self.n_theta
    }
    pub fn d_rho(&self) -> f64 {
        self.d_rho
    }
    pub fn d_theta(&self) -> f64 {
        self.d_theta
    }
    pub fn rho(&self) -> &[f64] {
        &self.rho
    }
    /// Radial node positions on `Γ1`.
    pub fn r(&self) -> &[f64] {
        &self.r
    }
    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.d_theta
    }
    /// Trapezoid weights for `∫_{Γ1} f g dx1` in the `ρ` variable.
    pub fn surface_weights(&self) -> &[f64] {
        &self.surface_weights
    }
}
