//! WebAssembly bindings for the demo page in `www/`.
//!
//! Three operations: the corner symbol curve `|M0|`, the DtN operator applied
//! to a bump together with its spectrum, and the free-surface response to an
//! initial hump. Arrays cross the boundary as flat `Float64Array`s.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use wasm_bindgen::prelude::*;
use wedgewave::corner::{corner_check, m0_samples, Verdict};
use wedgewave::evolution::{simulate, ForcingSpec, SimulationConfig};
use wedgewave::{assemble_dtn, DtnOperator, LogRadialGrid, WedgeGeometry};

/// The demo keeps grids small enough to assemble in well under a second.
pub const MAX_DEMO_NODES: usize = 20_000;

fn js(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// `[τ0, |M0(τ0)|, τ1, |M0(τ1)|, ...]` along `Re z = 1 - s`.
pub fn corner_curve_values(alpha: f64, s: f64, tau_max: f64, n_samples: usize) -> Result<Vec<f64>, String> {
    let samples = m0_samples(alpha, s, tau_max, n_samples).map_err(|e| e.to_string())?;
    Ok(samples.into_iter().flat_map(|(t, m)| [t, m]).collect())
}

#[wasm_bindgen(js_name = cornerCurve)]
pub fn corner_curve(alpha: f64, s: f64, tau_max: f64, n_samples: usize) -> Result<Vec<f64>, JsError> {
    corner_curve_values(alpha, s, tau_max, n_samples).map_err(js)
}

#[wasm_bindgen(js_name = cornerPasses)]
pub fn corner_passes(alpha: f64, s: f64) -> Result<bool, JsError> {
    let report = corner_check(alpha, s, 50.0, 2001).map_err(js)?;
    Ok(report.verdict == Verdict::Pass)
}

/// An assembled operator held by the page between interactions.
#[wasm_bindgen]
pub struct WedgeDemo {
    op: DtnOperator,
}

impl WedgeDemo {
    pub fn build(alpha: f64, r_min: f64, r_max: f64, n_r: usize, n_theta: usize) -> Result<Self, String> {
        if n_r.saturating_mul(n_theta) > MAX_DEMO_NODES {
            return Err(format!("grid {n_r}x{n_theta} is too large for the demo"));
        }
        let geom = WedgeGeometry::new(alpha).map_err(|e| e.to_string())?;
        let grid = LogRadialGrid::new(r_min, r_max, n_r, n_theta, alpha).map_err(|e| e.to_string())?;
        let op = assemble_dtn(&geom, &grid).map_err(|e| e.to_string())?;
        Ok(Self { op })
    }

    fn bump(&self, center: f64, width: f64) -> Result<Vec<f64>, String> {
        if !(width > 0.0) {
            return Err(format!("width must be positive, got {width}"));
        }
        Ok(self.op.grid().r().iter().map(|r| (-((r - center) / width).powi(2)).exp()).collect())
    }

    pub fn apply_bump_values(&self, center: f64, width: f64) -> Result<Vec<f64>, String> {
        self.op.apply(&self.bump(center, width)?).map_err(|e| e.to_string())
    }

    /// Elevation frames `η(r, t_m)` concatenated in time order.
    pub fn evolve_values(&self, center: f64, width: f64, amplitude: f64, t_final: f64, frames: usize) -> Result<Vec<f64>, String> {
        if frames < 2 {
            return Err("need at least two frames".into());
        }
        let eta0: Vec<f64> = self.bump(center, width)?.into_iter().map(|v| amplitude * v).collect();
        let cfg = SimulationConfig {
            g: 9.81,
            t_final,
            dt_out: t_final / (frames - 1) as f64,
            v0: vec![0.0; eta0.len()],
            eta0,
            forcing: ForcingSpec::None {},
            n_sub: 1,
        };
        let traj = simulate(&self.op, &cfg).map_err(|e| e.to_string())?;
        Ok(traj.into_iter().take(frames).flat_map(|s| s.eta).collect())
    }
}

#[wasm_bindgen]
impl WedgeDemo {
    #[wasm_bindgen(constructor)]
    pub fn new(alpha: f64, r_min: f64, r_max: f64, n_r: usize, n_theta: usize) -> Result<WedgeDemo, JsError> {
        Self::build(alpha, r_min, r_max, n_r, n_theta).map_err(js)
    }

    pub fn radii(&self) -> Vec<f64> {
        self.op.grid().r().to_vec()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.op.eigenvalues().to_vec()
    }

    pub fn asymmetry(&self) -> f64 {
        self.op.asymmetry()
    }

    #[wasm_bindgen(js_name = applyBump)]
    pub fn apply_bump(&self, center: f64, width: f64) -> Result<Vec<f64>, JsError> {
        self.apply_bump_values(center, width).map_err(js)
    }

    pub fn evolve(&self, center: f64, width: f64, amplitude: f64, t_final: f64, frames: usize) -> Result<Vec<f64>, JsError> {
        self.evolve_values(center, width, amplitude, t_final, frames).map_err(js)
    }
}
