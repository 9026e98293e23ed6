//! Independent reference computations.
//!
//! For the quarter plane (`α = π/2`) the Neumann wall can be removed by even
//! reflection across it, which turns `Λ` into the half-plane multiplier `|ξ|`
//! acting on the even extension of the data. That multiplier is applied with
//! an FFT on a periodized window and shares no code with the wedge solver.

use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::laplace::LogRadialGrid;

/// Anything that carries surface node positions.
pub trait SurfaceNodes {
    fn nodes(&self) -> &[f64];
}

impl SurfaceNodes for Vec<f64> {
    fn nodes(&self) -> &[f64] {
        self
    }
}

impl SurfaceNodes for LogRadialGrid {
    fn nodes(&self) -> &[f64] {
        self.r()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformLineGrid {
    x_min: f64,
    x_max: f64,
    h: f64,
    x: Vec<f64>,
}

impl UniformLineGrid {
    pub const MIN_NODES: usize = 16;

    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min >= 0.0 && x_max > x_min) {
            return Err(Error::InvalidInput(format!(
                "need 0 <= x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < Self::MIN_NODES {
            return Err(Error::InvalidInput(format!(
                "need at least {} nodes, got {n}",
                Self::MIN_NODES
            )));
        }
        let h = (x_max - x_min) / (n - 1) as f64;
        let mut x: Vec<f64> = (0..n).map(|k| x_min + k as f64 * h).collect();
        x[n - 1] = x_max;
        Ok(Self { x_min, x_max, h, x })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    pub fn spacing(&self) -> f64 {
        self.h
    }
    pub fn len(&self) -> usize {
        self.x.len()
    }
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

impl SurfaceNodes for UniformLineGrid {
    fn nodes(&self) -> &[f64] {
        &self.x
    }
}

pub fn gaussian_bump(grid: &impl SurfaceNodes, center: f64, width: f64, amplitude: f64) -> Result<Vec<f64>> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidInput(format!("bump width must be positive, got {width}")));
    }
    Ok(grid
        .nodes()
        .iter()
        .map(|x| amplitude * (-((x - center) / width).powi(2)).exp())
        .collect())
}

/// Piecewise-linear interpolation; `None` outside `[xs[0], xs[n-1]]`.
pub fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> Option<f64> {
    let n = xs.len();
    if n == 0 || x < xs[0] || x > xs[n - 1] {
        return None;
    }
    let k = xs.partition_point(|&v| v <= x).clamp(1, n - 1);
    let (x0, x1) = (xs[k - 1], xs[k]);
    let t = if x1 > x0 { (x - x0) / (x1 - x0) } else { 0.0 };
    Some(ys[k - 1] + t * (ys[k] - ys[k - 1]))
}

/// `Λf` at `α = π/2` through the even reflection and the multiplier `|ξ|`.
pub fn reflection_dtn_quarter_plane(grid: &UniformLineGrid, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            got: f.len(),
        });
    }
    check_support(f)?;
    let (ys, g) = periodic_response(grid, f);
    Ok(grid
        .nodes()
        .iter()
        .map(|&x| interp_linear(&ys, &g, x).unwrap_or(0.0))
        .collect())
}

fn check_support(f: &[f64]) -> Result<()> {
    let fmax = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if fmax == 0.0 {
        return Ok(());
    }
    let edge = (f.len() / 10).max(1);
    let tails = f[..edge].iter().chain(&f[f.len() - edge..]);
    if tails.into_iter().any(|v| v.abs() >= 1e-12 * fmax) {
        return Err(Error::InvalidInput(
            "oracle data must vanish on the outer 10% of the grid".into(),
        ));
    }
    Ok(())
}

/// Nodes `y_p` of the periodic window `[-2 x_max, 2 x_max)` and `|ξ|` applied
/// to the even extension sampled there.
pub(crate) fn periodic_response(grid: &UniformLineGrid, f: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let h = grid.spacing();
    let half = 2.0 * grid.x_max();
    let m = (2.0 * half / h).round() as usize;
    let ys: Vec<f64> = (0..m).map(|p| -half + p as f64 * h).collect();
    let data: Vec<f64> = ys
        .iter()
        .map(|y| interp_linear(grid.nodes(), f, y.abs()).unwrap_or(0.0))
        .collect();
    (ys, apply_abs_multiplier(&data, h))
}

/// Periodic `|ξ|` multiplier on samples with spacing `h`.
pub(crate) fn apply_abs_multiplier(data: &[f64], h: f64) -> Vec<f64> {
    let m = data.len();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(m);
    let inverse = planner.plan_fft_inverse(m);
    let mut buf: Vec<Complex<f64>> = data.iter().map(|&v| Complex::new(v, 0.0)).collect();
    forward.process(&mut buf);
    let base = std::f64::consts::TAU / (m as f64 * h);
    for (k, c) in buf.iter_mut().enumerate() {
        let signed = if k <= m / 2 { k as f64 } else { k as f64 - m as f64 };
        *c *= signed.abs() * base;
    }
    inverse.process(&mut buf);
    buf.iter().map(|c| c.re / m as f64).collect()
}

/// Relative weighted-`ℓ2` distance between `Λf` on the log grid and the
/// oracle values interpolated onto the log nodes inside the uniform window.
pub fn weighted_relative_difference(
    log_grid: &LogRadialGrid,
    on_log: &[f64],
    line: &UniformLineGrid,
    on_line: &[f64],
) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&r, &w), &a) in log_grid.r().iter().zip(log_grid.surface_weights()).zip(on_log) {
        if let Some(b) = interp_linear(line.nodes(), on_line, r) {
            num += w * (a - b) * (a - b);
            den += w * b * b;
        }
    }
    (num / den).sqrt()
}
