//! Free-surface evolution `v_tt + gΛv = P_t` on `Γ1`.
//!
//! The discrete `Λ` is a finite symmetric operator, so the propagators
//! `cos(t(gΛ)^{1/2})` and `(gΛ)^{-1/2} sin(t(gΛ)^{1/2})` are applied exactly in
//! its eigenbasis. Forcing enters through the Duhamel integral, with `P_t`
//! interpolated piecewise-linearly in time and each sub-interval integrated
//! in closed form per mode. The elevation follows from `gη = P - v_t`.

use serde::{Deserialize, Serialize};

use crate::dtn::DtnOperator;
use crate::error::{ensure_finite, ensure_len, Error, Result};

/// Below this value of `z t²` the propagator functions use their Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-8;

/// `(cos(t√z), sin(t√z)/√z)`, continuous at `z = 0`.
pub fn phi_functions(z: f64, t: f64) -> Result<(f64, f64)> {
    if !(z >= 0.0) {
        return Err(Error::Domain(format!("spectral argument must be >= 0, got {z}")));
    }
    Ok(phi(z, t))
}

#[inline]
fn phi(z: f64, t: f64) -> (f64, f64) {
    let x2 = z * t * t;
    if x2 < SERIES_THRESHOLD {
        let c = 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
        let s = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
        (c, s)
    } else {
        let w = z.sqrt();
        let (sn, cs) = (w * t).sin_cos();
        (cs, sn / w)
    }
}

/// `(1 - cos(ωu))/ω²`, the antiderivative of `sin(ωu)/ω` vanishing at 0.
fn kernel_c(z: f64, u: f64) -> f64 {
    let x2 = z * u * u;
    if x2 < 0.25 {
        // Σ (-1)^k x^{2k} / (2k+2)!
        let mut term = 0.5;
        let mut sum = term;
        for k in 1..12 {
            term *= -x2 / ((2 * k + 1) * (2 * k + 2)) as f64;
            sum += term;
        }
        u * u * sum
    } else {
        let w = z.sqrt();
        let h = (0.5 * w * u).sin();
        2.0 * h * h / z
    }
}

/// `(sin(ωu) - ωu cos(ωu))/ω³`, the antiderivative of `u sin(ωu)/ω`.
fn kernel_d(z: f64, u: f64) -> f64 {
    let x2 = z * u * u;
    if x2 < 0.25 {
        // Σ_{k≥1} (-1)^{k+1} 2k x^{2k-2} / (2k+1)!
        let mut fact = 6.0;
        let mut pow = 1.0;
        let mut sum = 2.0 / fact;
        for k in 2..12 {
            fact *= ((2 * k) * (2 * k + 1)) as f64;
            pow *= -x2;
            sum += (2 * k) as f64 * pow / fact;
        }
        u * u * u * sum
    } else {
        let w = z.sqrt();
        let x = w * u;
        (x.sin() - x * x.cos()) / (z * w)
    }
}

/// Duhamel integrals for one mode with `P_t` samples `p[q]` at `q t / n_sub`:
/// `(∫₀ᵗ sin(ω(t-σ))/ω p(σ) dσ, ∫₀ᵗ cos(ω(t-σ)) p(σ) dσ)`.
pub fn duhamel_mode(z: f64, t: f64, p: &[f64]) -> (f64, f64) {
    let n_sub = p.len().saturating_sub(1);
    if n_sub == 0 || t == 0.0 {
        return (0.0, 0.0);
    }
    let h = t / n_sub as f64;
    let (mut v, mut vt) = (0.0, 0.0);
    let mut prev = Kernels::at(z, t);
    for q in 0..n_sub {
        let u_b = if q + 1 == n_sub { 0.0 } else { t - (q + 1) as f64 * h };
        let next = Kernels::at(z, u_b);
        let slope = (p[q + 1] - p[q]) / h;
        let lead = p[q] + slope * prev.u;
        v += lead * (prev.c - next.c) - slope * (prev.d - next.d);
        vt += lead * (prev.s - next.s) - slope * (prev.e - next.e);
        prev = next;
    }
    (v, vt)
}

struct Kernels {
    u: f64,
    c: f64,
    d: f64,
    s: f64,
    e: f64,
}

impl Kernels {
    fn at(z: f64, u: f64) -> Self {
        let c = kernel_c(z, u);
        let s = phi(z, u).1;
        Self {
            u,
            c,
            d: kernel_d(z, u),
            s,
            e: u * s - c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ForcingSpec {
    None {},
    /// `P(r, t) = A exp(-((r - r0)/σ)²) exp(-((t - t0)/τ_w)²)`.
    SeparableGaussian {
        amplitude: f64,
        r0: f64,
        sigma: f64,
        t0: f64,
        tau_w: f64,
    },
    /// Samples of `P_t` at times `times[k]` on the surface nodes, linear in
    /// time between samples and constant beyond them. `P(·, 0) = p0`
    /// (zero when absent).
    Tabulated {
        times: Vec<f64>,
        pt: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p0: Option<Vec<f64>>,
    },
}

impl Default for ForcingSpec {
    fn default() -> Self {
        ForcingSpec::None {}
    }
}

impl ForcingSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            ForcingSpec::None {} => Ok(()),
            ForcingSpec::SeparableGaussian {
                amplitude,
                r0,
                sigma,
                t0,
                tau_w,
            } => {
                ensure_finite(&[*amplitude, *r0, *sigma, *t0, *tau_w], "forcing parameters")?;
                if *sigma <= 0.0 || *tau_w <= 0.0 {
                    return Err(Error::InvalidInput("forcing widths must be positive".into()));
                }
                Ok(())
            }
            ForcingSpec::Tabulated { times, pt, p0 } => {
                if times.is_empty() {
                    return Err(Error::InvalidInput("tabulated forcing needs samples".into()));
                }
                ensure_finite(times, "forcing times")?;
                if times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidInput("forcing times must increase strictly".into()));
                }
                ensure_len(times.len(), pt.len())?;
                for row in pt {
                    ensure_len(n, row.len())?;
                    ensure_finite(row, "forcing samples")?;
                }
                if let Some(p0) = p0 {
                    ensure_len(n, p0.len())?;
                    ensure_finite(p0, "initial pressure")?;
                }
                Ok(())
            }
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, ForcingSpec::None {})
    }

    /// `P(r_i, t)`.
    pub fn pressure(&self, r: &[f64], t: f64) -> Vec<f64> {
        match self {
            ForcingSpec::None {} => vec![0.0; r.len()],
            ForcingSpec::SeparableGaussian {
                amplitude,
                r0,
                sigma,
                t0,
                tau_w,
            } => {
                let time = (-((t - t0) / tau_w).powi(2)).exp();
                r.iter()
                    .map(|x| amplitude * (-((x - r0) / sigma).powi(2)).exp() * time)
                    .collect()
            }
            ForcingSpec::Tabulated { times, pt, p0 } => {
                let (wa, a) = tabulated_integral_weights(times, t);
                let (wb, b) = tabulated_integral_weights(times, 0.0);
                (0..r.len())
                    .map(|i| {
                        let base = p0.as_ref().map_or(0.0, |p| p[i]);
                        let fa: f64 = a.iter().zip(&wa).map(|(&k, w)| w * pt[k][i]).sum();
                        let fb: f64 = b.iter().zip(&wb).map(|(&k, w)| w * pt[k][i]).sum();
                        base + fa - fb
                    })
                    .collect()
            }
        }
    }

    /// `P_t(r_i, t)`.
    pub fn pressure_rate(&self, r: &[f64], t: f64) -> Vec<f64> {
        match self {
            ForcingSpec::None {} => vec![0.0; r.len()],
            ForcingSpec::SeparableGaussian { t0, tau_w, .. } => {
                let factor = -2.0 * (t - t0) / (tau_w * tau_w);
                self.pressure(r, t).into_iter().map(|p| p * factor).collect()
            }
            ForcingSpec::Tabulated { times, pt, .. } => {
                let n = times.len();
                if t <= times[0] {
                    return pt[0].clone();
                }
                if t >= times[n - 1] {
                    return pt[n - 1].clone();
                }
                let k = times.partition_point(|&s| s <= t).clamp(1, n - 1);
                let lam = (t - times[k - 1]) / (times[k] - times[k - 1]);
                pt[k - 1]
                    .iter()
                    .zip(&pt[k])
                    .map(|(a, b)| a + lam * (b - a))
                    .collect()
            }
        }
    }
}

/// Weights `w_k` with `∫_{times[0]}^{t} P_t = Σ w_k pt[k]` for the clamped
/// piecewise-linear interpolant (signed for `t < times[0]`).
fn tabulated_integral_weights(times: &[f64], t: f64) -> (Vec<f64>, Vec<usize>) {
    let n = times.len();
    let mut w = Vec::new();
    let mut idx = Vec::new();
    if t <= times[0] {
        w.push(t - times[0]);
        idx.push(0);
        return (w, idx);
    }
    for k in 0..n - 1 {
        let (a, b) = (times[k], times[k + 1]);
        if t <= a {
            break;
        }
        let end = t.min(b);
        let len = end - a;
        let lam_end = len / (b - a);
        // ∫ of linear interpolation between samples k and k+1 over [a, end]
        w.push(len * (1.0 - 0.5 * lam_end));
        idx.push(k);
        w.push(len * 0.5 * lam_end);
        idx.push(k + 1);
    }
    if t > times[n - 1] {
        w.push(t - times[n - 1]);
        idx.push(n - 1);
    }
    (w, idx)
}

/// Initial surface profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub g: f64,
    pub t_final: f64,
    pub dt_out: f64,
    pub eta0: Vec<f64>,
    pub v0: Vec<f64>,
    pub forcing: ForcingSpec,
    pub n_sub: usize,
}

impl SimulationConfig {
    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.g.is_finite() && self.g > 0.0) {
            return Err(Error::InvalidInput(format!("g must be positive, got {}", self.g)));
        }
        if !(self.dt_out.is_finite() && self.t_final.is_finite() && self.dt_out > 0.0 && self.dt_out <= self.t_final) {
            return Err(Error::InvalidInput(format!(
                "need 0 < dt_out <= T, got dt_out = {}, T = {}",
                self.dt_out, self.t_final
            )));
        }
        if self.n_sub == 0 {
            return Err(Error::InvalidInput("n_sub must be >= 1".into()));
        }
        ensure_len(n, self.eta0.len())?;
        ensure_len(n, self.v0.len())?;
        ensure_finite(&self.eta0, "eta0")?;
        ensure_finite(&self.v0, "v0")?;
        self.forcing.validate(n)
    }

    pub fn output_times(&self) -> Vec<f64> {
        let steps = (self.t_final / self.dt_out * (1.0 + 1e-12)).floor() as usize;
        (0..=steps).map(|m| m as f64 * self.dt_out).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceState {
    pub t: f64,
    pub v: Vec<f64>,
    pub v_t: Vec<f64>,
    pub eta: Vec<f64>,
}

/// `(v, v_t)` at time `t` for `v_tt + gΛv = 0` with `v(0) = v0`, `v_t(0) = v1`.
pub fn propagate_homogeneous(op: &DtnOperator, g: f64, v0: &[f64], v1: &[f64], t: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be >= 0, got {t}")));
    }
    let a = op.to_spectral(v0)?;
    let b = op.to_spectral(v1)?;
    let n = a.len();
    let mut va = Vec::with_capacity(n);
    let mut vb = Vec::with_capacity(n);
    for (k, &lam) in op.eigenvalues().iter().enumerate() {
        let z = g * lam;
        let (c, s) = phi(z, t);
        va.push(c * a[k] + s * b[k]);
        vb.push(-z * s * a[k] + c * b[k]);
    }
    Ok((op.from_spectral(&va)?, op.from_spectral(&vb)?))
}

/// Forced part of the solution with zero initial data.
pub fn duhamel(op: &DtnOperator, g: f64, forcing: &ForcingSpec, t: f64, n_sub: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = op.dim();
    if n_sub == 0 {
        return Err(Error::InvalidInput("n_sub must be >= 1".into()));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be >= 0, got {t}")));
    }
    if forcing.is_none() || t == 0.0 {
        return Ok((vec![0.0; n], vec![0.0; n]));
    }
    forcing.validate(n)?;
    let r = op.grid().r();
    let samples: Vec<Vec<f64>> = (0..=n_sub)
        .map(|q| op.to_spectral(&forcing.pressure_rate(r, q as f64 * t / n_sub as f64)))
        .collect::<Result<_>>()?;
    let mut va = vec![0.0; n];
    let mut vb = vec![0.0; n];
    let mut p = vec![0.0; n_sub + 1];
    for (k, &lam) in op.eigenvalues().iter().enumerate() {
        for (q, s) in samples.iter().enumerate() {
            p[q] = s[k];
        }
        let (x, y) = duhamel_mode(g * lam, t, &p);
        va[k] = x;
        vb[k] = y;
    }
    Ok((op.from_spectral(&va)?, op.from_spectral(&vb)?))
}

pub fn simulate(op: &DtnOperator, cfg: &SimulationConfig) -> Result<Vec<SurfaceState>> {
    cfg.validate(op.dim())?;
    let r = op.grid().r();
    let g = cfg.g;
    let p_initial = cfg.forcing.pressure(r, 0.0);
    let v1: Vec<f64> = p_initial.iter().zip(&cfg.eta0).map(|(p, e)| p - g * e).collect();
    cfg.output_times()
        .into_iter()
        .map(|t| {
            let (mut v, mut v_t) = propagate_homogeneous(op, g, &cfg.v0, &v1, t)?;
            let (dv, dvt) = duhamel(op, g, &cfg.forcing, t, cfg.n_sub)?;
            for i in 0..v.len() {
                v[i] += dv[i];
                v_t[i] += dvt[i];
            }
            let p = cfg.forcing.pressure(r, t);
            let eta = p.iter().zip(&v_t).map(|(p, vt)| (p - vt) / g).collect();
            Ok(SurfaceState { t, v, v_t, eta })
        })
        .collect()
}

/// `‖v_t‖²_w + g⟨Λv, v⟩_w`, evaluated in spectral coordinates.
pub fn energy(op: &DtnOperator, g: f64, v: &[f64], v_t: &[f64]) -> Result<f64> {
    let a = op.to_spectral(v)?;
    let b = op.to_spectral(v_t)?;
    Ok(op
        .eigenvalues()
        .iter()
        .zip(a.iter().zip(&b))
        .map(|(lam, (x, y))| y * y + g * lam * x * x)
        .sum())
}

/// `‖(gΛ)^{1/2} v‖_w`.
pub fn sqrt_energy_norm(op: &DtnOperator, g: f64, v: &[f64]) -> Result<f64> {
    let a = op.to_spectral(v)?;
    Ok(op
        .eigenvalues()
        .iter()
        .zip(&a)
        .map(|(lam, x)| g * lam * x * x)
        .sum::<f64>()
        .sqrt())
}

pub fn weighted_norm(op: &DtnOperator, f: &[f64]) -> f64 {
    op.inner(f, f).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AprioriReport {
    /// `max_m ‖(gΛ)^{1/2} v(t_m)‖_w`.
    pub lhs: f64,
    /// `∫₀ᵀ ‖P_t‖_w dt + ‖(gΛ)^{1/2} v0‖_w + ‖v1‖_w`.
    pub rhs: f64,
    pub per_state: Vec<f64>,
    pub pass: bool,
}

pub const APRIORI_SLACK: f64 = 1e-9;

pub fn apriori_bound_check(op: &DtnOperator, g: f64, cfg: &SimulationConfig, trajectory: &[SurfaceState]) -> Result<AprioriReport> {
    let r = op.grid().r();
    let per_state = trajectory
        .iter()
        .map(|s| sqrt_energy_norm(op, g, &s.v))
        .collect::<Result<Vec<_>>>()?;
    let lhs = per_state.iter().copied().fold(0.0, f64::max);

    let forcing_integral = if cfg.forcing.is_none() {
        0.0
    } else {
        let mut ts: Vec<f64> = {
            let steps = cfg.output_times().len().max(1) * cfg.n_sub.max(64);
            (0..=steps).map(|k| k as f64 * cfg.t_final / steps as f64).collect()
        };
        if let ForcingSpec::Tabulated { times, .. } = &cfg.forcing {
            ts.extend(times.iter().copied().filter(|&t| t > 0.0 && t < cfg.t_final));
            ts.sort_by(f64::total_cmp);
        }
        let norms: Vec<f64> = ts.iter().map(|&t| weighted_norm(op, &cfg.forcing.pressure_rate(r, t))).collect();
        ts.windows(2)
            .zip(norms.windows(2))
            .map(|(t, n)| 0.5 * (t[1] - t[0]) * (n[0] + n[1]))
            .sum()
    };
    let p_initial = cfg.forcing.pressure(r, 0.0);
    let v1: Vec<f64> = p_initial.iter().zip(&cfg.eta0).map(|(p, e)| p - g * e).collect();
    let rhs = forcing_integral + sqrt_energy_norm(op, g, &cfg.v0)? + weighted_norm(op, &v1);
    Ok(AprioriReport {
        lhs,
        rhs,
        per_state,
        pass: lhs <= rhs * (1.0 + APRIORI_SLACK),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KinematicReport {
    /// Largest `|(η(t+Δ) - η(t-Δ))/(2Δ) - Λv(t)|` over interior output times.
    pub max_abs_error: f64,
    /// Largest `|Λv(t)|` over the same times.
    pub scale: f64,
}

/// Compares a centred difference of the emitted `η` with `Λv`.
pub fn kinematic_consistency(op: &DtnOperator, trajectory: &[SurfaceState]) -> Result<KinematicReport> {
    let mut max_abs_error = 0.0f64;
    let mut scale = 0.0f64;
    for w in trajectory.windows(3) {
        let dt = w[2].t - w[0].t;
        let lv = op.apply(&w[1].v)?;
        for (i, l) in lv.iter().enumerate() {
            let d = (w[2].eta[i] - w[0].eta[i]) / dt;
            max_abs_error = max_abs_error.max((d - l).abs());
            scale = scale.max(l.abs());
        }
    }
    Ok(KinematicReport { max_abs_error, scale })
}
