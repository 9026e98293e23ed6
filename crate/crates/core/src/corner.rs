//! Corner condition for the wedge with Dirichlet data on `Γ1` and the normal
//! derivative on `Γ2`.
//!
//! The boundary operators are fixed: `B1 = identity` (order 0) and
//! `B2 = ∂/∂ν` (order 1). With `λ1 = -i`, `λ2 = i` the symbol
//!
//! ```text
//! M0(z) = -b2 + exp(2πiz) exp(-iβ1 z) exp(iβ2 z)
//! ```
//!
//! must not vanish on the line `z = 1 - s + iτ`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::WedgeGeometry;

pub const LAMBDA: [Complex64; 2] = [Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)];

/// Order of the Dirichlet operator on `Γ1`.
pub const M1: u32 = 0;
/// Order of the Neumann operator on `Γ2`.
pub const M2: u32 = 1;

pub const VERDICT_THRESHOLD: f64 = 1e-9;

const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Complex numbers are written as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerSymbolReport {
    pub alpha: f64,
    pub s: f64,
    pub m1: u32,
    pub m2: u32,
    pub lambda1: [f64; 2],
    pub lambda2: [f64; 2],
    pub mu1: [f64; 2],
    pub mu2: [f64; 2],
    pub beta1: f64,
    pub beta2: f64,
    pub b20: [f64; 2],
    pub tau_range: (f64, f64),
    pub n_samples: usize,
    pub min_abs_m0: f64,
    pub verdict: Verdict,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Argument in `[0, 2π)`.
fn arg_positive(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// `ln z` on the branch with argument in `[0, 2π)`.
pub fn ln_positive_branch(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), arg_positive(z))
}

/// `μ_j = (sin α - λ_j cos α) / (-cos α - λ_j sin α)`.
pub fn mus(alpha: f64) -> [Complex64; 2] {
    let (s, c) = alpha.sin_cos();
    LAMBDA.map(|l| (s - l * c) / (-c - l * s))
}

/// `β_k = -i ln(cos α + λ_k sin α)`, checked against `(2π - α, α)`.
pub fn betas(alpha: f64) -> Result<(f64, f64)> {
    WedgeGeometry::new(alpha)?;
    let (s, c) = alpha.sin_cos();
    let mut out = [0.0; 2];
    for (k, l) in LAMBDA.iter().enumerate() {
        let beta = -Complex64::i() * ln_positive_branch(c + l * s);
        if beta.im.abs() > IDENTITY_TOL {
            return Err(Error::Branch(format!("beta{} has imaginary part {}", k + 1, beta.im)));
        }
        out[k] = beta.re;
    }
    let expect = [TAU - alpha, alpha];
    for k in 0..2 {
        if (out[k] - expect[k]).abs() > IDENTITY_TOL {
            return Err(Error::Branch(format!(
                "beta{} = {} but expected {}",
                k + 1,
                out[k],
                expect[k]
            )));
        }
    }
    Ok((out[0], out[1]))
}

/// Symbol of `∂/∂ν` in the rotated `(y1, y2)` frame.
pub fn neumann_symbol_rotated(alpha: f64, eta1: Complex64, eta2: Complex64) -> Complex64 {
    let [n1, n2] = WedgeGeometry::new(alpha)
        .map(|g| g.gamma2_normal())
        .unwrap_or([-alpha.sin(), alpha.cos()]);
    let (s, c) = alpha.sin_cos();
    let i = Complex64::i();
    i * n1 * (-eta1 * c + eta2 * s) + i * n2 * (-eta1 * s - eta2 * c)
}

/// `(B2⁺, B2⁻)`, the rotated Neumann symbol at `(1, μ1)` and `(-1, -μ2)`.
pub fn b2_pm(alpha: f64) -> (Complex64, Complex64) {
    let [mu1, mu2] = mus(alpha);
    let one = Complex64::new(1.0, 0.0);
    (
        neumann_symbol_rotated(alpha, one, mu1),
        neumann_symbol_rotated(alpha, -one, -mu2),
    )
}

/// `b2⁽⁰⁾ = (B2⁺)⁻¹ e^{iπ} B2⁻`; equals `-1` for every admissible angle.
pub fn b20(alpha: f64) -> Result<Complex64> {
    WedgeGeometry::new(alpha)?;
    let (plus, minus) = b2_pm(alpha);
    if plus.norm() < 1e-14 {
        return Err(Error::Domain("degenerate boundary symbol B2+".into()));
    }
    let b = -minus / plus;
    if (b + 1.0).norm() > IDENTITY_TOL {
        return Err(Error::Branch(format!("b2(0) = {b} differs from -1")));
    }
    Ok(b)
}

pub fn m0(z: Complex64, alpha: f64) -> Result<Complex64> {
    let b = b20(alpha)?;
    let (beta1, beta2) = betas(alpha)?;
    Ok(-b + (Complex64::i() * z * (TAU - beta1 + beta2)).exp())
}

/// Samples `(τ, |M0(1 - s + iτ)|)` on a uniform grid over `[-τ_max, τ_max]`.
pub fn m0_samples(alpha: f64, s: f64, tau_max: f64, n_samples: usize) -> Result<Vec<(f64, f64)>> {
    if n_samples < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    if !(tau_max.is_finite() && tau_max > 0.0) {
        return Err(Error::InvalidInput(format!("tau_max must be positive, got {tau_max}")));
    }
    if !s.is_finite() {
        return Err(Error::InvalidInput("s must be finite".into()));
    }
    let b = b20(alpha)?;
    let (beta1, beta2) = betas(alpha)?;
    let phase = TAU - beta1 + beta2;
    let step = 2.0 * tau_max / (n_samples - 1) as f64;
    Ok((0..n_samples)
        .map(|k| {
            let tau = -tau_max + k as f64 * step;
            let z = Complex64::new(1.0 - s, tau);
            (tau, (-b + (Complex64::i() * z * phase).exp()).norm())
        })
        .collect())
}

pub fn corner_check(alpha: f64, s: f64, tau_max: f64, n_samples: usize) -> Result<CornerSymbolReport> {
    let samples = m0_samples(alpha, s, tau_max, n_samples)?;
    let min_abs_m0 = samples.iter().map(|&(_, m)| m).fold(f64::INFINITY, f64::min);
    let (beta1, beta2) = betas(alpha)?;
    let [mu1, mu2] = mus(alpha);
    Ok(CornerSymbolReport {
        alpha,
        s,
        m1: M1,
        m2: M2,
        lambda1: pair(LAMBDA[0]),
        lambda2: pair(LAMBDA[1]),
        mu1: pair(mu1),
        mu2: pair(mu2),
        beta1,
        beta2,
        b20: pair(b20(alpha)?),
        tau_range: (-tau_max, tau_max),
        n_samples,
        min_abs_m0,
        verdict: if min_abs_m0 > VERDICT_THRESHOLD {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    })
}

/// Angles `k π / n`, `k = 1..=n`.
pub fn angle_sweep(n: usize) -> Vec<f64> {
    (1..=n).map(|k| k as f64 * PI / n as f64).collect()
}
