//! Separated-variable harmonic functions on the wedge.
//!
//! The sine family `r^{μ_n} sin(μ_n θ)` with `μ_n = (n + 1/2) π / α` vanishes
//! on `Γ1` and is Neumann-free on `Γ2`. The cosine family
//! `r^μ cos(μ (α - θ))` is Neumann-free on `Γ2` for every `μ` and has a
//! non-zero trace on `Γ1`, which makes it usable as a manufactured solution.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeFamily {
    Sine,
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    pub n: i32,
    pub alpha: f64,
    pub mu: f64,
    pub family: ModeFamily,
}

impl ModeSpec {
    pub fn sine(n: i32, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            n,
            alpha,
            mu: mode_exponent(n, alpha),
            family: ModeFamily::Sine,
        })
    }

    pub fn cosine(mu: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidInput(format!(
                "cosine mode exponent must be positive, got {mu}"
            )));
        }
        Ok(Self {
            n: 0,
            alpha,
            mu,
            family: ModeFamily::Cosine,
        })
    }

    pub fn eval(&self, r: f64, theta: f64) -> f64 {
        match self.family {
            ModeFamily::Sine => r.powf(self.mu) * (self.mu * theta).sin(),
            ModeFamily::Cosine => cosine_mode_eval(self.mu, self.alpha, r, theta),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("wedge angle must lie in (0, pi], got {alpha}")))
    }
}

/// `(n + 1/2) π / α`.
pub fn mode_exponent(n: i32, alpha: f64) -> f64 {
    (f64::from(n) + 0.5) * PI / alpha
}

pub fn sine_mode_eval(spec: &ModeSpec, r: f64, theta: f64) -> f64 {
    debug_assert_eq!(spec.family, ModeFamily::Sine);
    r.powf(spec.mu) * (spec.mu * theta).sin()
}

pub fn cosine_mode_eval(mu: f64, alpha: f64, r: f64, theta: f64) -> f64 {
    r.powf(mu) * (mu * (alpha - theta)).cos()
}

/// Dirichlet trace `f(r)` and outward normal derivative `Λf(r)` of the cosine
/// mode on `Γ1`.
pub fn exact_dtn_of_cosine_mode(mu: f64, alpha: f64, r: f64) -> (f64, f64) {
    let f = r.powf(mu) * (mu * alpha).cos();
    let lambda_f = -mu * (mu * alpha).sin() * r.powf(mu - 1.0);
    (f, lambda_f)
}

/// Exponent `q` in `|∇v|² r ~ r^q` for the `n`-th sine mode.
pub fn radial_energy_exponent(n: i32, alpha: f64) -> f64 {
    2.0 * mode_exponent(n, alpha) - 1.0
}

/// Whether the Dirichlet energy of mode `n` is finite on `{r > R}`.
pub fn energy_finite_far(n: i32, alpha: f64) -> bool {
    radial_energy_exponent(n, alpha) < -1.0
}

/// Whether the Dirichlet energy of mode `n` is finite on `{r < ε}`.
pub fn energy_finite_near(n: i32, alpha: f64) -> bool {
    radial_energy_exponent(n, alpha) > -1.0
}
