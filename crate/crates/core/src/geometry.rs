//! Wedge geometry and coordinate frames.
//!
//! The fluid occupies the sector `0 < theta < alpha`. The free surface `Γ1` is
//! the ray `theta = 0` and the rigid wall `Γ2` is the ray `theta = alpha`.
//! Reflecting `x2 -> -x2` recovers the picture with the fluid below the
//! surface; nothing computed here depends on that choice.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WedgeGeometry {
    alpha: f64,
}

impl WedgeGeometry {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= PI) {
            return Err(Error::Domain(format!(
                "wedge angle must lie in (0, pi], got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Leading corner exponent `pi / (2 alpha)`.
    pub fn mu0(&self) -> f64 {
        PI / (2.0 * self.alpha)
    }

    /// Unit normal of `Γ2`, `(-sin alpha, cos alpha)`.
    pub fn gamma2_normal(&self) -> [f64; 2] {
        [-self.alpha.sin(), self.alpha.cos()]
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        (0.0..=self.alpha).contains(&theta)
    }
}

/// Cartesian to polar with `theta` in `(-pi, pi]`. The corner itself is excluded.
pub fn to_polar(x1: f64, x2: f64) -> Result<(f64, f64)> {
    if x1 == 0.0 && x2 == 0.0 {
        return Err(Error::Domain("the corner point has no polar angle".into()));
    }
    let r = x1.hypot(x2);
    let mut theta = x2.atan2(x1);
    // atan2(-0.0, x<0) returns -pi
    if theta == -PI {
        theta = PI;
    }
    Ok((r, theta))
}

pub fn from_polar(r: f64, theta: f64) -> (f64, f64) {
    (r * theta.cos(), r * theta.sin())
}

/// Rotated frame in which `Γ2` becomes the negative `y1` semi-axis.
pub fn rotate_to_gamma2_frame(x1: f64, x2: f64, alpha: f64) -> (f64, f64) {
    let (s, c) = alpha.sin_cos();
    (-x1 * c - x2 * s, x1 * s - x2 * c)
}

/// Orientation of the normal used for the Dirichlet-to-Neumann map on `Γ1`.
///
/// `Λf` is the derivative of the harmonic extension along the normal pointing
/// out of the fluid, `(0, -1)` on `Γ1`, so `Λf(r) = -(1/r) ∂u/∂θ` at `θ = 0`.
/// With this sign `⟨Λf, f⟩` is the Dirichlet energy of the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalConvention {
    /// Sign multiplying `(1/r) ∂u/∂θ` at `θ = 0`.
    pub sign: i8,
    pub outward_normal: [i8; 2],
}

pub const fn gamma1_outward_normal_derivative_convention() -> NormalConvention {
    NormalConvention {
        sign: -1,
        outward_normal: [0, -1],
    }
}
