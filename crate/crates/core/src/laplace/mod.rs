//! Mixed Dirichlet/Neumann Laplace problem on the truncated wedge.
//!
//! In `(ρ, θ) = (ln r, θ)` the Laplacian satisfies `r² Δu = u_ρρ + u_θθ`, so the
//! truncated sector becomes a rectangle carrying the constant-coefficient
//! five-point stencil. Boundary rows:
//!
//! * `θ = 0` (`Γ1`): Dirichlet data `f`.
//! * `θ = α` (`Γ2`): homogeneous Neumann through the ghost value
//!   `u[i][M+1] = u[i][M-1]`.
//! * arcs `ρ = ρ_min`, `ρ = ρ_max`: either prescribed values, or the Robin
//!   closure `∂ρu = ±μ0 u` that is exact for the leading near-corner and
//!   far-field modes. The Robin closure is imposed with a centred ghost
//!   value, so the stencil row is kept on the arc itself.

mod banded;
pub mod convergence;
mod grid;

pub use banded::{BandMatrix, BandedLu};
pub use grid::{LogRadialGrid, MIN_NODES};

use crate::error::{ensure_finite, ensure_len, Error, Result};
use crate::geometry::WedgeGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    RobinAsymptotic,
    ExactDirichlet,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArcBc {
    RobinAsymptotic,
    /// Values on the inner (`r_min`) and outer (`r_max`) arcs, indexed by `θ`
    /// node. Entry `0` sits on `Γ1`, where the surface data wins.
    ExactDirichlet { inner: Vec<f64>, outer: Vec<f64> },
}

impl ArcBc {
    pub fn kind(&self) -> ArcKind {
        match self {
            ArcBc::RobinAsymptotic => ArcKind::RobinAsymptotic,
            ArcBc::ExactDirichlet { .. } => ArcKind::ExactDirichlet,
        }
    }

    pub fn zero_dirichlet(n_theta: usize) -> Self {
        ArcBc::ExactDirichlet {
            inner: vec![0.0; n_theta],
            outer: vec![0.0; n_theta],
        }
    }
}

/// Nodal values `u(ρ_i, θ_j)`, stored row-major with `θ` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicField {
    grid: LogRadialGrid,
    values: Vec<f64>,
}

impl HarmonicField {
    pub fn from_values(grid: &LogRadialGrid, values: Vec<f64>) -> Result<Self> {
        ensure_len(grid.n_r() * grid.n_theta(), values.len())?;
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub fn from_fn(grid: &LogRadialGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.n_r() * grid.n_theta());
        for &r in grid.r() {
            for j in 0..grid.n_theta() {
                values.push(f(r, grid.theta(j)));
            }
        }
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &LogRadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n_theta() + j]
    }

    pub fn trace(&self) -> Vec<f64> {
        (0..self.grid.n_r()).map(|i| self.get(i, 0)).collect()
    }
}

/// Factorized five-point system for one grid and one arc closure.
///
/// The factorization is independent of the data, so one solver serves every
/// right-hand side; it is immutable after construction and can be shared
/// across threads.
#[derive(Debug, Clone)]
pub struct MixedBvpSolver {
    grid: LogRadialGrid,
    arc: ArcKind,
    lu: BandedLu,
}

impl MixedBvpSolver {
    pub fn new(geom: &WedgeGeometry, grid: &LogRadialGrid, arc: ArcKind) -> Result<Self> {
        if (geom.alpha() - grid.alpha()).abs() > 1e-14 * geom.alpha() {
            return Err(Error::InvalidInput(format!(
                "grid built for alpha = {} used with wedge alpha = {}",
                grid.alpha(),
                geom.alpha()
            )));
        }
        let a = assemble(geom, grid, arc);
        let lu = a.factor()?;
        Ok(Self {
            grid: grid.clone(),
            arc,
            lu,
        })
    }

    pub fn grid(&self) -> &LogRadialGrid {
        &self.grid
    }

    pub fn arc_kind(&self) -> ArcKind {
        self.arc
    }

    pub fn solve(&self, f: &[f64], arc_bc: &ArcBc) -> Result<HarmonicField> {
        let g = &self.grid;
        let (n_r, n_t) = (g.n_r(), g.n_theta());
        ensure_len(n_r, f.len())?;
        ensure_finite(f, "surface data")?;
        if arc_bc.kind() != self.arc {
            return Err(Error::InvalidInput(
                "arc condition does not match the factorized closure".into(),
            ));
        }
        let m = n_t - 1;
        let ct = 1.0 / (g.d_theta() * g.d_theta());
        let mut rhs = vec![0.0; n_r * m];
        match arc_bc {
            ArcBc::RobinAsymptotic => {
                for i in 0..n_r {
                    rhs[unknown(i, 1, m)] = -ct * f[i];
                }
            }
            ArcBc::ExactDirichlet { inner, outer } => {
                ensure_len(n_t, inner.len())?;
                ensure_len(n_t, outer.len())?;
                ensure_finite(inner, "inner arc data")?;
                ensure_finite(outer, "outer arc data")?;
                for i in 1..n_r - 1 {
                    rhs[unknown(i, 1, m)] = -ct * f[i];
                }
                for j in 1..=m {
                    rhs[unknown(0, j, m)] = inner[j];
                    rhs[unknown(n_r - 1, j, m)] = outer[j];
                }
            }
        }
        self.lu.solve_in_place(&mut rhs);

        let mut values = Vec::with_capacity(n_r * n_t);
        for i in 0..n_r {
            values.push(f[i]);
            values.extend_from_slice(&rhs[i * m..(i + 1) * m]);
        }
        Ok(HarmonicField {
            grid: g.clone(),
            values,
        })
    }

    /// Solves with unit data at surface node `k` and returns only the two
    /// `θ` layers next to `Γ1`, which is all the flux stencil needs.
    pub(crate) fn surface_layers_for_hat(&self, k: usize) -> (Vec<f64>, Vec<f64>) {
        let g = &self.grid;
        let (n_r, m) = (g.n_r(), g.n_theta() - 1);
        let ct = 1.0 / (g.d_theta() * g.d_theta());
        let mut rhs = vec![0.0; n_r * m];
        let interior = match self.arc {
            ArcKind::RobinAsymptotic => true,
            ArcKind::ExactDirichlet => k > 0 && k < n_r - 1,
        };
        if interior {
            rhs[unknown(k, 1, m)] = -ct;
        }
        self.lu.solve_in_place(&mut rhs);
        let l1 = (0..n_r).map(|i| rhs[unknown(i, 1, m)]).collect();
        let l2 = (0..n_r).map(|i| rhs[unknown(i, 2, m)]).collect();
        (l1, l2)
    }
}

#[inline]
fn unknown(i: usize, j: usize, m: usize) -> usize {
    i * m + (j - 1)
}

fn assemble(geom: &WedgeGeometry, grid: &LogRadialGrid, arc: ArcKind) -> BandMatrix {
    let (n_r, m) = (grid.n_r(), grid.n_theta() - 1);
    let cr = 1.0 / (grid.d_rho() * grid.d_rho());
    let ct = 1.0 / (grid.d_theta() * grid.d_theta());
    let robin = 2.0 * grid.d_rho() * geom.mu0() * cr;
    let mut a = BandMatrix::zeros(n_r * m, m, m);
    for i in 0..n_r {
        let on_arc = i == 0 || i == n_r - 1;
        for j in 1..=m {
            let row = unknown(i, j, m);
            if on_arc && arc == ArcKind::ExactDirichlet {
                a.add(row, row, 1.0);
                continue;
            }
            a.add(row, row, -2.0 * cr - 2.0 * ct);
            if i == 0 {
                a.add(row, unknown(1, j, m), 2.0 * cr);
                a.add(row, row, -robin);
            } else if i == n_r - 1 {
                a.add(row, unknown(n_r - 2, j, m), 2.0 * cr);
                a.add(row, row, -robin);
            } else {
                let lower = unknown(i - 1, j, m);
                let upper = unknown(i + 1, j, m);
                a.add(row, lower, cr);
                a.add(row, upper, cr);
            }
            if j > 1 {
                a.add(row, unknown(i, j - 1, m), ct);
            }
            if j < m {
                a.add(row, unknown(i, j + 1, m), ct);
            } else {
                a.add(row, unknown(i, j - 1, m), ct);
            }
        }
    }
    a
}

pub fn solve_mixed_bvp(
    geom: &WedgeGeometry,
    grid: &LogRadialGrid,
    f: &[f64],
    arc_bc: &ArcBc,
) -> Result<HarmonicField> {
    MixedBvpSolver::new(geom, grid, arc_bc.kind())?.solve(f, arc_bc)
}

/// Largest `|u_ρρ + u_θθ|` over nodes carrying the interior stencil, using the
/// Neumann ghost value on `θ = α`.
pub fn residual(field: &HarmonicField) -> f64 {
    let g = field.grid();
    let (n_r, n_t) = (g.n_r(), g.n_theta());
    let m = n_t - 1;
    let cr = 1.0 / (g.d_rho() * g.d_rho());
    let ct = 1.0 / (g.d_theta() * g.d_theta());
    let mut worst = 0.0f64;
    for i in 1..n_r - 1 {
        for j in 1..=m {
            let c = field.get(i, j);
            let up = if j < m { field.get(i, j + 1) } else { field.get(i, j - 1) };
            let r = cr * (field.get(i - 1, j) - 2.0 * c + field.get(i + 1, j))
                + ct * (field.get(i, j - 1) - 2.0 * c + up);
            worst = worst.max(r.abs());
        }
    }
    worst
}

/// Outward normal derivative on `Γ1`: `-(1/r) ∂u/∂θ` with the one-sided
/// second-order difference at `θ = 0`.
pub fn normal_derivative_on_gamma1(field: &HarmonicField) -> Result<Vec<f64>> {
    let g = field.grid();
    if g.n_theta() < 3 {
        return Err(Error::InvalidInput("flux stencil needs n_theta >= 3".into()));
    }
    let h2 = 2.0 * g.d_theta();
    Ok(g.r()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let d = (-3.0 * field.get(i, 0) + 4.0 * field.get(i, 1) - field.get(i, 2)) / h2;
            -d / r
        })
        .collect())
}
