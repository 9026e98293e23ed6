//! Linear water waves on a two-dimensional wedge.
//!
//! The fluid fills the sector of angle `α ∈ (0, π]` between a free surface
//! `Γ1` and a rigid wall `Γ2`. The crate discretizes the mixed
//! Dirichlet/Neumann Laplace problem on a log-polar grid ([`laplace`]),
//! assembles the Dirichlet-to-Neumann operator `Λ` ([`dtn`]), evolves the
//! surface with the exact spectral propagator and Duhamel forcing integral
//! ([`evolution`]), and evaluates the corner symbol that certifies the
//! solvability exponent ([`corner`]).

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corner;
pub mod dtn;
pub mod error;
pub mod evolution;
pub mod geometry;
pub mod laplace;
pub mod modes;
pub mod oracles;

pub use dtn::{assemble_dtn, dirichlet_energy, DtnOperator};
pub use error::{Error, Result};
pub use evolution::{simulate, ForcingSpec, SimulationConfig, SurfaceState};
pub use geometry::WedgeGeometry;
pub use laplace::{normal_derivative_on_gamma1, residual, solve_mixed_bvp, ArcBc, HarmonicField, LogRadialGrid};
