//! Discrete Dirichlet-to-Neumann operator on `Γ1`.
//!
//! Column `k` of `L` is the outward flux produced by unit Dirichlet data at
//! surface node `k` (a nodal hat function). With surface weights `w` the core
//! `S = W^{1/2} L W^{-1/2}` represents `Λ` in the weighted `L2(Γ1)` pairing;
//! it is symmetrized and eigendecomposed so that functions of `Λ` can be
//! applied mode by mode.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{ensure_len, Error, Result};
use crate::geometry::WedgeGeometry;
use crate::laplace::{ArcKind, HarmonicField, LogRadialGrid, MixedBvpSolver};

/// Negative eigenvalues above `-CLAMP_TOL * λ_max` are treated as roundoff.
pub const CLAMP_TOL: f64 = 1e-8;

const EIGEN_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone)]
pub struct DtnOperator {
    grid: LogRadialGrid,
    l: DMatrix<f64>,
    weights: Vec<f64>,
    sqrt_w: Vec<f64>,
    sym: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    asymmetry: f64,
    unclamped_min: f64,
    clamped: Vec<usize>,
}

pub fn assemble_dtn(geom: &WedgeGeometry, grid: &LogRadialGrid) -> Result<DtnOperator> {
    let solver = MixedBvpSolver::new(geom, grid, ArcKind::RobinAsymptotic)?;
    let n = grid.n_r();
    let inv_2dt = 1.0 / (2.0 * grid.d_theta());
    let r = grid.r();

    // each column owns its slot; order of completion does not matter
    let columns: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let (l1, l2) = solver.surface_layers_for_hat(k);
            (0..n)
                .map(|i| {
                    let u0 = if i == k { 1.0 } else { 0.0 };
                    -(-3.0 * u0 + 4.0 * l1[i] - l2[i]) * inv_2dt / r[i]
                })
                .collect()
        })
        .collect();
    let l = DMatrix::from_fn(n, n, |i, k| columns[k][i]);
    DtnOperator::from_matrix(grid.clone(), l)
}

impl DtnOperator {
    /// Builds the operator from an already assembled flux matrix.
    pub fn from_matrix(grid: LogRadialGrid, l: DMatrix<f64>) -> Result<Self> {
        let n = grid.n_r();
        ensure_len(n, l.nrows())?;
        ensure_len(n, l.ncols())?;
        if l.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("DtN matrix"));
        }
        let weights = grid.surface_weights().to_vec();
        let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
        let s = DMatrix::from_fn(n, n, |i, k| sqrt_w[i] * l[(i, k)] / sqrt_w[k]);
        let s_max = s.amax();
        let asymmetry = if s_max > 0.0 {
            (&s - s.transpose()).amax() / s_max
        } else {
            0.0
        };
        let sym = (&s + s.transpose()) * 0.5;
        let (mut eigenvalues, eigenvectors) = symmetric_eigen(&sym)?;

        let lambda_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let unclamped_min = eigenvalues.first().copied().unwrap_or(0.0);
        let mut clamped = Vec::new();
        for (k, lam) in eigenvalues.iter_mut().enumerate() {
            if *lam < -CLAMP_TOL * lambda_max {
                return Err(Error::PositivityViolation {
                    eigenvalue: *lam,
                    lambda_max,
                    tol: CLAMP_TOL,
                });
            }
            if *lam < 0.0 {
                *lam = 0.0;
                clamped.push(k);
            }
        }
        Ok(Self {
            grid,
            l,
            weights,
            sqrt_w,
            sym,
            eigenvalues,
            eigenvectors,
            asymmetry,
            unclamped_min,
            clamped,
        })
    }

    pub fn grid(&self) -> &LogRadialGrid {
        &self.grid
    }
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.l
    }
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    pub fn symmetrized_core(&self) -> &DMatrix<f64> {
        &self.sym
    }
    /// Ascending, nonnegative after clamping.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }
    /// `max|S - Sᵀ| / max|S|` before symmetrization.
    pub fn asymmetry(&self) -> f64 {
        self.asymmetry
    }
    pub fn unclamped_min_eigenvalue(&self) -> f64 {
        self.unclamped_min
    }
    /// Indices of eigenvalues that were raised to zero.
    pub fn clamped(&self) -> &[usize] {
        &self.clamped
    }
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        ensure_len(self.dim(), f.len())?;
        Ok((&self.l * DVector::from_column_slice(f)).as_slice().to_vec())
    }

    /// `⟨Λf, f⟩_w = Σ w_i f_i (L f)_i`.
    pub fn quadratic_form(&self, f: &[f64]) -> Result<f64> {
        let lf = self.apply(f)?;
        Ok(self
            .weights
            .iter()
            .zip(f)
            .zip(&lf)
            .map(|((w, a), b)| w * a * b)
            .sum())
    }

    /// Weighted inner product `Σ w_i f_i g_i`.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        self.weights.iter().zip(f).zip(g).map(|((w, a), b)| w * a * b).sum()
    }

    /// Recomputes the eigendecomposition of the symmetrized core.
    pub fn eigendecompose(&self) -> Result<(Vec<f64>, DMatrix<f64>)> {
        symmetric_eigen(&self.sym)
    }

    /// Spectral coordinates `Qᵀ W^{1/2} v`.
    pub fn to_spectral(&self, v: &[f64]) -> Result<Vec<f64>> {
        ensure_len(self.dim(), v.len())?;
        let scaled = DVector::from_iterator(self.dim(), v.iter().zip(&self.sqrt_w).map(|(a, s)| a * s));
        Ok(self.eigenvectors.tr_mul(&scaled).as_slice().to_vec())
    }

    /// Inverse of [`Self::to_spectral`]: `W^{-1/2} Q a`.
    pub fn from_spectral(&self, a: &[f64]) -> Result<Vec<f64>> {
        ensure_len(self.dim(), a.len())?;
        let y = &self.eigenvectors * DVector::from_column_slice(a);
        Ok(y.iter().zip(&self.sqrt_w).map(|(v, s)| v / s).collect())
    }

    /// Surface function of the `k`-th eigenmode, `W^{-1/2} q_k`.
    pub fn mode(&self, k: usize) -> Vec<f64> {
        self.eigenvectors
            .column(k)
            .iter()
            .zip(&self.sqrt_w)
            .map(|(q, s)| q / s)
            .collect()
    }
}

/// Symmetric eigendecomposition (Householder tridiagonalization followed by
/// implicit QR), sorted ascending.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, EIGEN_MAX_ITER)
        .ok_or(Error::NoConvergence)?;
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, c| eig.eigenvectors[(i, order[c])]);
    Ok((values, vectors))
}

/// Tensor-trapezoid quadrature of `u_ρ² + u_θ²` over the `(ρ, θ)` rectangle,
/// which equals `∫∫ |∇u|² dx` because the log map absorbs the Jacobian.
pub fn dirichlet_energy(field: &HarmonicField) -> f64 {
    let g = field.grid();
    let (n_r, n_t) = (g.n_r(), g.n_theta());
    let (hr, ht) = (g.d_rho(), g.d_theta());
    let deriv = |get: &dyn Fn(usize) -> f64, k: usize, n: usize, h: f64| -> f64 {
        if k == 0 {
            (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h)
        } else if k == n - 1 {
            (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h)
        } else {
            (get(k + 1) - get(k - 1)) / (2.0 * h)
        }
    };
    let mut total = 0.0;
    for i in 0..n_r {
        let wr = if i == 0 || i == n_r - 1 { 0.5 * hr } else { hr };
        for j in 0..n_t {
            let wt = if j == 0 || j == n_t - 1 { 0.5 * ht } else { ht };
            let ur = deriv(&|k| field.get(k, j), i, n_r, hr);
            let ut = deriv(&|k| field.get(i, k), j, n_t, ht);
            total += wr * wt * (ur * ur + ut * ut);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplace::{normal_derivative_on_gamma1, solve_mixed_bvp, ArcBc};
    use crate::modes::cosine_mode_eval;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn op(alpha: f64, r_min: f64, r_max: f64, n_r: usize, n_t: usize) -> (WedgeGeometry, DtnOperator) {
        let geom = WedgeGeometry::new(alpha).unwrap();
        let grid = LogRadialGrid::new(r_min, r_max, n_r, n_t, alpha).unwrap();
        let op = assemble_dtn(&geom, &grid).unwrap();
        (geom, op)
    }

    fn bump(grid: &LogRadialGrid, c: f64, w: f64) -> Vec<f64> {
        grid.r().iter().map(|r| (-((r - c) / w).powi(2)).exp()).collect()
    }

    #[test]
    fn columns_are_hat_responses() {
        let (_, op) = op(PI / 2.0, 0.1, 10.0, 24, 12);
        for k in [0, 5, 23] {
            let mut e = vec![0.0; 24];
            e[k] = 1.0;
            let col = op.apply(&e).unwrap();
            for i in 0..24 {
                assert_eq!(col[i], op.matrix()[(i, k)]);
            }
        }
        assert_eq!(op.apply(&[0.0; 24]).unwrap(), vec![0.0; 24]);
        assert!(op.apply(&[0.0; 23]).is_err());
    }

    #[test]
    fn apply_matches_direct_solve() {
        let alpha = 1.1;
        let (geom, op) = op(alpha, 0.05, 20.0, 40, 20);
        let f = bump(op.grid(), 1.0, 0.3);
        let direct = normal_derivative_on_gamma1(
            &solve_mixed_bvp(&geom, op.grid(), &f, &ArcBc::RobinAsymptotic).unwrap(),
        )
        .unwrap();
        let via = op.apply(&f).unwrap();
        let scale = direct.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (a, b) in via.iter().zip(&direct) {
            assert!((a - b).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn spectral_invariants() {
        let (_, op) = op(2.5, 0.01, 100.0, 48, 24);
        let (lam, q) = (op.eigenvalues(), op.eigenvectors());
        assert!(lam.windows(2).all(|w| w[0] <= w[1]));
        assert!(lam.iter().all(|&l| l >= 0.0));
        let n = lam.len();
        let qtq = q.transpose() * q;
        assert!((qtq - DMatrix::<f64>::identity(n, n)).amax() <= 1e-10);
        let rec = q * DMatrix::from_diagonal(&DVector::from_column_slice(lam)) * q.transpose();
        let s = op.symmetrized_core();
        assert!((rec - s).amax() <= 1e-10 * s.amax());
        assert!(op.unclamped_min_eigenvalue() >= -CLAMP_TOL * op.lambda_max());
    }

    #[test]
    fn weighted_symmetry_on_random_pairs() {
        let (_, op) = op(PI / 3.0, 0.01, 100.0, 48, 24);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let norm = |f: &[f64]| op.inner(f, f).sqrt();
        let slack = op.asymmetry().max(1e-12) * op.symmetrized_core().amax();
        for _ in 0..100 {
            let f: Vec<f64> = (0..48).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let g: Vec<f64> = (0..48).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let lhs = op.inner(&op.apply(&f).unwrap(), &g);
            let rhs = op.inner(&f, &op.apply(&g).unwrap());
            assert!((lhs - rhs).abs() <= slack * norm(&f) * norm(&g) * 48.0);
        }
    }

    #[test]
    fn quadratic_form_is_positive_and_matches_energy() {
        let alpha = PI / 2.0;
        let (geom, op) = op(alpha, 0.01, 100.0, 96, 48);
        let f = bump(op.grid(), 1.0, 0.5);
        let q = op.quadratic_form(&f).unwrap();
        assert!(q > 0.0);
        assert_eq!(op.quadratic_form(&[0.0; 96]).unwrap(), 0.0);
        let u = solve_mixed_bvp(&geom, op.grid(), &f, &ArcBc::RobinAsymptotic).unwrap();
        let e = dirichlet_energy(&u);
        assert!((q - e).abs() / e <= 0.05, "q = {q}, e = {e}");
    }

    #[test]
    fn energy_of_coordinate_function() {
        // u = x2 on the quarter sector: |∇u| = 1, energy = sector area
        let alpha = PI / 2.0;
        let grid = LogRadialGrid::new(0.5, 2.0, 96, 48, alpha).unwrap();
        let u = HarmonicField::from_fn(&grid, |r, t| cosine_mode_eval(1.0, alpha, r, t));
        let exact = PI / 4.0 * (4.0 - 0.25);
        assert!((dirichlet_energy(&u) - exact).abs() / exact < 0.01);
        let c = HarmonicField::from_fn(&grid, |_, _| 2.0);
        assert!(dirichlet_energy(&c).abs() < 1e-20);
    }

    #[test]
    fn energy_of_cosine_mode_converges() {
        let (mu, alpha) = (1.7, 3.0 * PI / 4.0);
        let (a, b) = (0.5f64, 2.0f64);
        let exact = mu * alpha * (b.powf(2.0 * mu) - a.powf(2.0 * mu)) / 2.0;
        let err = |n: usize| {
            let grid = LogRadialGrid::new(a, b, n, n / 2, alpha).unwrap();
            let u = HarmonicField::from_fn(&grid, |r, t| cosine_mode_eval(mu, alpha, r, t));
            (dirichlet_energy(&u) - exact).abs() / exact
        };
        let (e1, e2) = (err(48), err(96));
        assert!(e1 < 0.02, "{e1}");
        assert!((e1 / e2).log2() > 1.8, "{e1} {e2}");
    }

    #[test]
    fn dilation_scales_operator_by_inverse_factor() {
        let alpha = 1.3;
        let (geom, op1) = op(alpha, 0.1, 10.0, 32, 16);
        let grid2 = op1.grid().dilated(2.0).unwrap();
        let op2 = assemble_dtn(&geom, &grid2).unwrap();
        let f1 = bump(op1.grid(), 1.0, 0.4);
        // f2(r) = f1(r / 2) sampled on the dilated nodes
        let f2 = bump(&grid2, 2.0, 0.8);
        let g1 = op1.apply(&f1).unwrap();
        let g2 = op2.apply(&f2).unwrap();
        let scale = g1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (a, b) in g1.iter().zip(&g2) {
            assert!((b - 0.5 * a).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn smallest_eigenvalue_drops_with_domain_size() {
        let (_, small) = op(PI / 2.0, 0.1, 10.0, 40, 16);
        let (_, large) = op(PI / 2.0, 0.1, 20.0, 43, 16);
        assert!(large.eigenvalues()[0] < small.eigenvalues()[0]);
    }

    #[test]
    fn spectral_round_trip() {
        let (_, op) = op(0.9, 0.1, 10.0, 24, 12);
        let f = bump(op.grid(), 1.0, 0.5);
        let back = op.from_spectral(&op.to_spectral(&f).unwrap()).unwrap();
        for (a, b) in f.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn positivity_violation_is_reported() {
        let grid = LogRadialGrid::new(0.1, 10.0, 8, 8, 1.0).unwrap();
        let mut l = DMatrix::<f64>::identity(8, 8);
        l[(0, 0)] = -1.0;
        assert!(matches!(
            DtnOperator::from_matrix(grid.clone(), l),
            Err(Error::PositivityViolation { .. })
        ));
        let mut l = DMatrix::<f64>::identity(8, 8);
        l[(0, 0)] = -1e-12;
        let op = DtnOperator::from_matrix(grid, l).unwrap();
        assert_eq!(op.clamped(), &[0]);
        assert_eq!(op.eigenvalues()[0], 0.0);
    }
}
