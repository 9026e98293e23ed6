//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line with the measured quantities.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use wedgewave::corner::{b2_pm, ln_positive_branch, m0_samples, LAMBDA};
use wedgewave::evolution::{
    apriori_bound_check, duhamel, duhamel_mode, energy, kinematic_consistency, phi_functions,
    propagate_homogeneous, simulate, ForcingSpec, SimulationConfig, SERIES_THRESHOLD,
};
use wedgewave::laplace::convergence::{observed_orders, refinement_study, ManufacturedCase};
use wedgewave::oracles::{gaussian_bump, reflection_dtn_quarter_plane, weighted_relative_difference, UniformLineGrid};
use wedgewave::{assemble_dtn, dirichlet_energy, solve_mixed_bvp, ArcBc, DtnOperator, LogRadialGrid, WedgeGeometry};

const G: f64 = 9.81;

struct Outcome {
    pass: bool,
    detail: String,
    /// Bit patterns of the key numbers, for the reproducibility check.
    digest: Vec<u64>,
}

impl Outcome {
    fn new(pass: bool, detail: String, values: &[f64]) -> Self {
        Self {
            pass,
            detail,
            digest: values.iter().map(|v| v.to_bits()).collect(),
        }
    }
}

fn report(id: usize, name: &str, outcome: &Outcome, elapsed: Duration) {
    let line = format!(
        "criterion {id:>2} [{}] {name}: {} ({:.2} s)\n",
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64()
    );
    // written directly so the line shows even when the harness captures output
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn run(id: usize, name: &str, f: fn() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    report(id, name, &outcome, elapsed);
    (outcome, elapsed)
}

fn quarter_plane(n_r: usize, n_theta: usize, r_min: f64, r_max: f64) -> DtnOperator {
    let alpha = PI / 2.0;
    let grid = LogRadialGrid::new(r_min, r_max, n_r, n_theta, alpha).unwrap();
    assemble_dtn(&WedgeGeometry::new(alpha).unwrap(), &grid).unwrap()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let d = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    d / max_abs(b).max(f64::MIN_POSITIVE)
}

// 1 -------------------------------------------------------------------------

fn corner_condition() -> Outcome {
    let start = Instant::now();
    let (mut b_err, mut beta_err, mut min_m0) = (0.0f64, 0.0f64, f64::INFINITY);
    for k in 1..=50 {
        let alpha = k as f64 * PI / 50.0;
        let (bp, bm) = b2_pm(alpha);
        b_err = b_err.max((-bm / bp + 1.0).norm());
        let beta: Vec<f64> = LAMBDA
            .iter()
            .map(|l| (-Complex64::i() * ln_positive_branch(alpha.cos() + l * alpha.sin())).re)
            .collect();
        beta_err = beta_err.max((beta[0] - (2.0 * PI - alpha)).abs()).max((beta[1] - alpha).abs());
        let samples = m0_samples(alpha, 1.0, 50.0, 2001).unwrap();
        min_m0 = min_m0.min(samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min));
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = b_err <= 1e-12 && beta_err <= 1e-12 && min_m0 >= 1.0 - 1e-12 && secs < 1.0;
    Outcome::new(
        pass,
        format!("max|b20+1| = {b_err:.1e}, max beta error = {beta_err:.1e}, min|M0| = {min_m0:.15}, {secs:.3} s"),
        &[b_err, beta_err, min_m0],
    )
}

#[test]
fn c01_corner_condition() {
    let (o, _) = run(1, "corner condition", corner_condition);
    assert!(o.pass, "{}", o.detail);
}

// 2 -------------------------------------------------------------------------

fn manufactured_convergence() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    let mut digest = Vec::new();
    for &(mu, alpha, label) in &[(1.0, PI / 3.0, "pi/3"), (0.8, PI / 2.0, "pi/2"), (1.7, 3.0 * PI / 4.0, "3pi/4")] {
        let levels = refinement_study(&ManufacturedCase::new(mu, alpha), 48, 24, 3).unwrap();
        let orders: Vec<(f64, f64)> = levels.windows(2).map(|w| observed_orders(&w[0], &w[1])).collect();
        let (oi, of) = orders
            .iter()
            .fold((f64::INFINITY, f64::INFINITY), |(a, b), &(x, y)| (a.min(x), b.min(y)));
        pass &= oi >= 1.9 && of >= 1.8;
        parts.push(format!("(mu={mu}, alpha={label}) interior {oi:.3} flux {of:.3}"));
        digest.extend(levels.iter().flat_map(|l| [l.interior_error, l.flux_error]));
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 60.0;
    Outcome::new(pass, format!("min orders {}", parts.join("; ")), &digest)
}

#[test]
fn c02_manufactured_convergence() {
    let (o, _) = run(2, "manufactured-solution convergence", manufactured_convergence);
    assert!(o.pass, "{}", o.detail);
}

// 3 -------------------------------------------------------------------------

/// Below this the asymmetry is rounding noise and its refinement ratio carries
/// no information.
const ASYMMETRY_FLOOR: f64 = 1e3 * f64::EPSILON;

fn symmetry() -> Outcome {
    let coarse = quarter_plane(96, 48, 1e-2, 1e2).asymmetry();
    let fine = quarter_plane(192, 96, 1e-2, 1e2).asymmetry();
    let halves = fine <= 0.5 * coarse || (coarse <= ASYMMETRY_FLOOR && fine <= ASYMMETRY_FLOOR);
    Outcome::new(
        coarse <= 0.05 && halves,
        format!("asymmetry 96x48 = {coarse:.3e}, 192x96 = {fine:.3e} (rounding floor {ASYMMETRY_FLOOR:.1e})"),
        &[coarse, fine],
    )
}

#[test]
fn c03_symmetry() {
    let (o, _) = run(3, "DtN symmetry", symmetry);
    assert!(o.pass, "{}", o.detail);
}

// 4 -------------------------------------------------------------------------

fn green_error(op: &DtnOperator) -> f64 {
    let alpha = PI / 2.0;
    let grid = op.grid();
    let f = gaussian_bump(grid, 1.0, 0.5, 1.0).unwrap();
    let u = solve_mixed_bvp(&WedgeGeometry::new(alpha).unwrap(), grid, &f, &ArcBc::RobinAsymptotic).unwrap();
    let energy = dirichlet_energy(&u);
    (op.quadratic_form(&f).unwrap() - energy).abs() / energy
}

fn positivity_and_green() -> Outcome {
    let coarse = quarter_plane(96, 48, 1e-2, 1e2);
    let fine = quarter_plane(192, 96, 1e-2, 1e2);
    let nonneg = coarse.eigenvalues().iter().all(|&l| l >= 0.0);
    let lmin = coarse.unclamped_min_eigenvalue();
    let lmax = coarse.lambda_max();
    let (e1, e2) = (green_error(&coarse), green_error(&fine));
    Outcome::new(
        nonneg && lmin >= -1e-8 * lmax && e1 <= 0.05 && e2 < e1,
        format!("lambda_min = {lmin:.4e}, lambda_max = {lmax:.4e}, Green error 96x48 = {e1:.3e}, 192x96 = {e2:.3e}"),
        &[lmin, lmax, e1, e2],
    )
}

#[test]
fn c04_positivity_and_green_identity() {
    let (o, _) = run(4, "positivity and Green identity", positivity_and_green);
    assert!(o.pass, "{}", o.detail);
}

// 5 -------------------------------------------------------------------------

fn oracle_difference(n_r: usize, n_theta: usize) -> f64 {
    let line = UniformLineGrid::new(0.0, 2.0, 4001).unwrap();
    let (center, width) = (1.0, 2.0 / 30.0);
    let op = quarter_plane(n_r, n_theta, 0.25, 4.0);
    let on_log = op.apply(&gaussian_bump(op.grid(), center, width, 1.0).unwrap()).unwrap();
    let on_line = reflection_dtn_quarter_plane(&line, &gaussian_bump(&line, center, width, 1.0).unwrap()).unwrap();
    weighted_relative_difference(op.grid(), &on_log, &line, &on_line)
}

fn quarter_plane_oracle() -> Outcome {
    let start = Instant::now();
    let coarse = oracle_difference(128, 64);
    let fine = oracle_difference(256, 128);
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        coarse <= 0.05 && fine < coarse && secs < 60.0,
        format!("relative difference 128x64 = {coarse:.4e}, 256x128 = {fine:.4e}, {secs:.1} s"),
        &[coarse, fine],
    )
}

#[test]
fn c05_quarter_plane_oracle() {
    let (o, _) = run(5, "quarter-plane reflection oracle", quarter_plane_oracle);
    assert!(o.pass, "{}", o.detail);
}

// 6 -------------------------------------------------------------------------

fn evolution_operator() -> DtnOperator {
    quarter_plane(64, 32, 0.1, 10.0)
}

fn bump_on(op: &DtnOperator, c: f64, w: f64) -> Vec<f64> {
    op.grid().r().iter().map(|r| (-((r - c) / w).powi(2)).exp()).collect()
}

fn propagator_exactness() -> Outcome {
    let op = evolution_operator();
    let n = op.dim();
    let v0 = bump_on(&op, 1.0, 0.4);
    let v1 = bump_on(&op, 3.0, 0.8);

    let (a, b) = propagate_homogeneous(&op, G, &v0, &v1, 0.0).unwrap();
    let identity = rel_diff(&a, &v0).max(rel_diff(&b, &v1));

    let mut single = 0.0f64;
    for k in [0, 7, n / 2, n - 1] {
        let q = op.mode(k);
        let omega = (G * op.eigenvalues()[k]).sqrt();
        for t in [0.5, 3.0, 20.0] {
            let (v, _) = propagate_homogeneous(&op, G, &q, &vec![0.0; n], t).unwrap();
            let expect: Vec<f64> = q.iter().map(|x| (omega * t).cos() * x).collect();
            let d = v.iter().zip(&expect).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            single = single.max(d / max_abs(&q));
        }
    }

    let cfg = SimulationConfig {
        g: G,
        t_final: 100.0,
        dt_out: 1.0,
        eta0: bump_on(&op, 1.0, 0.4),
        v0: v0.clone(),
        forcing: ForcingSpec::None {},
        n_sub: 1,
    };
    let traj = simulate(&op, &cfg).unwrap();
    let e0 = energy(&op, G, &traj[0].v, &traj[0].v_t).unwrap();
    let drift = traj
        .iter()
        .map(|s| (energy(&op, G, &s.v, &s.v_t).unwrap() - e0).abs() / e0)
        .fold(0.0, f64::max);
    let bound = apriori_bound_check(&op, G, &cfg, &traj).unwrap();

    let t1 = 1.7;
    let (va, vta) = propagate_homogeneous(&op, G, &v0, &v1, t1).unwrap();
    let back: Vec<f64> = vta.iter().map(|x| -x).collect();
    let (vr, vtr) = propagate_homogeneous(&op, G, &va, &back, t1).unwrap();
    let minus_v1: Vec<f64> = v1.iter().map(|x| -x).collect();
    let reversal = rel_diff(&vr, &v0).max(rel_diff(&vtr, &minus_v1));
    let t2 = 4.2;
    let (vb, vtb) = propagate_homogeneous(&op, G, &va, &vta, t2).unwrap();
    let (vc, vtc) = propagate_homogeneous(&op, G, &v0, &v1, t1 + t2).unwrap();
    let semigroup = rel_diff(&vb, &vc).max(rel_diff(&vtb, &vtc));

    let pass = identity <= 1e-13 && single <= 1e-12 && drift <= 1e-10 && reversal <= 1e-10 && semigroup <= 1e-10 && bound.pass;
    Outcome::new(
        pass,
        format!(
            "t=0 {identity:.1e}, single mode {single:.1e}, energy drift {drift:.1e}, reversal {reversal:.1e}, semigroup {semigroup:.1e}"
        ),
        &[identity, single, drift, reversal, semigroup],
    )
}

#[test]
fn c06_propagator_exactness() {
    let (o, _) = run(6, "propagator exactness", propagator_exactness);
    assert!(o.pass, "{}", o.detail);
}

// 7 -------------------------------------------------------------------------

fn duhamel_checks() -> Outcome {
    let c = 0.7;
    let mut scalar = 0.0f64;
    for z in [1e-6f64, 0.05, 1.0, 9.81, 400.0] {
        for t in [0.1, 1.0, 12.5] {
            let (v, _) = duhamel_mode(z, t, &[c; 9]);
            let w = f64::sqrt(z);
            let expect = c * 2.0 * (0.5 * w * t).sin().powi(2) / z;
            scalar = scalar.max((v - expect).abs() / expect.abs());
        }
    }

    let op = evolution_operator();
    let k = 5;
    let mode: Vec<f64> = op.mode(k).iter().map(|x| c * x).collect();
    let constant = ForcingSpec::Tabulated { times: vec![0.0, 1.0], pt: vec![mode.clone(), mode.clone()], p0: None };
    let t = 3.3;
    let (v, _) = duhamel(&op, G, &constant, t, 4).unwrap();
    let z = G * op.eigenvalues()[k];
    let amp = (1.0 - (z.sqrt() * t).cos()) / z;
    let expect: Vec<f64> = mode.iter().map(|x| amp * x).collect();
    scalar = scalar.max(rel_diff(&v, &expect));

    let r = op.grid().r();
    let f1 = ForcingSpec::SeparableGaussian { amplitude: 1.0, r0: 1.0, sigma: 0.3, t0: 1.0, tau_w: 0.5 };
    let f2 = ForcingSpec::SeparableGaussian { amplitude: -0.4, r0: 3.0, sigma: 0.6, t0: 2.0, tau_w: 0.8 };
    let times: Vec<f64> = (0..=40).map(|k| k as f64 * 0.1).collect();
    let table = |f: &ForcingSpec| times.iter().map(|&t| f.pressure_rate(r, t)).collect::<Vec<_>>();
    let (p1, p2) = (table(&f1), table(&f2));
    let sum: Vec<Vec<f64>> = p1.iter().zip(&p2).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
    let tab = |pt| ForcingSpec::Tabulated { times: times.clone(), pt, p0: None };
    let (a, at) = duhamel(&op, G, &tab(p1), 3.0, 30).unwrap();
    let (b, bt) = duhamel(&op, G, &tab(p2), 3.0, 30).unwrap();
    let (s, st) = duhamel(&op, G, &tab(sum), 3.0, 30).unwrap();
    let ab: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let abt: Vec<f64> = at.iter().zip(&bt).map(|(x, y)| x + y).collect();
    let superposition = rel_diff(&s, &ab).max(rel_diff(&st, &abt));

    // both sides of the series switch of the propagator functions
    let mut jump = 0.0f64;
    for t in [1e-3, 1.0, 1e3] {
        let z_switch = SERIES_THRESHOLD / (t * t);
        let (c_lo, s_lo) = phi_functions(z_switch * (1.0 - 1e-12), t).unwrap();
        let (c_hi, s_hi) = phi_functions(z_switch * (1.0 + 1e-12), t).unwrap();
        jump = jump.max((c_lo - c_hi).abs()).max((s_lo - s_hi).abs() / t);
    }

    let pass = scalar <= 1e-10 && superposition <= 1e-12 && jump <= 1e-13;
    Outcome::new(
        pass,
        format!("constant forcing {scalar:.1e}, superposition {superposition:.1e}, series switch jump {jump:.1e}"),
        &[scalar, superposition, jump],
    )
}

#[test]
fn c07_duhamel() {
    let (o, _) = run(7, "Duhamel forcing integral", duhamel_checks);
    assert!(o.pass, "{}", o.detail);
}

// 8 -------------------------------------------------------------------------

fn apriori_runs() -> Outcome {
    let op = evolution_operator();
    let n = op.dim();
    let r = op.grid().r().to_vec();
    let base = SimulationConfig {
        g: G,
        t_final: 5.0,
        dt_out: 0.25,
        eta0: vec![0.0; n],
        v0: vec![0.0; n],
        forcing: ForcingSpec::None {},
        n_sub: 32,
    };
    let tab_times: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();
    let tabulated = ForcingSpec::Tabulated {
        pt: tab_times
            .iter()
            .map(|&t| r.iter().map(|x| (t * 1.3).sin() * (-((x - 2.0) / 0.7).powi(2)).exp()).collect())
            .collect(),
        times: tab_times,
        p0: Some(bump_on(&op, 2.0, 0.7)),
    };
    let gaussian = ForcingSpec::SeparableGaussian { amplitude: 0.5, r0: 1.0, sigma: 0.3, t0: 1.5, tau_w: 0.5 };
    let scenarios = [
        ("zero", base.clone()),
        ("bump eta0", SimulationConfig { eta0: bump_on(&op, 1.0, 0.3), ..base.clone() }),
        ("bump v0", SimulationConfig { v0: bump_on(&op, 2.0, 0.5), ..base.clone() }),
        ("gaussian forcing", SimulationConfig { forcing: gaussian.clone(), ..base.clone() }),
        (
            "forcing and data",
            SimulationConfig { eta0: bump_on(&op, 1.0, 0.3), v0: bump_on(&op, 3.0, 1.0), forcing: gaussian, ..base.clone() },
        ),
        ("tabulated forcing", SimulationConfig { eta0: bump_on(&op, 1.0, 0.3), forcing: tabulated, ..base.clone() }),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut digest = Vec::new();
    for (name, cfg) in &scenarios {
        let traj = simulate(&op, cfg).unwrap();
        let b = apriori_bound_check(&op, G, cfg, &traj).unwrap();
        pass &= b.pass;
        parts.push(format!("{name} {:.3e} <= {:.3e}", b.lhs, b.rhs));
        digest.extend([b.lhs, b.rhs]);
    }
    Outcome::new(pass, parts.join("; "), &digest)
}

#[test]
fn c08_apriori_bound() {
    let (o, _) = run(8, "a-priori energy bound", apriori_runs);
    assert!(o.pass, "{}", o.detail);
}

// 9 -------------------------------------------------------------------------

fn kinematic_error(op: &DtnOperator, dt_out: f64) -> f64 {
    let n = op.dim();
    let cfg = SimulationConfig {
        g: G,
        t_final: 1.0,
        dt_out,
        eta0: bump_on(op, 1.0, 0.3),
        v0: vec![0.0; n],
        forcing: ForcingSpec::None {},
        n_sub: 1,
    };
    let traj = simulate(op, &cfg).unwrap();
    assert!(apriori_bound_check(op, G, &cfg, &traj).unwrap().pass);
    kinematic_consistency(op, &traj).unwrap().max_abs_error
}

fn kinematic() -> Outcome {
    let op = evolution_operator();
    let e1 = kinematic_error(&op, 0.01);
    let e2 = kinematic_error(&op, 0.005);
    let ratio = e1 / e2;
    let pass = (3.0..=5.0).contains(&ratio) || e1 <= 1e-9;
    Outcome::new(
        pass,
        format!("max |d eta/dt - Lambda v|: dt 0.01 -> {e1:.3e}, dt 0.005 -> {e2:.3e}, ratio {ratio:.3}"),
        &[e1, e2],
    )
}

#[test]
fn c09_kinematic_consistency() {
    let (o, _) = run(9, "kinematic consistency", kinematic);
    assert!(o.pass, "{}", o.detail);
}

// 10 ------------------------------------------------------------------------

type Criterion = (usize, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    (1, "corner condition", corner_condition),
    (2, "manufactured-solution convergence", manufactured_convergence),
    (3, "DtN symmetry", symmetry),
    (4, "positivity and Green identity", positivity_and_green),
    (5, "quarter-plane reflection oracle", quarter_plane_oracle),
    (6, "propagator exactness", propagator_exactness),
    (7, "Duhamel forcing integral", duhamel_checks),
    (8, "a-priori energy bound", apriori_runs),
    (9, "kinematic consistency", kinematic),
];

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let first: Vec<Vec<u64>> = CRITERIA.iter().map(|(_, _, f)| f().digest).collect();
    let once = start.elapsed();
    let second: Vec<Vec<u64>> = CRITERIA.iter().map(|(_, _, f)| f().digest).collect();
    let mismatched: Vec<usize> = first
        .iter()
        .zip(&second)
        .zip(CRITERIA.iter())
        .filter(|((a, b), _)| a != b)
        .map(|(_, c)| c.0)
        .collect();
    Outcome::new(
        mismatched.is_empty() && once < Duration::from_secs(300),
        format!("criteria 1-9 in {:.1} s per pass, bitwise mismatches in {mismatched:?}", once.as_secs_f64()),
        &[],
    )
}

#[test]
fn c10_determinism_and_runtime() {
    let (o, _) = run(10, "end-to-end determinism and runtime", end_to_end);
    assert!(o.pass, "{}", o.detail);
}

#[test]
fn names_are_consistent() {
    for (k, (id, _, _)) in CRITERIA.iter().enumerate() {
        assert_eq!(*id, k + 1);
    }
}
