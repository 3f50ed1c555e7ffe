//! Table-producing subcommands.

use std::f64::consts::PI;

use anyhow::{bail, Result};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twotime::correlators::{correlator_gap, lambda_operator, qutrit_gap_fixture, QutritGapFixture};
use twotime::dynamics::{evolve_state, ChannelFamily};
use twotime::qcore::random::{
    random_density_matrix, random_hermitian, random_observable, random_observable_with_spectrum,
};
use twotime::qcore::{c64, CMatrix};
use twotime::spinlab::figure1_scan;
use twotime::DensityMatrix;

use crate::output::{fmt_num, Table};
use crate::{Check, RunConfig, Summary};

/// Tolerance on the torque bound for every Figure-1 row.
pub const BOUND_TOLERANCE: f64 = 1e-9;
pub const GAP_TOLERANCE: f64 = 1e-10;
pub const FIXTURE_MIN_GAP: f64 = 1e-6;
pub const NU_TOLERANCE: f64 = 1e-10;

pub const SCATTER_HEADER: [&str; 5] = ["r", "theta", "phi", "irr_spin", "irr_torque"];
pub const CURVES_HEADER: [&str; 4] = ["r", "phi", "irr_spin", "irr_torque"];
pub const LAMBDA_HEADER: [&str; 4] = ["theta", "nu_norm", "min_eigenvalue", "physical"];

/// Figure-1 scatter and boundary-curve tables.
pub fn cmd_figure1(cfg: &RunConfig, r_list: &[f64]) -> Result<Summary> {
    let scan = figure1_scan(r_list, cfg.samples, cfg.seed)?;
    let mut scatter = Table::new(&SCATTER_HEADER);
    let mut curves = Table::new(&CURVES_HEADER);
    for rec in &scan.records {
        if rec.is_curve {
            curves.push(
                [rec.r, rec.phi, rec.irr_spin, rec.irr_torque]
                    .map(fmt_num)
                    .to_vec(),
            );
        } else {
            scatter.push(
                [rec.r, rec.theta, rec.phi, rec.irr_spin, rec.irr_torque]
                    .map(fmt_num)
                    .to_vec(),
            );
        }
    }
    let mut summary = Summary::default();
    summary.note(format!(
        "figure1: seed {}, {} scatter rows, {} curve rows",
        cfg.seed,
        scatter.rows.len(),
        curves.rows.len()
    ));
    summary.check(Check::at_least(
        "min torque-bound slack",
        scan.min_slack(),
        -BOUND_TOLERANCE,
    ));
    if let Some(rec) = scan.first_violation(BOUND_TOLERANCE) {
        summary.note(format!(
            "violating row: r={} theta={} phi={} irr_spin={} irr_torque={} bound={}",
            fmt_num(rec.r),
            fmt_num(rec.theta),
            fmt_num(rec.phi),
            fmt_num(rec.irr_spin),
            fmt_num(rec.irr_torque),
            fmt_num(rec.bound_rhs)
        ));
    }
    summary
        .written
        .push(scatter.write(&cfg.out_dir, "figure1_scatter", cfg.format)?);
    summary
        .written
        .push(curves.write(&cfg.out_dir, "figure1_curves", cfg.format)?);
    Ok(summary)
}

/// Pure qubit `ψ = (cos θ/2, sin θ/2)`.
pub fn meridian_state(theta: f64) -> DensityMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    DensityMatrix::pure(&DVector::from_vec(vec![c64(c, 0.0), c64(s, 0.0)])).expect("unit vector")
}

/// `Λ` for the `σ_z = −1` outcome on `θ_k = πk/steps`, `k = 1..=steps`.
pub fn cmd_lambda(cfg: &RunConfig, theta_steps: usize) -> Result<Summary> {
    if theta_steps < 2 {
        bail!("theta-steps must be at least 2");
    }
    let alpha = CMatrix::from_diagonal(&DVector::from_vec(vec![c64(0.0, 0.0), c64(1.0, 0.0)]));
    let channel = ChannelFamily::trivial(2);
    let mut table = Table::new(&LAMBDA_HEADER);
    let mut max_err = 0.0f64;
    let mut physical = 0;
    let mut physical_elsewhere = 0;
    let mut physical_at_pi = false;
    for k in 1..=theta_steps {
        let theta = PI * (k as f64 / theta_steps as f64);
        let report = lambda_operator(&alpha, &meridian_state(theta), 0.0, &channel)?;
        let nu = report.bloch_vector().expect("qubit").norm();
        max_err = max_err.max((nu - 1.0 / (theta / 2.0).sin().abs()).abs());
        if report.physical {
            physical += 1;
            if k == theta_steps {
                physical_at_pi = true;
            } else {
                physical_elsewhere += 1;
            }
        }
        table.push(vec![
            fmt_num(theta),
            fmt_num(nu),
            fmt_num(report.min_eigenvalue),
            report.physical.to_string(),
        ]);
    }
    let mut summary = Summary::default();
    summary.note(format!(
        "lambda: physical fraction {physical}/{theta_steps} ({})",
        fmt_num(physical as f64 / theta_steps as f64)
    ));
    summary.check(Check::at_most(
        "max |nu_norm - 1/|sin(theta/2)||",
        max_err,
        NU_TOLERANCE,
    ));
    summary.check(Check::at_least(
        "physical at theta = pi",
        f64::from(u8::from(physical_at_pi)),
        1.0,
    ));
    summary.check(Check::at_most(
        "physical points away from theta = pi",
        physical_elsewhere as f64,
        0.0,
    ));
    summary
        .written
        .push(table.write(&cfg.out_dir, "lambda", cfg.format)?);
    Ok(summary)
}

fn random_interval(rng: &mut impl Rng) -> (f64, f64) {
    let t1 = rng.random_range(-2.0..2.0);
    (t1, t1 + rng.random_range(0.01..3.0))
}

/// Instance whose state at `t₁` commutes with `A`, so `A` is real at `t₁`.
fn realist_gap(rng: &mut impl Rng, dim: usize) -> Result<f64> {
    let channel = ChannelFamily::unitary(random_hermitian(rng, dim))?;
    let a = random_observable(rng, dim);
    let b = random_observable(rng, dim);
    let (t1, t2) = random_interval(rng);
    let weights: Vec<f64> = a.spectrum().iter().map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    let rho_t1 = a
        .spectrum()
        .iter()
        .zip(&weights)
        .fold(CMatrix::zeros(dim, dim), |acc, (c, w)| {
            acc + &c.projector * c64(w / total, 0.0)
        });
    let rho0 = evolve_state(&channel, &DensityMatrix::new(rho_t1)?, -t1)?;
    Ok(correlator_gap(&a, &b, t1, t2, &channel, &rho0)?.gap)
}

/// TPM versus Heisenberg correlator gaps.
pub fn cmd_tpm_gap(cfg: &RunConfig, dim: usize, trials: usize) -> Result<Summary> {
    if !(2..=3).contains(&dim) {
        bail!("dim must be 2 or 3, got {dim}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut summary = Summary::default();
    let mut max_gap = 0.0f64;
    for _ in 0..trials {
        let (a, b) = if dim == 2 {
            (
                random_observable_with_spectrum(&mut rng, &[1.0, -1.0]),
                random_observable_with_spectrum(&mut rng, &[1.0, -1.0]),
            )
        } else {
            (
                random_observable(&mut rng, dim),
                random_observable(&mut rng, dim),
            )
        };
        let rho = random_density_matrix(&mut rng, dim);
        let channel = ChannelFamily::unitary(random_hermitian(&mut rng, dim))?;
        let (t1, t2) = random_interval(&mut rng);
        max_gap = max_gap.max(correlator_gap(&a, &b, t1, t2, &channel, &rho)?.gap);
    }
    if dim == 2 {
        summary.check(Check::at_most(
            format!("max gap, {trials} qubit instances with ±1 spectra"),
            max_gap,
            GAP_TOLERANCE,
        ));
    } else {
        summary.note(format!(
            "max gap over {trials} random qutrit instances: {}",
            fmt_num(max_gap)
        ));
        let gap = qutrit_gap_fixture().gap()?;
        summary.note(format!("fixture tpm correlator: {}", fmt_num(gap.tpm)));
        summary.note(format!(
            "fixture heisenberg correlator: {}",
            fmt_num(gap.heisenberg)
        ));
        summary.check(Check::at_least("fixture gap", gap.gap, FIXTURE_MIN_GAP));
        summary.check(Check::at_most(
            "fixture tpm deviation",
            (gap.tpm - QutritGapFixture::TPM).abs(),
            1e-12,
        ));
        summary.check(Check::at_most(
            "fixture heisenberg deviation",
            (gap.heisenberg - QutritGapFixture::HEISENBERG).abs(),
            1e-12,
        ));
    }
    let mut max_realist = 0.0f64;
    for _ in 0..trials {
        max_realist = max_realist.max(realist_gap(&mut rng, dim)?);
    }
    summary.check(Check::at_most(
        format!("max gap, {trials} instances with A real at t1"),
        max_realist,
        GAP_TOLERANCE,
    ));
    Ok(summary)
}
