//! Invariant suites behind `twotime report`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use anyhow::Result;
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twotime::correlators::{prepare_eigenstate, realize, TwoTimeKind, TwoTimeOperator};
use twotime::dynamics::ChannelFamily;
use twotime::gaussian::{
    displacement_stats, position_covariance, uncertainty_report, FreeParticle, GaussianPrep,
};
use twotime::qcore::random::random_hermitian;
use twotime::qcore::{c64, identity, max_abs, max_distance, pauli_vector, sample_bloch_vector};
use twotime::realism::irreality;
use twotime::spinlab::{
    bound_rhs, dot, figure1_scan, finite_torque, instantaneous_torque, pauli_heisenberg,
    torque_irreality_pair, torque_irreality_pair_numeric, PrecessionConfig, FIGURE1_RADII,
};
use twotime::{Axis, BlochVector, Observable};

use crate::commands::BOUND_TOLERANCE;
use crate::{Check, RunConfig, Summary};

/// Band minima must sit within this polar distance of the equator.
pub const BAND_THETA_WINDOW: f64 = 0.1;
/// Band minima may exceed the analytic curve minimum by at most this much.
pub const BAND_EXCESS: f64 = 0.01;
pub const ATTAINMENT_TOLERANCE: f64 = 1e-9;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;
pub const REALITY_TOLERANCE: f64 = 1e-10;
pub const GAUSSIAN_TOLERANCE: f64 = 1e-12;
pub const PRECESSION_TOLERANCE: f64 = 1e-12;
pub const DERIVATIVE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    TorqueBound,
    Eigenprep,
    Displacement,
    Precession,
}

pub fn cmd_report(cfg: &RunConfig, scenario: Scenario) -> Result<Summary> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match scenario {
        Scenario::TorqueBound => torque_bound(cfg, &mut rng),
        Scenario::Eigenprep => eigenprep(&mut rng),
        Scenario::Displacement => displacement(&mut rng),
        Scenario::Precession => precession(&mut rng),
    }
}

fn torque_bound(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Summary> {
    let mut s = Summary::default();
    let scan = figure1_scan(&FIGURE1_RADII, cfg.samples, cfg.seed)?;
    let n = scan.scatter().count();
    s.check(Check::at_least(
        format!("min torque-bound slack over {n} states and curves"),
        scan.min_slack(),
        -BOUND_TOLERANCE,
    ));
    for m in scan.band_minima() {
        s.note(format!(
            "band r={}: min sum {} at theta={} phi={}, bound {}",
            crate::fmt_num(m.r),
            crate::fmt_num(m.sum),
            crate::fmt_num(m.theta),
            crate::fmt_num(m.phi),
            crate::fmt_num(m.bound_rhs)
        ));
        s.check(Check::at_most(
            format!("band r={} minimum |theta - pi/2|", crate::fmt_num(m.r)),
            (m.theta - FRAC_PI_2).abs(),
            BAND_THETA_WINDOW,
        ));
        s.check(Check::at_most(
            format!("band r={} minimum excess over curve", crate::fmt_num(m.r)),
            m.sum - m.bound_rhs,
            BAND_EXCESS,
        ));
    }
    let pair = torque_irreality_pair(&BlochVector::from_spherical(1.0, FRAC_PI_2, 0.0)?);
    s.check(Check::at_most(
        "attainment at r=1, theta=pi/2, phi=0",
        (pair.sum() - bound_rhs(1.0)?).abs(),
        ATTAINMENT_TOLERANCE,
    ));
    let mut max_diff = 0.0f64;
    for _ in 0..1000 {
        let r = rng.random::<f64>();
        let v = sample_bloch_vector(rng, r)?;
        let a = torque_irreality_pair(&v);
        let b = torque_irreality_pair_numeric(&v)?;
        max_diff = max_diff
            .max((a.irr_spin - b.irr_spin).abs())
            .max((a.irr_torque - b.irr_torque).abs());
    }
    s.check(Check::at_most(
        "closed form vs entropy pipeline, 1000 states",
        max_diff,
        CLOSED_FORM_TOLERANCE,
    ));
    Ok(s)
}

fn eigenprep(rng: &mut ChaCha8Rng) -> Result<Summary> {
    let mut s = Summary::default();
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let d = 2 + trial % 3;
        let channel = ChannelFamily::unitary(random_hermitian(rng, d))?;
        let kind = if trial % 2 == 0 {
            TwoTimeKind::Product
        } else {
            TwoTimeKind::Sum
        };
        let c = TwoTimeOperator::new(
            kind,
            Observable::new(random_hermitian(rng, d))?,
            Observable::new(random_hermitian(rng, d))?,
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            channel,
        )?;
        let realized = realize(&c)?;
        for k in 0..realized.spectrum().len() {
            worst = worst.max(
                irreality(&realized, &prepare_eigenstate(&c, k)?)?
                    .irreality
                    .abs(),
            );
        }
    }
    s.check(Check::at_most(
        "max irreality of C12 eigenstate preparations, 100 operators",
        worst,
        REALITY_TOLERANCE,
    ));

    let channel = ChannelFamily::precession(&Vector3::z())?;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (t1, t2) = (rng.random_range(-TAU..TAU), rng.random_range(-TAU..TAU));
        let c = TwoTimeOperator::product(
            Observable::spin_half(Axis::X),
            Observable::spin_half(Axis::Y),
            t1,
            t2,
            channel.clone(),
        )?;
        let expected = identity(2) * c64(0.25 * (t2 - t1).sin(), 0.0);
        worst = worst.max(max_distance(&c.matrix()?, &expected));
    }
    s.check(Check::at_most(
        "max |1/2{Sx(t1), Sy(t2)} - sin(t2 - t1)/4|",
        worst,
        REALITY_TOLERANCE,
    ));
    Ok(s)
}

/// Valid preparation with `dx` spread over four decades and a random
/// admissible covariance.
pub fn random_prep(rng: &mut impl Rng) -> Result<GaussianPrep> {
    let dx = 10f64.powf(rng.random_range(-2.0..2.0));
    let dp = 0.5 / dx * (1.0 + rng.random_range(0.0..3.0f64).powi(2));
    let max_cov = (dx * dx * dp * dp - 0.25).max(0.0).sqrt();
    let cov = max_cov * rng.random_range(-1.0..1.0);
    Ok(GaussianPrep::new(
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        dx,
        dp,
        cov,
    )?)
}

fn displacement(rng: &mut ChaCha8Rng) -> Result<Summary> {
    let mut s = Summary::default();
    let (mut product, mut sum) = (f64::INFINITY, f64::INFINITY);
    let (mut closed, mut joint) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let g = random_prep(rng)?;
        let fp = FreeParticle::new(10f64.powf(rng.random_range(-1.0..1.0)))?;
        let t1 = rng.random_range(0.0..5.0);
        let t2 = t1 + rng.random_range(1e-6..5.0);
        let r = uncertainty_report(&g, &fp, t1, t2)?;
        product = product.min(r.product_slack);
        sum = sum.min(r.displacement_slack);
        let (_, spread) = displacement_stats(&g, &fp, t1, t2)?;
        closed = closed.max((spread - g.dp * (t2 - t1) / fp.mass()).abs());
        let var =
            r.spread_x1.powi(2) + r.spread_x2.powi(2) - 2.0 * position_covariance(&g, &fp, t1, t2);
        joint = joint.max((var - spread * spread).abs() / (1.0 + r.spread_x2.powi(2)));
    }
    s.check(Check::at_most("max |spread - dp dt/m|", closed, 0.0));
    s.check(Check::at_least(
        "min slack of dX1 dX2 >= dt/2m",
        product,
        -GAUSSIAN_TOLERANCE,
    ));
    s.check(Check::at_least(
        "min slack of d(delta) (dX1 + dX2) >= dt/m",
        sum,
        -GAUSSIAN_TOLERANCE,
    ));
    s.check(Check::at_most(
        "max relative Var(X2 - X1) mismatch",
        joint,
        1e-9,
    ));
    Ok(s)
}

/// Uniform direction on the sphere.
pub fn random_axis(rng: &mut impl Rng) -> Vector3<f64> {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi = rng.random_range(0.0..TAU);
    let rho = (1.0 - z * z).sqrt();
    Vector3::new(rho * phi.cos(), rho * phi.sin(), z)
}

fn precession(rng: &mut ChaCha8Rng) -> Result<Summary> {
    let mut s = Summary::default();
    let sigma = pauli_vector();
    let (mut closed, mut transverse, mut derivative) = (0.0f64, 0.0f64, 0.0f64);
    let eps = 1e-5;
    for _ in 0..100 {
        let h = random_axis(rng);
        let tau = rng.random_range(-2.0 * PI..2.0 * PI);
        let channel = ChannelFamily::precession(&h)?;
        let formula = pauli_heisenberg(&PrecessionConfig::new(h, tau)?);
        for (f, x) in formula.iter().zip(&sigma) {
            closed = closed.max(max_distance(f, &channel.heisenberg(x, tau)?));
        }
        let torque = instantaneous_torque(&h, tau)?;
        transverse = transverse.max(max_abs(&dot(&h, &torque)));
        let central = finite_torque(&h, tau - eps, tau + eps)?;
        for (t, c) in torque.iter().zip(&central) {
            derivative = derivative.max(max_distance(t, c));
        }
    }
    s.check(Check::at_most(
        "max |closed-form sigma(tau) - U^dag sigma U|",
        closed,
        PRECESSION_TOLERANCE,
    ));
    s.check(Check::at_most(
        "max |h . T_tau|",
        transverse,
        PRECESSION_TOLERANCE,
    ));
    s.check(Check::at_most(
        "max |T_tau - central difference|",
        derivative,
        DERIVATIVE_TOLERANCE,
    ));
    Ok(s)
}
