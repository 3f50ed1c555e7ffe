//! Free-particle displacement statistics through Gaussian moment algebra.
//!
//! With `X_t = X + P t/m`, the displacement `δ₁₂ = X₂ − X₁ = P Δt/m` has
//! spread `Δp Δt/m`, while `[X₁, X₂] = [X_k, δ₁₂] = i Δt/m` forces
//! `ΔX₁ ΔX₂ ≥ Δt/(2m)` and `Δδ₁₂ (ΔX₁ + ΔX₂) ≥ Δt/m`. Everything here uses
//! `ħ = 1`; multiply the bounds by `ħ` to restore units.

use crate::{Error, Result};

/// Gaussian preparation described by its first and second moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPrep {
    pub x0: f64,
    pub p0: f64,
    pub dx: f64,
    pub dp: f64,
    /// Symmetrized covariance `½⟨{X − x₀, P − p₀}⟩`.
    pub xp_corr: f64,
}

impl GaussianPrep {
    /// Requires `dx, dp > 0` and `dx² dp² − xp_corr² ≥ 1/4`.
    pub fn new(x0: f64, p0: f64, dx: f64, dp: f64, xp_corr: f64) -> Result<Self> {
        if !(dx > 0.0) || !(dp > 0.0) {
            return Err(Error::InvalidPreparation {
                reason: format!("spreads must be positive (dx = {dx}, dp = {dp})"),
            });
        }
        let det = dx * dx * dp * dp - xp_corr * xp_corr;
        // Relative slack for minimum-uncertainty states built in floating point.
        if det < 0.25 * (1.0 - 1e-12) {
            return Err(Error::InvalidPreparation {
                reason: format!("dx²dp² − cov² = {det} violates the uncertainty bound 1/4"),
            });
        }
        Ok(Self {
            x0,
            p0,
            dx,
            dp,
            xp_corr,
        })
    }

    /// Minimum-uncertainty, uncorrelated packet with `dp = 1/(2 dx)`.
    pub fn coherent(x0: f64, p0: f64, dx: f64) -> Result<Self> {
        Self::new(x0, p0, dx, 0.5 / dx, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeParticle {
    mass: f64,
}

impl FreeParticle {
    pub fn new(mass: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::OutOfDomain {
                what: "mass",
                value: mass,
            });
        }
        Ok(Self { mass })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
}

/// Mean and spread of `δ₁₂ = P (t₂ − t₁)/m`.
pub fn displacement_stats(
    g: &GaussianPrep,
    fp: &FreeParticle,
    t1: f64,
    t2: f64,
) -> Result<(f64, f64)> {
    if t2 < t1 {
        return Err(Error::TimeOrdering { t1, t2 });
    }
    let dt = t2 - t1;
    Ok((g.p0 * dt / fp.mass, g.dp * dt / fp.mass))
}

fn position_variance(g: &GaussianPrep, fp: &FreeParticle, t: f64) -> f64 {
    let v = t / fp.mass;
    g.dx * g.dx + g.dp * g.dp * v * v + 2.0 * g.xp_corr * v
}

/// `ΔX_t = √(dx² + (dp t/m)² + 2 cov t/m)`.
pub fn position_spread(g: &GaussianPrep, fp: &FreeParticle, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::OutOfDomain {
            what: "time",
            value: t,
        });
    }
    let variance = position_variance(g, fp, t);
    if variance < 0.0 {
        return Err(Error::NegativeVariance { variance });
    }
    Ok(variance.sqrt())
}

/// Symmetrized covariance `½⟨{X₁ − ⟨X₁⟩, X₂ − ⟨X₂⟩}⟩`.
pub fn position_covariance(g: &GaussianPrep, fp: &FreeParticle, t1: f64, t2: f64) -> f64 {
    let (v1, v2) = (t1 / fp.mass, t2 / fp.mass);
    g.dx * g.dx + g.xp_corr * (v1 + v2) + g.dp * g.dp * v1 * v2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub spread_x1: f64,
    pub spread_x2: f64,
    pub spread_displacement: f64,
    /// `ΔX₁ ΔX₂`.
    pub product: f64,
    /// `Δt/(2m)`.
    pub product_bound: f64,
    pub product_slack: f64,
    /// `Δδ₁₂ (ΔX₁ + ΔX₂)`.
    pub displacement_sum: f64,
    /// `Δt/m`.
    pub displacement_bound: f64,
    pub displacement_slack: f64,
}

impl UncertaintyReport {
    pub fn min_slack(&self) -> f64 {
        self.product_slack.min(self.displacement_slack)
    }
}

pub fn uncertainty_report(
    g: &GaussianPrep,
    fp: &FreeParticle,
    t1: f64,
    t2: f64,
) -> Result<UncertaintyReport> {
    if !(t2 > t1) {
        return Err(Error::TimeOrdering { t1, t2 });
    }
    let spread_x1 = position_spread(g, fp, t1)?;
    let spread_x2 = position_spread(g, fp, t2)?;
    let (_, spread_displacement) = displacement_stats(g, fp, t1, t2)?;
    let dt = t2 - t1;
    let product = spread_x1 * spread_x2;
    let product_bound = dt / (2.0 * fp.mass);
    let displacement_sum = spread_displacement * (spread_x1 + spread_x2);
    let displacement_bound = dt / fp.mass;
    Ok(UncertaintyReport {
        spread_x1,
        spread_x2,
        spread_displacement,
        product,
        product_bound,
        product_slack: product - product_bound,
        displacement_sum,
        displacement_bound,
        displacement_slack: displacement_sum - displacement_bound,
    })
}
