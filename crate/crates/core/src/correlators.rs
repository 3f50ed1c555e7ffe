//! Two-time correlators and two-time operators.
//!
//! The sequential (TPM) correlator measures `A` at `t₁`, applies the Lüders
//! update, evolves, and measures `B` at `t₂`. The Heisenberg correlator is the
//! expectation of `C₁₂^× = ½{A(t₁), B(t₂)}` in the preparation. The two agree
//! whenever `ρ_{t₁}` is left unchanged by the nonselective measurement of `A`,
//! and for every qubit observable pair with spectrum `{+1, −1}`; in general
//! they differ.
//!
//! Two-time operators (`½{A₁, B₂}` or `A₁ + B₂`) are realized as single
//! Hermitian matrices with their own spectrum and eigenstates.

use nalgebra::{DVector, Vector3};

use crate::dynamics::{evolve_state, ChannelFamily};
use crate::qcore::{
    anticommutator, c64, hermitian_deviation, hermitian_eigen, hermitian_part, max_abs,
    pauli_vector, CMatrix, DensityMatrix, Observable,
};
use crate::{tol, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoTimeKind {
    /// `½{A₁, B₂}`.
    Product,
    /// `A₁ + B₂`.
    Sum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoTimeOperator {
    kind: TwoTimeKind,
    a: Observable,
    b: Observable,
    t1: f64,
    t2: f64,
    channel: ChannelFamily,
}

impl TwoTimeOperator {
    pub fn new(
        kind: TwoTimeKind,
        a: Observable,
        b: Observable,
        t1: f64,
        t2: f64,
        channel: ChannelFamily,
    ) -> Result<Self> {
        for dim in [a.dim(), b.dim()] {
            if dim != channel.dim() {
                return Err(Error::DimensionMismatch {
                    expected: channel.dim(),
                    found: dim,
                });
            }
        }
        Ok(Self {
            kind,
            a,
            b,
            t1,
            t2,
            channel,
        })
    }

    pub fn product(
        a: Observable,
        b: Observable,
        t1: f64,
        t2: f64,
        channel: ChannelFamily,
    ) -> Result<Self> {
        Self::new(TwoTimeKind::Product, a, b, t1, t2, channel)
    }

    pub fn sum(
        a: Observable,
        b: Observable,
        t1: f64,
        t2: f64,
        channel: ChannelFamily,
    ) -> Result<Self> {
        Self::new(TwoTimeKind::Sum, a, b, t1, t2, channel)
    }

    pub fn kind(&self) -> TwoTimeKind {
        self.kind
    }

    pub fn a(&self) -> &Observable {
        &self.a
    }

    pub fn b(&self) -> &Observable {
        &self.b
    }

    pub fn times(&self) -> (f64, f64) {
        (self.t1, self.t2)
    }

    pub fn channel(&self) -> &ChannelFamily {
        &self.channel
    }

    pub fn dim(&self) -> usize {
        self.channel.dim()
    }

    /// The Hermitian matrix `C₁₂`. Requires a unitary channel.
    pub fn matrix(&self) -> Result<CMatrix> {
        let a1 = self.channel.heisenberg(self.a.matrix(), self.t1)?;
        let b2 = self.channel.heisenberg(self.b.matrix(), self.t2)?;
        Ok(match self.kind {
            TwoTimeKind::Product => hermitian_part(&(anticommutator(&a1, &b2) * c64(0.5, 0.0))),
            TwoTimeKind::Sum => hermitian_part(&(a1 + b2)),
        })
    }
}

/// `C₁₂` with its grouped spectral decomposition.
pub fn realize(c: &TwoTimeOperator) -> Result<Observable> {
    Observable::new(c.matrix()?)
}

/// `Tr(C₁₂ ρ₀)`; for the product kind this is the Heisenberg correlator.
pub fn heisenberg_correlator(c: &TwoTimeOperator, rho0: &DensityMatrix) -> Result<f64> {
    if rho0.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: rho0.dim(),
        });
    }
    Ok(rho0.expectation(&c.matrix()?))
}

/// Eigenstate preparation for the `k`-th distinct eigenvalue (ascending) of
/// the realized operator: `|c_k⟩⟨c_k|`, or `Π_k / rank` when degenerate.
pub fn prepare_eigenstate(c: &TwoTimeOperator, k: usize) -> Result<DensityMatrix> {
    let realized = realize(c)?;
    let spectrum = realized.spectrum();
    let component = spectrum.get(k).ok_or(Error::IndexOutOfRange {
        index: k,
        len: spectrum.len(),
    })?;
    let rank = component.projector.trace().re;
    DensityMatrix::new(&component.projector * c64(1.0 / rank, 0.0))
}

/// Joint outcome statistics of the sequential measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct TpmStatistics {
    pub a_values: Vec<f64>,
    pub b_values: Vec<f64>,
    /// `p(a, t₁)`.
    pub marginal: Vec<f64>,
    /// `p(b, t₂ | a, t₁)`; `None` for branches with `p(a, t₁) ≤ 1e-12`.
    pub conditional: Vec<Option<Vec<f64>>>,
}

impl TpmStatistics {
    /// `Σ_{a,b} a b p(b|a) p(a)`.
    pub fn correlator(&self) -> f64 {
        self.marginal
            .iter()
            .zip(&self.conditional)
            .zip(&self.a_values)
            .filter_map(|((&pa, cond), &a)| cond.as_ref().map(|c| (pa, c, a)))
            .map(|(pa, cond, a)| {
                let mean_b: f64 = cond.iter().zip(&self.b_values).map(|(p, b)| p * b).sum();
                a * mean_b * pa
            })
            .sum()
    }
}

fn check_tpm_inputs(
    a: &Observable,
    b: &Observable,
    t1: f64,
    t2: f64,
    channel: &ChannelFamily,
    rho0: &DensityMatrix,
) -> Result<()> {
    if !(t2 > t1) {
        return Err(Error::TimeOrdering { t1, t2 });
    }
    for dim in [a.dim(), b.dim(), rho0.dim()] {
        if dim != channel.dim() {
            return Err(Error::DimensionMismatch {
                expected: channel.dim(),
                found: dim,
            });
        }
    }
    Ok(())
}

/// Outcome statistics of measuring `A` at `t₁` then `B` at `t₂ > t₁`.
///
/// Works with any channel family, including a Kraus step.
pub fn tpm_statistics(
    a: &Observable,
    b: &Observable,
    t1: f64,
    t2: f64,
    channel: &ChannelFamily,
    rho0: &DensityMatrix,
) -> Result<TpmStatistics> {
    check_tpm_inputs(a, b, t1, t2, channel, rho0)?;
    let rho_t1 = channel.schrodinger(rho0.matrix(), t1)?;
    let mut marginal = Vec::with_capacity(a.spectrum().len());
    let mut conditional = Vec::with_capacity(a.spectrum().len());
    for alpha in a.spectrum() {
        let pa = (&alpha.projector * &rho_t1).trace().re;
        marginal.push(pa);
        if pa <= tol::NEGLIGIBLE_PROBABILITY {
            conditional.push(None);
            continue;
        }
        let post = &alpha.projector * &rho_t1 * &alpha.projector * c64(1.0 / pa, 0.0);
        let evolved = channel.schrodinger(&post, t2 - t1)?;
        conditional.push(Some(
            b.spectrum()
                .iter()
                .map(|beta| (&beta.projector * &evolved).trace().re)
                .collect(),
        ));
    }
    Ok(TpmStatistics {
        a_values: a.eigenvalues(),
        b_values: b.eigenvalues(),
        marginal,
        conditional,
    })
}

/// The sequential-measurement correlator `⟨A₁B₂⟩^TPM`.
pub fn tpm_correlator(
    a: &Observable,
    b: &Observable,
    t1: f64,
    t2: f64,
    channel: &ChannelFamily,
    rho0: &DensityMatrix,
) -> Result<f64> {
    tpm_statistics(a, b, t1, t2, channel, rho0).map(|s| s.correlator())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorGap {
    pub tpm: f64,
    pub heisenberg: f64,
    pub gap: f64,
}

/// Both correlators for the same `(A, B, t₁, t₂, φ, ρ₀)` and their difference.
pub fn correlator_gap(
    a: &Observable,
    b: &Observable,
    t1: f64,
    t2: f64,
    channel: &ChannelFamily,
    rho0: &DensityMatrix,
) -> Result<CorrelatorGap> {
    let tpm = tpm_correlator(a, b, t1, t2, channel, rho0)?;
    let op = TwoTimeOperator::product(a.clone(), b.clone(), t1, t2, channel.clone())?;
    let heisenberg = heisenberg_correlator(&op, rho0)?;
    Ok(CorrelatorGap {
        tpm,
        heisenberg,
        gap: (tpm - heisenberg).abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaReport {
    pub lambda: CMatrix,
    pub min_eigenvalue: f64,
    pub trace: f64,
    /// `min_eigenvalue ≥ −1e-10`.
    pub physical: bool,
}

impl LambdaReport {
    /// `ν⃗` with `Λ = ½(𝟙 + ν⃗·σ⃗)`, for qubits.
    pub fn bloch_vector(&self) -> Option<Vector3<f64>> {
        if self.lambda.nrows() != 2 {
            return None;
        }
        let sigma = pauli_vector();
        Some(Vector3::from_fn(|i, _| {
            (&sigma[i] * &self.lambda).trace().re
        }))
    }
}

/// `Λ_{t₁} = {α_a, ρ_{t₁}} / (2 Tr(α_a ρ_{t₁}))` for an outcome projector `α_a`.
pub fn lambda_operator(
    alpha: &CMatrix,
    rho0: &DensityMatrix,
    t1: f64,
    channel: &ChannelFamily,
) -> Result<LambdaReport> {
    if alpha.nrows() != rho0.dim() || alpha.ncols() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho0.dim(),
            found: alpha.nrows(),
        });
    }
    let deviation = hermitian_deviation(alpha);
    if deviation > tol::HERMITIAN_INPUT {
        return Err(Error::NotHermitian { deviation });
    }
    let deviation = max_abs(&(alpha * alpha - alpha));
    if deviation > tol::HERMITIAN_INPUT {
        return Err(Error::NotProjector { deviation });
    }
    let rho_t1 = evolve_state(channel, rho0, t1)?;
    let probability = (alpha * rho_t1.matrix()).trace().re;
    if probability <= tol::NEGLIGIBLE_PROBABILITY {
        return Err(Error::UnconditionedOutcome { probability });
    }
    let lambda =
        hermitian_part(&(anticommutator(alpha, rho_t1.matrix()) * c64(0.5 / probability, 0.0)));
    let (values, _) = hermitian_eigen(&lambda);
    let min_eigenvalue = values[0];
    Ok(LambdaReport {
        trace: lambda.trace().re,
        physical: min_eigenvalue >= -tol::CLAMP_NEGATIVE,
        min_eigenvalue,
        lambda,
    })
}

/// A qutrit instance on which the two correlators disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct QutritGapFixture {
    pub a: Observable,
    pub b: Observable,
    pub t1: f64,
    pub t2: f64,
    pub channel: ChannelFamily,
    pub rho0: DensityMatrix,
}

impl QutritGapFixture {
    /// TPM value: `Φ_A(ρ₀)` is diagonal and `B` has zero diagonal.
    pub const TPM: f64 = 0.0;
    /// Heisenberg value `½⟨{A, B}⟩ = 1/(2√2)`.
    pub const HEISENBERG: f64 = 0.353_553_390_593_273_8;

    pub fn gap(&self) -> Result<CorrelatorGap> {
        correlator_gap(
            &self.a,
            &self.b,
            self.t1,
            self.t2,
            &self.channel,
            &self.rho0,
        )
    }
}

/// `A = diag(1, 0, −1)`, `B` = spin-1 `S_x`, `H = 0`, `t₁ = 0`, `t₂ = 1`,
/// `ψ ∝ (1, 1, 0)`.
pub fn qutrit_gap_fixture() -> QutritGapFixture {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let a = CMatrix::from_diagonal(&DVector::from_vec(vec![
        c64(1.0, 0.0),
        c64(0.0, 0.0),
        c64(-1.0, 0.0),
    ]));
    let b = CMatrix::from_row_slice(
        3,
        3,
        &[0.0, r, 0.0, r, 0.0, r, 0.0, r, 0.0].map(|x| c64(x, 0.0)),
    );
    let psi = DVector::from_vec(vec![c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)]);
    QutritGapFixture {
        a: Observable::new(a).expect("diagonal"),
        b: Observable::new(b).expect("symmetric"),
        t1: 0.0,
        t2: 1.0,
        channel: ChannelFamily::trivial(3),
        rho0: DensityMatrix::pure(&psi).expect("nonzero"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::random::{
        random_density_matrix, random_hermitian, random_observable_with_spectrum,
    };
    use crate::qcore::{identity, max_distance, pauli, Axis};
    use crate::realism::irreality;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn z_precession() -> ChannelFamily {
        ChannelFamily::precession(&Vector3::z()).unwrap()
    }

    /// Explicit 2×2 products: σ_x(τ) = σx cos τ − σy sin τ, σ_y(τ) = σy cos τ + σx sin τ.
    fn sigma_x_at(tau: f64) -> CMatrix {
        pauli(Axis::X) * c64(tau.cos(), 0.0) - pauli(Axis::Y) * c64(tau.sin(), 0.0)
    }
    fn sigma_y_at(tau: f64) -> CMatrix {
        pauli(Axis::Y) * c64(tau.cos(), 0.0) + pauli(Axis::X) * c64(tau.sin(), 0.0)
    }

    #[test]
    fn two_time_matrices_match_explicit_products() {
        let ch = z_precession();
        let (t1, t2) = (0.4, 1.9);
        let c = TwoTimeOperator::product(
            Observable::pauli(Axis::X),
            Observable::pauli(Axis::X),
            t1,
            t2,
            ch.clone(),
        )
        .unwrap();
        let oracle =
            (sigma_x_at(t1) * sigma_x_at(t2) + sigma_x_at(t2) * sigma_x_at(t1)) * c64(0.5, 0.0);
        assert!(max_distance(&c.matrix().unwrap(), &oracle) < 1e-12);
        assert!(max_distance(&oracle, &(identity(2) * c64((t2 - t1).cos(), 0.0))) < 1e-12);
    }

    #[test]
    fn heisenberg_examples() {
        let ch = z_precession();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let (t1, t2) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let rho = random_density_matrix(&mut rng, 2);
            let c = TwoTimeOperator::product(
                Observable::pauli(Axis::X),
                Observable::pauli(Axis::X),
                t1,
                t2,
                ch.clone(),
            )
            .unwrap();
            assert!((heisenberg_correlator(&c, &rho).unwrap() - (t2 - t1).cos()).abs() < 1e-12);

            let c = TwoTimeOperator::product(
                Observable::spin_half(Axis::X),
                Observable::spin_half(Axis::Y),
                t1,
                t1,
                ch.clone(),
            )
            .unwrap();
            assert!(heisenberg_correlator(&c, &rho).unwrap().abs() < 1e-12);
            // Same code path as realize.
            let realized = realize(&c).unwrap();
            assert_eq!(
                heisenberg_correlator(&c, &rho).unwrap(),
                rho.expectation(realized.matrix())
            );
        }
        let c = TwoTimeOperator::product(
            Observable::pauli(Axis::Z),
            Observable::pauli(Axis::Z),
            0.3,
            2.0,
            ch,
        )
        .unwrap();
        let zero = DensityMatrix::basis(2, 0).unwrap();
        assert!((heisenberg_correlator(&c, &zero).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn realize_examples() {
        let ch = z_precession();
        let c = TwoTimeOperator::product(
            Observable::pauli(Axis::X),
            Observable::pauli(Axis::Y),
            0.0,
            0.0,
            ch.clone(),
        )
        .unwrap();
        let r = realize(&c).unwrap();
        assert_eq!(r.spectrum().len(), 1);
        assert!(r.eigenvalues()[0].abs() < 1e-15);
        assert!(max_abs(r.matrix()) < 1e-15);

        for (t1, t2) in [(0.0, 0.5), (1.0, 3.0), (-0.7, 2.2)] {
            // ¼ û₁·v̂₂ 𝟙 with û₁·v̂₂ = sin(τ₂ − τ₁)
            let c = TwoTimeOperator::product(
                Observable::spin_half(Axis::X),
                Observable::spin_half(Axis::Y),
                t1,
                t2,
                ch.clone(),
            )
            .unwrap();
            let oracle = (sigma_x_at(t1) * sigma_y_at(t2) + sigma_y_at(t2) * sigma_x_at(t1))
                * c64(0.125, 0.0);
            let expected = identity(2) * c64(0.25 * (t2 - t1).sin(), 0.0);
            assert!(max_distance(&oracle, &expected) < 1e-12);
            assert!(max_distance(&c.matrix().unwrap(), &expected) < 1e-12);
            assert_eq!(realize(&c).unwrap().spectrum().len(), 1);

            let s = TwoTimeOperator::sum(
                Observable::pauli(Axis::X),
                Observable::pauli(Axis::X),
                t1,
                t2,
                ch.clone(),
            )
            .unwrap();
            let ev = realize(&s).unwrap().eigenvalues();
            let top = 2.0 * ((t2 - t1) / 2.0).cos().abs();
            assert!((ev[0] + top).abs() < 1e-12 && (ev[1] - top).abs() < 1e-12);
            let prep = prepare_eigenstate(&s, 1).unwrap();
            assert!((heisenberg_correlator(&s, &prep).unwrap() - top).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenstate_preparations_are_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..100 {
            let d = 2 + trial % 3;
            let ch = ChannelFamily::unitary(random_hermitian(&mut rng, d)).unwrap();
            let kind = if trial % 2 == 0 {
                TwoTimeKind::Product
            } else {
                TwoTimeKind::Sum
            };
            let c = TwoTimeOperator::new(
                kind,
                Observable::new(random_hermitian(&mut rng, d)).unwrap(),
                Observable::new(random_hermitian(&mut rng, d)).unwrap(),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                ch,
            )
            .unwrap();
            let realized = realize(&c).unwrap();
            let n = realized.spectrum().len();
            let preps: Vec<_> = (0..n).map(|k| prepare_eigenstate(&c, k).unwrap()).collect();
            for p in &preps {
                assert!(irreality(&realized, p).unwrap().irreality.abs() < 1e-10);
            }
            let weights: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let parts: Vec<_> = weights.iter().copied().zip(preps.iter()).collect();
            let mix = DensityMatrix::mixture(&parts).unwrap();
            assert!(irreality(&realized, &mix).unwrap().irreality.abs() < 1e-10);
            assert!(matches!(
                prepare_eigenstate(&c, n),
                Err(Error::IndexOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn degenerate_eigenstate_is_maximally_mixed_on_eigenspace() {
        let c = TwoTimeOperator::product(
            Observable::pauli(Axis::X),
            Observable::pauli(Axis::X),
            0.0,
            1.0,
            z_precession(),
        )
        .unwrap();
        let prep = prepare_eigenstate(&c, 0).unwrap();
        assert!(prep.max_distance(&DensityMatrix::maximally_mixed(2)) < 1e-14);
    }

    #[test]
    fn qutrit_fixture_against_outcome_enumeration() {
        // Eigenvectors of spin-1 S_x: m = −1, 0, +1.
        let s = SQRT_2;
        let b_vectors = [
            (-1.0, [0.5, -s / 2.0, 0.5]),
            (0.0, [1.0 / s, 0.0, -1.0 / s]),
            (1.0, [0.5, s / 2.0, 0.5]),
        ];
        let psi = [1.0 / s, 1.0 / s, 0.0];
        let mut tpm = 0.0;
        for (ai, a) in [1.0, 0.0, -1.0].into_iter().enumerate() {
            let pa = psi[ai] * psi[ai];
            for (b, v) in &b_vectors {
                // |⟨b|a⟩|²
                tpm += a * b * v[ai] * v[ai] * pa;
            }
        }
        // ½⟨ψ|{A,B}|ψ⟩ = Σ_ij ψ_i ψ_j (a_i + a_j) B_ij / 2
        let av = [1.0, 0.0, -1.0];
        let bm = [
            [0.0, 1.0 / s, 0.0],
            [1.0 / s, 0.0, 1.0 / s],
            [0.0, 1.0 / s, 0.0],
        ];
        let mut heis = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                heis += psi[i] * psi[j] * (av[i] + av[j]) * bm[i][j] / 2.0;
            }
        }
        assert!((tpm - QutritGapFixture::TPM).abs() < 1e-15);
        assert!((heis - QutritGapFixture::HEISENBERG).abs() < 1e-15);

        let gap = qutrit_gap_fixture().gap().unwrap();
        assert!((gap.tpm - tpm).abs() < 1e-12);
        assert!((gap.heisenberg - heis).abs() < 1e-12);
        assert!(gap.gap > 1e-6);
    }

    #[test]
    fn qubit_pm_one_cross_terms_cancel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = random_observable_with_spectrum(&mut rng, &[1.0, -1.0]);
            let b = random_observable_with_spectrum(&mut rng, &[1.0, -1.0]);
            let rho = random_density_matrix(&mut rng, 2);
            // Σ_a a α ρ α = ½{A, ρ} on the 2×2 level.
            let lhs = a.spectrum().iter().fold(CMatrix::zeros(2, 2), |acc, c| {
                acc + &c.projector * rho.matrix() * &c.projector * c64(c.value, 0.0)
            });
            let rhs = anticommutator(a.matrix(), rho.matrix()) * c64(0.5, 0.0);
            assert!(max_distance(&lhs, &rhs) < 1e-12);

            let ch = ChannelFamily::unitary(random_hermitian(&mut rng, 2)).unwrap();
            let t1 = rng.random_range(-2.0..2.0);
            let t2 = t1 + rng.random_range(0.01..3.0);
            assert!(correlator_gap(&a, &b, t1, t2, &ch, &rho).unwrap().gap <= 1e-10);
        }
    }

    #[test]
    fn agreement_when_a_is_real_at_t1() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for trial in 0..100 {
            let d = 2 + trial % 2;
            let ch = ChannelFamily::unitary(random_hermitian(&mut rng, d)).unwrap();
            let a = Observable::new(random_hermitian(&mut rng, d)).unwrap();
            let b = Observable::new(random_hermitian(&mut rng, d)).unwrap();
            let t1 = rng.random_range(-2.0..2.0);
            let t2 = t1 + rng.random_range(0.01..3.0);
            let weights: Vec<f64> = (0..a.spectrum().len())
                .map(|_| rng.random::<f64>())
                .collect();
            let total: f64 = weights.iter().sum();
            let rho_t1 = a
                .spectrum()
                .iter()
                .zip(&weights)
                .fold(CMatrix::zeros(d, d), |acc, (c, w)| {
                    acc + &c.projector * c64(w / total, 0.0)
                });
            let rho_t1 = DensityMatrix::new(rho_t1).unwrap();
            let rho0 = evolve_state(&ch, &rho_t1, -t1).unwrap();
            let gap = correlator_gap(&a, &b, t1, t2, &ch, &rho0).unwrap();
            assert!(gap.gap <= 1e-10, "{gap:?}");
        }
    }

    #[test]
    fn tpm_probabilities_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let d = rng.random_range(2..=4);
            let ch = ChannelFamily::unitary(random_hermitian(&mut rng, d)).unwrap();
            let a = Observable::new(random_hermitian(&mut rng, d)).unwrap();
            let b = Observable::new(random_hermitian(&mut rng, d)).unwrap();
            let rho = random_density_matrix(&mut rng, d);
            let stats = tpm_statistics(&a, &b, 0.1, 0.9, &ch, &rho).unwrap();
            assert!((stats.marginal.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            for cond in stats.conditional.iter().flatten() {
                assert!(cond.iter().all(|p| (-1e-12..=1.0 + 1e-12).contains(p)));
                assert!((cond.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn vanishing_marginal_branch_is_skipped() {
        let zero = DensityMatrix::basis(2, 0).unwrap();
        let stats = tpm_statistics(
            &Observable::pauli(Axis::Z),
            &Observable::pauli(Axis::X),
            0.0,
            1.0,
            &ChannelFamily::trivial(2),
            &zero,
        )
        .unwrap();
        assert_eq!(stats.conditional.iter().filter(|c| c.is_none()).count(), 1);
        assert!(stats.correlator().abs() < 1e-15);
    }

    #[test]
    fn tpm_with_kraus_step() {
        // Complete dephasing between the measurements erases the σx correlation.
        let p0 = CMatrix::from_diagonal(&DVector::from_vec(vec![c64(1.0, 0.0), c64(0.0, 0.0)]));
        let ch = ChannelFamily::kraus(vec![p0.clone(), identity(2) - p0]).unwrap();
        let x = Observable::pauli(Axis::X);
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(tpm_correlator(&x, &x, 0.0, 1.0, &ch, &rho).unwrap().abs() < 1e-15);
        let op = TwoTimeOperator::product(x.clone(), x, 0.0, 1.0, ch).unwrap();
        assert_eq!(
            heisenberg_correlator(&op, &rho),
            Err(Error::NonUnitaryChannel)
        );
    }

    #[test]
    fn tpm_errors() {
        let x = Observable::pauli(Axis::X);
        let ch = ChannelFamily::trivial(2);
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            tpm_correlator(&x, &x, 1.0, 1.0, &ch, &rho),
            Err(Error::TimeOrdering { .. })
        ));
        assert!(matches!(
            tpm_correlator(&x, &x, 2.0, 1.0, &ch, &rho),
            Err(Error::TimeOrdering { .. })
        ));
        assert!(matches!(
            tpm_correlator(&x, &x, 0.0, 1.0, &ch, &DensityMatrix::maximally_mixed(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    fn minus_z_projector() -> CMatrix {
        (identity(2) - pauli(Axis::Z)) * c64(0.5, 0.0)
    }

    #[test]
    fn lambda_commuting_case_is_the_projector() {
        let alpha = minus_z_projector();
        let rho = DensityMatrix::mixture(&[
            (0.3, &DensityMatrix::basis(2, 0).unwrap()),
            (0.7, &DensityMatrix::basis(2, 1).unwrap()),
        ])
        .unwrap();
        let report = lambda_operator(&alpha, &rho, 0.0, &ChannelFamily::trivial(2)).unwrap();
        assert!(max_distance(&report.lambda, &alpha) < 1e-14);
        assert!(report.physical);
    }

    #[test]
    fn lambda_bloch_norm() {
        let alpha = minus_z_projector();
        let ch = ChannelFamily::trivial(2);
        let cases = [
            (FRAC_PI_2, SQRT_2, false),
            (PI, 1.0, true),
            (PI / 3.0, 2.0, false),
        ];
        for (theta, norm, physical) in cases {
            let r = crate::qcore::BlochVector::from_spherical(1.0, theta, 0.0).unwrap();
            let rho = crate::qcore::bloch_to_state(&r);
            let report = lambda_operator(&alpha, &rho, 0.0, &ch).unwrap();
            let nu = report.bloch_vector().unwrap();
            // ν⃗ = (r̂ − ẑ)/(1 − cos θ)
            let expected = (r.vector() - Vector3::z()) / (1.0 - theta.cos());
            assert!((nu - expected).norm() < 1e-12);
            assert!((nu.norm() - norm).abs() < 1e-12);
            assert!((report.trace - 1.0).abs() < 1e-12);
            assert_eq!(report.physical, physical);
            assert!((report.min_eigenvalue - (1.0 - norm) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_errors() {
        let ch = ChannelFamily::trivial(2);
        let north = DensityMatrix::basis(2, 0).unwrap();
        assert!(matches!(
            lambda_operator(&minus_z_projector(), &north, 0.0, &ch),
            Err(Error::UnconditionedOutcome { .. })
        ));
        assert!(matches!(
            lambda_operator(&pauli(Axis::X), &north, 0.0, &ch),
            Err(Error::NotProjector { .. })
        ));
    }
}
