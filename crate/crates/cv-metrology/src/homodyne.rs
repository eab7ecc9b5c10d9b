//! Balanced homodyne detection as linear functionals of quadratures.
//!
//! A joint readout P = Σₖ cₖ·I_LO·[Xₖ cos(θₖ+φₖ) + Yₖ sin(θₖ+φₖ)] is a
//! vector w in quadrature space; its moments on a Gaussian state are exact
//! (mean wᵀμ, variance wᵀΣw). The estimated phase enters through the readout
//! angle θₖ+φₖ, never as an extra state rotation, so nothing is counted
//! twice. Sensitivity is σ = √Var(P) / |∂⟨P⟩/∂θ|.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;

/// Central finite-difference step (radians) balancing truncation against
/// rounding for trigonometric slopes at double precision.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// One detector in a joint readout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutTerm {
    pub mode: usize,
    /// Sign coefficient cₖ, typically ±1 for sum/difference currents.
    pub coeff: f64,
    /// Unknown phase θₖ imposed on this mode.
    pub theta: f64,
    /// Detection (local-oscillator) phase φₖ.
    pub phi: f64,
    /// When true this term's θₖ follows the phase being estimated.
    pub tracks_estimate: bool,
}

impl ReadoutTerm {
    /// Term whose phase stays fixed while some other phase is estimated.
    pub fn fixed(mode: usize, coeff: f64, theta: f64, phi: f64) -> Self {
        Self { mode, coeff, theta, phi, tracks_estimate: false }
    }

    /// Term whose phase is the one being estimated.
    pub fn estimated(mode: usize, coeff: f64, theta: f64, phi: f64) -> Self {
        Self { mode, coeff, theta, phi, tracks_estimate: true }
    }
}

/// A joint BHD current: at least one term, each mode at most once.
#[derive(Debug, Clone, PartialEq)]
pub struct HomodyneReadout {
    terms: Vec<ReadoutTerm>,
    lo_scale: f64,
}

impl HomodyneReadout {
    pub fn new(terms: Vec<ReadoutTerm>, lo_scale: f64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyReadout);
        }
        if !(lo_scale.is_finite() && lo_scale > 0.0) {
            return Err(Error::NonPositiveLoScale(lo_scale));
        }
        for (i, t) in terms.iter().enumerate() {
            for name_value in [("coeff", t.coeff), ("theta", t.theta), ("phi", t.phi)] {
                if !name_value.1.is_finite() {
                    return Err(Error::NonFinite { name: name_value.0, value: name_value.1 });
                }
            }
            if terms[..i].iter().any(|prev| prev.mode == t.mode) {
                return Err(Error::DuplicateReadoutMode(t.mode));
            }
        }
        Ok(Self { terms, lo_scale })
    }

    pub fn terms(&self) -> &[ReadoutTerm] {
        &self.terms
    }

    pub fn lo_scale(&self) -> f64 {
        self.lo_scale
    }

    /// Same readout with the local-oscillator scale multiplied by `factor`.
    pub fn with_lo_scale(&self, lo_scale: f64) -> Result<Self> {
        Self::new(self.terms.clone(), lo_scale)
    }

    /// The functional w with wₖ = cₖ·I_LO·(cos(θₖ+φₖ), sin(θₖ+φₖ)) on
    /// (Xₖ, Yₖ) and zeros elsewhere, using each term's stored θₖ.
    pub fn vector(&self, n_modes: usize) -> Result<DVector<f64>> {
        self.vector_at(n_modes, None)
    }

    /// As [`vector`](Self::vector), with tracking terms evaluated at `theta`.
    fn vector_at(&self, n_modes: usize, theta: Option<f64>) -> Result<DVector<f64>> {
        let mut w = DVector::zeros(2 * n_modes);
        for t in &self.terms {
            if t.mode >= n_modes {
                return Err(Error::ModeOutOfRange { mode: t.mode, n_modes });
            }
            let th = match (t.tracks_estimate, theta) {
                (true, Some(value)) => value,
                _ => t.theta,
            };
            let (s, c) = (th + t.phi).sin_cos();
            w[t.mode] = t.coeff * self.lo_scale * c;
            w[n_modes + t.mode] = t.coeff * self.lo_scale * s;
        }
        Ok(w)
    }

    /// d w / dθ at `theta`; only tracking terms contribute.
    fn slope_vector(&self, n_modes: usize, theta: f64) -> Result<DVector<f64>> {
        let mut dw = DVector::zeros(2 * n_modes);
        for t in &self.terms {
            if t.mode >= n_modes {
                return Err(Error::ModeOutOfRange { mode: t.mode, n_modes });
            }
            if !t.tracks_estimate {
                continue;
            }
            let (s, c) = (theta + t.phi).sin_cos();
            dw[t.mode] = -t.coeff * self.lo_scale * s;
            dw[n_modes + t.mode] = t.coeff * self.lo_scale * c;
        }
        Ok(dw)
    }
}

/// The readout functional as a plain vector over (X-block, Y-block).
pub fn readout_vector(readout: &HomodyneReadout, n_modes: usize) -> Result<DVector<f64>> {
    readout.vector(n_modes)
}

/// Exact (mean, variance) of the readout current on a Gaussian state.
pub fn estimator_moments(state: &GaussianState, readout: &HomodyneReadout) -> Result<(f64, f64)> {
    let w = readout.vector(state.n_modes())?;
    Ok(moments_for(state, &w))
}

fn moments_for(state: &GaussianState, w: &DVector<f64>) -> (f64, f64) {
    let mean = w.dot(state.mean());
    let variance = (state.cov() * w).dot(w);
    (mean, variance)
}

/// How the mean slope ∂⟨P⟩/∂θ is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlopeMethod {
    /// Closed-form derivative of w(θ)ᵀμ.
    Analytic,
    /// Central difference of ⟨P⟩ with step `delta` (radians).
    FiniteDifference { delta: f64 },
    /// Moments and slope from multivariate-normal samples; the same draws are
    /// reused at θ ± δ so the slope noise cancels.
    MonteCarlo { n_samples: usize, seed: u64 },
}

/// Phase-estimation sensitivity σ = √Δ²(P) / |∂⟨P⟩/∂θ| with its parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityResult {
    pub sigma: f64,
    pub variance: f64,
    pub slope: f64,
    pub method: SlopeMethod,
}

/// Evaluate the sensitivity of the readout's tracked phase at `theta0`.
/// Variance is always taken at `theta0`; the slope follows `method`.
pub fn sensitivity(
    state: &GaussianState,
    readout: &HomodyneReadout,
    theta0: f64,
    method: SlopeMethod,
) -> Result<SensitivityResult> {
    let n = state.n_modes();
    let w0 = readout.vector_at(n, Some(theta0))?;

    let (variance, slope) = match method {
        SlopeMethod::Analytic => {
            let (_, variance) = moments_for(state, &w0);
            let dw = readout.slope_vector(n, theta0)?;
            (variance, dw.dot(state.mean()))
        }
        SlopeMethod::FiniteDifference { delta } => {
            if !(delta.is_finite() && delta > 0.0) {
                return Err(Error::NonPositiveStep(delta));
            }
            let (_, variance) = moments_for(state, &w0);
            let hi = readout.vector_at(n, Some(theta0 + delta))?.dot(state.mean());
            let lo = readout.vector_at(n, Some(theta0 - delta))?.dot(state.mean());
            (variance, (hi - lo) / (2.0 * delta))
        }
        SlopeMethod::MonteCarlo { n_samples, seed } => {
            let delta = DEFAULT_FD_STEP;
            let draws = draw_quadratures(state, n_samples, seed)?;
            let w_hi = readout.vector_at(n, Some(theta0 + delta))?;
            let w_lo = readout.vector_at(n, Some(theta0 - delta))?;
            let stats = project_samples(&draws, &w0);
            let slope = (w_hi - w_lo).dot(&draws.sample_mean) / (2.0 * delta);
            (stats.variance, slope)
        }
    };

    // A slope at rounding level means the phase is invisible to first order.
    let scale = readout.lo_scale() * (1.0 + state.mean().amax());
    if !slope.is_finite() || slope.abs() < 1e-12 * scale {
        return Err(Error::DegenerateEstimator(slope));
    }
    Ok(SensitivityResult {
        sigma: variance.max(0.0).sqrt() / slope.abs(),
        variance,
        slope,
        method,
    })
}

/// Empirical readout moments from `n_samples` multivariate-normal draws.
#[derive(Debug, Clone, Copy)]
pub struct SampleMoments {
    pub mean: f64,
    pub variance: f64,
    pub mean_stderr: f64,
    pub variance_stderr: f64,
}

/// Draw quadrature samples from (μ, Σ) and project through the readout.
/// Deterministic for a given seed.
pub fn sample_currents(
    state: &GaussianState,
    readout: &HomodyneReadout,
    n_samples: usize,
    seed: u64,
) -> Result<SampleMoments> {
    let draws = draw_quadratures(state, n_samples, seed)?;
    let w = readout.vector(state.n_modes())?;
    Ok(project_samples(&draws, &w))
}

struct QuadratureDraws {
    samples: Vec<DVector<f64>>,
    sample_mean: DVector<f64>,
}

fn draw_quadratures(state: &GaussianState, n_samples: usize, seed: u64) -> Result<QuadratureDraws> {
    if n_samples < 2 {
        return Err(Error::TooFewSamples(n_samples));
    }
    let min_eig = state.min_uncertainty_eigenvalue();
    if min_eig < -1e-10 {
        return Err(Error::NonPhysicalCovariance(min_eig));
    }
    let factor = covariance_factor(state.cov());
    let d = 2 * state.n_modes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    let mut sum = DVector::zeros(d);
    let mut z = DVector::zeros(d);
    for _ in 0..n_samples {
        for zi in z.iter_mut() {
            *zi = rng.sample(StandardNormal);
        }
        let q = state.mean() + &factor * &z;
        sum += &q;
        samples.push(q);
    }
    let sample_mean = sum / n_samples as f64;
    Ok(QuadratureDraws { samples, sample_mean })
}

fn project_samples(draws: &QuadratureDraws, w: &DVector<f64>) -> SampleMoments {
    let n = draws.samples.len() as f64;
    let mean = w.dot(&draws.sample_mean);
    let ss: f64 = draws
        .samples
        .iter()
        .map(|q| {
            let p = w.dot(q) - mean;
            p * p
        })
        .sum();
    let variance = ss / (n - 1.0);
    SampleMoments {
        mean,
        variance,
        mean_stderr: (variance / n).sqrt(),
        variance_stderr: variance * (2.0 / (n - 1.0)).sqrt(),
    }
}

/// A matrix L with LLᵀ = Σ. Cholesky when positive definite; otherwise an
/// eigendecomposition with negative rounding-level eigenvalues clamped.
fn covariance_factor(cov: &DMatrix<f64>) -> DMatrix<f64> {
    if let Some(chol) = nalgebra::linalg::Cholesky::new(cov.clone()) {
        return chol.l();
    }
    let eig = nalgebra::linalg::SymmetricEigen::new(cov.clone());
    let roots = eig.eigenvalues.map(|v| v.max(0.0).sqrt());
    &eig.eigenvectors * DMatrix::from_diagonal(&roots)
}
