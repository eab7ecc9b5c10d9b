//! Multimode Gaussian states under exact mean/covariance propagation.
//!
//! A state of `n` bosonic modes is the pair (mean, cov) of its quadrature
//! vector q = (X₁…X_n, Y₁…Y_n), with X = a + a†, Y = -i(a - a†). The vacuum
//! has unit variance in every quadrature, so 1 is the shot-noise limit in
//! these units. Gaussian unitaries act as real symplectic maps S (q → Sq + d,
//! cov → S cov Sᵀ); attenuation mixes in vacuum per [`LossConvention`].

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

/// Which quadrature an active element amplifies. The conjugate quadrature is
/// de-amplified by the inverse factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X,
    Y,
}

/// Attenuation model for [`GaussianState::loss`].
///
/// `Physical` is a beam splitter of intensity transmissivity η mixing in
/// vacuum: mean × √η, cov → η·cov + (1-η)·1 on the mode. `PaperLinear`
/// mixes amplitudes linearly (mean × η, cov → η²·cov + (1-η)²·1), which is
/// not completely positive for 0 < η < 1; it exists only to mirror printed
/// closed forms and is flagged by [`GaussianState::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LossConvention {
    #[default]
    Physical,
    PaperLinear,
}

/// A Gaussian unitary as an affine map on quadratures.
#[derive(Debug, Clone)]
pub struct SymplecticOp {
    matrix: DMatrix<f64>,
    displacement: DVector<f64>,
}

/// Mean vector and covariance matrix of `n_modes` bosonic modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

/// Diagnostics reported by [`GaussianState::validate`]. Never an error: the
/// caller decides what to do with a non-physical covariance.
#[derive(Debug, Clone)]
pub struct StateDiagnostics {
    /// max |cov - covᵀ| over all entries.
    pub symmetry_deviation: f64,
    /// Minimum eigenvalue of cov + iΩ; ≥ 0 (up to rounding) for physical states.
    pub min_uncertainty_eigenvalue: f64,
    /// Per-mode (Δ²X, Δ²Y) in shot-noise units.
    pub mode_variances: Vec<(f64, f64)>,
    /// True when the uncertainty eigenvalue clears -1e-10.
    pub physical: bool,
}

/// Symplectic form Ω for `n` modes in (X-block, Y-block) ordering, normalized
/// to the commutator [X, Y] = 2i: Ω = [[0, I], [-I, 0]].
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let n = n_modes;
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        omega[(k, n + k)] = 1.0;
        omega[(n + k, k)] = -1.0;
    }
    omega
}

fn check_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

impl SymplecticOp {
    pub fn identity(n_modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
            displacement: DVector::zeros(2 * n_modes),
        }
    }

    /// Pure displacement of one mode in phase space.
    pub fn displacement(n_modes: usize, mode: usize, alpha: f64, beta: f64) -> Result<Self> {
        check_mode(mode, n_modes)?;
        let mut op = Self::identity(n_modes);
        op.displacement[mode] = check_finite("alpha", alpha)?;
        op.displacement[n_modes + mode] = check_finite("beta", beta)?;
        Ok(op)
    }

    /// Single-mode squeezer: the amplified quadrature scales by e^r, the
    /// conjugate by e^-r. The same map models a phase-sensitive amplifier.
    pub fn squeezer(n_modes: usize, mode: usize, r: f64, amplify: Quadrature) -> Result<Self> {
        check_mode(mode, n_modes)?;
        check_finite("r", r)?;
        let (gx, gy) = match amplify {
            Quadrature::X => (r.exp(), (-r).exp()),
            Quadrature::Y => ((-r).exp(), r.exp()),
        };
        let mut op = Self::identity(n_modes);
        op.matrix[(mode, mode)] = gx;
        op.matrix[(n_modes + mode, n_modes + mode)] = gy;
        Ok(op)
    }

    /// Phase shift e^{iθ}a: (X, Y) → (X cosθ - Y sinθ, X sinθ + Y cosθ).
    pub fn rotation(n_modes: usize, mode: usize, theta: f64) -> Result<Self> {
        check_mode(mode, n_modes)?;
        check_finite("theta", theta)?;
        let (s, c) = theta.sin_cos();
        let n = n_modes;
        let mut op = Self::identity(n);
        op.matrix[(mode, mode)] = c;
        op.matrix[(mode, n + mode)] = -s;
        op.matrix[(n + mode, mode)] = s;
        op.matrix[(n + mode, n + mode)] = c;
        Ok(op)
    }

    /// Beam splitter on modes (i, j) with intensity transmissivity `t`.
    ///
    /// At t = 1/2 the outputs carry exactly the (qᵢ + qⱼ)/√2 and
    /// (qᵢ - qⱼ)/√2 combinations on both quadrature blocks. Unit
    /// transmissivity means no splitter is present and maps to the identity
    /// (the t → 1 limit of the mixing matrix differs by a local sign on the
    /// second output, which carries no physics).
    pub fn beam_splitter(n_modes: usize, mode_i: usize, mode_j: usize, t: f64) -> Result<Self> {
        check_mode(mode_i, n_modes)?;
        check_mode(mode_j, n_modes)?;
        if mode_i == mode_j {
            return Err(Error::DuplicateMode(mode_i));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::TransmissivityOutOfRange(t));
        }
        let mut op = Self::identity(n_modes);
        if t == 1.0 {
            return Ok(op);
        }
        let (ct, st) = (t.sqrt(), (1.0 - t).sqrt());
        let n = n_modes;
        for (i, j) in [(mode_i, mode_j), (n + mode_i, n + mode_j)] {
            op.matrix[(i, i)] = ct;
            op.matrix[(i, j)] = st;
            op.matrix[(j, i)] = st;
            op.matrix[(j, j)] = -ct;
        }
        Ok(op)
    }

    /// Passive linear network b = Ua for a complex n×n unitary U, acting as
    /// S = [[Re U, -Im U], [Im U, Re U]] on the stacked (X; Y) blocks.
    pub fn from_unitary(u: &DMatrix<Complex<f64>>) -> Result<Self> {
        let n = u.nrows();
        if u.ncols() != n || n == 0 {
            return Err(Error::EmptyState);
        }
        let defect = unitarity_defect(u);
        if defect > 1e-10 {
            return Err(Error::NotUnitary(defect));
        }
        let mut op = Self::identity(n);
        for i in 0..n {
            for j in 0..n {
                let z = u[(i, j)];
                op.matrix[(i, j)] = z.re;
                op.matrix[(i, n + j)] = -z.im;
                op.matrix[(n + i, j)] = z.im;
                op.matrix[(n + i, n + j)] = z.re;
            }
        }
        Ok(op)
    }

    /// `self` after `earlier`: the map q ↦ self(earlier(q)).
    pub fn compose(&self, earlier: &SymplecticOp) -> SymplecticOp {
        SymplecticOp {
            matrix: &self.matrix * &earlier.matrix,
            displacement: &self.matrix * &earlier.displacement + &self.displacement,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn displacement_vector(&self) -> &DVector<f64> {
        &self.displacement
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// max |SΩSᵀ - Ω|; zero (to rounding) for every constructor here.
    pub fn symplectic_defect(&self) -> f64 {
        let omega = symplectic_form(self.n_modes());
        let residual = &self.matrix * &omega * self.matrix.transpose() - omega;
        residual.amax()
    }
}

/// max |UU† - I| over entries.
pub fn unitarity_defect(u: &DMatrix<Complex<f64>>) -> f64 {
    let gram = u * u.adjoint();
    let mut worst = 0.0f64;
    for i in 0..u.nrows() {
        for j in 0..u.ncols() {
            let expect = if i == j { 1.0 } else { 0.0 };
            let dev = (gram[(i, j)] - Complex::new(expect, 0.0)).norm();
            worst = worst.max(dev);
        }
    }
    worst
}

fn check_mode(mode: usize, n_modes: usize) -> Result<()> {
    if mode < n_modes {
        Ok(())
    } else {
        Err(Error::ModeOutOfRange { mode, n_modes })
    }
}

impl GaussianState {
    /// `n_modes` empty modes: zero mean, identity covariance (the SNL).
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::EmptyState);
        }
        Ok(Self {
            n_modes,
            mean: DVector::zeros(2 * n_modes),
            cov: DMatrix::identity(2 * n_modes, 2 * n_modes),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Index of X (amplitude) quadrature of `mode` in mean/cov.
    pub fn x_index(&self, mode: usize) -> usize {
        mode
    }

    /// Index of Y (phase) quadrature of `mode` in mean/cov.
    pub fn y_index(&self, mode: usize) -> usize {
        self.n_modes + mode
    }

    pub fn x_mean(&self, mode: usize) -> f64 {
        self.mean[self.x_index(mode)]
    }

    pub fn y_mean(&self, mode: usize) -> f64 {
        self.mean[self.y_index(mode)]
    }

    pub fn x_variance(&self, mode: usize) -> f64 {
        self.cov[(self.x_index(mode), self.x_index(mode))]
    }

    pub fn y_variance(&self, mode: usize) -> f64 {
        self.cov[(self.y_index(mode), self.y_index(mode))]
    }

    /// Apply a symplectic map; covariance is re-symmetrized to absorb rounding.
    pub fn apply(&self, op: &SymplecticOp) -> Result<Self> {
        if op.n_modes() != self.n_modes {
            return Err(Error::ModeOutOfRange {
                mode: op.n_modes(),
                n_modes: self.n_modes,
            });
        }
        let mean = &op.matrix * &self.mean + &op.displacement;
        let cov = &op.matrix * &self.cov * op.matrix.transpose();
        Ok(Self::from_parts(self.n_modes, mean, cov))
    }

    fn from_parts(n_modes: usize, mean: DVector<f64>, cov: DMatrix<f64>) -> Self {
        let sym = (&cov + cov.transpose()) * 0.5;
        Self {
            n_modes,
            mean,
            cov: sym,
        }
    }

    /// Shift the mode mean by (alpha, beta) in (X, Y); covariance untouched.
    pub fn displace(&self, mode: usize, alpha: f64, beta: f64) -> Result<Self> {
        self.apply(&SymplecticOp::displacement(self.n_modes, mode, alpha, beta)?)
    }

    /// Squeeze one mode; the amplified quadrature's variance gains e^{2r}.
    pub fn squeeze(&self, mode: usize, r: f64, amplify: Quadrature) -> Result<Self> {
        self.apply(&SymplecticOp::squeezer(self.n_modes, mode, r, amplify)?)
    }

    pub fn phase_shift(&self, mode: usize, theta: f64) -> Result<Self> {
        self.apply(&SymplecticOp::rotation(self.n_modes, mode, theta)?)
    }

    pub fn beam_splitter(&self, mode_i: usize, mode_j: usize, t: f64) -> Result<Self> {
        self.apply(&SymplecticOp::beam_splitter(self.n_modes, mode_i, mode_j, t)?)
    }

    pub fn apply_unitary_network(&self, u: &DMatrix<Complex<f64>>) -> Result<Self> {
        if u.nrows() != self.n_modes {
            return Err(Error::ModeOutOfRange {
                mode: u.nrows(),
                n_modes: self.n_modes,
            });
        }
        self.apply(&SymplecticOp::from_unitary(u)?)
    }

    /// Phase-sensitive amplifier on one mode: the amplified quadrature scales
    /// by the gain e^{r_gain}, the conjugate by e^{-r_gain}.
    pub fn opa(&self, mode: usize, r_gain: f64, amplified: Quadrature) -> Result<Self> {
        self.apply(&SymplecticOp::squeezer(self.n_modes, mode, r_gain, amplified)?)
    }

    /// Attenuate one mode with transmissivity `eta` per `convention`.
    pub fn loss(&self, mode: usize, eta: f64, convention: LossConvention) -> Result<Self> {
        check_mode(mode, self.n_modes)?;
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::TransmissivityOutOfRange(eta));
        }
        let (gain, vac) = match convention {
            LossConvention::Physical => (eta.sqrt(), 1.0 - eta),
            LossConvention::PaperLinear => (eta, (1.0 - eta) * (1.0 - eta)),
        };
        let ix = self.x_index(mode);
        let iy = self.y_index(mode);
        let mut mean = self.mean.clone();
        mean[ix] *= gain;
        mean[iy] *= gain;
        let mut cov = self.cov.clone();
        for idx in [ix, iy] {
            for col in 0..2 * self.n_modes {
                cov[(idx, col)] *= gain;
            }
            for row in 0..2 * self.n_modes {
                cov[(row, idx)] *= gain;
            }
            cov[(idx, idx)] += vac;
        }
        Ok(Self::from_parts(self.n_modes, mean, cov))
    }

    /// Variance of Σ cₖ qₖ for the listed (mode, quadrature, coefficient)
    /// terms, in raw units.
    pub fn combination_variance(&self, terms: &[(usize, Quadrature, f64)]) -> Result<f64> {
        let w = self.combination_vector(terms)?;
        Ok((&self.cov * &w).dot(&w))
    }

    /// Same combination variance divided by its vacuum (SNL) value, i.e. by
    /// Σ cₖ². A value below 1 marks squeezing of that combination.
    pub fn combination_variance_snl(&self, terms: &[(usize, Quadrature, f64)]) -> Result<f64> {
        let w = self.combination_vector(terms)?;
        Ok((&self.cov * &w).dot(&w) / w.norm_squared())
    }

    fn combination_vector(&self, terms: &[(usize, Quadrature, f64)]) -> Result<DVector<f64>> {
        let mut w = DVector::zeros(2 * self.n_modes);
        for &(mode, quad, coeff) in terms {
            check_mode(mode, self.n_modes)?;
            let idx = match quad {
                Quadrature::X => self.x_index(mode),
                Quadrature::Y => self.y_index(mode),
            };
            w[idx] += coeff;
        }
        Ok(w)
    }

    /// Uncertainty-principle and symmetry diagnostics. Reports, never fails.
    pub fn validate(&self) -> StateDiagnostics {
        let symmetry_deviation = (&self.cov - self.cov.transpose()).amax();
        let min_eig = self.min_uncertainty_eigenvalue();
        let mode_variances = (0..self.n_modes)
            .map(|m| (self.x_variance(m), self.y_variance(m)))
            .collect();
        StateDiagnostics {
            symmetry_deviation,
            min_uncertainty_eigenvalue: min_eig,
            mode_variances,
            physical: min_eig >= -1e-10,
        }
    }

    /// Minimum eigenvalue of the Hermitian matrix cov + iΩ, computed through
    /// its real symmetric embedding [[cov, -Ω], [Ω, cov]] (same spectrum,
    /// doubled).
    pub fn min_uncertainty_eigenvalue(&self) -> f64 {
        let d = 2 * self.n_modes;
        let omega = symplectic_form(self.n_modes);
        let mut em = DMatrix::zeros(2 * d, 2 * d);
        em.view_mut((0, 0), (d, d)).copy_from(&self.cov);
        em.view_mut((d, d), (d, d)).copy_from(&self.cov);
        em.view_mut((0, d), (d, d)).copy_from(&(-&omega));
        em.view_mut((d, 0), (d, d)).copy_from(&omega);
        // Guard exact symmetry for the eigensolver.
        let em = (&em + em.transpose()) * 0.5;
        em.symmetric_eigenvalues().min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_is_identity_covariance() {
        let st = GaussianState::vacuum(4).unwrap();
        assert_eq!(st.mean().amax(), 0.0);
        assert_eq!(st.cov(), &DMatrix::identity(8, 8));
        assert!(matches!(
            GaussianState::vacuum(0),
            Err(Error::EmptyState)
        ));
    }

    #[test]
    fn vacuum_saturates_uncertainty_bound() {
        let st = GaussianState::vacuum(2).unwrap();
        let diag = st.validate();
        assert!(diag.physical);
        assert!(diag.min_uncertainty_eigenvalue.abs() <= 1e-10);
    }

    #[test]
    fn displace_moves_mean_only() {
        let st = GaussianState::vacuum(1).unwrap().displace(0, 1.0, 5.0).unwrap();
        assert_eq!(st.x_mean(0), 1.0);
        assert_eq!(st.y_mean(0), 5.0);
        assert_eq!(st.cov(), &DMatrix::identity(2, 2));

        let back = st.displace(0, -1.0, -5.0).unwrap();
        assert_eq!(back.mean().amax(), 0.0);

        let same = GaussianState::vacuum(1).unwrap().displace(0, 0.0, 0.0).unwrap();
        assert_eq!(same, GaussianState::vacuum(1).unwrap());

        assert!(GaussianState::vacuum(1).unwrap().displace(1, 0.0, 0.0).is_err());
    }

    #[test]
    fn squeeze_scales_variances() {
        let st = GaussianState::vacuum(1)
            .unwrap()
            .squeeze(0, 1.0, Quadrature::X)
            .unwrap();
        assert_relative_eq!(st.x_variance(0), (2.0f64).exp(), max_relative = 1e-12);
        assert_relative_eq!(st.y_variance(0), (-2.0f64).exp(), max_relative = 1e-12);

        // r = 1 squeezing in dB, quoted as about 8 dB.
        let db = -10.0 * (-2.0f64).exp().log10();
        assert_relative_eq!(db, 8.685889638065037, max_relative = 1e-12);

        let id = GaussianState::vacuum(1).unwrap().squeeze(0, 0.0, Quadrature::Y).unwrap();
        assert_eq!(id, GaussianState::vacuum(1).unwrap());
    }

    #[test]
    fn phase_shift_rotates_mean() {
        let st = GaussianState::vacuum(1).unwrap().displace(0, 1.0, 0.0).unwrap();
        let rot = st.phase_shift(0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(rot.x_mean(0).abs() < 1e-12);
        assert_relative_eq!(rot.y_mean(0), 1.0, max_relative = 1e-12);

        let mut cycled = st.clone();
        for _ in 0..4 {
            cycled = cycled.phase_shift(0, std::f64::consts::FRAC_PI_2).unwrap();
        }
        assert!((cycled.mean() - st.mean()).amax() < 1e-12);
        assert!((cycled.cov() - st.cov()).amax() < 1e-12);

        let noop = st.phase_shift(0, 0.0).unwrap();
        assert_eq!(noop, st);
    }

    #[test]
    fn balanced_splitter_builds_epr_correlations() {
        // Mode 0 amplified in X (r1), mode 1 amplified in Y (r2): the output
        // X-difference carries mode 1's squeezed X, variance 2e^{-2 r2} raw.
        let (r1, r2) = (0.7, 1.3);
        let st = GaussianState::vacuum(2)
            .unwrap()
            .squeeze(0, r1, Quadrature::X)
            .unwrap()
            .squeeze(1, r2, Quadrature::Y)
            .unwrap()
            .beam_splitter(0, 1, 0.5)
            .unwrap();
        let diff = [
            (0, Quadrature::X, 1.0),
            (1, Quadrature::X, -1.0),
        ];
        assert_relative_eq!(
            st.combination_variance(&diff).unwrap(),
            2.0 * (-2.0 * r2).exp(),
            max_relative = 1e-10
        );
        assert_relative_eq!(
            st.combination_variance_snl(&diff).unwrap(),
            (-2.0 * r2).exp(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn splitter_edge_cases() {
        let st = GaussianState::vacuum(2).unwrap().displace(0, 1.0, 2.0).unwrap();
        let same = st.beam_splitter(0, 1, 1.0).unwrap();
        assert_eq!(same, st);

        assert!(matches!(
            st.beam_splitter(0, 0, 0.5),
            Err(Error::DuplicateMode(0))
        ));
        assert!(st.beam_splitter(0, 1, 1.5).is_err());

        // Applied twice, the balanced splitter is an exact signed mode
        // permutation (here the identity) and stays symplectic.
        let bs = SymplecticOp::beam_splitter(2, 0, 1, 0.5).unwrap();
        let twice = bs.compose(&bs);
        assert!((twice.matrix() - DMatrix::<f64>::identity(4, 4)).amax() < 1e-15);
        assert!(twice.symplectic_defect() < 1e-12);
    }

    #[test]
    fn unitary_network_rejects_non_unitary_input() {
        let mut u = DMatrix::from_element(2, 2, Complex::new(0.5, 0.0));
        u[(0, 0)] = Complex::new(1.1, 0.0);
        let err = GaussianState::vacuum(2).unwrap().apply_unitary_network(&u);
        match err {
            Err(Error::NotUnitary(dev)) => assert!(dev > 1e-10),
            other => panic!("expected NotUnitary, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_unitary_matches_phase_shift() {
        let theta = 0.37f64;
        let mut u = DMatrix::from_diagonal_element(2, 2, Complex::new(1.0, 0.0));
        u[(0, 0)] = Complex::new(theta.cos(), theta.sin());
        let st = GaussianState::vacuum(2)
            .unwrap()
            .displace(0, 0.4, -0.9)
            .unwrap()
            .squeeze(1, 0.6, Quadrature::Y)
            .unwrap();

        let eye = DMatrix::from_diagonal_element(2, 2, Complex::new(1.0, 0.0));
        let same = st.apply_unitary_network(&eye).unwrap();
        assert_eq!(same, st);
        let via_network = st.apply_unitary_network(&u).unwrap();
        let via_rotation = st.phase_shift(0, theta).unwrap();
        assert!((via_network.mean() - via_rotation.mean()).amax() < 1e-12);
        assert!((via_network.cov() - via_rotation.cov()).amax() < 1e-12);
    }

    #[test]
    fn opa_gain_convention() {
        assert_relative_eq!(3.0f64.exp(), 20.085536923187668, max_relative = 1e-12);
        assert_relative_eq!(4.6f64.exp(), 99.48431564193386, max_relative = 1e-12);

        // Equal gains on both halves of an EPR pair rescale the phase-sum
        // variance by exactly e^{2r}.
        let r3 = 1.1;
        let epr = GaussianState::vacuum(2)
            .unwrap()
            .squeeze(0, 1.0, Quadrature::X)
            .unwrap()
            .squeeze(1, 1.0, Quadrature::Y)
            .unwrap()
            .beam_splitter(0, 1, 0.5)
            .unwrap();
        let sum = [(0, Quadrature::Y, 1.0), (1, Quadrature::Y, 1.0)];
        let before = epr.combination_variance(&sum).unwrap();
        let amped = epr
            .opa(0, r3, Quadrature::Y)
            .unwrap()
            .opa(1, r3, Quadrature::Y)
            .unwrap();
        let after = amped.combination_variance(&sum).unwrap();
        assert_relative_eq!(after, (2.0 * r3).exp() * before, max_relative = 1e-10);
    }

    #[test]
    fn loss_conventions() {
        let st = GaussianState::vacuum(1)
            .unwrap()
            .squeeze(0, 1.0, Quadrature::X)
            .unwrap();

        let same = st.loss(0, 1.0, LossConvention::Physical).unwrap();
        assert!((same.cov() - st.cov()).amax() < 1e-15);

        let erased = st
            .displace(0, 2.0, -1.0)
            .unwrap()
            .loss(0, 0.0, LossConvention::Physical)
            .unwrap();
        assert_eq!(erased, GaussianState::vacuum(1).unwrap());

        // η = 0.5 on the squeezed quadrature: 0.5 e^{-2} + 0.5.
        let half = st.loss(0, 0.5, LossConvention::Physical).unwrap();
        assert_relative_eq!(
            half.y_variance(0),
            0.5 * (-2.0f64).exp() + 0.5,
            max_relative = 1e-12
        );

        assert!(st.loss(0, 1.2, LossConvention::Physical).is_err());
        assert!(st.loss(0, -0.1, LossConvention::PaperLinear).is_err());
    }

    #[test]
    fn paper_linear_loss_is_flagged_non_physical() {
        let st = GaussianState::vacuum(1)
            .unwrap()
            .loss(0, 0.6, LossConvention::PaperLinear)
            .unwrap();
        let diag = st.validate();
        assert!(!diag.physical);

        let phys = GaussianState::vacuum(1)
            .unwrap()
            .loss(0, 0.6, LossConvention::Physical)
            .unwrap();
        assert!(phys.validate().physical);
    }

    #[test]
    fn post_opa_squeezed_state_is_physical() {
        let st = GaussianState::vacuum(2)
            .unwrap()
            .squeeze(0, 1.0, Quadrature::X)
            .unwrap()
            .squeeze(1, 1.0, Quadrature::Y)
            .unwrap()
            .beam_splitter(0, 1, 0.5)
            .unwrap()
            .opa(0, 3.0, Quadrature::Y)
            .unwrap()
            .opa(1, 3.0, Quadrature::Y)
            .unwrap()
            .loss(0, 0.3, LossConvention::Physical)
            .unwrap()
            .loss(1, 0.8, LossConvention::Physical)
            .unwrap();
        let diag = st.validate();
        assert!(diag.physical, "min eig {}", diag.min_uncertainty_eigenvalue);
        assert!(diag.symmetry_deviation <= 1e-12);
    }
}
