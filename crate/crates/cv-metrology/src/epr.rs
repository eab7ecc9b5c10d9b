//! Two-mode scenario: orthogonally squeezed inputs interfered on a balanced
//! splitter, phase-quadrature amplification on each arm, unknown phases,
//! per-mode loss, and a joint two-detector current I₁ ± I₂.

use crate::analytic::{self, EprParams, Sign};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, LossConvention, Quadrature};
use crate::homodyne::{sensitivity, HomodyneReadout, ReadoutTerm, SensitivityResult, SlopeMethod};
use crate::sweep::{parallel_map, Grid, SweepTable};

/// Which of the two unknown phases a sensitivity targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EprPhase {
    One,
    Two,
}

/// A loss sweep over the two-mode scenario. The three variant curves
/// (amplified, unamplified, shot-noise reference) and the printed closed form
/// are evaluated on the same grid.
#[derive(Debug, Clone)]
pub struct EprScenario {
    pub params: EprParams,
    pub convention: LossConvention,
    /// Grid over loss 1-η, applied to both modes equally.
    pub grid: Grid,
}

/// Assemble the two-mode state: squeeze (mode 1 amplified in X, mode 2 in Y),
/// displace the phase quadratures, interfere on the balanced splitter,
/// amplify the phase quadratures, then attenuate per mode.
pub fn build_epr_state(
    p: &EprParams,
    eta: [f64; 2],
    convention: LossConvention,
) -> Result<GaussianState> {
    p.validate()?;
    GaussianState::vacuum(2)?
        .squeeze(0, p.r1, Quadrature::X)?
        .squeeze(1, p.r2, Quadrature::Y)?
        .displace(0, 0.0, p.beta1)?
        .displace(1, 0.0, p.beta2)?
        .beam_splitter(0, 1, 0.5)?
        .opa(0, p.r3, Quadrature::Y)?
        .opa(1, p.r4, Quadrature::Y)?
        .loss(0, eta[0], convention)?
        .loss(1, eta[1], convention)
}

fn joint_readout(p: &EprParams, sign: Sign, phase: EprPhase) -> Result<HomodyneReadout> {
    let track = |mode_phase: EprPhase| mode_phase == phase;
    HomodyneReadout::new(
        vec![
            ReadoutTerm {
                mode: 0,
                coeff: 1.0,
                theta: p.theta,
                phi: p.phi,
                tracks_estimate: track(EprPhase::One),
            },
            ReadoutTerm {
                mode: 1,
                coeff: sign.signum(),
                theta: p.theta,
                phi: p.phi,
                tracks_estimate: track(EprPhase::Two),
            },
        ],
        1.0,
    )
}

/// Oracle sensitivity of one phase taken from the joint current I₁ ± I₂.
pub fn epr_phase_sensitivity(
    p: &EprParams,
    eta: [f64; 2],
    convention: LossConvention,
    sign: Sign,
    phase: EprPhase,
) -> Result<SensitivityResult> {
    let state = build_epr_state(p, eta, convention)?;
    let readout = joint_readout(p, sign, phase)?;
    sensitivity(&state, &readout, p.theta, SlopeMethod::Analytic)
}

/// The sign-paired sensitivity: the sum current estimates phase 1, the
/// difference current phase 2 (their slopes carry β₁+β₂ and β₁-β₂).
pub fn epr_sensitivity(
    p: &EprParams,
    eta: [f64; 2],
    convention: LossConvention,
    sign: Sign,
) -> Result<SensitivityResult> {
    let phase = match sign {
        Sign::Plus => EprPhase::One,
        Sign::Minus => EprPhase::Two,
    };
    epr_phase_sensitivity(p, eta, convention, sign, phase)
}

/// Arithmetic mean of the two phase sensitivities, both taken from the
/// sum current.
pub fn epr_average_sensitivity(
    p: &EprParams,
    eta: [f64; 2],
    convention: LossConvention,
) -> Result<f64> {
    let s1 = epr_phase_sensitivity(p, eta, convention, Sign::Plus, EprPhase::One)?;
    let s2 = epr_phase_sensitivity(p, eta, convention, Sign::Plus, EprPhase::Two)?;
    Ok(0.5 * (s1.sigma + s2.sigma))
}

fn average_or_degenerate(
    p: &EprParams,
    eta: [f64; 2],
    convention: LossConvention,
    warnings: &mut Vec<String>,
    label: &str,
    loss: f64,
) -> Result<Option<f64>> {
    match epr_average_sensitivity(p, eta, convention) {
        Ok(v) => Ok(Some(v)),
        Err(Error::DegenerateEstimator(slope)) => {
            warnings.push(format!("loss={loss}: {label} estimator degenerate (slope {slope:.3e})"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Sweep the three variant curves and the printed closed form over the loss
/// grid. Row order follows the grid; degenerate points become empty cells.
pub fn sweep_epr(scenario: &EprScenario, threads: usize) -> Result<SweepTable> {
    scenario.params.validate()?;
    let losses = scenario.grid.values();
    if losses.is_empty() || losses.iter().any(|l| !(0.0..=1.0).contains(l)) {
        return Err(Error::BadGrid);
    }
    let p = scenario.params;
    let no_opa = EprParams { r3: 0.0, r4: 0.0, ..p };
    let snl = EprParams { r1: 0.0, r2: 0.0, ..p };

    let results: Vec<crate::sweep::RowOutcome> =
        parallel_map(losses.len(), threads, |i| {
            let loss = losses[i];
            let eta = [1.0 - loss, 1.0 - loss];
            let mut warnings = Vec::new();
            let opa_col =
                average_or_degenerate(&p, eta, scenario.convention, &mut warnings, "amplified", loss)?;
            let noopa_col =
                average_or_degenerate(&no_opa, eta, scenario.convention, &mut warnings, "unamplified", loss)?;
            let snl_col =
                average_or_degenerate(&snl, eta, scenario.convention, &mut warnings, "shot-noise", loss)?;
            let printed = printed_average(&p, eta, &mut warnings, loss);
            let db = match (opa_col, snl_col) {
                (Some(o), Some(s)) if o > 0.0 && s > 0.0 => Some(20.0 * (o / s).log10()),
                _ => None,
            };
            Ok((vec![Some(loss), opa_col, noopa_col, snl_col, printed, db], warnings))
        });

    let mut table = SweepTable::new(
        ["loss", "sigma_opa", "sigma_noopa", "sigma_snl", "sigma_eq11", "db_rel_snl"]
            .map(str::to_owned)
            .to_vec(),
    );
    for result in results {
        let (row, warnings) = result?;
        table.rows.push(row);
        table.warnings.extend(warnings);
    }
    Ok(table)
}

fn printed_average(
    p: &EprParams,
    eta: [f64; 2],
    warnings: &mut Vec<String>,
    loss: f64,
) -> Option<f64> {
    let mut values = Vec::with_capacity(2);
    for sign in [Sign::Plus, Sign::Minus] {
        let printed = EprParams { eta1: eta[0], eta2: eta[1], sign, ..*p };
        match analytic::epr_sensitivity_as_printed(&printed) {
            Ok(v) => values.push(v.abs()),
            Err(_) => {
                warnings.push(format!("loss={loss}: printed closed form degenerate"));
                return None;
            }
        }
    }
    Some(0.5 * (values[0] + values[1]))
}
