//! Four-mode square-cluster scenario: four phase-squeezed inputs through the
//! cluster-generation network, one amplifier configuration per nullifier,
//! unknown phases, per-mode loss, and four joint three-detector currents.

use nalgebra::{Complex, DMatrix};

use crate::analytic::{self, ClusterParams};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, LossConvention, Quadrature};
use crate::homodyne::{sensitivity, HomodyneReadout, ReadoutTerm, SensitivityResult, SlopeMethod};
use crate::sweep::{parallel_map, Grid, SweepTable};

/// One nullifier Y_b(minuend) - X_b(i) - X_b(j) of the square cluster, with
/// the joint current that estimates the minuend's phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullifierSpec {
    /// Phase index 1..=4.
    pub k: usize,
    /// Zero-based mode whose phase quadrature leads the combination.
    pub minuend: usize,
    /// Zero-based nearest-neighbor modes subtracted in amplitude.
    pub subtrahends: [usize; 2],
}

/// The nullifier layout of the square cluster: modes 1 and 2 neighbor
/// modes 3 and 4 and vice versa.
pub fn nullifier_spec(k: usize) -> Result<NullifierSpec> {
    let (minuend, subtrahends) = match k {
        1 => (0, [2, 3]),
        2 => (1, [2, 3]),
        3 => (2, [0, 1]),
        4 => (3, [0, 1]),
        _ => return Err(Error::PhaseIndexOutOfRange(k)),
    };
    Ok(NullifierSpec { k, minuend, subtrahends })
}

/// The square-cluster generation unitary (columns: input modes, rows: output
/// modes). Exactly unitary in closed form.
pub fn cluster_unitary() -> DMatrix<Complex<f64>> {
    let re = |x: f64| Complex::new(x, 0.0);
    let im = |x: f64| Complex::new(0.0, x);
    let a = 1.0 / 2.0f64.sqrt();
    let b = 1.0 / 10.0f64.sqrt();
    let c = 2.0 / 10.0f64.sqrt();
    DMatrix::from_row_slice(
        4,
        4,
        &[
            re(-a), re(-b), im(-c), re(0.0),
            re(a),  re(-b), im(-c), re(0.0),
            re(0.0), im(-c), re(-b), re(-a),
            re(0.0), im(-c), re(-b), re(a),
        ],
    )
}

/// Assemble the cluster state: squeeze every mode amplified in X (phase
/// quadrature squeezed to e^{-r}), displace per the scenario knobs, then run
/// the generation network. No amplifiers, phases, or loss yet — those are
/// configured per estimated phase.
pub fn build_cluster(p: &ClusterParams) -> Result<GaussianState> {
    p.validate()?;
    let mut st = GaussianState::vacuum(4)?;
    for mode in 0..4 {
        st = st.squeeze(mode, p.r, Quadrature::X)?;
    }
    st = st
        .displace(0, 0.0, p.beta1)?
        .displace(1, p.alpha2, p.beta2)?
        .displace(2, p.alpha3, 0.0)?
        .displace(3, 0.0, p.beta4)?;
    st.apply_unitary_network(&cluster_unitary())
}

/// Raw variance of the nullifier combination (unit coefficients, fixed
/// quadrature angles).
pub fn nullifier_check(state: &GaussianState, spec: &NullifierSpec) -> Result<f64> {
    state.combination_variance(&[
        (spec.minuend, Quadrature::Y, 1.0),
        (spec.subtrahends[0], Quadrature::X, -1.0),
        (spec.subtrahends[1], Quadrature::X, -1.0),
    ])
}

fn configured_state(
    spec: &NullifierSpec,
    p: &ClusterParams,
    eta: [f64; 4],
    convention: LossConvention,
) -> Result<GaussianState> {
    let mut st = build_cluster(p)?
        .opa(spec.minuend, p.r_prime, Quadrature::Y)?
        .opa(spec.subtrahends[0], p.r_prime, Quadrature::X)?
        .opa(spec.subtrahends[1], p.r_prime, Quadrature::X)?;
    for (mode, &e) in eta.iter().enumerate() {
        st = st.loss(mode, e, convention)?;
    }
    Ok(st)
}

fn joint_readout(spec: &NullifierSpec, p: &ClusterParams) -> Result<HomodyneReadout> {
    // Minuend detector reads near its phase quadrature, subtrahends sit a
    // quarter period below and read near amplitude.
    let sub_phi = p.phi - std::f64::consts::FRAC_PI_2;
    HomodyneReadout::new(
        vec![
            ReadoutTerm::estimated(spec.minuend, 1.0, p.theta, p.phi),
            ReadoutTerm::fixed(spec.subtrahends[0], -1.0, p.theta, sub_phi),
            ReadoutTerm::fixed(spec.subtrahends[1], -1.0, p.theta, sub_phi),
        ],
        1.0,
    )
}

/// Oracle sensitivity of phase `k` (1..=4) from its joint current, with the
/// amplifier configured for that nullifier. Exact: no de-amplified terms are
/// dropped.
pub fn phase_sensitivity(
    k: usize,
    p: &ClusterParams,
    eta: [f64; 4],
    convention: LossConvention,
) -> Result<SensitivityResult> {
    let spec = nullifier_spec(k)?;
    let state = configured_state(&spec, p, eta, convention)?;
    let readout = joint_readout(&spec, p)?;
    sensitivity(&state, &readout, p.theta, SlopeMethod::Analytic)
}

/// Arithmetic mean of the four phase sensitivities, each from a freshly
/// configured state.
pub fn average_sensitivity(
    p: &ClusterParams,
    eta: [f64; 4],
    convention: LossConvention,
) -> Result<f64> {
    let mut total = 0.0;
    for k in 1..=4 {
        total += phase_sensitivity(k, p, eta, convention)?.sigma;
    }
    Ok(total / 4.0)
}

/// Loss-sweep layout for the cluster scenario.
#[derive(Debug, Clone)]
pub enum ClusterSweep {
    /// One common loss on all four modes.
    CommonLoss(Grid),
    /// Independent losses on two modes, the other two held at fixed
    /// transmissivities (listed in ascending mode order).
    TwoMode {
        /// Zero-based swept modes.
        modes: [usize; 2],
        grid1: Grid,
        grid2: Grid,
        fixed_eta: [f64; 2],
    },
}

#[derive(Debug, Clone)]
pub struct ClusterScenario {
    pub params: ClusterParams,
    pub convention: LossConvention,
    pub sweep: ClusterSweep,
}

struct VariantSigmas {
    per_phase: [Option<f64>; 4],
    average: Option<f64>,
}

fn variant_sigmas(
    p: &ClusterParams,
    eta: [f64; 4],
    convention: LossConvention,
    warnings: &mut Vec<String>,
    label: &str,
    coords: &str,
) -> Result<VariantSigmas> {
    let mut per_phase = [None; 4];
    for (slot, k) in per_phase.iter_mut().zip(1..=4usize) {
        match phase_sensitivity(k, p, eta, convention) {
            Ok(res) => *slot = Some(res.sigma),
            Err(Error::DegenerateEstimator(slope)) => {
                warnings.push(format!(
                    "{coords}: {label} phase-{k} estimator degenerate (slope {slope:.3e})"
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let average = per_phase
        .iter()
        .try_fold(0.0, |acc, s| s.map(|v| acc + v))
        .map(|sum| sum / 4.0);
    Ok(VariantSigmas { per_phase, average })
}

fn printed_sigmas(p: &ClusterParams, eta: [f64; 4]) -> ([Option<f64>; 4], Option<f64>) {
    let at = ClusterParams { eta, ..*p };
    let mut per_phase = [None; 4];
    for (slot, k) in per_phase.iter_mut().zip(1..=4usize) {
        *slot = analytic::cluster_sensitivity_as_printed(k, &at).ok().map(f64::abs);
    }
    let average = per_phase
        .iter()
        .try_fold(0.0, |acc, s| s.map(|v| acc + v))
        .map(|sum| sum / 4.0);
    (per_phase, average)
}

fn db_column(opa: Option<f64>, snl: Option<f64>) -> Option<f64> {
    match (opa, snl) {
        (Some(o), Some(s)) if o > 0.0 && s > 0.0 => Some(20.0 * (o / s).log10()),
        _ => None,
    }
}

/// Common-loss sweep: per-phase and average sensitivities for the amplified,
/// unamplified, and shot-noise variants, plus the printed closed forms.
pub fn sweep_cluster_1d(scenario: &ClusterScenario, threads: usize) -> Result<SweepTable> {
    let grid = match &scenario.sweep {
        ClusterSweep::CommonLoss(grid) => *grid,
        ClusterSweep::TwoMode { .. } => return Err(Error::BadGrid),
    };
    scenario.params.validate()?;
    let losses = grid.values();
    if losses.is_empty() || losses.iter().any(|l| !(0.0..=1.0).contains(l)) {
        return Err(Error::BadGrid);
    }
    let p = scenario.params;
    let no_opa = ClusterParams { r_prime: 0.0, ..p };
    let snl = ClusterParams { r: 0.0, ..p };

    let mut columns = vec!["loss".to_owned()];
    for variant in ["opa", "noopa", "snl"] {
        for k in 1..=4 {
            columns.push(format!("sigma{k}_{variant}"));
        }
        columns.push(format!("sigma_ave_{variant}"));
    }
    for k in 1..=4 {
        columns.push(format!("sigma_eq{}", 20 + k));
    }
    columns.push("sigma_ave_printed".to_owned());
    columns.push("db_rel_snl".to_owned());

    let results: Vec<crate::sweep::RowOutcome> =
        parallel_map(losses.len(), threads, |i| {
            let loss = losses[i];
            let eta = [1.0 - loss; 4];
            let coords = format!("loss={loss}");
            let mut warnings = Vec::new();
            let mut row = vec![Some(loss)];
            let mut averages = Vec::with_capacity(3);
            for (variant, label) in [(&p, "amplified"), (&no_opa, "unamplified"), (&snl, "shot-noise")] {
                let v = variant_sigmas(variant, eta, scenario.convention, &mut warnings, label, &coords)?;
                row.extend(v.per_phase);
                row.push(v.average);
                averages.push(v.average);
            }
            let (printed, printed_ave) = printed_sigmas(&p, eta);
            row.extend(printed);
            row.push(printed_ave);
            row.push(db_column(averages[0], averages[2]));
            Ok((row, warnings))
        });

    let mut table = SweepTable::new(columns);
    for result in results {
        let (row, warnings) = result?;
        table.rows.push(row);
        table.warnings.extend(warnings);
    }
    Ok(table)
}

/// Two-axis loss sweep over the chosen mode pair; rows ordered loss1-major.
pub fn sweep_cluster_2d(scenario: &ClusterScenario, threads: usize) -> Result<SweepTable> {
    let (modes, grid1, grid2, fixed_eta) = match &scenario.sweep {
        ClusterSweep::TwoMode { modes, grid1, grid2, fixed_eta } => {
            (*modes, *grid1, *grid2, *fixed_eta)
        }
        ClusterSweep::CommonLoss(_) => return Err(Error::BadGrid),
    };
    scenario.params.validate()?;
    if modes[0] == modes[1] {
        return Err(Error::DuplicateMode(modes[0]));
    }
    for m in modes {
        if m >= 4 {
            return Err(Error::ModeOutOfRange { mode: m, n_modes: 4 });
        }
    }
    for e in fixed_eta {
        if !(0.0..=1.0).contains(&e) {
            return Err(Error::TransmissivityOutOfRange(e));
        }
    }
    let l1 = grid1.values();
    let l2 = grid2.values();
    if l1.is_empty() || l2.is_empty() || l1.iter().chain(&l2).any(|l| !(0.0..=1.0).contains(l)) {
        return Err(Error::BadGrid);
    }
    let fixed_modes: Vec<usize> = (0..4).filter(|m| !modes.contains(m)).collect();
    let p = scenario.params;
    let no_opa = ClusterParams { r_prime: 0.0, ..p };
    let snl = ClusterParams { r: 0.0, ..p };

    let total = l1.len() * l2.len();
    let results: Vec<crate::sweep::RowOutcome> = parallel_map(total, threads, |idx| {
        let (i, j) = (idx / l2.len(), idx % l2.len());
        let (loss1, loss2) = (l1[i], l2[j]);
        let mut eta = [0.0; 4];
        eta[modes[0]] = 1.0 - loss1;
        eta[modes[1]] = 1.0 - loss2;
        eta[fixed_modes[0]] = fixed_eta[0];
        eta[fixed_modes[1]] = fixed_eta[1];
        let coords = format!("loss1={loss1},loss2={loss2}");
        let mut warnings = Vec::new();
        let mut averages = Vec::with_capacity(3);
        for (variant, label) in [(&p, "amplified"), (&no_opa, "unamplified"), (&snl, "shot-noise")] {
            let v = variant_sigmas(variant, eta, scenario.convention, &mut warnings, label, &coords)?;
            averages.push(v.average);
        }
        let (_, printed_ave) = printed_sigmas(&p, eta);
        let row = vec![
            Some(loss1),
            Some(loss2),
            averages[0],
            averages[1],
            averages[2],
            printed_ave,
            db_column(averages[0], averages[2]),
        ];
        Ok((row, warnings))
    });

    let mut table = SweepTable::new(
        [
            "loss1",
            "loss2",
            "sigma_ave_opa",
            "sigma_ave_noopa",
            "sigma_ave_snl",
            "sigma_ave_printed",
            "db_rel_snl",
        ]
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
