//! Sweep configuration: a TOML document with nested sections, strict about
//! unknown keys, with defaults applied at load time and echoed back on
//! request.

use serde::{Deserialize, Serialize};

use cv_metrology::cluster::{ClusterScenario, ClusterSweep};
use cv_metrology::epr::EprScenario;
use cv_metrology::{ClusterParams, EprParams, Grid, LossConvention, Sign};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    #[serde(rename = "epr")]
    Epr,
    #[serde(rename = "cluster-1d")]
    Cluster1d,
    #[serde(rename = "cluster-2d")]
    Cluster2d,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scenario::Epr => "epr",
            Scenario::Cluster1d => "cluster-1d",
            Scenario::Cluster2d => "cluster-2d",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    Physical,
    PaperLinear,
}

impl From<Convention> for LossConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Physical => LossConvention::Physical,
            Convention::PaperLinear => LossConvention::PaperLinear,
        }
    }
}

fn default_theta_deg() -> f64 {
    1.5
}

fn default_phi_deg() -> f64 {
    90.0
}

/// Scenario parameters. `r2` falls back to `r1`; the cluster-only
/// displacement knobs default to zero for cluster scenarios and must be
/// absent (or zero) for the two-mode scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    /// Initial squeezing parameter (common value for the cluster).
    pub r1: f64,
    /// Second squeezer for the two-mode scenario; defaults to `r1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    /// Amplifier gain parameter (both arms / all configured modes).
    pub r_opa: f64,
    pub beta1: f64,
    pub beta2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta4: Option<f64>,
    #[serde(default = "default_theta_deg")]
    pub theta_deg: f64,
    #[serde(default = "default_phi_deg")]
    pub phi_deg: f64,
}

fn default_grid_start() -> f64 {
    0.0
}

fn default_grid_stop() -> f64 {
    0.95
}

fn default_grid_step() -> f64 {
    0.01
}

fn default_sweep_modes() -> [usize; 2] {
    [1, 2]
}

fn default_fixed_eta() -> [f64; 2] {
    [0.5, 0.5]
}

/// Loss grid(s). The second axis and the 2-D keys apply to `cluster-2d` only;
/// its axes default to the first axis when absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(default = "default_grid_start")]
    pub start: f64,
    #[serde(default = "default_grid_stop")]
    pub stop: f64,
    #[serde(default = "default_grid_step")]
    pub step: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step2: Option<f64>,
    /// One-based swept mode pair for two-axis sweeps.
    #[serde(default = "default_sweep_modes")]
    pub sweep_modes: [usize; 2],
    /// Transmissivities of the two non-swept modes, ascending mode order.
    #[serde(default = "default_fixed_eta")]
    pub fixed_eta: [f64; 2],
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            start: default_grid_start(),
            stop: default_grid_stop(),
            step: default_grid_step(),
            start2: None,
            stop2: None,
            step2: None,
            sweep_modes: default_sweep_modes(),
            fixed_eta: default_fixed_eta(),
        }
    }
}

fn default_true() -> bool {
    true
}

/// Which column families the emitters keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantsSection {
    #[serde(default = "default_true")]
    pub with_opa: bool,
    #[serde(default = "default_true")]
    pub without_opa: bool,
    #[serde(default = "default_true")]
    pub snl: bool,
    #[serde(default = "default_true")]
    pub as_printed: bool,
}

impl Default for VariantsSection {
    fn default() -> Self {
        Self { with_opa: true, without_opa: true, snl: true, as_printed: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    /// Output directory; falls back to --out, then $CVSWEEP_OUT_DIR, then ".".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    #[serde(default)]
    pub format: OutputFormat,
    /// File stem; defaults to the preset name or the config file stem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basename: Option<String>,
    /// Log-scale σ axis in SVG output.
    #[serde(default = "default_true")]
    pub svg_log_scale: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: None, format: OutputFormat::Csv, basename: None, svg_log_scale: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub convention: Convention,
    pub params: ParamsSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub variants: VariantsSection,
    #[serde(default)]
    pub output: OutputSection,
}

impl SweepConfig {
    /// Parse and validate a TOML document. Unknown keys are rejected with the
    /// offending line; bound violations name the field.
    pub fn parse(text: &str) -> Result<Self> {
        let config: SweepConfig =
            toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Serialize back to TOML; `parse` of this output reproduces the config.
    pub fn print(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// The config with every optional parameter resolved to its effective
    /// value, as echoed by `validate`.
    pub fn resolved(&self) -> Self {
        let mut c = self.clone();
        c.params.r2 = Some(self.r2());
        if self.scenario != Scenario::Epr {
            c.params.alpha2 = Some(self.params.alpha2.unwrap_or(0.0));
            c.params.alpha3 = Some(self.params.alpha3.unwrap_or(0.0));
            c.params.beta4 = Some(self.params.beta4.unwrap_or(0.0));
        }
        if self.scenario == Scenario::Cluster2d {
            c.grid.start2 = Some(self.grid.start2.unwrap_or(self.grid.start));
            c.grid.stop2 = Some(self.grid.stop2.unwrap_or(self.grid.stop));
            c.grid.step2 = Some(self.grid.step2.unwrap_or(self.grid.step));
        }
        c
    }

    fn r2(&self) -> f64 {
        self.params.r2.unwrap_or(self.params.r1)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        for (name, value) in [
            ("params.r1", p.r1),
            ("params.r2", self.r2()),
            ("params.r_opa", p.r_opa),
            ("params.beta1", p.beta1),
            ("params.beta2", p.beta2),
            ("params.theta_deg", p.theta_deg),
            ("params.phi_deg", p.phi_deg),
        ] {
            if !value.is_finite() {
                return Err(CliError::Validation(format!("{name} must be finite, got {value}")));
            }
        }
        if self.scenario == Scenario::Epr {
            for (name, value) in [
                ("params.alpha2", p.alpha2),
                ("params.alpha3", p.alpha3),
                ("params.beta4", p.beta4),
            ] {
                if value.unwrap_or(0.0) != 0.0 {
                    return Err(CliError::Validation(format!(
                        "{name} applies to cluster scenarios only; remove it or set it to 0"
                    )));
                }
            }
        }
        let g = &self.grid;
        for (name, grid) in [
            ("grid", (g.start, g.stop, g.step)),
            (
                "grid axis 2",
                (
                    g.start2.unwrap_or(g.start),
                    g.stop2.unwrap_or(g.stop),
                    g.step2.unwrap_or(g.step),
                ),
            ),
        ] {
            let (start, stop, step) = grid;
            if !(start.is_finite() && stop.is_finite() && step > 0.0 && stop >= start) {
                return Err(CliError::Validation(format!(
                    "{name} must satisfy start <= stop with step > 0, got start={start} stop={stop} step={step}"
                )));
            }
            if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) {
                return Err(CliError::Validation(format!(
                    "{name} loss values must lie in [0, 1], got start={start} stop={stop}"
                )));
            }
        }
        if self.scenario == Scenario::Cluster2d {
            let [m1, m2] = g.sweep_modes;
            if m1 == m2 || !(1..=4).contains(&m1) || !(1..=4).contains(&m2) {
                return Err(CliError::Validation(format!(
                    "grid.sweep_modes must be two distinct modes in 1..=4, got [{m1}, {m2}]"
                )));
            }
            for eta in g.fixed_eta {
                if !(0.0..=1.0).contains(&eta) {
                    return Err(CliError::Validation(format!(
                        "grid.fixed_eta values must lie in [0, 1], got {eta}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn theta(&self) -> f64 {
        self.params.theta_deg.to_radians()
    }

    fn phi(&self) -> f64 {
        self.params.phi_deg.to_radians()
    }

    pub fn epr_params(&self) -> EprParams {
        EprParams {
            r1: self.params.r1,
            r2: self.r2(),
            r3: self.params.r_opa,
            r4: self.params.r_opa,
            eta1: 1.0,
            eta2: 1.0,
            beta1: self.params.beta1,
            beta2: self.params.beta2,
            theta: self.theta(),
            phi: self.phi(),
            sign: Sign::Plus,
        }
    }

    pub fn cluster_params(&self) -> ClusterParams {
        ClusterParams {
            r: self.params.r1,
            r_prime: self.params.r_opa,
            eta: [1.0; 4],
            beta1: self.params.beta1,
            beta2: self.params.beta2,
            alpha2: self.params.alpha2.unwrap_or(0.0),
            alpha3: self.params.alpha3.unwrap_or(0.0),
            beta4: self.params.beta4.unwrap_or(0.0),
            theta: self.theta(),
            phi: self.phi(),
        }
    }

    fn grid1(&self) -> Result<Grid> {
        Grid::new(self.grid.start, self.grid.stop, self.grid.step).map_err(CliError::from)
    }

    pub fn epr_scenario(&self) -> Result<EprScenario> {
        Ok(EprScenario {
            params: self.epr_params(),
            convention: self.convention.into(),
            grid: self.grid1()?,
        })
    }

    pub fn cluster_scenario(&self) -> Result<ClusterScenario> {
        let sweep = match self.scenario {
            Scenario::Cluster1d => ClusterSweep::CommonLoss(self.grid1()?),
            Scenario::Cluster2d => {
                let g = &self.grid;
                ClusterSweep::TwoMode {
                    modes: [g.sweep_modes[0] - 1, g.sweep_modes[1] - 1],
                    grid1: self.grid1()?,
                    grid2: Grid::new(
                        g.start2.unwrap_or(g.start),
                        g.stop2.unwrap_or(g.stop),
                        g.step2.unwrap_or(g.step),
                    )?,
                    fixed_eta: g.fixed_eta,
                }
            }
            Scenario::Epr => return Err(CliError::Validation("not a cluster scenario".into())),
        };
        Ok(ClusterScenario {
            params: self.cluster_params(),
            convention: self.convention.into(),
            sweep,
        })
    }
}
