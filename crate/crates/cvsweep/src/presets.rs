//! Bundled sweep configurations covering the shipped example scenarios.

use crate::config::{
    GridSection, OutputSection, ParamsSection, Scenario, SweepConfig, VariantsSection,
};
use crate::error::{CliError, Result};

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2",
        description: "two-mode pair, gain 100 amplifier, common loss 0..0.95",
    },
    Preset {
        name: "fig4a",
        description: "square cluster, gain 20 amplifier, common loss; per-phase columns",
    },
    Preset {
        name: "fig4b",
        description: "square cluster, common loss; four-phase average columns",
    },
    Preset {
        name: "fig5a",
        description: "square cluster, losses on modes 1,2 swept; modes 3,4 held at 0.5",
    },
    Preset {
        name: "fig5b",
        description: "square cluster, losses on modes 2,3 swept; modes 1,4 held at 0.5",
    },
    Preset {
        name: "fig5c",
        description: "square cluster, losses on modes 2,4 swept; modes 1,3 held at 0.5",
    },
    Preset {
        name: "fig5d",
        description: "square cluster, losses on modes 3,4 swept; modes 1,2 held at 0.5",
    },
];

fn epr_base() -> SweepConfig {
    SweepConfig {
        scenario: Scenario::Epr,
        convention: Default::default(),
        params: ParamsSection {
            r1: 1.0,
            r2: Some(1.0),
            r_opa: 4.6,
            beta1: 1.0,
            beta2: 5.0,
            alpha2: None,
            alpha3: None,
            beta4: None,
            theta_deg: 1.5,
            phi_deg: 90.0,
        },
        grid: GridSection::default(),
        variants: VariantsSection::default(),
        output: OutputSection::default(),
    }
}

fn cluster_common_loss() -> SweepConfig {
    SweepConfig {
        scenario: Scenario::Cluster1d,
        params: ParamsSection {
            r1: 1.0,
            r2: None,
            r_opa: 3.0,
            beta1: 1.0,
            beta2: 2.0,
            alpha2: Some(0.0),
            alpha3: Some(2.0),
            beta4: Some(0.0),
            theta_deg: 1.5,
            phi_deg: 90.0,
        },
        ..epr_base()
    }
}

fn cluster_two_axis(modes: [usize; 2]) -> SweepConfig {
    let mut c = cluster_common_loss();
    c.scenario = Scenario::Cluster2d;
    // The two-axis scenarios carry the full displacement set.
    c.params.alpha2 = Some(1.0);
    c.params.beta4 = Some(3.0);
    c.grid = GridSection {
        step: 0.05,
        step2: Some(0.05),
        start2: Some(0.0),
        stop2: Some(0.95),
        sweep_modes: modes,
        fixed_eta: [0.5, 0.5],
        ..GridSection::default()
    };
    c
}

/// Look up a bundled preset. `fig4` is an alias for `fig4a`.
pub fn preset(name: &str) -> Result<SweepConfig> {
    let config = match name {
        "fig2" => epr_base(),
        "fig4" | "fig4a" | "fig4b" => cluster_common_loss(),
        "fig5a" => cluster_two_axis([1, 2]),
        "fig5b" => cluster_two_axis([2, 3]),
        "fig5c" => cluster_two_axis([2, 4]),
        "fig5d" => cluster_two_axis([3, 4]),
        other => return Err(CliError::UnknownPreset(other.to_owned())),
    };
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_validate_and_round_trip() {
        for p in PRESETS {
            let c = preset(p.name).unwrap();
            c.validate().unwrap();
            let text = c.print();
            assert_eq!(SweepConfig::parse(&text).unwrap(), c, "round trip for {}", p.name);
        }
        assert!(preset("fig4").is_ok());
        assert!(matches!(preset("nope"), Err(CliError::UnknownPreset(_))));
    }

    #[test]
    fn preset_parameters() {
        let fig2 = preset("fig2").unwrap();
        assert_eq!(fig2.params.r_opa, 4.6);
        assert_eq!(fig2.params.beta2, 5.0);
        assert_eq!(fig2.grid.stop, 0.95);

        let fig4 = preset("fig4a").unwrap();
        assert_eq!(fig4.params.r_opa, 3.0);
        assert_eq!(fig4.params.alpha3, Some(2.0));

        let fig5 = preset("fig5c").unwrap();
        assert_eq!(fig5.grid.sweep_modes, [2, 4]);
        assert_eq!(fig5.grid.fixed_eta, [0.5, 0.5]);
    }
}
