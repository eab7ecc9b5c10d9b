//! `cvsweep` — runs loss sweeps of the multi-phase estimation scenarios and
//! emits plot-ready CSV/SVG tables.

mod config;
mod error;
mod output;
mod presets;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cv_metrology::cluster::{sweep_cluster_1d, sweep_cluster_2d};
use cv_metrology::epr::sweep_epr;

use config::{Convention, OutputFormat, Scenario, SweepConfig};
use error::{CliError, Result};

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "CVSWEEP_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "cvsweep",
    about = "Loss sweeps for amplified entangled-state multi-phase estimation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Physical,
    PaperLinear,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep from a config file or a bundled preset.
    Run {
        /// Path to a TOML sweep config (omit when using --preset).
        config: Option<PathBuf>,
        /// Use a bundled preset instead of a config file.
        #[arg(long)]
        preset: Option<String>,
        /// Output directory (overrides config and $CVSWEEP_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; `svg` writes a chart next to the CSV.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Loss-channel convention override.
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
        /// Worker threads for sweep evaluation (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Inspect the bundled presets.
    Presets {
        #[command(subcommand)]
        action: PresetsAction,
    },
    /// Parse and validate a config file, echoing the effective settings.
    Validate { config: PathBuf },
}

#[derive(Subcommand)]
enum PresetsAction {
    /// List preset names and what they sweep.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, preset, out, format, convention, threads } => {
            run(config, preset, out, format, convention, threads)
        }
        Command::Presets { action: PresetsAction::List } => {
            for p in presets::PRESETS {
                println!("{:8} {}", p.name, p.description);
            }
            Ok(())
        }
        Command::Validate { config } => validate(&config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn load_config(path: &Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    SweepConfig::parse(&text)
}

fn validate(path: &Path) -> Result<()> {
    let config = load_config(path)?;
    println!("# effective configuration");
    print!("{}", config.resolved().print());
    Ok(())
}

fn run(
    config_path: Option<PathBuf>,
    preset: Option<String>,
    out: Option<PathBuf>,
    format: Option<FormatArg>,
    convention: Option<ConventionArg>,
    threads: usize,
) -> Result<()> {
    let (mut config, stem) = match (&config_path, &preset) {
        (Some(path), None) => {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "sweep".to_owned());
            (load_config(path)?, stem)
        }
        (None, Some(name)) => (presets::preset(name)?, name.clone()),
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "pass either a config file or --preset, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Validation(
                "pass a config file or --preset NAME (see `cvsweep presets list`)".into(),
            ))
        }
    };

    if let Some(c) = convention {
        config.convention = match c {
            ConventionArg::Physical => Convention::Physical,
            ConventionArg::PaperLinear => Convention::PaperLinear,
        };
    }
    if let Some(f) = format {
        config.output.format = match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Svg => OutputFormat::Svg,
        };
    }
    config.validate()?;

    let table = match config.scenario {
        Scenario::Epr => sweep_epr(&config.epr_scenario()?, threads)?,
        Scenario::Cluster1d => sweep_cluster_1d(&config.cluster_scenario()?, threads)?,
        Scenario::Cluster2d => sweep_cluster_2d(&config.cluster_scenario()?, threads)?,
    };
    let table = output::filter_columns(&table, &config.variants);

    let dir = out
        .or_else(|| config.output.dir.as_ref().map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let basename = config.output.basename.clone().unwrap_or(stem);

    let csv_path = dir.join(format!("{basename}.csv"));
    output::write_file(&csv_path, &output::csv_string(&table)?)?;
    println!("wrote {}", csv_path.display());
    if config.output.format == OutputFormat::Svg {
        let svg_path = dir.join(format!("{basename}.svg"));
        output::write_file(&svg_path, &output::svg_string(&table, config.output.svg_log_scale)?)?;
        println!("wrote {}", svg_path.display());
    }

    print!("{}", output::summary(&table));
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cv_metrology::SweepTable;

    #[test]
    fn run_rejects_ambiguous_sources(){
        let err = run(Some(PathBuf::from("x.toml")), Some("fig2".into()), None, None, None, 1);
        assert!(err.is_err());
        let err = run(None, None, None, None, None, 1);
        assert!(err.is_err());
    }

    fn table_fixture() -> SweepTable {
        let mut t = SweepTable::new(["loss", "sigma_noopa", "sigma_snl"].map(str::to_owned).to_vec());
        t.rows.push(vec![Some(0.0), Some(1.0), Some(2.0)]);
        t.rows.push(vec![Some(0.5), Some(3.0), Some(2.5)]);
        t
    }

    #[test]
    fn crossover_detection() {
        assert_eq!(output::crossover_loss(&table_fixture()), Some(0.5));
    }
}
