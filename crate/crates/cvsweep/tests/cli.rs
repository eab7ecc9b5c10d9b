//! End-to-end checks of the `cvsweep` binary: exit codes, file output,
//! config validation, and numeric round-trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cvsweep"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("cli_{tag}"));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn presets_list_names_all_bundled_configs() {
    let out = run_ok(&["presets", "list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["fig2", "fig4a", "fig4b", "fig5a", "fig5b", "fig5c", "fig5d"] {
        assert!(text.contains(name), "missing preset {name}");
    }
}

#[test]
fn unknown_preset_fails_nonzero() {
    let out = bin().args(["run", "--preset", "fig9"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig9"));
}

#[test]
fn run_writes_csv_with_expected_schema() {
    let dir = tmp_dir("schema");
    run_ok(&["run", "--preset", "fig2", "--out", dir.to_str().unwrap()]);
    let csv = std::fs::read_to_string(dir.join("fig2.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "loss,sigma_opa,sigma_noopa,sigma_snl,sigma_eq11,db_rel_snl"
    );
    assert_eq!(csv.lines().count(), 97);
    // Every data line ends with LF only and uses '.' decimals.
    assert!(!csv.contains('\r'));

    // Numeric fields round-trip exactly at 17 significant digits.
    for line in csv.lines().skip(1).take(3) {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), field);
        }
    }
}

#[test]
fn svg_format_writes_chart_next_to_csv() {
    let dir = tmp_dir("svg");
    run_ok(&["run", "--preset", "fig4a", "--out", dir.to_str().unwrap(), "--format", "svg"]);
    assert!(dir.join("fig4a.csv").exists());
    let svg = std::fs::read_to_string(dir.join("fig4a.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polyline"));
    assert!(svg.contains(">loss<"));
}

#[test]
fn two_axis_preset_emits_coordinate_pair() {
    let dir = tmp_dir("twoaxis");
    run_ok(&["run", "--preset", "fig5a", "--out", dir.to_str().unwrap()]);
    let csv = std::fs::read_to_string(dir.join("fig5a.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "loss1,loss2,sigma_ave_opa,sigma_ave_noopa,sigma_ave_snl,sigma_ave_printed,db_rel_snl"
    );
    assert_eq!(csv.lines().count(), 1 + 20 * 20);
}

#[test]
fn out_dir_env_variable_is_honored() {
    let dir = tmp_dir("envvar");
    let out = bin()
        .args(["run", "--preset", "fig2"])
        .env("CVSWEEP_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("fig2.csv").exists());
}

#[test]
fn validate_echoes_effective_config() {
    let dir = tmp_dir("validate");
    let path = dir.join("sweep.toml");
    std::fs::write(
        &path,
        "scenario = \"epr\"\n\n[params]\nr1 = 1.0\nr_opa = 4.6\nbeta1 = 1.0\nbeta2 = 5.0\n",
    )
    .unwrap();
    let out = run_ok(&["validate", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("theta_deg = 1.5"), "defaults echoed: {text}");
    assert!(text.contains("r2 = 1.0"), "resolved r2 echoed: {text}");
}

#[test]
fn validate_rejects_bad_config_with_field_name() {
    let dir = tmp_dir("badcfg");
    let path = dir.join("bad.toml");
    std::fs::write(
        &path,
        "scenario = \"cluster-2d\"\n\n[params]\nr1 = 1.0\nr_opa = 3.0\nbeta1 = 1.0\nbeta2 = 2.0\n\n[grid]\nfixed_eta = [1.2, 0.5]\n",
    )
    .unwrap();
    let out = bin().args(["validate", path.to_str().unwrap()]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("fixed_eta"), "{err}");
}

#[test]
fn convention_flag_changes_the_loss_model() {
    let dir = tmp_dir("convention");
    run_ok(&["run", "--preset", "fig2", "--out", dir.join("phys").to_str().unwrap()]);
    run_ok(&[
        "run",
        "--preset",
        "fig2",
        "--out",
        dir.join("lin").to_str().unwrap(),
        "--convention",
        "paper-linear",
    ]);
    let phys = std::fs::read(dir.join("phys/fig2.csv")).unwrap();
    let lin = std::fs::read(dir.join("lin/fig2.csv")).unwrap();
    assert_ne!(phys, lin, "loss conventions must produce different sweeps");
}

#[test]
fn unsupported_format_is_rejected() {
    let out = bin().args(["run", "--preset", "fig2", "--format", "png"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("png"));
}

#[test]
fn missing_config_file_reports_path() {
    let out = bin().args(["run", "/nonexistent/sweep.toml"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/sweep.toml"));
}

#[test]
fn custom_config_matches_direct_library_sweep() {
    let dir = tmp_dir("roundtrip");
    let path = dir.join("mini.toml");
    std::fs::write(
        &path,
        r#"
scenario = "epr"

[params]
r1 = 1.0
r_opa = 4.6
beta1 = 1.0
beta2 = 5.0

[grid]
stop = 0.2
step = 0.1
"#,
    )
    .unwrap();
    run_ok(&["run", path.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    let csv = std::fs::read_to_string(dir.join("mini.csv")).unwrap();
    let second: Vec<f64> = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|f| f.parse().unwrap())
        .collect();

    use cv_metrology::epr::{epr_average_sensitivity, EprScenario};
    use cv_metrology::{EprParams, Grid, LossConvention, Sign};
    let params = EprParams {
        r1: 1.0,
        r2: 1.0,
        r3: 4.6,
        r4: 4.6,
        eta1: 1.0,
        eta2: 1.0,
        beta1: 1.0,
        beta2: 5.0,
        theta: 1.5f64.to_radians(),
        phi: std::f64::consts::FRAC_PI_2,
        sign: Sign::Plus,
    };
    let direct = epr_average_sensitivity(&params, [1.0, 1.0], LossConvention::Physical).unwrap();
    assert!((second[1] - direct).abs() <= 1e-12 * direct);
    let _ = EprScenario { params, convention: LossConvention::Physical, grid: Grid::new(0.0, 0.2, 0.1).unwrap() };
}

#[test]
fn degenerate_rows_leave_sentinels_and_warnings_but_exit_zero() {
    let dir = tmp_dir("degenerate");
    let path = dir.join("deg.toml");
    // Zero displacements make every slope vanish: all σ cells empty.
    std::fs::write(
        &path,
        r#"
scenario = "epr"

[params]
r1 = 1.0
r_opa = 4.6
beta1 = 0.0
beta2 = 0.0

[grid]
stop = 0.1
step = 0.1
"#,
    )
    .unwrap();
    let out = bin()
        .args(["run", path.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "warnings must not change the exit status");
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let csv = std::fs::read_to_string(dir.join("deg.csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    assert!(row.contains(",,"), "expected empty sentinel fields: {row}");
    assert!(!csv.contains("NaN"));
}
