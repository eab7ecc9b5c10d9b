//! Prints the oracle values and curve bounds that the regression tests pin.
//! Run with: cargo run -p cv-metrology --example constants

use cv_metrology::analytic::{
    cluster_sensitivity_as_printed, epr_sensitivity_as_printed, snl_reference, SnlScenario,
};
use cv_metrology::cluster::{
    average_sensitivity, phase_sensitivity, ClusterScenario, ClusterSweep,
    sweep_cluster_1d, sweep_cluster_2d,
};
use cv_metrology::epr::{
    epr_average_sensitivity, epr_phase_sensitivity, sweep_epr, EprPhase, EprScenario,
};
use cv_metrology::{ClusterParams, EprParams, Grid, LossConvention, Sign};

fn epr_params() -> EprParams {
    EprParams {
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
    }
}

fn cluster_params() -> ClusterParams {
    ClusterParams {
        r: 1.0,
        r_prime: 3.0,
        eta: [1.0; 4],
        beta1: 1.0,
        beta2: 2.0,
        alpha2: 0.0,
        alpha3: 2.0,
        beta4: 0.0,
        theta: 1.5f64.to_radians(),
        phi: std::f64::consts::FRAC_PI_2,
    }
}

fn spread(values: &[f64]) -> (f64, f64, f64) {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(0.0f64, f64::max);
    (min, max, max / min)
}

fn main() {
    let conv = LossConvention::Physical;
    let p = epr_params();

    println!("== two-mode preset ==");
    let s1 = epr_phase_sensitivity(&p, [1.0, 1.0], conv, Sign::Plus, EprPhase::One).unwrap();
    let s2 = epr_phase_sensitivity(&p, [1.0, 1.0], conv, Sign::Plus, EprPhase::Two).unwrap();
    println!("sigma_theta1(eta=1)       = {:.15e}", s1.sigma);
    println!("sigma_theta2(eta=1)       = {:.15e}", s2.sigma);
    let ave = epr_average_sensitivity(&p, [1.0, 1.0], conv).unwrap();
    println!("sigma_ave(eta=1)          = {:.15e}", ave);
    let snl = snl_reference(SnlScenario::EprAverage { params: &p, eta: [1.0, 1.0], convention: conv }).unwrap();
    println!("sigma_snl_ave(eta=1)      = {:.15e}", snl);
    let printed_plus = epr_sensitivity_as_printed(&p).unwrap();
    let printed_minus = epr_sensitivity_as_printed(&EprParams { sign: Sign::Minus, ..p }).unwrap();
    println!("printed_plus(eta=1)       = {:.15e}", printed_plus);
    println!("printed_minus(eta=1)      = {:.15e}", printed_minus);

    let scenario = EprScenario { params: p, convention: conv, grid: Grid::new(0.0, 0.95, 0.01).unwrap() };
    let table = sweep_epr(&scenario, 0).unwrap();
    let opa = table.column_values("sigma_opa");
    let noopa = table.column_values("sigma_noopa");
    let snl_col = table.column_values("sigma_snl");
    let printed_col = table.column_values("sigma_eq11");
    let losses = table.column_values("loss");
    let (min, max, ratio) = spread(&opa);
    println!("opa column: min={min:.12e} max={max:.12e} max/min={ratio:.12}");
    let ratios: Vec<f64> = opa.iter().zip(&printed_col).map(|(o, pr)| o / pr).collect();
    let (rmin, rmax, rratio) = spread(&ratios);
    println!("oracle/printed ratio: min={rmin:.9} max={rmax:.9} max/min={rratio:.9}");
    let crossover = losses
        .iter()
        .zip(noopa.iter().zip(&snl_col))
        .find(|(_, (n, s))| n > s)
        .map(|(l, _)| *l);
    println!("noopa-above-snl crossover loss = {crossover:?}");

    println!();
    println!("== four-mode preset ==");
    let cp = cluster_params();
    for k in 1..=4 {
        let s = phase_sensitivity(k, &cp, [1.0; 4], conv).unwrap();
        let printed = cluster_sensitivity_as_printed(k, &cp).unwrap();
        println!("sigma_theta{k}(eta=1) = {:.15e}   printed_eq{} = {:.15e}", s.sigma, 20 + k, printed);
    }
    let cave = average_sensitivity(&cp, [1.0; 4], conv).unwrap();
    println!("sigma_ave(eta=1) = {:.15e}", cave);
    let csnl = snl_reference(SnlScenario::ClusterPhase { k: 1, params: &cp, eta: [1.0; 4], convention: conv }).unwrap();
    println!("sigma1_snl(eta=1) = {:.15e}", csnl);

    let scenario = ClusterScenario {
        params: cp,
        convention: conv,
        sweep: ClusterSweep::CommonLoss(Grid::new(0.0, 0.95, 0.01).unwrap()),
    };
    let table = sweep_cluster_1d(&scenario, 0).unwrap();
    let losses = table.column_values("loss");
    let s1_opa = table.column_values("sigma1_opa");
    let bounded: Vec<f64> = losses
        .iter()
        .zip(&s1_opa)
        .filter(|(l, _)| **l <= 0.90 + 1e-9)
        .map(|(_, s)| *s)
        .collect();
    let (min, max, ratio) = spread(&bounded);
    println!("sigma1_opa loss<=0.90: min={min:.12e} max={max:.12e} max/min={ratio:.12}");
    let s1_noopa = table.column_values("sigma1_noopa");
    let s1_snl = table.column_values("sigma1_snl");
    let crossover = losses
        .iter()
        .zip(s1_noopa.iter().zip(&s1_snl))
        .find(|(_, (n, s))| n > s)
        .map(|(l, _)| *l);
    println!("phase-1 noopa-above-snl crossover loss = {crossover:?}");
    let ave_opa = table.column_values("sigma_ave_opa");
    let (amin, amax, aratio) = spread(&ave_opa);
    println!("sigma_ave_opa over grid: min={amin:.12e} max={amax:.12e} max/min={aratio:.12}");

    for k in 1..=4 {
        let col = table.column_values(&format!("sigma{k}_opa"));
        let bounded: Vec<f64> = losses
            .iter()
            .zip(&col)
            .filter(|(l, _)| **l <= 0.90 + 1e-9)
            .map(|(_, s)| *s)
            .collect();
        let at_zero = bounded[0];
        let worst = bounded.iter().cloned().fold(0.0f64, f64::max) / at_zero;
        println!("sigma{k}_opa: max ratio to loss-0 value over loss<=0.90 = {worst:.12}");
    }

    // High-loss comparison of the two-axis averages.
    let cp2 = ClusterParams { alpha2: 1.0, beta4: 3.0, ..cp };
    let hi = [0.05, 0.05, 0.5, 0.5];
    let noopa_hi = average_sensitivity(&ClusterParams { r_prime: 0.0, ..cp2 }, hi, conv).unwrap();
    let snl_hi = snl_reference(SnlScenario::ClusterAverage { params: &cp2, eta: hi, convention: conv }).unwrap();
    println!("two-axis high-loss corner: ave_noopa={noopa_hi:.6} ave_snl={snl_hi:.6}");

    println!();
    println!("== two-axis sweeps ==");
    for (name, modes, fixed) in [
        ("modes 1,2 fixed 3,4", [0usize, 1usize], [0.5, 0.5]),
        ("modes 2,3 fixed 1,4", [1, 2], [0.5, 0.5]),
        ("modes 2,4 fixed 1,3", [1, 3], [0.5, 0.5]),
        ("modes 3,4 fixed 1,2", [2, 3], [0.5, 0.5]),
    ] {
        let cp2 = ClusterParams { alpha2: 1.0, beta4: 3.0, ..cp };
        let scenario = ClusterScenario {
            params: cp2,
            convention: conv,
            sweep: ClusterSweep::TwoMode {
                modes,
                grid1: Grid::new(0.0, 0.95, 0.05).unwrap(),
                grid2: Grid::new(0.0, 0.95, 0.05).unwrap(),
                fixed_eta: fixed,
            },
        };
        let table = sweep_cluster_2d(&scenario, 0).unwrap();
        let n2 = Grid::new(0.0, 0.95, 0.05).unwrap().values().len();
        let col = table.column_index("sigma_ave_opa").unwrap();
        let mut best = (f64::INFINITY, 0usize, 0usize);
        for (idx, row) in table.rows.iter().enumerate() {
            if let Some(v) = row[col] {
                if v < best.0 {
                    best = (v, idx / n2, idx % n2);
                }
            }
        }
        let corner = table.rows[0][col].unwrap();
        println!(
            "{name}: min sigma_ave_opa={:.12e} at grid index ({}, {}) of {n2}x{n2}; corner(0,0)={:.12e}",
            best.0, best.1, best.2, corner
        );
    }
}
