//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use krawx::report::fmt_sig15;
use krawx::sampling::{cube_points, random_angles, rng};
use krawx::suites::{Suite, CG_NUS, TRATNIK_ANGLES, WAVEFUNCTION_POINTS, WIGNER_DRAWS};
use krawx_core::bikraw::{tratnik_bridge_check, tratnik_oracle_defect};
use krawx_core::oracles::polar_reconstruction_defect;
use krawx_core::oscrep::{
    angular_momentum_matrices, casimir_spectrum_check, quarter_turn_defect, unitary_matrix, CasimirSpectrum,
};
use krawx_core::overlaps::{overlap_matrix, OverlapKind};
use krawx_core::rotations::{ell_one_defect, wigner_block};
use krawx_core::su11cg::{cg_block, explicit_vs_recurrence, Su11Rep};

/// A named measurement checked against its tolerance.
struct Check {
    name: &'static str,
    value: f64,
    tolerance: f64,
}

impl Check {
    fn new(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check { name, value, tolerance }
    }

    fn ok(&self) -> bool {
        self.value <= self.tolerance
    }
}

type Outcome = Result<Vec<Check>, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn reps() -> Vec<Su11Rep> {
    CG_NUS.iter().map(|&(p, q)| Su11Rep::from_ratio(p, q).unwrap()).collect()
}

fn cg_orthonormality() -> Outcome {
    let mut worst = 0.0f64;
    for &a in &reps() {
        for &b in &reps() {
            for n in 0..=20 {
                let block = cg_block::<f64>(a, b, n);
                worst = worst.max(block.row_defect()).max(block.column_defect());
            }
        }
    }
    Ok(vec![Check::new("orthonormality", worst, 1e-10)])
}

fn cg_explicit_vs_recurrence() -> Outcome {
    let mut worst = 0.0f64;
    for &a in &reps() {
        for &b in &reps() {
            for n in 0..=30 {
                worst = worst.max(explicit_vs_recurrence::<f64>(a, b, n, f64::MIN_POSITIVE));
            }
        }
    }
    Ok(vec![Check::new("relative error", worst, 1e-8)])
}

fn wigner() -> Outcome {
    let mut g = rng(0);
    let (mut unitarity, mut ell_one) = (0.0f64, 0.0f64);
    for _ in 0..WIGNER_DRAWS {
        let a = random_angles(&mut g);
        for ell in 0..=10 {
            unitarity = unitarity.max(wigner_block(ell, &a).unitarity_defect());
        }
        ell_one = ell_one.max(ell_one_defect(&a));
    }
    Ok(vec![Check::new("unitarity", unitarity, 1e-10), Check::new("l=1 rotation", ell_one, 1e-12)])
}

fn representation() -> Outcome {
    let mut g = rng(0);
    let (mut comm, mut casimir, mut unitary) = (0.0f64, 0.0f64, 0.0f64);
    for n in 0..=10 {
        comm = comm.max(angular_momentum_matrices::<f64>(n).commutator_defect());
        let spectrum = casimir_spectrum_check::<f64>(n);
        if spectrum.levels != CasimirSpectrum::<f64>::expected(n) {
            return Err(format!("Casimir multiplicities at N={n}: {:?}", spectrum.levels));
        }
        casimir = casimir.max(spectrum.max_deviation);
        unitary = unitary.max(unitary_matrix(n, &random_angles(&mut g)).unitarity_defect());
    }
    Ok(vec![
        Check::new("commutators", comm, 1e-12),
        Check::new("Casimir eigenvalues", casimir, 1e-10),
        Check::new("U unitarity", unitary, 1e-11),
    ])
}

fn suite_check(suite: Suite, level_max: u32, tolerance: f64) -> Outcome {
    let report = suite.run(level_max, 0, tolerance).map_err(|e| e.to_string())?;
    Ok(vec![Check::new("max defect", report.max_defect, tolerance)])
}

fn cross_route() -> Outcome {
    suite_check(Suite::CrossRoute, 6, 1e-8)
}

fn orthonormality() -> Outcome {
    suite_check(Suite::Orthogonality, 8, 1e-9)
}

fn tratnik() -> Outcome {
    let (mut product, mut conj, mut quarter) = (0.0f64, 0.0f64, 0.0f64);
    for n in 0..=5 {
        for theta in TRATNIK_ANGLES {
            for chi in TRATNIK_ANGLES {
                product = product.max(tratnik_oracle_defect(theta, chi, n).map_err(|e| e.to_string())?);
                conj = conj.max(tratnik_bridge_check(theta, chi, n));
            }
        }
        quarter = quarter.max(quarter_turn_defect::<f64>(n));
    }
    Ok(vec![
        Check::new("product form", product, 1e-9),
        Check::new("conjugation", conj, 1e-9),
        Check::new("quarter turn", quarter, 1e-12),
    ])
}

fn overlaps() -> Outcome {
    let (mut unitary, mut composition) = (0.0f64, 0.0f64);
    for n in 0..=8 {
        let cp = overlap_matrix::<f64>(n, OverlapKind::CartPolar);
        let ps = overlap_matrix::<f64>(n, OverlapKind::PolarSpher);
        let cs = overlap_matrix::<f64>(n, OverlapKind::CartSpher);
        for m in [&cp, &ps, &cs] {
            unitary = unitary.max(m.unitarity_defect());
        }
        composition = composition.max((&cp * &ps).max_abs_diff(&cs));
    }
    Ok(vec![Check::new("unitarity", unitary, 1e-10), Check::new("composition", composition, 1e-10)])
}

fn wavefunctions() -> Outcome {
    let points = cube_points(WAVEFUNCTION_POINTS, 2.5, &mut rng(0));
    let worst = (0..=4).map(|n| polar_reconstruction_defect(n, &points)).fold(0.0f64, f64::max);
    Ok(vec![Check::new("relative error", worst, 1e-8)])
}

fn krawx(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_krawx")).args(args).output().expect("krawx runs")
}

fn expect_code(args: &[&str], code: i32) -> Result<(), String> {
    let out = krawx(args);
    match out.status.code() {
        Some(c) if c == code => Ok(()),
        other => Err(format!("`krawx {}` exited with {other:?}, expected {code}", args.join(" "))),
    }
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn at_15_digits(csv: &str) -> Vec<String> {
    csv.lines()
        .skip(1)
        .map(|line| {
            let (keys, value) = line.rsplit_once(',').unwrap_or((line, ""));
            format!("{keys},{}", value.parse::<f64>().map(fmt_sig15).unwrap_or_default())
        })
        .collect()
}

fn cli_contract() -> Outcome {
    expect_code(&["eval", "--route", "aomoto", "--N", "0"], 0)?;
    let value =
        String::from_utf8_lossy(&krawx(&["eval", "--route", "aomoto", "--N", "0"]).stdout).lines().nth(1).map(str::to_owned);
    if value.as_deref().and_then(|l| l.rsplit(',').next()).and_then(|v| v.parse::<f64>().ok()) != Some(1.0) {
        return Err(format!("N=0 value line {value:?}"));
    }
    expect_code(&["eval", "--N", "2", "--indices", "3,0,0,0"], 1)?;
    expect_code(&["validate", "no-such-suite"], 1)?;
    expect_code(&["eval", "--N", "2", "--indices", "1,0,1,0", "--euler", "0.3,90,0.2", "--degrees"], 2)?;
    let singular = krawx(&["eval", "--N", "2", "--indices", "1,0,1,0", "--euler", "0.3,90,0.2", "--degrees"]);
    if !String::from_utf8_lossy(&singular.stderr).contains("R33") {
        return Err("singular diagnostic does not name R33".into());
    }
    expect_code(&["table", "--N", "1", "--out", "/nonexistent-dir/table.csv"], 3)?;

    let args = ["validate", "cross-route", "--N-max", "3", "--seed", "5", "--serial"];
    let (a, b) = (krawx(&args), krawx(&args));
    if !a.status.success() || a.stdout != b.stdout {
        return Err("serial validation report is not reproducible".into());
    }
    let mut stable = 0;
    for n in 0..=4 {
        let want = std::fs::read_to_string(golden_dir().join(format!("table_N{n}.csv"))).map_err(|e| e.to_string())?;
        let level = n.to_string();
        let first = krawx(&["table", "--N", &level, "--serial"]).stdout;
        let second = krawx(&["table", "--N", &level, "--serial"]).stdout;
        if first != second {
            return Err(format!("table N={n} differs between runs"));
        }
        if at_15_digits(&String::from_utf8_lossy(&first)) != at_15_digits(&want) {
            return Err(format!("table N={n} differs from golden data"));
        }
        stable += 1;
    }
    Ok(vec![Check::new("golden tables differing", f64::from(5 - stable), 0.0)])
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "CG orthonormality", limit: Some(Duration::from_secs(5)), run: cg_orthonormality },
    Criterion { id: 2, title: "CG explicit vs recurrence", limit: Some(Duration::from_secs(2)), run: cg_explicit_vs_recurrence },
    Criterion { id: 3, title: "Wigner blocks", limit: Some(Duration::from_secs(2)), run: wigner },
    Criterion { id: 4, title: "oscillator representation", limit: Some(Duration::from_secs(10)), run: representation },
    Criterion { id: 5, title: "cross-route agreement", limit: Some(Duration::from_secs(60)), run: cross_route },
    Criterion { id: 6, title: "trinomial orthonormality", limit: Some(Duration::from_secs(10)), run: orthonormality },
    Criterion { id: 7, title: "Tratnik special case", limit: Some(Duration::from_secs(10)), run: tratnik },
    Criterion { id: 8, title: "overlap unitarity and composition", limit: Some(Duration::from_secs(10)), run: overlaps },
    Criterion { id: 9, title: "wavefunction phases", limit: Some(Duration::from_secs(5)), run: wavefunctions },
    Criterion { id: 10, title: "CLI contract", limit: None, run: cli_contract },
];

fn main() -> ExitCode {
    let mut failures = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let (pass, detail) = match &outcome {
            Ok(checks) => (
                in_time && checks.iter().all(Check::ok),
                checks
                    .iter()
                    .map(|k| format!("{} {:.2e} (tol {:.0e})", k.name, k.value, k.tolerance))
                    .collect::<Vec<_>>()
                    .join(", "),
            ),
            Err(e) => (false, e.clone()),
        };
        let timing = match c.limit {
            Some(l) => format!("{:.2}s / {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        println!("{} {:>2} {}: {detail} [{timing}]", if pass { "PASS" } else { "FAIL" }, c.id, c.title);
        if !pass {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
