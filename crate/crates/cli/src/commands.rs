use std::fmt::Write as _;

use krawx_core::bikraw::{evaluate, polynomial_table, weight};
use krawx_core::oscrep::{matrix_element_oracle, Composition3};
use krawx_core::rotations::euler_to_rotation;
use serde::Serialize;

use crate::config::{Command, OutputFormat, RunConfig};
use crate::error::CliError;
use crate::report::{fmt_sig17, ValidationReport, SCHEMA_VERSION};

/// Rendered command output plus the validation verdict, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub report: Option<ValidationReport>,
}

impl Outcome {
    fn plain(text: String) -> Self {
        Outcome { text, report: None }
    }

    pub fn passed(&self) -> bool {
        self.report.as_ref().is_none_or(|r| r.pass)
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Eval => run_eval(cfg).map(Outcome::plain),
        Command::Table => run_table(cfg).map(Outcome::plain),
        Command::Oracle => run_oracle(cfg).map(Outcome::plain),
        Command::Validate => run_validate(cfg),
    }
}

#[derive(Serialize)]
struct AnglesOut {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl AnglesOut {
    fn of(cfg: &RunConfig) -> Self {
        AnglesOut { alpha: cfg.angles.alpha, beta: cfg.angles.beta, gamma: cfg.angles.gamma }
    }
}

#[derive(Serialize)]
struct EvalOut {
    schema_version: u32,
    route: &'static str,
    #[serde(rename = "N")]
    level: u32,
    r: u32,
    s: u32,
    i: u32,
    k: u32,
    angles: AnglesOut,
    value: f64,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output is serializable");
    s.push('\n');
    s
}

fn level(cfg: &RunConfig) -> u32 {
    cfg.level.expect("level is checked during configuration")
}

pub fn run_eval(cfg: &RunConfig) -> Result<String, CliError> {
    let n = level(cfg);
    let ix = cfg.indices_or_origin();
    let value = evaluate(ix.r, ix.s, ix.i, ix.k, n, &cfg.angles, cfg.route)?;
    let a = &cfg.angles;
    Ok(match cfg.format {
        OutputFormat::Csv => format!(
            "route,N,r,s,i,k,alpha,beta,gamma,value\n{},{n},{},{},{},{},{},{},{},{}\n",
            cfg.route.name(),
            ix.r,
            ix.s,
            ix.i,
            ix.k,
            fmt_sig17(a.alpha),
            fmt_sig17(a.beta),
            fmt_sig17(a.gamma),
            fmt_sig17(value)
        ),
        OutputFormat::Json => to_json(&EvalOut {
            schema_version: SCHEMA_VERSION,
            route: cfg.route.name(),
            level: n,
            r: ix.r,
            s: ix.s,
            i: ix.i,
            k: ix.k,
            angles: AnglesOut::of(cfg),
            value,
        }),
    })
}

#[derive(Serialize)]
struct TableRow {
    r: u32,
    s: u32,
    i: u32,
    k: u32,
    value: f64,
}

#[derive(Serialize)]
struct TableOut {
    schema_version: u32,
    route: &'static str,
    #[serde(rename = "N")]
    level: u32,
    angles: AnglesOut,
    rows: Vec<TableRow>,
}

pub fn run_table(cfg: &RunConfig) -> Result<String, CliError> {
    let n = level(cfg);
    let table = polynomial_table(n, &cfg.angles, cfg.route)?;
    Ok(match cfg.format {
        OutputFormat::Csv => {
            let mut s = String::from("r,s,i,k,value\n");
            for e in &table {
                let _ = writeln!(s, "{},{},{},{},{}", e.r, e.s, e.i, e.k, fmt_sig17(e.value));
            }
            s
        }
        OutputFormat::Json => to_json(&TableOut {
            schema_version: SCHEMA_VERSION,
            route: cfg.route.name(),
            level: n,
            angles: AnglesOut::of(cfg),
            rows: table.iter().map(|e| TableRow { r: e.r, s: e.s, i: e.i, k: e.k, value: e.value }).collect(),
        }),
    })
}

#[derive(Serialize)]
struct OracleOut {
    schema_version: u32,
    #[serde(rename = "N")]
    level: u32,
    r: u32,
    s: u32,
    i: u32,
    k: u32,
    angles: AnglesOut,
    re: f64,
    im: f64,
    weight: f64,
    polynomial: f64,
}

/// `<i, k, N-i-k| U |r, s, N-r-s>`, the trinomial weight `W_{i,k;N}` and their ratio.
pub fn run_oracle(cfg: &RunConfig) -> Result<String, CliError> {
    let n = level(cfg);
    let ix = cfg.indices_or_origin();
    let row = Composition3::with_total(n, ix.i, ix.k)?;
    let col = Composition3::with_total(n, ix.r, ix.s)?;
    let element = matrix_element_oracle(n, &cfg.angles, &row, &col)?;
    let w = weight(ix.i, ix.k, n, &euler_to_rotation(&cfg.angles))?;
    let polynomial = element.re / w;
    Ok(match cfg.format {
        OutputFormat::Csv => format!(
            "N,r,s,i,k,re,im,weight,polynomial\n{n},{},{},{},{},{},{},{},{}\n",
            ix.r,
            ix.s,
            ix.i,
            ix.k,
            fmt_sig17(element.re),
            fmt_sig17(element.im),
            fmt_sig17(w),
            fmt_sig17(polynomial)
        ),
        OutputFormat::Json => to_json(&OracleOut {
            schema_version: SCHEMA_VERSION,
            level: n,
            r: ix.r,
            s: ix.s,
            i: ix.i,
            k: ix.k,
            angles: AnglesOut::of(cfg),
            re: element.re,
            im: element.im,
            weight: w,
            polynomial,
        }),
    })
}

pub fn run_validate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let suite = cfg.suite.expect("suite is checked during configuration");
    let level_max = cfg.level_max.or(cfg.level).unwrap_or(suite.default_level_max());
    let tolerance = cfg.tolerance.unwrap_or(suite.default_tolerance());
    let report = suite.run(level_max, cfg.seed, tolerance)?;
    let text = match cfg.format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    };
    Ok(Outcome { text, report: Some(report) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Cli;
    use clap::Parser;

    fn run_args(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("krawx").chain(args.iter().copied())).unwrap();
        run(&RunConfig::from_cli(&cli)?)
    }

    #[test]
    fn eval_level_zero_is_one() {
        let out = run_args(&["eval", "--route", "aomoto", "--N", "0"]).unwrap();
        let value = out.text.lines().nth(1).unwrap().rsplit(',').next().unwrap();
        assert_eq!(value.parse::<f64>().unwrap(), 1.0);
    }

    #[test]
    fn singular_rotation_names_entry() {
        let err = run_args(&["eval", "--N", "2", "--indices", "1,0,1,0", "--euler", "0.3,90,0.2", "--degrees"]).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::exit::SINGULAR);
        assert!(err.to_string().contains("R33"), "{err}");
    }

    #[test]
    fn table_row_counts() {
        let t0 = run_args(&["table", "--N", "0"]).unwrap().text;
        assert_eq!(t0.lines().count(), 2);
        assert!(t0.lines().nth(1).unwrap().starts_with("0,0,0,0,1.0000000000000000e0"));
        let t2 = run_args(&["table", "--N", "2"]).unwrap().text;
        assert_eq!(t2.lines().count(), 37);
        let json: serde_json::Value =
            serde_json::from_str(&run_args(&["table", "--N", "2", "--format", "json"]).unwrap().text).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 36);
    }

    #[test]
    fn oracle_ratio_matches_eval() {
        let args = ["--N", "3", "--indices", "1,1,2,0", "--euler", "1.2,2.1,-0.4"];
        let oracle: serde_json::Value =
            serde_json::from_str(&run_args(&[&["oracle", "--format", "json"][..], &args].concat()).unwrap().text).unwrap();
        let eval: serde_json::Value =
            serde_json::from_str(&run_args(&[&["eval", "--format", "json"][..], &args].concat()).unwrap().text).unwrap();
        let (p, q) = (oracle["polynomial"].as_f64().unwrap(), eval["value"].as_f64().unwrap());
        assert!((p - q).abs() < 1e-10 * q.abs().max(1.0));
        assert!(oracle["im"].as_f64().unwrap().abs() < 1e-12);
    }

    #[test]
    fn validate_reports_verdict() {
        let out = run_args(&["validate", "casimir", "--N-max", "3"]).unwrap();
        assert!(out.passed());
        let out = run_args(&["validate", "cross-route", "--N-max", "2", "--tol", "1e-300"]).unwrap();
        let report = out.report.clone().unwrap();
        assert!(report.max_defect > 0.0);
        assert!(!out.passed());
    }
}
