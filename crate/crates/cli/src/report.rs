use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Decimal scientific notation with 17 significant digits, enough to
/// round-trip any `f64`.
pub fn fmt_sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Same as [`fmt_sig17`] with 15 significant digits, used to compare tables
/// across platforms.
pub fn fmt_sig15(v: f64) -> String {
    format!("{v:.14e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub labels: BTreeMap<String, String>,
    pub value: f64,
    pub defect: f64,
}

impl CaseRecord {
    pub fn new(labels: &[(&str, String)], value: f64, defect: f64) -> Self {
        let labels = labels.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        CaseRecord { labels, value, defect }
    }

    fn label_text(&self) -> String {
        self.labels.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub schema_version: u32,
    pub suite: String,
    pub n_max: u32,
    pub seed: u64,
    pub tolerance: f64,
    pub cases_run: usize,
    pub max_defect: f64,
    pub pass: bool,
    pub cases: Vec<CaseRecord>,
}

impl ValidationReport {
    /// `pass` holds iff every defect is finite and at most `tolerance`.
    pub fn new(suite: &str, n_max: u32, seed: u64, tolerance: f64, cases: Vec<CaseRecord>) -> Self {
        let max_defect = cases.iter().map(|c| c.defect).fold(0.0, |m: f64, d| if d.is_nan() { f64::INFINITY } else { m.max(d) });
        ValidationReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            n_max,
            seed,
            tolerance,
            cases_run: cases.len(),
            max_defect,
            pass: max_defect <= tolerance,
            cases,
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} cases, max defect {:.3e}, tolerance {:.1e}, {}",
            self.suite,
            self.cases_run,
            self.max_defect,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("suite,case,value,defect\n");
        for c in &self.cases {
            let _ = writeln!(s, "{},{},{},{}", self.suite, c.label_text(), fmt_sig17(c.value), fmt_sig17(c.defect));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [1.0, -1.8325292493375707, 1e-300, 0.1 + 0.2, f64::MAX] {
            let text = fmt_sig17(v);
            assert_eq!(text.parse::<f64>().unwrap(), v);
            let digits = text.split('e').next().unwrap().chars().filter(char::is_ascii_digit).count();
            assert_eq!(digits, 17);
        }
    }

    #[test]
    fn pass_iff_within_tolerance() {
        let case = |d| CaseRecord::new(&[("N", "1".into())], 0.0, d);
        assert!(ValidationReport::new("x", 1, 0, 1e-9, vec![case(1e-10), case(1e-9)]).pass);
        assert!(!ValidationReport::new("x", 1, 0, 1e-9, vec![case(1e-10), case(2e-9)]).pass);
        assert!(!ValidationReport::new("x", 1, 0, 1e-9, vec![case(f64::NAN)]).pass);
        assert!(ValidationReport::new("x", 1, 0, 1e-9, vec![]).pass);
    }

    #[test]
    fn json_has_schema_version_and_keys() {
        let r = ValidationReport::new("cg", 2, 5, 1e-10, vec![CaseRecord::new(&[("N", "2".into())], 1.0, 0.0)]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        for key in ["suite", "n_max", "seed", "tolerance", "cases_run", "max_defect", "pass", "cases"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["cases"][0]["labels"]["N"], "2");
    }

    #[test]
    fn csv_has_header_and_one_row_per_case() {
        let r = ValidationReport::new(
            "cg",
            2,
            5,
            1e-10,
            vec![CaseRecord::new(&[("N", "2".into()), ("nu", "1/4".into())], 1.0, 0.0); 3],
        );
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "suite,case,value,defect");
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "cg,N=2 nu=1/4,1.0000000000000000e0,0.0000000000000000e0");
    }
}
