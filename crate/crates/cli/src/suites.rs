//! Named validation suites driven by `krawx validate`.

use std::str::FromStr;

use krawx_core::bikraw::{orthonormality_defect, polynomial_table, tratnik_bridge_check, tratnik_oracle_defect, Route};
use krawx_core::oracles::{cartesian_gram_defect, polar_reconstruction_defect};
use krawx_core::oscrep::{
    angular_momentum_matrices, casimir_spectrum_check, quarter_turn_defect, unitary_matrix, CasimirSpectrum,
};
use krawx_core::overlaps::{overlap_matrix, OverlapKind};
use krawx_core::rotations::EulerAngles;
use krawx_core::rotations::{ell_one_defect, euler_to_rotation, wigner_block};
use krawx_core::scalar::Real;
use krawx_core::su11cg::{cg_block, Su11Rep};
use krawx_core::{EulerAngles64, Result};

use crate::error::CliError;
use crate::report::{CaseRecord, ValidationReport};
use crate::sampling::{cube_points, generic_rotations, random_angles, rng};

/// Representation labels swept by the `cg` suite.
pub const CG_NUS: [(i64, i64); 5] = [(1, 4), (3, 4), (1, 1), (3, 2), (5, 2)];

/// Tratnik grid for both angles.
pub const TRATNIK_ANGLES: [f64; 3] = [0.5, 0.9, 1.7];

/// Quadruple precision scalar for reference tables.
pub type Quad = f128::f128;

/// Reference route for the cross-route suite, evaluated in [`Quad`].
pub const REFERENCE_ROUTE: Route = Route::Matexp;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Orthogonality,
    Unitarity,
    CrossRoute,
    Tratnik,
    Cg,
    Wigner,
    Wavefunction,
    Casimir,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Orthogonality,
        Suite::Unitarity,
        Suite::CrossRoute,
        Suite::Tratnik,
        Suite::Cg,
        Suite::Wigner,
        Suite::Wavefunction,
        Suite::Casimir,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Unitarity => "unitarity",
            Suite::CrossRoute => "cross-route",
            Suite::Tratnik => "tratnik",
            Suite::Cg => "cg",
            Suite::Wigner => "wigner",
            Suite::Wavefunction => "wavefunction",
            Suite::Casimir => "casimir",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Suite::ALL.iter().map(|s| s.name()).collect()
    }

    pub fn default_level_max(self) -> u32 {
        match self {
            Suite::Orthogonality | Suite::Unitarity => 8,
            Suite::CrossRoute => 6,
            Suite::Tratnik => 5,
            Suite::Cg => 20,
            Suite::Wigner | Suite::Casimir => 10,
            Suite::Wavefunction => 4,
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Orthogonality | Suite::Tratnik => 1e-9,
            Suite::Unitarity | Suite::Cg | Suite::Wigner | Suite::Casimir => 1e-10,
            Suite::CrossRoute | Suite::Wavefunction => 1e-8,
        }
    }

    pub fn run(self, level_max: u32, seed: u64, tolerance: f64) -> Result<ValidationReport> {
        let cases = match self {
            Suite::Orthogonality => orthogonality(level_max, seed)?,
            Suite::Unitarity => unitarity(level_max, seed),
            Suite::CrossRoute => cross_route(level_max, seed)?,
            Suite::Tratnik => tratnik(level_max)?,
            Suite::Cg => cg(level_max)?,
            Suite::Wigner => wigner(level_max, seed),
            Suite::Wavefunction => wavefunction(level_max, seed)?,
            Suite::Casimir => casimir(level_max),
        };
        Ok(ValidationReport::new(self.name(), level_max, seed, tolerance, cases))
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> std::result::Result<Self, CliError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}; expected one of {}", Suite::names().join(", "))))
    }
}

fn angle_label(a: &EulerAngles64) -> String {
    format!("{:.6}/{:.6}/{:.6}", a.alpha, a.beta, a.gamma)
}

/// Rotations per level for the orthogonality sweep.
const ORTHOGONALITY_DRAWS: usize = 3;

/// Rotations for the cross-route sweep.
pub const CROSS_ROUTE_DRAWS: usize = 5;

/// Random angle triples for the unitarity and Wigner sweeps.
pub const WIGNER_DRAWS: usize = 20;

/// Sample points for the wavefunction suite.
pub const WAVEFUNCTION_POINTS: usize = 20;

fn orthogonality(level_max: u32, seed: u64) -> Result<Vec<CaseRecord>> {
    let angles = generic_rotations(ORTHOGONALITY_DRAWS, &mut rng(seed));
    let mut cases = Vec::new();
    for a in &angles {
        let rot = euler_to_rotation(a);
        for n in 0..=level_max {
            let d = orthonormality_defect(n, &rot)?;
            cases.push(CaseRecord::new(&[("N", n.to_string()), ("angles", angle_label(a))], d, d));
        }
    }
    Ok(cases)
}

fn unitarity(level_max: u32, seed: u64) -> Vec<CaseRecord> {
    let mut cases = Vec::new();
    for n in 0..=level_max {
        let cp = overlap_matrix::<f64>(n, OverlapKind::CartPolar);
        let ps = overlap_matrix::<f64>(n, OverlapKind::PolarSpher);
        let cs = overlap_matrix::<f64>(n, OverlapKind::CartSpher);
        for (name, m) in [("cart_polar", &cp), ("polar_spher", &ps), ("cart_spher", &cs)] {
            let d = m.unitarity_defect();
            cases.push(CaseRecord::new(&[("N", n.to_string()), ("check", name.to_string())], d, d));
        }
        let d = (&cp * &ps).max_abs_diff(&cs);
        cases.push(CaseRecord::new(&[("N", n.to_string()), ("check", "composition".to_string())], d, d));
    }
    let mut g = rng(seed);
    for n in 0..=level_max {
        let a = random_angles(&mut g);
        let d = unitary_matrix(n, &a).unitarity_defect();
        cases.push(CaseRecord::new(
            &[("N", n.to_string()), ("check", "oscillator".to_string()), ("angles", angle_label(&a))],
            d,
            d,
        ));
    }
    cases
}

/// Table of `route` at `angles`, evaluated in quadruple precision.
pub fn quad_table(level: u32, angles: &EulerAngles64, route: Route) -> Result<Vec<f64>> {
    let q = EulerAngles::new(Quad::from(angles.alpha), Quad::from(angles.beta), Quad::from(angles.gamma));
    Ok(polynomial_table(level, &q, route)?.iter().map(|e| e.value.to_f()).collect())
}

/// `max |P_route - P_ref| / max(|P_ref|, 1)` over each table, with every
/// `f64` route measured against the quadruple precision reference.
fn cross_route(level_max: u32, seed: u64) -> Result<Vec<CaseRecord>> {
    let angles = generic_rotations(CROSS_ROUTE_DRAWS, &mut rng(seed));
    let mut cases = Vec::new();
    for a in &angles {
        for n in 0..=level_max {
            let reference = quad_table(n, a, REFERENCE_ROUTE)?;
            let largest = reference.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for route in Route::ALL {
                let table = polynomial_table(n, a, route)?;
                let d = table.iter().zip(&reference).map(|(x, y)| (x.value - y).abs() / y.abs().max(1.0)).fold(0.0, f64::max);
                cases.push(CaseRecord::new(
                    &[("N", n.to_string()), ("route", route.name().to_string()), ("angles", angle_label(a))],
                    largest,
                    d,
                ));
            }
        }
    }
    Ok(cases)
}

fn tratnik(level_max: u32) -> Result<Vec<CaseRecord>> {
    let mut cases = Vec::new();
    for n in 0..=level_max {
        for theta in TRATNIK_ANGLES {
            for chi in TRATNIK_ANGLES {
                let labels = |check: &str| {
                    [("N", n.to_string()), ("theta", theta.to_string()), ("chi", chi.to_string()), ("check", check.to_string())]
                };
                let d = tratnik_oracle_defect(theta, chi, n)?;
                cases.push(CaseRecord::new(&labels("product"), d, d));
                let d = tratnik_bridge_check(theta, chi, n);
                cases.push(CaseRecord::new(&labels("conjugation"), d, d));
            }
        }
        let d = quarter_turn_defect::<f64>(n);
        cases.push(CaseRecord::new(&[("N", n.to_string()), ("check", "quarter-turn".to_string())], d, d));
    }
    Ok(cases)
}

fn cg(level_max: u32) -> Result<Vec<CaseRecord>> {
    let mut cases = Vec::new();
    for &(p1, q1) in &CG_NUS {
        for &(p2, q2) in &CG_NUS {
            let (nu1, nu2) = (Su11Rep::from_ratio(p1, q1)?, Su11Rep::from_ratio(p2, q2)?);
            for n in 0..=level_max {
                let block = cg_block::<f64>(nu1, nu2, n);
                let labels = |rel: &str| {
                    [
                        ("N", n.to_string()),
                        ("nu1", format!("{p1}/{q1}")),
                        ("nu2", format!("{p2}/{q2}")),
                        ("relation", rel.to_string()),
                    ]
                };
                let d = block.row_defect();
                cases.push(CaseRecord::new(&labels("rows"), d, d));
                let d = block.column_defect();
                cases.push(CaseRecord::new(&labels("columns"), d, d));
            }
        }
    }
    Ok(cases)
}

fn wigner(level_max: u32, seed: u64) -> Vec<CaseRecord> {
    let mut g = rng(seed);
    let angles: Vec<EulerAngles64> = (0..WIGNER_DRAWS).map(|_| random_angles(&mut g)).collect();
    let mut cases = Vec::new();
    for a in &angles {
        for ell in 0..=level_max {
            let d = wigner_block(ell, a).unitarity_defect();
            cases.push(CaseRecord::new(
                &[("ell", ell.to_string()), ("check", "unitarity".to_string()), ("angles", angle_label(a))],
                d,
                d,
            ));
        }
        let d = ell_one_defect(a);
        cases.push(CaseRecord::new(
            &[("ell", "1".to_string()), ("check", "rotation-matrix".to_string()), ("angles", angle_label(a))],
            d,
            d,
        ));
    }
    cases
}

/// Largest level used for the Gram check on the quadrature grid.
const GRAM_LEVEL_CAP: u32 = 3;

fn wavefunction(level_max: u32, seed: u64) -> Result<Vec<CaseRecord>> {
    let points = cube_points(WAVEFUNCTION_POINTS, 2.5, &mut rng(seed));
    let mut cases = Vec::new();
    for n in 0..=level_max {
        let d = polar_reconstruction_defect(n, &points);
        cases.push(CaseRecord::new(&[("N", n.to_string()), ("check", "polar-reconstruction".to_string())], d, d));
    }
    let gram_level = level_max.min(GRAM_LEVEL_CAP);
    let d = cartesian_gram_defect::<f64>(gram_level)?;
    cases.push(CaseRecord::new(&[("N", gram_level.to_string()), ("check", "cartesian-gram".to_string())], d, d));
    Ok(cases)
}

fn casimir(level_max: u32) -> Vec<CaseRecord> {
    let mut cases = Vec::new();
    for n in 0..=level_max {
        let d = angular_momentum_matrices::<f64>(n).commutator_defect();
        cases.push(CaseRecord::new(&[("N", n.to_string()), ("check", "commutators".to_string())], d, d));
        let spectrum = casimir_spectrum_check::<f64>(n);
        let d = if spectrum.levels == CasimirSpectrum::<f64>::expected(n) { spectrum.max_deviation } else { f64::INFINITY };
        cases.push(CaseRecord::new(&[("N", n.to_string()), ("check", "spectrum".to_string())], d, d));
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("orthogonal".parse::<Suite>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        for s in Suite::ALL {
            let r = s.run(2, 11, s.default_tolerance()).unwrap();
            assert!(r.pass, "{}", r.summary());
            assert!(r.cases_run > 0);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = Suite::CrossRoute.run(2, 3, 1e-8).unwrap();
        let b = Suite::CrossRoute.run(2, 3, 1e-8).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
