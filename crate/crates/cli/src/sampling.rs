//! Seeded draws of rotations and sample points.

use std::f64::consts::TAU;

use krawx_core::rotations::euler_to_rotation;
use krawx_core::{EulerAngles64, Point3f64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smallest `|R_ij|` accepted by [`generic_rotations`].
pub const ENTRY_FLOOR: f64 = 0.05;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed Euler angles.
pub fn random_angles(rng: &mut impl Rng) -> EulerAngles64 {
    let alpha = rng.random_range(0.0..TAU);
    let beta = rng.random_range(-1.0f64..1.0).acos();
    let gamma = rng.random_range(0.0..TAU);
    EulerAngles64::new(alpha, beta, gamma)
}

/// Random rotations whose nine entries all satisfy `|R_ij| >= ENTRY_FLOOR`.
pub fn generic_rotations(count: usize, rng: &mut impl Rng) -> Vec<EulerAngles64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = random_angles(rng);
        let rot = euler_to_rotation(&a);
        if rot.rows().iter().flatten().all(|v| v.abs() >= ENTRY_FLOOR) {
            out.push(a);
        }
    }
    out
}

/// Uniform points in the cube `[-half_width, half_width]^3`.
pub fn cube_points(count: usize, half_width: f64, rng: &mut impl Rng) -> Vec<Point3f64> {
    (0..count)
        .map(|_| {
            let mut c = || rng.random_range(-half_width..half_width);
            Point3f64::new(c(), c(), c())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible() {
        let a = generic_rotations(5, &mut rng(7));
        let b = generic_rotations(5, &mut rng(7));
        assert_eq!(a, b);
        assert_ne!(a, generic_rotations(5, &mut rng(8)));
    }

    #[test]
    fn generic_rotations_respect_floor() {
        for a in generic_rotations(20, &mut rng(1)) {
            let rot = euler_to_rotation(&a);
            assert!(rot.orthogonality_defect() < 1e-14);
            assert!(rot.rows().iter().flatten().all(|v| v.abs() >= ENTRY_FLOOR));
        }
    }

    #[test]
    fn points_stay_in_cube() {
        let pts = cube_points(50, 2.5, &mut rng(3));
        assert!(pts.iter().all(|p| [p.x, p.y, p.z].iter().all(|c| c.abs() <= 2.5)));
    }
}
