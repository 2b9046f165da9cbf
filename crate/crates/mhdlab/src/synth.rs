//! Analytic and seeded-random field generators used for initial data and
//! test batteries. Random fields derive from a ChaCha stream in a fixed
//! sample order, so a seed pins the field bit-for-bit.

use crate::field::{ScalarField, VectorField};
use crate::grid::Grid;
use crate::spectral;
use ndarray::Array3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Band-limited random scalar: white noise truncated to |m_i| <= kmax.
pub fn random_scalar(grid: Grid, kmax: usize, seed: u64) -> ScalarField {
    let n = grid.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Array3::zeros((n, n, n));
    for v in data.iter_mut() {
        *v = rng.gen_range(-1.0..1.0);
    }
    let noise = ScalarField::from_physical(grid, data);
    let kmax = kmax as i64;
    noise.spectral_map(move |mode, c| {
        if mode.m.iter().all(|m| m.abs() <= kmax) {
            c
        } else {
            num_complex::Complex64::default()
        }
    })
}

pub fn random_vector(grid: Grid, kmax: usize, seed: u64) -> VectorField {
    VectorField::new([
        random_scalar(grid, kmax, seed.wrapping_mul(3).wrapping_add(1)),
        random_scalar(grid, kmax, seed.wrapping_mul(3).wrapping_add(2)),
        random_scalar(grid, kmax, seed.wrapping_mul(3).wrapping_add(3)),
    ])
}

/// Leray-projected band-limited random field, divergence-free by construction.
pub fn random_divergence_free(grid: Grid, kmax: usize, seed: u64) -> VectorField {
    spectral::leray_project(&random_vector(grid, kmax, seed))
}

/// ABC flow: (A sin kz + C cos ky, B sin kx + A cos kz, C sin ky + B cos kx),
/// divergence-free since each component is independent of its own coordinate.
pub fn abc_flow(grid: Grid, a: f64, b: f64, c: f64) -> VectorField {
    let k = 2.0 * PI / grid.length();
    VectorField::from_fn(grid, move |x, y, z| {
        [
            a * (k * z).sin() + c * (k * y).cos(),
            b * (k * x).sin() + a * (k * z).cos(),
            c * (k * y).sin() + b * (k * x).cos(),
        ]
    })
}

/// Velocity half of a three-dimensional Orszag-Tang-like vortex.
pub fn orszag_tang_u(grid: Grid, amplitude: f64) -> VectorField {
    let k = 2.0 * PI / grid.length();
    VectorField::from_fn(grid, move |x, y, z| {
        [
            amplitude * (-(k * y).sin() + 0.2 * (k * z).cos()),
            amplitude * ((k * x).sin() + 0.2 * (k * z).sin()),
            amplitude * 0.2 * ((k * x).cos() + (k * y).sin()),
        ]
    })
}

/// Magnetic half: higher-harmonic content in x, as in the classic vortex.
pub fn orszag_tang_b(grid: Grid, amplitude: f64) -> VectorField {
    let k = 2.0 * PI / grid.length();
    VectorField::from_fn(grid, move |x, y, z| {
        [
            amplitude * (-(k * y).sin() + 0.1 * (2.0 * k * z).cos()),
            amplitude * ((2.0 * k * x).sin() + 0.1 * (k * z).cos()),
            amplitude * 0.1 * ((2.0 * k * y).cos() + (k * x).sin()),
        ]
    })
}

/// One-dimensional shear u = (A sin(2 pi y / L), 0, 0); its self-advection
/// vanishes, so under zero forcing it evolves by pure heat decay.
pub fn shear(grid: Grid, amplitude: f64) -> VectorField {
    let k = 2.0 * PI / grid.length();
    VectorField::from_fn(grid, move |_, y, _| [amplitude * (k * y).sin(), 0.0, 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_divergence_free() {
        let g = Grid::standard(16, 2.0 * PI).unwrap();
        for v in [
            abc_flow(g, 1.0, 0.7, 0.3),
            shear(g, 1.0),
            orszag_tang_u(g, 1.0),
            orszag_tang_b(g, 1.0),
            random_divergence_free(g, 4, 9),
        ] {
            assert!(
                spectral::relative_divergence(&v) <= 1e-12,
                "divergence {}",
                spectral::relative_divergence(&v)
            );
        }
    }

    #[test]
    fn seeded_fields_reproduce() {
        let g = Grid::standard(8, 2.0 * PI).unwrap();
        let a = random_scalar(g, 2, 5);
        let b = random_scalar(g, 2, 5);
        for (x, y) in a.physical().iter().zip(b.physical().iter()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
