//! Periodic box descriptor shared by all fields.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A uniform N^3 grid on the periodic box [0, L)^3.
///
/// The wavenumber set is {2*pi/L * m : m in [-N/2, N/2)^3}. Nonlinear
/// products are kept alias-free by zeroing every mode with |m_i| above
/// `dealias_fraction * N/2` on any axis (2/3 rule by default).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    length: f64,
    dealias_fraction: f64,
}

impl Grid {
    pub fn new(n: usize, length: f64, dealias_fraction: f64) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(Error::InvalidParameter {
                name: "n_per_axis",
                reason: format!("must be even and >= 8, got {n}"),
            });
        }
        if !(length > 0.0) {
            return Err(Error::InvalidParameter {
                name: "box_length",
                reason: format!("must be positive, got {length}"),
            });
        }
        if !(dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "dealias_fraction",
                reason: format!("must lie in (0, 1], got {dealias_fraction}"),
            });
        }
        Ok(Self {
            n,
            length,
            dealias_fraction,
        })
    }

    /// Standard grid with the 2/3 dealiasing rule.
    pub fn standard(n: usize, length: f64) -> Result<Self> {
        Self::new(n, length, 2.0 / 3.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dealias_fraction(&self) -> f64 {
        self.dealias_fraction
    }

    /// Grid spacing h = L/N.
    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Quadrature cell volume h^3.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    pub fn point_count(&self) -> usize {
        self.n * self.n * self.n
    }

    /// Physical coordinate of sample index along one axis.
    pub fn coord(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Box center, the default weight center.
    pub fn center(&self) -> [f64; 3] {
        let c = 0.5 * self.length;
        [c, c, c]
    }

    /// Signed integer mode for array index i (i in 0..N maps to m in [-N/2, N/2)).
    pub fn signed_mode(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Wavenumber component 2*pi/L * m for array index i.
    pub fn wavenumber(&self, i: usize) -> f64 {
        2.0 * PI / self.length * self.signed_mode(i) as f64
    }

    /// Largest retained |m| under the dealias rule.
    pub fn dealias_cutoff(&self) -> i64 {
        (self.dealias_fraction * self.n as f64 / 2.0).floor() as i64
    }

    /// True when the mode survives dealiasing on every axis.
    pub fn mode_retained(&self, m: [i64; 3]) -> bool {
        let cut = self.dealias_cutoff();
        m.iter().all(|mi| mi.abs() <= cut)
    }

    pub fn same_as(&self, other: &Grid) -> Result<()> {
        if self.n != other.n || self.length != other.length {
            Err(Error::GridMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumber_layout() {
        let g = Grid::standard(8, 2.0 * PI).unwrap();
        assert_eq!(g.signed_mode(0), 0);
        assert_eq!(g.signed_mode(3), 3);
        assert_eq!(g.signed_mode(4), -4);
        assert_eq!(g.signed_mode(7), -1);
        assert!((g.wavenumber(1) - 1.0).abs() < 1e-15);
        assert!((g.wavenumber(7) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::standard(7, 1.0).is_err());
        assert!(Grid::standard(6, 1.0).is_err());
        assert!(Grid::standard(8, -1.0).is_err());
        assert!(Grid::new(8, 1.0, 0.0).is_err());
    }

    #[test]
    fn dealias_cutoff_two_thirds() {
        let g = Grid::standard(32, 2.0 * PI).unwrap();
        assert_eq!(g.dealias_cutoff(), 10);
        assert!(g.mode_retained([10, -10, 0]));
        assert!(!g.mode_retained([11, 0, 0]));
        // cutoff keeps triple products alias-free: 3*cut <= N-1
        assert!(3 * g.dealias_cutoff() <= 31);
    }
}
