//! Sampled fields on the periodic box with paired physical/spectral views.
//!
//! A field is constructed from either view; the other is computed lazily and
//! cached. All operations return new fields, so a given field is effectively
//! immutable and safe to share across threads.

use crate::error::Result;
use crate::exec;
use crate::fft;
use crate::grid::Grid;
use ndarray::Array3;
use num_complex::Complex64;
use std::sync::OnceLock;

/// Per-mode data handed to spectral multiplier closures.
#[derive(Debug, Clone, Copy)]
pub struct Mode {
    /// Signed integer mode on each axis.
    pub m: [i64; 3],
    /// Wavenumber vector 2*pi/L * m.
    pub k: [f64; 3],
    /// |k|^2.
    pub k_sq: f64,
}

#[derive(Debug)]
pub struct ScalarField {
    grid: Grid,
    physical: OnceLock<Array3<f64>>,
    spectral: OnceLock<Array3<Complex64>>,
}

impl Clone for ScalarField {
    fn clone(&self) -> Self {
        Self {
            grid: self.grid,
            physical: self.physical.clone(),
            spectral: self.spectral.clone(),
        }
    }
}

impl ScalarField {
    pub fn from_physical(grid: Grid, data: Array3<f64>) -> Self {
        assert_eq!(data.shape(), [grid.n(), grid.n(), grid.n()]);
        let physical = OnceLock::new();
        physical.set(data).unwrap();
        Self {
            grid,
            physical,
            spectral: OnceLock::new(),
        }
    }

    pub fn from_spectral(grid: Grid, data: Array3<Complex64>) -> Self {
        assert_eq!(data.shape(), [grid.n(), grid.n(), grid.n()]);
        let spectral = OnceLock::new();
        spectral.set(data).unwrap();
        Self {
            grid,
            physical: OnceLock::new(),
            spectral,
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.n();
        Self::from_physical(grid, Array3::zeros((n, n, n)))
    }

    /// Sample an analytic function at the grid points.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64, f64) -> f64 + Sync) -> Self {
        let n = grid.n();
        let mut data = Array3::zeros((n, n, n));
        exec::fill_indexed(data.as_slice_mut().unwrap(), |idx| {
            let (i, j, k) = unflatten(idx, n);
            f(grid.coord(i), grid.coord(j), grid.coord(k))
        });
        Self::from_physical(grid, data)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn physical(&self) -> &Array3<f64> {
        self.physical.get_or_init(|| {
            let mut buf = self.spectral.get().expect("field has a view").clone();
            fft::inverse3(&mut buf);
            let n = self.grid.n();
            let mut out = Array3::zeros((n, n, n));
            let src = buf.as_slice().unwrap();
            exec::fill_indexed(out.as_slice_mut().unwrap(), |i| src[i].re);
            out
        })
    }

    pub fn spectral(&self) -> &Array3<Complex64> {
        self.spectral.get_or_init(|| {
            let phys = self.physical.get().expect("field has a view");
            let n = self.grid.n();
            let mut buf = Array3::default((n, n, n));
            let src = phys.as_slice().unwrap();
            exec::fill_indexed(buf.as_slice_mut().unwrap(), |i| Complex64::new(src[i], 0.0));
            fft::forward3(&mut buf);
            buf
        })
    }

    /// New field with spectral coefficients `f(mode, c)`.
    pub fn spectral_map(&self, f: impl Fn(Mode, Complex64) -> Complex64 + Sync) -> Self {
        let n = self.grid.n();
        let grid = self.grid;
        let src = self.spectral();
        let src_slice = src.as_slice().unwrap();
        let mut out = Array3::default((n, n, n));
        exec::fill_indexed(out.as_slice_mut().unwrap(), |idx| {
            let (i, j, k) = unflatten(idx, n);
            f(mode_of(&grid, i, j, k), src_slice[idx])
        });
        Self::from_spectral(grid, out)
    }

    /// New field with physical samples `f(self(x))`.
    pub fn physical_map(&self, f: impl Fn(f64) -> f64 + Sync) -> Self {
        let src = self.physical().as_slice().unwrap();
        let n = self.grid.n();
        let mut out = Array3::zeros((n, n, n));
        exec::fill_indexed(out.as_slice_mut().unwrap(), |i| f(src[i]));
        Self::from_physical(self.grid, out)
    }

    /// Pointwise binary combination in physical space.
    pub fn zip_physical(&self, other: &Self, f: impl Fn(f64, f64) -> f64 + Sync) -> Self {
        self.grid.same_as(&other.grid).expect("grid mismatch");
        let a = self.physical().as_slice().unwrap();
        let b = other.physical().as_slice().unwrap();
        let n = self.grid.n();
        let mut out = Array3::zeros((n, n, n));
        exec::fill_indexed(out.as_slice_mut().unwrap(), |i| f(a[i], b[i]));
        Self::from_physical(self.grid, out)
    }

    pub fn mul_pointwise(&self, other: &Self) -> Self {
        self.zip_physical(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -1.0)
    }

    /// self + alpha * other, combined in whichever view both already have,
    /// preferring spectral (linear ops keep both views consistent).
    pub fn add_scaled(&self, other: &Self, alpha: f64) -> Self {
        self.grid.same_as(&other.grid).expect("grid mismatch");
        if self.spectral.get().is_some() && other.spectral.get().is_some() {
            let a = self.spectral().as_slice().unwrap();
            let b = other.spectral().as_slice().unwrap();
            let n = self.grid.n();
            let mut out = Array3::default((n, n, n));
            exec::fill_indexed(out.as_slice_mut().unwrap(), |i| a[i] + alpha * b[i]);
            Self::from_spectral(self.grid, out)
        } else {
            self.zip_physical(other, |a, b| a + alpha * b)
        }
    }

    pub fn scale(&self, alpha: f64) -> Self {
        if self.spectral.get().is_some() {
            self.spectral_map(|_, c| alpha * c)
        } else {
            self.physical_map(|v| alpha * v)
        }
    }

    /// Discrete L^2 inner product h^3ated sum over samples, deterministic order.
    pub fn inner_product(&self, other: &Self) -> f64 {
        self.grid.same_as(&other.grid).expect("grid mismatch");
        let a = self.physical().as_slice().unwrap();
        let b = other.physical().as_slice().unwrap();
        self.grid.cell_volume() * exec::pairwise_map_sum(a.len(), |i| a[i] * b[i])
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.inner_product(self)
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// Plancherel sum L^3 * sum |c_m|^2, the spectral route to the L^2 norm.
    pub fn l2_norm_sq_spectral(&self) -> f64 {
        let c = self.spectral().as_slice().unwrap();
        self.grid.length().powi(3) * exec::pairwise_map_sum(c.len(), |i| c[i].norm_sqr())
    }

    pub fn max_abs(&self) -> f64 {
        // max is order-independent; plain fold is deterministic
        self.physical()
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Mean value (the k = 0 coefficient).
    pub fn mean(&self) -> f64 {
        self.spectral()[[0, 0, 0]].re
    }

    /// Subtract the mean so the zero mode vanishes.
    pub fn mean_free(&self) -> Self {
        self.spectral_map(|mode, c| if mode.m == [0, 0, 0] { Complex64::default() } else { c })
    }

    /// Largest deviation from Hermitian symmetry, |c(m) - conj(c(-m))|.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.grid.n();
        let s = self.spectral();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ni, nj, nk) = ((n - i) % n, (n - j) % n, (n - k) % n);
                    let d = (s[[i, j, k]] - s[[ni, nj, nk]].conj()).norm();
                    worst = worst.max(d);
                }
            }
        }
        worst
    }

    /// Symmetrize the coefficients so c(-m) = conj(c(m)) holds exactly.
    pub fn enforce_hermitian(&self) -> Self {
        let n = self.grid.n();
        let src = self.spectral();
        let mut out = Array3::default((n, n, n));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ni, nj, nk) = ((n - i) % n, (n - j) % n, (n - k) % n);
                    out[[i, j, k]] = 0.5 * (src[[i, j, k]] + src[[ni, nj, nk]].conj());
                }
            }
        }
        Self::from_spectral(self.grid, out)
    }

    pub fn is_finite(&self) -> bool {
        self.physical().iter().all(|v| v.is_finite())
    }
}

pub fn unflatten(idx: usize, n: usize) -> (usize, usize, usize) {
    let k = idx % n;
    let j = (idx / n) % n;
    let i = idx / (n * n);
    (i, j, k)
}

pub fn mode_of(grid: &Grid, i: usize, j: usize, k: usize) -> Mode {
    let m = [grid.signed_mode(i), grid.signed_mode(j), grid.signed_mode(k)];
    let kv = [grid.wavenumber(i), grid.wavenumber(j), grid.wavenumber(k)];
    Mode {
        m,
        k: kv,
        k_sq: kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2],
    }
}

/// Three scalar components on one grid.
#[derive(Debug, Clone)]
pub struct VectorField {
    pub components: [ScalarField; 3],
}

impl VectorField {
    pub fn new(components: [ScalarField; 3]) -> Self {
        let g = components[0].grid();
        for c in &components[1..] {
            g.same_as(c.grid()).expect("grid mismatch");
        }
        Self { components }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::new([
            ScalarField::zeros(grid),
            ScalarField::zeros(grid),
            ScalarField::zeros(grid),
        ])
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64, f64) -> [f64; 3] + Sync) -> Self {
        Self::new([
            ScalarField::from_fn(grid, |x, y, z| f(x, y, z)[0]),
            ScalarField::from_fn(grid, |x, y, z| f(x, y, z)[1]),
            ScalarField::from_fn(grid, |x, y, z| f(x, y, z)[2]),
        ])
    }

    pub fn grid(&self) -> &Grid {
        self.components[0].grid()
    }

    pub fn map(&self, f: impl Fn(&ScalarField) -> ScalarField) -> Self {
        Self::new([
            f(&self.components[0]),
            f(&self.components[1]),
            f(&self.components[2]),
        ])
    }

    pub fn add_scaled(&self, other: &Self, alpha: f64) -> Self {
        Self::new([
            self.components[0].add_scaled(&other.components[0], alpha),
            self.components[1].add_scaled(&other.components[1], alpha),
            self.components[2].add_scaled(&other.components[2], alpha),
        ])
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -1.0)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        self.map(|c| c.scale(alpha))
    }

    pub fn inner_product(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| self.components[i].inner_product(&other.components[i]))
            .sum()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.inner_product(self)
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .fold(0.0f64, |acc, c| acc.max(c.max_abs()))
    }

    /// Pointwise dot product as a scalar field.
    pub fn dot_pointwise(&self, other: &Self) -> ScalarField {
        let mut acc = self.components[0].mul_pointwise(&other.components[0]);
        for i in 1..3 {
            acc = acc.add(&self.components[i].mul_pointwise(&other.components[i]));
        }
        acc
    }

    /// Pointwise squared magnitude |v|^2.
    pub fn magnitude_sq_pointwise(&self) -> ScalarField {
        self.dot_pointwise(self)
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }
}

/// 3x3 scalar entries on one grid; entry (i, j) is `entries[i][j]`.
#[derive(Debug, Clone)]
pub struct TensorField {
    pub entries: [[ScalarField; 3]; 3],
}

impl TensorField {
    pub fn new(entries: [[ScalarField; 3]; 3]) -> Self {
        let g = *entries[0][0].grid();
        for row in &entries {
            for e in row {
                g.same_as(e.grid()).expect("grid mismatch");
            }
        }
        Self { entries }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::new(std::array::from_fn(|_| {
            std::array::from_fn(|_| ScalarField::zeros(grid))
        }))
    }

    pub fn grid(&self) -> &Grid {
        self.entries[0][0].grid()
    }

    /// Outer product a (x) b with entries a_i b_j.
    pub fn outer(a: &VectorField, b: &VectorField) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| a.components[i].mul_pointwise(&b.components[j]))
        }))
    }

    pub fn add_scaled(&self, other: &Self, alpha: f64) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.entries[i][j].add_scaled(&other.entries[i][j], alpha))
        }))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -1.0)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.entries[i][j].scale(alpha))
        }))
    }

    pub fn transpose(&self) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.entries[j][i].clone())
        }))
    }

    pub fn symmetrize(&self) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                self.entries[i][j]
                    .add(&self.entries[j][i])
                    .scale(0.5)
            })
        }))
    }

    /// Frobenius L^2 norm squared, summed over entries.
    pub fn l2_norm_sq(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|e| e.l2_norm_sq())
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .fold(0.0f64, |acc, e| acc.max(e.max_abs()))
    }
}

pub fn grids_match(a: &Grid, b: &Grid) -> Result<()> {
    a.same_as(b)
}
