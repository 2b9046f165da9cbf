//! Fourier-multiplier operators on periodic fields: derivatives, Leray
//! projection, Riesz transforms, heat propagator and dealiasing.
//!
//! Odd multipliers (derivative, Riesz) zero the unpaired Nyquist mode so a
//! real field maps to a real field. The Riesz zero mode maps to 0, matching
//! pressure being defined up to constants.

use crate::exec;
use crate::field::{mode_of, unflatten, Mode, ScalarField, TensorField, VectorField};
use ndarray::Array3;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOp {
    Partial(usize),
    Laplacian,
}

/// True when the signed mode sits at the unpaired Nyquist frequency.
fn at_nyquist(m: i64, n: usize) -> bool {
    m == -(n as i64) / 2
}

/// Spectral derivative: multiply by i*k_i, or by -|k|^2 for the Laplacian.
pub fn derivative(f: &ScalarField, op: DerivOp) -> ScalarField {
    let n = f.grid().n();
    match op {
        DerivOp::Partial(axis) => {
            assert!(axis < 3);
            f.spectral_map(move |mode, c| {
                if at_nyquist(mode.m[axis], n) {
                    Complex64::default()
                } else {
                    Complex64::new(0.0, mode.k[axis]) * c
                }
            })
        }
        DerivOp::Laplacian => f.spectral_map(|mode, c| -mode.k_sq * c),
    }
}

pub fn gradient(f: &ScalarField) -> VectorField {
    VectorField::new([
        derivative(f, DerivOp::Partial(0)),
        derivative(f, DerivOp::Partial(1)),
        derivative(f, DerivOp::Partial(2)),
    ])
}

pub fn divergence(v: &VectorField) -> ScalarField {
    let mut acc = derivative(&v.components[0], DerivOp::Partial(0));
    for axis in 1..3 {
        acc = acc.add(&derivative(&v.components[axis], DerivOp::Partial(axis)));
    }
    acc
}

/// Per-mode orthogonal projection onto divergence-free fields:
/// e -> e - (e.khat) khat, zero mode unchanged.
pub fn leray_project(v: &VectorField) -> VectorField {
    let grid = *v.grid();
    let n = grid.n();
    let s: [&Array3<Complex64>; 3] = [
        v.components[0].spectral(),
        v.components[1].spectral(),
        v.components[2].spectral(),
    ];
    let slices = [
        s[0].as_slice().unwrap(),
        s[1].as_slice().unwrap(),
        s[2].as_slice().unwrap(),
    ];

    let mut out: [Array3<Complex64>; 3] =
        std::array::from_fn(|_| Array3::default((n, n, n)));
    for axis in 0..3 {
        let mut buf = Array3::default((n, n, n));
        exec::fill_indexed(buf.as_slice_mut().unwrap(), |idx| {
            let (i, j, k) = unflatten(idx, n);
            let mode = mode_of(&grid, i, j, k);
            if mode.k_sq == 0.0 {
                return slices[axis][idx];
            }
            let e = [slices[0][idx], slices[1][idx], slices[2][idx]];
            let k_dot_e = mode.k[0] * e[0] + mode.k[1] * e[1] + mode.k[2] * e[2];
            e[axis] - mode.k[axis] / mode.k_sq * k_dot_e
        });
        out[axis] = buf;
    }
    let [o0, o1, o2] = out;
    VectorField::new([
        ScalarField::from_spectral(grid, o0),
        ScalarField::from_spectral(grid, o1),
        ScalarField::from_spectral(grid, o2),
    ])
}

/// Riesz transform: multiply by i*k_i/|k|, zero mode mapped to 0.
pub fn riesz(f: &ScalarField, axis: usize) -> ScalarField {
    assert!(axis < 3);
    let n = f.grid().n();
    f.spectral_map(move |mode, c| {
        if mode.k_sq == 0.0 || at_nyquist(mode.m[axis], n) {
            Complex64::default()
        } else {
            Complex64::new(0.0, mode.k[axis] / mode.k_sq.sqrt()) * c
        }
    })
}

/// sum_{i,j} R_i R_j T_{ij}: multiplier -k_i k_j / |k|^2 applied entrywise
/// and summed; zero mode 0.
pub fn riesz_riesz_contract(t: &TensorField) -> ScalarField {
    let grid = *t.grid();
    let n = grid.n();
    let spectra: Vec<&[Complex64]> = t
        .entries
        .iter()
        .flatten()
        .map(|e| e.spectral().as_slice().unwrap())
        .collect();

    let mut out = Array3::default((n, n, n));
    exec::fill_indexed(out.as_slice_mut().unwrap(), |idx| {
        let (i, j, k) = unflatten(idx, n);
        let mode = mode_of(&grid, i, j, k);
        if mode.k_sq == 0.0 {
            return Complex64::default();
        }
        let mut acc = Complex64::default();
        for a in 0..3 {
            for b in 0..3 {
                acc += -mode.k[a] * mode.k[b] / mode.k_sq * spectra[3 * a + b][idx];
            }
        }
        acc
    });
    ScalarField::from_spectral(grid, out)
}

/// Heat propagator: multiply by exp(-|k|^2 tau), tau >= 0.
pub fn heat_propagate(f: &ScalarField, tau: f64) -> ScalarField {
    assert!(tau >= 0.0, "heat propagator needs tau >= 0");
    f.spectral_map(|mode, c| (-mode.k_sq * tau).exp() * c)
}

pub fn heat_propagate_vec(v: &VectorField, tau: f64) -> VectorField {
    v.map(|c| heat_propagate(c, tau))
}

/// Zero every coefficient with |m_i| above the grid's dealias cutoff.
pub fn dealias(f: &ScalarField) -> ScalarField {
    let grid = *f.grid();
    f.spectral_map(move |mode, c| {
        if grid.mode_retained(mode.m) {
            c
        } else {
            Complex64::default()
        }
    })
}

pub fn dealias_vec(v: &VectorField) -> VectorField {
    v.map(dealias)
}

pub fn dealias_tensor(t: &TensorField) -> TensorField {
    TensorField::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| dealias(&t.entries[i][j]))
    }))
}

/// Pointwise product followed by dealiasing, the alias-free quadratic product.
pub fn product_dealiased(a: &ScalarField, b: &ScalarField) -> ScalarField {
    dealias(&a.mul_pointwise(b))
}

/// inverse(forward(f)) together with the max relative deviation from f.
pub fn transform_roundtrip(f: &ScalarField) -> (ScalarField, f64) {
    let back = ScalarField::from_spectral(*f.grid(), f.spectral().clone());
    let scale = f.max_abs().max(f64::MIN_POSITIVE);
    let mut dev = 0.0f64;
    for (a, b) in back.physical().iter().zip(f.physical().iter()) {
        dev = dev.max((a - b).abs() / scale);
    }
    (back, dev)
}

/// Relative spectral divergence, |div v| against |k||v| scale.
pub fn relative_divergence(v: &VectorField) -> f64 {
    let div = divergence(v);
    let num = div.l2_norm();
    let grid = v.grid();
    let k_scale = 2.0 * std::f64::consts::PI / grid.length() * grid.n() as f64 / 2.0;
    let den = k_scale * v.l2_norm();
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}
