//! 3D complex FFT on the periodic grid, built on rustfft.
//!
//! Forward transforms are normalized by 1/N^3 so spectral data holds actual
//! Fourier coefficients: f(x) = sum_m c_m exp(i k_m . x). Lane transforms
//! write disjoint data, so the parallel path is bit-identical to the
//! sequential one.

use ndarray::{Array3, Axis};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type PlanKey = (usize, bool);

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = cache.lock().unwrap();
    cache
        .entry((n, forward))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if forward {
                planner.plan_fft_forward(n)
            } else {
                planner.plan_fft_inverse(n)
            }
        })
        .clone()
}

fn transform_axis(data: &mut Array3<Complex64>, axis: usize, forward: bool) {
    let n = data.shape()[axis];
    let fft = plan(n, forward);

    let apply = |lane: &mut ndarray::ArrayViewMut1<Complex64>, fft: &Arc<dyn Fft<f64>>| {
        let mut buf: Vec<Complex64> = lane.iter().copied().collect();
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(&mut buf, &mut scratch);
        for (dst, src) in lane.iter_mut().zip(buf.iter()) {
            *dst = *src;
        }
    };

    #[cfg(feature = "parallel")]
    {
        use ndarray::parallel::prelude::*;
        data.lanes_mut(Axis(axis))
            .into_producer()
            .into_par_iter()
            .for_each(|mut lane| apply(&mut lane, &fft));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for mut lane in data.lanes_mut(Axis(axis)) {
            apply(&mut lane, &fft);
        }
    }
}

/// Sequential single-axis pass, kept for the bench comparison.
pub fn transform_axis_seq(data: &mut Array3<Complex64>, axis: usize, forward: bool) {
    let n = data.shape()[axis];
    let fft = plan(n, forward);
    let mut buf = vec![Complex64::default(); n];
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    for mut lane in data.lanes_mut(Axis(axis)) {
        for (b, v) in buf.iter_mut().zip(lane.iter()) {
            *b = *v;
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        for (dst, src) in lane.iter_mut().zip(buf.iter()) {
            *dst = *src;
        }
    }
}

/// In-place forward 3D transform; output coefficients carry the 1/N^3 factor.
pub fn forward3(data: &mut Array3<Complex64>) {
    for axis in 0..3 {
        transform_axis(data, axis, true);
    }
    let scale = 1.0 / data.len() as f64;
    crate::exec::for_each_chunk(
        data.as_slice_mut().expect("contiguous"),
        1 << 12,
        |_, chunk| {
            for v in chunk {
                *v *= scale;
            }
        },
    );
}

/// In-place inverse 3D transform (plain synthesis sum, no scaling).
pub fn inverse3(data: &mut Array3<Complex64>) {
    for axis in 0..3 {
        transform_axis(data, axis, false);
    }
}

/// Sequential whole-transform variants for benches.
pub fn forward3_seq(data: &mut Array3<Complex64>) {
    for axis in 0..3 {
        transform_axis_seq(data, axis, true);
    }
    let scale = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}

pub fn inverse3_seq(data: &mut Array3<Complex64>) {
    for axis in 0..3 {
        transform_axis_seq(data, axis, false);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use std::f64::consts::PI;

    /// Direct O(N^6) DFT summation, the independent oracle for the fast path.
    fn dft3_direct(samples: &Array3<Complex64>, grid: &Grid) -> Array3<Complex64> {
        let n = grid.n();
        let mut out = Array3::default((n, n, n));
        for mi in 0..n {
            for mj in 0..n {
                for mk in 0..n {
                    let mut acc = Complex64::default();
                    for xi in 0..n {
                        for xj in 0..n {
                            for xk in 0..n {
                                let phase = -2.0 * PI / n as f64
                                    * (mi as f64 * xi as f64
                                        + mj as f64 * xj as f64
                                        + mk as f64 * xk as f64);
                                acc += samples[[xi, xj, xk]] * Complex64::from_polar(1.0, phase);
                            }
                        }
                    }
                    out[[mi, mj, mk]] = acc / n.pow(3) as f64;
                }
            }
        }
        out
    }

    #[test]
    fn matches_direct_dft_oracle_at_8() {
        let grid = Grid::standard(8, 2.0 * PI).unwrap();
        let n = grid.n();
        // deterministic pseudo-random real samples
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut field = Array3::default((n, n, n));
        for v in field.iter_mut() {
            *v = Complex64::new(next(), 0.0);
        }

        let oracle = dft3_direct(&field, &grid);
        let mut fast = field.clone();
        forward3(&mut fast);

        let mut max_err = 0.0f64;
        for (a, b) in fast.iter().zip(oracle.iter()) {
            max_err = max_err.max((a - b).norm());
        }
        assert!(max_err < 1e-13, "fast vs direct DFT: {max_err}");

        // round trip back to samples
        inverse3(&mut fast);
        let mut rt_err = 0.0f64;
        for (a, b) in fast.iter().zip(field.iter()) {
            rt_err = rt_err.max((a - b).norm());
        }
        assert!(rt_err < 1e-13, "round trip: {rt_err}");
    }

    #[test]
    fn parallel_and_sequential_paths_agree_bitwise() {
        let n = 16;
        let mut a = Array3::default((n, n, n));
        for (i, v) in a.iter_mut().enumerate() {
            *v = Complex64::new((i % 97) as f64 * 0.013, (i % 31) as f64 * -0.027);
        }
        let mut b = a.clone();
        forward3(&mut a);
        forward3_seq(&mut b);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }
}
