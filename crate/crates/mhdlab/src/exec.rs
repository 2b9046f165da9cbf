//! Deterministic data-parallel building blocks.
//!
//! The `parallel` feature (on by default) routes the hot loops through rayon;
//! without it everything runs sequentially. Both paths produce bit-identical
//! results: reductions use a fixed pairwise tree whose split points depend
//! only on the slice length, never on thread scheduling, and element-wise
//! maps write disjoint outputs. The `*_seq` variants are always compiled so
//! the bench suite can compare the two paths in a single run.

/// Chunk below which reductions and maps fall back to a plain loop.
const LEAF: usize = 1 << 12;

/// Pairwise sum with a fixed reduction tree (sequential path).
pub fn pairwise_sum_seq(x: &[f64]) -> f64 {
    if x.len() <= LEAF {
        return x.iter().sum();
    }
    let (a, b) = x.split_at(x.len() / 2);
    pairwise_sum_seq(a) + pairwise_sum_seq(b)
}

#[cfg(feature = "parallel")]
fn pairwise_sum_par(x: &[f64]) -> f64 {
    if x.len() <= LEAF {
        return x.iter().sum();
    }
    let (a, b) = x.split_at(x.len() / 2);
    let (sa, sb) = rayon::join(|| pairwise_sum_par(a), || pairwise_sum_par(b));
    sa + sb
}

/// Deterministic sum of a slice; identical bits on every run and thread count.
pub fn pairwise_sum(x: &[f64]) -> f64 {
    #[cfg(feature = "parallel")]
    {
        pairwise_sum_par(x)
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairwise_sum_seq(x)
    }
}

/// Pairwise sum of `f(i)` over `0..len` (sequential path).
pub fn pairwise_map_sum_seq<F: Fn(usize) -> f64 + Sync>(len: usize, f: F) -> f64 {
    fn go<F: Fn(usize) -> f64 + Sync>(lo: usize, hi: usize, f: &F) -> f64 {
        if hi - lo <= LEAF {
            return (lo..hi).map(f).sum();
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, len, &f)
}

#[cfg(feature = "parallel")]
fn pairwise_map_sum_par<F: Fn(usize) -> f64 + Sync>(len: usize, f: F) -> f64 {
    fn go<F: Fn(usize) -> f64 + Sync>(lo: usize, hi: usize, f: &F) -> f64 {
        if hi - lo <= LEAF {
            return (lo..hi).map(f).sum();
        }
        let mid = lo + (hi - lo) / 2;
        let (a, b) = rayon::join(|| go(lo, mid, f), || go(mid, hi, f));
        a + b
    }
    go(0, len, &f)
}

/// Deterministic sum of `f(i)` over `0..len`.
pub fn pairwise_map_sum<F: Fn(usize) -> f64 + Sync>(len: usize, f: F) -> f64 {
    #[cfg(feature = "parallel")]
    {
        pairwise_map_sum_par(len, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairwise_map_sum_seq(len, f)
    }
}

/// Apply `f` to each element of disjoint mutable chunks (sequential path).
pub fn for_each_chunk_seq<T: Send, F>(data: &mut [T], chunk: usize, f: F)
where
    F: Fn(usize, &mut [T]) + Sync,
{
    for (idx, c) in data.chunks_mut(chunk).enumerate() {
        f(idx, c);
    }
}

/// Apply `f` to each chunk, in parallel when enabled. Chunks are disjoint so
/// the result does not depend on scheduling.
pub fn for_each_chunk<T: Send, F>(data: &mut [T], chunk: usize, f: F)
where
    F: Fn(usize, &mut [T]) + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(idx, c)| f(idx, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for_each_chunk_seq(data, chunk, f);
    }
}

/// Fill `out[i] = f(i)` (sequential path).
pub fn fill_indexed_seq<T: Send, F>(out: &mut [T], f: F)
where
    F: Fn(usize) -> T + Sync,
{
    for (i, o) in out.iter_mut().enumerate() {
        *o = f(i);
    }
}

/// Fill `out[i] = f(i)`, in parallel when enabled.
pub fn fill_indexed<T: Send, F>(out: &mut [T], f: F)
where
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_iter_mut().enumerate().for_each(|(i, o)| *o = f(i));
    }
    #[cfg(not(feature = "parallel"))]
    {
        fill_indexed_seq(out, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_sequential_bits() {
        // awkward magnitudes so naive reassociation would change the bits
        let x: Vec<f64> = (0..100_000)
            .map(|i| ((i * 2654435761usize) % 1000) as f64 * 1e-3 + 1e12 * ((i % 7) as f64))
            .collect();
        let a = pairwise_sum(&x);
        let b = pairwise_sum_seq(&x);
        assert_eq!(a.to_bits(), b.to_bits());
        let c = pairwise_map_sum(x.len(), |i| x[i]);
        assert_eq!(a.to_bits(), c.to_bits());
    }

    #[test]
    fn map_sum_small_and_empty() {
        assert_eq!(pairwise_map_sum(0, |_| 1.0), 0.0);
        assert_eq!(pairwise_map_sum(5, |i| i as f64), 10.0);
    }
}
