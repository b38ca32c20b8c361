//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the maps run on rayon's pool; without it they
//! are plain iterators. Results always come back in input order, and sums use
//! a fixed pairwise tree so the floating-point result does not depend on the
//! worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, preserving order.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Map over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map over `0..n` on a single thread regardless of features.
pub fn map_range_sequential<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}

/// Deterministic pairwise (tree) summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let (lo, hi) = values.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

/// Whether the rayon backend is compiled in.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v = map_range(1000, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, x)| *x == i * i));
        assert_eq!(map_slice(&[3, 1, 2], |x| x + 1), vec![4, 2, 3]);
    }

    #[test]
    fn pairwise_sum_is_deterministic() {
        let xs: Vec<f64> = (0..10_001).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let a = pairwise_sum(&map_range(xs.len(), |i| xs[i]));
        let b = pairwise_sum(&map_range_sequential(xs.len(), |i| xs[i]));
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.5]), 1.5);
    }
}
