//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon pool; without it they run the same closures sequentially. Every
//! helper preserves input order so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `items.iter().map(f).collect()`, in parallel when enabled.
pub(crate) fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
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

/// Maximum of `f(i)` over `0..n`, or `None` for `n == 0`. NaN poisons the result.
pub(crate) fn max_range<F>(n: usize, f: F) -> Option<f64>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let pick = |a: f64, b: f64| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) };
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).reduce_with(pick)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).reduce(pick)
    }
}

/// Applies `f` to each chunk of `data` of length `row_len`, in parallel when enabled.
pub(crate) fn for_each_row<F>(data: &mut [f64], row_len: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    if row_len == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(row_len).enumerate().for_each(|(i, row)| f(i, row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(row_len).enumerate().for_each(|(i, row)| f(i, row));
    }
}
