//! Thin wrappers that run on rayon with the `parallel` feature and
//! sequentially otherwise. Output never depends on the schedule.

use alloc::vec::Vec;
use core::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Calls `f(chunk_index, chunk)` on consecutive `chunk`-sized pieces.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    #[cfg(not(feature = "parallel"))]
    data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
}

/// `range.map(f).collect()`, in index order.
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    return range.into_par_iter().map(f).collect();
    #[cfg(not(feature = "parallel"))]
    return range.map(f).collect();
}

/// `items.iter().map(f).collect()`, in order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    return items.par_iter().map(f).collect();
    #[cfg(not(feature = "parallel"))]
    return items.iter().map(f).collect();
}

/// Pairwise `f(&mut a[i], &mut b[i])` over two equal-length slices.
pub fn zip_mut<T, F>(a: &mut [T], b: &mut [T], f: F)
where
    T: Send,
    F: Fn(&mut T, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    a.par_iter_mut()
        .with_min_len(1 << 12)
        .zip(b.par_iter_mut())
        .for_each(|(x, y)| f(x, y));
    #[cfg(not(feature = "parallel"))]
    a.iter_mut().zip(b.iter_mut()).for_each(|(x, y)| f(x, y));
}
