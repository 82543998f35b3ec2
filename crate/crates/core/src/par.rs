//! Order-preserving parallel map; sequential without the `parallel` feature.

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<T: Send, R: Send>(items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<T, R>(items: Vec<T>, f: impl Fn(T) -> R) -> Vec<R> {
    items.into_iter().map(f).collect()
}

/// Applies `f` to every index in `0..n`, preserving order.
pub(crate) fn map_range<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    const BLOCK: usize = 4096;
    let blocks: Vec<usize> = (0..n.div_ceil(BLOCK)).collect();
    map_ordered(blocks, |b| (b * BLOCK..((b + 1) * BLOCK).min(n)).map(&f).collect::<Vec<R>>())
        .into_iter()
        .flatten()
        .collect()
}

/// Worker threads available to [`map_ordered`].
pub(crate) fn thread_count() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
