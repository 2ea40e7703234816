use rayon::prelude::*;

/// Maps `f` over `items` on `workers` threads, preserving order. One worker
/// runs inline on the caller's thread.
pub(crate) fn par_map<T, R, F>(workers: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

/// Mutable counterpart of [`par_map`].
pub(crate) fn par_map_mut<T, R, F>(workers: usize, items: &mut [T], f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(&mut T) -> R + Sync + Send,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter_mut().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| items.par_iter_mut().map(&f).collect()),
        Err(_) => items.iter_mut().map(f).collect(),
    }
}
