//! Order-preserving map over a work list, parallel when the `parallel`
//! feature is enabled and the caller asks for it.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order. With the `parallel` feature
/// enabled and `parallel == true` the work is distributed with rayon;
/// otherwise it runs sequentially. Results are identical either way.
pub(crate) fn maybe_par_map<T, U, F>(items: &[T], parallel: bool, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return items.par_iter().map(&f).collect();
        }
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
