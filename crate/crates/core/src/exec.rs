//! Execution helpers for the crate's data-parallel loops.
//!
//! With the `parallel` feature (default) [`map`] fans work out over a rayon
//! pool; without it, it degrades to the sequential path. Results are always
//! returned in input order, so callers are deterministic either way.
//! [`map_seq`] is always sequential and exists so benchmarks can compare the
//! two paths on identical workloads.

/// Map `f` over `items`, in parallel when the `parallel` feature is enabled.
/// The output order matches the input order.
#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Map `f` over `items`, in parallel when the `parallel` feature is enabled.
/// The output order matches the input order.
#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    map_seq(items, f)
}

/// Sequential map over `items`; the baseline the parallel path is compared
/// against in benches.
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Run `f` inside a pool with `jobs` threads when given (and the `parallel`
/// feature is on); otherwise run it directly.
#[cfg(feature = "parallel")]
pub fn with_threads<R, F>(jobs: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match jobs {
        Some(k) if k > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool construction")
            .install(f),
        _ => f(),
    }
}

/// Run `f` inside a pool with `jobs` threads when given (and the `parallel`
/// feature is on); otherwise run it directly.
#[cfg(not(feature = "parallel"))]
pub fn with_threads<R, F>(jobs: Option<usize>, f: F) -> R
where
    F: FnOnce() -> R,
{
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let items: Vec<usize> = (0..1000).collect();
        let doubled = map(&items, |&x| 2 * x);
        let doubled_seq = map_seq(&items, |&x| 2 * x);
        assert_eq!(doubled, doubled_seq);
        assert_eq!(doubled[499], 998);
    }

    #[test]
    fn with_threads_runs() {
        assert_eq!(with_threads(Some(2), || 7), 7);
        assert_eq!(with_threads(None, || 7), 7);
    }
}
