//! Sequential or data-parallel execution of independent work items.
//!
//! With the `parallel` feature disabled, [`Exec::Parallel`] silently runs
//! sequentially, so callers never need to branch on the feature.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    /// Folds each chunk of `items` into an accumulator, then merges the partial results.
    pub fn fold<T, A, F, M>(self, items: &[T], init: impl Fn() -> A + Sync + Send, f: F, merge: M) -> A
    where
        T: Sync,
        A: Send,
        F: Fn(&mut A, &T) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            Exec::Sequential => {
                let mut acc = init();
                for item in items {
                    f(&mut acc, item);
                }
                acc
            }
            Exec::Parallel => par_fold(items, init, f, merge),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn par_fold<T, A, F, M>(items: &[T], init: impl Fn() -> A + Sync + Send, f: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    F: Fn(&mut A, &T) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    use rayon::prelude::*;
    items
        .par_iter()
        .fold(&init, |mut acc, item| {
            f(&mut acc, item);
            acc
        })
        .reduce(&init, merge)
}

#[cfg(not(feature = "parallel"))]
fn par_fold<T, A, F, M>(items: &[T], init: impl Fn() -> A + Sync + Send, f: F, _merge: M) -> A
where
    T: Sync,
    A: Send,
    F: Fn(&mut A, &T) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let mut acc = init();
    for item in items {
        f(&mut acc, item);
    }
    acc
}

/// Caps the global worker pool. Returns false when the pool was already built
/// or parallelism is compiled out.
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}
