//! Execution strategy for the data-parallel loops (subset counting, grid
//! sweeps). With the `parallel` feature disabled everything runs sequentially
//! and [`Exec::Parallel`] is accepted but behaves like [`Exec::Sequential`].

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `items.map(f)` preserving input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps every item and folds the results with an associative `combine`.
    pub fn map_reduce<T, R, F, C>(self, items: &[T], identity: R, f: F, combine: C) -> R
    where
        T: Sync,
        R: Send + Sync + Clone,
        F: Fn(&T) -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items
                .par_iter()
                .map(f)
                .reduce(|| identity.clone(), &combine),
            _ => items.iter().map(f).fold(identity, combine),
        }
    }
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Runs `f` on a worker pool of `jobs` threads. `jobs <= 1` (or a build
/// without the `parallel` feature) runs `f` on the calling thread with
/// [`Exec::Sequential`].
pub fn with_jobs<R, F>(jobs: usize, f: F) -> R
where
    R: Send,
    F: FnOnce(Exec) -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if jobs > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return pool.install(|| f(Exec::Parallel));
            }
        }
    }
    let _ = jobs;
    f(Exec::Sequential)
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&items, |x| x * x);
        let par = Exec::Parallel.map(&items, |x| x * x);
        assert_eq!(seq, par);
        let s1 = Exec::Sequential.map_reduce(&items, 0u64, |x| *x, |a, b| a + b);
        let s2 = with_jobs(4, |e| e.map_reduce(&items, 0u64, |x| *x, |a, b| a + b));
        assert_eq!(s1, 499_500);
        assert_eq!(s1, s2);
    }
}
