//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over rayon's pool; without it, or when sequential execution is requested,
//! plain iterators are used. Results always come back in input order.

/// How to run data-parallel loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Runs `f` on a pool of `jobs` threads, so nested parallel loops stay
/// within `jobs` threads too. Without the `parallel` feature everything runs
/// on the calling thread.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce(Execution) -> R + Send) -> R {
    let exec = if jobs > 1 {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    #[cfg(feature = "parallel")]
    if let Ok(pool) = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        return pool.install(|| f(exec));
    }
    let _ = exec;
    f(Execution::Sequential)
}
