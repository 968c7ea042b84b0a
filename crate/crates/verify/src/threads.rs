//! Thread-count control for the data-parallel parts of the verifiers.

/// Environment variable capping internal parallelism.
pub const THREADS_ENV: &str = "CONEVANISH_THREADS";

pub fn thread_limit() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `f` on a pool of `threads` workers.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Runs `f` under the limit from the environment, if any.
pub fn with_env_threads<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match thread_limit() {
        Some(n) => with_threads(n, f),
        None => f(),
    }
}
