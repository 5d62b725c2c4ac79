//! Shared rayon pool; `HYPERLAP_THREADS` caps its size.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_ENV: &str = "HYPERLAP_THREADS";

pub fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = ThreadPoolBuilder::new();
        if let Some(k) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&k| k > 0) {
            b = b.num_threads(k);
        }
        b.build().expect("thread pool")
    })
}
