//! Seeded per-trial random streams, worker pools, and binomial intervals.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Environment variable that sets the worker count for Monte Carlo runs.
pub const THREADS_ENV: &str = "LISTAGREE_THREADS";

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959964;

/// Stream derivation recorded in reports.
pub const STREAM_DERIVATION: &str = "ChaCha8(seed = master, stream = trial index)";

/// Independent generator for one trial: the master seed keys ChaCha8 and the
/// trial index selects the stream, so trials can run in any order.
pub fn trial_rng(master: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(trial);
    rng
}

/// Worker pool sized by `LISTAGREE_THREADS` when set, else rayon's default.
pub fn pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Wilson score interval for `successes` out of `n`.
pub fn wilson(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}
