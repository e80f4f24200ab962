//! Problem-file ingestion, task execution and reports behind the `invgrass`
//! binary.

pub mod commands;
pub mod error;
pub mod problem;
pub mod report;
pub mod suite;

use std::time::Instant;

use report::TaskResult;

/// Runs `f`, recording its wall-clock time when `timings` is set.
pub fn timed(timings: bool, f: impl FnOnce() -> TaskResult) -> TaskResult {
    let start = Instant::now();
    let mut r = f();
    if timings {
        r.elapsed_us = Some(start.elapsed().as_micros() as u64);
    }
    r
}
