//! The built-in reference suite. Each instance is an ordinary problem file
//! whose tasks carry expected values, so the files double as format examples.

use serde_json::Value;

use crate::commands::run_task;
use crate::error::CliError;
use crate::problem::parse_problem;
use crate::report::TaskResult;
use crate::timed;

pub const BUILTIN: [(&str, &str); 4] = [
    ("vlambda2", include_str!("../problems/vlambda2.json")),
    ("vlambda_plus_k", include_str!("../problems/vlambda_plus_k.json")),
    ("galois", include_str!("../problems/galois.json")),
    ("f2_blocks", include_str!("../problems/f2_blocks.json")),
];

pub fn run_builtin(seed: u64, timings: bool) -> Vec<TaskResult> {
    BUILTIN.iter().flat_map(|(name, src)| run_file(name, src, seed, timings)).collect()
}

/// Runs every task of one problem file, checking its expectations.
pub fn run_file(name: &str, src: &str, seed: u64, timings: bool) -> Vec<TaskResult> {
    let loaded = parse_problem(src).and_then(|p| p.load().map(|l| (p, l)));
    let (file, problem) = match loaded {
        Ok(x) => x,
        Err(e) => return vec![TaskResult::failure(name.to_string(), Value::Null, &e)],
    };
    if file.tasks.is_empty() {
        return vec![TaskResult::failure(name.to_string(), Value::Null, &CliError::Malformed("the problem has no tasks".into()))];
    }
    file.tasks
        .iter()
        .enumerate()
        .map(|(i, task)| {
            let label = format!("{name}#{} {}", i + 1, task.command);
            let args = task.args();
            let args_json = serde_json::to_value(&args).expect("arguments serialize");
            timed(timings, || TaskResult::from_outcome(label, args_json, run_task(&problem, &task.command, &args, seed), task.expect.as_ref()))
        })
        .collect()
}
