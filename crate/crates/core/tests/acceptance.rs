//! Runs the eight acceptance criteria at their pinned sample counts and
//! prints one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use dahakit::suite::{run_criterion, SuiteConfig, CRITERIA};

fn main() -> ExitCode {
    let cfg = SuiteConfig {
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..SuiteConfig::default()
    };
    let ids: Vec<u8> = CRITERIA.iter().map(|(id, _)| *id).collect();
    let mut outcomes = Vec::new();
    std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .iter()
            .map(|&id| {
                let cfg = &cfg;
                s.spawn(move || {
                    let start = Instant::now();
                    (run_criterion(id, cfg), start.elapsed())
                })
            })
            .collect();
        outcomes.extend(handles.into_iter().map(|h| h.join().expect("criterion panicked")));
    });
    let mut all = true;
    for (o, elapsed) in &outcomes {
        println!("{} [{:.1}s]", o.line(), elapsed.as_secs_f64());
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
        all &= o.passed;
    }
    if all {
        println!("acceptance: all {} criteria passed", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
