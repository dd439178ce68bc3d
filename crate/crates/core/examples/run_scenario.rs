//! Runs a scenario file through every task and writes its artifacts.
//!
//! `cargo run --example run_scenario -- scenarios/twoslit.toml out/twoslit`

use std::path::PathBuf;

use koenigs_lab::scenario::{run, Scenario, DEFAULT_GRID};

fn main() -> koenigs_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = PathBuf::from(args.next().unwrap_or_else(|| "scenarios/twoslit.toml".into()));
    let scenario = Scenario::load(&path)?;
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| scenario.output_dir.clone());
    let report = run(&scenario, &scenario.tasks, &out, DEFAULT_GRID)?;
    for outcome in &report.outcomes {
        println!("{:<10} {:?} {}", outcome.task.name(), outcome.status, outcome.files.join(" "));
        for a in &outcome.assertions {
            println!("  {:<28} {:>12.4e} <= {:.1e} {}", a.name, a.value, a.bound, if a.passed { "ok" } else { "FAILED" });
        }
    }
    println!("exit code {}", report.exit_code());
    Ok(())
}
