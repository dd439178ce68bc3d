use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use koenigs_lab::domain::FAMILY_NAMES;
use koenigs_lab::error::{EXIT_ASSERTION, EXIT_CONFIG, EXIT_OK};
use koenigs_lab::report::{json_bytes, write_atomic};
use koenigs_lab::scenario::{run, Scenario, Task, DEFAULT_GRID};
use koenigs_lab::suite::{run_suite, DEFAULT_SEED};

/// Closed-form Koenigs models of non-elliptic semigroups in the unit disk.
#[derive(Parser)]
#[command(name = "koenigs", version)]
struct Cli {
    /// Print the model families accepted in scenario files and exit.
    #[arg(long)]
    list_models: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Backward and forward orbit samples.
    Simulate(TaskArgs),
    /// Quasi-geodesic certificate of the backward orbit.
    Certify(TaskArgs),
    /// Two-sided boundary distance ratio along the backward orbit.
    Ratio(TaskArgs),
    /// Non-tangential or tangential landing of the backward orbit.
    Classify(TaskArgs),
    /// Grötzsch ring and Beurling estimate reports.
    Invariants(TaskArgs),
    /// Every task listed in the scenario.
    Run(TaskArgs),
    /// The full acceptance battery.
    Suite {
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Seed for the random sample points.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Directory for suite.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TaskArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Overrides run.output_dir of the scenario.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid intervals per side for the extremal-distance solver.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn run_tasks(args: &TaskArgs, only: Option<Task>) -> ExitCode {
    let scenario = match Scenario::load(&args.scenario) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return code(e.exit_code());
        }
    };
    let tasks = only.map_or_else(|| scenario.tasks.clone(), |t| vec![t]);
    let out = args.out.clone().unwrap_or_else(|| scenario.output_dir.clone());
    match run(&scenario, &tasks, &out, args.grid) {
        Ok(report) => {
            for o in &report.outcomes {
                let status = serde_json::to_value(&o.status).unwrap_or_default();
                let line = format!("{}: {} {}", o.task.name(), status["status"].as_str().unwrap_or("?"), o.files.join(" "));
                println!("{}", line.trim_end());
                for a in o.assertions.iter().filter(|a| !a.passed) {
                    println!("  failed {}: {:e} > {:e}", a.name, a.value, a.bound);
                }
                if let Some(m) = status.get("message") {
                    println!("  {}", m.as_str().unwrap_or(""));
                }
            }
            code(report.exit_code())
        }
        Err(e) => {
            eprintln!("{e}");
            code(e.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { code(EXIT_CONFIG) } else { code(EXIT_OK) };
        }
    };
    if cli.list_models {
        for name in FAMILY_NAMES {
            println!("{name}");
        }
        return code(EXIT_OK);
    }
    match cli.command {
        None => {
            eprintln!("no subcommand given; see --help");
            code(EXIT_CONFIG)
        }
        Some(Command::Simulate(a)) => run_tasks(&a, Some(Task::Simulate)),
        Some(Command::Certify(a)) => run_tasks(&a, Some(Task::Certify)),
        Some(Command::Ratio(a)) => run_tasks(&a, Some(Task::Ratio)),
        Some(Command::Classify(a)) => run_tasks(&a, Some(Task::Classify)),
        Some(Command::Invariants(a)) => run_tasks(&a, Some(Task::Invariants)),
        Some(Command::Run(a)) => run_tasks(&a, None),
        Some(Command::Suite { grid, seed, out }) => {
            let results = run_suite(grid, seed);
            for r in &results {
                println!("{}", r.line());
            }
            if let Some(dir) = out {
                let written = json_bytes(&results).and_then(|b| write_atomic(&dir.join("suite.json"), &b));
                if let Err(e) = written {
                    eprintln!("{e}");
                    return code(e.exit_code());
                }
            }
            code(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_ASSERTION })
        }
    }
}
