//! Scenario files and the task runner behind the command-line front end.
//!
//! A scenario is a TOML document with a `[model]` table (a [`ModelSpec`]) and
//! a `[run]` table:
//!
//! ```toml
//! [model]
//! family = "strip"
//! a = -1.5707963267948966
//! b = 1.5707963267948966
//!
//! [run]
//! z0 = [0.0, 0.0]
//! t_max = 200.0
//! dt = 0.5
//! tasks = ["simulate", "certify"]
//! output_dir = "out/strip"
//! ```

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::boundary::ratio_series;
use crate::certify::{certify, default_pair_grid, paper_constants, RESIDUAL_TOL};
use crate::classify::classify_orbit;
use crate::domain::{build_model, ModelSpec};
use crate::error::{Error, Result, EXIT_OK};
use crate::invariants::beurling::{beurling_csv, beurling_suite, suite_monotone, PRODUCT_BOUND};
use crate::report::{invariant_rows, json_bytes, write_atomic};
use crate::semigroup::{backward_orbit, backward_orbit_identity_check, forward_trajectory};
use crate::Complex;

/// Largest residual accepted by the backward-orbit identity check.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Largest relative error of the grid Grötzsch distance.
pub const FD_RELERR: f64 = 0.02;
/// Radii of the Grötzsch invariant report.
pub const INVARIANT_RADII: [f64; 3] = [0.3, 0.5, 0.7];
/// Default grid for the invariant task.
pub const DEFAULT_GRID: usize = 512;
const IDENTITY_SAMPLES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Simulate,
    Certify,
    Ratio,
    Classify,
    Invariants,
}

impl Task {
    pub const ALL: [Task; 5] = [Task::Simulate, Task::Certify, Task::Ratio, Task::Classify, Task::Invariants];

    pub fn name(self) -> &'static str {
        match self {
            Task::Simulate => "simulate",
            Task::Certify => "certify",
            Task::Ratio => "ratio",
            Task::Classify => "classify",
            Task::Invariants => "invariants",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunBlock {
    z0: [f64; 2],
    t_max: f64,
    dt: f64,
    tasks: Vec<Task>,
    output_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    model: ModelSpec,
    run: RunBlock,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub model: ModelSpec,
    pub z0: Complex,
    pub t_max: f64,
    pub dt: f64,
    pub tasks: Vec<Task>,
    pub output_dir: PathBuf,
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let s = Scenario {
            model: file.model,
            z0: Complex::new(file.run.z0[0], file.run.z0[1]),
            t_max: file.run.t_max,
            dt: file.run.dt,
            tasks: file.run.tasks,
            output_dir: file.run.output_dir,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Scenario::parse(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.tasks.is_empty() {
            return Err(Error::Config("run.tasks must not be empty".into()));
        }
        if !(self.dt > 0.0 && self.dt < self.t_max && self.t_max.is_finite()) {
            return Err(Error::Config(format!("run.dt = {} must satisfy 0 < dt < t_max = {}", self.dt, self.t_max)));
        }
        if !(self.z0.norm() < 1.0) {
            return Err(Error::Config(format!("run.z0 = {} is not inside the unit disk", self.z0)));
        }
        self.model.validate().map_err(|e| Error::Config(format!("model: {e}")))
    }

    /// TOML text that parses back to the same scenario; numbers carry 17
    /// significant digits.
    pub fn to_toml(&self) -> String {
        let mut out = String::from("[model]\n");
        let block = self.model.to_config_block();
        for line in block.lines() {
            match line.strip_prefix('[') {
                Some(rest) => {
                    let _ = writeln!(out, "[model.{rest}");
                }
                None => {
                    let _ = writeln!(out, "{line}");
                }
            }
        }
        let tasks: Vec<String> = self.tasks.iter().map(|t| format!("\"{}\"", t.name())).collect();
        let _ = write!(
            out,
            "\n[run]\nz0 = [{}, {}]\nt_max = {}\ndt = {}\ntasks = [{}]\noutput_dir = {:?}\n",
            fmt17(self.z0.re),
            fmt17(self.z0.im),
            fmt17(self.t_max),
            fmt17(self.dt),
            tasks.join(", "),
            self.output_dir.to_string_lossy()
        );
        out
    }
}

/// One named check inside a task.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

impl Assertion {
    fn at_most(name: &str, value: f64, bound: f64) -> Assertion {
        Assertion { name: name.into(), value, bound, passed: value <= bound }
    }

    fn holds(name: &str, ok: bool) -> Assertion {
        Assertion { name: name.into(), value: ok as u8 as f64, bound: 1.0, passed: ok }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TaskStatus {
    Passed,
    Failed,
    Error { kind: String, message: String, exit_code: i32 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskOutcome {
    pub task: Task,
    #[serde(flatten)]
    pub status: TaskStatus,
    pub assertions: Vec<Assertion>,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub outcomes: Vec<TaskOutcome>,
}

impl RunReport {
    /// Numeric failures outrank assertion failures.
    pub fn exit_code(&self) -> i32 {
        self.outcomes
            .iter()
            .map(|o| match &o.status {
                TaskStatus::Passed => EXIT_OK,
                TaskStatus::Failed => crate::error::EXIT_ASSERTION,
                TaskStatus::Error { exit_code, .. } => *exit_code,
            })
            .max()
            .unwrap_or(EXIT_OK)
    }
}

struct Artifacts<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Artifacts<'_> {
    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        write_atomic(&self.dir.join(name), bytes)?;
        self.files.push(name.to_string());
        Ok(())
    }
}

fn run_task(s: &Scenario, task: Task, grid: usize, out: &mut Artifacts) -> Result<Vec<Assertion>> {
    let model = build_model(&s.model)?;
    let backward = || backward_orbit(&model, s.z0, s.t_max, s.dt);
    match task {
        Task::Simulate => {
            let orbit = backward()?;
            out.write("orbit.csv", orbit.to_csv().as_bytes())?;
            out.write("forward.csv", forward_trajectory(&model, s.z0, s.t_max, s.dt)?.to_csv().as_bytes())?;
            let residual = backward_orbit_identity_check(&model, &orbit, IDENTITY_SAMPLES)?;
            Ok(vec![Assertion::at_most("backward_orbit_identity", residual, IDENTITY_TOL)])
        }
        Task::Certify => {
            let orbit = backward()?;
            let cert = certify(&model, &orbit, &default_pair_grid(s.t_max))?;
            let mut doc = cert.to_json();
            let mut checks = vec![
                Assertion::at_most("max_residual", cert.max_residual, RESIDUAL_TOL),
                Assertion::at_most("soundness", cert.soundness, RESIDUAL_TOL),
            ];
            if let Ok(pc) = paper_constants(&model, &orbit) {
                let residual = pc.validate(&cert.pairs);
                checks.push(Assertion::at_most("paper_constants_residual", residual, RESIDUAL_TOL));
                doc["paperConstants"] = json!({"A": pc.a, "B": pc.b, "maxResidual": residual, "details": pc});
            }
            out.write("certificate.json", &json_bytes(&doc)?)?;
            Ok(checks)
        }
        Task::Ratio => {
            let orbit = backward()?;
            let series = ratio_series(&model, &orbit)?;
            out.write("ratio.csv", series.to_csv().as_bytes())?;
            out.write("ratio.json", &json_bytes(&json!({"level": orbit.level, "verdict": series.verdict}))?)?;
            Ok(vec![Assertion::holds("ratios_defined", series.ratios.iter().all(|r| !r.is_nan()))])
        }
        Task::Classify => {
            let report = classify_orbit(&model, &backward()?)?;
            out.write("classification.json", &json_bytes(&report)?)?;
            let excess = report.angle_series.iter().map(|a| a.abs() - FRAC_PI_2).fold(f64::NEG_INFINITY, f64::max);
            Ok(vec![Assertion::at_most("angle_range_excess", excess, 1e-9)])
        }
        Task::Invariants => {
            let rows = invariant_rows(&INVARIANT_RADII, grid)?;
            out.write("invariants.json", &json_bytes(&rows)?)?;
            let beurling = beurling_suite(grid / 2)?;
            out.write("beurling.csv", beurling_csv(&beurling).as_bytes())?;
            let worst = rows.iter().map(|r| r.relerr).fold(0.0, f64::max);
            let product = beurling.iter().map(|b| b.product).fold(0.0, f64::max);
            Ok(vec![
                Assertion::at_most("fd_relative_error", worst, FD_RELERR),
                Assertion::at_most("beurling_product", product, PRODUCT_BOUND),
                Assertion::holds("beurling_monotone", suite_monotone(&beurling)),
            ])
        }
    }
}

/// Runs `tasks` and writes their artifacts plus `summary.json` to `out_dir`;
/// `errors.json` lists the tasks that raised an error.
pub fn run(scenario: &Scenario, tasks: &[Task], out_dir: &Path, grid: usize) -> Result<RunReport> {
    std::fs::create_dir_all(out_dir)?;
    let mut outcomes = Vec::with_capacity(tasks.len());
    for &task in tasks {
        let mut out = Artifacts { dir: out_dir, files: Vec::new() };
        let (status, assertions) = match run_task(scenario, task, grid, &mut out) {
            Ok(a) if a.iter().all(|x| x.passed) => (TaskStatus::Passed, a),
            Ok(a) => (TaskStatus::Failed, a),
            Err(e) => (
                TaskStatus::Error { kind: e.kind().into(), message: e.to_string(), exit_code: e.exit_code() },
                Vec::new(),
            ),
        };
        outcomes.push(TaskOutcome { task, status, assertions, files: out.files });
    }
    let report = RunReport { outcomes };
    let errors: Vec<_> = report
        .outcomes
        .iter()
        .filter_map(|o| match &o.status {
            TaskStatus::Error { kind, message, exit_code } => {
                Some(json!({"task": o.task, "kind": kind, "message": message, "exitCode": exit_code}))
            }
            _ => None,
        })
        .collect();
    let errors_path = out_dir.join("errors.json");
    if errors.is_empty() {
        if errors_path.exists() {
            std::fs::remove_file(&errors_path)?;
        }
    } else {
        write_atomic(&errors_path, &json_bytes(&errors)?)?;
    }
    write_atomic(&out_dir.join("summary.json"), &json_bytes(&report)?)?;
    Ok(report)
}
