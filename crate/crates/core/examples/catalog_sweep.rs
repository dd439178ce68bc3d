//! Every catalog orbit: landing, regularity, certificate, ratio verdict and
//! convergence class side by side.

use koenigs_lab::boundary::ratio_series;
use koenigs_lab::certify::{certify, default_pair_grid};
use koenigs_lab::classify::classify_orbit;
use koenigs_lab::semigroup::{backward_orbit, hyperbolic_step};
use koenigs_lab::suite::SWEEP_T_MAX;
use koenigs_lab::{catalog, CatalogEntry};

fn main() -> koenigs_lab::Result<()> {
    let t_max: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(SWEEP_T_MAX);
    for entry in catalog() {
        if let Err(e) = row(&entry, t_max) {
            println!("{:<20} error: {e}", entry.name);
        }
    }
    Ok(())
}

fn row(entry: &CatalogEntry, t_max: f64) -> koenigs_lab::Result<()> {
    let model = entry.model()?;
    let orbit = backward_orbit(&model, entry.z0()?, t_max, 0.5)?;
    let step = hyperbolic_step(&model, &orbit, 0.5 * t_max)?;
    let cert = certify(&model, &orbit, &default_pair_grid(t_max))?;
    let ratio = ratio_series(&model, &orbit)?;
    let class = classify_orbit(&model, &orbit)?;
    let (a, b) = cert.constants();
    println!(
        "{:<20} V={:<8.4} {:<14} A={a:<7.3} B={b:<9.3} {:<40} {:?}",
        entry.name,
        step.v,
        cert.verdict.name(),
        format!("{:?}", ratio.verdict),
        class.verdict
    );
    Ok(())
}
