//! Angle cluster sets and harmonic-measure bounds of backward orbits.

use koenigs_lab::catalog;
use koenigs_lab::classify::classify_orbit;
use koenigs_lab::semigroup::backward_orbit;

fn main() -> koenigs_lab::Result<()> {
    for entry in catalog().iter().filter(|e| ["strip_off_center", "twoslit", "halfplane"].contains(&e.name)) {
        let model = entry.model()?;
        let orbit = backward_orbit(&model, entry.z0()?, 400.0, 0.5)?;
        let report = classify_orbit(&model, &orbit)?;
        let (lo, hi) = report.cluster_interval;
        println!(
            "{:<18} sigma={:.3} angles in [{lo:.4}, {hi:.4}] stolz={} hm in [{:.4}, {:.4}] -> {:?}",
            entry.name, report.sigma, report.stolz_ok, report.hm_liminf, report.hm_limsup, report.verdict
        );
    }
    Ok(())
}
