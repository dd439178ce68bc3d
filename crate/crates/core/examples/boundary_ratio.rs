//! Boundary distances above and below the orbit line and their ratio.

use std::f64::consts::PI;

use koenigs_lab::boundary::ratio_series;
use koenigs_lab::semigroup::backward_orbit;
use koenigs_lab::{build_model, ModelSpec};

fn main() -> koenigs_lab::Result<()> {
    let specs = [
        ("strip", ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 }),
        ("twoslit", ModelSpec::TwoSlit { x0: -1.0, halfgap: PI }),
        ("halfplane", ModelSpec::HalfPlane { a: -1.0 }),
    ];
    for (name, spec) in specs {
        let model = build_model(&spec)?;
        let orbit = backward_orbit(&model, koenigs_lab::Complex::new(0.0, 0.0), 40.0, 10.0)?;
        let series = ratio_series(&model, &orbit)?;
        println!("{name}: {:?}", series.verdict);
        for k in 0..series.times.len() {
            println!(
                "  t={:>4} delta+={:<10.6} delta-={:<10.6} ratio={:.6}",
                series.times[k], series.delta_plus[k], series.delta_minus[k], series.ratios[k]
            );
        }
    }
    Ok(())
}
