//! Hyperbolic density, distance and length in the strip model, with the
//! distance lemma bounds.

use std::f64::consts::PI;

use koenigs_lab::metric::{default_path, density_omega, distance_lemma_bounds, hyp_length, k_disk, k_omega};
use koenigs_lab::semigroup::backward_orbit;
use koenigs_lab::{build_model, Complex, ModelSpec};

fn main() -> koenigs_lab::Result<()> {
    let model = build_model(&ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 })?;
    let origin = Complex::new(0.0, 0.0);
    println!("k_D(0, 1/2) = {:.15}", k_disk(origin, Complex::new(0.5, 0.0))?);
    for y in [0.0, 0.5, 1.0, 1.5] {
        println!("lambda(i{y}) = {:.6}", density_omega(&model, Complex::new(0.0, y))?);
    }

    let w2 = Complex::new(-10.0, 0.0);
    let b = distance_lemma_bounds(&model, origin, w2, &default_path(&model, origin, w2))?;
    println!("distance lemma: {:.6} <= k = {:.6} <= {:.6}", b.lower, b.k, b.upper);

    let orbit = backward_orbit(&model, origin, 100.0, 0.5)?;
    for t in [10.0, 50.0, 100.0] {
        let l = hyp_length(&model, &orbit, 0.0, t)?.value;
        let k = k_omega(&model, origin, orbit.omega_at(t))?;
        println!("t={t:>5}: l = {l:.9}, k = {k:.9}");
    }
    Ok(())
}
