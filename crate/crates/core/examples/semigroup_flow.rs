//! Forward trajectory and backward orbit of the two-slit model, with the
//! semigroup law and the backward-orbit identity.

use std::f64::consts::PI;

use koenigs_lab::semigroup::{backward_orbit, backward_orbit_identity_check, forward_trajectory, generator, phi};
use koenigs_lab::{build_model, Complex, ModelSpec};

fn main() -> koenigs_lab::Result<()> {
    let model = build_model(&ModelSpec::TwoSlit { x0: -1.0, halfgap: PI })?;
    let z = Complex::new(0.3, 0.2);
    let law = (phi(&model, 3.0, z)? - phi(&model, 1.0, phi(&model, 2.0, z)?)?).norm();
    println!("tau = {}, |φ_3(z) - φ_1(φ_2(z))| = {law:.2e}", model.tau);

    let forward = forward_trajectory(&model, z, 20.0, 5.0)?;
    for (t, p) in forward.times.iter().zip(&forward.disk_points) {
        println!("forward  t={t:>5} z={p:.6}");
    }

    let orbit = backward_orbit(&model, Complex::new(0.0, 0.0), 20.0, 5.0)?;
    for (t, p) in orbit.times.iter().zip(&orbit.disk_points) {
        println!("backward t={t:>5} z={p:.6} |G|={:.3e}", generator(&model, *p)?.norm());
    }
    println!("lands at {:?}", orbit.landing);
    println!("identity residual {:.2e}", backward_orbit_identity_check(&model, &orbit, 40)?);
    Ok(())
}
