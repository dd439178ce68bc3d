//! Quasi-geodesic certificates: the two-slit orbit against the explicit
//! constants, and the tangential half-plane orbit.

use std::f64::consts::PI;

use koenigs_lab::certify::{certify, default_pair_grid, minimal_b, paper_constants};
use koenigs_lab::semigroup::backward_orbit;
use koenigs_lab::{build_model, Complex, ModelSpec};

fn main() -> koenigs_lab::Result<()> {
    let z0 = Complex::new(0.0, 0.0);

    let model = build_model(&ModelSpec::TwoSlit { x0: -1.0, halfgap: PI })?;
    let orbit = backward_orbit(&model, z0, 200.0, 0.5)?;
    let cert = certify(&model, &orbit, &default_pair_grid(200.0))?;
    let (a, b) = cert.constants();
    println!("twoslit: {} A = {a:.4} B = {b:.6}, residual {:.2e}", cert.verdict.name(), cert.max_residual);
    let pc = paper_constants(&model, &orbit)?;
    println!(
        "  explicit: eps = {:.4}, c = {:.4}, d = {:.4}, t0 = {}, A = {:.4}, B = {:.6}, residual {:.3}",
        pc.epsilon,
        pc.c,
        pc.d,
        pc.t0,
        pc.a,
        pc.b,
        pc.validate(&cert.pairs)
    );

    let model = build_model(&ModelSpec::HalfPlane { a: -1.0 })?;
    let orbit = backward_orbit(&model, z0, 1000.0, 0.5)?;
    let cert = certify(&model, &orbit, &default_pair_grid(1000.0))?;
    println!("halfplane: {}", cert.verdict.name());
    for a in [1.0, 10.0, 100.0] {
        println!("  B(A={a}) = {:.3}", minimal_b(&cert.pairs, a));
    }
    Ok(())
}
