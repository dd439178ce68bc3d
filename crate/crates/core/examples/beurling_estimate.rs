//! Beurling product `ω·e^{πλ}` over radial paths and shrinking arcs at `-1`.

use koenigs_lab::invariants::beurling::{beurling_suite, suite_monotone, PRODUCT_BOUND, SUITE_GRID};

fn main() -> koenigs_lab::Result<()> {
    let samples = beurling_suite(SUITE_GRID)?;
    println!("{:>5} {:>8} {:>10} {:>10} {:>10}", "z", "arc", "omega", "lambda", "product");
    for s in &samples {
        println!("{:>5} {:>8.4} {:>10.6} {:>10.6} {:>10.4}", s.z.re, s.arc.length(), s.omega, s.lambda, s.product);
    }
    let worst = samples.iter().map(|s| s.product).fold(0.0, f64::max);
    println!("max product {worst:.4} (bound {PRODUCT_BOUND}), monotone {}", suite_monotone(&samples));
    Ok(())
}
