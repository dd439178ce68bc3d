//! Grötzsch ring: closed-form extremal distance against the grid solver.

use koenigs_lab::invariants::{extremal_distance_fd, extremal_distance_grotzsch, grotzsch_mu, GridDomain};

fn main() -> koenigs_lab::Result<()> {
    let n = 512;
    println!("{:>5} {:>12} {:>12} {:>12} {:>10} {:>6}", "r", "mu", "closed", "grid", "relerr", "iters");
    for r in [0.3, 0.5, 0.7] {
        let closed = extremal_distance_grotzsch(r)?;
        let fd = extremal_distance_fd(&GridDomain::grotzsch(r, n)?)?;
        let relerr = (fd.lambda - closed).abs() / closed;
        println!("{r:>5} {:>12.8} {closed:>12.8} {:>12.8} {relerr:>10.2e} {:>6}", grotzsch_mu(r)?, fd.lambda, fd.iterations);
    }
    Ok(())
}
