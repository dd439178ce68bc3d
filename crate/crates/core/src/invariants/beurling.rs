//! Harmonic measure against extremal distance: the product `ω·e^{πλ}`.

use std::f64::consts::PI;

use serde::Serialize;

use super::extremal::{extremal_distance_fd, FdSolution, GridDomain, NodeKind};
use super::harmonic::{harmonic_measure_arc, Arc};
use crate::error::{Error, Result};
use crate::report::fmt_sig12;
use crate::Complex;

/// Grid intervals per side used by the suite.
pub const SUITE_GRID: usize = 256;
/// Ceiling asserted on every product of the suite.
pub const PRODUCT_BOUND: f64 = 30.0;
/// Relative slack allowed in the monotonicity checks.
pub const MONOTONE_SLACK: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeurlingSample {
    pub z: Complex,
    pub arc: Arc,
    pub omega: f64,
    pub lambda: f64,
    pub product: f64,
}

const PATH_TOL: f64 = 1e-12;

fn check_path(z: Complex, arc: &Arc, path: &[Complex]) -> Result<()> {
    let (first, last) = match (path.first(), path.last()) {
        (Some(f), Some(l)) if path.len() >= 2 => (*f, *l),
        _ => return Err(Error::InvalidArgument("joining path needs at least two points".into())),
    };
    if (first - z).norm() > PATH_TOL {
        return Err(Error::InvalidArgument("joining path must start at z".into()));
    }
    if path.iter().any(|p| p.norm() > 1.0 + PATH_TOL) || (last.norm() - 1.0).abs() > PATH_TOL {
        return Err(Error::InvalidArgument("joining path must stay in the closed disk and end on the circle".into()));
    }
    if arc.contains_angle(last.arg().rem_euclid(std::f64::consts::TAU)) {
        return Err(Error::PathTouchesArc);
    }
    Ok(())
}

/// Unit disk on `[-1, 1]²`: nodes outside the open disk are `F` when their
/// angle lies on the arc and outside otherwise; the path is rasterized as `E`.
pub fn beurling_domain(arc: &Arc, path: &[Complex], n: usize) -> Result<GridDomain> {
    let h = 2.0 / n as f64;
    let mut d = GridDomain::from_fn(n + 1, n + 1, Complex::new(-1.0, -1.0), h, |p| {
        if p.norm() < 1.0 {
            NodeKind::Free
        } else if arc.contains_angle(p.arg().rem_euclid(std::f64::consts::TAU)) {
            NodeKind::F
        } else {
            NodeKind::Outside
        }
    });
    if !d.mark_polyline(path, NodeKind::E).is_empty() {
        return Err(Error::PathTouchesArc);
    }
    Ok(d)
}

/// `ω(z, arc)`, the grid extremal distance between the path and the arc, and
/// `ω·e^{πλ}`.
pub fn beurling_gap(z: Complex, arc: &Arc, path: &[Complex], n: usize) -> Result<BeurlingSample> {
    check_path(z, arc, path)?;
    let omega = harmonic_measure_arc(z, arc)?;
    let FdSolution { lambda, .. } = extremal_distance_fd(&beurling_domain(arc, path, n)?)?;
    Ok(BeurlingSample { z, arc: *arc, omega, lambda, product: omega * (PI * lambda).exp() })
}

/// Starting points of the suite, each joined radially to `1`.
pub const SUITE_POINTS: [f64; 3] = [0.0, 0.5, 0.9];
/// Half-widths of the arcs centered at `-1`, widest first.
pub const SUITE_HALF_WIDTHS: [f64; 7] = [PI / 2.0, PI / 3.0, PI / 4.0, PI / 6.0, PI / 8.0, PI / 12.0, PI / 16.0];

/// Runs every combination of [`SUITE_POINTS`] and [`SUITE_HALF_WIDTHS`].
pub fn beurling_suite(n: usize) -> Result<Vec<BeurlingSample>> {
    let mut out = Vec::with_capacity(SUITE_POINTS.len() * SUITE_HALF_WIDTHS.len());
    for x in SUITE_POINTS {
        let z = Complex::new(x, 0.0);
        let path = [z, Complex::new(1.0, 0.0)];
        for half in SUITE_HALF_WIDTHS {
            out.push(beurling_gap(z, &Arc::centered(PI, half)?, &path, n)?);
        }
    }
    Ok(out)
}

/// Within each family sharing `z`, ordered by decreasing arc length: `ω`
/// must not increase and `λ` must not decrease, up to [`MONOTONE_SLACK`].
pub fn suite_monotone(samples: &[BeurlingSample]) -> bool {
    let mut families: Vec<Vec<&BeurlingSample>> = Vec::new();
    for s in samples {
        match families.iter_mut().find(|f| f[0].z == s.z) {
            Some(f) => f.push(s),
            None => families.push(vec![s]),
        }
    }
    families.into_iter().all(|mut f| {
        f.sort_by(|a, b| b.arc.length().total_cmp(&a.arc.length()));
        f.windows(2).all(|p| {
            p[1].omega <= p[0].omega * (1.0 + 1e-9) && p[1].lambda >= p[0].lambda * (1.0 - MONOTONE_SLACK)
        })
    })
}

/// CSV `omega,lambda,product`.
pub fn beurling_csv(samples: &[BeurlingSample]) -> String {
    let mut out = String::from("omega,lambda,product\n");
    for s in samples {
        out.push_str(&format!("{},{},{}\n", fmt_sig12(s.omega), fmt_sig12(s.lambda), fmt_sig12(s.product)));
    }
    out
}
