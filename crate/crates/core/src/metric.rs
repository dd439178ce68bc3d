//! Hyperbolic density, distance and length in the disk and in Koenigs
//! domains, with the density convention `λ_𝔻(z) = 1/(1-|z|²)`.
//!
//! Distances in `Ω` are computed in the strip coordinate of the model chart,
//! where the metric has the closed form
//! `sinh k_S(ξ₁, ξ₂) = |sinh((ξ₁-ξ₂)/2)| / √(cos y₁ cos y₂)`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::domain::{BoundaryPiece, KoenigsModel};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_with_breaks, QuadResult, MAX_SUBDIVISIONS};
use crate::semigroup::OrbitSample;
use crate::Complex;

/// Absolute tolerance of all length quadratures.
pub const LENGTH_TOL: f64 = 1e-8;

pub fn density_disk(z: Complex) -> Result<f64> {
    let r2 = z.norm_sqr();
    if !(r2 < 1.0) {
        return Err(Error::outside_disk(z));
    }
    Ok(1.0 / (1.0 - r2))
}

/// `k_𝔻(z, w) = artanh |(z-w)/(1-z̄w)|`.
pub fn k_disk(z: Complex, w: Complex) -> Result<f64> {
    let (nz, nw) = (z.norm_sqr(), w.norm_sqr());
    if !(nz < 1.0) {
        return Err(Error::outside_disk(z));
    }
    if !(nw < 1.0) {
        return Err(Error::outside_disk(w));
    }
    let num = (z - w).norm();
    let den = (1.0 - z.conj() * w).norm();
    let rho = num / den;
    if rho < 0.5 {
        return Ok(rho.atanh());
    }
    // artanh ρ = ln((|1-z̄w| + |z-w|) / √((1-|z|²)(1-|w|²)))
    Ok(((den + num) / ((1.0 - nz) * (1.0 - nw)).sqrt()).ln())
}

/// `ln |sinh(x + iy)|`, finite for any `x`.
fn ln_abs_sinh(u: Complex) -> f64 {
    let ax = u.re.abs();
    if ax < 300.0 {
        return u.sinh().norm().ln();
    }
    let e = (-2.0 * ax).exp();
    ax - LN_2 + 0.5 * (1.0 - 2.0 * e * (2.0 * u.im).cos() + e * e).ln()
}

/// Hyperbolic distance in the standard strip `{|Im ξ| < π/2}`.
pub fn k_strip(xi1: Complex, xi2: Complex) -> f64 {
    let half = 0.5 * (xi1 - xi2);
    let c = xi1.im.cos() * xi2.im.cos();
    if half.re.abs() < 300.0 {
        let s = half.sinh().norm() / c.sqrt();
        return s.asinh();
    }
    // asinh(s) = ln(2s) up to rounding when s > 1e130
    let ln_s = ln_abs_sinh(half) - 0.5 * c.ln();
    ln_s + LN_2
}

/// Hyperbolic density of the standard strip.
pub fn density_strip(xi: Complex) -> f64 {
    0.5 / xi.im.cos()
}

pub fn density_omega(model: &KoenigsModel, w: Complex) -> Result<f64> {
    let xi = model.chart_of_omega(w)?;
    Ok(density_strip(xi) / model.chart_deriv(xi).norm())
}

pub fn k_omega(model: &KoenigsModel, w1: Complex, w2: Complex) -> Result<f64> {
    if w1 == w2 {
        if !model.contains(w1) {
            return Err(Error::outside_domain(w1));
        }
        return Ok(0.0);
    }
    let xi1 = model.chart_of_omega(w1)?;
    let xi2 = model.chart_of_omega(w2)?;
    Ok(k_strip(xi1, xi2))
}

/// Hyperbolic length of an orbit between times `t1 ≤ t2`. The image
/// `h∘γ` is a unit-speed horizontal segment, so this integrates
/// `λ_Ω` along it.
pub fn hyp_length(model: &KoenigsModel, orbit: &OrbitSample, t1: f64, t2: f64) -> Result<QuadResult> {
    let span = orbit.t_max();
    if !(0.0 <= t1 && t1 <= t2 && t2 <= span) {
        return Err(Error::OutOfRange(format!("[{t1}, {t2}] is not inside [0, {span}]")));
    }
    orbit_length(model, orbit.w0, orbit.direction.sign(), t1, t2, LENGTH_TOL)
}

pub(crate) fn orbit_length(
    model: &KoenigsModel,
    w0: Complex,
    sign: f64,
    t1: f64,
    t2: f64,
    tol: f64,
) -> Result<QuadResult> {
    let mut failure = None;
    let res = integrate(
        |t| match density_omega(model, w0 + sign * t) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        t1,
        t2,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => res,
    }
}

/// Hyperbolic length of a polyline in `Ω`.
pub fn hyp_length_polyline(model: &KoenigsModel, path: &[Complex]) -> Result<QuadResult> {
    check_path(model, path)?;
    polyline_integral(path, LENGTH_TOL, |w| density_omega(model, w))
}

fn polyline_integral<F>(path: &[Complex], tol: f64, mut density: F) -> Result<QuadResult>
where
    F: FnMut(Complex) -> Result<f64>,
{
    let n_seg = path.len().saturating_sub(1).max(1) as f64;
    let mut total = QuadResult { value: 0.0, error: 0.0, intervals: 0 };
    let mut failure = None;
    for seg in path.windows(2) {
        let (p, q) = (seg[0], seg[1]);
        let len = (q - p).norm();
        if len == 0.0 {
            continue;
        }
        let r = integrate_with_breaks(
            |s| match density(p + (q - p) * s) {
                Ok(v) => v * len,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            &[0.0, 1.0],
            tol / n_seg,
            MAX_SUBDIVISIONS,
        );
        if let Some(e) = failure.take() {
            return Err(e);
        }
        let r = r?;
        total.value += r.value;
        total.error += r.error;
        total.intervals += r.intervals;
    }
    Ok(total)
}

fn check_path(model: &KoenigsModel, path: &[Complex]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::InvalidArgument("empty path".into()));
    }
    if path.iter().any(|w| !model.contains(*w)) {
        return Err(Error::PathLeavesDomain);
    }
    let boundary = model.boundary();
    for seg in path.windows(2) {
        if boundary.iter().any(|b| b.meets_segment(seg[0], seg[1])) {
            return Err(Error::PathLeavesDomain);
        }
    }
    Ok(())
}

/// A polyline from `w1` to `w2` inside `Ω`: the straight segment when it
/// stays inside, otherwise a detour to the right of every slit tip.
pub fn default_path(model: &KoenigsModel, w1: Complex, w2: Complex) -> Vec<Complex> {
    let boundary = model.boundary();
    if !boundary.iter().any(|b| b.meets_segment(w1, w2)) {
        return vec![w1, w2];
    }
    let tips = boundary.iter().filter_map(|b| match *b {
        BoundaryPiece::HalfLine { x_end, .. } => Some(x_end),
        BoundaryPiece::Line { .. } => None,
    });
    let x = tips.fold(w1.re.max(w2.re), f64::max) + 1.0;
    vec![w1, Complex::new(x, w1.im), Complex::new(x, w2.im), w2]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceBounds {
    pub lower: f64,
    pub k: f64,
    pub upper: f64,
}

/// Lower bound `¼ ln(1 + |w₁-w₂| / min δ)`, the distance `k_Ω`, and the
/// quasi-hyperbolic length `∫ |dw|/δ_Ω` of `path`.
pub fn distance_lemma_bounds(
    model: &KoenigsModel,
    w1: Complex,
    w2: Complex,
    path: &[Complex],
) -> Result<DistanceBounds> {
    check_path(model, path)?;
    if path[0] != w1 || path[path.len() - 1] != w2 {
        return Err(Error::InvalidArgument("path must run from w1 to w2".into()));
    }
    let d1 = model.boundary_distance(w1)?;
    let d2 = model.boundary_distance(w2)?;
    let lower = 0.25 * (1.0 + (w1 - w2).norm() / d1.min(d2)).ln();
    let k = k_omega(model, w1, w2)?;
    let region = model.region();
    let upper = polyline_integral(path, LENGTH_TOL, |w| Ok(1.0 / region.boundary_distance(w)))?.value;
    Ok(DistanceBounds { lower, k, upper })
}
