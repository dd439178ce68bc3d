//! Harmonic measure of circular arcs in the unit disk.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breaks, MAX_SUBDIVISIONS};
use crate::Complex;

/// Absolute tolerance of the Poisson-kernel quadrature.
pub const HARMONIC_TOL: f64 = 1e-10;

/// Counterclockwise arc from `e^{iα}` to `e^{iβ}`, `α ∈ [0, 2π)`,
/// `0 < β - α < 2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub alpha: f64,
    pub beta: f64,
}

impl Arc {
    pub fn new(alpha: f64, beta: f64) -> Result<Arc> {
        let len = beta - alpha;
        if !(len > 0.0 && len < TAU) {
            return Err(Error::OutOfRange(format!("arc length {len} not in (0, 2π)")));
        }
        let a = alpha.rem_euclid(TAU);
        Ok(Arc { alpha: a, beta: a + len })
    }

    /// Counterclockwise arc from `p` to `q` on the unit circle.
    pub fn between(p: Complex, q: Complex) -> Result<Arc> {
        let alpha = p.arg().rem_euclid(TAU);
        let mut len = (q.arg() - p.arg()).rem_euclid(TAU);
        if len == 0.0 {
            len = TAU;
        }
        Arc::new(alpha, alpha + len)
    }

    /// Arc of half-width `half` centered at angle `center`.
    pub fn centered(center: f64, half: f64) -> Result<Arc> {
        Arc::new(center - half, center + half)
    }

    pub fn length(&self) -> f64 {
        self.beta - self.alpha
    }

    pub fn start(&self) -> Complex {
        Complex::from_polar(1.0, self.alpha)
    }

    pub fn end(&self) -> Complex {
        Complex::from_polar(1.0, self.beta)
    }

    pub fn complement(&self) -> Arc {
        Arc { alpha: self.beta.rem_euclid(TAU), beta: self.beta.rem_euclid(TAU) + TAU - self.length() }
    }

    /// Whether the angle `theta` lies on the closed arc.
    pub fn contains_angle(&self, theta: f64) -> bool {
        (theta - self.alpha).rem_euclid(TAU) <= self.length()
    }
}

fn check_disk(z: Complex) -> Result<()> {
    if z.norm_sqr() < 1.0 {
        Ok(())
    } else {
        Err(Error::outside_disk(z))
    }
}

/// `ω(z, arc, 𝔻)` by adaptive quadrature of the Poisson kernel.
pub fn harmonic_measure_arc(z: Complex, arc: &Arc) -> Result<f64> {
    check_disk(z)?;
    let gap = 1.0 - z.norm_sqr();
    let mut breaks = vec![arc.alpha, arc.beta];
    if z.norm() > 0.0 {
        let peak = arc.alpha + (z.arg() - arc.alpha).rem_euclid(TAU);
        if peak > arc.alpha && peak < arc.beta {
            breaks.insert(1, peak);
        }
    }
    let r = integrate_with_breaks(
        |t| gap / (Complex::from_polar(1.0, t) - z).norm_sqr() / TAU,
        &breaks,
        HARMONIC_TOL,
        MAX_SUBDIVISIONS,
    )?;
    Ok(r.value)
}

/// Counterclockwise angle from `u` to `v`, in `[0, 2π)`.
fn ccw_angle(u: Complex, v: Complex) -> f64 {
    let q = v * u.conj();
    q.im.atan2(q.re).rem_euclid(TAU)
}

/// `ω(z, arc)` in closed form: `θ/π - (β-α)/(2π)` where `θ` is the angle
/// the arc subtends at `z`. `to_start` and `to_end` are `e^{iα} - z` and
/// `e^{iβ} - z`, supplied by callers that know them more accurately than
/// the subtraction.
pub fn arc_measure_from_offsets(arc: &Arc, to_start: Complex, to_end: Complex) -> f64 {
    let theta = ccw_angle(to_start, to_end);
    (theta / PI - arc.length() / TAU).clamp(0.0, 1.0)
}

/// Closed-form `ω(z, arc)`.
pub fn arc_measure_closed_form(z: Complex, arc: &Arc) -> Result<f64> {
    check_disk(z)?;
    Ok(arc_measure_from_offsets(arc, arc.start() - z, arc.end() - z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NtVerdict {
    NonTangential,
    TangentialSuspect,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NtCriterion {
    pub liminf: f64,
    pub limsup: f64,
    pub verdict: NtVerdict,
}

/// Margin `η` of the harmonic-measure criterion.
pub const NT_ETA: f64 = 0.01;

/// Tail range of `ω(z_n, arc)` for a sequence converging to an endpoint of
/// the arc: non-tangential iff the tail stays inside `[η, 1-η]`.
pub fn nt_criterion(points: &[Complex], arc: &Arc) -> Result<NtCriterion> {
    let last = *points.last().ok_or(Error::NotConvergent)?;
    let endpoint = if (last - arc.start()).norm() <= (last - arc.end()).norm() { arc.start() } else { arc.end() };
    let tail = &points[points.len() / 2..];
    let dists: Vec<f64> = tail.iter().map(|p| (p - endpoint).norm()).collect();
    if tail.len() < 2 || !dists.windows(2).all(|d| d[1] <= d[0]) || dists[dists.len() - 1] >= dists[0] {
        return Err(Error::NotConvergent);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in tail {
        let w = arc_measure_closed_form(*p, arc)?;
        lo = lo.min(w);
        hi = hi.max(w);
    }
    let verdict = if lo >= NT_ETA && hi <= 1.0 - NT_ETA { NtVerdict::NonTangential } else { NtVerdict::TangentialSuspect };
    Ok(NtCriterion { liminf: lo, limsup: hi, verdict })
}
