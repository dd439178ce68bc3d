//! The semigroup `φ_t = h⁻¹(h + t)`: forward trajectories, backward orbits,
//! the infinitesimal generator, hyperbolic step, spectral values and the
//! Lipschitz bound along backward orbits.
//!
//! Orbit samples carry the strip coordinate `ξ` of every point. Far along an
//! orbit the disk point rounds onto the unit circle, while `ξ` and the
//! offsets to the fixed points computed from it stay exact.

use serde::Serialize;

use crate::domain::{FixedPoint, FixedPointKind, KoenigsModel};
use crate::error::{Error, Result};
use crate::metric::k_strip;
use crate::Complex;

/// Distance below which an orbit end is said to land at a fixed point.
pub const LANDING_RADIUS: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    /// `+1` for forward trajectories (`h + t`), `-1` for backward orbits.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

/// A sampled trajectory `φ_t(z0)` or backward orbit `γ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSample {
    pub direction: Direction,
    pub z0: Complex,
    pub w0: Complex,
    pub times: Vec<f64>,
    pub disk_points: Vec<Complex>,
    pub omega_points: Vec<Complex>,
    /// Strip coordinates; authoritative where disk points have rounded.
    pub chart_points: Vec<Complex>,
    pub level: f64,
    pub landing: Option<Complex>,
}

impl OrbitSample {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_max(&self) -> f64 {
        *self.times.last().unwrap_or(&0.0)
    }

    /// `h(z0) ± t`.
    pub fn omega_at(&self, t: f64) -> Complex {
        self.w0 + self.direction.sign() * t
    }

    /// CSV with columns `t,re_z,im_z,re_w,im_w`, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,re_z,im_z,re_w,im_w\n");
        for k in 0..self.len() {
            let (z, w) = (self.disk_points[k], self.omega_points[k]);
            let row = [self.times[k], z.re, z.im, w.re, w.im].map(crate::report::fmt_sig12);
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// `φ_t(z)`.
pub fn phi(model: &KoenigsModel, t: f64, z: Complex) -> Result<Complex> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("time must be non-negative, got {t}")));
    }
    let w = model.h_eval(z)?;
    if t == 0.0 {
        return Ok(z);
    }
    Ok(model.disk_of_chart(model.chart_of_omega(w + t)?))
}

/// `φ_t` acting on strip coordinates.
pub fn phi_chart(model: &KoenigsModel, t: f64, xi: Complex) -> Result<Complex> {
    if t == 0.0 {
        return Ok(xi);
    }
    model.chart_of_omega(model.omega_of_chart(xi) + t)
}

/// `0, dt, 2dt, …` up to and including `t_max`.
pub fn time_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && dt > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("need t_max > 0 and dt > 0, got {t_max}, {dt}")));
    }
    let n = (t_max / dt - 1e-9).ceil().max(1.0) as usize;
    let mut times: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
    times.push(t_max);
    Ok(times)
}

fn sample(model: &KoenigsModel, z0: Complex, times: Vec<f64>, direction: Direction) -> Result<OrbitSample> {
    let w0 = model.h_eval(z0)?;
    let sign = direction.sign();
    let mut chart_points = Vec::with_capacity(times.len());
    for &t in &times {
        chart_points.push(if t == 0.0 { model.chart_of_disk(z0)? } else { model.chart_of_omega(w0 + sign * t)? });
    }
    let disk_points = chart_points
        .iter()
        .zip(&times)
        .map(|(xi, &t)| if t == 0.0 { z0 } else { model.disk_of_chart(*xi) })
        .collect();
    let omega_points = times.iter().map(|&t| w0 + sign * t).collect();
    let mut orbit = OrbitSample {
        direction,
        z0,
        w0,
        times,
        disk_points,
        omega_points,
        chart_points,
        level: w0.im,
        landing: None,
    };
    orbit.landing = detect_landing(model, &orbit);
    Ok(orbit)
}

fn detect_landing(model: &KoenigsModel, orbit: &OrbitSample) -> Option<Complex> {
    let n = orbit.len();
    let last = *orbit.chart_points.last()?;
    let candidates: Vec<&FixedPoint> = match orbit.direction {
        Direction::Forward => model.fixed_points.iter().filter(|f| f.kind == FixedPointKind::DenjoyWolff).collect(),
        Direction::Backward => model.fixed_points.iter().collect(),
    };
    for fp in candidates {
        if model.offset_from_fixed_point(last, fp).norm() >= LANDING_RADIUS {
            continue;
        }
        let dists: Vec<f64> = orbit.chart_points[n.saturating_sub(10)..]
            .iter()
            .map(|xi| model.offset_from_fixed_point(*xi, fp).norm())
            .collect();
        if dists.windows(2).all(|d| d[1] <= d[0] * (1.0 + 1e-12)) {
            return Some(fp.point);
        }
    }
    None
}

pub fn forward_trajectory(model: &KoenigsModel, z0: Complex, t_max: f64, dt: f64) -> Result<OrbitSample> {
    sample(model, z0, time_grid(t_max, dt)?, Direction::Forward)
}

/// `γ(t) = h⁻¹(h(z0) - t)` for `t ∈ [0, t_max]`.
pub fn backward_orbit(model: &KoenigsModel, z0: Complex, t_max: f64, dt: f64) -> Result<OrbitSample> {
    let times = time_grid(t_max, dt)?;
    let w0 = model.h_eval(z0)?;
    if let Some(t_star) = model.backward_exit_time(w0) {
        if t_star <= t_max {
            return Err(Error::BackwardTimeExceeded { t_star });
        }
    }
    sample(model, z0, times, Direction::Backward)
}

/// Backward orbit sampled at arbitrary times (sorted, starting at 0).
pub fn backward_orbit_at(model: &KoenigsModel, z0: Complex, times: &[f64]) -> Result<OrbitSample> {
    if times.first() != Some(&0.0) || times.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidArgument("times must increase strictly from 0".into()));
    }
    let w0 = model.h_eval(z0)?;
    if let Some(t_star) = model.backward_exit_time(w0) {
        if t_star <= *times.last().unwrap() {
            return Err(Error::BackwardTimeExceeded { t_star });
        }
    }
    sample(model, z0, times.to_vec(), Direction::Backward)
}

/// Max of `|φ_s(γ(tᵢ)) - γ(tⱼ)|` with `s = tᵢ - tⱼ` over about `samples`
/// grid pairs, always including `s = 0` and `s = tᵢ`.
///
/// `φ_s` is applied to the strip coordinate of `γ(tᵢ)`: near a repelling
/// point `φ_s` expands by `e^{-μs}`, which a rounded disk point cannot absorb.
pub fn backward_orbit_identity_check(model: &KoenigsModel, orbit: &OrbitSample, samples: usize) -> Result<f64> {
    if orbit.direction != Direction::Backward {
        return Err(Error::InvalidArgument("identity check needs a backward orbit".into()));
    }
    let n = orbit.len();
    let mut pairs = Vec::with_capacity(samples + 2);
    pairs.push((n - 1, n - 1));
    pairs.push((n - 1, 0));
    for k in 0..samples {
        let i = if samples > 1 { k * (n - 1) / (samples - 1) } else { n - 1 };
        let j = (k.wrapping_mul(7919) + 13) % (i + 1);
        pairs.push((i, j));
    }
    let mut worst = 0.0f64;
    for (i, j) in pairs {
        let s = orbit.times[i] - orbit.times[j];
        let image = model.disk_of_chart(phi_chart(model, s, orbit.chart_points[i])?);
        worst = worst.max((image - orbit.disk_points[j]).norm());
    }
    Ok(worst)
}

/// Infinitesimal generator `G = 1/h'`.
pub fn generator(model: &KoenigsModel, z: Complex) -> Result<Complex> {
    Ok(1.0 / model.h_deriv(z)?)
}

/// `|(φ_{t+ε}(z) - φ_t(z))/ε - G(φ_t(z))|`.
pub fn generator_ode_residual(model: &KoenigsModel, z: Complex, t: f64, eps: f64) -> Result<f64> {
    let a = phi(model, t, z)?;
    let b = phi(model, t + eps, z)?;
    Ok(((b - a) / eps - generator(model, a)?).norm())
}

/// `|G|` along an orbit, from strip coordinates.
pub fn generator_along(model: &KoenigsModel, orbit: &OrbitSample) -> Vec<f64> {
    orbit.chart_points.iter().map(|xi| model.generator_at_chart(*xi).norm()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepReport {
    pub tail_times: Vec<f64>,
    pub tail_values: Vec<f64>,
    /// Window maximum of the tail values; `+∞` when a step diverges.
    pub v: f64,
    pub regular: bool,
    /// Tail values within 10% of each other.
    pub flat: bool,
}

/// Threshold separating regular from non-regular hyperbolic steps.
pub const STEP_THRESHOLD: f64 = 1e3;

/// `k_𝔻(γ(t), γ(t+1))` for grid times `t ∈ [tail_start, t_max - 1]`.
pub fn hyperbolic_step(model: &KoenigsModel, orbit: &OrbitSample, tail_start: f64) -> Result<StepReport> {
    let t_max = orbit.t_max();
    if t_max - 1.0 - tail_start < 10.0 {
        return Err(Error::OutOfRange(format!(
            "tail window [{tail_start}, {}] shorter than 10",
            t_max - 1.0
        )));
    }
    let sign = orbit.direction.sign();
    let mut tail_times = Vec::new();
    let mut tail_values = Vec::new();
    for (k, &t) in orbit.times.iter().enumerate() {
        if t < tail_start || t > t_max - 1.0 {
            continue;
        }
        let next = model.chart_of_omega(orbit.w0 + sign * (t + 1.0))?;
        tail_times.push(t);
        tail_values.push(k_strip(orbit.chart_points[k], next));
    }
    let v = tail_values.iter().copied().fold(0.0, f64::max);
    let lo = tail_values.iter().copied().fold(f64::INFINITY, f64::min);
    let v = if v.is_finite() { v } else { f64::INFINITY };
    Ok(StepReport {
        tail_times,
        tail_values,
        v,
        regular: v < STEP_THRESHOLD,
        flat: v - lo <= 0.1 * v,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralValue {
    /// `(t, -ln(φ_t'(σ))/t)` from extrapolated radial quotients.
    pub per_time: Vec<(f64, f64)>,
    /// Mean of the per-time estimates.
    pub mu: f64,
    /// `-π/amplitude` of the maximal strip.
    pub mu_amplitude: Option<f64>,
}

pub const SPECTRAL_TIMES: [f64; 3] = [0.5, 1.0, 2.0];
const SPECTRAL_RADII: [f64; 3] = [0.9, 0.99, 0.999];

/// Repelling spectral value at `sigma` from radial difference quotients of
/// `φ_t`, Richardson-extrapolated in `1 - r`.
pub fn spectral_value(model: &KoenigsModel, sigma: Complex) -> Result<SpectralValue> {
    let fp = match model.fixed_point_at(sigma) {
        Some(fp) if fp.is_repelling() => *fp,
        _ => return Err(Error::NotRepelling),
    };
    let mut per_time = Vec::with_capacity(SPECTRAL_TIMES.len());
    for t in SPECTRAL_TIMES {
        let mut q = [0.0; 3];
        for (qi, r) in q.iter_mut().zip(SPECTRAL_RADII) {
            let z = r * fp.point;
            let w = model.h_eval(z)? + t;
            let offset = model.offset_from_fixed_point(model.chart_of_omega(w)?, &fp);
            *qi = (offset / ((r - 1.0) * fp.point)).re;
        }
        let r1 = (10.0 * q[1] - q[0]) / 9.0;
        let r2 = (10.0 * q[2] - q[1]) / 9.0;
        let deriv = (100.0 * r2 - r1) / 99.0;
        per_time.push((t, -deriv.ln() / t));
    }
    let mu = per_time.iter().map(|p| p.1).sum::<f64>() / per_time.len() as f64;
    let mu_amplitude = model.maximal_strip.map(|s| -std::f64::consts::PI / s.amplitude());
    Ok(SpectralValue { per_time, mu, mu_amplitude })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LipschitzReport {
    pub c: f64,
    pub max_violation: f64,
}

/// Sup of `|G|` along the orbit and the worst violation of
/// `|γ(t₂) - γ(t₁)| ≤ C |t₂ - t₁|` over all sample pairs.
pub fn lipschitz_check(model: &KoenigsModel, orbit: &OrbitSample, stolz_opening: f64) -> Result<LipschitzReport> {
    if orbit.direction != Direction::Backward {
        return Err(Error::InvalidArgument("Lipschitz check needs a backward orbit".into()));
    }
    let fp = match orbit.landing.and_then(|s| model.fixed_point_at(s)) {
        Some(fp) if fp.is_repelling() => *fp,
        _ => return Err(Error::NotRepelling),
    };
    let offsets: Vec<Complex> = orbit.chart_points.iter().map(|xi| model.offset_from_fixed_point(*xi, &fp)).collect();
    for (k, xi) in orbit.chart_points.iter().enumerate() {
        let (q, s) = model.offset_from_fixed_point_scaled(*xi, &fp);
        if q.norm().ln() + s > stolz_opening.ln() + model.ln_one_minus_abs(*xi) {
            return Err(Error::OrbitLeavesStolz { t: orbit.times[k] });
        }
    }

    let sign = orbit.direction.sign();
    let mut c = generator_along(model, orbit).into_iter().fold(0.0, f64::max);
    for p in orbit.times.windows(2) {
        let mid = model.chart_of_omega(orbit.w0 + sign * 0.5 * (p[0] + p[1]))?;
        c = c.max(model.generator_at_chart(mid).norm());
    }

    let mut max_violation = f64::NEG_INFINITY;
    for i in 0..orbit.len() {
        for j in i..orbit.len() {
            let d = (offsets[j] - offsets[i]).norm();
            max_violation = max_violation.max(d - c * (orbit.times[j] - orbit.times[i]));
        }
    }
    Ok(LipschitzReport { c, max_violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_model, ModelSpec};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn strip() -> KoenigsModel {
        build_model(&ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 }).unwrap()
    }

    fn halfplane() -> KoenigsModel {
        build_model(&ModelSpec::HalfPlane { a: -1.0 }).unwrap()
    }

    fn twoslit() -> KoenigsModel {
        build_model(&ModelSpec::TwoSlit { x0: -1.0, halfgap: PI }).unwrap()
    }

    #[test]
    fn phi_examples() {
        let z = c(0.3, -0.2);
        assert_eq!(phi(&twoslit(), 0.0, z).unwrap(), z);
        assert!((phi(&strip(), 2.0, c(0.0, 0.0)).unwrap() - c(1f64.tanh(), 0.0)).norm() < 1e-15);
        assert!((phi(&halfplane(), 2.0, c(0.0, 0.0)).unwrap() - c(-0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn grid_ends_at_t_max() {
        assert_eq!(time_grid(1.0, 0.25).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(time_grid(1.0, 0.3).unwrap().last(), Some(&1.0));
        assert!(time_grid(0.0, 0.1).is_err());
    }

    #[test]
    fn forward_examples() {
        let o = forward_trajectory(&strip(), c(0.0, 0.0), 50.0, 0.5).unwrap();
        assert!(o.disk_points.windows(2).all(|p| p[1].re >= p[0].re));
        assert_eq!(o.landing, Some(c(1.0, 0.0)));
        let h = forward_trajectory(&halfplane(), c(0.0, 0.0), 200.0, 1.0).unwrap();
        assert_eq!(h.landing, Some(c(-1.0, 0.0)));
        for (k, t) in h.times.iter().enumerate() {
            assert!((h.omega_points[k] - h.omega_points[0] - t).norm() < 1e-10);
        }
    }

    #[test]
    fn backward_examples() {
        let o = backward_orbit(&strip(), c(0.0, 0.0), 20.0, 0.5).unwrap();
        for (k, t) in o.times.iter().enumerate() {
            assert!((o.disk_points[k] + (0.5 * t).tanh()).norm() < 1e-15);
        }
        assert_eq!(o.landing, Some(c(-1.0, 0.0)));

        let ts = backward_orbit(&twoslit(), c(0.0, 0.0), 200.0, 0.5).unwrap();
        assert!(ts.disk_points.iter().all(|z| z.im.abs() < 1e-15));
        assert_eq!(ts.landing, Some(c(-1.0, 0.0)));
    }

    #[test]
    fn backward_time_exceeded_at_slit() {
        let slit = build_model(&ModelSpec::SlitPlane { x0: -1.0, y0: 0.0 }).unwrap();
        // translated so that h(z0) = 0 lies on the slit's line
        let z0 = slit.h_inverse(c(0.0, 0.0)).unwrap();
        match backward_orbit(&slit, z0, 10.0, 0.5) {
            Err(Error::BackwardTimeExceeded { t_star }) => assert_eq!(t_star, 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_residual_on_long_orbits() {
        for m in [strip(), twoslit(), halfplane()] {
            let o = backward_orbit(&m, c(0.1, 0.05), 200.0, 0.5).unwrap();
            let r = backward_orbit_identity_check(&m, &o, 200).unwrap();
            assert!(r <= 1e-9, "{:?} {r:e}", m.spec());
        }
    }

    #[test]
    fn generator_examples() {
        assert!((generator(&strip(), c(0.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let m = twoslit();
        let g: Vec<f64> = [0.9, 0.99, 0.999].iter().map(|r| generator(&m, c(-r, 0.0)).unwrap().norm()).collect();
        assert!(g[0] > g[1] && g[1] > g[2] && g[2] < 1e-2);
        assert!(generator_ode_residual(&m, c(0.2, 0.4), 1.5, 1e-6).unwrap() < 1e-5);
    }

    #[test]
    fn steps() {
        let o = backward_orbit(&strip(), c(0.0, 0.0), 60.0, 1.0).unwrap();
        let s = hyperbolic_step(&strip(), &o, 20.0).unwrap();
        assert!(s.tail_values.iter().all(|v| (v - 0.5).abs() < 1e-12));
        assert!(s.regular && s.flat);

        let h = backward_orbit(&halfplane(), c(0.0, 0.0), 60.0, 1.0).unwrap();
        let s = hyperbolic_step(&halfplane(), &h, 20.0).unwrap();
        assert!(s.v <= 0.5 && s.regular);
    }

    #[test]
    fn spectral_examples() {
        let s = spectral_value(&strip(), c(-1.0, 0.0)).unwrap();
        assert!((s.mu + 1.0).abs() < 1e-3, "{s:?}");
        let t = spectral_value(&twoslit(), c(-1.0, 0.0)).unwrap();
        assert!((t.mu + 0.5).abs() < 5e-4, "{t:?}");
        assert_eq!(t.mu_amplitude, Some(-0.5));
        assert!(matches!(spectral_value(&strip(), c(1.0, 0.0)), Err(Error::NotRepelling)));
    }

    #[test]
    fn lipschitz_on_petal_orbits() {
        for m in [strip(), twoslit()] {
            let o = backward_orbit(&m, c(0.0, 0.0), 100.0, 0.5).unwrap();
            let r = lipschitz_check(&m, &o, 10.0).unwrap();
            assert!(r.max_violation <= 1e-9 && r.c > 0.0, "{r:?}");
        }
        let h = backward_orbit(&halfplane(), c(0.0, 0.0), 50.0, 0.5).unwrap();
        assert!(matches!(lipschitz_check(&halfplane(), &h, 10.0), Err(Error::NotRepelling)));
    }
}
