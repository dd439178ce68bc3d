//! Two-sided boundary distances along backward orbits.
//!
//! The horizontal line through an orbit image splits `∂Ω` into the parts
//! above (`∂Ω⁺`) and below (`∂Ω⁻`) it. Both parts are finite unions of lines
//! and half-lines, so `δ⁺` and `δ⁻` are exact.

use serde::Serialize;

use crate::domain::{BoundaryPiece, KoenigsModel};
use crate::error::{Error, Result};
use crate::report::fmt_sig12;
use crate::semigroup::OrbitSample;
use crate::Complex;

/// Ratios beyond `[1/DIVERGENCE, DIVERGENCE]` with a monotone tail diverge.
pub const DIVERGENCE: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundarySplit {
    pub level: f64,
    pub plus: Vec<BoundaryPiece>,
    pub minus: Vec<BoundaryPiece>,
}

/// Splits `∂Ω` relative to the line `Im w = level`.
pub fn split_boundary(model: &KoenigsModel, level: f64) -> Result<BoundarySplit> {
    let boundary = model.boundary();
    let far_left = boundary
        .iter()
        .filter_map(|b| match *b {
            BoundaryPiece::HalfLine { x_end, .. } => Some(x_end),
            BoundaryPiece::Line { .. } => None,
        })
        .fold(0.0, f64::min)
        - 1.0;
    if !level.is_finite() || !model.contains(Complex::new(far_left, level)) {
        return Err(Error::LevelNotInteriorLine { level });
    }
    let (plus, minus) = boundary.into_iter().partition(|b| b.y() > level);
    Ok(BoundarySplit { level, plus, minus })
}

fn distance_to(pieces: &[BoundaryPiece], w: Complex) -> f64 {
    pieces.iter().map(|b| b.distance(w)).fold(f64::INFINITY, f64::min)
}

/// `(δ⁺(w), δ⁻(w))`, `+∞` for an empty part.
pub fn delta_split(model: &KoenigsModel, w: Complex, level: f64) -> Result<(f64, f64)> {
    if !model.contains(w) {
        return Err(Error::outside_domain(w));
    }
    let split = split_boundary(model, level)?;
    Ok((distance_to(&split.plus, w), distance_to(&split.minus, w)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum RatioVerdict {
    Bounded { c: f64 },
    DivergesToInfinity,
    CollapsesToZero,
}

impl RatioVerdict {
    pub fn is_bounded(&self) -> bool {
        matches!(self, RatioVerdict::Bounded { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSeries {
    pub times: Vec<f64>,
    pub delta_plus: Vec<f64>,
    pub delta_minus: Vec<f64>,
    pub ratios: Vec<f64>,
    pub verdict: RatioVerdict,
}

impl RatioSeries {
    /// CSV `t,delta_plus,delta_minus,ratio` with `inf` for `+∞`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,delta_plus,delta_minus,ratio\n");
        for k in 0..self.times.len() {
            let row = [self.times[k], self.delta_plus[k], self.delta_minus[k], self.ratios[k]].map(fmt_sig12);
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Largest `|ratio - 1|` over samples with `t ≥ t_from`.
    pub fn tail_deviation(&self, t_from: f64) -> f64 {
        self.times
            .iter()
            .zip(&self.ratios)
            .filter(|(t, _)| **t >= t_from)
            .map(|(_, r)| (r - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn monotone(xs: &[f64], increasing: bool) -> bool {
    xs.windows(2).all(|p| if increasing { p[1] >= p[0] } else { p[1] <= p[0] })
}

/// `δ⁺/δ⁻` along the orbit image.
pub fn ratio_series(model: &KoenigsModel, orbit: &OrbitSample) -> Result<RatioSeries> {
    let split = split_boundary(model, orbit.level)?;
    let n = orbit.len();
    let mut delta_plus = Vec::with_capacity(n);
    let mut delta_minus = Vec::with_capacity(n);
    let mut ratios = Vec::with_capacity(n);
    for w in &orbit.omega_points {
        let (p, m) = (distance_to(&split.plus, *w), distance_to(&split.minus, *w));
        delta_plus.push(p);
        delta_minus.push(m);
        ratios.push(if p.is_infinite() && m.is_infinite() { 1.0 } else { p / m });
    }

    let verdict = if split.plus.is_empty() {
        RatioVerdict::DivergesToInfinity
    } else if split.minus.is_empty() {
        RatioVerdict::CollapsesToZero
    } else {
        let tail = &ratios[n / 2..];
        let last = *tail.last().unwrap_or(&1.0);
        if last > DIVERGENCE && monotone(tail, true) {
            RatioVerdict::DivergesToInfinity
        } else if last < 1.0 / DIVERGENCE && monotone(tail, false) {
            RatioVerdict::CollapsesToZero
        } else {
            let c = ratios.iter().map(|r| r.max(1.0 / r)).fold(1.0, f64::max);
            RatioVerdict::Bounded { c }
        }
    };
    Ok(RatioSeries { times: orbit.times.clone(), delta_plus, delta_minus, ratios, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_model, ModelSpec};
    use crate::semigroup::backward_orbit;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn twoslit() -> KoenigsModel {
        build_model(&ModelSpec::TwoSlit { x0: -1.0, halfgap: PI }).unwrap()
    }

    #[test]
    fn split_examples() {
        let s = build_model(&ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 }).unwrap();
        let sp = split_boundary(&s, 0.0).unwrap();
        assert_eq!(sp.plus, vec![BoundaryPiece::Line { y: PI / 2.0 }]);
        assert_eq!(sp.minus, vec![BoundaryPiece::Line { y: -PI / 2.0 }]);

        let t = split_boundary(&twoslit(), 0.0).unwrap();
        assert_eq!(t.plus, vec![BoundaryPiece::HalfLine { y: PI, x_end: -1.0 }]);
        assert_eq!(t.minus, vec![BoundaryPiece::HalfLine { y: -PI, x_end: -1.0 }]);

        let h = build_model(&ModelSpec::HalfPlane { a: -1.0 }).unwrap();
        let hp = split_boundary(&h, 0.0).unwrap();
        assert!(hp.plus.is_empty());
        assert_eq!(hp.minus, vec![BoundaryPiece::Line { y: -1.0 }]);

        assert!(matches!(split_boundary(&twoslit(), PI), Err(Error::LevelNotInteriorLine { .. })));
        assert!(matches!(split_boundary(&h, -2.0), Err(Error::LevelNotInteriorLine { .. })));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_split(&twoslit(), c(-3.0, 0.0), 0.0).unwrap(), (PI, PI));
        let r = (1.0 + PI * PI).sqrt();
        let (p, m) = delta_split(&twoslit(), c(0.0, 0.0), 0.0).unwrap();
        assert!((p - r).abs() < 1e-15 && (m - r).abs() < 1e-15);
        let h = build_model(&ModelSpec::HalfPlane { a: -1.0 }).unwrap();
        assert_eq!(delta_split(&h, c(-5.0, 0.0), 0.0).unwrap(), (f64::INFINITY, 1.0));
    }

    #[test]
    fn series_verdicts() {
        let t = twoslit();
        let o = backward_orbit(&t, c(0.0, 0.0), 50.0, 0.5).unwrap();
        let rs = ratio_series(&t, &o).unwrap();
        assert!(rs.ratios.iter().all(|r| *r == 1.0));
        assert_eq!(rs.verdict, RatioVerdict::Bounded { c: 1.0 });

        let h = build_model(&ModelSpec::HalfPlane { a: -1.0 }).unwrap();
        let o = backward_orbit(&h, c(0.0, 0.0), 50.0, 0.5).unwrap();
        let rs = ratio_series(&h, &o).unwrap();
        assert_eq!(rs.verdict, RatioVerdict::DivergesToInfinity);
        assert!(rs.to_csv().lines().nth(1).unwrap().ends_with(",inf,1,inf"));

        let s = build_model(&ModelSpec::SlitPlane { x0: -1.0, y0: 0.0 }).unwrap();
        let z0 = s.h_inverse(c(0.0, -1.0)).unwrap();
        let o = backward_orbit(&s, z0, 50.0, 0.5).unwrap();
        assert_eq!(ratio_series(&s, &o).unwrap().verdict, RatioVerdict::CollapsesToZero);
    }
}
