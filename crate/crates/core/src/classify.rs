//! Non-tangential versus tangential landing of backward orbits.
//!
//! Two criteria are combined. The angle criterion looks at the tail cluster
//! set of `arg(1 - σ̄γ(t))`; the harmonic-measure criterion at the tail range
//! of `ω(γ(t), ∂𝔻⁺)`, where `∂𝔻⁺` is the boundary arc corresponding to the
//! part of `∂Ω` above the orbit line. Agreement gives a verdict, disagreement
//! gives `Inconclusive`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::boundary::split_boundary;
use crate::domain::{FixedPoint, FixedPointKind, KoenigsModel};
use crate::error::{Error, Result};
use crate::invariants::harmonic::{arc_measure_from_offsets, Arc};
use crate::semigroup::{Direction, OrbitSample};
use crate::Complex;

/// Margin of the angle cluster from `±π/2`.
pub const ANGLE_ETA: f64 = 0.05;
/// Opening `M` of the Stolz region `|σ - z| ≤ M (1 - |z|)`.
pub const STOLZ_OPENING: f64 = 10.0;
/// Orientation convention recorded in every report.
pub const ARC_CONVENTION: &str = "boundary_plus is the counterclockwise arc from tau to sigma; it corresponds to the part of the domain boundary above the orbit line";

/// One side of the unit circle as seen from the landing point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundaryArc {
    Arc { alpha: f64, beta: f64 },
    Empty,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryArcs {
    pub plus: BoundaryArc,
    pub minus: BoundaryArc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConvergenceVerdict {
    NonTangential,
    Tangential,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub sigma: Complex,
    pub times: Vec<f64>,
    pub angle_series: Vec<f64>,
    pub cluster_interval: (f64, f64),
    pub stolz_ok: bool,
    pub hm_liminf: f64,
    pub hm_limsup: f64,
    pub arcs: BoundaryArcs,
    pub convention: &'static str,
    pub verdict: ConvergenceVerdict,
}

impl ConvergenceReport {
    pub fn angle_nontangential(&self) -> bool {
        let (lo, hi) = self.cluster_interval;
        lo > -FRAC_PI_2 + ANGLE_ETA && hi < FRAC_PI_2 - ANGLE_ETA
    }

    pub fn hm_nontangential(&self) -> bool {
        use crate::invariants::harmonic::NT_ETA;
        self.hm_liminf >= NT_ETA && self.hm_limsup <= 1.0 - NT_ETA
    }
}

fn landing_point(model: &KoenigsModel, orbit: &OrbitSample) -> Result<FixedPoint> {
    if orbit.direction != Direction::Backward {
        return Err(Error::InvalidArgument("classification needs a backward orbit".into()));
    }
    orbit.landing.and_then(|s| model.fixed_point_at(s)).copied().ok_or(Error::NoLanding)
}

/// `(∂𝔻⁺, ∂𝔻⁻)` for the landing point of the orbit. At a repelling point
/// the two arcs between `τ` and `σ`; at `τ` one side is empty and the other
/// is the whole circle.
pub fn boundary_arcs(model: &KoenigsModel, orbit: &OrbitSample) -> Result<BoundaryArcs> {
    let fp = landing_point(model, orbit)?;
    let arc = |a: Arc| BoundaryArc::Arc { alpha: a.alpha, beta: a.beta };
    match fp.kind {
        FixedPointKind::DenjoyWolff => {
            let split = split_boundary(model, orbit.level)?;
            let side = |empty: bool| if empty { BoundaryArc::Empty } else { BoundaryArc::Full };
            Ok(BoundaryArcs { plus: side(split.plus.is_empty()), minus: side(!split.plus.is_empty()) })
        }
        _ => {
            let plus = Arc::between(model.tau, fp.point)?;
            Ok(BoundaryArcs { plus: arc(plus), minus: arc(plus.complement()) })
        }
    }
}

fn tail_range(xs: &[f64]) -> (f64, f64) {
    xs[xs.len() / 2..].iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(*x), hi.max(*x)))
}

/// Classifies the landing of a backward orbit.
pub fn classify(model: &KoenigsModel, orbit: &OrbitSample, arcs: &BoundaryArcs) -> Result<ConvergenceReport> {
    let fp = landing_point(model, orbit)?;
    let sigma = fp.point;
    // γ - σ = q·e^s; directions come from q, magnitudes stay in log form
    let scaled: Vec<(Complex, f64)> =
        orbit.chart_points.iter().map(|xi| model.offset_from_fixed_point_scaled(*xi, &fp)).collect();

    // 1 - σ̄γ = -σ̄(γ - σ)
    let angle_series: Vec<f64> = scaled.iter().map(|(q, _)| (-sigma.conj() * q).arg()).collect();
    let cluster_interval = tail_range(&angle_series);

    let tail = orbit.len() / 2;
    let ln_m = STOLZ_OPENING.ln();
    let stolz_ok = (tail..orbit.len()).all(|k| {
        let (q, s) = scaled[k];
        q.norm().ln() + s <= ln_m + model.ln_one_minus_abs(orbit.chart_points[k])
    });

    let hm: Vec<f64> = match arcs.plus {
        BoundaryArc::Empty => vec![0.0; orbit.len()],
        BoundaryArc::Full => vec![1.0; orbit.len()],
        BoundaryArc::Arc { alpha, beta } => {
            let arc = Arc::new(alpha, beta)?;
            let ends_at_sigma = (arc.end() - sigma).norm() <= (arc.start() - sigma).norm();
            scaled
                .iter()
                .zip(&orbit.disk_points)
                .map(|((q, _), z)| {
                    // the endpoint at σ is seen from γ in the direction -q
                    if ends_at_sigma {
                        arc_measure_from_offsets(&arc, arc.start() - z, -q)
                    } else {
                        arc_measure_from_offsets(&arc, -q, arc.end() - z)
                    }
                })
                .collect()
        }
    };
    let (hm_liminf, hm_limsup) = tail_range(&hm);

    let mut report = ConvergenceReport {
        sigma,
        times: orbit.times.clone(),
        angle_series,
        cluster_interval,
        stolz_ok,
        hm_liminf,
        hm_limsup,
        arcs: *arcs,
        convention: ARC_CONVENTION,
        verdict: ConvergenceVerdict::Inconclusive,
    };
    report.verdict = match (report.angle_nontangential(), report.hm_nontangential()) {
        (true, true) => ConvergenceVerdict::NonTangential,
        (false, false) => ConvergenceVerdict::Tangential,
        _ => ConvergenceVerdict::Inconclusive,
    };
    Ok(report)
}

/// [`boundary_arcs`] followed by [`classify`].
pub fn classify_orbit(model: &KoenigsModel, orbit: &OrbitSample) -> Result<ConvergenceReport> {
    let arcs = boundary_arcs(model, orbit)?;
    classify(model, orbit, &arcs)
}
