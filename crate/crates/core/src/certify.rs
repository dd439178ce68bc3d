//! Quasi-geodesic certificates for backward orbits.
//!
//! For grid pairs `t₁ < t₂` the certifier compares the hyperbolic length
//! `l(t₁, t₂)` of the orbit with the distance `k(γ(t₁), γ(t₂))` and searches
//! constants with `l ≤ A·k + B`. Lengths are accumulated along the grid, so
//! each pair costs one subtraction.

use serde::Serialize;
use serde_json::json;

use crate::classify::STOLZ_OPENING;
use crate::domain::{BoundaryPiece, KoenigsModel};
use crate::error::{Error, Result};
use crate::metric::{k_strip, orbit_length};
use crate::semigroup::{lipschitz_check, Direction, OrbitSample};
use crate::Complex;

/// `k(γ(0), γ(t_max))` must exceed this before an orbit is judged.
pub const ESCAPE_THRESHOLD: f64 = 5.0;
/// Slack allowed in `l ≤ A·k + B`.
pub const RESIDUAL_TOL: f64 = 1e-6;
/// `A` at which superlinear growth of `B` is tested.
pub const GROWTH_A: f64 = 10.0;
/// Per-window growth ratio that refutes a certificate.
pub const GROWTH_RATIO: f64 = 1.5;

const CUMULATIVE_TOL: f64 = 1e-10;

/// `{0} ∪ {2^{k/4} : k ≥ -24, 2^{k/4} < t_max} ∪ {t_max}`.
pub fn default_pair_grid(t_max: f64) -> Vec<f64> {
    let mut grid = vec![0.0];
    let mut k = -24;
    loop {
        let t = 2f64.powf(k as f64 / 4.0);
        if t >= t_max {
            break;
        }
        grid.push(t);
        k += 1;
    }
    grid.push(t_max);
    grid
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairRecord {
    pub t1: f64,
    pub t2: f64,
    pub l: f64,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthWindow {
    pub t_end: f64,
    pub b: f64,
    pub witness: PairRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum QgVerdict {
    Certified { a: f64, b: f64 },
    RefutedGrowth { a: f64, windows: Vec<GrowthWindow> },
}

impl QgVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, QgVerdict::Certified { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            QgVerdict::Certified { .. } => "Certified",
            QgVerdict::RefutedGrowth { .. } => "RefutedGrowth",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QgCertificate {
    pub pairs: Vec<PairRecord>,
    /// `(A, B(A))` on a log grid of `[1, 100]`.
    pub b_table: Vec<(f64, f64)>,
    pub verdict: QgVerdict,
    /// `max (l - A·k - B)` over all pairs for the verdict's `(A, B)`.
    pub max_residual: f64,
    /// `max (k - l)`; non-positive up to quadrature error.
    pub soundness: f64,
    pub escape_k: f64,
    /// Sup of `|G|` along the orbit when it lands at a repelling point.
    pub lipschitz_c: Option<f64>,
}

impl QgCertificate {
    /// `(A, B)` of the verdict.
    pub fn constants(&self) -> (f64, f64) {
        match &self.verdict {
            QgVerdict::Certified { a, b } => (*a, *b),
            QgVerdict::RefutedGrowth { a, windows } => (*a, windows.last().map_or(0.0, |w| w.b)),
        }
    }

    /// Largest `l - A·k - B` over the pairs.
    pub fn residual(&self, a: f64, b: f64) -> f64 {
        max_residual(&self.pairs, a, b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (a, b) = self.constants();
        json!({
            "verdict": self.verdict.name(),
            "A": a,
            "B": b,
            "maxResidual": self.max_residual,
            "pairs": self.pairs,
            "details": {
                "verdict": self.verdict,
                "bTable": self.b_table,
                "soundness": self.soundness,
                "escapeK": self.escape_k,
                "lipschitzC": self.lipschitz_c,
            },
        })
    }
}

fn max_residual(pairs: &[PairRecord], a: f64, b: f64) -> f64 {
    pairs.iter().map(|p| p.l - a * p.k - b).fold(f64::NEG_INFINITY, f64::max)
}

/// `B(A) = max (l - A·k)⁺` over the pairs.
pub fn minimal_b(pairs: &[PairRecord], a: f64) -> f64 {
    pairs.iter().map(|p| p.l - a * p.k).fold(0.0, f64::max)
}

/// Lengths and distances for all ordered grid pairs.
pub fn pair_records(model: &KoenigsModel, orbit: &OrbitSample, grid: &[f64]) -> Result<Vec<PairRecord>> {
    if grid.is_empty() || grid.windows(2).any(|p| p[1] <= p[0]) || grid[0] < 0.0 || grid[grid.len() - 1] > orbit.t_max() {
        return Err(Error::InvalidArgument("pair grid must increase inside the orbit span".into()));
    }
    let sign = orbit.direction.sign();
    let xis = grid
        .iter()
        .map(|&t| model.chart_of_omega(orbit.w0 + sign * t))
        .collect::<Result<Vec<_>>>()?;
    let mut cumulative = vec![0.0; grid.len()];
    for i in 1..grid.len() {
        let piece = orbit_length(model, orbit.w0, sign, grid[i - 1], grid[i], CUMULATIVE_TOL)?;
        cumulative[i] = cumulative[i - 1] + piece.value;
    }
    let mut pairs = Vec::with_capacity(grid.len() * (grid.len() - 1) / 2);
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            pairs.push(PairRecord {
                t1: grid[i],
                t2: grid[j],
                l: cumulative[j] - cumulative[i],
                k: k_strip(xis[i], xis[j]),
            });
        }
    }
    Ok(pairs)
}

fn a_grid() -> Vec<f64> {
    (0..=40).map(|i| 10f64.powf(i as f64 / 20.0)).collect()
}

fn growth_windows(pairs: &[PairRecord], t_max: f64) -> Vec<GrowthWindow> {
    [0.25, 0.5, 1.0]
        .iter()
        .filter_map(|f| {
            let t_end = f * t_max;
            pairs
                .iter()
                .filter(|p| p.t2 <= t_end * (1.0 + 1e-12))
                .max_by(|x, y| (x.l - GROWTH_A * x.k).total_cmp(&(y.l - GROWTH_A * y.k)))
                .map(|w| GrowthWindow { t_end, b: (w.l - GROWTH_A * w.k).max(0.0), witness: *w })
        })
        .collect()
}

/// Certifies or refutes the quasi-geodesic property of a backward orbit on
/// the given pair grid (see [`default_pair_grid`]).
pub fn certify(model: &KoenigsModel, orbit: &OrbitSample, pair_grid: &[f64]) -> Result<QgCertificate> {
    if orbit.direction != Direction::Backward {
        return Err(Error::InvalidArgument("certificates need a backward orbit".into()));
    }
    let xi_end = model.chart_of_omega(orbit.omega_at(orbit.t_max()))?;
    let escape_k = k_strip(model.chart_of_disk(orbit.z0)?, xi_end);
    if !(escape_k > ESCAPE_THRESHOLD) {
        return Err(Error::EscapeNotReached { k: escape_k });
    }

    let pairs = pair_records(model, orbit, pair_grid)?;
    let soundness = pairs.iter().map(|p| p.k - p.l).fold(f64::NEG_INFINITY, f64::max);
    let b_table: Vec<(f64, f64)> = a_grid().into_iter().map(|a| (a, minimal_b(&pairs, a))).collect();

    let windows = growth_windows(&pairs, pair_grid[pair_grid.len() - 1]);
    let grows = windows.len() == 3
        && windows[2].b > 1.0
        && windows.windows(2).all(|w| w[0].b > 0.0 && w[1].b >= GROWTH_RATIO * w[0].b);
    let verdict = if grows {
        QgVerdict::RefutedGrowth { a: GROWTH_A, windows }
    } else {
        let (a, b) = b_table
            .iter()
            .copied()
            .min_by(|x, y| (x.0 + x.1).total_cmp(&(y.0 + y.1)))
            .unwrap_or((1.0, 0.0));
        QgVerdict::Certified { a, b }
    };
    let (a, b) = match &verdict {
        QgVerdict::Certified { a, b } => (*a, *b),
        QgVerdict::RefutedGrowth { a, windows } => (*a, windows[2].b),
    };
    let lipschitz_c = lipschitz_check(model, orbit, STOLZ_OPENING).ok().map(|r| r.c);
    Ok(QgCertificate {
        max_residual: max_residual(&pairs, a, b),
        pairs,
        b_table,
        verdict,
        soundness,
        escape_k,
        lipschitz_c,
    })
}

/// The constants of the explicit quasi-geodesic bound for orbits inside a
/// maximal strip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PaperConstants {
    pub p_plus: Complex,
    pub p_minus: Complex,
    pub x: f64,
    pub y_plus: f64,
    pub y_minus: f64,
    pub epsilon: f64,
    pub c: f64,
    pub d: f64,
    pub t0: f64,
    /// `l(γ; [0, t0])`.
    pub l_t0: f64,
    pub a: f64,
    pub b: f64,
}

impl PaperConstants {
    /// `max (l - A·k - B)` over the pairs.
    pub fn validate(&self, pairs: &[PairRecord]) -> f64 {
        max_residual(pairs, self.a, self.b)
    }
}

fn nearest_on(pieces: &[BoundaryPiece], w: Complex) -> Option<Complex> {
    pieces
        .iter()
        .min_by(|p, q| p.distance(w).total_cmp(&q.distance(w)))
        .map(|p| p.nearest(w))
}

/// `A = 4ε/c` and `B = 8ε²/(cd) + l(γ; [0, t0])` for a backward orbit landing
/// at a repelling point.
pub fn paper_constants(model: &KoenigsModel, orbit: &OrbitSample) -> Result<PaperConstants> {
    let strip = match model.maximal_strip {
        Some(s) if s.contains_level(orbit.level) => s,
        _ => return Err(Error::NoMaximalStrip),
    };
    match orbit.landing.and_then(|s| model.fixed_point_at(s)) {
        Some(fp) if fp.is_repelling() => {}
        _ => return Err(Error::NotRepelling),
    }
    let w0 = orbit.w0;
    let boundary = model.boundary();
    let (plus, minus): (Vec<_>, Vec<_>) = boundary.into_iter().partition(|b| b.y() > orbit.level);
    let p_plus = nearest_on(&plus, w0).ok_or(Error::NoMaximalStrip)?;
    let p_minus = nearest_on(&minus, w0).ok_or(Error::NoMaximalStrip)?;
    let x = p_plus.re.min(p_minus.re);
    let (y_plus, y_minus) = (p_plus.im, p_minus.im);
    let epsilon = 0.5 * (y_plus - y_minus);
    let c = (orbit.level - strip.ylow).min(strip.yhigh - orbit.level);
    let d = (y_plus - orbit.level).min(orbit.level - y_minus);
    let t0 = (w0.re - x).max(0.0);
    let l_t0 = orbit_length(model, w0, -1.0, 0.0, t0, CUMULATIVE_TOL)?.value;
    Ok(PaperConstants {
        p_plus,
        p_minus,
        x,
        y_plus,
        y_minus,
        epsilon,
        c,
        d,
        t0,
        l_t0,
        a: 4.0 * epsilon / c,
        b: 8.0 * epsilon * epsilon / (c * d) + l_t0,
    })
}
