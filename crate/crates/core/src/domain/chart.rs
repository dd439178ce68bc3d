//! Closed-form maps from the standard strip `S = {|Im ξ| < π/2}` onto the
//! catalog domains.
//!
//! Every catalog Koenigs map factors as `h = P ∘ L ∘ M` where `M` is a disk
//! automorphism, `L(z) = log((1+z)/(1-z))` sends the disk onto `S`, and `P`
//! is one of the maps below followed by a real scaling and a translation.
//! Working in the strip coordinate `ξ` keeps orbit points exact long after
//! their disk images have rounded onto the unit circle.

use crate::error::{Error, Result};
use crate::Complex;

const NEWTON_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BaseMap {
    /// `ξ ↦ ξ`, onto `{|Im| < π/2}`.
    Strip,
    /// `ξ ↦ i e^{-ξ}`, onto `{Im > 0}`.
    HalfPlane,
    /// `ξ ↦ e^{2ξ}`, onto the plane minus `(-∞, 0]`.
    SlitPlane,
    /// `ξ ↦ 2ξ + e^{2ξ}`, onto the plane minus `{Re ≤ -1, Im = ±π}`.
    TwoSlit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Chart {
    pub base: BaseMap,
    pub scale: f64,
    pub shift: Complex,
}

fn i() -> Complex {
    Complex::new(0.0, 1.0)
}

impl Chart {
    pub fn eval(&self, xi: Complex) -> Complex {
        let base = match self.base {
            BaseMap::Strip => xi,
            BaseMap::HalfPlane => i() * (-xi).exp(),
            BaseMap::SlitPlane => (2.0 * xi).exp(),
            BaseMap::TwoSlit => 2.0 * xi + (2.0 * xi).exp(),
        };
        self.scale * base + self.shift
    }

    pub fn deriv(&self, xi: Complex) -> Complex {
        let base = match self.base {
            BaseMap::Strip => Complex::new(1.0, 0.0),
            BaseMap::HalfPlane => -i() * (-xi).exp(),
            BaseMap::SlitPlane => 2.0 * (2.0 * xi).exp(),
            BaseMap::TwoSlit => 2.0 * (1.0 + (2.0 * xi).exp()),
        };
        self.scale * base
    }

    /// Inverse of [`Chart::eval`]. The caller guarantees `w` lies in the image.
    pub fn invert(&self, w: Complex) -> Result<Complex> {
        let v = (w - self.shift) / self.scale;
        match self.base {
            BaseMap::Strip => Ok(v),
            BaseMap::HalfPlane => Ok(-((-i()) * v).ln()),
            BaseMap::SlitPlane => Ok(0.5 * v.ln()),
            BaseMap::TwoSlit => solve_two_slit(v).map(|zeta| 0.5 * zeta),
        }
    }
}

fn two_slit_residual(zeta: Complex, v: Complex) -> Complex {
    zeta + zeta.exp() - v
}

fn newton_two_slit(v: Complex, start: Complex) -> (Complex, f64, bool) {
    use std::f64::consts::PI;
    let scale = 1.0 + v.norm();
    let tol = 1e-14 * scale;
    let mut zeta = start;
    let mut res = two_slit_residual(zeta, v).norm();
    for _ in 0..NEWTON_MAX_ITER {
        if res <= tol {
            return (zeta, res, true);
        }
        let d = 1.0 + zeta.exp();
        let step = two_slit_residual(zeta, v) / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            return (zeta, res, false);
        }
        // Damped step: halve until we stay in the strip and the residual drops.
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let cand = zeta - lambda * step;
            if cand.im.abs() < PI {
                let r = two_slit_residual(cand, v).norm();
                if r < res || (lambda * step.norm() <= 1e-16 * (1.0 + zeta.norm())) {
                    zeta = cand;
                    res = r;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (zeta, res, res <= tol.max(1e-12 * scale))
}

/// Solves `ζ + e^ζ = v` with `|Im ζ| < π`.
pub(crate) fn solve_two_slit(v: Complex) -> Result<Complex> {
    use std::f64::consts::PI;
    let mut guesses = Vec::with_capacity(4);
    if v.re <= -1.0 && v.im.abs() < PI {
        // slit-dominated regime, e^ζ is negligible
        guesses.push(v);
    } else if v.norm() < 2.0 {
        guesses.push(0.5 * (v - 1.0));
    } else {
        guesses.push(v.ln());
    }
    guesses.push(v.ln());
    guesses.push(Complex::new(v.re.min(0.0), v.im.clamp(-3.0, 3.0)));
    guesses.push(Complex::new(0.0, 0.0));

    let mut best = (Complex::new(0.0, 0.0), f64::INFINITY);
    for g in guesses {
        if !(g.re.is_finite() && g.im.is_finite()) || g.im.abs() >= PI {
            continue;
        }
        let (z, r, ok) = newton_two_slit(v, g);
        if ok {
            return Ok(z);
        }
        if r < best.1 {
            best = (z, r);
        }
    }
    Err(Error::InversionDivergence { iterations: NEWTON_MAX_ITER, residual: best.1 })
}
