//! Exact planar geometry of the catalog domains: horizontal lines and
//! left-pointing horizontal half-lines.

use serde::{Deserialize, Serialize};

use crate::Complex;

/// A closed boundary piece of a Koenigs domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundaryPiece {
    /// The full line `Im w = y`.
    Line { y: f64 },
    /// The half-line `{Re w <= x_end, Im w = y}`; its tip belongs to it.
    #[serde(rename = "halfline")]
    HalfLine { y: f64, x_end: f64 },
}

impl BoundaryPiece {
    pub fn y(&self) -> f64 {
        match *self {
            BoundaryPiece::Line { y } | BoundaryPiece::HalfLine { y, .. } => y,
        }
    }

    /// Closest point of the piece to `w`.
    pub fn nearest(&self, w: Complex) -> Complex {
        match *self {
            BoundaryPiece::Line { y } => Complex::new(w.re, y),
            BoundaryPiece::HalfLine { y, x_end } => Complex::new(w.re.min(x_end), y),
        }
    }

    pub fn distance(&self, w: Complex) -> f64 {
        match *self {
            BoundaryPiece::Line { y } => (w.im - y).abs(),
            BoundaryPiece::HalfLine { y, x_end } => {
                if w.re <= x_end {
                    (w.im - y).abs()
                } else {
                    (w - Complex::new(x_end, y)).norm()
                }
            }
        }
    }

    pub fn contains_point(&self, w: Complex) -> bool {
        match *self {
            BoundaryPiece::Line { y } => w.im == y,
            BoundaryPiece::HalfLine { y, x_end } => w.im == y && w.re <= x_end,
        }
    }

    /// Whether the closed segment `[p, q]` meets the piece.
    pub fn meets_segment(&self, p: Complex, q: Complex) -> bool {
        let y = self.y();
        let (dp, dq) = (p.im - y, q.im - y);
        if dp * dq > 0.0 {
            return false;
        }
        let x_lo = match *self {
            BoundaryPiece::Line { .. } => return true,
            BoundaryPiece::HalfLine { x_end, .. } => x_end,
        };
        if dp == 0.0 && dq == 0.0 {
            return p.re.min(q.re) <= x_lo;
        }
        let s = dp / (dp - dq);
        let x = p.re + s * (q.re - p.re);
        x <= x_lo
    }

    pub(crate) fn affine(&self, scale: f64, shift: Complex) -> BoundaryPiece {
        match *self {
            BoundaryPiece::Line { y } => BoundaryPiece::Line { y: scale * y + shift.im },
            BoundaryPiece::HalfLine { y, x_end } => BoundaryPiece::HalfLine {
                y: scale * y + shift.im,
                x_end: scale * x_end + shift.re,
            },
        }
    }
}

/// Region occupied by a Koenigs domain, kept in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// `ylow < Im w < yhigh`
    Strip { ylow: f64, yhigh: f64 },
    /// `Im w > y`
    HalfPlaneAbove { y: f64 },
    /// The plane minus finitely many left-pointing half-lines.
    SlitComplement { slits: Vec<BoundaryPiece> },
}

impl Region {
    pub fn contains(&self, w: Complex) -> bool {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return false;
        }
        match self {
            Region::Strip { ylow, yhigh } => *ylow < w.im && w.im < *yhigh,
            Region::HalfPlaneAbove { y } => w.im > *y,
            Region::SlitComplement { slits } => !slits.iter().any(|s| s.contains_point(w)),
        }
    }

    pub fn boundary(&self) -> Vec<BoundaryPiece> {
        match self {
            Region::Strip { ylow, yhigh } => {
                vec![BoundaryPiece::Line { y: *ylow }, BoundaryPiece::Line { y: *yhigh }]
            }
            Region::HalfPlaneAbove { y } => vec![BoundaryPiece::Line { y: *y }],
            Region::SlitComplement { slits } => slits.clone(),
        }
    }

    /// Euclidean distance to the boundary; zero on the boundary.
    pub fn boundary_distance(&self, w: Complex) -> f64 {
        self.boundary()
            .iter()
            .map(|b| b.distance(w))
            .fold(f64::INFINITY, f64::min)
    }

    /// First time `t >= 0` at which `w - t` leaves the open region, if any.
    pub fn leftward_exit_time(&self, w: Complex) -> Option<f64> {
        match self {
            Region::Strip { .. } | Region::HalfPlaneAbove { .. } => None,
            Region::SlitComplement { slits } => slits
                .iter()
                .filter_map(|s| match *s {
                    BoundaryPiece::HalfLine { y, x_end } if w.im == y => Some((w.re - x_end).max(0.0)),
                    _ => None,
                })
                .reduce(f64::min),
        }
    }

    pub(crate) fn affine(&self, scale: f64, shift: Complex) -> Region {
        match self {
            Region::Strip { ylow, yhigh } => Region::Strip {
                ylow: scale * ylow + shift.im,
                yhigh: scale * yhigh + shift.im,
            },
            Region::HalfPlaneAbove { y } => Region::HalfPlaneAbove { y: scale * y + shift.im },
            Region::SlitComplement { slits } => Region::SlitComplement {
                slits: slits.iter().map(|s| s.affine(scale, shift)).collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn halfline_distance_switches_at_tip() {
        let s = BoundaryPiece::HalfLine { y: PI, x_end: -1.0 };
        assert_eq!(s.distance(c(-3.0, 0.0)), PI);
        assert!((s.distance(c(0.0, 0.0)) - (1.0 + PI * PI).sqrt()).abs() < 1e-15);
        assert_eq!(s.nearest(c(5.0, 1.0)), c(-1.0, PI));
    }

    #[test]
    fn slit_tip_is_boundary() {
        let r = Region::SlitComplement { slits: vec![BoundaryPiece::HalfLine { y: 0.0, x_end: -1.0 }] };
        assert!(!r.contains(c(-1.0, 0.0)));
        assert!(r.contains(c(-0.999, 0.0)));
        assert!(r.contains(c(-5.0, 1e-300)));
        assert_eq!(r.leftward_exit_time(c(0.0, 0.0)), Some(1.0));
        assert_eq!(r.leftward_exit_time(c(0.0, 0.5)), None);
    }

    #[test]
    fn segment_crossing() {
        let s = BoundaryPiece::HalfLine { y: 0.0, x_end: -1.0 };
        assert!(s.meets_segment(c(-2.0, 1.0), c(-2.0, -1.0)));
        assert!(!s.meets_segment(c(0.0, 1.0), c(0.0, -1.0)));
        assert!(s.meets_segment(c(-1.0, 1.0), c(-1.0, -1.0)));
        assert!(!s.meets_segment(c(-5.0, 1.0), c(5.0, 2.0)));
    }
}
