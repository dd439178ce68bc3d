//! Closed-form Koenigs models.
//!
//! A [`ModelSpec`] names a domain `Ω` that is convex in the positive
//! direction. [`KoenigsModel`] packages the conformal map `h: 𝔻 → Ω` with
//! `h(0) = 0`, its derivative and inverse, and the fixed-point metadata of
//! the semigroup `φ_t = h⁻¹(h + t)`.

mod chart;
pub mod geometry;

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;
use chart::{BaseMap, Chart};
pub use geometry::{BoundaryPiece, Region};

/// Parameters of a catalog domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelSpec {
    /// `{Im w > a}`
    #[serde(rename = "halfplane")]
    HalfPlane { a: f64 },
    /// `{a < Im w < b}`
    Strip { a: f64, b: f64 },
    /// The plane minus `{Re w ≤ x0, Im w = y0}`.
    #[serde(rename = "slitplane")]
    SlitPlane { x0: f64, y0: f64 },
    /// The plane minus `{Re w ≤ x0, Im w = ±halfgap}`.
    #[serde(rename = "twoslit")]
    TwoSlit { x0: f64, halfgap: f64 },
    /// `scale · Ω_inner + translate`.
    #[serde(rename = "affine")]
    AffineOfModel { scale: f64, translate: Complex, inner: Box<ModelSpec> },
}

/// Names of the model families, as used in config blocks.
pub const FAMILY_NAMES: [&str; 5] = ["halfplane", "strip", "slitplane", "twoslit", "affine"];

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

impl ModelSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            ModelSpec::HalfPlane { .. } => "halfplane",
            ModelSpec::Strip { .. } => "strip",
            ModelSpec::SlitPlane { .. } => "slitplane",
            ModelSpec::TwoSlit { .. } => "twoslit",
            ModelSpec::AffineOfModel { .. } => "affine",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        match self {
            ModelSpec::HalfPlane { a } if finite(&[*a]) => Ok(()),
            ModelSpec::Strip { a, b } if finite(&[*a, *b]) => {
                if a < b {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec(format!("strip needs a < b, got a = {a}, b = {b}")))
                }
            }
            ModelSpec::SlitPlane { x0, y0 } if finite(&[*x0, *y0]) => Ok(()),
            ModelSpec::TwoSlit { x0, halfgap } if finite(&[*x0, *halfgap]) => {
                if *halfgap > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec(format!("twoslit needs halfgap > 0, got {halfgap}")))
                }
            }
            ModelSpec::AffineOfModel { scale, translate, inner } if finite(&[*scale, translate.re, translate.im]) => {
                if *scale <= 0.0 {
                    return Err(Error::InvalidSpec(format!("affine scale must be positive, got {scale}")));
                }
                inner.validate()
            }
            _ => Err(Error::InvalidSpec("non-finite parameter".into())),
        }
    }

    /// Key-value config block, numbers written with 17 significant digits.
    /// Nested models of `affine` go to `[<prefix>inner]` sections.
    pub fn to_config_block(&self) -> String {
        let mut out = String::new();
        self.write_block(&mut out, "");
        out
    }

    fn write_block(&self, out: &mut String, path: &str) {
        let _ = writeln!(out, "family = \"{}\"", self.family_name());
        match self {
            ModelSpec::HalfPlane { a } => {
                let _ = writeln!(out, "a = {}", fmt17(*a));
            }
            ModelSpec::Strip { a, b } => {
                let _ = writeln!(out, "a = {}\nb = {}", fmt17(*a), fmt17(*b));
            }
            ModelSpec::SlitPlane { x0, y0 } => {
                let _ = writeln!(out, "x0 = {}\ny0 = {}", fmt17(*x0), fmt17(*y0));
            }
            ModelSpec::TwoSlit { x0, halfgap } => {
                let _ = writeln!(out, "x0 = {}\nhalfgap = {}", fmt17(*x0), fmt17(*halfgap));
            }
            ModelSpec::AffineOfModel { scale, translate, inner } => {
                let _ = writeln!(
                    out,
                    "scale = {}\ntranslate = [{}, {}]",
                    fmt17(*scale),
                    fmt17(translate.re),
                    fmt17(translate.im)
                );
                let sub = if path.is_empty() { "inner".to_string() } else { format!("{path}.inner") };
                let _ = writeln!(out, "\n[{sub}]");
                inner.write_block(out, &sub);
            }
        }
    }

    pub fn from_config_block(text: &str) -> Result<ModelSpec> {
        let spec: ModelSpec = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Kind of a boundary fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FixedPointKind {
    DenjoyWolff,
    Repelling { mu: f64 },
    SuperRepelling,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub point: Complex,
    pub kind: FixedPointKind,
    /// `±1`: the end of the standard strip the fixed point corresponds to.
    #[serde(skip)]
    pub(crate) strip_end: f64,
}

impl FixedPoint {
    pub fn is_repelling(&self) -> bool {
        matches!(self.kind, FixedPointKind::Repelling { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximalStrip {
    pub ylow: f64,
    pub yhigh: f64,
}

impl MaximalStrip {
    pub fn amplitude(&self) -> f64 {
        self.yhigh - self.ylow
    }

    pub fn contains_level(&self, y: f64) -> bool {
        self.ylow < y && y < self.yhigh
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximalHalfPlane {
    pub ylevel: f64,
    pub side: Side,
}

impl MaximalHalfPlane {
    pub fn contains_level(&self, y: f64) -> bool {
        match self.side {
            Side::Above => y > self.ylevel,
            Side::Below => y < self.ylevel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Hyperbolic,
    Parabolic,
}

/// Disk automorphism `z ↦ (u z + a) / (1 + ā u z)`, `|u| = 1`, `|a| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DiskAutomorphism {
    a: Complex,
    u: Complex,
}

impl DiskAutomorphism {
    fn identity() -> Self {
        DiskAutomorphism { a: Complex::new(0.0, 0.0), u: Complex::new(1.0, 0.0) }
    }

    fn apply(&self, z: Complex) -> Complex {
        let uz = self.u * z;
        (uz + self.a) / (1.0 + self.a.conj() * uz)
    }

    fn inverse(&self, v: Complex) -> Complex {
        (v - self.a) / (self.u * (1.0 - self.a.conj() * v))
    }

    fn deriv(&self, z: Complex) -> Complex {
        let den = 1.0 + self.a.conj() * self.u * z;
        self.u * (1.0 - self.a.norm_sqr()) / (den * den)
    }

    /// `inverse(v1) - inverse(v2)`, given `v1 - v2` computed elsewhere.
    fn inverse_difference(&self, v1: Complex, v2: Complex, v1_minus_v2: Complex) -> Complex {
        let ab = self.a.conj();
        v1_minus_v2 * (1.0 - self.a.norm_sqr()) / (self.u * (1.0 - ab * v1) * (1.0 - ab * v2))
    }
}

fn strip_log(v: Complex) -> Complex {
    ((1.0 + v) / (1.0 - v)).ln()
}

fn strip_tanh(xi: Complex) -> Complex {
    let u = 0.5 * xi;
    if u.re > 20.0 {
        let e = (-2.0 * u).exp();
        1.0 - 2.0 * e / (1.0 + e)
    } else if u.re < -20.0 {
        let e = (2.0 * u).exp();
        2.0 * e / (1.0 + e) - 1.0
    } else {
        u.tanh()
    }
}

/// `tanh(ξ/2) - e` for `e = ±1`, without cancellation.
fn strip_end_offset(xi: Complex, end: f64) -> Complex {
    let (scaled, s) = strip_end_offset_scaled(xi, end);
    scaled * s.exp()
}

/// `(q, s)` with `tanh(ξ/2) - e = q·e^s`, `s ≤ 0`, and `|q|` of order one
/// near the end `e`.
fn strip_end_offset_scaled(xi: Complex, end: f64) -> (Complex, f64) {
    let s = (-end * xi.re).min(0.0);
    let es = s.exp();
    if end > 0.0 {
        (-2.0 / (Complex::new(xi.re + s, xi.im).exp() + es), s)
    } else {
        (2.0 / (Complex::new(-xi.re + s, -xi.im).exp() + es), s)
    }
}

/// A Koenigs model: `h: 𝔻 → Ω` with `h(0) = 0` plus semigroup metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct KoenigsModel {
    spec: ModelSpec,
    chart: Chart,
    norm: DiskAutomorphism,
    region: Region,
    pub tau: Complex,
    pub fixed_points: Vec<FixedPoint>,
    pub maximal_strip: Option<MaximalStrip>,
    pub maximal_halfplanes: Vec<MaximalHalfPlane>,
    pub classification: Classification,
}

/// Builds a model from its spec. Same as [`KoenigsModel::build`].
pub fn build_model(spec: &ModelSpec) -> Result<KoenigsModel> {
    KoenigsModel::build(spec)
}

struct Resolved {
    chart: Chart,
    region: Region,
    base_amplitude: Option<f64>,
}

fn resolve(spec: &ModelSpec) -> Resolved {
    match spec {
        ModelSpec::Strip { a, b } => Resolved {
            chart: Chart { base: BaseMap::Strip, scale: (b - a) / PI, shift: Complex::new(0.0, 0.5 * (a + b)) },
            region: Region::Strip { ylow: *a, yhigh: *b },
            base_amplitude: Some(PI),
        },
        ModelSpec::HalfPlane { a } => Resolved {
            chart: Chart { base: BaseMap::HalfPlane, scale: 1.0, shift: Complex::new(0.0, *a) },
            region: Region::HalfPlaneAbove { y: *a },
            base_amplitude: None,
        },
        ModelSpec::SlitPlane { x0, y0 } => Resolved {
            chart: Chart { base: BaseMap::SlitPlane, scale: 1.0, shift: Complex::new(*x0, *y0) },
            region: Region::SlitComplement { slits: vec![BoundaryPiece::HalfLine { y: *y0, x_end: *x0 }] },
            base_amplitude: None,
        },
        ModelSpec::TwoSlit { x0, halfgap } => {
            let s = halfgap / PI;
            Resolved {
                chart: Chart { base: BaseMap::TwoSlit, scale: s, shift: Complex::new(x0 + s, 0.0) },
                region: Region::SlitComplement {
                    slits: vec![
                        BoundaryPiece::HalfLine { y: -halfgap, x_end: *x0 },
                        BoundaryPiece::HalfLine { y: *halfgap, x_end: *x0 },
                    ],
                },
                base_amplitude: Some(2.0 * PI),
            }
        }
        ModelSpec::AffineOfModel { scale, translate, inner } => {
            let r = resolve(inner);
            Resolved {
                chart: Chart {
                    base: r.chart.base,
                    scale: scale * r.chart.scale,
                    shift: *scale * r.chart.shift + *translate,
                },
                region: r.region.affine(*scale, *translate),
                base_amplitude: r.base_amplitude,
            }
        }
    }
}

impl KoenigsModel {
    pub fn build(spec: &ModelSpec) -> Result<KoenigsModel> {
        spec.validate()?;
        let Resolved { mut chart, mut region, base_amplitude } = resolve(spec);

        let origin = Complex::new(0.0, 0.0);
        let norm = if region.contains(origin) {
            // keep Ω as specified, move the preimage of 0 to the center
            let xi0 = chart.invert(origin)?;
            DiskAutomorphism { a: strip_tanh(xi0), u: Complex::new(1.0, 0.0) }
        } else {
            // 0 ∉ Ω: translate Ω so that h(0) = 0
            let w0 = chart.eval(origin);
            chart.shift -= w0;
            region = region.affine(1.0, -w0);
            DiskAutomorphism::identity()
        };

        let (tau_end, repelling_end) = match chart.base {
            BaseMap::Strip | BaseMap::TwoSlit => (1.0, Some(-1.0)),
            BaseMap::HalfPlane => (-1.0, None),
            BaseMap::SlitPlane => (1.0, None),
        };
        let end_point = |e: f64| norm.inverse(Complex::new(e, 0.0));

        let maximal_strip = match &region {
            Region::Strip { ylow, yhigh } => Some(MaximalStrip { ylow: *ylow, yhigh: *yhigh }),
            Region::SlitComplement { slits } if chart.base == BaseMap::TwoSlit => {
                let (lo, hi) = (slits[0].y().min(slits[1].y()), slits[0].y().max(slits[1].y()));
                Some(MaximalStrip { ylow: lo, yhigh: hi })
            }
            _ => None,
        };
        let maximal_halfplanes = match &region {
            Region::Strip { .. } => vec![],
            Region::HalfPlaneAbove { y } => vec![MaximalHalfPlane { ylevel: *y, side: Side::Above }],
            Region::SlitComplement { slits } => {
                let hi = slits.iter().map(|s| s.y()).fold(f64::NEG_INFINITY, f64::max);
                let lo = slits.iter().map(|s| s.y()).fold(f64::INFINITY, f64::min);
                vec![
                    MaximalHalfPlane { ylevel: hi, side: Side::Above },
                    MaximalHalfPlane { ylevel: lo, side: Side::Below },
                ]
            }
        };

        let mut fixed_points = vec![FixedPoint {
            point: end_point(tau_end),
            kind: FixedPointKind::DenjoyWolff,
            strip_end: tau_end,
        }];
        if let (Some(end), Some(base_amp)) = (repelling_end, base_amplitude) {
            let amplitude = chart.scale * base_amp;
            fixed_points.push(FixedPoint {
                point: end_point(end),
                kind: FixedPointKind::Repelling { mu: -PI / amplitude },
                strip_end: end,
            });
        }

        let classification = if matches!(region, Region::Strip { .. }) {
            Classification::Hyperbolic
        } else {
            Classification::Parabolic
        };

        let model = KoenigsModel {
            spec: spec.clone(),
            chart,
            norm,
            region,
            tau: fixed_points[0].point,
            fixed_points,
            maximal_strip,
            maximal_halfplanes,
            classification,
        };
        let h0 = model.chart.eval(model.chart_of_disk(origin)?);
        if h0.norm() > 1e-12 {
            return Err(Error::InvalidSpec(format!("normalization failed, |h(0)| = {:e}", h0.norm())));
        }
        Ok(model)
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn boundary(&self) -> Vec<BoundaryPiece> {
        self.region.boundary()
    }

    /// The model conjugated by the rotation `z ↦ e^{iθ} z`: its Koenigs map
    /// is `z ↦ h(e^{-iθ} z)`, fixed points rotate by `e^{iθ}`.
    pub fn rotated(&self, theta: f64) -> KoenigsModel {
        let rot = Complex::from_polar(1.0, theta);
        let mut m = self.clone();
        m.norm.u = self.norm.u * rot.conj();
        for fp in &mut m.fixed_points {
            fp.point *= rot;
        }
        m.tau *= rot;
        m
    }

    pub fn repelling_points(&self) -> impl Iterator<Item = &FixedPoint> {
        self.fixed_points.iter().filter(|f| f.is_repelling())
    }

    /// Fixed point at `sigma`, matched to 1e-9.
    pub fn fixed_point_at(&self, sigma: Complex) -> Option<&FixedPoint> {
        self.fixed_points.iter().find(|f| (f.point - sigma).norm() < 1e-9)
    }

    // --- strip-coordinate layer ------------------------------------------

    /// Strip coordinate `ξ = L(M(z))` of a disk point.
    pub fn chart_of_disk(&self, z: Complex) -> Result<Complex> {
        if !(z.norm() < 1.0) {
            return Err(Error::outside_disk(z));
        }
        Ok(strip_log(self.norm.apply(z)))
    }

    /// Disk point with strip coordinate `ξ`. May round onto the unit circle
    /// when `|Re ξ|` is large.
    pub fn disk_of_chart(&self, xi: Complex) -> Complex {
        self.norm.inverse(strip_tanh(xi))
    }

    pub fn omega_of_chart(&self, xi: Complex) -> Complex {
        self.chart.eval(xi)
    }

    pub fn chart_of_omega(&self, w: Complex) -> Result<Complex> {
        if !self.contains(w) {
            return Err(Error::outside_domain(w));
        }
        self.chart.invert(w)
    }

    /// `dw/dξ` of the strip-to-domain map.
    pub fn chart_deriv(&self, xi: Complex) -> Complex {
        self.chart.deriv(xi)
    }

    /// `z(ξ) - σ` for a fixed point `σ`, accurate even when `z` is within
    /// rounding distance of `σ`.
    pub fn offset_from_fixed_point(&self, xi: Complex, fp: &FixedPoint) -> Complex {
        let v = strip_tanh(xi);
        let e = Complex::new(fp.strip_end, 0.0);
        self.norm.inverse_difference(v, e, strip_end_offset(xi, fp.strip_end))
    }

    /// `(q, s)` with `z(ξ) - σ = q·e^s`: the offset from a fixed point that
    /// keeps its direction after `e^s` underflows.
    pub fn offset_from_fixed_point_scaled(&self, xi: Complex, fp: &FixedPoint) -> (Complex, f64) {
        let v = strip_tanh(xi);
        let e = Complex::new(fp.strip_end, 0.0);
        let (q, s) = strip_end_offset_scaled(xi, fp.strip_end);
        (self.norm.inverse_difference(v, e, q), s)
    }

    /// `ln(1 - |z|)` for the disk point with strip coordinate `ξ`.
    pub fn ln_one_minus_abs(&self, xi: Complex) -> f64 {
        let ln_gap = self.ln_one_minus_abs_sq(xi);
        let gap = ln_gap.exp();
        ln_gap - (1.0 + (1.0 - gap).max(0.0).sqrt()).ln()
    }

    /// `ln(1 - |z|²)` for the disk point with strip coordinate `ξ`.
    pub fn ln_one_minus_abs_sq(&self, xi: Complex) -> f64 {
        // 1 - |tanh(ξ/2)|² = cos y / |cosh(ξ/2)|²
        let u = 0.5 * xi;
        let ax = u.re.abs();
        let ln_cosh = if ax < 300.0 {
            u.cosh().norm().ln()
        } else {
            let e = (-2.0 * ax).exp();
            ax - std::f64::consts::LN_2 + 0.5 * (1.0 + 2.0 * e * (2.0 * u.im).cos() + e * e).ln()
        };
        let v = strip_tanh(xi);
        let den = (1.0 - self.norm.a.conj() * v).norm_sqr();
        (1.0 - self.norm.a.norm_sqr()).ln() + xi.im.cos().ln() - 2.0 * ln_cosh - den.ln()
    }

    /// `1 - |z|²` for the disk point with strip coordinate `ξ`, without
    /// cancellation near the circle.
    pub fn one_minus_abs_sq(&self, xi: Complex) -> f64 {
        self.ln_one_minus_abs_sq(xi).exp()
    }

    /// `h'(z)` from the strip coordinate of `z`.
    pub fn h_deriv_at_chart(&self, xi: Complex) -> Complex {
        Complex::new(1.0, 0.0) / self.generator_at_chart(xi)
    }

    /// Infinitesimal generator `G = 1/h'` evaluated from the strip coordinate.
    pub fn generator_at_chart(&self, xi: Complex) -> Complex {
        // 1/L'(v) = (1 - v²)/2 = sech²(ξ/2)/2
        let ch = (0.5 * xi).cosh();
        let inv_l = 0.5 / (ch * ch);
        let z = self.disk_of_chart(xi);
        let inv_m = Complex::new(1.0, 0.0) / self.norm.deriv(z);
        inv_l * inv_m / self.chart.deriv(xi)
    }

    // --- domain catalog operations ----------------------------------------

    pub fn h_eval(&self, z: Complex) -> Result<Complex> {
        let xi = self.chart_of_disk(z)?;
        if z == Complex::new(0.0, 0.0) {
            return Ok(z);
        }
        Ok(self.chart.eval(xi))
    }

    pub fn h_deriv(&self, z: Complex) -> Result<Complex> {
        let v = self.norm.apply(z);
        let xi = self.chart_of_disk(z)?;
        Ok(self.chart.deriv(xi) * (2.0 / (1.0 - v * v)) * self.norm.deriv(z))
    }

    pub fn h_inverse(&self, w: Complex) -> Result<Complex> {
        let xi = self.chart_of_omega(w)?;
        let z = self.disk_of_chart(xi);
        if !(z.norm() < 1.0) {
            return Err(Error::InversionDivergence { iterations: 0, residual: 1.0 - z.norm() });
        }
        Ok(z)
    }

    pub fn contains(&self, w: Complex) -> bool {
        self.region.contains(w)
    }

    pub fn boundary_distance(&self, w: Complex) -> Result<f64> {
        if !self.contains(w) {
            return Err(Error::outside_domain(w));
        }
        Ok(self.region.boundary_distance(w))
    }

    /// First time at which the leftward half-line from `w` leaves `Ω`.
    pub fn backward_exit_time(&self, w: Complex) -> Option<f64> {
        self.region.leftward_exit_time(w)
    }
}

/// A named catalog model with the start point `h(z0) = w0` of its
/// reference orbits.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: ModelSpec,
    pub w0: Complex,
}

impl CatalogEntry {
    pub fn model(&self) -> Result<KoenigsModel> {
        build_model(&self.spec)
    }

    /// `z0 = h⁻¹(w0)`.
    pub fn z0(&self) -> Result<Complex> {
        self.model()?.h_inverse(self.w0)
    }
}

/// The reference models: every family, orbits inside and outside maximal
/// strips, and affine images.
pub fn catalog() -> Vec<CatalogEntry> {
    let strip = ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 };
    let twoslit = ModelSpec::TwoSlit { x0: -1.0, halfgap: PI };
    let slit = ModelSpec::SlitPlane { x0: -1.0, y0: 0.0 };
    let c = Complex::new;
    let entry = |name, spec: &ModelSpec, w0| CatalogEntry { name, spec: spec.clone(), w0 };
    vec![
        entry("strip", &strip, c(0.0, 0.0)),
        entry("strip_off_center", &strip, c(0.0, 0.6)),
        entry("halfplane", &ModelSpec::HalfPlane { a: -1.0 }, c(0.0, 0.0)),
        entry("slitplane_above", &slit, c(0.0, 0.5)),
        entry("slitplane_below", &slit, c(0.0, -0.5)),
        entry("twoslit", &twoslit, c(0.0, 0.0)),
        entry("twoslit_off_center", &twoslit, c(0.0, 1.0)),
        entry("twoslit_outside", &twoslit, c(0.0, 4.0)),
        entry(
            "affine_strip",
            &ModelSpec::AffineOfModel { scale: 2.0, translate: c(0.5, 0.3), inner: Box::new(strip.clone()) },
            c(0.0, 0.0),
        ),
        entry(
            "affine_twoslit",
            &ModelSpec::AffineOfModel { scale: 0.5, translate: c(0.0, 0.2), inner: Box::new(twoslit.clone()) },
            c(0.0, 0.0),
        ),
    ]
}
