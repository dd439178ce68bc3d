//! The acceptance battery: every headline property of the laboratory checked
//! at its stated tolerance, one [`CriterionResult`] per property.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::{ratio_series, RatioVerdict};
use crate::certify::{certify, default_pair_grid, minimal_b, paper_constants, QgVerdict, RESIDUAL_TOL};
use crate::classify::{classify_orbit, ConvergenceVerdict};
use crate::domain::{build_model, catalog, KoenigsModel, ModelSpec};
use crate::error::Result;
use crate::invariants::beurling::{beurling_suite, suite_monotone, PRODUCT_BOUND, SUITE_GRID};
use crate::invariants::harmonic::{harmonic_measure_arc, Arc};
use crate::invariants::{extremal_distance_grotzsch, grotzsch_mu};
use crate::metric::{default_path, density_omega, distance_lemma_bounds};
use crate::report::invariant_rows;
use crate::scenario::{FD_RELERR, IDENTITY_TOL, INVARIANT_RADII};
use crate::semigroup::{
    backward_orbit, backward_orbit_identity_check, generator_along, generator_ode_residual, hyperbolic_step,
    lipschitz_check, phi, spectral_value,
};
use crate::Complex;

/// Samples per model for the random checks.
pub const RANDOM_SAMPLES: usize = 1000;
/// Default seed of the random checks.
pub const DEFAULT_SEED: u64 = 7;
/// Horizon of the catalog sweep; long enough for the slowest tangential
/// orbit to land and escape.
pub const SWEEP_T_MAX: f64 = 4000.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn random_disk_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex {
    Complex::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

/// One model per family plus an affine image.
pub fn family_models() -> Result<Vec<KoenigsModel>> {
    [
        ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 },
        ModelSpec::HalfPlane { a: -1.0 },
        ModelSpec::SlitPlane { x0: -1.0, y0: 0.0 },
        ModelSpec::TwoSlit { x0: -1.0, halfgap: PI },
        ModelSpec::AffineOfModel {
            scale: 0.5,
            translate: c(0.0, 0.2),
            inner: Box::new(ModelSpec::TwoSlit { x0: -1.0, halfgap: PI }),
        },
    ]
    .iter()
    .map(build_model)
    .collect()
}

fn strip() -> Result<KoenigsModel> {
    build_model(&ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 })
}

fn twoslit() -> Result<KoenigsModel> {
    build_model(&ModelSpec::TwoSlit { x0: -1.0, halfgap: PI })
}

fn semigroup_axioms(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut id, mut law) = (0.0f64, 0.0f64);
    for model in family_models()? {
        for _ in 0..RANDOM_SAMPLES {
            let z = random_disk_point(&mut rng, 0.9);
            let (t, s) = (10.0 * rng.gen::<f64>(), 10.0 * rng.gen::<f64>());
            id = id.max((phi(&model, 0.0, z)? - z).norm());
            law = law.max((phi(&model, t + s, z)? - phi(&model, t, phi(&model, s, z)?)?).norm());
        }
    }
    Ok((id <= 1e-12 && law <= 1e-9, format!("max |φ_0(z)-z| = {id:.2e}, max law residual = {law:.2e}")))
}

fn identity_on_catalog() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for entry in catalog() {
        let model = entry.model()?;
        let orbit = backward_orbit(&model, entry.z0()?, 200.0, 0.5)?;
        worst = worst.max(backward_orbit_identity_check(&model, &orbit, 400)?);
    }
    Ok((worst <= IDENTITY_TOL, format!("max residual {worst:.2e} over {} orbits", catalog().len())))
}

fn density_and_distance(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (mut sandwich, mut lemma) = (0usize, 0usize);
    let mut count = 0;
    for model in family_models()? {
        for _ in 0..RANDOM_SAMPLES {
            let w1 = model.h_eval(random_disk_point(&mut rng, 0.95))?;
            let w2 = model.h_eval(random_disk_point(&mut rng, 0.95))?;
            let delta = model.boundary_distance(w1)?;
            let lambda = density_omega(&model, w1)?;
            if !(1.0 / (4.0 * delta) <= lambda * (1.0 + 1e-12) && lambda <= (1.0 + 1e-12) / delta) {
                sandwich += 1;
            }
            let b = distance_lemma_bounds(&model, w1, w2, &default_path(&model, w1, w2))?;
            if !(b.lower <= b.k + 1e-12 && b.k <= b.upper + 1e-8) {
                lemma += 1;
            }
            count += 1;
        }
    }
    Ok((sandwich == 0 && lemma == 0, format!("{count} samples: {sandwich} density, {lemma} distance-lemma violations")))
}

fn strip_ideal() -> Result<(bool, String)> {
    let model = strip()?;
    let orbit = backward_orbit(&model, c(0.0, 0.0), 200.0, 0.5)?;
    let cert = certify(&model, &orbit, &default_pair_grid(200.0))?;
    let cert_ok = matches!(cert.verdict, QgVerdict::Certified { a, b } if a == 1.0 && b <= 1e-6);
    let step = hyperbolic_step(&model, &orbit, 100.0)?;
    let v_dev = step.tail_values.iter().map(|v| (v - 0.5).abs()).fold(0.0, f64::max);
    let class = classify_orbit(&model, &orbit)?.verdict;
    let ratio = ratio_series(&model, &orbit)?;
    let r_dev = ratio.tail_deviation(0.0);
    let (a, b) = cert.constants();
    Ok((
        cert_ok && v_dev <= 1e-6 && class == ConvergenceVerdict::NonTangential && r_dev <= 1e-9,
        format!("{} A={a} B={b:.2e}, |V-0.5| ≤ {v_dev:.2e}, {class:?}, |ratio-1| ≤ {r_dev:.2e}", cert.verdict.name()),
    ))
}

fn twoslit_constants() -> Result<(bool, String)> {
    let model = twoslit()?;
    let orbit = backward_orbit(&model, c(0.0, 0.0), 200.0, 0.5)?;
    let pc = paper_constants(&model, &orbit)?;
    let cert = certify(&model, &orbit, &default_pair_grid(200.0))?;
    let residual = pc.validate(&cert.pairs);
    let ratio = ratio_series(&model, &orbit)?;
    let tail = ratio.tail_deviation(100.0);
    let ok = (pc.a - 4.0).abs() <= 1e-12
        && (pc.b - 8.0 - pc.l_t0).abs() <= 1e-12
        && (pc.t0 - 1.0).abs() <= 1e-12
        && residual <= RESIDUAL_TOL
        && ratio.verdict.is_bounded()
        && tail <= 1e-3;
    Ok((
        ok,
        format!(
            "A={} B={:.6} (l(γ;[0,1])={:.6}), residual {residual:.3e}, {:?}, tail |ratio-1| ≤ {tail:.2e}",
            pc.a, pc.b, pc.l_t0, ratio.verdict
        ),
    ))
}

fn halfplane_refuted() -> Result<(bool, String)> {
    let model = build_model(&ModelSpec::HalfPlane { a: -1.0 })?;
    let orbit = backward_orbit(&model, c(0.0, 0.0), 1000.0, 0.5)?;
    let cert = certify(&model, &orbit, &default_pair_grid(1000.0))?;
    let b10 = minimal_b(&cert.pairs, 10.0);
    let ratio = ratio_series(&model, &orbit)?.verdict;
    let refuted = matches!(cert.verdict, QgVerdict::RefutedGrowth { .. });
    Ok((
        refuted && b10 >= 400.0 && ratio == RatioVerdict::DivergesToInfinity,
        format!("{}, B(A=10) = {b10:.3}, {ratio:?}", cert.verdict.name()),
    ))
}

fn spectral_values() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, model, mu) in [("strip", strip()?, -1.0), ("twoslit", twoslit()?, -0.5)] {
        let sigma = model.repelling_points().next().map(|f| f.point).unwrap_or_default();
        let sv = spectral_value(&model, sigma)?;
        let amp = sv.mu_amplitude.unwrap_or(f64::NAN);
        let e1 = ((sv.mu - mu) / mu).abs();
        let e2 = ((amp - mu) / mu).abs();
        ok &= e1 <= 1e-3 && e2 <= 1e-3;
        detail.push(format!("{name} μ={:.6} (quotient) {amp:.6} (amplitude)", sv.mu));
    }
    Ok((ok, detail.join(", ")))
}

fn generator_checks(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6);
    let mut ode = 0.0f64;
    for model in family_models()? {
        for _ in 0..100 {
            let z = random_disk_point(&mut rng, 0.9);
            ode = ode.max(generator_ode_residual(&model, z, 3.0 * rng.gen::<f64>(), 1e-7)?);
        }
    }
    let mut final_g = 0.0f64;
    let mut violation = f64::NEG_INFINITY;
    for model in [strip()?, twoslit()?] {
        let orbit = backward_orbit(&model, c(0.0, 0.0), 200.0, 0.5)?;
        final_g = final_g.max(*generator_along(&model, &orbit).last().unwrap_or(&f64::NAN));
        violation = violation.max(lipschitz_check(&model, &orbit, crate::classify::STOLZ_OPENING)?.max_violation);
    }
    Ok((
        ode <= 1e-5 && final_g <= 1e-2 && violation <= 1e-9,
        format!("ODE residual {ode:.2e}, |G(γ(200))| ≤ {final_g:.2e}, Lipschitz violation {violation:.2e}"),
    ))
}

fn invariants(grid: usize) -> Result<(bool, String)> {
    let sym = (grotzsch_mu(FRAC_1_SQRT_2)? - PI / 2.0).abs();
    let mut product = 0.0f64;
    for k in 1..=9 {
        let r = k as f64 / 10.0;
        let rp = ((1.0 - r) * (1.0 + r)).sqrt();
        product = product.max((grotzsch_mu(r)? * grotzsch_mu(rp)? - PI * PI / 4.0).abs());
    }
    let rows = invariant_rows(&INVARIANT_RADII, grid)?;
    let relerr = rows.iter().map(|r| r.relerr).fold(0.0, f64::max);
    let radii: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    let values: Vec<f64> = radii.iter().map(|&r| extremal_distance_grotzsch(r)).collect::<Result<_>>()?;
    let increasing = values.windows(2).all(|p| p[1] > p[0]);
    Ok((
        sym <= 1e-10 && product <= 1e-9 && relerr <= FD_RELERR && increasing,
        format!(
            "|μ(1/√2)-π/2| = {sym:.1e}, max |μμ'-π²/4| = {product:.1e}, FD relerr ≤ {relerr:.2e} at {grid}², λ(10⁻⁶) = {:.4}",
            values[5]
        ),
    ))
}

fn harmonic(grid: usize) -> Result<(bool, String)> {
    let mut origin = 0.0f64;
    for (a, b) in [(0.0, 1.0), (0.3, 2.0), (2.0, 6.0), (5.0, 7.5)] {
        let arc = Arc::new(a, b)?;
        origin = origin.max((harmonic_measure_arc(c(0.0, 0.0), &arc)? - arc.length() / TAU).abs());
    }
    let upper = Arc::new(0.0, PI)?;
    let mut diameter = 0.0f64;
    for x in [-0.9, -0.5, 0.0, 0.3, 0.8] {
        diameter = diameter.max((harmonic_measure_arc(c(x, 0.0), &upper)? - 0.5).abs());
    }
    let samples = beurling_suite(grid)?;
    let worst = samples.iter().map(|s| s.product).fold(0.0, f64::max);
    let monotone = suite_monotone(&samples);
    Ok((
        origin <= 1e-10 && diameter <= 1e-10 && samples.len() >= 20 && worst <= PRODUCT_BOUND && monotone,
        format!(
            "origin {origin:.1e}, diameter {diameter:.1e}, {} configurations, max ω·e^(πλ) = {worst:.4}, monotone {monotone}",
            samples.len()
        ),
    ))
}

/// One row of the catalog sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub name: &'static str,
    pub nontangential: bool,
    pub regular: bool,
    pub certified: bool,
    pub bounded: bool,
}

impl SweepRow {
    pub fn consistent(&self) -> bool {
        let nt = self.nontangential && self.regular;
        nt == self.certified && self.certified == self.bounded
    }
}

/// Classification, regularity, certificate and ratio verdict of every
/// catalog orbit over `[0, t_max]`.
pub fn catalog_sweep(t_max: f64) -> Result<Vec<SweepRow>> {
    catalog()
        .iter()
        .map(|entry| {
            let model = entry.model()?;
            let orbit = backward_orbit(&model, entry.z0()?, t_max, 0.5)?;
            Ok(SweepRow {
                name: entry.name,
                nontangential: classify_orbit(&model, &orbit)?.verdict == ConvergenceVerdict::NonTangential,
                regular: hyperbolic_step(&model, &orbit, 0.5 * t_max)?.regular,
                certified: certify(&model, &orbit, &default_pair_grid(t_max))?.verdict.is_certified(),
                bounded: ratio_series(&model, &orbit)?.verdict.is_bounded(),
            })
        })
        .collect()
}

fn sweep() -> Result<(bool, String)> {
    let rows = catalog_sweep(SWEEP_T_MAX)?;
    let bad: Vec<&str> = rows.iter().filter(|r| !r.consistent()).map(|r| r.name).collect();
    let nt = rows.iter().filter(|r| r.certified).count();
    Ok((
        bad.is_empty(),
        format!("{} orbits, {nt} certified, counterexamples: {}", rows.len(), if bad.is_empty() { "none".into() } else { bad.join(" ") }),
    ))
}

/// Runs the battery. `grid` is the Grötzsch grid; the Beurling suite runs
/// on [`SUITE_GRID`].
pub fn run_suite(grid: usize, seed: u64) -> Vec<CriterionResult> {
    let checks: Vec<(&'static str, Box<dyn Fn() -> Result<(bool, String)>>)> = vec![
        ("semigroup axioms", Box::new(move || semigroup_axioms(seed))),
        ("backward-orbit identity", Box::new(identity_on_catalog)),
        ("density sandwich and distance lemma", Box::new(move || density_and_distance(seed))),
        ("strip ideal case", Box::new(strip_ideal)),
        ("twoslit explicit constants", Box::new(twoslit_constants)),
        ("halfplane refutation", Box::new(halfplane_refuted)),
        ("spectral values", Box::new(spectral_values)),
        ("generator", Box::new(move || generator_checks(seed))),
        ("conformal invariants", Box::new(move || invariants(grid))),
        ("harmonic measure and Beurling", Box::new(|| harmonic(SUITE_GRID))),
        ("catalog sweep", Box::new(sweep)),
    ];
    checks
        .into_iter()
        .map(|(name, check)| match check() {
            Ok((passed, detail)) => CriterionResult { name, passed, detail },
            Err(e) => CriterionResult { name, passed: false, detail: format!("error: {e}") },
        })
        .collect()
}
