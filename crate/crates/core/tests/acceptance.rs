//! Acceptance battery: one PASS/FAIL line per criterion, each checked
//! against oracles evaluated here rather than inside the library.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use koenigs_lab::boundary::{ratio_series, RatioVerdict};
use koenigs_lab::certify::{certify, default_pair_grid, minimal_b, paper_constants, QgVerdict};
use koenigs_lab::classify::{classify_orbit, ConvergenceVerdict, STOLZ_OPENING};
use koenigs_lab::invariants::{beurling_suite, extremal_distance_grotzsch, grotzsch_mu, harmonic_measure_arc, Arc};
use koenigs_lab::metric::{default_path, density_omega, distance_lemma_bounds, hyp_length};
use koenigs_lab::report::invariant_rows;
use koenigs_lab::semigroup::{
    backward_orbit, backward_orbit_identity_check, generator, generator_along, generator_ode_residual, hyperbolic_step,
    lipschitz_check, phi, spectral_value,
};
use koenigs_lab::suite::catalog_sweep;
use koenigs_lab::{build_model, catalog, Complex, KoenigsModel, ModelSpec};

const SAMPLES: usize = 1000;
const SEED: u64 = 20;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn strip() -> KoenigsModel {
    build_model(&ModelSpec::Strip { a: -PI / 2.0, b: PI / 2.0 }).unwrap()
}

fn twoslit() -> KoenigsModel {
    build_model(&ModelSpec::TwoSlit { x0: -1.0, halfgap: PI }).unwrap()
}

fn halfplane() -> KoenigsModel {
    build_model(&ModelSpec::HalfPlane { a: -1.0 }).unwrap()
}

fn models() -> Vec<KoenigsModel> {
    let mut specs: Vec<ModelSpec> = catalog().into_iter().map(|e| e.spec).collect();
    specs.dedup();
    specs.iter().map(|s| build_model(s).unwrap()).collect()
}

fn disk_point(rng: &mut ChaCha8Rng, r_max: f64) -> Complex {
    Complex::from_polar(r_max * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

/// Strip flow `tanh(atanh z + t/2)`.
fn strip_flow(t: f64, z: Complex) -> Complex {
    (z.atanh() + t / 2.0).tanh()
}

/// `k` between `-t1` and `-t2` in `{Im w > -1}`: `cosh 2k = 1 + d²/2`.
fn halfplane_k(t1: f64, t2: f64) -> f64 {
    0.5 * (1.0 + (t2 - t1).powi(2) / 2.0).acosh()
}

/// Real root of `ζ + e^ζ = w`.
fn zeta(w: f64) -> f64 {
    let (mut lo, mut hi) = (w - 1.0, w.max(0.0) + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid + mid.exp() < w {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `μ(r) = (π/2) K(r')/K(r)` with `K(m) = π / (2 AGM(1, √(1-m²)))`.
fn mu_oracle(r: f64) -> f64 {
    fn k(m: f64) -> f64 {
        let (mut a, mut g) = (1.0f64, (1.0 - m * m).sqrt());
        for _ in 0..40 {
            let next = 0.5 * (a + g);
            g = (a * g).sqrt();
            a = next;
        }
        PI / (2.0 * a)
    }
    0.5 * PI * k((1.0 - r * r).sqrt()) / k(r)
}

fn semigroup_axioms() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut id, mut law) = (0.0f64, 0.0f64);
    for m in models() {
        for _ in 0..SAMPLES {
            let z = disk_point(&mut rng, 0.9);
            let (t, s) = (10.0 * rng.gen::<f64>(), 10.0 * rng.gen::<f64>());
            id = id.max((phi(&m, 0.0, z).unwrap() - z).norm());
            let composed = phi(&m, t, phi(&m, s, z).unwrap()).unwrap();
            law = law.max((phi(&m, t + s, z).unwrap() - composed).norm());
        }
    }
    let s = strip();
    let mut closed = 0.0f64;
    for _ in 0..SAMPLES {
        let z = disk_point(&mut rng, 0.9);
        let t = 10.0 * rng.gen::<f64>();
        closed = closed.max((phi(&s, t, z).unwrap() - strip_flow(t, z)).norm());
    }
    (
        id <= 1e-12 && law <= 1e-9 && closed <= 1e-12,
        format!("|φ_0 - id| {id:.1e}, law {law:.1e}, strip closed form {closed:.1e}"),
    )
}

fn backward_identity() -> (bool, String) {
    let mut worst = 0.0f64;
    for entry in catalog() {
        let m = entry.model().unwrap();
        let orbit = backward_orbit(&m, entry.z0().unwrap(), 200.0, 0.5).unwrap();
        worst = worst.max(backward_orbit_identity_check(&m, &orbit, 400).unwrap());
    }
    let s = strip();
    let orbit = backward_orbit(&s, c(0.0, 0.0), 200.0, 0.5).unwrap();
    let closed = orbit
        .times
        .iter()
        .zip(&orbit.disk_points)
        .map(|(t, z)| (z - c(-(t / 2.0).tanh(), 0.0)).norm())
        .fold(0.0, f64::max);
    (worst <= 1e-9 && closed <= 1e-12, format!("identity {worst:.1e}, strip γ(t) = -tanh(t/2) to {closed:.1e}"))
}

fn density_and_distance() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut sandwich, mut lemma, mut n) = (0, 0, 0);
    for m in models() {
        for _ in 0..SAMPLES {
            let w1 = m.h_eval(disk_point(&mut rng, 0.95)).unwrap();
            let w2 = m.h_eval(disk_point(&mut rng, 0.95)).unwrap();
            let d = m.boundary_distance(w1).unwrap();
            let lam = density_omega(&m, w1).unwrap();
            if !(0.25 / d <= lam * (1.0 + 1e-12) && lam <= (1.0 + 1e-12) / d) {
                sandwich += 1;
            }
            let b = distance_lemma_bounds(&m, w1, w2, &default_path(&m, w1, w2)).unwrap();
            if !(b.lower <= b.k + 1e-12 && b.k <= b.upper + 1e-8) {
                lemma += 1;
            }
            n += 1;
        }
    }
    // closed-form densities: 1/(2 cos y) on the strip, 1/(2(y+1)) on the half-plane
    let (s, h) = (strip(), halfplane());
    let mut closed = 0.0f64;
    for _ in 0..SAMPLES {
        let w = c(20.0 * rng.gen::<f64>() - 10.0, 3.0 * rng.gen::<f64>() - 1.5);
        closed = closed.max((density_omega(&s, w).unwrap() * 2.0 * w.im.cos() - 1.0).abs());
        let wh = c(w.re, w.im.abs());
        closed = closed.max((density_omega(&h, wh).unwrap() * 2.0 * (wh.im + 1.0) - 1.0).abs());
    }
    (
        sandwich == 0 && lemma == 0 && closed <= 1e-10,
        format!("{n} samples, {sandwich} sandwich and {lemma} lemma violations, closed-form densities {closed:.1e}"),
    )
}

fn strip_ideal() -> (bool, String) {
    let s = strip();
    let orbit = backward_orbit(&s, c(0.0, 0.0), 200.0, 0.5).unwrap();
    let cert = certify(&s, &orbit, &default_pair_grid(200.0)).unwrap();
    // l = k = |t2 - t1|/2 along the centre line
    let pairs = cert.pairs.iter().map(|p| (p.l - (p.t2 - p.t1) / 2.0).abs().max((p.k - (p.t2 - p.t1) / 2.0).abs())).fold(0.0, f64::max);
    let certified = matches!(cert.verdict, QgVerdict::Certified { a, b } if a == 1.0 && b <= 1e-6);
    let step = hyperbolic_step(&s, &orbit, 100.0).unwrap();
    let v = step.tail_values.iter().map(|v| (v - 0.5).abs()).fold(0.0, f64::max);
    let class = classify_orbit(&s, &orbit).unwrap().verdict;
    let ratio = ratio_series(&s, &orbit).unwrap();
    let r = ratio.ratios.iter().map(|q| (q - 1.0).abs()).fold(0.0, f64::max);
    (
        certified && pairs <= 1e-8 && v <= 1e-6 && class == ConvergenceVerdict::NonTangential && r <= 1e-9,
        format!("{} (A, B) = {:?}, pairs vs t/2 {pairs:.1e}, |V - 0.5| {v:.1e}, {class:?}, |ratio - 1| {r:.1e}", cert.verdict.name(), cert.constants()),
    )
}

fn twoslit_constants() -> (bool, String) {
    let t = twoslit();
    let orbit = backward_orbit(&t, c(0.0, 0.0), 200.0, 0.5).unwrap();
    let pc = paper_constants(&t, &orbit).unwrap();
    // λ_Ω = 1/(4(1 + e^ζ)) and dw = (1 + e^ζ) dζ on the real axis
    let l01 = (zeta(0.0) - zeta(-1.0)) / 4.0;
    let l_direct = hyp_length(&t, &orbit, 0.0, 1.0).unwrap().value;
    let (a, b) = (4.0 * PI / PI, 8.0 * PI * PI / (PI * PI) + l01);
    let cert = certify(&t, &orbit, &default_pair_grid(200.0)).unwrap();
    let residual = cert.pairs.iter().map(|p| p.l - a * p.k - b).fold(f64::NEG_INFINITY, f64::max);
    let ratio = ratio_series(&t, &orbit).unwrap();
    let tail = ratio
        .times
        .iter()
        .zip(&ratio.ratios)
        .filter(|(s, _)| **s >= 100.0)
        .map(|(_, q)| (q - 1.0).abs())
        .fold(0.0, f64::max);
    let ok = (pc.a - a).abs() <= 1e-12
        && (pc.b - b).abs() <= 1e-8
        && (l_direct - l01).abs() <= 1e-8
        && residual <= 1e-6
        && ratio.verdict.is_bounded()
        && tail <= 1e-3;
    (ok, format!("A = {a}, B = {b:.6} (l = {l01:.6}), residual {residual:.3e}, {:?}, tail |ratio - 1| {tail:.1e}", ratio.verdict))
}

fn halfplane_refuted() -> (bool, String) {
    let h = halfplane();
    let t_max = 1000.0;
    let orbit = backward_orbit(&h, c(0.0, 0.0), t_max, 0.5).unwrap();
    let grid = default_pair_grid(t_max);
    let cert = certify(&h, &orbit, &grid).unwrap();
    let mut b_oracle = 0.0f64;
    for (i, &t1) in grid.iter().enumerate() {
        for &t2 in &grid[i + 1..] {
            b_oracle = b_oracle.max((t2 - t1) / 2.0 - 10.0 * halfplane_k(t1, t2));
        }
    }
    let b10 = minimal_b(&cert.pairs, 10.0);
    let ratio = ratio_series(&h, &orbit).unwrap().verdict;
    let refuted = matches!(cert.verdict, QgVerdict::RefutedGrowth { .. });
    (
        refuted && b10 >= 400.0 && (b10 - b_oracle).abs() <= 1e-6 && ratio == RatioVerdict::DivergesToInfinity,
        format!("{}, B(A=10) = {b10:.3} (closed form {b_oracle:.3}), {ratio:?}", cert.verdict.name()),
    )
}

fn spectral_values() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, m, amplitude) in [("strip", strip(), PI), ("twoslit", twoslit(), TAU)] {
        let mu = -PI / amplitude;
        let sigma = m.repelling_points().next().unwrap().point;
        let sv = spectral_value(&m, sigma).unwrap();
        let from_amp = sv.mu_amplitude.unwrap_or(f64::NAN);
        ok &= ((sv.mu - mu) / mu).abs() <= 1e-3 && ((from_amp - mu) / mu).abs() <= 1e-3;
        detail.push(format!("{name} {:.6} / {from_amp:.6} vs {mu}", sv.mu));
    }
    (ok, detail.join(", "))
}

fn generator_checks() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut ode = 0.0f64;
    for m in models() {
        for _ in 0..100 {
            let z = disk_point(&mut rng, 0.9);
            ode = ode.max(generator_ode_residual(&m, z, 3.0 * rng.gen::<f64>(), 1e-7).unwrap());
        }
    }
    let s = strip();
    let mut closed = 0.0f64;
    for _ in 0..SAMPLES {
        let z = disk_point(&mut rng, 0.99);
        closed = closed.max((generator(&s, z).unwrap() - (1.0 - z * z) / 2.0).norm());
    }
    let (mut last, mut lip) = (0.0f64, f64::NEG_INFINITY);
    for m in [strip(), twoslit()] {
        let orbit = backward_orbit(&m, c(0.0, 0.0), 200.0, 0.5).unwrap();
        last = last.max(*generator_along(&m, &orbit).last().unwrap());
        lip = lip.max(lipschitz_check(&m, &orbit, STOLZ_OPENING).unwrap().max_violation);
    }
    (
        ode <= 1e-5 && closed <= 1e-12 && last <= 1e-2 && lip <= 1e-9,
        format!("ODE residual {ode:.1e}, strip G closed form {closed:.1e}, |G(γ(200))| {last:.1e}, Lipschitz {lip:.1e}"),
    )
}

fn invariants() -> (bool, String) {
    let sym = (grotzsch_mu(FRAC_1_SQRT_2).unwrap() - PI / 2.0).abs();
    let mut product = 0.0f64;
    let mut oracle = 0.0f64;
    for k in 1..=9 {
        let r = k as f64 / 10.0;
        let rp = (1.0 - r * r).sqrt();
        product = product.max((grotzsch_mu(r).unwrap() * grotzsch_mu(rp).unwrap() - PI * PI / 4.0).abs());
        oracle = oracle.max((grotzsch_mu(r).unwrap() - mu_oracle(r)).abs());
    }
    let radii = [0.3, 0.5, 0.7];
    let rows = invariant_rows(&radii, 512).unwrap();
    let relerr = rows
        .iter()
        .zip(radii)
        .map(|(row, r)| ((row.lambda_fd - mu_oracle(r) / TAU) / (mu_oracle(r) / TAU)).abs())
        .fold(0.0, f64::max);
    let values: Vec<f64> = (1..=6).map(|k| extremal_distance_grotzsch(10f64.powi(-k)).unwrap()).collect();
    let increasing = values.windows(2).all(|p| p[1] > p[0]);
    (
        sym <= 1e-10 && product <= 1e-9 && oracle <= 1e-12 && relerr <= 0.02 && increasing,
        format!("|μ(1/√2) - π/2| {sym:.1e}, |μμ' - π²/4| {product:.1e}, FD relerr {relerr:.2e} at 512², increasing {increasing}"),
    )
}

fn harmonic() -> (bool, String) {
    let mut origin = 0.0f64;
    for (a, b) in [(0.0, 1.0), (0.3, 2.0), (2.0, 6.0), (5.0, 7.5)] {
        let arc = Arc::new(a, b).unwrap();
        origin = origin.max((harmonic_measure_arc(c(0.0, 0.0), &arc).unwrap() - (b - a) / TAU).abs());
    }
    let upper = Arc::new(0.0, PI).unwrap();
    let diameter = [-0.9, -0.5, 0.0, 0.3, 0.8]
        .iter()
        .map(|x| (harmonic_measure_arc(c(*x, 0.0), &upper).unwrap() - 0.5).abs())
        .fold(0.0, f64::max);
    let samples = beurling_suite(256).unwrap();
    let worst = samples.iter().map(|s| s.omega * (PI * s.lambda).exp()).fold(0.0, f64::max);
    // within a family of nested arcs, larger λ means smaller ω
    let mut sorted = samples.clone();
    sorted.sort_by(|a, b| (a.z.re, a.lambda).partial_cmp(&(b.z.re, b.lambda)).unwrap());
    let monotone = sorted.windows(2).filter(|p| p[0].z == p[1].z).all(|p| p[1].omega <= p[0].omega * 1.02);
    (
        origin <= 1e-10 && diameter <= 1e-10 && samples.len() >= 20 && worst <= 30.0 && monotone,
        format!("origin {origin:.1e}, diameter {diameter:.1e}, {} configurations, max ω·e^(πλ) {worst:.4}, monotone {monotone}", samples.len()),
    )
}

fn sweep() -> (bool, String) {
    // orbits inside a maximal strip land non-tangentially; the rest are tangential
    let expected = [
        ("strip", true),
        ("strip_off_center", true),
        ("halfplane", false),
        ("slitplane_above", false),
        ("slitplane_below", false),
        ("twoslit", true),
        ("twoslit_off_center", true),
        ("twoslit_outside", false),
        ("affine_strip", true),
        ("affine_twoslit", true),
    ];
    let rows = catalog_sweep(4000.0).unwrap();
    let mut bad = Vec::new();
    for row in &rows {
        let want = expected.iter().find(|e| e.0 == row.name).map(|e| e.1);
        let nt = row.nontangential && row.regular;
        if !(Some(nt) == want && nt == row.certified && row.certified == row.bounded) {
            bad.push(row.name);
        }
    }
    (
        bad.is_empty() && rows.len() == expected.len(),
        format!("{} orbits, counterexamples: {}", rows.len(), if bad.is_empty() { "none".into() } else { bad.join(" ") }),
    )
}

fn main() {
    let checks: [(&str, fn() -> (bool, String)); 11] = [
        ("semigroup axioms", semigroup_axioms),
        ("backward-orbit identity", backward_identity),
        ("density sandwich and distance lemma", density_and_distance),
        ("strip ideal case", strip_ideal),
        ("twoslit explicit constants", twoslit_constants),
        ("halfplane refutation", halfplane_refuted),
        ("spectral values", spectral_values),
        ("generator", generator_checks),
        ("conformal invariants", invariants),
        ("harmonic measure and Beurling", harmonic),
        ("catalog sweep", sweep),
    ];
    let mut failed = Vec::new();
    for (name, check) in checks {
        let (passed, detail) = check();
        println!("{} {name}: {detail}", if passed { "PASS" } else { "FAIL" });
        if !passed {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
