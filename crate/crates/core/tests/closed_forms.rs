//! Catalog values against closed forms evaluated independently in test code.

use std::f64::consts::PI;

use koenigs_lab::boundary::delta_split;
use koenigs_lab::certify::{certify, default_pair_grid, paper_constants, QgVerdict};
use koenigs_lab::domain::{build_model, FixedPointKind, KoenigsModel, ModelSpec};
use koenigs_lab::metric::{density_omega, distance_lemma_bounds, hyp_length, k_disk, k_omega};
use koenigs_lab::semigroup::{backward_orbit, forward_trajectory, generator, hyperbolic_step, phi, spectral_value};
use koenigs_lab::{Complex, Error};

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

fn strip_h(z: Complex) -> Complex {
    ((1.0 + z) / (1.0 - z)).ln()
}

fn halfplane_h(z: Complex) -> Complex {
    let i = c(0.0, 1.0);
    i * (1.0 - z) / (1.0 + z) - i
}

/// Real root of `ζ + e^ζ = w` by bisection.
fn twoslit_zeta(w: f64) -> f64 {
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

#[test]
fn koenigs_maps_match_closed_forms() {
    let (s, h) = (strip(), halfplane());
    for z in [c(0.5, 0.0), c(-0.3, 0.4), c(0.1, -0.8), c(0.0, 0.0)] {
        assert!((s.h_eval(z).unwrap() - strip_h(z)).norm() < 1e-13, "{z}");
        assert!((h.h_eval(z).unwrap() - halfplane_h(z)).norm() < 1e-13, "{z}");
        let dz = 1e-6;
        let fd = (strip_h(z + dz) - strip_h(z - dz)) / (2.0 * dz);
        assert!((s.h_deriv(z).unwrap() - fd).norm() < 1e-8);
    }
    assert!((s.h_eval(c(0.5, 0.0)).unwrap().re - 3f64.ln()).abs() < 1e-15);
    assert!((s.h_deriv(c(0.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
    assert!((h.h_deriv(c(0.0, 0.0)).unwrap() - c(0.0, -2.0)).norm() < 1e-15);
    assert!((s.h_inverse(c(2.0, 0.0)).unwrap() - c(1f64.tanh(), 0.0)).norm() < 1e-15);
    assert!((h.h_inverse(c(2.0, 0.0)).unwrap() - c(-0.5, 0.5)).norm() < 1e-15);
}

#[test]
fn catalog_metadata() {
    let s = strip();
    assert_eq!(s.tau, c(1.0, 0.0));
    let sigma = s.repelling_points().next().unwrap();
    assert_eq!(sigma.point, c(-1.0, 0.0));
    assert!(matches!(sigma.kind, FixedPointKind::Repelling { mu } if (mu + 1.0).abs() < 1e-15));

    let h = halfplane();
    assert_eq!(h.tau, c(-1.0, 0.0));
    assert_eq!(h.repelling_points().count(), 0);

    let t = twoslit();
    let sigma = t.repelling_points().next().unwrap();
    assert!((sigma.point - c(-1.0, 0.0)).norm() < 1e-12);
    assert!(matches!(sigma.kind, FixedPointKind::Repelling { mu } if (mu + 0.5).abs() < 1e-15));
    assert_eq!(t.maximal_strip.unwrap().amplitude(), 2.0 * PI);
}

#[test]
fn twoslit_real_axis() {
    let t = twoslit();
    for w in [-5.0, -1.0, -0.3, 0.0, 2.0] {
        let z = t.h_inverse(c(w, 0.0)).unwrap();
        assert!(z.im.abs() < 1e-15 && z.re.abs() < 1.0);
        assert!((t.h_eval(z).unwrap() - c(w, 0.0)).norm() < 1e-12, "{w}");
    }
    assert!((t.boundary_distance(c(-3.0, 0.0)).unwrap() - PI).abs() < 1e-15);
    assert!((t.boundary_distance(c(0.0, 0.0)).unwrap() - (1.0 + PI * PI).sqrt()).abs() < 1e-15);
}

#[test]
fn flows_match_closed_forms() {
    let (s, h) = (strip(), halfplane());
    assert!((phi(&s, 2.0, c(0.0, 0.0)).unwrap() - c(1f64.tanh(), 0.0)).norm() < 1e-15);
    assert!((phi(&h, 2.0, c(0.0, 0.0)).unwrap() - c(-0.5, 0.5)).norm() < 1e-15);

    let o = backward_orbit(&s, c(0.0, 0.0), 50.0, 0.25).unwrap();
    for (t, z) in o.times.iter().zip(&o.disk_points) {
        assert!((z - c(-(t / 2.0).tanh(), 0.0)).norm() < 1e-15, "{t}");
    }
    assert_eq!(o.landing, Some(c(-1.0, 0.0)));

    let o = backward_orbit(&h, c(0.0, 0.0), 50.0, 0.25).unwrap();
    for (t, z) in o.times.iter().zip(&o.disk_points) {
        let expected = c(0.0, -t) / c(2.0, *t);
        assert!((z - expected).norm() < 1e-14, "{t}");
    }
    assert_eq!(o.landing, Some(c(-1.0, 0.0)));

    let f = forward_trajectory(&s, c(0.0, 0.0), 50.0, 0.5).unwrap();
    assert!(f.disk_points.windows(2).all(|p| p[1].re >= p[0].re && p[0].im == 0.0));
    assert_eq!(f.landing, Some(c(1.0, 0.0)));
}

#[test]
fn slit_blocks_backward_orbit() {
    // Ω translated so that h(z0) lies on the slit's line, right of the tip
    let spec = ModelSpec::SlitPlane { x0: -1.0, y0: 0.0 };
    let m = build_model(&spec).unwrap();
    match backward_orbit(&m, c(0.0, 0.0), 5.0, 0.5) {
        Err(Error::BackwardTimeExceeded { t_star }) => assert!((t_star - 1.0).abs() < 1e-12),
        other => panic!("{other:?}"),
    }
}

#[test]
fn generator_closed_forms() {
    let s = strip();
    assert!((generator(&s, c(0.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
    // G = (1 - z²)/2 for the strip model
    for z in [c(0.3, 0.2), c(-0.7, 0.1)] {
        assert!((generator(&s, z).unwrap() - (1.0 - z * z) / 2.0).norm() < 1e-14);
    }
    // radial limit at the repelling point of the two-slit model
    let t = twoslit();
    let g: Vec<f64> = [0.9, 0.99, 0.999, 0.9999].iter().map(|r| generator(&t, c(-r, 0.0)).unwrap().norm()).collect();
    assert!(g.windows(2).all(|p| p[1] < p[0]) && g[3] < 1e-3);
}

#[test]
fn metric_closed_forms() {
    assert!((k_disk(c(0.0, 0.0), c(0.5, 0.0)).unwrap() - 0.5f64.atanh()).abs() < 1e-15);
    let s = strip();
    for x in [-7.0, 0.0, 3.0] {
        assert!((density_omega(&s, c(x, 0.0)).unwrap() - 0.5).abs() < 1e-15);
    }
    let h = halfplane();
    for w in [c(0.0, 0.0), c(-3.0, 2.0), c(5.0, -0.5)] {
        assert!((density_omega(&h, w).unwrap() - 0.5 / (w.im + 1.0)).abs() < 1e-13, "{w}");
    }
    assert!((k_omega(&s, c(0.0, 0.0), c(-9.0, 0.0)).unwrap() - 4.5).abs() < 1e-14);

    let b = distance_lemma_bounds(&s, c(0.0, 0.0), c(-10.0, 0.0), &[c(0.0, 0.0), c(-10.0, 0.0)]).unwrap();
    assert!((b.lower - 0.25 * (1.0 + 20.0 / PI).ln()).abs() < 1e-14);
    assert!((b.k - 5.0).abs() < 1e-14);
    assert!((b.upper - 20.0 / PI).abs() < 1e-8);
}

#[test]
fn orbit_lengths_and_steps() {
    let s = strip();
    let o = backward_orbit(&s, c(0.0, 0.0), 100.0, 0.5).unwrap();
    assert!((hyp_length(&s, &o, 0.0, 100.0).unwrap().value - 50.0).abs() < 1e-8);
    let step = hyperbolic_step(&s, &o, 50.0).unwrap();
    assert!(step.tail_values.iter().all(|v| (v - 0.5).abs() < 1e-12));

    let h = halfplane();
    let o = backward_orbit(&h, c(0.0, 0.0), 100.0, 0.5).unwrap();
    let step = hyperbolic_step(&h, &o, 50.0).unwrap();
    assert!(step.regular && step.v <= 0.5);
}

#[test]
fn halfplane_length_and_distance() {
    // l(0, T) = T/2 on the level line; cosh(2k) = 1 + T²/2
    let h = halfplane();
    let t_max = 1000.0;
    let o = backward_orbit(&h, c(0.0, 0.0), t_max, 0.5).unwrap();
    assert!((hyp_length(&h, &o, 0.0, t_max).unwrap().value - t_max / 2.0).abs() < 1e-6);
    let k = k_omega(&h, c(0.0, 0.0), c(-t_max, 0.0)).unwrap();
    assert!((k - 0.5 * (1.0 + t_max * t_max / 2.0).acosh()).abs() < 1e-12);
    let cert = certify(&h, &o, &default_pair_grid(t_max)).unwrap();
    let top = cert.pairs.iter().find(|p| p.t1 == 0.0 && p.t2 == t_max).unwrap();
    assert!((top.l - 500.0).abs() < 1e-6 && (top.k - k).abs() < 1e-12);
    assert!(matches!(cert.verdict, QgVerdict::RefutedGrowth { .. }));
}

#[test]
fn twoslit_explicit_constants() {
    // A = 4ε/c, B = 8ε²/(cd) + l(γ; [0, t0]) with ε = c = d = π, t0 = 1
    let t = twoslit();
    let o = backward_orbit(&t, c(0.0, 0.0), 200.0, 0.5).unwrap();
    let pc = paper_constants(&t, &o).unwrap();
    for (got, want) in [(pc.epsilon, PI), (pc.c, PI), (pc.d, PI), (pc.t0, 1.0), (pc.x, -1.0), (pc.y_plus, PI)] {
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }
    // λ_Ω = 1/(4(1 + e^ζ)) and dw = (1 + e^ζ) dζ on the real axis
    let l01 = (twoslit_zeta(0.0) - twoslit_zeta(-1.0)) / 4.0;
    assert!((pc.l_t0 - l01).abs() < 1e-9, "{} vs {l01}", pc.l_t0);
    assert!((pc.a - 4.0 * pc.epsilon / pc.c).abs() < 1e-15);
    assert!((pc.b - (8.0 * pc.epsilon.powi(2) / (pc.c * pc.d) + l01)).abs() < 1e-9);

    let cert = certify(&t, &o, &default_pair_grid(200.0)).unwrap();
    assert!(pc.validate(&cert.pairs) <= 1e-6);
    assert!(matches!(cert.verdict, QgVerdict::Certified { a, .. } if a <= 4.0));
}

#[test]
fn boundary_distances() {
    let t = twoslit();
    let (p, m) = delta_split(&t, c(-3.0, 0.0), 0.0).unwrap();
    assert!((p - PI).abs() < 1e-15 && (m - PI).abs() < 1e-15);
    let r = (1.0 + PI * PI).sqrt();
    let (p, m) = delta_split(&t, c(0.0, 0.0), 0.0).unwrap();
    assert!((p - r).abs() < 1e-15 && (m - r).abs() < 1e-15);
}

#[test]
fn spectral_values_match_amplitudes() {
    for (m, mu) in [(strip(), -1.0), (twoslit(), -0.5)] {
        let sigma = m.repelling_points().next().unwrap().point;
        let sv = spectral_value(&m, sigma).unwrap();
        assert!(((sv.mu - mu) / mu).abs() < 1e-3);
        assert!(((sv.mu_amplitude.unwrap() - mu) / mu).abs() < 1e-12);
        // e^{-2μ} = (e^{-μ})² across the sampled times
        let at = |t: f64| sv.per_time.iter().find(|p| p.0 == t).unwrap().1;
        let ratio = (-2.0 * at(2.0)).exp() / (-at(1.0)).exp().powi(2);
        assert!((ratio - 1.0).abs() < 1e-3);
    }
}
