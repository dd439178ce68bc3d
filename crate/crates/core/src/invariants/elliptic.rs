//! Complete elliptic integrals and the Grötzsch modulus via the
//! arithmetic-geometric mean.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-15 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// `√(1 - r²)` without cancellation near `r = 1`.
pub fn complementary(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

/// `K(k)` with modulus `k ∈ [0, 1)`.
pub fn ellip_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::OutOfRange(format!("elliptic modulus {k} not in [0, 1)")));
    }
    Ok(PI / (2.0 * agm(1.0, complementary(k))))
}

/// Grötzsch modulus `μ(r) = (π/2) K(r')/K(r)`.
pub fn grotzsch_mu(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::OutOfRange(format!("Grötzsch radius {r} not in (0, 1)")));
    }
    Ok(0.5 * PI * agm(1.0, complementary(r)) / agm(1.0, r))
}

/// Extremal distance between `[0, r]` and the unit circle: `μ(r)/(2π)`.
pub fn extremal_distance_grotzsch(r: f64) -> Result<f64> {
    Ok(grotzsch_mu(r)? / TAU)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    #[test]
    fn symmetric_point() {
        let mu = grotzsch_mu(0.5f64.sqrt()).unwrap();
        assert!((mu - PI / 2.0).abs() < 1e-14);
        assert!((extremal_distance_grotzsch(0.5f64.sqrt()).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn small_r_asymptotics() {
        assert!((grotzsch_mu(0.01).unwrap() - (400f64).ln()).abs() < 1e-4);
        let big = extremal_distance_grotzsch(1e-6).unwrap();
        assert!((big - (4e6f64).ln() / TAU).abs() < 1e-9);
    }

    #[test]
    fn k_matches_quadrature() {
        // K(k) = ∫₀^{π/2} dθ / √(1 - k² sin²θ)
        for k in [0.0, 0.3, 0.8, 0.99] {
            let q = integrate(|t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 1e-13).unwrap();
            assert!((ellip_k(k).unwrap() - q.value).abs() < 1e-12, "{k}");
        }
    }

    #[test]
    fn range_errors() {
        assert!(grotzsch_mu(0.0).is_err());
        assert!(grotzsch_mu(1.0).is_err());
        assert!(ellip_k(1.0).is_err());
    }
}
