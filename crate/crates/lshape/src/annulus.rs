//! Pairing of the radial Beltrami form `(z²/|z|²) dz̄/dz` against holomorphic
//! quadratic differentials on a round annulus.
//!
//! For `ψ = f dz²` with `f` holomorphic on `{1/r0 < |z| < r0}` the pairing
//! reduces in polar coordinates to `2 I log r0`, where `I` is the angular
//! average of `g(z) = z² f(z)` over any circle in the annulus. Only the
//! Laurent coefficient of `z^{-2}` survives, so `I = 2π c_{-2}`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::quad::composite_gauss_nodes;
use crate::{Error, Result};

/// The annulus `{ 1/r0 < |z| < r0 }`, `r0 > 1`.
#[derive(Debug, Clone, Copy)]
pub struct RoundAnnulus {
    r0: f64,
}

impl RoundAnnulus {
    pub fn new(r0: f64) -> Result<Self> {
        if !(r0.is_finite() && r0 > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "annulus outer radius must exceed 1, got {r0}"
            )));
        }
        Ok(Self { r0 })
    }

    pub fn outer_radius(&self) -> f64 {
        self.r0
    }

    pub fn contains_radius(&self, rho: f64) -> bool {
        rho > 1.0 / self.r0 && rho < self.r0
    }
}

/// A quadratic differential `f dz²` with `f` a finite Laurent polynomial.
#[derive(Debug, Clone, Default)]
pub struct LaurentDifferential {
    coeffs: BTreeMap<i32, Complex64>,
}

impl LaurentDifferential {
    pub fn new(coeffs: impl IntoIterator<Item = (i32, Complex64)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            if c != Complex64::new(0.0, 0.0) {
                *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        Self { coeffs: map }
    }

    pub fn monomial(k: i32, c: Complex64) -> Self {
        Self::new([(k, c)])
    }

    pub fn coefficient(&self, k: i32) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    /// Largest absolute exponent present (0 for the zero differential).
    pub fn max_degree(&self) -> i32 {
        self.coeffs
            .keys()
            .map(|k| k.abs())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(k, c)| c * z.powi(*k))
            .sum()
    }

    /// L¹ norm over the annulus, for diagnostics of the decay check.
    pub fn l1_norm(&self, ann: &RoundAnnulus) -> f64 {
        let nodes = pairing_nodes(ann);
        let mut acc = 0.0;
        for &(rho, wr) in &nodes.radial {
            for &(theta, wt) in &nodes.angular {
                let z = Complex64::from_polar(rho, theta);
                acc += self.eval(z).norm() * rho * wr * wt;
            }
        }
        acc
    }
}

struct PolarNodes {
    radial: Vec<(f64, f64)>,
    angular: Vec<(f64, f64)>,
}

fn pairing_nodes(ann: &RoundAnnulus) -> PolarNodes {
    // Trapezoid in θ is exact for trigonometric polynomials once the node
    // count exceeds the degree span; 256 covers every differential used here
    // with a wide margin. Composite Gauss in ρ.
    let n_theta = 256usize;
    let wt = 2.0 * std::f64::consts::PI / n_theta as f64;
    let angular = (0..n_theta)
        .map(|i| (wt * i as f64, wt))
        .collect();
    let radial = composite_gauss_nodes(1.0 / ann.r0, ann.r0, 24);
    PolarNodes { radial, angular }
}

/// Two-dimensional polar quadrature of `∫ (z²/|z|²) f(z) dx dy` over the
/// annulus.
pub fn pair_mu_phi(ann: &RoundAnnulus, d: &LaurentDifferential) -> Result<Complex64> {
    if 2 * (d.max_degree() as usize + 4) >= 256 {
        return Err(Error::InvalidParameter(format!(
            "Laurent degree {} too large for the angular rule",
            d.max_degree()
        )));
    }
    let nodes = pairing_nodes(ann);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(rho, wr) in &nodes.radial {
        let mut ring = Complex64::new(0.0, 0.0);
        for &(theta, wt) in &nodes.angular {
            let z = Complex64::from_polar(rho, theta);
            let phase = Complex64::from_polar(1.0, 2.0 * theta);
            ring += phase * d.eval(z) * wt;
        }
        acc += ring * rho * wr;
    }
    Ok(acc)
}

/// Angular average `I = ∫_0^{2π} g(ρ e^{iθ}) dθ` of `g(z) = z² f(z)`;
/// independent of `ρ` by holomorphy.
pub fn angular_average(ann: &RoundAnnulus, d: &LaurentDifferential, rho: f64) -> Result<Complex64> {
    if !ann.contains_radius(rho) {
        return Err(Error::OutOfDomain(format!(
            "radius {rho} outside ({}, {})",
            1.0 / ann.outer_radius(),
            ann.outer_radius()
        )));
    }
    let n_theta = 256usize;
    let wt = 2.0 * std::f64::consts::PI / n_theta as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n_theta {
        let theta = wt * i as f64;
        let z = Complex64::from_polar(rho, theta);
        acc += z * z * d.eval(z) * wt;
    }
    Ok(acc)
}

/// One row of the decay check: the pairing against one element of a sequence,
/// with the identity prediction `2 I log r0` and the element's L¹ norm.
#[derive(Debug, Clone)]
pub struct DecayRow {
    pub index: usize,
    pub c_minus_2: Complex64,
    pub pairing: Complex64,
    pub predicted: Complex64,
    pub l1_norm: f64,
}

/// Pairs every element of a sequence of differentials, reporting how the
/// pairing tracks the `z^{-2}` coefficient.
pub fn decay_check(ann: &RoundAnnulus, seq: &[LaurentDifferential]) -> Result<Vec<DecayRow>> {
    let scale = 4.0 * std::f64::consts::PI * ann.outer_radius().ln();
    seq.iter()
        .enumerate()
        .map(|(index, d)| {
            let pairing = pair_mu_phi(ann, d)?;
            let c = d.coefficient(-2);
            Ok(DecayRow {
                index,
                c_minus_2: c,
                pairing,
                predicted: c * scale,
                l1_norm: d.l1_norm(ann),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn central_monomial_gives_log_area() {
        let ann = RoundAnnulus::new(2.0).unwrap();
        let d = LaurentDifferential::monomial(-2, c(1.0, 0.0));
        let v = pair_mu_phi(&ann, &d).unwrap();
        let expect = 4.0 * PI * 2.0f64.ln();
        assert!((v.re - expect).abs() < 1e-10 && v.im.abs() < 1e-10, "got {v}");
    }

    #[test]
    fn other_monomials_vanish() {
        let ann = RoundAnnulus::new(2.0).unwrap();
        for k in [-6, -3, -1, 0, 1, 3, 7] {
            let d = LaurentDifferential::monomial(k, c(1.3, -0.7));
            let v = pair_mu_phi(&ann, &d).unwrap();
            assert!(v.norm() < 1e-10, "k = {k}: got {v}");
        }
    }

    #[test]
    fn angular_average_is_radius_free() {
        let ann = RoundAnnulus::new(2.0).unwrap();
        let d = LaurentDifferential::new([
            (-4, c(0.3, 0.1)),
            (-2, c(1.5, -2.0)),
            (0, c(-0.2, 0.0)),
            (3, c(0.0, 0.9)),
        ]);
        let i1 = angular_average(&ann, &d, 1.1).unwrap();
        let i2 = angular_average(&ann, &d, 1.9).unwrap();
        assert!((i1 - i2).norm() < 1e-10);
        let expect = c(1.5, -2.0) * 2.0 * PI;
        assert!((i1 - expect).norm() < 1e-10);
        assert!(angular_average(&ann, &d, 2.5).is_err());
    }

    #[test]
    fn identity_for_mixed_polynomial() {
        let ann = RoundAnnulus::new(1.7).unwrap();
        let d = LaurentDifferential::new([
            (-5, c(2.0, 1.0)),
            (-2, c(0.25, 0.5)),
            (2, c(-3.0, 0.0)),
        ]);
        let v = pair_mu_phi(&ann, &d).unwrap();
        let i = angular_average(&ann, &d, 1.2).unwrap();
        let expect = i * 2.0 * ann.outer_radius().ln();
        assert!((v - expect).norm() <= 1e-8 * expect.norm().max(1.0));
    }

    #[test]
    fn decay_tracks_central_coefficient() {
        let ann = RoundAnnulus::new(2.0).unwrap();
        // c_{-2} shrinks like 1/n while the z^5 part grows like n: the L¹
        // norm grows but the pairing still decays.
        let seq: Vec<_> = (1..=8)
            .map(|n| {
                LaurentDifferential::new([
                    (-2, c(1.0 / n as f64, 0.0)),
                    (5, c(n as f64, 0.0)),
                ])
            })
            .collect();
        let rows = decay_check(&ann, &seq).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].pairing.norm() < w[0].pairing.norm());
            assert!(w[1].l1_norm > w[0].l1_norm);
        }
        for row in &rows {
            assert!((row.pairing - row.predicted).norm() < 1e-9);
        }
        // zero central coefficient kills the pairing outright
        let d = LaurentDifferential::new([(-7, c(4.0, 0.0)), (1, c(0.0, 2.0))]);
        assert!(pair_mu_phi(&ann, &d).unwrap().norm() < 1e-10);
    }
}
