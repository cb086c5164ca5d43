//! Reference checks of the side integrals against values computed
//! independently (mpmath tanh-sinh quadrature at 40 digits), and against a
//! complex-arithmetic contour evaluation of the same integrals.

use num_complex::Complex64;

use lshape::quad::{integrate_sqrt_endpoints, QuadratureConfig};
use lshape::sc::{side_functionals, Prevertices};

struct Reference {
    lambda: f64,
    zeta: f64,
    r: f64,
    a: f64,
    b: f64,
    j: f64,
    q: f64,
}

// mpmath, mp.dps = 40, tanh-sinh over the tail charts x = ±1/u
const REFERENCES: [Reference; 4] = [
    Reference {
        lambda: 0.5,
        zeta: 0.0,
        r: 0.3,
        a: 2.220085190932031519566,
        b: 0.6284107348806931125761,
        j: 3.266974840875402640073,
        q: 2.443716816253843055883,
    },
    Reference {
        lambda: 0.2,
        zeta: -0.4,
        r: 0.0,
        a: 2.513792002543830291128,
        b: 0.0,
        j: 2.757105152540878747339,
        q: 1.57537246911937976195,
    },
    Reference {
        lambda: 0.9,
        zeta: 0.1,
        r: 0.0001,
        a: 2.249974789991425560094,
        b: 0.0001765019078928021480671,
        j: 4.113142767828259784744,
        q: 2.715855490555386085954,
    },
    Reference {
        lambda: 0.0,
        zeta: -0.5,
        r: 0.45,
        a: 2.056486570897622150917,
        b: 1.194789275373335819918,
        j: 2.811523633855989530311,
        q: 2.731192118037268001484,
    },
];

#[test]
fn side_integrals_match_frozen_references() {
    let cfg = QuadratureConfig::default();
    for r in &REFERENCES {
        let p = Prevertices::new(r.lambda, r.zeta, r.r).unwrap();
        let s = side_functionals(&p, &cfg).unwrap();
        let close = |got: f64, want: f64, name: &str| {
            let tol = 1e-12 * want.abs().max(1.0);
            assert!(
                (got - want).abs() <= tol,
                "{name} at (λ={}, ζ={}, r={}): got {got:.17e}, want {want:.17e}",
                r.lambda,
                r.zeta,
                r.r
            );
        };
        close(s.a, r.a, "A");
        close(s.b, r.b, "B");
        close(s.j, r.j, "J");
        close(s.q, r.q, "Q");
    }
}

/// Principal-branch complex square root with the argument kept on the upper
/// side of the cut, so negative reals map to +i sqrt|..|.
fn csqrt(x: f64) -> Complex64 {
    Complex64::new(x, 0.0).sqrt()
}

fn contour_integrand(lambda: f64, zeta: f64, r: f64, x: f64) -> Complex64 {
    csqrt(x - zeta + r) / (csqrt(x + 1.0) * csqrt(x - zeta) * csqrt(x - lambda) * csqrt(x - 1.0))
}

/// Evaluates the displayed complex integrals (with their -i and -1
/// prefactors) on the same substitution charts and checks they land on the
/// positive magnitudes used by the implementation.
#[test]
fn complex_contour_matches_magnitude_bookkeeping() {
    let cfg = QuadratureConfig::default();
    for re in &REFERENCES {
        // the tiny-r configuration needs the B interval resolved in complex
        // arithmetic; skip it there and rely on the frozen value instead
        if re.r != 0.0 && re.r < 1e-2 {
            continue;
        }
        let (lambda, zeta, r) = (re.lambda, re.zeta, re.r);
        let integrate = |lo: f64, hi: f64| -> Complex64 {
            let real = |x: f64, _dl: f64, _dh: f64| contour_integrand(lambda, zeta, r, x).re;
            let imag = |x: f64, _dl: f64, _dh: f64| contour_integrand(lambda, zeta, r, x).im;
            Complex64::new(
                integrate_sqrt_endpoints(&real, lo, hi, 0.5, &cfg).unwrap(),
                integrate_sqrt_endpoints(&imag, lo, hi, 0.5, &cfg).unwrap(),
            )
        };
        let minus_i = Complex64::new(0.0, -1.0);

        // A = -i ∫ over (-∞, -1], chart x = -1/u
        let tail_a = |u: f64, _dl: f64, _dh: f64| {
            let x = -1.0 / u;
            contour_integrand(lambda, zeta, r, x) / (u * u)
        };
        let a = minus_i
            * Complex64::new(
                integrate_sqrt_endpoints(&|u, dl, dh| tail_a(u, dl, dh).re, 0.0, 1.0, 0.5, &cfg)
                    .unwrap(),
                integrate_sqrt_endpoints(&|u, dl, dh| tail_a(u, dl, dh).im, 0.0, 1.0, 0.5, &cfg)
                    .unwrap(),
            );
        assert!((a.re - re.a).abs() < 1e-10 && a.im.abs() < 1e-10, "A: {a}");

        // J = ∫ over [1, ∞), chart x = 1/u
        let tail_j = |u: f64| {
            let x = 1.0 / u;
            contour_integrand(lambda, zeta, r, x) / (u * u)
        };
        let j = Complex64::new(
            integrate_sqrt_endpoints(&|u, _, _| tail_j(u).re, 0.0, 1.0, 0.5, &cfg).unwrap(),
            integrate_sqrt_endpoints(&|u, _, _| tail_j(u).im, 0.0, 1.0, 0.5, &cfg).unwrap(),
        );
        assert!((j.re - re.j).abs() < 1e-10 && j.im.abs() < 1e-10, "J: {j}");

        // Q = -∫ over [ζ, λ]
        let q = -integrate(zeta, lambda);
        assert!((q.re - re.q).abs() < 1e-10 && q.im.abs() < 1e-10, "Q: {q}");

        // B = -i ∫ over [ζ-r, ζ]
        if r > 0.0 {
            let b = minus_i * integrate(zeta - r, zeta);
            assert!((b.re - re.b).abs() < 1e-10 && b.im.abs() < 1e-10, "B: {b}");
        }
    }
}
