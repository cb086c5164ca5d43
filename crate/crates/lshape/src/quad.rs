//! Adaptive quadrature with square-root endpoint singularities removed by
//! substitution.
//!
//! Every singular integral in this crate has endpoint exponents ±1/2. The
//! substitution `x = endpoint ± s^2` turns both `1/sqrt` and `sqrt` endpoint
//! behaviour into an analytic integrand in `s`, after which composite
//! Gauss-Legendre panels converge spectrally. Integrands are evaluated through
//! [`DistFn`], which hands the callee the exact distances to both interval
//! endpoints so singular factors never suffer cancellation near a prevertex.

use std::sync::OnceLock;

use crate::{Error, Result};

/// Tolerances and limits for adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Absolute tolerance per integral.
    pub abs_tol: f64,
    /// Relative tolerance per integral (scaled by a first whole-interval estimate).
    pub rel_tol: f64,
    /// Maximum bisection depth of the adaptive refinement.
    pub max_depth: u32,
    /// Relative split position used when mapping infinite tails to (0, 1].
    pub tail_split: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_depth: 48,
            tail_split: 0.5,
        }
    }
}

impl QuadratureConfig {
    /// Returns a copy with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |t: f64| t > 0.0 && t < 1.0;
        if !ok(self.abs_tol) || !ok(self.rel_tol) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerances must lie in (0, 1), got abs={:e} rel={:e}",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_depth < 1 {
            return Err(Error::InvalidParameter("max_depth must be >= 1".into()));
        }
        if !(self.tail_split > 0.0 && self.tail_split < 1.0) {
            return Err(Error::InvalidParameter(
                "tail_split must lie in (0, 1)".into(),
            ));
        }
        Ok(())
    }
}

/// Integrand over `[lo, hi]` evaluated as `f(x, d_lo, d_hi)` where `d_lo` and
/// `d_hi` are the exact distances of `x` to the two endpoints.
pub type DistFn<'a> = &'a dyn Fn(f64, f64, f64) -> f64;

fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    // Newton iteration on P_n with the Tricomi initial guess; nodes on (-1, 1).
    let mut rule = Vec::with_capacity(n);
    for k in 1..=n {
        let mut x = (std::f64::consts::PI * (k as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_eval(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_eval(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule
}

fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss16() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(16))
}

fn gauss32() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(32))
}

fn panel(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rule: &[(f64, f64)]) -> f64 {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for &(x, w) in rule {
        acc += w * f(c + h * x);
    }
    acc * h
}

/// Adaptive Gauss-Legendre integration of a smooth function.
///
/// The error estimate on each panel is |G32 - G16|; panels above tolerance are
/// bisected, with the absolute budget halved per child.
pub fn integrate_smooth(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if lo == hi {
        return Ok(0.0);
    }
    let coarse = panel(f, lo, hi, gauss32());
    let tol = cfg.abs_tol.max(cfg.rel_tol * coarse.abs());
    adaptive(f, lo, hi, tol, cfg.max_depth)
}

fn adaptive(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: u32) -> Result<f64> {
    let g16 = panel(f, lo, hi, gauss16());
    let g32 = panel(f, lo, hi, gauss32());
    let err = (g32 - g16).abs();
    // The halved child budgets eventually dip below what binary64 can
    // resolve; accept once the discrepancy is at rounding level.
    let floor = 4.0 * f64::EPSILON * g32.abs() + f64::MIN_POSITIVE;
    if err <= tol.max(floor) || (hi - lo).abs() < 1e-15 * (lo.abs() + hi.abs() + 1.0) {
        return Ok(g32);
    }
    if depth == 0 {
        return Err(Error::QuadratureNonConvergence {
            lo,
            hi,
            estimate: err,
            tolerance: tol,
        });
    }
    let mid = 0.5 * (lo + hi);
    Ok(adaptive(f, lo, mid, 0.5 * tol, depth - 1)? + adaptive(f, mid, hi, 0.5 * tol, depth - 1)?)
}

/// Integrates `f` over `[lo, hi]` allowing square-root singularities at both
/// endpoints.
///
/// The interval is split at `lo + split * (hi - lo)` and each half is mapped
/// by `x = endpoint ± s^2`, which makes integrands with endpoint exponents
/// ±1/2 analytic in `s`. The callee receives exact endpoint distances, so a
/// factor like `1/sqrt(x - lo)` should be computed as `1/sqrt(d_lo)`.
pub fn integrate_sqrt_endpoints(
    f: DistFn,
    lo: f64,
    hi: f64,
    split: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let len = hi - lo;
    if len == 0.0 {
        return Ok(0.0);
    }
    if len < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "inverted interval [{lo}, {hi}]"
        )));
    }
    let wl = split * len;
    let wr = len - wl;
    // Left half: x = lo + s^2, d_lo = s^2, d_hi = len - s^2.
    let left = |s: f64| {
        let d = s * s;
        2.0 * s * f(lo + d, d, len - d)
    };
    // Right half: x = hi - s^2.
    let right = |s: f64| {
        let d = s * s;
        2.0 * s * f(hi - d, len - d, d)
    };
    let half = cfg.scaled(0.5);
    Ok(integrate_smooth(&left, 0.0, wl.sqrt(), &half)?
        + integrate_smooth(&right, 0.0, wr.sqrt(), &half)?)
}

/// Fixed (non-adaptive) composite Gauss-Legendre rule: `panels` equal panels
/// of 16 nodes each. Deterministic by construction; used for tensor-product
/// pairings where a doubling check replaces adaptivity.
pub fn composite_gauss(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        acc += panel(f, lo + p as f64 * h, lo + (p + 1) as f64 * h, gauss16());
    }
    acc
}

/// Nodes and weights of the composite 16-point rule on `[lo, hi]`.
pub fn composite_gauss_nodes(lo: f64, hi: f64, panels: usize) -> Vec<(f64, f64)> {
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(16 * panels);
    for p in 0..panels {
        let (a, b) = (lo + p as f64 * h, lo + (p + 1) as f64 * h);
        let c = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for &(x, w) in gauss16() {
            out.push((c + half * x, w * half));
        }
    }
    out
}
