//! Scalar root finding: bracketed bisection/secant hybrid and bracket growth.

use crate::{Error, Result};

/// Finds a root of `f` in `[lo, hi]` given `f(lo)` and `f(hi)` of opposite
/// sign, by a safeguarded secant/bisection hybrid.
pub fn bracketed_root(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket(format!(
            "f({a}) = {fa:e} and f({b}) = {fb:e} have the same sign"
        )));
    }
    for _ in 0..max_iter {
        // Secant proposal, clipped into the middle 90% of the bracket.
        let mut x = b - fb * (b - a) / (fb - fa);
        let width = b - a;
        if !x.is_finite() || x <= a + 0.05 * width || x >= b - 0.05 * width {
            x = a + 0.5 * width;
        }
        let fx = f(x)?;
        if fx == 0.0 || width.abs() <= xtol {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if (b - a).abs() <= xtol {
            return Ok(0.5 * (a + b));
        }
    }
    Err(Error::SolverNonConvergence {
        residual: (b - a).abs(),
        iterations: max_iter,
    })
}

/// Grows `hi` geometrically from `start` until `f` changes sign against
/// `f(lo)`, capping at `limit`. Returns the bracketing pair.
pub fn grow_bracket(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    lo: f64,
    start: f64,
    limit: f64,
    factor: f64,
) -> Result<(f64, f64)> {
    let flo = f(lo)?;
    if flo == 0.0 {
        return Ok((lo, lo));
    }
    let mut hi = start;
    for _ in 0..200 {
        let cap = hi >= limit;
        let x = if cap { limit } else { hi };
        let fx = f(x)?;
        if fx.signum() != flo.signum() || fx == 0.0 {
            return Ok((lo, x));
        }
        if cap {
            break;
        }
        hi *= factor;
    }
    Err(Error::NoBracket(format!(
        "no sign change in [{lo}, {limit}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let mut f = |x: f64| Ok(x * x * x - 2.0);
        let r = bracketed_root(&mut f, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn grown_bracket_finds_flat_tail_root() {
        let mut f = |x: f64| Ok(x.exp() - 100.0);
        let (lo, hi) = grow_bracket(&mut f, 0.0, 0.1, 20.0, 2.0).unwrap();
        let r = bracketed_root(&mut f, lo, hi, 1e-13, 200).unwrap();
        assert!((r - 100f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn same_sign_is_an_error() {
        let mut f = |x: f64| Ok(x * x + 1.0);
        assert!(matches!(
            bracketed_root(&mut f, -1.0, 1.0, 1e-12, 50),
            Err(Error::NoBracket(_))
        ));
    }
}
