//! Schwarz-Christoffel side integrals for the L-shaped polygon, the
//! accessory-parameter solver, and the induced boundary maps.
//!
//! The uniformizing map of `L(a, b, q)` from the upper half plane has
//! derivative proportional to
//! `sqrt(x - ζ + r) / (sqrt(x+1) sqrt(x-ζ) sqrt(x-λ) sqrt(x-1))`
//! with real prevertices `-1 < ζ - r <= ζ < λ < 1` plus `1` and `∞`. On each
//! boundary interval the principal-branch factors combine to ±1 or ±i, so all
//! four side integrals
//!
//!   A over (-∞, -1]   (right edge, length a·J)
//!   B over [ζ-r, ζ]   (notch edge, length b·J)
//!   J over [1, ∞)     (bottom edge, normalization)
//!   Q over [ζ, λ]     (upper top edge, length q·J)
//!
//! equal integrals of the positive magnitude of the integrand. Improper tails
//! are mapped to (0, 1] by `x = ±1/u`; every endpoint singularity is removed
//! by the `s²` substitution inside [`quad`](crate::quad).

use crate::quad::{integrate_sqrt_endpoints, QuadratureConfig};
use crate::surface::LShapeParams;
use crate::{roots, Error, Result};

/// Minimum admissible gap between prevertices (and to ±1).
pub const MIN_GAP: f64 = 1e-13;

/// Where the bottom-edge parameterization switches from the direct chart to
/// the `1/x` tail chart.
const X_CUT: f64 = 2.0;

/// The free accessory parameters: prevertices `ζ - r <= ζ < λ` inside
/// `(-1, 1)`, with `r >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prevertices {
    pub lambda: f64,
    pub zeta: f64,
    pub r: f64,
}

impl Prevertices {
    pub fn new(lambda: f64, zeta: f64, r: f64) -> Result<Self> {
        let p = Self { lambda, zeta, r };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { lambda, zeta, r } = *self;
        if !(lambda.is_finite() && zeta.is_finite() && r.is_finite()) {
            return Err(Error::InvalidParameter("non-finite prevertex".into()));
        }
        if r < 0.0 {
            return Err(Error::InvalidParameter(format!("r must be >= 0, got {r}")));
        }
        let gaps = [zeta - r + 1.0, lambda - zeta, 1.0 - lambda];
        if let Some(g) = gaps.iter().find(|g| **g < MIN_GAP) {
            return Err(Error::PrevertexCollision(*g));
        }
        Ok(())
    }

    /// Copy with the notch prevertex merged into ζ (the `r = 0` companion).
    pub fn closed_notch(&self) -> Self {
        Self { r: 0.0, ..*self }
    }

    fn shares_base(&self, other: &Self) -> bool {
        self.lambda == other.lambda && self.zeta == other.zeta
    }
}

/// The four raw side integrals. Edge lengths in polygon units are the ratios
/// `a = A/J`, `b = B/J`, `q = Q/J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideIntegrals {
    pub a: f64,
    pub b: f64,
    pub j: f64,
    pub q: f64,
}

impl SideIntegrals {
    /// Edge lengths `(a, b, q)` of the polygon the prevertices map to.
    pub fn lengths(&self) -> (f64, f64, f64) {
        (self.a / self.j, self.b / self.j, self.q / self.j)
    }
}

/// `1 + c u` on `u ∈ [0, 1]` with `|c| < 1`, from the exact distance
/// `dh = 1 - u`: for negative `c` the identity `(1 + c) + |c| dh` is a sum
/// of nonnegatives, so the value stays accurate when both `1 + c` and `dh`
/// are tiny.
#[inline]
fn affine_unit(c: f64, u: f64, dh: f64) -> f64 {
    if c < 0.0 {
        (1.0 + c) - c * dh
    } else {
        1.0 + c * u
    }
}

fn tail_a(p: &Prevertices, cfg: &QuadratureConfig) -> Result<f64> {
    let Prevertices { lambda, zeta, r } = *p;
    let zr = zeta - r;
    let f = move |u: f64, dl: f64, dh: f64| {
        let base = dl.sqrt()
            * dh.sqrt()
            * affine_unit(zeta, u, dh).sqrt()
            * affine_unit(lambda, u, dh).sqrt()
            * (1.0 + u).sqrt();
        if r == 0.0 {
            affine_unit(zeta, u, dh).sqrt() / base
        } else {
            affine_unit(zr, u, dh).sqrt() / base
        }
    };
    integrate_sqrt_endpoints(&f, 0.0, 1.0, cfg.tail_split, cfg)
}

fn tail_j(p: &Prevertices, cfg: &QuadratureConfig) -> Result<f64> {
    let Prevertices { lambda, zeta, r } = *p;
    let zr = zeta - r;
    let f = move |u: f64, dl: f64, dh: f64| {
        let base = dl.sqrt()
            * dh.sqrt()
            * affine_unit(-zeta, u, dh).sqrt()
            * affine_unit(-lambda, u, dh).sqrt()
            * (1.0 + u).sqrt();
        if r == 0.0 {
            affine_unit(-zeta, u, dh).sqrt() / base
        } else {
            affine_unit(-zr, u, dh).sqrt() / base
        }
    };
    integrate_sqrt_endpoints(&f, 0.0, 1.0, cfg.tail_split, cfg)
}

fn notch_b(p: &Prevertices, cfg: &QuadratureConfig) -> Result<f64> {
    let Prevertices { lambda, zeta, r } = *p;
    if r == 0.0 {
        return Ok(0.0);
    }
    // Over [ζ-r, ζ]: the numerator vanishes at the left end, a pole sits at
    // the right end. Remaining factors are rebuilt from the endpoint gaps.
    let gap_low = zeta - r + 1.0;
    let gap_top = lambda - zeta;
    let gap_one = 1.0 - zeta;
    let f = move |_x: f64, dl: f64, dh: f64| {
        dl.sqrt()
            / ((gap_low + dl).sqrt()
                * dh.sqrt()
                * (gap_top + dh).sqrt()
                * (gap_one + dh).sqrt())
    };
    integrate_sqrt_endpoints(&f, zeta - r, zeta, 0.5, cfg)
}

fn top_q(p: &Prevertices, cfg: &QuadratureConfig) -> Result<f64> {
    let Prevertices { lambda, zeta, r } = *p;
    let gap_low = zeta + 1.0;
    let gap_one = 1.0 - lambda;
    let f = move |_x: f64, dl: f64, dh: f64| {
        let base = (gap_low + dl).sqrt() * dh.sqrt() * (gap_one + dh).sqrt();
        if r == 0.0 {
            1.0 / base
        } else {
            (dl + r).sqrt() / (dl.sqrt() * base)
        }
    };
    integrate_sqrt_endpoints(&f, zeta, lambda, 0.5, cfg)
}

/// Evaluates the four side integrals to the configured tolerance.
pub fn side_functionals(p: &Prevertices, cfg: &QuadratureConfig) -> Result<SideIntegrals> {
    p.validate()?;
    cfg.validate()?;
    let out = SideIntegrals {
        a: tail_a(p, cfg)?,
        b: notch_b(p, cfg)?,
        j: tail_j(p, cfg)?,
        q: top_q(p, cfg)?,
    };
    let pos = out.a > 0.0 && out.j > 0.0 && out.q > 0.0 && out.b >= 0.0;
    if !pos || !(out.a + out.b + out.j + out.q).is_finite() {
        return Err(Error::InvalidParameter(format!(
            "side integrals must be finite and positive, got {out:?}"
        )));
    }
    Ok(out)
}

/// Bottom-edge integrand on `[1, ∞)` with the pole at 1 exposed as `dl`.
fn bottom_integrand(p: &Prevertices) -> impl Fn(f64, f64, f64) -> f64 {
    let Prevertices { lambda, zeta, r } = *p;
    let gap_top = 1.0 - lambda;
    let gap_notch = 1.0 - zeta;
    move |y: f64, dl: f64, _dh: f64| {
        let base = (y + 1.0).sqrt() * (gap_top + dl).sqrt() * dl.sqrt();
        if r == 0.0 {
            1.0 / base
        } else {
            let d = gap_notch + dl;
            ((d + r) / d).sqrt() / base
        }
    }
}

/// Tail-chart integrand of the bottom edge after `x = 1/u`. Only used on
/// partial tails `u ∈ [0, v]` with `v <= 1/X_CUT`, where the `1 - u` factor
/// is regular and the sole singularity sits at `u = 0`.
fn bottom_tail_integrand(p: &Prevertices) -> impl Fn(f64, f64, f64) -> f64 {
    let Prevertices { lambda, zeta, r } = *p;
    let zr = zeta - r;
    move |u: f64, dl: f64, _dh: f64| {
        // u stays below 1/X_CUT here, so 1 - u needs no distance bookkeeping
        let dh = 1.0 - u;
        let base = dl.sqrt()
            * dh.sqrt()
            * affine_unit(-zeta, u, dh).sqrt()
            * affine_unit(-lambda, u, dh).sqrt()
            * (1.0 + u).sqrt();
        if r == 0.0 {
            affine_unit(-zeta, u, dh).sqrt() / base
        } else {
            affine_unit(-zr, u, dh).sqrt() / base
        }
    }
}

/// `∫_1^x` of the bottom integrand for `x` in the direct chart.
fn bottom_partial(p: &Prevertices, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let f = bottom_integrand(p);
    integrate_sqrt_endpoints(&f, 1.0, x, 0.5, cfg)
}

/// `∫_x^∞` of the bottom integrand expressed in the tail chart, `v = 1/x`.
fn bottom_tail(p: &Prevertices, v: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let f = bottom_tail_integrand(p);
    // dh is the distance to v (a regular endpoint), dl the sqrt singularity at 0
    integrate_sqrt_endpoints(&f, 0.0, v, 0.5, cfg)
}

/// Normalized boundary parameterization of the bottom edge: strictly
/// increasing from 0 at `x = 1` to 1 as `x → ∞`.
pub fn forward_boundary(p: &Prevertices, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let j = side_functionals(p, cfg)?.j;
    forward_with_j(p, x, j, cfg)
}

fn forward_with_j(p: &Prevertices, x: f64, j: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::OutOfDomain(format!("x must lie in [1, ∞), got {x}")));
    }
    if x == 1.0 {
        return Ok(0.0);
    }
    if x <= X_CUT {
        Ok(bottom_partial(p, x, cfg)? / j)
    } else {
        Ok(1.0 - bottom_tail(p, 1.0 / x, cfg)? / j)
    }
}

/// Inverse of [`forward_boundary`]: the unique `x ∈ [1, ∞)` with the given
/// normalized arclength `s ∈ [0, 1)`.
pub fn inverse_boundary(p: &Prevertices, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let j = side_functionals(p, cfg)?.j;
    inverse_with_j(p, s, j, cfg)
}

fn inverse_with_j(p: &Prevertices, s: f64, j: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::OutOfDomain(format!("s must lie in [0, 1), got {s}")));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let s_cut = forward_with_j(p, X_CUT, j, cfg)?;
    if s <= s_cut {
        // solve in v with x = 1 + v² so the sqrt behaviour at x = 1 is regular
        let mut f = |v: f64| Ok(forward_with_j(p, 1.0 + v * v, j, cfg)? - s);
        let v = roots::bracketed_root(&mut f, 0.0, (X_CUT - 1.0).sqrt(), 1e-13, 200)?;
        Ok(1.0 + v * v)
    } else {
        // tail chart: x = 1/u with u = w², where the tail integral is smooth in w
        let mut f = |w: f64| Ok((1.0 - s) * j - bottom_tail(p, w * w, cfg)?);
        let w_hi = (1.0 / X_CUT).sqrt();
        let w = roots::bracketed_root(&mut f, 1e-12, w_hi, 1e-14, 200)?;
        Ok(1.0 / (w * w))
    }
}

/// The boundary maps of a matched pair of uniformizations sharing `(λ, ζ)`:
/// the closed-notch map (`r = 0`) and the open-notch map (`r > 0`), giving
/// the circle map `g = f_notch ∘ f_closed⁻¹ : [0, 1] → [0, 1]`.
#[derive(Debug, Clone)]
pub struct BoundaryPair {
    closed: Prevertices,
    notch: Prevertices,
    j_closed: f64,
    j_notch: f64,
    cfg: QuadratureConfig,
}

impl BoundaryPair {
    pub fn new(p0: &Prevertices, p1: &Prevertices, cfg: &QuadratureConfig) -> Result<Self> {
        if p0.r != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "base prevertices must have r = 0, got r = {}",
                p0.r
            )));
        }
        if !p0.shares_base(p1) {
            return Err(Error::InvalidParameter(
                "boundary pair must share (λ, ζ)".into(),
            ));
        }
        Ok(Self {
            closed: *p0,
            notch: *p1,
            j_closed: side_functionals(p0, cfg)?.j,
            j_notch: side_functionals(p1, cfg)?.j,
            cfg: *cfg,
        })
    }

    /// Ratio of the two bottom normalizations, `J(λ,ζ,0) / J(λ,ζ,r)`.
    pub fn j_ratio(&self) -> f64 {
        self.j_closed / self.j_notch
    }

    /// Preimage of `x` under the closed-notch boundary parameterization.
    pub fn pullback(&self, x: f64) -> Result<f64> {
        inverse_with_j(&self.closed, x, self.j_closed, &self.cfg)
    }

    /// The circle map `g(x)`.
    pub fn g(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfDomain(format!("x must lie in [0, 1], got {x}")));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        if x == 1.0 {
            return Ok(1.0);
        }
        let y = self.pullback(x)?;
        if y > X_CUT {
            // stay in the tail chart so g - x keeps absolute accuracy near 1
            Ok(1.0 - bottom_tail(&self.notch, 1.0 / y, &self.cfg)? / self.j_notch)
        } else {
            forward_with_j(&self.notch, y, self.j_notch, &self.cfg)
        }
    }

    /// `dg/dx` via the chain rule: the ratio of the two side integrands at
    /// the shared preimage, times `J(λ,ζ,0)/J(λ,ζ,r)`.
    pub fn g_prime(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfDomain(format!("x must lie in [0, 1], got {x}")));
        }
        let ratio = self.j_ratio();
        let r = self.notch.r;
        if r == 0.0 {
            return Ok(1.0);
        }
        if x == 1.0 {
            // y → ∞ limit of sqrt((y-ζ+r)/(y-ζ))
            return Ok(ratio);
        }
        let y = self.pullback(x)?;
        let zeta = self.closed.zeta;
        Ok(ratio * ((y - zeta + r) / (y - zeta)).sqrt())
    }
}

/// The circle map value `g(x)` for a matched prevertex pair.
pub fn boundary_map_g(
    p0: &Prevertices,
    p1: &Prevertices,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    BoundaryPair::new(p0, p1, cfg)?.g(x)
}

/// The derivative `dg/dx` for a matched prevertex pair.
pub fn boundary_derivative(
    p0: &Prevertices,
    p1: &Prevertices,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    BoundaryPair::new(p0, p1, cfg)?.g_prime(x)
}

/// Solver knobs for the accessory-parameter problem.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub quad: QuadratureConfig,
    /// Componentwise residual tolerance on `(A/J - a, B/J - b, Q/J - q)`.
    pub residual_tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            quad: QuadratureConfig::default(),
            residual_tol: 1e-10,
            max_iterations: 80,
        }
    }
}

/// Prevertex gaps `(d0, d1, d2, d3) = (ζ-r+1, r, λ-ζ, 1-λ)`; they are
/// positive and sum to 2. The solver works in the unconstrained chart
/// `w_i = ln(d_i / d_3)`, which keeps every Newton iterate feasible.
fn gaps_to_prevertices(w: [f64; 3]) -> Prevertices {
    let e: Vec<f64> = w.iter().map(|wi| wi.exp()).collect();
    let d3 = 2.0 / (1.0 + e[0] + e[1] + e[2]);
    let d0 = e[0] * d3;
    let d1 = e[1] * d3;
    let lambda = 1.0 - d3;
    let zeta = d0 + d1 - 1.0;
    Prevertices {
        lambda,
        zeta,
        r: d1,
    }
}

fn prevertices_to_gaps(p: &Prevertices) -> [f64; 3] {
    let d0 = p.zeta - p.r + 1.0;
    let d1 = p.r.max(1e-300);
    let d2 = p.lambda - p.zeta;
    let d3 = 1.0 - p.lambda;
    [(d0 / d3).ln(), (d1 / d3).ln(), (d2 / d3).ln()]
}

fn residual(w: [f64; 3], target: &LShapeParams, quad: &QuadratureConfig) -> Result<[f64; 3]> {
    let p = gaps_to_prevertices(w);
    p.validate()?;
    let s = side_functionals(&p, quad)?;
    let (a, b, q) = s.lengths();
    Ok([a - target.a, b - target.b, q - target.q])
}

fn norm2(r: &[f64; 3]) -> f64 {
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn solve_3x3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let mut a = [[0.0f64; 4]; 3];
    for i in 0..3 {
        a[i][..3].copy_from_slice(&m[i]);
        a[i][3] = rhs[i];
    }
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        for row in 0..3 {
            if row != col {
                let f = a[row][col] / a[col][col];
                for k in col..4 {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    Some([a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]])
}

/// Solves the degenerate (`b = 0`) problem by two nested scalar root finds:
/// `A/J = a` fixes λ alone, then `Q/J = q` fixes ζ.
fn solve_closed_notch(a: f64, q: f64, cfg: &SolverConfig) -> Result<Prevertices> {
    let quad = &cfg.quad;
    let lim = 1.0 - 1e-9;
    let mut aspect = |l: f64| {
        let p = Prevertices {
            lambda: l,
            zeta: (l - 1.0) * 0.5,
            r: 0.0,
        };
        Ok(tail_a(&p, quad)? / tail_j(&p, quad)? - a)
    };
    let lambda = roots::bracketed_root(&mut aspect, -lim, lim, 1e-15, 200)?;
    let j = tail_j(
        &Prevertices {
            lambda,
            zeta: (lambda - 1.0) * 0.5,
            r: 0.0,
        },
        quad,
    )?;
    let mut top = |z: f64| {
        let p = Prevertices {
            lambda,
            zeta: z,
            r: 0.0,
        };
        Ok(top_q(&p, quad)? / j - q)
    };
    let zeta = roots::bracketed_root(&mut top, -lim, lambda - 1e-12, 1e-15, 200)?;
    Prevertices::new(lambda, zeta, 0.0)
}

/// Holding `(λ, ζ)` fixed, finds the notch parameter `r` with `Q/J` equal to
/// the requested top-edge length. The bracket is grown geometrically from
/// zero, where `Q/J` is smallest.
pub fn solve_notch_radius(
    lambda: f64,
    zeta: f64,
    q_target: f64,
    cfg: &SolverConfig,
) -> Result<f64> {
    let quad = &cfg.quad;
    let mut f = |r: f64| {
        let p = Prevertices { lambda, zeta, r };
        p.validate()?;
        Ok(top_q(&p, quad)? / tail_j(&p, quad)? - q_target)
    };
    let r_max = (zeta + 1.0) - 10.0 * MIN_GAP;
    let (lo, hi) = roots::grow_bracket(&mut f, 0.0, 1e-9 * (zeta + 1.0), r_max, 4.0)?;
    if lo == hi {
        return Ok(lo);
    }
    roots::bracketed_root(&mut f, lo, hi, 1e-16 * (zeta + 1.0), 200)
}

/// Solves the accessory-parameter problem `(a, b, q) → (λ, ζ, r)` by damped
/// Newton in the log-gap chart, with a coordinatewise bracketed pass as a
/// fallback between restarts.
pub fn solve_parameters(target: &LShapeParams, cfg: &SolverConfig) -> Result<Prevertices> {
    if target.b == 0.0 {
        return solve_closed_notch(target.a, target.q, cfg);
    }
    for w0 in initial_guesses(target, cfg) {
        if let Ok(p) = newton(w0, target, cfg) {
            return Ok(p);
        }
    }
    // Last resort: one coordinatewise sweep from the equispaced start, then
    // Newton again.
    let w = coordinate_sweep(prevertices_to_gaps(&gaps_to_prevertices([0.0; 3])), target, cfg)?;
    newton(w, target, cfg)
}

fn initial_guesses(target: &LShapeParams, cfg: &SolverConfig) -> Vec<[f64; 3]> {
    let mut starts = vec![[0.0, 0.0, 0.0]];
    // Informed start: solve the closed-notch problem for (a, q) and open the
    // notch slightly.
    if let Ok(p) = solve_closed_notch(target.a, target.q, cfg) {
        let r0 = (0.05 * (p.zeta + 1.0)).min(0.2 * (target.b / (1.0 + target.b)));
        let seeded = Prevertices {
            r: r0.max(1e-6),
            ..p
        };
        starts.insert(0, prevertices_to_gaps(&seeded));
    }
    // A wider-notch variant helps large-b targets.
    starts.push([0.0, (target.b / (1.0 + target.b)).ln().max(-6.0), 0.0]);
    starts
}

fn newton(mut w: [f64; 3], target: &LShapeParams, cfg: &SolverConfig) -> Result<Prevertices> {
    let mut r = residual(w, target, &cfg.quad)?;
    let mut err = norm2(&r);
    let tol = cfg.residual_tol;
    for _ in 0..cfg.max_iterations {
        if r.iter().all(|x| x.abs() <= tol) {
            let p = gaps_to_prevertices(w);
            p.validate()?;
            return Ok(p);
        }
        // Central-difference Jacobian in the log-gap chart.
        let h = 1e-6;
        let mut jac = [[0.0f64; 3]; 3];
        for col in 0..3 {
            let mut wp = w;
            let mut wm = w;
            wp[col] += h;
            wm[col] -= h;
            let rp = residual(wp, target, &cfg.quad)?;
            let rm = residual(wm, target, &cfg.quad)?;
            for row in 0..3 {
                jac[row][col] = (rp[row] - rm[row]) / (2.0 * h);
            }
        }
        let rhs = [-r[0], -r[1], -r[2]];
        let Some(step) = solve_3x3(jac, rhs) else {
            break;
        };
        // Backtracking line search on the residual norm.
        let mut alpha = 1.0f64;
        let mut advanced = false;
        for _ in 0..30 {
            let wt = [
                w[0] + alpha * step[0],
                w[1] + alpha * step[1],
                w[2] + alpha * step[2],
            ];
            if let Ok(rt) = residual(wt, target, &cfg.quad) {
                let et = norm2(&rt);
                if et < err * (1.0 - 1e-4 * alpha) {
                    w = wt;
                    r = rt;
                    err = et;
                    advanced = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !advanced {
            break;
        }
    }
    if r.iter().all(|x| x.abs() <= cfg.residual_tol) {
        let p = gaps_to_prevertices(w);
        p.validate()?;
        return Ok(p);
    }
    Err(Error::SolverNonConvergence {
        residual: err,
        iterations: cfg.max_iterations,
    })
}

/// One round of scalar solves: r against b, λ against a, ζ against q.
/// Bisection-based, so it tolerates a poor starting point.
fn coordinate_sweep(
    w: [f64; 3],
    target: &LShapeParams,
    cfg: &SolverConfig,
) -> Result<[f64; 3]> {
    let quad = &cfg.quad;
    let mut p = gaps_to_prevertices(w);
    for _ in 0..4 {
        // notch radius from b
        let lambda = p.lambda;
        let zeta = p.zeta;
        let mut fb = |r: f64| {
            let c = Prevertices { lambda, zeta, r };
            c.validate()?;
            Ok(notch_b(&c, quad)? / tail_j(&c, quad)? - target.b)
        };
        let r_max = (zeta + 1.0) - 10.0 * MIN_GAP;
        if let Ok((lo, hi)) = roots::grow_bracket(&mut fb, 0.0, 1e-6, r_max, 4.0) {
            if let Ok(r) = roots::bracketed_root(&mut fb, lo, hi, 1e-14, 100) {
                p.r = r;
            }
        }
        // λ from a, keeping (ζ, r)
        let (zeta, r) = (p.zeta, p.r);
        let mut fa = |l: f64| {
            let c = Prevertices {
                lambda: l,
                zeta,
                r,
            };
            c.validate()?;
            Ok(tail_a(&c, quad)? / tail_j(&c, quad)? - target.a)
        };
        if let Ok(l) = roots::bracketed_root(&mut fa, zeta + 1e-10, 1.0 - 1e-10, 1e-14, 100) {
            p.lambda = l;
        }
        // ζ from q, translating the notch rigidly (r fixed)
        let (lambda, r) = (p.lambda, p.r);
        let mut fq = |z: f64| {
            let c = Prevertices {
                lambda,
                zeta: z,
                r,
            };
            c.validate()?;
            Ok(top_q(&c, quad)? / tail_j(&c, quad)? - target.q)
        };
        let z_lo = -1.0 + r + 1e-10;
        if let Ok(z) = roots::bracketed_root(&mut fq, z_lo, lambda - 1e-10, 1e-14, 100) {
            p.zeta = z;
        }
    }
    Ok(prevertices_to_gaps(&p))
}
