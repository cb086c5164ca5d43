//! The boundary-twist quasiconformal map on a collar annulus and its
//! Beltrami dilatation.
//!
//! Given a circle map `g : [0, 1] → [0, 1]` fixing the endpoints, the map
//! `f(x + iy) = (y/a) x + (1 - y/a) g(x) + iy` on the collar
//! `[0, 1] × [0, a]` interpolates between `g` on the boundary and the
//! identity at height `a`, on both sheets of the doubled rectangle. Its
//! Wirtinger derivatives are closed forms in `g`, `g'`; on the second sheet
//! the imaginary parts flip sign, so the sheet-summed dilatation is real and
//! its leading term integrates to zero by Fubini.

use num_complex::Complex64;

use crate::paths::{self, BaseConfig, PathPoint};
use crate::quad::composite_gauss_nodes;
use crate::sc::{BoundaryPair, SolverConfig};
use crate::surface::Sheet;
use crate::{Error, Result};

/// A circle map handle: value and derivative of `g` on `[0, 1]`.
pub trait BoundaryMap {
    fn value(&self, x: f64) -> Result<f64>;
    fn derivative(&self, x: f64) -> Result<f64>;
}

/// The identity circle map.
pub struct IdentityBoundary;

impl BoundaryMap for IdentityBoundary {
    fn value(&self, x: f64) -> Result<f64> {
        Ok(x)
    }

    fn derivative(&self, _x: f64) -> Result<f64> {
        Ok(1.0)
    }
}

/// Synthetic endpoint-fixing perturbation `g(x) = x + ε sin(2πx) x (1-x)`.
pub struct PerturbedBoundary {
    pub eps: f64,
}

impl BoundaryMap for PerturbedBoundary {
    fn value(&self, x: f64) -> Result<f64> {
        Ok(x + self.eps * (2.0 * std::f64::consts::PI * x).sin() * x * (1.0 - x))
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        let tau = 2.0 * std::f64::consts::PI;
        let s = (tau * x).sin();
        let c = (tau * x).cos();
        Ok(1.0 + self.eps * (tau * c * x * (1.0 - x) + s * (1.0 - 2.0 * x)))
    }
}

/// The circle map of a matched closed/open notch prevertex pair.
pub struct ScBoundary {
    pair: BoundaryPair,
}

impl ScBoundary {
    pub fn new(pair: BoundaryPair) -> Self {
        Self { pair }
    }

    pub fn from_path_point(point: &PathPoint, solver: &SolverConfig) -> Result<Self> {
        let (p0, p1) = point.boundary_prevertices();
        Ok(Self {
            pair: BoundaryPair::new(&p0, &p1, &solver.quad)?,
        })
    }
}

impl BoundaryMap for ScBoundary {
    fn value(&self, x: f64) -> Result<f64> {
        self.pair.g(x)
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        self.pair.g_prime(x)
    }
}

/// Collar height and sampling resolution.
#[derive(Debug, Clone, Copy)]
pub struct CollarSpec {
    /// Height of the collar rectangle; must not exceed the lower-annulus
    /// height of any surface the field is built on.
    pub height: f64,
    pub nx: usize,
    pub ny: usize,
}

impl CollarSpec {
    pub fn new(height: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(height.is_finite() && height > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "collar height must be positive, got {height}"
            )));
        }
        if nx < 16 || ny < 16 {
            return Err(Error::InvalidParameter(format!(
                "collar grid must be at least 16x16, got {nx}x{ny}"
            )));
        }
        Ok(Self { height, nx, ny })
    }

    /// Default resolution (256 x 64) at the given height.
    pub fn with_default_grid(height: f64) -> Result<Self> {
        Self::new(height, 256, 64)
    }
}

fn check_point(x: f64, y: f64) -> Result<()> {
    if !(x.is_finite() && y.is_finite() && (0.0..=1.0).contains(&x) && y >= 0.0) {
        return Err(Error::OutOfDomain(format!(
            "collar point must have x in [0,1] and y >= 0, got ({x}, {y})"
        )));
    }
    Ok(())
}

/// The twist interpolation at one point. Above the collar the map is the
/// identity; both sheets use the same planar formula.
pub fn twist_map(
    g: &dyn BoundaryMap,
    height: f64,
    _sheet: Sheet,
    x: f64,
    y: f64,
) -> Result<(f64, f64)> {
    check_point(x, y)?;
    if y >= height {
        return Ok((x, y));
    }
    let blend = y / height;
    Ok((blend * x + (1.0 - blend) * g.value(x)?, y))
}

fn wirtinger(
    sheet: Sheet,
    gx: f64,
    gpx: f64,
    x: f64,
    y: f64,
    height: f64,
) -> (Complex64, Complex64) {
    let shear = 0.5 * (1.0 - y / height) * (gpx - 1.0);
    let drift = (gx - x) / (2.0 * height);
    match sheet {
        Sheet::First => (
            Complex64::new(1.0 + shear, drift),
            Complex64::new(shear, -drift),
        ),
        Sheet::Second => (
            Complex64::new(1.0 + shear, -drift),
            Complex64::new(shear, drift),
        ),
    }
}

/// Minimum |f_z| before the dilatation is considered degenerate.
const FZ_FLOOR: f64 = 0.05;

/// The Beltrami dilatation `μ = f_z̄ / f_z` of the twist map at one point,
/// from the closed forms of the Wirtinger derivatives. Zero above the collar.
pub fn beltrami(
    g: &dyn BoundaryMap,
    height: f64,
    sheet: Sheet,
    x: f64,
    y: f64,
) -> Result<Complex64> {
    check_point(x, y)?;
    if y >= height {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (fz, fzb) = wirtinger(sheet, g.value(x)?, g.derivative(x)?, x, y, height);
    if fz.norm() < FZ_FLOOR {
        return Err(Error::DegenerateDilatation(fz.norm()));
    }
    Ok(fzb / fz)
}

/// Cached column data and quadrature nodes of a Beltrami field on the collar.
pub struct BeltramiField {
    spec: CollarSpec,
    /// (x, g(x), g'(x)) on the uniform sampling grid.
    columns: Vec<(f64, f64, f64)>,
    /// (x, weight, g(x), g'(x)) on the composite Gauss x-nodes.
    quad_columns: Vec<(f64, f64, f64, f64)>,
    /// (y, weight) on the composite Gauss y-nodes.
    y_nodes: Vec<(f64, f64)>,
    sup_norm: f64,
}

impl BeltramiField {
    /// Samples `g`, `g'` along the collar and records the grid sup of |μ|.
    ///
    /// x-columns are shared across heights, so an `nx * ny` grid costs only
    /// `nx` boundary-map evaluations.
    pub fn build(g: &dyn BoundaryMap, spec: &CollarSpec) -> Result<Self> {
        let mut columns = Vec::with_capacity(spec.nx);
        for i in 0..spec.nx {
            let x = i as f64 / (spec.nx - 1) as f64;
            columns.push((x, g.value(x)?, g.derivative(x)?));
        }
        let x_panels = (spec.nx / 16).max(1);
        let y_panels = (spec.ny / 16).max(1);
        let mut quad_columns = Vec::with_capacity(16 * x_panels);
        for (x, w) in composite_gauss_nodes(0.0, 1.0, x_panels) {
            quad_columns.push((x, w, g.value(x)?, g.derivative(x)?));
        }
        let y_nodes = composite_gauss_nodes(0.0, spec.height, y_panels);

        let mut sup: f64 = 0.0;
        for &(x, gx, gpx) in &columns {
            for jy in 0..spec.ny {
                let y = spec.height * jy as f64 / (spec.ny - 1) as f64;
                let (fz, fzb) = wirtinger(Sheet::First, gx, gpx, x, y, spec.height);
                if fz.norm() < FZ_FLOOR {
                    return Err(Error::DegenerateDilatation(fz.norm()));
                }
                // |μ| agrees on the two sheets (the drift term conjugates)
                sup = sup.max((fzb / fz).norm());
            }
        }
        Ok(Self {
            spec: *spec,
            columns,
            quad_columns,
            y_nodes,
            sup_norm: sup,
        })
    }

    pub fn spec(&self) -> &CollarSpec {
        &self.spec
    }

    /// Grid sup of |μ| (both sheets; they agree pointwise in modulus).
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// Sampled columns `(x, g(x), g'(x))`.
    pub fn columns(&self) -> &[(f64, f64, f64)] {
        &self.columns
    }

    /// Tensor-product composite Gauss quadrature of the sheet sum
    /// `∫∫ (μ¹ + μ²) dx dy` over the collar.
    pub fn pairing(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, wx, gx, gpx) in &self.quad_columns {
            for &(y, wy) in &self.y_nodes {
                let (fz1, fzb1) = wirtinger(Sheet::First, gx, gpx, x, y, self.spec.height);
                let (fz2, fzb2) = wirtinger(Sheet::Second, gx, gpx, x, y, self.spec.height);
                acc += (fzb1 / fz1 + fzb2 / fz2) * (wx * wy);
            }
        }
        acc
    }

    /// The leading Fubini term `∫∫ ½ (1 - y/a)(g'(x) - 1) dx dy`, which
    /// vanishes because `g` fixes 0 and 1.
    pub fn fubini_term(&self) -> f64 {
        let mut acc = 0.0;
        for &(x, wx, _gx, gpx) in &self.quad_columns {
            let _ = x;
            for &(y, wy) in &self.y_nodes {
                acc += 0.5 * (1.0 - y / self.spec.height) * (gpx - 1.0) * wx * wy;
            }
        }
        acc
    }

    /// Largest |Im(f_z̄¹ + f_z̄²)| over the sampling grid; the drift terms
    /// cancel exactly between sheets.
    pub fn imag_cancellation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for &(x, gx, gpx) in &self.columns {
            for jy in 0..self.spec.ny {
                let y = self.spec.height * jy as f64 / (self.spec.ny - 1) as f64;
                let (_, fzb1) = wirtinger(Sheet::First, gx, gpx, x, y, self.spec.height);
                let (_, fzb2) = wirtinger(Sheet::Second, gx, gpx, x, y, self.spec.height);
                worst = worst.max((fzb1 + fzb2).im.abs());
            }
        }
        worst
    }
}

/// Quadrature of the sheet-summed dilatation against the flat form of the
/// collar (a convenience wrapper over [`BeltramiField::pairing`]).
pub fn pair_twist_with_psi(g: &dyn BoundaryMap, spec: &CollarSpec) -> Result<Complex64> {
    Ok(BeltramiField::build(g, spec)?.pairing())
}

/// One fully analyzed sweep row: the solved path point plus the collar-field
/// quantities entering the distance bound.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub point: PathPoint,
    /// `ρ(t) = r(t) log(1/t) / t`.
    pub rho: f64,
    /// Grid sup of |μ_t|.
    pub mu_sup: f64,
    /// |∫ (μ¹+μ²) dx dy| over the collar.
    pub mu_pairing_abs: f64,
    /// |leading Fubini term| (a quadrature-zero check).
    pub fubini_abs: f64,
    /// `sup|μ|² + |∫μψ|`: the computable proxy for the marking distance.
    pub proxy_bound: f64,
    /// `t² / log²(1/t)`.
    pub reference: f64,
}

/// Analyzes one solved path point on a fixed collar.
pub fn analyze_point(point: &PathPoint, spec: &CollarSpec, solver: &SolverConfig) -> Result<SweepRow> {
    if spec.height > point.a {
        return Err(Error::InvalidParameter(format!(
            "collar height {} exceeds the lower annulus height {}",
            spec.height, point.a
        )));
    }
    let g = ScBoundary::from_path_point(point, solver)?;
    let field = BeltramiField::build(&g, spec)?;
    let log = (1.0 / point.t).ln();
    let pairing = field.pairing();
    let mu_sup = field.sup_norm();
    Ok(SweepRow {
        point: *point,
        rho: point.r * log / point.t,
        mu_sup,
        mu_pairing_abs: pairing.norm(),
        fubini_abs: field.fubini_term().abs(),
        proxy_bound: mu_sup * mu_sup + pairing.norm(),
        reference: point.t * point.t / (log * log),
    })
}

/// The collar height shared by a family of path points: the smallest lower
/// annulus height along the sweep.
pub fn shared_collar_height(points: &[PathPoint]) -> Result<f64> {
    points
        .iter()
        .map(|p| p.a)
        .min_by(f64::total_cmp)
        .filter(|h| *h > 0.0)
        .ok_or_else(|| Error::InvalidParameter("no path points for collar height".into()))
}

/// Solves every grid point and analyzes it on the common collar.
pub fn sweep(
    base: &BaseConfig,
    t_grid: &[f64],
    solver: &SolverConfig,
    nx: usize,
    ny: usize,
) -> Result<Vec<SweepRow>> {
    let points: Vec<PathPoint> = t_grid
        .iter()
        .map(|&t| paths::solve_path_point(base, t, solver))
        .collect::<Result<_>>()?;
    let spec = CollarSpec::new(shared_collar_height(&points)?, nx, ny)?;
    points
        .iter()
        .map(|p| analyze_point(p, &spec, solver))
        .collect()
}
