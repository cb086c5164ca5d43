//! The L-shaped polygon `L(a, b, q)`, its half-translation double
//! `S(a, b, q)`, the decomposition of the double into two flat annuli, the
//! Dehn-twist data of that decomposition, and the type calculator for fully
//! ramified double covers.
//!
//! Everything in this module is exact: parameters are arbitrary-precision
//! rationals, so area identities, modulus reciprocals and lcm computations
//! hold with no rounding. Floating-point mirrors are provided for the
//! numerical modules.
//!
//! Normalization: the polygon has vertices
//! `P5=(0,0), P1=(1,0), P2=(1,a), Q=(q,a), P3=(q,a+b), P4=(0,a+b)`,
//! so the bottom edge `P5 P1` has unit length, the interior angle is `π/2`
//! at `P1..P5` and `3π/2` at `Q`, and the area is `a + bq`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use num_complex::Complex64;

use crate::{Error, Result};

/// Exact rational scalar used throughout the surface model.
pub type Rational = BigRational;

fn big(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a rational from `"p"`, `"p/q"` or a terminating decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |m: &str| Error::InvalidParameter(format!("cannot parse rational {s:?}: {m}"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| bad(&e.to_string()))?;
        let d = BigInt::from_str(den.trim()).map_err(|e| bad(&e.to_string()))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rational::new(n, d))
    } else if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() { "0" } else { int };
        let n = BigInt::from_str(int).map_err(|e| bad(&e.to_string()))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("malformed decimal"));
        }
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let f = BigInt::from_str(frac).map_err(|e| bad(&e.to_string()))?;
        let sign = if s.starts_with('-') { -1 } else { 1 };
        Ok(Rational::new(n * &scale + BigInt::from(sign) * f, scale))
    } else {
        let n = BigInt::from_str(s).map_err(|e| bad(&e.to_string()))?;
        Ok(Rational::from_integer(n))
    }
}

/// The defining triple of the L-shaped polygon, held exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalParams {
    a: Rational,
    b: Rational,
    q: Rational,
}

impl RationalParams {
    /// Requires `a > 0`, `b >= 0` and `0 < q < 1`.
    pub fn new(a: Rational, b: Rational, q: Rational) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidParameter(format!("a must be positive, got {a}")));
        }
        if b.is_negative() {
            return Err(Error::InvalidParameter(format!("b must be nonnegative, got {b}")));
        }
        if !q.is_positive() || q >= Rational::one() {
            return Err(Error::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
        }
        Ok(Self { a, b, q })
    }

    pub fn from_strs(a: &str, b: &str, q: &str) -> Result<Self> {
        Self::new(parse_rational(a)?, parse_rational(b)?, parse_rational(q)?)
    }

    /// Exact conversion from finite floats (every finite f64 is rational).
    pub fn from_floats(a: f64, b: f64, q: f64) -> Result<Self> {
        let conv = |x: f64, name: &str| {
            Rational::from_float(x)
                .ok_or_else(|| Error::InvalidParameter(format!("{name} = {x} is not finite")))
        };
        Self::new(conv(a, "a")?, conv(b, "b")?, conv(q, "q")?)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Area of the polygon, `a + bq`.
    pub fn area(&self) -> Rational {
        &self.a + &self.b * &self.q
    }

    pub fn to_float(&self) -> LShapeParams {
        LShapeParams {
            a: rational_to_f64(&self.a),
            b: rational_to_f64(&self.b),
            q: rational_to_f64(&self.q),
        }
    }
}

impl fmt::Display for RationalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.q)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Exact for small ints; fall back on string round-trip for huge ones.
    match (n.to_string().parse::<f64>(), d.to_string().parse::<f64>()) {
        (Ok(nf), Ok(df)) => nf / df,
        _ => f64::NAN,
    }
}

/// Floating-point triple for the numerical modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LShapeParams {
    pub a: f64,
    pub b: f64,
    pub q: f64,
}

impl LShapeParams {
    pub fn new(a: f64, b: f64, q: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter(format!("a must be positive, got {a}")));
        }
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::InvalidParameter(format!("b must be nonnegative, got {b}")));
        }
        if !(q.is_finite() && q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
        }
        Ok(Self { a, b, q })
    }

    pub fn area(&self) -> f64 {
        self.a + self.b * self.q
    }
}

/// Vertex labels of the polygon in boundary order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    P5,
    P1,
    P2,
    Q,
    P3,
    P4,
}

/// Edge labels in boundary order; `Bottom` is the unglued edge `P5 P1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    /// `P5 -> P1`, length 1 (stays free: it becomes the boundary circle).
    Bottom,
    /// `P1 -> P2`, length a.
    Right,
    /// `P2 -> Q`, length 1 - q.
    TopLower,
    /// `Q -> P3`, length b (the notch side).
    Notch,
    /// `P3 -> P4`, length q.
    TopUpper,
    /// `P4 -> P5`, length a + b.
    Left,
}

impl Edge {
    pub const ALL: [Edge; 6] = [
        Edge::Bottom,
        Edge::Right,
        Edge::TopLower,
        Edge::Notch,
        Edge::TopUpper,
        Edge::Left,
    ];
}

/// The L-shaped polygon with exact vertex coordinates.
#[derive(Debug, Clone)]
pub struct LPolygon {
    vertices: [(Vertex, Rational, Rational); 6],
    params: RationalParams,
}

/// Builds the polygon in the fixed normalization (bottom edge `[0, 1]`).
pub fn build_polygon(params: &RationalParams) -> LPolygon {
    let zero = Rational::zero();
    let one = Rational::one();
    let a = params.a().clone();
    let b = params.b().clone();
    let q = params.q().clone();
    let ab = &a + &b;
    let vertices = [
        (Vertex::P5, zero.clone(), zero.clone()),
        (Vertex::P1, one.clone(), zero.clone()),
        (Vertex::P2, one, a.clone()),
        (Vertex::Q, q.clone(), a),
        (Vertex::P3, q.clone(), ab.clone()),
        (Vertex::P4, zero, ab),
    ];
    LPolygon {
        vertices,
        params: params.clone(),
    }
}

impl LPolygon {
    pub fn vertices(&self) -> &[(Vertex, Rational, Rational); 6] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> [(f64, f64); 6] {
        let mut out = [(0.0, 0.0); 6];
        for (i, (_, x, y)) in self.vertices.iter().enumerate() {
            out[i] = (rational_to_f64(x), rational_to_f64(y));
        }
        out
    }

    /// Exact area by the shoelace formula (agrees with `a + bq`).
    pub fn area(&self) -> Rational {
        let mut two_area = Rational::zero();
        for i in 0..6 {
            let (_, x0, y0) = &self.vertices[i];
            let (_, x1, y1) = &self.vertices[(i + 1) % 6];
            two_area += x0 * y1 - x1 * y0;
        }
        two_area / big(2)
    }

    /// Length of an edge.
    pub fn edge_length(&self, edge: Edge) -> Rational {
        match edge {
            Edge::Bottom => Rational::one(),
            Edge::Right => self.params.a().clone(),
            Edge::TopLower => Rational::one() - self.params.q(),
            Edge::Notch => self.params.b().clone(),
            Edge::TopUpper => self.params.q().clone(),
            Edge::Left => self.params.a() + self.params.b(),
        }
    }

    pub fn params(&self) -> &RationalParams {
        &self.params
    }
}

/// One gluing of the doubled surface: the same edge on the two sheets,
/// identified pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeGluing {
    pub edge: Edge,
}

/// A cone point of the flat double, with its angle as a multiple of π.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePoint {
    pub vertex: Vertex,
    /// Cone angle divided by π (1 for doubled right angles, 3 for the notch).
    pub angle_over_pi: u32,
    pub position: (Rational, Rational),
}

/// The double of the polygon across every edge except the bottom one.
#[derive(Debug, Clone)]
pub struct DoubledSurface {
    pub sheets: [LPolygon; 2],
    pub gluings: Vec<EdgeGluing>,
    pub cone_points: Vec<ConePoint>,
}

/// Glues two copies of the polygon along all edges but `Bottom`.
pub fn double(params: &RationalParams) -> DoubledSurface {
    let poly = build_polygon(params);
    let gluings = Edge::ALL
        .into_iter()
        .filter(|e| *e != Edge::Bottom)
        .map(|edge| EdgeGluing { edge })
        .collect();
    let degenerate = params.b().is_zero();
    let mut cone_points = Vec::new();
    for (v, x, y) in poly.vertices().iter() {
        let angle = match v {
            // Boundary endpoints: the two right angles fuse to a straight
            // boundary point, not a cone point.
            Vertex::P5 | Vertex::P1 => continue,
            Vertex::Q => {
                if degenerate {
                    // Q = P3 sits flat on the top edge; its double is regular.
                    continue;
                }
                3
            }
            Vertex::P3 => {
                if degenerate {
                    continue;
                }
                1
            }
            Vertex::P2 | Vertex::P4 => 1,
        };
        cone_points.push(ConePoint {
            vertex: *v,
            angle_over_pi: angle,
            position: (x.clone(), y.clone()),
        });
    }
    DoubledSurface {
        sheets: [poly.clone(), poly],
        gluings,
        cone_points,
    }
}

impl DoubledSurface {
    /// Total flat area, `2(a + bq)`.
    pub fn area(&self) -> Rational {
        self.sheets[0].area() + self.sheets[1].area()
    }

    /// Length of the boundary circle (two copies of the bottom edge).
    pub fn boundary_length(&self) -> Rational {
        big(2)
    }
}

/// One flat annulus of the horizontal-trajectory decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Annulus {
    /// Flat length of the closed horizontal trajectories.
    pub circumference: Rational,
    /// Distance between the two boundary circles.
    pub height: Rational,
    /// `height / circumference`.
    pub modulus: Rational,
    /// Flat area (both sheets).
    pub area: Rational,
    /// Area fraction of the whole double.
    pub weight: Rational,
}

/// The two-annulus decomposition of the double by closed horizontal lines.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusDecomposition {
    /// Upper (notch) annulus: trajectories of length 2q, height b.
    pub upper: Annulus,
    /// Lower annulus: trajectories of length 2, height a.
    pub lower: Annulus,
}

/// Decomposes the double into its two annuli. Errors when `b = 0`, where the
/// notch annulus has zero height and the decomposition degenerates.
pub fn decompose_annuli(params: &RationalParams) -> Result<AnnulusDecomposition> {
    if params.b().is_zero() {
        return Err(Error::DegenerateDecomposition);
    }
    let total = big(2) * params.area();
    let c1 = big(2) * params.q();
    let h1 = params.b().clone();
    let area1 = big(2) * params.b() * params.q();
    let upper = Annulus {
        modulus: &h1 / &c1,
        weight: &area1 / &total,
        circumference: c1,
        height: h1,
        area: area1,
    };
    let c2 = big(2);
    let h2 = params.a().clone();
    let area2 = big(2) * params.a();
    let lower = Annulus {
        modulus: &h2 / &c2,
        weight: &area2 / &total,
        circumference: c2,
        height: h2,
        area: area2,
    };
    Ok(AnnulusDecomposition { upper, lower })
}

/// The translation length and twist exponents of the annulus decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistData {
    /// Least common multiple of the reciprocal moduli.
    pub t: Rational,
    /// `exponents[j] = modulus_j * t`, guaranteed integral.
    pub exponents: [BigInt; 2],
}

fn rational_lcm(x: &Rational, y: &Rational) -> Rational {
    // For reduced fractions, lcm(p/q, r/s) = lcm(p, r) / gcd(q, s).
    Rational::new(x.numer().lcm(y.numer()), x.denom().gcd(y.denom()))
}

/// Computes `t = lcm(1/m1, 1/m2)` over exact rationals together with the
/// integer exponents `n_j = m_j t`. Errors when `b = 0`.
pub fn twist_data(params: &RationalParams) -> Result<TwistData> {
    let dec = decompose_annuli(params)?;
    let inv1 = dec.upper.modulus.recip();
    let inv2 = dec.lower.modulus.recip();
    let t = rational_lcm(&inv1, &inv2);
    let exps: Vec<BigInt> = [&dec.upper.modulus, &dec.lower.modulus]
        .iter()
        .map(|m| {
            let n = *m * &t;
            debug_assert!(n.is_integer(), "m*t must be integral, got {n}");
            n.to_integer()
        })
        .collect();
    Ok(TwistData {
        t,
        exponents: [exps[0].clone(), exps[1].clone()],
    })
}

/// Heights of the two annuli after stretching each by its own half-plane
/// coordinate: `h_j' = Im(λ_j) h_j` with `h_1 = b`, `h_2 = a`.
pub fn stretch_heights(
    params: &LShapeParams,
    lambda1: Complex64,
    lambda2: Complex64,
) -> Result<(f64, f64)> {
    if lambda1.im <= 0.0 || lambda2.im <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "stretch coordinates must lie in the upper half plane, got Im = ({}, {})",
            lambda1.im, lambda2.im
        )));
    }
    Ok((lambda1.im * params.b, lambda2.im * params.a))
}

/// Identifier of the two sheets of the double.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    First,
    Second,
}

/// A density sampled on tensor grids covering both sheets of the polygon,
/// one grid per rectangular block (`[0,1]x[0,a]` and `[0,q]x[a,a+b]`).
#[derive(Debug, Clone)]
pub struct SampledField {
    pub lower: BlockSamples,
    /// Absent exactly when `b = 0`.
    pub upper: Option<BlockSamples>,
}

/// Uniform tensor samples of both sheets over one rectangle, row-major in y.
#[derive(Debug, Clone)]
pub struct BlockSamples {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
    pub sheet1: Vec<Complex64>,
    pub sheet2: Vec<Complex64>,
}

impl BlockSamples {
    fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::GridMismatch(format!(
                "need at least 2x2 samples, got {}x{}",
                self.nx, self.ny
            )));
        }
        let want = self.nx * self.ny;
        if self.sheet1.len() != want || self.sheet2.len() != want {
            return Err(Error::GridMismatch(format!(
                "expected {want} samples per sheet, got {} and {}",
                self.sheet1.len(),
                self.sheet2.len()
            )));
        }
        Ok(())
    }

    /// Composite trapezoid integral over the rectangle, both sheets summed.
    fn integrate(&self) -> Complex64 {
        let hx = (self.x1 - self.x0) / (self.nx - 1) as f64;
        let hy = (self.y1 - self.y0) / (self.ny - 1) as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.ny {
            let wy = if j == 0 || j == self.ny - 1 { 0.5 } else { 1.0 };
            for i in 0..self.nx {
                let wx = if i == 0 || i == self.nx - 1 { 0.5 } else { 1.0 };
                let k = j * self.nx + i;
                acc += (self.sheet1[k] + self.sheet2[k]) * (wx * wy);
            }
        }
        acc * hx * hy
    }
}

impl SampledField {
    /// Samples a closure on tensor grids matching the polygon blocks.
    pub fn sample(
        params: &LShapeParams,
        nx: usize,
        ny: usize,
        f: impl Fn(Sheet, f64, f64) -> Complex64,
    ) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::GridMismatch(format!(
                "need at least 2x2 samples, got {nx}x{ny}"
            )));
        }
        let fill = |x0: f64, x1: f64, y0: f64, y1: f64| {
            let mut s1 = Vec::with_capacity(nx * ny);
            let mut s2 = Vec::with_capacity(nx * ny);
            for j in 0..ny {
                let y = y0 + (y1 - y0) * j as f64 / (ny - 1) as f64;
                for i in 0..nx {
                    let x = x0 + (x1 - x0) * i as f64 / (nx - 1) as f64;
                    s1.push(f(Sheet::First, x, y));
                    s2.push(f(Sheet::Second, x, y));
                }
            }
            BlockSamples {
                x0,
                x1,
                y0,
                y1,
                nx,
                ny,
                sheet1: s1,
                sheet2: s2,
            }
        };
        let lower = fill(0.0, 1.0, 0.0, params.a);
        let upper = if params.b > 0.0 {
            Some(fill(0.0, params.q, params.a, params.a + params.b))
        } else {
            None
        };
        Ok(Self { lower, upper })
    }
}

/// Pairs a sampled density against the flat form of the double: the sum over
/// both sheets of `∫∫ ν dx dy` in the chart where the form is `dz²`.
pub fn pair_with_psi(field: &SampledField, params: &LShapeParams) -> Result<Complex64> {
    field.lower.validate()?;
    let close = |u: f64, v: f64| (u - v).abs() <= 1e-12 * (1.0 + u.abs() + v.abs());
    if !(close(field.lower.x0, 0.0)
        && close(field.lower.x1, 1.0)
        && close(field.lower.y0, 0.0)
        && close(field.lower.y1, params.a))
    {
        return Err(Error::GridMismatch(
            "lower block must cover [0,1] x [0,a]".into(),
        ));
    }
    let mut total = field.lower.integrate();
    match (&field.upper, params.b > 0.0) {
        (Some(upper), true) => {
            upper.validate()?;
            if !(close(upper.x0, 0.0)
                && close(upper.x1, params.q)
                && close(upper.y0, params.a)
                && close(upper.y1, params.a + params.b))
            {
                return Err(Error::GridMismatch(
                    "upper block must cover [0,q] x [a,a+b]".into(),
                ));
            }
            total += upper.integrate();
        }
        (None, false) => {}
        (Some(_), false) => {
            return Err(Error::GridMismatch(
                "upper block supplied for a polygon with b = 0".into(),
            ));
        }
        (None, true) => {
            return Err(Error::GridMismatch(
                "upper block missing for a polygon with b > 0".into(),
            ));
        }
    }
    Ok(total)
}

/// Input data of the fully ramified double cover calculator: how punctures,
/// holes and branch points of the base surface behave under the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverSpec {
    /// Genus of the base surface.
    pub base_genus: u32,
    /// Punctures lifting to a single puncture (k1).
    pub single_lift_punctures: u32,
    /// Punctures lifting to two punctures (k2).
    pub double_lift_punctures: u32,
    /// Holes lifting to a single hole (a1).
    pub single_lift_holes: u32,
    /// Holes lifting to two holes (a2).
    pub double_lift_holes: u32,
    /// Interior branch points (cardinality of the branch set).
    pub branch_points: u32,
}

/// Topological type `(genus, punctures, holes)` of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceType {
    pub genus: u32,
    pub punctures: u32,
    pub holes: u32,
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.genus, self.punctures, self.holes)
    }
}

/// Type of the fully ramified double cover determined by `spec`, via
/// Riemann-Hurwitz:
/// `g = 2 l - 1 + (q + k1 + a1)/2`, `n = k1 + 2 k2`, `b = a1 + 2 a2`.
///
/// Errors when `q + k1 + a1` is odd (no such cover) or when the genus
/// formula comes out negative.
pub fn cover_type(spec: &CoverSpec) -> Result<SurfaceType> {
    let ramified = spec.branch_points + spec.single_lift_punctures + spec.single_lift_holes;
    if ramified % 2 != 0 {
        return Err(Error::ParityViolation(ramified));
    }
    let genus = 2 * spec.base_genus as i64 - 1 + (ramified / 2) as i64;
    if genus < 0 {
        return Err(Error::NegativeGenus);
    }
    Ok(SurfaceType {
        genus: genus as u32,
        punctures: spec.single_lift_punctures + 2 * spec.double_lift_punctures,
        holes: spec.single_lift_holes + 2 * spec.double_lift_holes,
    })
}

/// Type of the base surface with its branch points removed as punctures.
pub fn punctured_base_type(spec: &CoverSpec) -> SurfaceType {
    SurfaceType {
        genus: spec.base_genus,
        punctures: spec.single_lift_punctures + spec.double_lift_punctures + spec.branch_points,
        holes: spec.single_lift_holes + spec.double_lift_holes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: &str, b: &str, q: &str) -> RationalParams {
        RationalParams::from_strs(a, b, q).unwrap()
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("2").unwrap(), big(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn polygon_unit_example() {
        let p = build_polygon(&params("1", "1", "1/2"));
        let v = p.vertices_f64();
        let expect = [
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 1.0),
            (0.5, 1.0),
            (0.5, 2.0),
            (0.0, 2.0),
        ];
        assert_eq!(v, expect);
        assert_eq!(p.area(), Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn polygon_degenerate_rectangle() {
        let p = build_polygon(&params("1", "0", "1/2"));
        let v = p.vertices_f64();
        // Q and P3 coincide at (1/2, 1)
        assert_eq!(v[3], (0.5, 1.0));
        assert_eq!(v[4], (0.5, 1.0));
        assert_eq!(p.area(), Rational::one());
    }

    #[test]
    fn polygon_area_formula() {
        let pr = params("2", "1", "1/4");
        assert_eq!(build_polygon(&pr).area(), Rational::new(9.into(), 4.into()));
        assert_eq!(pr.area(), Rational::new(9.into(), 4.into()));
    }

    #[test]
    fn double_counts_cone_angles() {
        let d = double(&params("1", "1", "1/2"));
        assert_eq!(d.gluings.len(), 5);
        assert_eq!(d.area(), big(3));
        assert_eq!(d.boundary_length(), big(2));
        let threes: Vec<_> = d
            .cone_points
            .iter()
            .filter(|c| c.angle_over_pi == 3)
            .collect();
        assert_eq!(threes.len(), 1);
        assert_eq!(threes[0].vertex, Vertex::Q);
        // Gauss-Bonnet for a flat disc with cone points: Σ (2π - θ) = 2π.
        let defect: i64 = d
            .cone_points
            .iter()
            .map(|c| 2 - c.angle_over_pi as i64)
            .sum();
        assert_eq!(defect, 2);
    }

    #[test]
    fn double_degenerate_has_no_notch_cone() {
        let d = double(&params("1", "0", "1/2"));
        assert!(d.cone_points.iter().all(|c| c.angle_over_pi == 1));
        assert_eq!(d.cone_points.len(), 2);
        let defect: i64 = d
            .cone_points
            .iter()
            .map(|c| 2 - c.angle_over_pi as i64)
            .sum();
        assert_eq!(defect, 2);
    }

    #[test]
    fn annuli_match_worked_examples() {
        let d = decompose_annuli(&params("1", "1", "1/2")).unwrap();
        assert_eq!(d.upper.modulus, Rational::one());
        assert_eq!(d.lower.modulus, Rational::new(1.into(), 2.into()));
        assert_eq!(d.upper.weight, Rational::new(1.into(), 3.into()));
        assert_eq!(d.lower.weight, Rational::new(2.into(), 3.into()));

        let d = decompose_annuli(&params("1", "2", "1/2")).unwrap();
        assert_eq!(d.upper.weight, Rational::new(1.into(), 2.into()));
        assert_eq!(d.lower.weight, Rational::new(1.into(), 2.into()));

        assert!(matches!(
            decompose_annuli(&params("1", "0", "1/2")),
            Err(Error::DegenerateDecomposition)
        ));
    }

    #[test]
    fn annuli_exact_invariants() {
        let pr = params("7/3", "5/4", "2/7");
        let d = decompose_annuli(&pr).unwrap();
        assert_eq!(d.upper.weight.clone() + d.lower.weight.clone(), Rational::one());
        assert_eq!(
            d.upper.area.clone() + d.lower.area.clone(),
            big(2) * pr.area()
        );
        assert_eq!(d.upper.circumference, big(2) * pr.q());
        assert_eq!(d.upper.height, pr.b().clone());
        assert_eq!(d.lower.modulus, pr.a() / big(2));
    }

    #[test]
    fn twist_worked_examples() {
        let t = twist_data(&params("1", "1", "1/2")).unwrap();
        assert_eq!(t.t, big(2));
        assert_eq!(t.exponents, [BigInt::from(2), BigInt::from(1)]);

        let t = twist_data(&params("2", "1", "1/2")).unwrap();
        assert_eq!(t.t, big(1));
        assert_eq!(t.exponents, [BigInt::from(1), BigInt::from(1)]);

        let t = twist_data(&params("1", "1", "1/3")).unwrap();
        assert_eq!(t.t, big(2));
        assert_eq!(t.exponents, [BigInt::from(3), BigInt::from(1)]);

        assert!(twist_data(&params("1", "0", "1/2")).is_err());
    }

    #[test]
    fn stretch_examples() {
        let p = LShapeParams::new(1.0, 1.0, 0.5).unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(stretch_heights(&p, i, i).unwrap(), (1.0, 1.0));
        assert_eq!(stretch_heights(&p, 2.0 * i, i).unwrap(), (2.0, 1.0));
        let p2 = LShapeParams::new(1.0, 2.0, 0.5).unwrap();
        assert_eq!(
            stretch_heights(&p2, 0.5 * i, 3.0 * i).unwrap(),
            (1.0, 3.0)
        );
        assert!(stretch_heights(&p, Complex64::new(1.0, -0.1), i).is_err());
    }

    #[test]
    fn pairing_constants() {
        let p = LShapeParams::new(1.0, 1.0, 0.5).unwrap();
        let zero = SampledField::sample(&p, 9, 9, |_, _, _| Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(pair_with_psi(&zero, &p).unwrap(), Complex64::new(0.0, 0.0));
        let one = SampledField::sample(&p, 9, 9, |_, _, _| Complex64::new(1.0, 0.0)).unwrap();
        let v = pair_with_psi(&one, &p).unwrap();
        assert!((v.re - 3.0).abs() < 1e-12 && v.im.abs() < 1e-15);
    }

    #[test]
    fn pairing_detects_mismatch() {
        let p = LShapeParams::new(1.0, 1.0, 0.5).unwrap();
        let mut f = SampledField::sample(&p, 9, 9, |_, _, _| Complex64::new(1.0, 0.0)).unwrap();
        f.upper = None;
        assert!(matches!(
            pair_with_psi(&f, &p),
            Err(Error::GridMismatch(_))
        ));
        let p0 = LShapeParams::new(1.0, 0.0, 0.5).unwrap();
        let f0 = SampledField::sample(&p0, 9, 9, |_, _, _| Complex64::new(1.0, 0.0)).unwrap();
        let v = pair_with_psi(&f0, &p0).unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cover_type_worked_cases() {
        let cases = [
            // (l, k1, k2, a1, a2, q) -> (g, n, b)
            ((0, 0, 1, 0, 1, 2), (0, 2, 2)),
            ((0, 0, 0, 1, 0, 3), (1, 0, 1)),
            ((0, 1, 0, 1, 0, 2), (1, 1, 1)),
            ((0, 0, 0, 0, 2, 2), (0, 0, 4)),
            ((1, 0, 0, 0, 1, 0), (1, 0, 2)),
        ];
        for ((l, k1, k2, a1, a2, q), (g, n, b)) in cases {
            let spec = CoverSpec {
                base_genus: l,
                single_lift_punctures: k1,
                double_lift_punctures: k2,
                single_lift_holes: a1,
                double_lift_holes: a2,
                branch_points: q,
            };
            let t = cover_type(&spec).unwrap();
            assert_eq!((t.genus, t.punctures, t.holes), (g, n, b), "spec {spec:?}");
        }
    }

    #[test]
    fn cover_type_rejections() {
        let mut spec = CoverSpec {
            base_genus: 0,
            single_lift_punctures: 1,
            double_lift_punctures: 0,
            single_lift_holes: 0,
            double_lift_holes: 1,
            branch_points: 2,
        };
        assert!(matches!(cover_type(&spec), Err(Error::ParityViolation(3))));
        spec.single_lift_punctures = 0;
        spec.branch_points = 0;
        assert!(matches!(cover_type(&spec), Err(Error::NegativeGenus)));
    }

    #[test]
    fn punctured_base_types_match_cover_cases() {
        let spec = CoverSpec {
            base_genus: 0,
            single_lift_punctures: 0,
            double_lift_punctures: 1,
            single_lift_holes: 0,
            double_lift_holes: 1,
            branch_points: 2,
        };
        let t = punctured_base_type(&spec);
        assert_eq!((t.genus, t.punctures, t.holes), (0, 3, 1));
    }
}
