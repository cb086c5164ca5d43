//! Numerical toolkit for L-shaped polygons, their half-translation doubles,
//! and the Schwarz-Christoffel maps that uniformize them.
//!
//! The library is organised around one family of flat surfaces: the double
//! `S(a, b, q)` of the L-shaped polygon `L(a, b, q)` glued along all edges
//! except the bottom one. It provides
//!
//! - exact (rational) models of the polygon, its annulus decomposition and
//!   Dehn-twist data ([`surface`]),
//! - endpoint-singular quadrature and the Schwarz-Christoffel side integrals
//!   with an accessory-parameter solver ([`quad`], [`sc`]),
//! - the two one-parameter families of surfaces traced by shrinking the notch,
//!   with log-corrected asymptotics of the notch radius ([`paths`]),
//! - the explicit boundary-twist quasiconformal map on a collar annulus and
//!   its Beltrami dilatation ([`collar`]),
//! - the round-annulus pairing identity for Laurent differentials
//!   ([`annulus`]).
//!
//! All computations are pure functions over immutable inputs; every struct is
//! `Send + Sync` and safe to use from data-parallel sweeps.

pub mod annulus;
pub mod collar;
pub mod elliptic;
mod error;
pub mod paths;
pub mod quad;
pub mod roots;
pub mod sc;
pub mod surface;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
