use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor argument violates a type invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The two-annulus decomposition does not exist (the notch height b is zero).
    #[error("degenerate decomposition: b = 0 leaves a single annulus")]
    DegenerateDecomposition,

    /// Branched double cover data with q + a1 + k1 odd.
    #[error("parity violation: branch points + single-lift punctures + single-lift holes must be even, got {0}")]
    ParityViolation(u32),

    /// Cover data whose genus formula comes out negative.
    #[error("no such cover: computed genus would be negative")]
    NegativeGenus,

    /// Adaptive quadrature ran out of subdivision depth.
    #[error("quadrature did not converge on [{lo}, {hi}]: error estimate {estimate:e} above tolerance {tolerance:e}")]
    QuadratureNonConvergence {
        lo: f64,
        hi: f64,
        estimate: f64,
        tolerance: f64,
    },

    /// Two prevertices closer than machine tolerance.
    #[error("prevertex collision: gap {0:e} below resolvable tolerance")]
    PrevertexCollision(f64),

    /// A root finder could not bracket a sign change.
    #[error("no bracket found: {0}")]
    NoBracket(String),

    /// An iterative solver hit its iteration cap above tolerance.
    #[error("solver did not converge: residual {residual:e} after {iterations} iterations")]
    SolverNonConvergence { residual: f64, iterations: usize },

    /// A point lies outside the domain of the requested map.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// Sampled-field grid incompatible with the polygon it is paired against.
    #[error("grid/domain mismatch: {0}")]
    GridMismatch(String),

    /// The twist map degenerated (|f_z| too small to be quasiconformal).
    #[error("degenerate dilatation: |f_z| = {0:e} too close to zero")]
    DegenerateDilatation(f64),

    /// Not enough samples for an asymptotic fit.
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
}
