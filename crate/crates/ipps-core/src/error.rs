//! Error types shared across the crate.

use thiserror::Error;

/// Errors from Pfaffian evaluation and related structured formulas.
#[derive(Debug, Error, PartialEq)]
pub enum PfaffianError {
    #[error("antisymmetric matrix order must be even and positive, got {0}")]
    OddOrder(usize),
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("quotient form requires nonzero entries, found zero at index {0}")]
    ZeroEntry(usize),
    #[error("minor expansion refused for order {order} (max {max}): cost grows factorially")]
    OrderTooLarge { order: usize, max: usize },
}

/// Errors from lattice configurations, generators, and exact evolution.
#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("site {site} outside window of {window} sites")]
    SiteOutOfWindow { site: usize, window: usize },
    #[error("jump requires adjacent sites, got {from} -> {to}")]
    NotAdjacent { from: usize, to: usize },
    #[error("source site {0} is not occupied")]
    SourceEmpty(usize),
    #[error("window of {requested} sites exceeds exact-engine cap {cap}; use the Monte Carlo engine instead")]
    WindowTooLarge { requested: usize, cap: usize },
    #[error("BCRW rates must satisfy p*l = q*r with p,q > 0 (or the one-sided degenerate cases); got p={p}, q={q}, l={l}, r={r}")]
    RateCondition { p: f64, q: f64, l: f64, r: f64 },
    #[error("rate arrays must cover the window ({window} sites), got {got}")]
    RateArrayLength { window: usize, got: usize },
    #[error("negative rate {0}")]
    NegativeRate(f64),
    #[error("negative time {0}")]
    NegativeTime(f64),
    #[error("interval [{y}, {z}) is not inside the window (grid 0..={grid})")]
    BadInterval { y: usize, z: usize, grid: usize },
    #[error("points must be strictly increasing and inside the window")]
    BadPoints,
    #[error("Bernoulli parameter {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Errors from kernel tables and the dual pair-PDE solvers.
#[derive(Debug, Error, PartialEq)]
pub enum DualityError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("kernel table pair ({y}, {z}) outside grid 0..={grid} or y > z")]
    PairOutOfTable { y: usize, z: usize, grid: usize },
    #[error("equilibrium requires p + q > 0")]
    ZeroJumpRates,
    #[error("immigration rate must be positive for the convergence bound")]
    ZeroImmigration,
    #[error("initial kernel table has grid {got}, model window needs {want}")]
    GridMismatch { want: usize, got: usize },
}

/// Errors from Pfaffian point-process kernels and intensity evaluation.
#[derive(Debug, Error, PartialEq)]
pub enum PointProcessError {
    #[error("intensity request needs strictly increasing points")]
    UnorderedPoints,
    #[error("intensity request of {n} points exceeds matrix cap {cap}")]
    TooManyPoints { n: usize, cap: usize },
    #[error("empty point list")]
    EmptyRequest,
    #[error("point {0} outside the kernel's valid range")]
    PointOutOfRange(String),
    #[error("thinning probability {0} outside [0, 1]")]
    BadThinning(f64),
    #[error("thickening rate {0} must be nonnegative")]
    BadThickening(f64),
    #[error("conjugation matrix at point {point} has determinant {det}, need 1")]
    NotUnitDeterminant { point: String, det: f64 },
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
}

/// Errors from continuum kernels and PDE solvers.
#[derive(Debug, Error, PartialEq)]
pub enum ContinuumError {
    #[error("diffusion scale alpha must be positive, got {0}")]
    BadAlpha(f64),
    #[error("parameter {name} must be nonnegative, got {value}")]
    NegativeParameter { name: &'static str, value: f64 },
    #[error("kernel requires y <= z, got ({y}, {z})")]
    UnorderedPair { y: f64, z: f64 },
    #[error("firework kernel is singular at the origin; |{0}| is below the exclusion radius")]
    TooCloseToOrigin(f64),
    #[error("quadrature failed to reach tolerance {tol} (estimate {estimate})")]
    QuadratureFailed { tol: f64, estimate: f64 },
    #[error("grid spacing {0} is not positive")]
    BadGrid(f64),
}
