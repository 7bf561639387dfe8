use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("x = {x} lies outside the open domain ({lo}, {hi})")]
    Domain { x: f64, lo: f64, hi: f64 },
    #[error("domain error: {0}")]
    DomainMsg(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("unknown potential `{0}`")]
    UnknownPotential(String),
    #[error("phase error: {0}")]
    Phase(String),
    #[error("level n = {n} is outside the bound-state range ({detail})")]
    Range { n: usize, detail: String },
    #[error("sign of W at the {edge} edge did not stabilize within 40 probes")]
    IndeterminateSign { edge: &'static str },
    #[error("no pair of turning points: {0}")]
    NoTurningPoints(String),
    #[error("found {0} roots where two were expected")]
    MoreThanTwoRoots(usize),
    #[error("degenerate integration interval: {0}")]
    DegenerateInterval(String),
    #[error("quadrature did not converge within {nodes} nodes (last change {change:e})")]
    NonConvergence { nodes: usize, change: f64 },
    #[error("integrand is negative ({value:e}) at x = {x}")]
    NegativeIntegrand { x: f64, value: f64 },
    #[error("could not bracket the energy: {0}")]
    BracketFailure(String),
    #[error("pole of the integrand: {0}")]
    Pole(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("only {found} bound states below threshold, {wanted} requested")]
    InsufficientBoundStates { found: usize, wanted: usize },
    #[error("grid too coarse: level {level} moved by {shift:e} under refinement")]
    GridTooCoarse { level: usize, shift: f64 },
    #[error("fixture file: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
