use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state outside grid bounds: {0:?}")]
    OutOfBounds(Vec<f64>),
    #[error("non-finite coordinate in state")]
    NonFinite,
    #[error("scale factor must be strictly positive, got {0}")]
    NonPositiveScale(f64),
    #[error("compound state is not materialized in this model: {0}")]
    NotMaterialized(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("reference states are not strictly ordered")]
    ReferenceNotStrict,
    #[error("accessibility predicate is not monotone in lambda near {0}")]
    NonMonotone(f64),
    #[error("state is incomparable with the reference family at lambda {0}")]
    Incomparable(f64),
    #[error("bracket search did not terminate")]
    BracketNotFound,
    #[error("degenerate fit: all abscissae are equal")]
    DegenerateFit,
    #[error("fitted scale is not orientation preserving (alpha = {0})")]
    NegativeScale(f64),
    #[error("path leaves the equation-of-state domain at {0:?}")]
    OutsideDomain(Vec<f64>),
    #[error("non-positive absolute temperature {0}")]
    NonPositiveTemperature(f64),
    #[error("singular integrand near {0}")]
    SingularIntegrand(f64),
    #[error("quadrature failed to converge on [{0}, {1}]")]
    QuadratureFailed(f64, f64),
    #[error("no equilibrium {0} found for state (N2 violated)")]
    N2Violated(&'static str),
    #[error("model premise violated: {0}")]
    Premise(String),
    #[error("missing capability: {0}")]
    MissingCapability(&'static str),
    #[error("step size {dt} exceeds limit {limit}")]
    StepTooLarge { dt: f64, limit: f64 },
    #[error("temperature crossed zero at t = {0}")]
    TemperatureCollapse(f64),
    #[error("no convergence before t_end = {0}")]
    NoConvergence(f64),
    #[error("protocol infeasible: {0}")]
    Infeasible(String),
    #[error("empty sample set")]
    EmptySamples,
    #[error("epsilon sequence must be strictly decreasing and positive")]
    BadEpsilonSequence,
}
