use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model spec: {0}")]
    InvalidSpec(String),

    #[error("point {re} + {im}i is not inside the unit disk")]
    PointOutsideDisk { re: f64, im: f64 },

    #[error("point {re} + {im}i is not inside the Koenigs domain")]
    PointOutsideDomain { re: f64, im: f64 },

    #[error("inverse map did not converge after {iterations} iterations (residual {residual:e})")]
    InversionDivergence { iterations: usize, residual: f64 },

    #[error("backward half-line leaves the domain at t* = {t_star}")]
    BackwardTimeExceeded { t_star: f64 },

    #[error("point is not a repelling fixed point of the model")]
    NotRepelling,

    #[error("orbit leaves the Stolz angle at t = {t}")]
    OrbitLeavesStolz { t: f64 },

    #[error("quadrature did not reach tolerance: estimate {estimate}, error bound {error:e}")]
    QuadratureTolerance { estimate: f64, error: f64 },

    #[error("path leaves the domain")]
    PathLeavesDomain,

    #[error("orbit too short: k(γ(0), γ(t_max)) = {k} does not exceed the escape threshold")]
    EscapeNotReached { k: f64 },

    #[error("model has no maximal strip containing the orbit")]
    NoMaximalStrip,

    #[error("level {level} is not an interior line of the domain")]
    LevelNotInteriorLine { level: f64 },

    #[error("point sequence does not converge to an arc endpoint")]
    NotConvergent,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("linear solver stalled with relative residual {residual:e}")]
    SolverDivergence { residual: f64 },

    #[error("E and F are not connected through the grid domain")]
    DisconnectedDomain,

    #[error("joining path touches the target arc")]
    PathTouchesArc,

    #[error("orbit has no landing estimate")]
    NoLanding,

    #[error("config error: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn outside_disk(z: crate::Complex) -> Self {
        Error::PointOutsideDisk { re: z.re, im: z.im }
    }

    pub(crate) fn outside_domain(w: crate::Complex) -> Self {
        Error::PointOutsideDomain { re: w.re, im: w.im }
    }
}

/// Process exit status for a passing run.
pub const EXIT_OK: i32 = 0;
/// A task-level assertion failed or a task could not run on its input.
pub const EXIT_ASSERTION: i32 = 2;
/// The scenario or command line is malformed.
pub const EXIT_CONFIG: i32 = 3;
/// A numerical method diverged.
pub const EXIT_NUMERIC: i32 = 4;

impl Error {
    /// Variant name, as written to `errors.json`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::PointOutsideDisk { .. } => "PointOutsideDisk",
            Error::PointOutsideDomain { .. } => "PointOutsideDomain",
            Error::InversionDivergence { .. } => "InversionDivergence",
            Error::BackwardTimeExceeded { .. } => "BackwardTimeExceeded",
            Error::NotRepelling => "NotRepelling",
            Error::OrbitLeavesStolz { .. } => "OrbitLeavesStolz",
            Error::QuadratureTolerance { .. } => "QuadratureTolerance",
            Error::PathLeavesDomain => "PathLeavesDomain",
            Error::EscapeNotReached { .. } => "EscapeNotReached",
            Error::NoMaximalStrip => "NoMaximalStrip",
            Error::LevelNotInteriorLine { .. } => "LevelNotInteriorLine",
            Error::NotConvergent => "NotConvergent",
            Error::OutOfRange(_) => "OutOfRange",
            Error::SolverDivergence { .. } => "SolverDivergence",
            Error::DisconnectedDomain => "DisconnectedDomain",
            Error::PathTouchesArc => "PathTouchesArc",
            Error::NoLanding => "NoLanding",
            Error::Config(_) => "Config",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Io(_) => "Io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidSpec(_) => EXIT_CONFIG,
            Error::InversionDivergence { .. } | Error::QuadratureTolerance { .. } | Error::SolverDivergence { .. } => {
                EXIT_NUMERIC
            }
            _ => EXIT_ASSERTION,
        }
    }
}
