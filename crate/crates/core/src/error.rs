use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohrError {
    #[error("series has nonzero constant term {0}")]
    NonzeroConstantTerm(f64),
    #[error("series has constant term {0}, expected 1")]
    NonunitConstantTerm(f64),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("argument {value} outside the domain {domain}")]
    DomainError { value: f64, domain: &'static str },
    #[error("parameter {name} = {value} violates {bound}")]
    ParamOutOfRange {
        name: String,
        value: f64,
        bound: String,
    },
    #[error("unknown kernel `{0}`")]
    UnknownKernel(String),
    #[error("kernel {0} has a non-positive coefficient; the Bohr radius bound requires B_1 > 0 and B_n >= 0")]
    PositivityRequired(String),
    #[error("series did not converge by order {order} (tail estimate {tail:e})")]
    SlowConvergence { order: usize, tail: f64 },
    #[error("truncation tail {tail:e} exceeds {bound:e} at r = {r}")]
    TailTooLarge { r: f64, tail: f64, bound: f64 },
    #[error("closed form and series disagree for {what}: {closed} vs {series}")]
    DualPathMismatch {
        what: String,
        closed: f64,
        series: f64,
    },
    #[error("root bracket invalid: H({low}) = {h_low}, H({high}) = {h_high}")]
    BracketFailure {
        low: f64,
        high: f64,
        h_low: f64,
        h_high: f64,
    },
    #[error("H is not increasing between r = {at} and the next grid point")]
    NonMonotone { at: f64 },
    #[error("no sign change of H(1/3) over [{low}, {high}]")]
    NoSignChange { low: f64, high: f64 },
    #[error("H(1/3) changes sign more than once; sampled signs {signs}")]
    MultipleCrossings { signs: String },
    #[error("Schwarz function is not certified: {0}")]
    UncertifiedSchwarz(String),
}

impl BohrError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            BohrError::DomainError { .. }
            | BohrError::ParamOutOfRange { .. }
            | BohrError::UnknownKernel(_)
            | BohrError::UncertifiedSchwarz(_) => 2,
            BohrError::PositivityRequired(_) => 3,
            _ => 4,
        }
    }

    pub(crate) fn param(name: &str, value: f64, bound: &str) -> Self {
        BohrError::ParamOutOfRange {
            name: name.to_string(),
            value,
            bound: bound.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, BohrError>;
