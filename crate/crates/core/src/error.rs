use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("factor `{0}` appears more than once")]
    DuplicateFactor(String),

    #[error("factor `{0}` is required but missing from the bundle")]
    MissingFactor(String),

    #[error("factor `{0}` is not part of the technology")]
    UnknownFactor(String),

    #[error("quantity of `{factor}` must be finite and non-negative, got {value}")]
    InvalidQuantity { factor: String, value: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: f64,
        reason: &'static str,
    },

    #[error("output is not finite (zero quantity of `{factor}` raised to a negative exponent)")]
    NonFiniteOutput { factor: String },

    #[error("marginal product of `{factor}` is not finite at a zero quantity")]
    NonFiniteDerivative { factor: String },

    #[error("power index undefined: {0}")]
    UndefinedIndex(&'static str),

    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("`{target}` is not a limit target of {model}")]
    UnknownTarget { model: &'static str, target: String },

    #[error("`{0}` is not a labor factor of this model")]
    UnknownObservable(String),

    #[error("limit of {observable} as {target} {direction}: symbolic {symbolic} disagrees with numeric probe {probe:?}")]
    LimitMismatch {
        observable: String,
        target: String,
        direction: &'static str,
        symbolic: String,
        probe: Vec<f64>,
    },

    #[error("scenario config: {0}")]
    InvalidScenario(String),

    #[error("simulation failed at step {step}: {what} is not finite")]
    SimulationFailure { step: u32, what: &'static str },

    #[error("collapse baseline is undefined: human wage at t=0 is zero")]
    UndefinedBaseline,

    #[error(
        "design matrix is rank deficient (column {column}, |r| = {diagonal:e} below {threshold:e})"
    )]
    RankDeficient {
        column: usize,
        diagonal: f64,
        threshold: f64,
    },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("cannot serialize non-finite number {0}")]
    NonFiniteNumber(f64),
}
