use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // ---- input validation ------------------------------------------------
    #[error("growth distribution has no states")]
    EmptyDistribution,

    #[error("growth distribution has {states} states but {probs} probabilities")]
    LengthMismatch { states: usize, probs: usize },

    #[error("growth states must be strictly increasing (state {index}: {value} <= {previous})")]
    StatesNotIncreasing {
        index: usize,
        value: f64,
        previous: f64,
    },

    #[error("growth state {index} = {value} must be > -1")]
    StateBelowMinusOne { index: usize, value: f64 },

    #[error("probability {index} = {value} must be > 0")]
    NonPositiveProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within 1e-12")]
    ProbabilitySum { sum: f64 },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown company name '{0}'")]
    UnknownCompany(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("empty sweep grid: {0}")]
    EmptyGrid(String),

    #[error("no sign change on bracket [{lo}, {hi}] (differences {f_lo} and {f_hi})")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    // ---- model infeasibility ---------------------------------------------
    #[error("discount rate k = {k} must exceed expected growth g = {growth} (k <= g)")]
    DiscountNotAboveGrowth { k: f64, growth: f64 },

    #[error(
        "delta = (1+k)^2 - (1+g)^2 - sigma^2 = {delta} must be strictly positive (delta <= 0)"
    )]
    NonPositiveDelta { delta: f64 },

    #[error("no-synergy growth undefined: combined pre-merger equity {equity} must be positive")]
    NonPositiveEquity { equity: f64 },
}

impl Error {
    /// True for errors that come from the model itself breaking down
    /// (k <= g, delta <= 0) rather than from malformed input.
    pub fn is_infeasible_model(&self) -> bool {
        matches!(
            self,
            Error::DiscountNotAboveGrowth { .. }
                | Error::NonPositiveDelta { .. }
                | Error::NonPositiveEquity { .. }
        )
    }
}
