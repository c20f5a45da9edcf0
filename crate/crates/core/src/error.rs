use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge: {0}")]
    NonConvergent(String),

    #[error(
        "precision escalation exhausted after {escalations} re-runs \
         (last run at {bits} bits with {cancellation_bits} bits of cancellation)"
    )]
    EscalationExhausted {
        escalations: u32,
        bits: u32,
        cancellation_bits: u32,
    },

    #[error("asymptotic Airy expansion cannot reach the target accuracy at x = {x}: {detail}")]
    AsymptoticAccuracyLoss { x: String, detail: String },

    #[error("cannot parse `{0}` as a number")]
    Parse(String),

    #[error("invalid precision context: {0}")]
    InvalidContext(String),
}

pub type Result<T> = std::result::Result<T, Error>;
