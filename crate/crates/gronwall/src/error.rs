use thiserror::Error;

/// Errors surfaced by the certified-arithmetic and enumeration layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("log domain: input interval touches or crosses 0")]
    LogDomain,
    #[error("constant exhausted: {requested} bits requested but only {available} bits of the stored constant are validated")]
    ConstantExhausted { requested: u32, available: u32 },
    #[error("G undefined for n < 2")]
    GUndefined,
    #[error("log log domain downstream: n <= 1 has no log log")]
    LogLogDomain,
    #[error("prime table cap {cap} too small, need primes up to {needed}")]
    PrimeTableTooSmall { cap: u64, needed: u64 },
    #[error("sieve range [{lo}, {hi}] exceeds memory budget {budget}; split into segments of at most {suggested}")]
    SieveBudget {
        lo: u64,
        hi: u64,
        budget: u64,
        suggested: u64,
    },
    #[error("extend sieve: epsilon range requires primes beyond cap {cap}")]
    ExtendSieve { cap: u64 },
    #[error("enumeration cap exceeded: log limit {requested} > cap {cap}")]
    LogLimitCap { requested: f64, cap: f64 },
    #[error("domain: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid factored form: {0}")]
    InvalidFactored(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
