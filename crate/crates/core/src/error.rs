use thiserror::Error;

/// Invalid points, configurations, or constructor parameters.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("point has a non-finite coordinate")]
    NonFiniteCoordinate,
    #[error("symbol {symbol} is outside the alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u8, alphabet: u8 },
    #[error("symbolic word must have length >= 1")]
    EmptyWord,
    #[error("alphabet size must be in 2..=255, got {0}")]
    AlphabetSize(usize),
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },
    #[error("horizon {horizon} exceeds the {max} steps this system's stored points support")]
    HorizonTooLong { horizon: usize, max: usize },
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
}

impl ConfigError {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        ConfigError::Parameter {
            name,
            reason: reason.into(),
        }
    }
}

/// A sampler could not produce the requested points.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("ball sampler gave up after {attempts} proposals (radius {radius})")]
    Exhausted { attempts: usize, radius: f64 },
    #[error("sampler returned {got} points, needed at least {needed}")]
    TooFew { got: usize, needed: usize },
    #[error("point representation does not belong to this system")]
    ForeignPoint,
}

/// Failure of an estimation run.
#[derive(Debug, Error)]
pub enum EstimateError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("sampling around base center {center}: {source}")]
    Sampler {
        center: usize,
        #[source]
        source: SamplerError,
    },
    #[error(transparent)]
    Sampling(#[from] SamplerError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Rejections raised by the exact shift oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("alphabet size must be >= 2, got {0}")]
    Alphabet(usize),
    #[error("word length {length} is shorter than horizon + depth + 1 = {needed}")]
    WordTooShort { length: usize, needed: usize },
    #[error("enumeration of {pairs} pairs exceeds the cap of {cap}")]
    TooLarge { pairs: u128, cap: u128 },
    #[error("tail fraction must lie in (0, 1), got {0}")]
    TailFraction(f64),
    #[error("prefix symbol {symbol} is outside the alphabet of size {alphabet}")]
    PrefixSymbol { symbol: u8, alphabet: usize },
}
