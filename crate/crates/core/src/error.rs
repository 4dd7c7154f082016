use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("scalar domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("modulus {0} is not irreducible over GF(2)")]
    Reducible(String),

    #[error("invalid field modulus: {0}")]
    BadModulus(String),

    #[error("malformed digest: {0}")]
    MalformedDigest(String),

    #[error("invalid scheme parameters: {0}")]
    InvalidScheme(String),

    #[error("unknown scheme `{0}` (expected zemor, bsv, neg, tz or cookies)")]
    UnknownScheme(String),

    #[error("scheme `{0}` has no cookie matrix")]
    NoCookie(String),

    #[error("invalid bit string: {0}")]
    BadBits(String),

    #[error("invalid word: {0}")]
    BadWord(String),

    #[error("word length {n} exceeds the enumeration cap {cap}; raise the cap to go further")]
    OverCap { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
