use thiserror::Error;

/// Errors raised by the parameter engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^16")]
    PrimeTooLarge(u64),
    #[error("zero has no square class")]
    ZeroArgument,
    #[error("objects live over different fields (p = {left} and p = {right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("constituent {0} is opaque; only quadratic-character constituents are supported here")]
    UnsupportedConstituent(String),
    #[error("malformed parameter: {0}")]
    MalformedParameter(String),
    #[error("not a parameter of kind {kind}: {reason}")]
    Classification { kind: String, reason: String },
    #[error("character of conductor exponent {conductor} is not primitive at level {level}")]
    NonPrimitiveCharacter { conductor: u32, level: u32 },
    #[error("{op} is not defined for kind {kind}")]
    WrongKind { op: &'static str, kind: String },
    #[error("exact value {0} is not a sign")]
    NotASign(String),
    #[error("values do not form a character: {0}")]
    NotACharacter(String),
    #[error("element {0} lies outside the character's domain")]
    OutsideDomain(String),
    #[error("parameter is not generic: L(s, Ad) has a pole at s = {0}")]
    NotGeneric(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambiguous selection: {0}")]
    Ambiguous(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
