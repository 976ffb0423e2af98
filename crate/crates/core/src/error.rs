use thiserror::Error;

use crate::linalg::Subspace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{e} exceeds 2^20")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of GF({q})")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("codes live over different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(u32, u32),

    // linear algebra
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a subspace: {0}")]
    NotSubspace(String),
    #[error("the two hyperplanes coincide")]
    EqualHyperplanes,
    #[error("vectors are linearly dependent")]
    DependentVectors,

    // codes
    #[error("t = {t} is outside 1..={n}")]
    BadT { t: usize, n: usize },
    #[error("bad coordinate indices: {0}")]
    BadIndices(String),
    #[error("exact enumeration of {q}^{k} words exceeds the cap 2^24")]
    TooLargeExact { q: u32, k: usize },
    #[error("invalid monomial map: {0}")]
    InvalidMonomial(String),
    #[error("code is not in C_{t}(n,k)")]
    NotInCt { t: usize },

    // grassmann
    #[error("enumeration of {count} subspaces exceeds the cap {cap}")]
    EnumerationTooLarge { count: String, cap: u64 },
    #[error("vertex not present in the graph")]
    VertexAbsent,

    // constructions
    #[error("need {n} distinct points but GF({q}) has only {q}")]
    NotEnoughPoints { n: usize, q: u32 },
    #[error("evaluation points are not distinct")]
    DuplicatePoints,
    #[error("not a hyperplane of x containing x ∩ y")]
    BadHyperplane,
    #[error("representative lies in the hyperplane")]
    RepInH,
    #[error("codes are at distance {d} > t = {t}")]
    PreconditionDepth { d: usize, t: usize },
    #[error("codes coincide")]
    IdenticalCodes,
    #[error("no admissible step found on any hyperplane")]
    NoStepFound,
    #[error("no hyperplane avoids every coordinate meet")]
    NoShrinkFound,
    #[error("bad subspace u: {0}")]
    BadU(String),
    #[error("path construction failed after {} steps: {reason}", partial.len().saturating_sub(1))]
    PathFailed {
        reason: String,
        partial: Vec<Subspace>,
    },
    #[error("no lambda in GF({0})* yields an opposite code")]
    NoLambda(u32),

    // io / cli
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
