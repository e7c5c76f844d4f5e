use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-positive coefficient: {0}")]
    NonPositiveCoefficient(&'static str),
    #[error("invalid ray identifier: {0}")]
    InvalidRay(&'static str),
    #[error("tangent polynomial has complex roots (d = {d}, -2*sqrt(c0) = {bound})")]
    ComplexTpRoots { d: f64, bound: f64 },
    #[error("tangent polynomial has a double root (d = -2*sqrt(c0))")]
    DoubleRootTp,
    #[error("tangent polynomial is not positive on [0, 1] (minimum {0})")]
    TpNotPositiveOnInterval(f64),
    #[error("argument {0} outside the open unit interval")]
    OutOfInterval(f64),
    #[error("iteration did not converge: {0}")]
    NonConvergence(&'static str),
    #[error("all polynomial coefficients vanish")]
    DegenerateAllZero,
    #[error("fraction denominator vanishes ({0:e})")]
    DenominatorVanishes(f64),
    #[error("value on a zero-energy separatrix")]
    Boundary,
    #[error("argument outside the domain of {0}")]
    DomainExceeded(&'static str),
    #[error("point is not within 5% of a separatrix")]
    NotNearSeparatrix,
    #[error("symmetric tangent polynomial (c0 = 1, a2 < 0) is not covered")]
    SymCaseExcluded,
    #[error("no merge point for a2 >= 0")]
    NoMerge,
    #[error("c0 = 1 with a2 = 0 is the Rosen-Morse case")]
    RmCase,
    #[error("requested family needs {0}")]
    WrongFamily(&'static str),
    #[error("A = m pole: the ExpDiff diverges")]
    PoleAtAEqualsM,
    #[error("point is off the requested double-root curve (residual {0:e})")]
    NotOnCurve(f64),
    #[error("grid too coarse: Richardson disagreement {0:e}")]
    GridTooCoarse(f64),
    #[error("factorization function changes sign near x = {0}")]
    NodeDetected(f64),
    #[error("Wronskian changes sign near x = {0}")]
    WronskianNode(f64),
    #[error("factorization energies must be distinct")]
    RepeatedEnergy,
    #[error("no {kind} solution of order {m}")]
    MissingSolution { kind: char, m: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
