//! Error types shared across the crate.

use crate::rep::ExponentVec;

/// A generator family description failed validation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("generator list is empty")]
    EmptyList,
    #[error("generators not strictly increasing at position {0} (1-based)")]
    NotIncreasing(usize),
    #[error("generator at position {0} (1-based) is not strictly positive")]
    NonPositive(usize),
    #[error("generators mix rational and log-int kinds")]
    MixedKinds,
    #[error("modulus must be ≥ 1")]
    BadModulus,
}

/// Enumeration could not start.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("spec yields no generators")]
    EmptySpec,
    #[error("invalid spec: {0}")]
    InvalidSpec(SpecError),
}

/// A query against a prefix or spec failed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("generator index {0} is not produced by this spec")]
    UnknownGeneratorIndex(u32),
    #[error("value is not an element of the enumerated prefix")]
    NotAnElement,
    #[error("element has {} representations, not one", .0.len())]
    NonUnique(Vec<ExponentVec>),
    #[error("element index out of range")]
    IndexOutOfRange,
    #[error("operation requires the log-int kind")]
    KindMismatch,
}

/// Numerical-semigroup invariant computations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    EmptyList,
    #[error("{0} is not a member of the semigroup")]
    NotAMember(u64),
    #[error("semigroup is not cofinite (gcd of generators exceeds 1)")]
    NotCofinite,
    #[error("semigroup equals ℕ; there is no positive gap")]
    NoGaps,
}

/// The recursive constructor hit a dead end.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("convexity window is empty at step {0}")]
    EmptyConvexityWindow(usize),
    #[error("distinct exponent vectors collided on one value at step {0}")]
    ValueCollision(usize),
    #[error("user value list exhausted at step {0}")]
    PolicyExhausted(usize),
    #[error("user value at step {step} falls outside the open insertion window")]
    ValueOutsideWindow { step: usize },
}

/// Isomorphism testing errors.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("spec yields no generators")]
    EmptySpec,
    #[error("prefixes have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("prefix has an element with multiple representations at index {0}")]
    NonUnique(usize),
}
