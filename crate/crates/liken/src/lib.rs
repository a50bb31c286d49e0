//! Exact construction, enumeration and verification of likens: strictly
//! increasing sequences of non-negative reals starting at 0, closed under
//! addition and tending to infinity. The two model cases are ℕ under
//! addition and the positive integers under multiplication, the latter
//! represented by logarithms so that both live in the same additive world.
//!
//! The crate enumerates a liken's elements in order with complete
//! representation tracking, checks the catalog of structural properties
//! (convexity, disjoint supports, the Ockham's-razor rule, Bertrand- and
//! Legendre-style generator statistics, …), tests isomorphism through the
//! generator homothety criterion, computes numerical-semigroup invariants,
//! and runs the razor-guided recursive constructor whose output is checked
//! against the multiplicative natural numbers.
//!
//! Everything order-sensitive is exact: rational arithmetic or integer
//! arithmetic on the operands of logarithms, with adaptive-precision
//! dyadic enclosures only where two kinds genuinely meet.

pub mod construct;
pub mod engine;
pub mod error;
pub mod exact;
pub mod export;
pub mod families;
pub mod intutil;
pub mod morphisms;
pub mod oracle;
pub mod properties;
pub mod rep;
pub mod scan;
pub mod semigroup;
pub mod sieve;

pub use engine::{enumerate, omega, subliken_z, Element, Emitted, Enumerator, Gap, Limit, Prefix, ZCursor};
pub use error::{ConstructError, EnumError, MorphismError, QueryError, SemigroupError, SpecError};
pub use exact::{Comparison, Interval, KindMismatch, Value, ValueKind, DEFAULT_PRECISION_CEILING};
pub use families::{LikenSpec, NumericalInfo};
pub use rep::ExponentVec;
