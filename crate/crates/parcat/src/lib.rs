//! parcat: a verification engine for partial actions of finite groups on
//! finite strict semigroupal/monoidal categories.
//!
//! Everything is finite and fully tabulated, so category-theoretic laws
//! (associativity, functoriality, naturality, coherence diagrams) are decided
//! by exhaustive enumeration. On top of the tabulated substrate the crate
//! builds and machine-checks: central idempotents and their generated ideals,
//! partial group actions and the restriction of global ones, the monads and
//! fusion operators they induce, the standard globalization, partial
//! equivariantization, the partial trace, and the partial smash product.

pub mod equivar;
pub mod fincat;
pub mod globalize;
pub mod group;
pub mod idempotent;
pub mod cli;
pub mod corpus;
pub mod linalg;
pub mod monoidal;
pub mod paction;
pub mod polyad;
pub mod report;
pub mod smash;
pub mod specfile;

#[cfg(test)]
pub(crate) mod testutil;
