//! Partial equivariantization: equivariant objects and their tensor
//! structure, global/partial conversions, the σ̃ presentation, the partial
//! trace, and the algebra object of a unital partial action.

pub mod algebra;
pub mod convert;
pub mod envaction;
pub mod object;
pub mod trace;

pub use algebra::{algebra_object, validate_algebra_object, AlgebraObject};
pub use convert::{
    from_global, sigma_to_tilde, tilde_to_sigma, to_global, validate_global_equivariant,
    validate_sigma_tilde_square, GlobalEquivariantObject, SigmaTilde,
};
pub use envaction::EnvAction;
pub use object::{
    assemble_equivariantization, enumerate_equivariant, tensor_equivariant, unit_equivariant, validate_equivariant_morphism,
    validate_equivariant_object, EquivariantObject,
};
pub use trace::{
    partial_trace, trace_carrier, trace_mor, validate_env_equivariant, validate_env_sigma_tilde,
    validate_trace_functorial, EnvSigmaTilde, TraceObject,
};
