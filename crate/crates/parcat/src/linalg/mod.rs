//! Exact small-field linear algebra for the additive constructions: scalar
//! fields, enumerated linear categories, and the formal biproduct envelope.

pub mod envelope;
pub mod field;
pub mod linear;

pub use envelope::{find_env_iso, validate_envelope, EnvMor, EnvObj, Envelope, IsoSearch};
pub use field::{Field, Scalar};
pub use linear::{
    enumerate_linear, enumerate_linear_monoidal, linearize, linearize_monoidal, validate_linear,
    BasisId, LinearCategory, LinearPresentation,
};
