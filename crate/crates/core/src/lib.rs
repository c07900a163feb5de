//! Core library: truncated noncommutative series, dihedral symmetry,
//! braid associators, and the verification suite around them.

pub mod associator;
pub mod construct;
pub mod dihedral;
pub mod error;
pub mod fuchsian;
pub mod json;
pub mod linalg;
pub mod lyndon;
pub mod morphism;
pub mod reps;
pub mod scalar;
pub mod series;
pub mod tensor;
pub mod transcendental;

pub use error::{Error, Result};
pub use scalar::{cx, rat, Coeff, Cx, Rat};
pub use series::{bracket, GSeries, Letter, Mono};
