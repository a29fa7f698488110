//! Exact certificates for real-rootedness, interlacing, hyperbolicity and
//! definite determinantal representations.

pub mod algebra;
pub mod error;
pub mod hyperbolic;
pub mod interlace;
pub mod livsic;
pub mod realroots;
pub mod sampling;
pub mod tracetest;
pub mod ulrich;

pub use algebra::{
    restrict_to_line, signature, HomForm, Matrix, MultiPoly, Rational, SignatureResult, SymMatrix,
    UniPoly,
};
pub use error::{Error, Result};
