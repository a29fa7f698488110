//! Exact arithmetic over ℚ: scalars, univariate and multivariate
//! polynomials, and dense matrices.

pub mod exterior;
pub mod matrix;
pub mod multipoly;
pub mod rational;
pub mod ring;
pub mod unipoly;

pub use exterior::{sort_sign, subsets, ExtElem, TensorElem};
pub use matrix::{normalize_direction, signature, signature_charpoly, KernelRank, Matrix, SignatureResult, SymMatrix};
pub use multipoly::{restrict_to_line, Exponents, HomForm, MultiPoly};
pub use rational::{frac, int, Rational};
pub use ring::RingElem;
pub use unipoly::UniPoly;
