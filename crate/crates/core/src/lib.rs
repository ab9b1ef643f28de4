//! Maximal block statistics of morphic words.
//!
//! The crate generates fixed points of nonerasing morphisms (optionally
//! coded), scans them for maximal Δ-blocks and x-blocks, links blocks into
//! chains whose position ratios converge, and evaluates those limits exactly
//! where the morphism allows it. A smaller part deals with the real numbers
//! `Σ b^(-n_j)` built from the one-positions of such words.

pub mod blocks;
pub mod constructions;
pub mod diophantine;
pub mod error;
pub mod format;
pub mod interval;
pub mod linalg;
pub mod sequences;
pub mod word;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use interval::Interval;
pub use linalg::{Matrix, Vector};
pub use word::{Alphabet, Coding, Letter, MorphicSpec, Morphism, Word, WordStream};

/// Exact rational scalar used for all reported values.
pub type Rational = BigRational;
/// Exact integer matrix: incidence matrices and their powers.
pub type IntMatrix = Matrix<BigInt>;
/// Exact integer vector: Parikh vectors.
pub type IntVector = Vector<BigInt>;
/// Matrix used only for floating-point warm starts.
pub type FloatMatrix = Matrix<f64>;
/// Certified rational enclosure.
pub type RatInterval = Interval<BigRational>;
