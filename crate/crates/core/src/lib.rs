//! Exact-arithmetic engine for the Hodge theory of one-parameter
//! degenerations whose special fiber has a one-dimensional singular locus:
//! spectrum algebra, closed-form local models and catalogs, the
//! Yomdin-deformation spectrum formula, curve-sheaf cohomology,
//! spectral-sequence assembly of vanishing cohomology, Clemens-Schmid
//! discrepancy accounting, and the double-box graph-hypersurface
//! computation.
//!
//! Everything is computed over `Q`; no floating point appears anywhere.

pub mod assembler;
pub mod curves;
pub mod diagram;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod local;
pub mod rational;
pub mod spectrum;
pub mod sss;
pub mod symanzik;

pub use error::{Error, Result};
pub use rational::Rational;
pub use spectrum::{Spectrum, WeightedSpectrum};
