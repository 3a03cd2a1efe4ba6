//! Finite truncations of the operators attached to a pair of totally positive
//! symbols φ₊, φ₋, the correlation kernels of the associated Schur measure,
//! and numerical checks of their identities and spectra.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod schur;
pub mod kernel;
pub mod operators;
pub mod series;
pub mod spectral;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use scalar::{Rational, Scalar, ScalarKind};
pub use series::{Side, SymbolParams, TruncatedSeries};
