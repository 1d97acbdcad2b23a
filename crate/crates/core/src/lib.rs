//! Numerical tools for submultiplicative sequences and unital normed
//! algebras.
//!
//! * [`fekete`]: root tables, certified limit bounds and binomial
//!   convolution of submultiplicative sequences.
//! * [`algebra`]: power norms, spectral radius upper bounds, Neumann and
//!   perturbation inversion, resolvents, over any [`NormedAlgebra`].
//! * [`matrix`], [`wiener`], [`shift`]: the concrete instances.
//! * [`io`], [`generators`]: text formats and inline generator specs.

pub mod algebra;
pub mod error;
pub mod fekete;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod report;
pub mod sampling;
pub mod scale;
pub mod selftest;
pub mod shift;
pub mod wiener;

pub use algebra::{NormedAlgebra, Scalar};
pub use error::{Error, Result};
pub use fekete::PrefixSequence;
pub use matrix::{DenseMatrix, NormKind};
pub use report::{ConvergenceReport, RootEntry, RootReport, ValueColumn};
pub use shift::WeightedShift;
pub use wiener::WienerElement;
