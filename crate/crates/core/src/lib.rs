//! Exact linear algebra and structure theory for finite-dimensional n-Lie
//! algebras over Q and GF(p), with a catalog and classifier for class-two
//! nilpotent algebras of small dimension.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod field;
pub mod fingerprint;
pub mod format;
pub mod iso;
pub mod linalg;
pub mod sample;
pub mod tuples;

pub use algebra::{BasisChange, FilippovCheck, NLieAlgebra, NilpotencyClass, SeriesReport};
pub use error::{AlgebraError, CatalogError, ClassifyError, FieldError, FormatError, LinalgError};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::{Matrix, Subspace, Vector};

/// An n-Lie algebra over the rationals.
pub type QAlgebra = NLieAlgebra<Rationals>;
/// An n-Lie algebra over a prime field.
pub type FpAlgebra = NLieAlgebra<PrimeField>;
