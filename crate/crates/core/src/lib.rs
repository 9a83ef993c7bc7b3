//! Exact computations with generalized Verma modules over the Lie
//! superalgebra E(5,10).
//!
//! The crate is organised bottom up:
//!
//! * [`exactla`]: sparse exact linear algebra over a [`Field`];
//! * [`sl5`]: weights of `sl(5)`, dominance order, Weyl dimensions;
//! * [`uminus`]: the enveloping algebra of the negative part, its PBW normal
//!   form and the `ω_I` basis;
//! * [`modules_sl5`]: irreducible `sl(5)`-modules realised inside tensor
//!   powers of the standard module and its dual;
//! * [`verma`]: Verma modules, singular vectors and morphisms.
//!
//! Everything is exact: the default scalar is [`Scalar`], an arbitrary
//! precision rational.

pub mod exactla;
pub mod field;
pub mod modules_sl5;
pub mod sl5;
pub mod uminus;
pub mod verma;

pub use field::{format_scalar, parse_scalar, Field, Scalar};
pub use sl5::{DominanceOrder, Weight};

use thiserror::Error;

/// Errors reported by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("rank mismatch: permutation of rank {perm} applied to tuple of length {tuple}")]
    RankMismatch { perm: usize, tuple: usize },
    #[error("vector is not singular: {0}")]
    NotSingular(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("invalid certificate: {0}")]
    Certificate(String),
}

/// Sparse matrix with exact rational entries.
pub type Matrix = exactla::SparseMatrix<Scalar>;
/// Sparse vector with exact rational entries.
pub type Vector = exactla::SparseVec<Scalar>;
/// Element of the enveloping algebra with rational coefficients.
pub type UElement = uminus::UElement<Scalar>;
/// Irreducible module with rational action matrices.
pub type Module = modules_sl5::Sl5Module<Scalar>;
/// Morphism of Verma modules with rational coefficients.
pub type Morphism = verma::MorphismData<Scalar>;
