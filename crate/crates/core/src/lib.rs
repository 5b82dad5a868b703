//! Gaussian lattice reduction, the rewrite systems whose normal forms are its
//! output words, worst-case input extraction, and the analogous rewrite systems
//! for bubble, insertion and selection sort.
//!
//! Geometry is generic over [`Scalar`]; exact work uses [`Rational`].

pub mod cli;
pub mod error;
pub mod gauss;
pub mod lattice;
pub mod matrix;
pub mod rewrite;
pub mod scalar;
pub mod sort;
pub mod word;
pub mod worst_case;

pub use error::{Error, Result};
pub use gauss::{reduce, Reduction, ReductionTrace, TraceStep};
pub use lattice::{gram_of_basis, nearest_translation, Basis2D, GramMatrix, ReducedClass};
pub use matrix::UnimodularMatrix;
pub use rewrite::{
    find_redex, is_reduced_word, measure, normalize, normalize_with, NormalForm, Redex, RuleId,
    SignFactor, Strategy, TerminationMeasure,
};
pub use scalar::Scalar;
pub use sort::{
    apply_word, inc_decomposition, random_decomposition, sort_measure, sort_normalize, Algorithm,
    IncDecomposition, Permutation, SortMeasure, SortRule, SortWord,
};
pub use word::{GaussWord, Letter};

/// Arbitrary-precision rationals, the default scalar.
pub type Rational = num_rational::BigRational;
/// Machine rationals; fast, and panics on overflow in debug builds.
pub type SmallRational = num_rational::Ratio<i128>;

pub type Gram = GramMatrix<Rational>;
pub type GramF64 = GramMatrix<f64>;
pub type GramF32 = GramMatrix<f32>;
pub type Basis = Basis2D<Rational>;
