//! Exact-arithmetic homological algebra for N-complexes.
//!
//! An N-complex is a graded vector space with a degree-raising endomorphism
//! `d` satisfying `d^N = 0` (every composite of N consecutive differentials
//! vanishes). This crate provides the linear-algebra substrate over Q and
//! F_p, the N-complex data type with its amplitude homologies
//! `H^i_(r) = Z^i_(r) / B^i_(N-r)`, the homotopy and cone/suspension
//! machinery, quasi-isomorphism tests backed by long exact sequences, and
//! the transport of homology to sequences-of-maps objects.

pub mod chainmap;
pub mod complex;
pub mod elementary;
pub mod field;
pub mod generate;
pub mod homotopy;
pub mod io;
pub mod matrix;
pub mod mor;
pub mod qis;
pub mod suite;
pub mod triangles;

pub use chainmap::ChainMap;
pub use complex::NComplex;
pub use field::{FieldSpec, Scalar};
pub use matrix::{Matrix, Subspace};

/// Errors surfaced by validation and construction entry points.
///
/// Internal invariant violations (e.g. a solve that exactness guarantees
/// must succeed) panic instead: they indicate bugs, not bad input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Matrix or window sizes are inconsistent with the declared dims.
    DimensionMismatch(String),
    /// Some composite of N consecutive differentials is nonzero; carries the
    /// starting degree of the first offending window.
    NPowerNonzero(i64),
    /// Amplitude parameter outside its legal range.
    InvalidAmplitude { r: usize, n: usize },
    /// Two values that must share a field do not.
    FieldMismatch,
    /// A chain map fails f d = d f; carries the first offending degree.
    CommutationFailure(i64),
    /// Composition of maps whose endpoints do not match.
    CompositionMismatch,
    /// A claimed short exact sequence fails degreewise exactness.
    NotExact(i64),
    /// A claimed commutative square does not commute.
    NotCommutative,
    /// Scalar string rejected by the parser.
    BadScalar(String),
    /// Generic parameter error (carries a human-readable description).
    InvalidParameters(String),
    /// A truncation lemma's hypothesis fails at the reported (degree, amplitude).
    PreconditionFailed(i64, usize),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::NPowerNonzero(i) => {
                write!(f, "d^N is nonzero on the window starting at degree {i}")
            }
            Error::InvalidAmplitude { r, n } => {
                write!(f, "amplitude {r} outside the legal range for N = {n}")
            }
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::CommutationFailure(i) => {
                write!(f, "chain-map commutation fails at degree {i}")
            }
            Error::CompositionMismatch => write!(f, "composition endpoints do not match"),
            Error::NotExact(i) => write!(f, "sequence is not exact at degree {i}"),
            Error::NotCommutative => write!(f, "square does not commute"),
            Error::BadScalar(s) => write!(f, "cannot parse scalar {s:?}"),
            Error::InvalidParameters(s) => write!(f, "{s}"),
            Error::PreconditionFailed(i, r) => {
                write!(f, "hypothesis fails: homology nonzero at degree {i}, amplitude {r}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
