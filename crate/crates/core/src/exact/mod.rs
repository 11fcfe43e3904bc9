//! Exact arithmetic: real number fields, rational linear algebra and
//! integer lattices.

pub mod fast;
pub mod field;
pub mod lattice;
pub mod matrix;
pub mod poly;

pub use fast::{cmp_num, AffineForm, IntMat, IntVec};
pub use field::{format_rational, parse_rational, FieldContext, FieldElement};
pub use lattice::IntLattice;
pub use matrix::{q_decompose, RationalMatrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("minimal polynomial is reducible over Q")]
    ReduciblePolynomial,
    #[error("no root of the minimal polynomial in the interval")]
    NoRootInInterval,
    #[error("more than one root of the minimal polynomial in the interval")]
    MultipleRootsInInterval,
    #[error("elements from different fields were mixed")]
    MixedFieldContexts,
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("degree {0} exceeds the supported maximum of 6")]
    UnsupportedDegree(usize),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Rank of a matrix over Q.
pub fn rational_rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Basis of the rational null space of a matrix.
pub fn rational_kernel(m: &RationalMatrix) -> Vec<Vec<num_rational::BigRational>> {
    m.kernel()
}

/// Serializes field elements as coefficient-string lists.
pub fn ser_elems<S: serde::Serializer>(v: &[FieldElement], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for e in v {
        seq.serialize_element(&e.to_strings())?;
    }
    seq.end()
}
