//! Exact total-positivity tests and the wiring-diagram side of the story.
//!
//! No floating point is used anywhere here: matrices hold `BigRational`s and
//! every predicate is decided exactly.

mod json;
mod matrix;
mod tnn;
mod transport;
mod wiring;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

pub use json::{parse_rational_str, MatrixJson, WiringJson};
pub use matrix::{combinations, proper_subsets, RationalMatrix};
pub use tnn::{
    chevalley_product, cryer_split, cryer_test, generator_product, is_totally_nonnegative,
    is_totally_nonnegative_with, is_totally_positive, is_totally_positive_with,
    lower_chevalley_product, CryerSplit, Generator, DEFAULT_MINOR_BOUND,
};
pub use transport::{audit_transport, quiver_for_diagram, snake_quiver, transport_quiver, TransportAudit};
pub use wiring::{
    all_reduced_words, chambers_by_level, commutation_classes, move_path, Chamber, ExchangeSets,
    LocalMove, WiringDiagram,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PositivityError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("bad index set {0:?}")]
    BadIndexSet(Vec<usize>),
    #[error("dimension {n} exceeds the bound {bound}")]
    DimensionTooLarge { n: usize, bound: usize },
    #[error("generator index {index} out of range for n = {n}")]
    BadIndex { index: usize, n: usize },
    #[error("parameter {0} is negative")]
    NegativeParameter(String),
    #[error("determinant is {0}, not 1")]
    NotDeterminantOne(String),
    #[error("leading principal minor of order {0} vanishes")]
    NoLDU(usize),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad matrix entry: {0}")]
    BadEntry(String),
}

impl PositivityError {
    pub fn code(&self) -> &'static str {
        match self {
            PositivityError::NotSquare => "NotSquare",
            PositivityError::BadIndexSet(_) => "BadIndexSet",
            PositivityError::DimensionTooLarge { .. } => "DimensionTooLarge",
            PositivityError::BadIndex { .. } => "BadIndex",
            PositivityError::NegativeParameter(_) => "NegativeParameter",
            PositivityError::NotDeterminantOne(_) => "NotDeterminantOne",
            PositivityError::NoLDU(_) => "NoLDU",
            PositivityError::InvalidWord(_) => "InvalidWord",
            PositivityError::InvalidMove(_) => "InvalidMove",
            PositivityError::DimensionMismatch { .. } => "DimensionMismatch",
            PositivityError::BadEntry(_) => "BadEntry",
        }
    }
}

/// Whether every chamber minor of `w` is positive at `m`.
pub fn chamber_positivity_test(m: &RationalMatrix, w: &WiringDiagram) -> Result<bool, PositivityError> {
    if m.n() != w.n() {
        return Err(PositivityError::DimensionMismatch { expected: w.n(), got: m.n() });
    }
    for c in w.chambers() {
        if !m.flag_minor(&c.index_set)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Chamber test applied to both `m` and its transpose.
pub fn chamber_positivity_test_both(m: &RationalMatrix, w: &WiringDiagram) -> Result<bool, PositivityError> {
    Ok(chamber_positivity_test(m, w)? && chamber_positivity_test(&m.transpose(), w)?)
}

/// Exact check of `e * f = a * c + b * d` for the chamber minors around the
/// triangle flipped by `mv`.
pub fn verify_exchange_identity(
    w: &WiringDiagram,
    mv: &LocalMove,
    m: &RationalMatrix,
) -> Result<bool, PositivityError> {
    if m.n() != w.n() {
        return Err(PositivityError::DimensionMismatch { expected: w.n(), got: m.n() });
    }
    let x = w.exchange_sets(mv)?;
    let d = |s: &[usize]| -> Result<BigRational, PositivityError> { m.flag_minor(s) };
    Ok(d(&x.e)? * d(&x.f)? == d(&x.a)? * d(&x.c)? + d(&x.b)? * d(&x.d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sample4() -> RationalMatrix {
        RationalMatrix::from_i64(&[&[2, 1, 0, 3], &[1, 5, 2, 1], &[4, 1, 1, 2], &[1, 3, 7, 1]]).unwrap()
    }

    #[test]
    fn identity_fails_the_chamber_test() {
        let w = WiringDiagram::snake(4);
        assert!(!chamber_positivity_test(&RationalMatrix::identity(4), &w).unwrap());
        assert_eq!(
            chamber_positivity_test(&RationalMatrix::identity(3), &w).unwrap_err().code(),
            "DimensionMismatch"
        );
    }

    #[test]
    fn exchange_identity_on_snake_move() {
        let w = WiringDiagram::snake(4);
        let m = sample4();
        for mv in w.local_moves() {
            assert!(verify_exchange_identity(&w, &mv, &m).unwrap());
        }
        let mv = w.local_moves().into_iter().find(|x| x.old == vec![2]).unwrap();
        let f = |s: &[usize]| m.flag_minor(s).unwrap();
        assert_eq!(f(&[2]) * f(&[1, 3]), f(&[1, 2]) * f(&[3]) + f(&[1]) * f(&[2, 3]));
        assert!(verify_exchange_identity(&w, &mv, &RationalMatrix::identity(4)).unwrap());
    }

    #[test]
    fn longest_word_product_passes() {
        // y_i(1) and then x_i(1) along the snake word give a totally positive matrix
        let w = WiringDiagram::snake(4);
        let mut gens: Vec<Generator> = w.word().iter().map(|&i| Generator::Lower(i, q(1))).collect();
        gens.extend(w.word().iter().map(|&i| Generator::Upper(i, q(1))));
        let m = generator_product(4, &gens).unwrap();
        assert!(chamber_positivity_test(&m, &w).unwrap());
        assert!(m.all_flag_minors().iter().all(|(_, v)| v.is_positive()));
        assert!(is_totally_positive(&m).unwrap());
        assert!(chamber_positivity_test_both(&m, &w).unwrap());
    }

    #[test]
    fn lower_generators_along_a_reduced_word() {
        let w = WiringDiagram::snake(4);
        let factors: Vec<(usize, BigRational)> = w.word().iter().map(|&i| (i, q(1))).collect();
        let m = lower_chevalley_product(4, &factors).unwrap();
        assert!(chamber_positivity_test(&m, &w).unwrap());
        let minors = m.all_flag_minors();
        assert_eq!(minors.len(), 14);
        assert!(minors.iter().all(|(_, v)| v.is_positive()));
        // upper unipotent matrices have vanishing flag minors below the diagonal
        let u = chevalley_product(4, &factors).unwrap();
        assert!(!chamber_positivity_test(&u, &w).unwrap());
    }
}
