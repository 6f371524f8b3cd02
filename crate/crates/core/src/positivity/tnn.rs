use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::combinations;
use super::{PositivityError, RationalMatrix};
use crate::par::Exec;

/// Largest dimension the all-minors tests accept unless told otherwise.
pub const DEFAULT_MINOR_BOUND: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strictness {
    Nonnegative,
    Positive,
}

pub fn is_totally_nonnegative(m: &RationalMatrix) -> Result<bool, PositivityError> {
    all_minors(m, Strictness::Nonnegative, DEFAULT_MINOR_BOUND, Exec::default())
}

pub fn is_totally_positive(m: &RationalMatrix) -> Result<bool, PositivityError> {
    all_minors(m, Strictness::Positive, DEFAULT_MINOR_BOUND, Exec::default())
}

/// [`is_totally_nonnegative`] with an explicit dimension bound and strategy.
pub fn is_totally_nonnegative_with(
    m: &RationalMatrix,
    bound: usize,
    exec: Exec,
) -> Result<bool, PositivityError> {
    all_minors(m, Strictness::Nonnegative, bound, exec)
}

pub fn is_totally_positive_with(
    m: &RationalMatrix,
    bound: usize,
    exec: Exec,
) -> Result<bool, PositivityError> {
    all_minors(m, Strictness::Positive, bound, exec)
}

// Every square submatrix, one job per row subset.
fn all_minors(
    m: &RationalMatrix,
    strict: Strictness,
    bound: usize,
    exec: Exec,
) -> Result<bool, PositivityError> {
    let n = m.n();
    if n > bound {
        return Err(PositivityError::DimensionTooLarge { n, bound });
    }
    let ok = |x: &BigRational| match strict {
        Strictness::Nonnegative => !x.is_negative(),
        Strictness::Positive => x.is_positive(),
    };
    // Entries first: cheap and rejects most random inputs.
    for i in 0..n {
        for j in 0..n {
            if !ok(m.get(i, j)) {
                return Ok(false);
            }
        }
    }
    let row_sets: Vec<Vec<usize>> = (2..=n).flat_map(|k| combinations(n, k)).collect();
    Ok(exec.all(&row_sets, |rows| {
        combinations(n, rows.len()).iter().all(|cols| ok(&m.minor(rows, cols)))
    }))
}

/// One factor of a product of elementary Jacobi matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `x_i(t)`: identity plus `t` at row `i`, column `i + 1` (one-based).
    Upper(usize, BigRational),
    /// `y_i(t)`: identity plus `t` at row `i + 1`, column `i`.
    Lower(usize, BigRational),
    /// Diagonal matrix with the given entries.
    Diagonal(Vec<BigRational>),
}

/// Product of upper generators `x_i(t)` in the given order.
pub fn chevalley_product(
    n: usize,
    factors: &[(usize, BigRational)],
) -> Result<RationalMatrix, PositivityError> {
    let gens: Vec<Generator> = factors.iter().map(|(i, t)| Generator::Upper(*i, t.clone())).collect();
    generator_product(n, &gens)
}

/// Product of lower generators `y_i(t)` in the given order.
pub fn lower_chevalley_product(
    n: usize,
    factors: &[(usize, BigRational)],
) -> Result<RationalMatrix, PositivityError> {
    let gens: Vec<Generator> = factors.iter().map(|(i, t)| Generator::Lower(*i, t.clone())).collect();
    generator_product(n, &gens)
}

/// Left-to-right product of generators. Parameters must be nonnegative and
/// diagonal entries positive.
pub fn generator_product(n: usize, gens: &[Generator]) -> Result<RationalMatrix, PositivityError> {
    let mut m = RationalMatrix::identity(n);
    for g in gens {
        match g {
            Generator::Upper(i, t) | Generator::Lower(i, t) => {
                if *i < 1 || *i >= n {
                    return Err(PositivityError::BadIndex { index: *i, n });
                }
                if t.is_negative() {
                    return Err(PositivityError::NegativeParameter(super::matrix::fmt_rational(t)));
                }
                // Right multiplication only touches one column.
                let (src, dst) = match g {
                    Generator::Upper(..) => (*i - 1, *i),
                    _ => (*i, *i - 1),
                };
                for r in 0..n {
                    let add = m.get(r, src) * t;
                    if !add.is_zero() {
                        let v = m.get(r, dst) + add;
                        m.set(r, dst, v);
                    }
                }
            }
            Generator::Diagonal(d) => {
                if d.len() != n {
                    return Err(PositivityError::DimensionMismatch { expected: n, got: d.len() });
                }
                if let Some(bad) = d.iter().find(|x| !x.is_positive()) {
                    return Err(PositivityError::NegativeParameter(super::matrix::fmt_rational(bad)));
                }
                for r in 0..n {
                    for (c, x) in d.iter().enumerate() {
                        let v = m.get(r, c) * x;
                        m.set(r, c, v);
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Gaussian decomposition `m = L * D * U`, unipotent triangular `L`, `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CryerSplit {
    pub lower: RationalMatrix,
    pub diagonal: RationalMatrix,
    pub upper: RationalMatrix,
}

/// LDU factorization of a determinant-one matrix. Fails with `NoLDU` when a
/// leading principal minor vanishes.
pub fn cryer_split(m: &RationalMatrix) -> Result<CryerSplit, PositivityError> {
    if !m.det().is_one() {
        return Err(PositivityError::NotDeterminantOne(super::matrix::fmt_rational(&m.det())));
    }
    let n = m.n();
    let mut lower = RationalMatrix::identity(n);
    let mut diagonal = RationalMatrix::identity(n);
    let mut upper = RationalMatrix::identity(n);
    // Doolittle elimination without pivoting on a working copy.
    let mut a = m.clone();
    for k in 0..n {
        let pivot = a.get(k, k).clone();
        if pivot.is_zero() {
            return Err(PositivityError::NoLDU(k + 1));
        }
        diagonal.set(k, k, pivot.clone());
        for j in k + 1..n {
            upper.set(k, j, a.get(k, j) / &pivot);
        }
        for i in k + 1..n {
            let f = a.get(i, k) / &pivot;
            lower.set(i, k, f.clone());
            for j in k + 1..n {
                let v = a.get(i, j) - &f * a.get(k, j);
                a.set(i, j, v);
            }
        }
    }
    Ok(CryerSplit { lower, diagonal, upper })
}

/// `m` is totally nonnegative iff it has an LDU decomposition with all three
/// factors totally nonnegative. A vanishing leading principal minor means
/// `m` is not (invertible and) totally nonnegative, so the answer is false.
pub fn cryer_test(m: &RationalMatrix) -> Result<bool, PositivityError> {
    match cryer_split(m) {
        Ok(s) => Ok(is_totally_nonnegative(&s.lower)?
            && s.diagonal.rows().enumerate().all(|(i, r)| r[i].is_positive())
            && is_totally_nonnegative(&s.upper)?),
        Err(PositivityError::NoLDU(_)) => Ok(false),
        Err(e) => Err(e),
    }
}
