use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PositivityError;

/// Square matrix of exact rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        RationalMatrix { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, PositivityError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PositivityError::NotSquare);
        }
        Ok(RationalMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for integer matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, PositivityError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at zero-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.entries[i * self.n + j] = x;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        t
    }

    pub fn det(&self) -> BigRational {
        let all: Vec<usize> = (0..self.n).collect();
        self.minor(&all, &all)
    }

    /// Determinant of the submatrix on zero-based `rows` and `cols`, which
    /// must have equal length. The empty minor is 1.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        debug_assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        match k {
            0 => return BigRational::one(),
            1 => return self.get(rows[0], cols[0]).clone(),
            2 => {
                return self.get(rows[0], cols[0]) * self.get(rows[1], cols[1])
                    - self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]);
            }
            _ => {}
        }
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        gaussian_det(&mut a)
    }

    /// `det(x_{ij} | i in set, j <= |set|)` for a one-based row set.
    pub fn flag_minor(&self, set: &[usize]) -> Result<BigRational, PositivityError> {
        let rows = check_index_set(set, self.n)?;
        let cols: Vec<usize> = (0..rows.len()).collect();
        Ok(self.minor(&rows, &cols))
    }

    /// Every flag minor, keyed by its one-based index set, in the order
    /// given by [`proper_subsets`].
    pub fn all_flag_minors(&self) -> Vec<(Vec<usize>, BigRational)> {
        proper_subsets(self.n)
            .into_iter()
            .map(|s| {
                let v = self.flag_minor(&s).expect("generated sets are valid");
                (s, v)
            })
            .collect()
    }
}

/// Validates a one-based index set and returns it zero-based and sorted.
pub(crate) fn check_index_set(set: &[usize], n: usize) -> Result<Vec<usize>, PositivityError> {
    let mut rows: Vec<usize> = set.to_vec();
    rows.sort_unstable();
    let valid = !rows.is_empty()
        && rows.len() < n
        && rows.windows(2).all(|w| w[0] < w[1])
        && rows.iter().all(|&r| (1..=n).contains(&r));
    if !valid {
        return Err(PositivityError::BadIndexSet(set.to_vec()));
    }
    Ok(rows.into_iter().map(|r| r - 1).collect())
}

/// Nonempty proper subsets of `{1..n}`, by size and then lexicographically.
pub fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..n).flat_map(|k| combinations(n, k)).map(|c| c.into_iter().map(|x| x + 1).collect()).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

fn gaussian_det(a: &mut [Vec<BigRational>]) -> BigRational {
    let k = a.len();
    let mut det = BigRational::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..k {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col + 1..k {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for l in 0..n {
                let a = &self.entries[i * n + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[l * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn fmt_rational(x: &BigRational) -> String {
    if x.denom() == &BigInt::one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
