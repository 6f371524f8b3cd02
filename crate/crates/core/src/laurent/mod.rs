//! Exact multivariate Laurent polynomials with big-integer coefficients.
//!
//! Exponent vectors are dense, one `i32` per variable of the shared
//! [`VarTable`]. Terms live in a `BTreeMap`, so they are always sorted in the
//! lexicographic order on exponent vectors; the last entry is the leading
//! term. That single order drives division, canonical comparison and text
//! rendering.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

pub type Exponents = Box<[i32]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("polynomials are over different variable tables")]
    VarTableMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient is not a Laurent polynomial")]
    NotDivisible,
    #[error("variable `{0}` is zero but appears with a negative exponent")]
    ZeroAtNegativeExponent(String),
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid variable table: {0}")]
    InvalidVarTable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl LaurentError {
    pub fn code(&self) -> &'static str {
        match self {
            LaurentError::VarTableMismatch => "VarTableMismatch",
            LaurentError::DivisionByZero => "DivisionByZero",
            LaurentError::NotDivisible => "NotDivisible",
            LaurentError::ZeroAtNegativeExponent(_) => "ZeroAtNegativeExponent",
            LaurentError::ArityMismatch { .. } => "ArityMismatch",
            LaurentError::InvalidVarTable(_) => "InvalidVarTable",
            LaurentError::UnknownVariable(_) => "UnknownVariable",
            LaurentError::Parse { .. } => "ParseError",
        }
    }
}

/// Ordered, unique variable names: the generators of the ambient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    /// Names must be unique identifiers (`[A-Za-z_][A-Za-z0-9_]*`) so that
    /// rendered polynomials parse back.
    pub fn new<I, S>(names: I) -> Result<Arc<VarTable>, LaurentError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(LaurentError::InvalidVarTable(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(LaurentError::InvalidVarTable(format!("duplicate name `{n}`")));
            }
        }
        Ok(Arc::new(VarTable { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Exponents, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_table(&self.vars, &other.vars)
    }
}

impl Eq for LaurentPoly {}

impl Hash for LaurentPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    /// The generator with index `i`.
    pub fn var(vars: &Arc<VarTable>, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Self, LaurentError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| LaurentError::UnknownVariable(name.to_owned()))?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Arc<VarTable>, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps.into_boxed_slice(), c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(vars: &Arc<VarTable>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e.into_boxed_slice(), c);
        }
        p
    }

    pub fn parse(vars: &Arc<VarTable>, s: &str) -> Result<Self, LaurentError> {
        parse::parse(vars, s)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    pub fn leading_term(&self) -> Option<(&[i32], &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (&e[..], c))
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// `true` iff every stored coefficient is strictly positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn check_table(&self, other: &Self) -> Result<(), LaurentError> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(LaurentError::VarTableMismatch)
        }
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_table(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The Laurent polynomial `q` with `q * den == self`, if one exists.
    ///
    /// Both sides are shifted by monomials so that every variable has
    /// minimal exponent zero; the quotient of the shifted polynomials is then
    /// a genuine polynomial (the lowest part in each variable of a product is
    /// the product of the lowest parts), found by leading-term division in
    /// lex order. Every quotient term must also fit in the exponent box
    /// `[0, max(num) - max(den)]`, which bounds the loop when division fails.
    pub fn exact_div(&self, den: &Self) -> Result<Self, LaurentError> {
        self.check_table(den)?;
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if den.terms.len() == 1 {
            let (de, dc) = den.terms.iter().next().unwrap();
            let mut out = Self::zero(&self.vars);
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(LaurentError::NotDivisible);
                }
                out.terms.insert(sub_exps(e, de), q);
            }
            return Ok(out);
        }
        let n = self.vars.len();
        let (num_min, num_max) = self.exponent_bounds();
        let (den_min, den_max) = den.exponent_bounds();
        let num = self.shifted(&num_min);
        let dd = den.shifted(&den_min);
        let upper: Vec<i32> = (0..n)
            .map(|i| (num_max[i] - num_min[i]) - (den_max[i] - den_min[i]))
            .collect();
        if upper.iter().any(|&u| u < 0) {
            return Err(LaurentError::NotDivisible);
        }
        let (lead_e, lead_c) = dd.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = num.terms;
        let mut quot: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back() {
            let qe = sub_exps(e, &lead_e);
            if qe.iter().zip(&upper).any(|(&x, &u)| x < 0 || x > u) {
                return Err(LaurentError::NotDivisible);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            for (de, dc) in &dd.terms {
                let key = add_exps(&qe, de);
                let prod = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= prod;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.insert(qe, qc);
        }
        let shift: Vec<i32> = (0..n).map(|i| num_min[i] - den_min[i]).collect();
        let terms = quot
            .into_iter()
            .map(|(e, c)| (add_exps(&e, &shift), c))
            .collect();
        Ok(LaurentPoly { vars: self.vars.clone(), terms })
    }

    /// Componentwise minimum and maximum exponents over all terms.
    pub fn exponent_bounds(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.vars.len();
        let mut lo = vec![i32::MAX; n];
        let mut hi = vec![i32::MIN; n];
        for e in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        if self.terms.is_empty() {
            lo.fill(0);
            hi.fill(0);
        }
        (lo, hi)
    }

    fn shifted(&self, by: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (sub_exps(e, by), c.clone()))
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.vars.len() {
            return Err(LaurentError::ArityMismatch { expected: self.vars.len(), got: point.len() });
        }
        let (lo, _) = self.exponent_bounds();
        for (i, x) in point.iter().enumerate() {
            if x.is_zero() && lo[i] < 0 {
                return Err(LaurentError::ZeroAtNegativeExponent(self.vars.names[i].clone()));
            }
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    t *= Pow::pow(&point[i], k);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Canonical total order: compares terms from the leading one down,
    /// exponents first, then coefficients; a polynomial that runs out of
    /// terms first is smaller.
    pub fn compare_canonical(&self, other: &Self) -> Result<Ordering, LaurentError> {
        self.check_table(other)?;
        Ok(self.cmp_terms(other))
    }

    fn cmp_terms(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.0.cmp(y.0).then_with(|| x.1.cmp(y.1)) {
                    Ordering::Equal => continue,
                    o => return o,
                },
            }
        }
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Same as [`LaurentPoly::compare_canonical`]; polynomials over different
/// tables are ordered by their variable names first.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        if !same_table(&self.vars, &other.vars) {
            let o = self.vars.names.cmp(&other.vars.names);
            if o != Ordering::Equal {
                return o;
            }
        }
        self.cmp_terms(other)
    }
}

fn add_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

// Operator forms panic on mismatched tables; use the `try_*` methods when
// inputs come from outside.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("variable tables differ")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("variable tables differ")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("variable tables differ")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }
}

/// Terms from the leading one down, e.g. `2*x1^-1*x2 - x3 + 1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.vars.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.names[i], x)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
