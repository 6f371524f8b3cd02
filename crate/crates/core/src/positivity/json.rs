use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::matrix::fmt_rational;
use super::{PositivityError, RationalMatrix, WiringDiagram};

/// `{"n": 3, "entries": [[1, "1/2", 0], ...]}`. Entries are JSON integers or
/// strings `"p"` / `"p/q"`; serialization uses integers when they fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<Value>>,
}

pub(crate) fn parse_rational(v: &Value) -> Result<BigRational, PositivityError> {
    match v {
        Value::Number(x) if x.is_i64() || x.is_u64() => {
            let i: BigInt = x.to_string().parse().expect("integer literal");
            Ok(BigRational::from_integer(i))
        }
        Value::String(s) => parse_rational_str(s),
        other => Err(PositivityError::BadEntry(format!(
            "{other} (use integers or \"p/q\" strings)"
        ))),
    }
}

pub fn parse_rational_str(s: &str) -> Result<BigRational, PositivityError> {
    let bad = || PositivityError::BadEntry(s.to_owned());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) fn rational_value(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Ok(i) = i64::try_from(x.numer()) {
            return Value::from(i);
        }
    }
    Value::String(fmt_rational(x))
}

impl From<&RationalMatrix> for MatrixJson {
    fn from(m: &RationalMatrix) -> Self {
        MatrixJson {
            n: m.n(),
            entries: m.rows().map(|r| r.iter().map(rational_value).collect()).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for RationalMatrix {
    type Error = PositivityError;

    fn try_from(j: &MatrixJson) -> Result<Self, PositivityError> {
        if j.entries.len() != j.n || j.entries.iter().any(|r| r.len() != j.n) {
            return Err(PositivityError::NotSquare);
        }
        let rows = j
            .entries
            .iter()
            .map(|r| r.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        RationalMatrix::from_rows(rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringJson {
    pub n: usize,
    pub word: Vec<usize>,
}

impl From<&WiringDiagram> for WiringJson {
    fn from(w: &WiringDiagram) -> Self {
        WiringJson { n: w.n(), word: w.word().to_vec() }
    }
}

impl TryFrom<&WiringJson> for WiringDiagram {
    type Error = PositivityError;

    fn try_from(j: &WiringJson) -> Result<Self, PositivityError> {
        WiringDiagram::new(j.n, j.word.clone())
    }
}
