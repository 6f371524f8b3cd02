// Recursive-descent reader for the rendered form:
//
//   poly   := sign? term (sign term)*
//   term   := factor ('*' factor)*
//   factor := integer | name ('^' '-'? digits)?
//
// Whitespace is ignored between tokens. Repeated factors multiply, so
// "x*x" and "x^2" read the same.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{is_identifier, LaurentError, LaurentPoly, VarTable};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn err(&self, msg: impl Into<String>) -> LaurentError {
        LaurentError::Parse { pos: self.pos, msg: msg.into() }
    }
}

pub(super) fn parse(vars: &Arc<VarTable>, s: &str) -> Result<LaurentPoly, LaurentError> {
    let mut cur = Cursor { src: s, pos: 0 };
    let mut out = LaurentPoly::zero(vars);
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let (exps, mut coeff) = term(vars, &mut cur)?;
        if negative {
            coeff = -coeff;
        }
        out.add_term(exps.into_boxed_slice(), coeff);
        match cur.peek() {
            None => return Ok(out),
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(c) => return Err(cur.err(format!("unexpected `{c}`"))),
        }
        cur.pos += 1;
    }
}

fn term(vars: &Arc<VarTable>, cur: &mut Cursor<'_>) -> Result<(Vec<i32>, BigInt), LaurentError> {
    let mut exps = vec![0i32; vars.len()];
    let mut coeff = BigInt::one();
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = cur.take_while(|c| c.is_ascii_digit());
                coeff *= digits.parse::<BigInt>().map_err(|e| cur.err(e.to_string()))?;
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                debug_assert!(is_identifier(name));
                let i = vars
                    .index_of(name)
                    .ok_or_else(|| LaurentError::UnknownVariable(name.to_owned()))?;
                let mut e = 1i32;
                if cur.eat('^') {
                    let neg = cur.eat('-');
                    let digits = cur.take_while(|c| c.is_ascii_digit());
                    if digits.is_empty() {
                        return Err(cur.err("expected exponent"));
                    }
                    e = digits.parse().map_err(|_| cur.err("exponent out of range"))?;
                    if neg {
                        e = -e;
                    }
                }
                exps[i] = exps[i]
                    .checked_add(e)
                    .ok_or_else(|| cur.err("exponent out of range"))?;
            }
            Some(c) => return Err(cur.err(format!("unexpected `{c}`"))),
            None => return Err(cur.err("unexpected end of input")),
        }
        if !cur.eat('*') {
            return Ok((exps, coeff));
        }
    }
}
