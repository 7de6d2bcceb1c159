use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::finitefield::FieldDescriptor;

/// One summand as written: sign, integer factor, optional power of `g`,
/// and variable exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub negative: bool,
    pub coeff: BigUint,
    pub gpow: Option<u64>,
    pub exps: [u32; 3],
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    text: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        let chars = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Lexer { chars, pos: 0, line, text }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|t| t.1)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.chars().count(), |t| t.0) + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column(), message: message.into() }
    }

    fn nat(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|t| t.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn small_nat(&mut self) -> Result<u64> {
        let col = self.column();
        let n = self.nat()?;
        n.to_u64().ok_or(Error::Parse { line: self.line, column: col, message: "exponent too large".into() })
    }

    fn exponent(&mut self) -> Result<u64> {
        if self.peek() == Some('^') {
            self.pos += 1;
            self.small_nat()
        } else {
            Ok(1)
        }
    }
}

/// Tokenizes `poly := ['+'|'-'] term (('+'|'-') term)*` where a term is a
/// `*`-separated product of naturals, `g`, `g^e` and variable powers.
pub fn parse_terms(text: &str, nvars: usize, line: usize) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer::new(text, line);
    let mut out = Vec::new();
    if lx.peek().is_none() {
        return Err(lx.error("empty polynomial"));
    }
    let mut negative = false;
    match lx.peek() {
        Some('-') => {
            negative = true;
            lx.pos += 1;
        }
        Some('+') => lx.pos += 1,
        _ => {}
    }
    loop {
        let mut term = RawTerm { negative, coeff: BigUint::from(1u32), gpow: None, exps: [0; 3] };
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => term.coeff *= lx.nat()?,
                Some('g') => {
                    lx.pos += 1;
                    let e = lx.exponent()?;
                    term.gpow = Some(term.gpow.unwrap_or(0) + e);
                }
                Some(c @ ('x' | 'y' | 'z')) => {
                    let v = (c as u8 - b'x') as usize;
                    if v >= nvars {
                        return Err(lx.error(format!("variable '{c}' not allowed with {nvars} variable(s)")));
                    }
                    lx.pos += 1;
                    let e = lx.exponent()?;
                    let total = term.exps[v] as u64 + e;
                    if total > u16::MAX as u64 {
                        return Err(lx.error("exponent too large"));
                    }
                    term.exps[v] = total as u32;
                }
                Some(c) => return Err(lx.error(format!("unexpected '{c}'"))),
                None => return Err(lx.error("unexpected end of input")),
            }
            if lx.peek() == Some('*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        if term.exps.iter().sum::<u32>() > u16::MAX as u32 {
            return Err(lx.error("total degree too large"));
        }
        out.push(term);
        match lx.peek() {
            None => return Ok(out),
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(c) => return Err(lx.error(format!("unexpected '{c}'"))),
        }
        lx.pos += 1;
    }
}

pub(crate) fn parse_poly(field: &FieldDescriptor, nvars: usize, text: &str, line: usize) -> Result<MultiPoly> {
    let raw = parse_terms(text, nvars, line)?;
    let p = BigUint::from(field.p());
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let c = (&t.coeff % &p).to_u64().expect("residue fits");
        let mut v = c;
        if let Some(e) = t.gpow {
            let g = field.gen_class().map_err(|e| Error::Parse { line, column: 1, message: e.to_string() })?;
            v = field.mul(v, field.pow(g, e));
        }
        if t.negative {
            v = field.neg(v);
        }
        if !t.coeff.is_zero() {
            terms.push((Monomial::new(&t.exps), v));
        }
    }
    Ok(MultiPoly::from_terms(field, nvars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    #[test]
    fn grammar() {
        let f3 = construct_field(3, 1).unwrap();
        let p = MultiPoly::parse(&f3, 3, "x^2*z - y^3").unwrap();
        assert_eq!(p.to_string(), "x^2*z + 2*y^3");
        assert_eq!(MultiPoly::parse(&f3, 3, " - x * y + 4 ").unwrap().to_string(), "2*x*y + 1");
        assert_eq!(MultiPoly::parse(&f3, 3, "0").unwrap().to_string(), "0");
        assert_eq!(MultiPoly::parse(&f3, 3, "3*x").unwrap().to_string(), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let f3 = construct_field(3, 1).unwrap();
        match MultiPoly::parse(&f3, 3, "x^") {
            Err(Error::Parse { line: 1, column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(MultiPoly::parse(&f3, 2, "z").is_err());
        assert!(MultiPoly::parse(&f3, 3, "x + + y").is_err());
        assert!(MultiPoly::parse(&f3, 3, "2x").is_err());
        assert!(MultiPoly::parse(&f3, 3, "").is_err());
        assert!(MultiPoly::parse(&f3, 3, "g*x").is_err());
    }
}
