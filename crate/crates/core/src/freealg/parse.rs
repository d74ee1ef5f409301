//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term { ("+" | "-") term }
//! term   := unary { ("*" | "/") unary | power }
//! unary  := ("-" | "+") unary | power
//! power  := atom [ "^" ["-"] uint ]
//! atom   := "A" | "B" | "C" | "I" | "m" | "b" | uint
//!         | "(" expr ")" | "[" expr "," expr "]"
//! ```
//!
//! Scalars are polynomials supported on `I`; division and negative powers
//! are only accepted for them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::scalar::{Coeff, TwistParams};

use super::poly::NcPoly;
use super::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Gen(Letter),
    Unit,
    ParamM,
    ParamB,
    Num(BigInt),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Gen(l) => format!("'{l}'"),
            Tok::Unit => "'I'".into(),
            Tok::ParamM => "'m'".into(),
            Tok::ParamB => "'b'".into(),
            Tok::Num(n) => format!("'{n}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrack => "'['".into(),
            Tok::RBrack => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Tok::Gen(_)
                | Tok::Unit
                | Tok::ParamM
                | Tok::ParamB
                | Tok::Num(_)
                | Tok::LParen
                | Tok::LBrack
        )
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push((start, Tok::Num(n)));
            continue;
        }
        let tok = match c {
            b'A' => Tok::Gen(Letter::A),
            b'B' => Tok::Gen(Letter::B),
            b'C' => Tok::Gen(Letter::C),
            b'I' => Tok::Unit,
            b'm' => Tok::ParamM,
            b'b' => Tok::ParamB,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b',' => Tok::Comma,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    expected: vec!["a token".into()],
                    found: format!("'{ch}'"),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a, F> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    params: &'a TwistParams<F>,
}

impl<F: Coeff> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<NcPoly<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly<F>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    let inv =
                        rhs.as_scalar()
                            .and_then(|s| s.inv().ok())
                            .ok_or_else(|| ParseError {
                                offset: at,
                                expected: vec!["nonzero scalar divisor".into()],
                                found: rhs.to_string(),
                            })?;
                    acc = acc.scale(&inv);
                }
                t if t.starts_atom() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NcPoly<F>, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<NcPoly<F>, ParseError> {
        let base_at = self.offset();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let k: u32 = match self.peek().clone() {
            Tok::Num(n) => match u32::try_from(&n) {
                Ok(k) => {
                    self.bump();
                    k
                }
                Err(_) => return Err(self.error(&["exponent below 2^32"])),
            },
            _ => return Err(self.error(&["unsigned integer exponent"])),
        };
        if !negative {
            return Ok(base.pow(k));
        }
        let inv = base
            .as_scalar()
            .and_then(|s| s.inv().ok())
            .ok_or_else(|| ParseError {
                offset: base_at,
                expected: vec!["nonzero scalar base for negative exponent".into()],
                found: base.to_string(),
            })?;
        Ok(NcPoly::scalar(inv.pow(k)))
    }

    fn atom(&mut self) -> Result<NcPoly<F>, ParseError> {
        match self.peek().clone() {
            Tok::Gen(l) => {
                self.bump();
                Ok(NcPoly::letter(l))
            }
            Tok::Unit => {
                self.bump();
                Ok(NcPoly::one())
            }
            Tok::ParamM => {
                self.bump();
                Ok(NcPoly::scalar(self.params.m().clone()))
            }
            Tok::ParamB => {
                self.bump();
                Ok(NcPoly::scalar(self.params.b().clone()))
            }
            Tok::Num(n) => {
                self.bump();
                Ok(NcPoly::scalar(F::from(BigRational::from_integer(n))))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, &["')'"])?;
                Ok(e)
            }
            Tok::LBrack => {
                self.bump();
                let x = self.expr()?;
                self.expect(Tok::Comma, &["','"])?;
                let y = self.expr()?;
                self.expect(Tok::RBrack, &["']'"])?;
                Ok(x.bracket(&y))
            }
            _ => Err(self.error(&[
                "'A'", "'B'", "'C'", "'I'", "'m'", "'b'", "number", "'('", "'['",
            ])),
        }
    }
}

/// Parses an element of the free algebra on `{A, B, C}`. The symbols `m`
/// and `b` evaluate to the parameters in `params`.
pub fn parse<F: Coeff>(text: &str, params: &TwistParams<F>) -> Result<NcPoly<F>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        params,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Word;
    use crate::scalar::RatFunc;
    use num_traits::One;

    fn sym() -> TwistParams<RatFunc> {
        TwistParams::symbolic()
    }

    #[test]
    fn bracket_syntax() {
        let p = parse("[A,B]", &sym()).unwrap();
        assert_eq!(p.to_string(), "A*B - B*A");
    }

    #[test]
    fn scalar_expressions() {
        let p = parse("m*A^2 - (1/(m-1))*I", &sym()).unwrap();
        let mm1 = RatFunc::m() - RatFunc::one();
        let expect = NcPoly::from_terms([
            (Word::from_letters("AA").unwrap(), RatFunc::m()),
            (Word::empty(), -(RatFunc::one() / mm1)),
        ]);
        assert_eq!(p, expect);
        assert_eq!(
            parse("m^-2", &sym())
                .unwrap()
                .as_scalar()
                .unwrap()
                .to_string(),
            "1/m^2"
        );
        assert_eq!(parse("2 A B", &sym()).unwrap().to_string(), "2*A*B");
    }

    #[test]
    fn unclosed_paren() {
        let err = parse("A*(B", &sym()).unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(err.expected.contains(&"')'".to_string()));
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn rejects_division_by_word() {
        let err = parse("A/B", &sym()).unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(parse("A/0", &sym()).is_err());
        assert!(parse("A^-1", &sym()).is_err());
        assert!(parse("A $ B", &sym()).is_err());
        assert!(parse("A B)", &sym()).is_err());
    }

    #[test]
    fn concrete_params_substitute() {
        let p = TwistParams::concrete(
            BigRational::from_integer(2.into()),
            BigRational::from_integer(1.into()),
        )
        .unwrap();
        let x = parse("(m - b)*A", &p).unwrap();
        assert_eq!(x.to_string(), "A");
    }
}
