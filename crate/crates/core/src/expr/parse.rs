use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Atom, OperatorExpr};

/// Malformed input: where it went wrong and what would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

const BASE_START: &[&str] = &["(", "integer", "x", "t", "p", "H", "hbar", "c", "m", "i"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Int(BigInt),
    Atom(Atom),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Atom(a) => format!("atom '{a}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &src[start..pos];
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                    pos += 1;
                }
                let word = &src[start..pos];
                match Atom::from_name(word) {
                    Some(a) => out.push((start, Tok::Atom(a))),
                    None => {
                        return Err(ParseError {
                            offset: start,
                            expected: BASE_START.to_vec(),
                            message: format!("unknown symbol '{word}'"),
                        })
                    }
                }
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    expected: vec![],
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.to_vec(),
            message: format!("unexpected {}", self.peek().describe()),
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    terms.push(t.negated_term());
                }
                _ => break,
            }
        }
        Ok(OperatorExpr::sum(terms.into_iter().map(Term::into_expr).collect()))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(Term(factors))
    }

    fn factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let base = self.base()?;
        let value = if *self.peek() == Tok::Caret {
            self.bump();
            let exp_offset = self.offset();
            let exponent = self.signed_int()?;
            check_exponent(&base, exponent, exp_offset)?;
            OperatorExpr::pow(base, exponent)
        } else {
            base
        };
        Ok(if negate { value.negated() } else { value })
    }

    fn base(&mut self) -> Result<OperatorExpr, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["')'", "'+'", "'-'", "'*'", "'^'"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Atom(a) => {
                self.bump();
                Ok(OperatorExpr::Atom(a))
            }
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let denom_offset = self.offset();
                    let Tok::Int(d) = self.peek().clone() else {
                        return Err(self.unexpected(&["positive integer"]));
                    };
                    if d.is_zero() {
                        return Err(ParseError {
                            offset: denom_offset,
                            expected: vec!["positive integer"],
                            message: "zero denominator".into(),
                        });
                    }
                    self.bump();
                    Ok(OperatorExpr::Rational(BigRational::new(n, d)))
                } else {
                    Ok(OperatorExpr::Rational(BigRational::from_integer(n)))
                }
            }
            _ => Err(self.unexpected(BASE_START)),
        }
    }

    fn signed_int(&mut self) -> Result<i32, ParseError> {
        let offset = self.offset();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.unexpected(&["integer"]));
        };
        self.bump();
        let n = if negative { -n } else { n };
        n.to_i32().ok_or_else(|| ParseError {
            offset,
            expected: vec![],
            message: "exponent out of range".into(),
        })
    }
}

/// Factors of one `term`, kept apart so that negation can prepend `-1`
/// without flattening parenthesised products.
struct Term(Vec<OperatorExpr>);

impl Term {
    fn negated_term(mut self) -> Term {
        if self.0.len() == 1 {
            Term(vec![self.0.pop().unwrap().negated()])
        } else {
            self.0.insert(0, OperatorExpr::integer(-1));
            self
        }
    }

    fn into_expr(self) -> OperatorExpr {
        OperatorExpr::product(self.0)
    }
}

fn check_exponent(base: &OperatorExpr, exponent: i32, offset: usize) -> Result<(), ParseError> {
    if exponent >= 0 {
        return Ok(());
    }
    let err = |message: String| ParseError {
        offset,
        expected: vec!["nonnegative integer"],
        message,
    };
    match base {
        OperatorExpr::Atom(a) if !a.allows_negative_power() => {
            Err(err(format!("negative exponent on '{a}'")))
        }
        OperatorExpr::Atom(_) => Ok(()),
        OperatorExpr::Rational(r) if r.is_zero() => Err(err("negative power of zero".into())),
        OperatorExpr::Rational(_) => Ok(()),
        _ => Err(err(
            "negative exponent is only allowed on p, H, scalar atoms and literals".into(),
        )),
    }
}

/// Parses one expression. Whitespace is insignificant.
pub fn parse(text: &str) -> Result<OperatorExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

/// Like [`parse`], for input that may not be UTF-8.
pub fn parse_bytes(bytes: &[u8]) -> Result<OperatorExpr, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse(s),
        Err(e) => Err(ParseError {
            offset: e.valid_up_to(),
            expected: vec![],
            message: "invalid UTF-8".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Atom::*;

    fn a(x: Atom) -> OperatorExpr {
        OperatorExpr::Atom(x)
    }

    #[test]
    fn product_keeps_order() {
        assert_eq!(parse("p*x").unwrap(), OperatorExpr::Product(vec![a(P), a(X)]));
        assert_eq!(parse(" x * p ").unwrap(), OperatorExpr::Product(vec![a(X), a(P)]));
    }

    #[test]
    fn half_symmetrized_product() {
        let e = parse("1/2*(H*x + x*H)").unwrap();
        assert_eq!(
            e,
            OperatorExpr::Product(vec![
                OperatorExpr::ratio(1, 2),
                OperatorExpr::Sum(vec![
                    OperatorExpr::Product(vec![a(H), a(X)]),
                    OperatorExpr::Product(vec![a(X), a(H)]),
                ]),
            ])
        );
    }

    #[test]
    fn precedence() {
        // ^ over * over +
        let e = parse("x + p*H^2").unwrap();
        assert_eq!(
            e,
            OperatorExpr::Sum(vec![
                a(X),
                OperatorExpr::Product(vec![a(P), OperatorExpr::pow(a(H), 2)]),
            ])
        );
        // unary minus binds looser than ^
        assert_eq!(
            parse("-x^2").unwrap(),
            OperatorExpr::Product(vec![OperatorExpr::integer(-1), OperatorExpr::pow(a(X), 2)])
        );
    }

    #[test]
    fn subtraction_prepends_minus_one() {
        assert_eq!(
            parse("x - p*t").unwrap(),
            OperatorExpr::Sum(vec![
                a(X),
                OperatorExpr::Product(vec![OperatorExpr::integer(-1), a(P), a(T)]),
            ])
        );
        assert_eq!(
            parse("x - 3").unwrap(),
            OperatorExpr::Sum(vec![a(X), OperatorExpr::integer(-3)])
        );
    }

    #[test]
    fn literals_are_reduced() {
        assert_eq!(parse("4/6").unwrap(), OperatorExpr::ratio(2, 3));
        assert_eq!(parse("-4/6").unwrap(), OperatorExpr::ratio(-2, 3));
    }

    #[test]
    fn negative_exponents() {
        assert!(parse("H^-1").is_ok());
        assert!(parse("p^-2").is_ok());
        assert!(parse("m^-1*c^-2").is_ok());
        let err = parse("x^-1").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(parse("t^-3").is_err());
        assert!(parse("(x*p)^-1").is_err());
        assert!(parse("0^-1").is_err());
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = parse("x*(").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.expected.contains(&"("));
        assert_eq!(parse("x p").unwrap_err().offset, 2);
        assert_eq!(parse("xp").unwrap_err().offset, 0);
        assert_eq!(parse("1/0").unwrap_err().offset, 2);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("x/p").unwrap_err().offset, 1);
        assert_eq!(parse("ħ").unwrap_err().offset, 0);
        assert!(parse("--x").is_err());
        assert!(parse("x^99999999999").is_err());
    }

    #[test]
    fn invalid_utf8() {
        let err = parse_bytes(b"x*\xff").unwrap_err();
        assert_eq!(err.offset, 2);
    }
}
