//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: `+`, `-` (binary and unary), `*`, `^` with nonnegative
//! integer exponents, parentheses, integer and `p/q` literals, and the
//! two declared variable names. `/` is scalar division and requires a
//! constant divisor. Errors carry the byte offset into the input.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BivariatePoly, PolyError};
use crate::rational::Rational;

/// Parses `text` into the canonical expanded polynomial in the two given
/// variables. Printing the result and parsing it again is the identity.
pub fn parse_poly(text: &str, vars: (&str, &str)) -> Result<BivariatePoly, PolyError> {
    check_variable_pair(vars)?;
    let tokens = tokenize(text, vars)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let poly = p.expr()?;
    match p.peek() {
        Token::End => Ok(poly),
        t => Err(PolyError::Syntax {
            pos: p.peek_pos(),
            msg: format!("unexpected {}", t.describe()),
        }),
    }
}

fn check_variable_pair(vars: (&str, &str)) -> Result<(), PolyError> {
    let ok = |s: &str| {
        !s.is_empty()
            && s.chars().next().unwrap().is_ascii_alphabetic()
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    if vars.0 == vars.1 || !ok(vars.0) || !ok(vars.1) {
        return Err(PolyError::BadVariables(vars.0.into(), vars.1.into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    VarX,
    VarY,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(n) => format!("integer `{n}`"),
            Token::VarX | Token::VarY => "variable".into(),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str, vars: (&str, &str)) -> Result<Vec<(Token, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digit run parses");
                out.push((Token::Int(n), start));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &text[start..i];
                if name == vars.0 {
                    out.push((Token::VarX, start));
                } else if name == vars.1 {
                    out.push((Token::VarY, start));
                } else {
                    return Err(PolyError::UnknownIdentifier {
                        name: name.to_owned(),
                        pos: start,
                        x: vars.0.to_owned(),
                        y: vars.1.to_owned(),
                    });
                }
            }
            other => {
                return Err(PolyError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    vars: (&'a str, &'a str),
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn peek_pos(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<BivariatePoly, PolyError> {
        let mut negate_first = false;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                }
                Token::Minus => {
                    self.bump();
                    negate_first = !negate_first;
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Token::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<BivariatePoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Token::Slash => {
                    let (_, pos) = self.bump();
                    let f = self.factor()?;
                    let Some(divisor) = constant_of(&f) else {
                        return Err(PolyError::Syntax {
                            pos,
                            msg: "division requires a constant divisor".into(),
                        });
                    };
                    if divisor.is_zero() {
                        return Err(PolyError::Syntax {
                            pos,
                            msg: "division by zero".into(),
                        });
                    }
                    let inv = BivariatePoly::constant(divisor.recip(), self.vars);
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := atom ('^' INT)*
    fn factor(&mut self) -> Result<BivariatePoly, PolyError> {
        let mut base = self.atom()?;
        while matches!(self.peek(), Token::Caret) {
            self.bump();
            match self.bump() {
                (Token::Int(n), pos) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::ExponentTooLarge { pos })?;
                    base = base.pow(e);
                }
                (Token::Minus, pos) => return Err(PolyError::NegativeExponent { pos }),
                (t, pos) => {
                    return Err(PolyError::Syntax {
                        pos,
                        msg: format!("expected exponent, found {}", t.describe()),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivariatePoly, PolyError> {
        match self.bump() {
            (Token::Int(n), _) => Ok(BivariatePoly::constant(
                Rational::from_integer(n),
                self.vars,
            )),
            (Token::VarX, _) => Ok(BivariatePoly::var_x(self.vars)),
            (Token::VarY, _) => Ok(BivariatePoly::var_y(self.vars)),
            (Token::LParen, open_pos) => {
                let inner = self.expr()?;
                match self.bump() {
                    (Token::RParen, _) => Ok(inner),
                    _ => Err(PolyError::Syntax {
                        pos: open_pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            (t, pos) => Err(PolyError::Syntax {
                pos,
                msg: format!("expected a value, found {}", t.describe()),
            }),
        }
    }
}

fn constant_of(p: &BivariatePoly) -> Option<Rational> {
    let mut terms = p.terms();
    match terms.next() {
        None => Some(Rational::zero()),
        Some((&(0, 0), c)) if terms.next().is_none() => Some(c.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const XY: (&str, &str) = ("x", "y");

    #[test]
    fn expands_to_canonical_terms() {
        let p = parse_poly("x*y - x^3", XY).unwrap();
        let terms: Vec<_> = p.terms().map(|(&k, c)| (k, c.clone())).collect();
        assert_eq!(terms, vec![((1, 1), int(1)), ((3, 0), int(-1))]);
    }

    #[test]
    fn zero_and_identities() {
        assert!(parse_poly("0", XY).unwrap().is_zero());
        assert!(parse_poly("(x+y)^2 - x^2 - y^2 - 2*x*y", XY)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rational_literals_and_division() {
        let p = parse_poly("1/2*x + x/2", XY).unwrap();
        assert_eq!(p.coeff(1, 0), int(1));
        assert_eq!(parse_poly("3/4", XY).unwrap().constant_term(), rat(3, 4));
        assert!(matches!(
            parse_poly("x/y", XY),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("1/0", XY),
            Err(PolyError::Syntax { .. })
        ));
    }

    #[test]
    fn error_positions() {
        match parse_poly("x + ", XY) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_poly("x + z^2", XY) {
            Err(PolyError::UnknownIdentifier { name, pos, .. }) => {
                assert_eq!(name, "z");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        assert_eq!(
            parse_poly("x^-2", XY),
            Err(PolyError::NegativeExponent { pos: 2 })
        );
    }

    #[test]
    fn unary_minus() {
        let p = parse_poly("-x + y", XY).unwrap();
        assert_eq!(p.coeff(1, 0), int(-1));
        assert_eq!(p.coeff(0, 1), int(1));
        assert_eq!(parse_poly("--x", XY).unwrap().coeff(1, 0), int(1));
    }

    #[test]
    fn custom_variables() {
        let p = parse_poly("u*v^2", ("u", "v")).unwrap();
        assert_eq!(p.coeff(1, 2), int(1));
        assert!(matches!(
            parse_poly("x", ("t", "t")),
            Err(PolyError::BadVariables(..))
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "x*y - x^3",
            "-1 + y + 3/2*x^2",
            "x^2*y^3 - 7*x + 5/3",
            "0",
        ] {
            let p = parse_poly(s, XY).unwrap();
            let reparsed = parse_poly(&p.to_string(), XY).unwrap();
            assert_eq!(p, reparsed);
        }
    }
}
