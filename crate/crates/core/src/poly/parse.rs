//! Recursive-descent parser for rational expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT | IDENT | '(' expr ')'
//! ```
//!
//! `i` denotes √−1 = ζ², `zeta8` the eighth root of unity ζ, `sqrt2` = ζ − ζ³.
//! Every other identifier must name a variable of the table.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Rational};

use super::ratfunc::RatFunc;
use super::vars::VarTable;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|c| c.1).collect())));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            k += 1;
        } else {
            return Err(Error::Parse {
                position: pos,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    table: &'a VarTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                let rhs = self.unary()?;
                acc = acc.try_div(&rhs).map_err(|_| Error::Parse {
                    position: pos,
                    message: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let pos = self.pos();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        self.at += 1;
        let e: i32 = n.try_into().map_err(|_| Error::Parse {
            position: pos,
            message: "exponent too large".into(),
        })?;
        let e = if negative { -e } else { e };
        base.pow(e).map_err(|_| Error::Parse {
            position: pos,
            message: "negative power of zero".into(),
        })
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(RatFunc::constant(FieldElem::from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                let pos = self.pos();
                self.at += 1;
                match name.as_str() {
                    "i" => Ok(RatFunc::constant(FieldElem::i())),
                    "zeta8" => Ok(RatFunc::constant(FieldElem::zeta())),
                    "sqrt2" => Ok(RatFunc::constant(FieldElem::sqrt2())),
                    _ => match self.table.lookup(&name) {
                        Some(v) => Ok(RatFunc::var(v)),
                        None => Err(Error::Parse {
                            position: pos,
                            message: format!("unknown variable `{name}`"),
                        }),
                    },
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src` into a rational function over the variables of `table`.
pub fn parse_expr(src: &str, table: &VarTable) -> Result<RatFunc> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
        table,
    };
    let r = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars::{W_LOWER, Y_LOWER, Z_LOWER};

    fn t() -> VarTable {
        VarTable::standard()
    }

    #[test]
    fn parses_sigma_one_coordinate() {
        let r = parse_expr("i*w/(y^2*z^3)", &t()).unwrap();
        let expect = RatFunc::constant(FieldElem::i())
            * RatFunc::var(W_LOWER)
            * (RatFunc::var(Y_LOWER).pow(2).unwrap() * RatFunc::var(Z_LOWER).pow(3).unwrap())
                .inv()
                .unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn precedence() {
        let a = parse_expr("-y^2 + 2*z", &t()).unwrap();
        let b = parse_expr("2*z - (y*y)", &t()).unwrap();
        assert_eq!(a, b);
        let c = parse_expr("y^-2", &t()).unwrap();
        assert_eq!(c, parse_expr("1/(y*y)", &t()).unwrap());
        assert_eq!(parse_expr("zeta8^2", &t()).unwrap(), parse_expr("i", &t()).unwrap());
        assert_eq!(parse_expr("α*y", &t()).unwrap(), parse_expr("alpha*y", &t()).unwrap());
    }

    #[test]
    fn malformed_input_reports_position() {
        assert_eq!(
            parse_expr("y +* z", &t()).unwrap_err(),
            Error::Parse {
                position: 3,
                message: "unexpected `*`".into()
            }
        );
        assert!(matches!(
            parse_expr("(y + z", &t()),
            Err(Error::Parse { position: 6, .. })
        ));
        assert!(matches!(
            parse_expr("y $ z", &t()),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_expr("q + 1", &t()),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_expr("y/(z-z)", &t()),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(parse_expr("y z", &t()), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_expr("", &t()), Err(Error::Parse { position: 0, .. })));
    }
}
