//! Expression grammar for case files.
//!
//! ```text
//! sum     := ['+'|'-'] product (('+'|'-') product)*
//! product := factor (('*' | '^' | '/') factor)*
//! factor  := '-' factor | atom ('^' INT)*
//! atom    := INT | IDENT | '(' sum ')'
//!          | bar(IDENT) | d(sum) | dbar(sum) | pv(1/IDENT^a) | res(1/IDENT^a)
//! ```
//!
//! `^` followed by an integer is a power, otherwise a wedge product; `*` is
//! the graded product as well. `/` divides by a function. `res(1/x^a)` is
//! the residue factor `∂̄(1/x^a)`.

use crate::curralg::{current_mul, dbar, CurrentSum};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::symalg::{Form, Poly, RatFun, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((col, Tok::Int(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

type Val<F> = CurrentSum<F>;

impl<'a> Parser<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                s.parse().or_else(|_| self.err("integer too large"))
            }
            _ => self.err("expected an integer"),
        }
    }

    fn var(&mut self) -> Result<usize> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => match self.names.iter().position(|n| *n == s) {
                Some(i) => {
                    self.pos += 1;
                    Ok(i)
                }
                None => self.err(format!("undeclared variable '{s}'")),
            },
            _ => self.err("expected a variable"),
        }
    }

    fn lift<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } | Error::Fragment(_) => e,
            other => Error::Parse {
                column: self.col(),
                message: other.to_string(),
            },
        })
    }

    fn sum<F: Field>(&mut self) -> Result<Val<F>> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.product()?;
        let mut acc = if neg { first.neg() } else { first };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product<F: Field>(&mut self) -> Result<Val<F>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') || self.eat('^') {
                let rhs = self.factor()?;
                acc = self.lift(current_mul(&acc, &rhs))?;
            } else if self.eat('/') {
                let rhs = self.factor()?;
                let Some(r) = rhs.as_ratfun() else {
                    return self.err("can only divide by a function");
                };
                let inv = self.lift(r.inv())?;
                acc = self.lift(acc.mul_function(&inv))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<F: Field>(&mut self) -> Result<Val<F>> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Sym('^')) && matches!(self.peek2(), Some(Tok::Int(_))) {
            self.pos += 1;
            let n = self.int()?;
            let mut acc = CurrentSum::one();
            for _ in 0..n {
                acc = self.lift(current_mul(&acc, &base))?;
            }
            base = acc;
        }
        Ok(base)
    }

    /// `1/IDENT` or `1/IDENT^a` inside `pv(…)` and `res(…)`.
    fn inverse_power(&mut self) -> Result<(usize, u32)> {
        match self.peek() {
            Some(Tok::Int(s)) if s == "1" => self.pos += 1,
            _ => return self.err("expected 1/variable^exponent"),
        }
        self.expect('/')?;
        let v = self.var()?;
        let a = if self.eat('^') { self.int()? } else { 1 };
        if a == 0 {
            return self.err("exponent must be positive");
        }
        Ok((v, a))
    }

    fn atom<F: Field>(&mut self) -> Result<Val<F>> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let c = F::parse_literal(&s).ok_or_else(|| Error::Parse {
                    column: self.col(),
                    message: "bad number".into(),
                })?;
                Ok(CurrentSum::from_form(&Form::function(RatFun::constant(c))))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) if self.peek2() == Some(&Tok::Sym('(')) && !self.names.contains(&name) => {
                self.pos += 2;
                let v = match name.as_str() {
                    "bar" => {
                        let i = self.var()?;
                        CurrentSum::from_form(&Form::poly(Poly::var(Var::bar(i))))
                    }
                    "d" | "dbar" => {
                        let inner: Val<F> = self.sum()?;
                        if name == "dbar" {
                            self.lift(dbar(&inner))?
                        } else {
                            let Some(f) = inner.as_form() else {
                                return self.err("d(…) applies to smooth forms only");
                            };
                            CurrentSum::from_form(&f.d())
                        }
                    }
                    "pv" => {
                        let (v, a) = self.inverse_power()?;
                        CurrentSum::pv_atom(v, a)
                    }
                    "res" => {
                        let (v, a) = self.inverse_power()?;
                        CurrentSum::res_atom(v, a)
                    }
                    other => return self.err(format!("unknown function '{other}'")),
                };
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(_)) => {
                let i = self.var()?;
                Ok(CurrentSum::from_form(&Form::poly(Poly::var(Var::z(i)))))
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses a current expression over the declared variables.
pub fn parse_current<F: Field>(src: &str, names: &[String]) -> Result<CurrentSum<F>> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end: src.chars().count() + 1,
    };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn parse_form<F: Field>(src: &str, names: &[String]) -> Result<Form<F>> {
    parse_current(src, names)?.as_form().ok_or_else(|| Error::Parse {
        column: 1,
        message: "expected a smooth form".into(),
    })
}

pub fn parse_poly<F: Field>(src: &str, names: &[String]) -> Result<Poly<F>> {
    parse_current(src, names)?.as_poly().ok_or_else(|| Error::Parse {
        column: 1,
        message: "expected a polynomial".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn poly(s: &str) -> Poly<Q> {
        parse_poly(s, &names()).unwrap()
    }

    fn cur(s: &str) -> CurrentSum<Q> {
        parse_current(s, &names()).unwrap()
    }

    #[test]
    fn polynomials() {
        assert_eq!(poly("(x + y)*(x - y)"), poly("x^2 - y^2"));
        assert_eq!(poly("x*z"), Poly::var(Var::z(0)) * Poly::var(Var::z(2)));
        assert_eq!(poly("-1/2*x + 3").render(&names()), "-(1/2)*x + 3");
        assert_eq!(poly("bar(x)*x"), Poly::var(Var::bar(0)) * Poly::var(Var::z(0)));
        assert_eq!(poly("2^3"), Poly::int(8));
    }

    #[test]
    fn forms_and_currents() {
        let f: Form<Q> = parse_form("d(x)^d(y)", &names()).unwrap();
        let g: Form<Q> = parse_form("-d(y)^d(x)", &names()).unwrap();
        assert_eq!(f, g);
        assert_eq!(
            parse_form::<Q>("d(x*z)", &names()).unwrap(),
            parse_form("z*d(x) + x*d(z)", &names()).unwrap()
        );
        assert_eq!(cur("dbar(pv(1/z))"), CurrentSum::res_atom(2, 1));
        assert_eq!(cur("z*res(1/z^2)"), CurrentSum::res_atom(2, 1));
        assert_eq!(cur("1/z"), CurrentSum::pv_atom(2, 1));
        assert!(cur("bar(x)*res(1/x)").is_zero());
        let r = cur("1/(x*bar(x)+y*bar(y))*bar(x)*res(1/z)");
        assert_eq!(r.len(), 1);
        assert_eq!(cur("res(1/y)^res(1/x)"), cur("-res(1/x)^res(1/y)"));
    }

    #[test]
    fn errors_have_columns() {
        match parse_current::<Q>("x + w", &names()) {
            Err(Error::Parse { column, message }) => {
                assert_eq!(column, 5);
                assert!(message.contains('w'));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_current::<Q>("x +", &names()),
            Err(Error::Parse { column: 4, .. })
        ));
        assert!(matches!(
            parse_current::<Q>("x $ y", &names()),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(matches!(
            parse_current::<Q>("x / 0", &names()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_current::<Q>("pv(1/x)*res(1/x)", &names()),
            Err(Error::Fragment(_))
        ));
        assert!(parse_poly::<Q>("d(x)", &names()).is_err());
    }
}
