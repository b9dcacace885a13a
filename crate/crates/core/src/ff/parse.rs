//! Parser for polynomial expressions in `t`, `th` (for `θ`) and `a` (the generator of `F_q`).
//!
//! Grammar: integers are read mod `p`; the operators are `+ - * / ^` with the usual
//! precedence and parentheses. Exponents are integer literals and may be negative, which
//! together with `/` lets matrix entries be written as fractions such as `1/(t-th)` or
//! `th^-2*t`.

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::field::Field;
use crate::ff::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[start..i].iter().collect();
            let n = txt.parse::<i64>().map_err(|_| Error::Parse(format!("integer {txt} too large")))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

/// Syntax tree of an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in '{}'", self.src))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let parens = self.eat('(');
            let neg = if parens { self.eat('-') || neg } else { neg };
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(self.err("exponent must be an integer literal"));
            };
            self.pos += 1;
            if parens && !self.eat(')') {
                return Err(self.err("missing ')' after exponent"));
            }
            return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("unexpected end of expression or operator")),
        }
    }
}

/// Parses an expression into a syntax tree.
pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, src: s };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// A fraction of bivariate polynomials, not reduced.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: BivarPoly,
    pub den: BivarPoly,
}

impl Fraction {
    pub fn from_poly(p: BivarPoly) -> Self {
        let den = BivarPoly::one(p.field());
        Fraction { num: p, den }
    }

    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Fraction { num: self.num.add(&o.num), den: self.den.clone() };
        }
        Fraction { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    fn neg(&self) -> Self {
        Fraction { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, o: &Self) -> Self {
        Fraction { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Fraction { num: self.den.clone(), den: self.num.clone() })
    }

    /// `Some(poly)` when the denominator is a nonzero constant.
    pub fn as_poly(&self) -> Option<BivarPoly> {
        let c = self.den.as_t_poly()?;
        if c.degree() != Some(0) {
            return None;
        }
        Some(self.num.scale(self.num.field().inv(c.coeff(0))))
    }
}

/// Evaluates an expression over `F_q[t, θ]`, allowing fractions.
pub fn eval_fraction(e: &Expr, field: &Field) -> Result<Fraction> {
    let poly = |p: BivarPoly| Ok(Fraction::from_poly(p));
    match e {
        Expr::Num(n) => poly(BivarPoly::constant(field, field.from_int(*n))),
        Expr::Var(v) => match v.as_str() {
            "t" => poly(BivarPoly::t(field)),
            "th" | "theta" => poly(BivarPoly::theta(field)),
            "a" if field.base_degree() > 1 => poly(BivarPoly::constant(field, field.base_generator())),
            "a" => Err(Error::Parse("'a' is only available when F_q is a proper extension of F_p".into())),
            other => Err(Error::Parse(format!("unknown variable '{other}'"))),
        },
        Expr::Neg(x) => Ok(eval_fraction(x, field)?.neg()),
        Expr::Add(x, y) => Ok(eval_fraction(x, field)?.add(&eval_fraction(y, field)?)),
        Expr::Sub(x, y) => Ok(eval_fraction(x, field)?.add(&eval_fraction(y, field)?.neg())),
        Expr::Mul(x, y) => Ok(eval_fraction(x, field)?.mul(&eval_fraction(y, field)?)),
        Expr::Div(x, y) => Ok(eval_fraction(x, field)?.mul(&eval_fraction(y, field)?.inv()?)),
        Expr::Pow(x, n) => {
            let b = eval_fraction(x, field)?;
            let b = if *n < 0 { b.inv()? } else { b };
            let k = n.unsigned_abs();
            Ok(Fraction { num: b.num.pow(k), den: b.den.pow(k) })
        }
    }
}

/// Parses a polynomial (no division) in `t` and `th`.
pub fn parse_bivar(s: &str, field: &Field) -> Result<BivarPoly> {
    eval_fraction(&parse_expr(s)?, field)?
        .as_poly()
        .ok_or_else(|| Error::Parse(format!("'{s}' is not a polynomial")))
}

/// Parses a polynomial in `t` alone.
pub fn parse_t_poly(s: &str, field: &Field) -> Result<Poly> {
    parse_bivar(s, field)?.as_t_poly().ok_or_else(|| Error::Parse(format!("'{s}' involves th")))
}

/// Parses a polynomial in `th` alone.
pub fn parse_theta_poly(s: &str, field: &Field) -> Result<Poly> {
    parse_bivar(s, field)?.as_theta_poly().ok_or_else(|| Error::Parse(format!("'{s}' involves t")))
}

/// Parses a polynomial in the variable `a` over `F_p`, returning coefficients mod `p`.
pub fn parse_base_modulus(s: &str, p: u32) -> Result<Vec<u32>> {
    fn go(e: &Expr, p: i64) -> Result<Vec<i64>> {
        let add = |x: Vec<i64>, y: Vec<i64>, sign: i64| {
            let n = x.len().max(y.len());
            (0..n)
                .map(|i| (x.get(i).unwrap_or(&0) + sign * y.get(i).unwrap_or(&0)).rem_euclid(p))
                .collect::<Vec<_>>()
        };
        let mul = |x: &[i64], y: &[i64]| {
            let mut out = vec![0i64; x.len() + y.len()];
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    out[i + j] = (out[i + j] + a * b).rem_euclid(p);
                }
            }
            out
        };
        Ok(match e {
            Expr::Num(n) => vec![n.rem_euclid(p)],
            Expr::Var(v) if v == "a" => vec![0, 1],
            Expr::Var(v) => return Err(Error::Parse(format!("unknown variable '{v}' in modulus"))),
            Expr::Neg(x) => add(vec![], go(x, p)?, -1),
            Expr::Add(x, y) => add(go(x, p)?, go(y, p)?, 1),
            Expr::Sub(x, y) => add(go(x, p)?, go(y, p)?, -1),
            Expr::Mul(x, y) => mul(&go(x, p)?, &go(y, p)?),
            Expr::Div(..) => return Err(Error::Parse("division in modulus".into())),
            Expr::Pow(x, n) => {
                if *n < 0 {
                    return Err(Error::Parse("negative exponent in modulus".into()));
                }
                let b = go(x, p)?;
                let mut acc = vec![1];
                for _ in 0..*n {
                    acc = mul(&acc, &b);
                }
                acc
            }
        })
    }
    let mut v = go(&parse_expr(s)?, p as i64)?;
    while v.last() == Some(&0) {
        v.pop();
    }
    Ok(v.into_iter().map(|c| c as u32).collect())
}
