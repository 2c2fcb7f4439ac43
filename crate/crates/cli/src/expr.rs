//! Literals for field elements and polynomials.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! So `^` binds tighter than unary minus (`-a^2` is `-(a^2)`), which binds
//! tighter than `*` and `/`. Identifiers are `t` in `F_p(t)`, `a` in
//! `F_p[a]/(f)`, and the polynomial variable where one is expected.

use dynlin_core::{Elem, Field, FieldSpec, FpPoly, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    /// 1-based character column inside the literal.
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    fn at(pos: usize, message: impl Into<String>) -> Self {
        SyntaxError { column: pos + 1, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// A parsed literal; `pos` is the character offset where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub node: Node,
    pub pos: usize,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos;
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = Expr { node: Node::Add(Box::new(lhs), Box::new(rhs)), pos };
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = Expr { node: Node::Sub(Box::new(lhs), Box::new(rhs)), pos };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            self.skip_ws();
            let pos = self.pos;
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = Expr { node: Node::Mul(Box::new(lhs), Box::new(rhs)), pos };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = Expr { node: Node::Div(Box::new(lhs), Box::new(rhs)), pos };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        self.skip_ws();
        let pos = self.pos;
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr { node: Node::Neg(Box::new(inner)), pos });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        let pos = self.pos;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(SyntaxError::at(start, "expected an integer exponent"));
        }
        let k: i64 = digits.parse().map_err(|_| SyntaxError::at(start, "exponent too large"))?;
        if self.peek() == Some('^') {
            return Err(SyntaxError::at(self.pos, "chained exponents need parentheses"));
        }
        Ok(Expr { node: Node::Pow(Box::new(base), if negative { -k } else { k }), pos })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let pos = match self.peek() {
            Some(_) => self.pos,
            None => return Err(SyntaxError::at(self.pos, "unexpected end of input")),
        };
        let c = self.chars[pos];
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(SyntaxError::at(self.pos, "expected ')'"));
            }
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let digits = self.digits();
            let n = digits.parse().expect("ascii digits");
            return Ok(Expr { node: Node::Int(n), pos });
        }
        if c.is_alphabetic() {
            while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                self.pos += 1;
            }
            let name = self.chars[pos..self.pos].iter().collect();
            return Ok(Expr { node: Node::Var(name), pos });
        }
        Err(SyntaxError::at(pos, format!("unexpected '{c}'")))
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(SyntaxError::at(p.pos, format!("unexpected '{c}'"))),
    }
}

fn symbol(field: &Field, name: &str, pos: usize) -> Result<Elem, SyntaxError> {
    match (field.spec(), name) {
        (FieldSpec::RationalFunctions { .. }, "t") => {
            field.frac(FpPoly::var(), FpPoly::one()).map_err(|e| SyntaxError::at(pos, e.to_string()))
        }
        (FieldSpec::Extension { .. }, "a") => Ok(field.generator().expect("extension generator")),
        _ => Err(SyntaxError::at(pos, format!("unknown symbol '{name}' over {field}"))),
    }
}

/// Evaluates a literal to an element of `field`.
pub fn eval_elem(e: &Expr, field: &Field) -> Result<Elem, SyntaxError> {
    let err = |msg: String| SyntaxError::at(e.pos, msg);
    Ok(match &e.node {
        Node::Int(n) => field.from_rational(&BigRational::from(n.clone())).map_err(|x| err(x.to_string()))?,
        Node::Var(name) => symbol(field, name, e.pos)?,
        Node::Neg(a) => field.neg(&eval_elem(a, field)?),
        Node::Add(a, b) => field.add(&eval_elem(a, field)?, &eval_elem(b, field)?),
        Node::Sub(a, b) => field.sub(&eval_elem(a, field)?, &eval_elem(b, field)?),
        Node::Mul(a, b) => field.mul(&eval_elem(a, field)?, &eval_elem(b, field)?),
        Node::Div(a, b) => field.div(&eval_elem(a, field)?, &eval_elem(b, field)?).map_err(|x| err(x.to_string()))?,
        Node::Pow(a, k) => {
            let base = eval_elem(a, field)?;
            let base = if *k < 0 { field.inv(&base).map_err(|x| err(x.to_string()))? } else { base };
            field.pow(&base, k.unsigned_abs())
        }
    })
}

/// Evaluates a literal to a polynomial in `var` over `field`.
pub fn eval_poly(e: &Expr, field: &Field, var: &str) -> Result<Polynomial, SyntaxError> {
    let err = |msg: &str| SyntaxError::at(e.pos, msg);
    Ok(match &e.node {
        Node::Var(name) if name == var => Polynomial::x(field),
        Node::Int(_) | Node::Var(_) => Polynomial::constant(field, eval_elem(e, field)?),
        Node::Neg(a) => eval_poly(a, field, var)?.neg(),
        Node::Add(a, b) => eval_poly(a, field, var)?.add(&eval_poly(b, field, var)?),
        Node::Sub(a, b) => eval_poly(a, field, var)?.sub(&eval_poly(b, field, var)?),
        Node::Mul(a, b) => eval_poly(a, field, var)?.mul(&eval_poly(b, field, var)?),
        Node::Div(a, b) => {
            let d = eval_poly(b, field, var)?;
            if !d.is_constant() || d.is_zero() {
                return Err(err("can only divide a polynomial by a nonzero constant"));
            }
            let inv = field.inv(&d.coeff(0)).map_err(|x| SyntaxError::at(e.pos, x.to_string()))?;
            eval_poly(a, field, var)?.scale(&inv)
        }
        Node::Pow(a, k) => {
            let base = eval_poly(a, field, var)?;
            if *k >= 0 {
                base.pow(*k as usize)
            } else if base.is_constant() {
                Polynomial::constant(field, eval_elem(e, field)?)
            } else {
                return Err(err("negative power of a nonconstant polynomial"));
            }
        }
    })
}

pub fn parse_elem(text: &str, field: &Field) -> Result<Elem, SyntaxError> {
    eval_elem(&parse(text)?, field)
}

pub fn parse_poly(text: &str, field: &Field, var: &str) -> Result<Polynomial, SyntaxError> {
    eval_poly(&parse(text)?, field, var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let q = Field::rationals();
        assert_eq!(parse_elem("-2^2", &q).unwrap(), q.from_i64(-4));
        assert_eq!(parse_elem("1 + 2 * 3", &q).unwrap(), q.from_i64(7));
        assert_eq!(parse_elem("2 * -3", &q).unwrap(), q.from_i64(-6));
        assert_eq!(parse_elem("(1 + 2)^2 / 3", &q).unwrap(), q.from_i64(3));
        assert_eq!(parse_elem("8 / 2 / 2", &q).unwrap(), q.from_i64(2));
        assert_eq!(parse_elem("2^-1 * 4", &q).unwrap(), q.from_i64(2));
    }

    #[test]
    fn finite_fields_reduce() {
        let f = Field::prime(5).unwrap();
        assert_eq!(parse_elem("7", &f).unwrap(), f.from_i64(2));
        assert_eq!(parse_elem("1/2", &f).unwrap(), f.from_i64(3));
        let f4 = Field::extension(2, FpPoly::from_coeffs(vec![1, 1, 1])).unwrap();
        assert_eq!(parse_elem("a^2", &f4).unwrap(), parse_elem("a + 1", &f4).unwrap());
    }

    #[test]
    fn rational_functions_canonicalize() {
        let k = Field::rational_functions(2).unwrap();
        let e = parse_elem("t/(t+1)", &k).unwrap();
        assert_eq!(k.format(&e), "(t)/(t + 1)");
        assert_eq!(parse_elem(&k.format(&e), &k).unwrap(), e);
        assert_eq!(parse_elem("(t^2 + 1)/(t + 1)", &k).unwrap(), parse_elem("t + 1", &k).unwrap());
    }

    #[test]
    fn polynomials() {
        let k = Field::rational_functions(2).unwrap();
        let p = parse_poly("x^2 + t", &k, "x").unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(parse_poly(&p.to_string(), &k, "x").unwrap(), p);
        let q = Field::rationals();
        assert_eq!(parse_poly("(x - 1)^2 / 2", &q, "x").unwrap().to_string(), "1/2*x^2 - x + 1/2");
    }

    #[test]
    fn errors_carry_columns() {
        let q = Field::rationals();
        assert_eq!(parse_elem("1 + ", &q).unwrap_err().column, 5);
        assert_eq!(parse_elem("2 $", &q).unwrap_err().column, 3);
        assert_eq!(parse_elem("1/0", &q).unwrap_err().column, 2);
        assert_eq!(parse_elem("t", &q).unwrap_err().column, 1);
        assert!(parse_elem("2^2^2", &q).is_err());
        assert!(parse_poly("1/x", &q, "x").is_err());
    }
}
