//! Dense univariate polynomials over a finite field, plus the text grammar
//! used by the command line.
//!
//! Coefficients are stored low-to-high with trailing zeros trimmed; the
//! zero polynomial is the empty vector (degree `None`).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fq::{Embedding, FqElem, FqField};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FqField,
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_var('t'))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_var('t'))
    }
}

impl Poly {
    pub fn zero(field: &FqField) -> Poly {
        Poly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &FqField) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FqElem) -> Poly {
        let field = c.field().clone();
        if c.is_zero() {
            Poly::zero(&field)
        } else {
            Poly { field, coeffs: vec![c] }
        }
    }

    /// The variable `t`.
    pub fn x(field: &FqField) -> Poly {
        Poly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    pub fn from_coeffs(field: &FqField, coeffs: Vec<FqElem>) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from integer coefficients, low-to-high.
    pub fn from_ints(field: &FqField, ints: &[i64]) -> Poly {
        Poly::from_coeffs(field, ints.iter().map(|&n| field.from_i64(n)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map_or(false, |c| c.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn assert_same_field(&self, other: &Poly, what: &str) {
        assert!(self.field == other.field, "{}: polynomials over different fields", what);
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_field(other, "add");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same_field(other, "sub");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_field(other, "mul");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FqElem) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(divisor, "divrem");
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading_coeff().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap().mul(&lead_inv);
            quot[dr - dd] = c.clone();
            for j in 0..=dd {
                let sub = c.mul(&divisor.coeff(j));
                rem.coeffs[dr - dd + j] = rem.coeffs[dr - dd + j].sub(&sub);
            }
            rem.trim();
        }
        Ok((Poly::from_coeffs(&self.field, quot), rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("division by zero polynomial");
        assert!(r.is_zero(), "div_exact with nonzero remainder");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `g = s*self + t*other`,
    /// `g` monic (or zero).
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let field = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let ns = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, ns);
            let nt = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, nt);
        }
        if let Some(lc) = r0.leading_coeff().cloned() {
            let inv = lc.inv().expect("leading coefficient nonzero");
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        } else {
            (r0, s0, t0)
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Formal derivative (can vanish in characteristic p).
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul(&self.field.from_u64((i + 1) as u64)))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        assert!(x.field() == &self.field, "eval: point in a different field");
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluation at a point of an extension, through an explicit embedding
    /// of the coefficients.
    pub fn eval_embedded(&self, emb: &Embedding, x: &FqElem) -> FqElem {
        assert!(emb.src() == &self.field && x.field() == emb.dst());
        let mut acc = emb.dst().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&emb.map(c));
        }
        acc
    }

    pub fn pow_u(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient reversal `t^deg * f(1/t)`; used for expansions at the
    /// place at infinity.
    pub fn reverse(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Total ordering by (degree, coefficient tuple low-to-high); the ordering
    /// used to sort factorizations and pick canonical representatives.
    pub fn cmp_order(&self, other: &Poly) -> Ordering {
        let da = self.coeffs.len();
        let db = other.coeffs.len();
        if da != db {
            return da.cmp(&db);
        }
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            match a.index().cmp(&b.index()) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Renders in the CLI grammar: terms in decreasing degree, `^` powers,
    /// explicit `*`. Non-prime-subfield coefficients are parenthesized
    /// polynomials in the power-basis generator `g`.
    pub fn format_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let coeff_str = {
                let s = c.to_string();
                if s.contains('+') {
                    format!("({})", s)
                } else {
                    s
                }
            };
            match i {
                0 => out.push_str(&coeff_str),
                _ => {
                    if !c.is_one() {
                        out.push_str(&coeff_str);
                        out.push('*');
                    }
                    out.push(var);
                    if i > 1 {
                        out.push_str(&format!("^{}", i));
                    }
                }
            }
        }
        out
    }

    /// Parses the CLI grammar: integer literals, the variable `t`,
    /// `+ - * ^` and parentheses; coefficients are reduced mod p.
    pub fn parse(input: &str, field: &FqField) -> Result<Poly> {
        let tokens = tokenize(input)?;
        let mut parser = Parser { tokens, pos: 0, field: field.clone() };
        let poly = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at token {}",
                parser.pos
            )));
        }
        Ok(poly)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(u64),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = vec![];
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        // fold with saturation; the value is reduced mod p anyway
                        n = n.saturating_mul(10).saturating_add(v as u64);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Int(n));
            }
            't' => {
                chars.next();
                tokens.push(Token::Var);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            other => return Err(Error::Parse(format!("unexpected character '{}'", other))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: FqField,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let mut base = self.primary()?;
        while self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Int(e)) => base = base.pow_u(e),
                other => {
                    return Err(Error::Parse(format!(
                        "expected integer exponent after '^', found {:?}",
                        other
                    )))
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Poly::constant(self.field.from_u64(n))),
            Some(Token::Var) => Ok(Poly::x(&self.field)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            Some(Token::Minus) => Ok(self.primary()?.neg()),
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FqField {
        FqField::new(p, 1).unwrap()
    }

    #[test]
    fn divrem_example() {
        // (t^2+1) = (t+1)(t+2) + 2 over F_3
        let f3 = f(3);
        let a = Poly::from_ints(&f3, &[1, 0, 1]);
        let b = Poly::from_ints(&f3, &[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, Poly::from_ints(&f3, &[2, 1]));
        assert_eq!(r, Poly::from_ints(&f3, &[2]));
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_monic() {
        let f5 = f(5);
        let a = Poly::from_ints(&f5, &[-1, 0, 1]); // t^2 - 1
        let b = Poly::from_ints(&f5, &[-1, 1]); // t - 1
        assert_eq!(a.gcd(&b), Poly::from_ints(&f5, &[4, 1]));
    }

    #[test]
    fn derivative_can_vanish() {
        let f3 = f(3);
        let cube = Poly::from_ints(&f3, &[0, 0, 0, 1]);
        assert!(cube.derivative().is_zero());
    }

    #[test]
    fn parse_and_format() {
        let f3 = f(3);
        let p = Poly::parse("t*(t-1)^2", &f3).unwrap();
        // t(t-1)^2 = t^3 - 2t^2 + t = t^3 + t^2 + t over F_3
        assert_eq!(p, Poly::from_ints(&f3, &[0, 1, 1, 1]));
        assert_eq!(p.format_var('t'), "t^3+t^2+t");
        assert_eq!(Poly::parse(&p.format_var('t'), &f3).unwrap(), p);
        assert_eq!(Poly::parse("7", &f3).unwrap(), Poly::from_ints(&f3, &[1]));
        assert_eq!(Poly::parse("-t", &f3).unwrap(), Poly::from_ints(&f3, &[0, 2]));
        assert!(Poly::parse("t**2", &f3).is_err());
        assert!(Poly::parse("x+1", &f3).is_err());
        assert_eq!(Poly::zero(&f3).format_var('t'), "0");
    }

    #[test]
    fn ext_gcd_identity() {
        let f7 = f(7);
        let a = Poly::parse("t^3+2*t+1", &f7).unwrap();
        let b = Poly::parse("t^2+5", &f7).unwrap();
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn eval_embedded_constants() {
        let f3 = FqField::new(3, 1).unwrap();
        let f9 = FqField::new(3, 2).unwrap();
        let emb = Embedding::new(&f3, &f9).unwrap();
        let p = Poly::parse("t^2+1", &f3).unwrap();
        let g = f9.elem(&[0, 1]).unwrap();
        // g^2 = -1 in F_9 with modulus g^2+1, so p(g) = 0
        assert!(p.eval_embedded(&emb, &g).is_zero());
    }
}
