//! ASCII polynomial syntax over `x, y, z`.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := uint ['/' uint] | 'x' | 'y' | 'z' | '(' poly ')'
//! ```
//!
//! Whitespace is ignored. The result must be homogeneous.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{HPoly, Monomial};
use crate::error::{Error, Result};
use crate::scalars::{QuadScalar, Rat};

type Sparse = BTreeMap<Monomial, Rat>;

pub fn parse_hpoly(src: &str) -> Result<HPoly> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: &chars, pos: 0 };
    let poly = p.poly()?;
    if p.pos != chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let mut degrees = poly.keys().map(|e| e.iter().sum::<u32>());
    let degree = degrees.next().unwrap_or(0);
    if degrees.any(|d| d != degree) {
        return Err(Error::Parse(format!("`{src}` is not homogeneous")));
    }
    HPoly::from_terms(
        degree,
        poly.into_iter().map(|(e, c)| (e, QuadScalar::from_rat(c))),
    )
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

fn add_into(acc: &mut Sparse, e: Monomial, c: Rat) {
    let v = acc.entry(e).or_insert_with(Rat::zero);
    *v += c;
    if v.is_zero() {
        acc.remove(&e);
    }
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            add_into(
                &mut out,
                [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]],
                c1 * c2,
            );
        }
    }
    out
}

fn constant(c: Rat) -> Sparse {
    let mut s = Sparse::new();
    add_into(&mut s, [0, 0, 0], c);
    s
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut sign = Rat::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            for (e, c) in t {
                add_into(&mut acc, e, c * &sign);
            }
            match self.peek() {
                Some('+') => sign = Rat::one(),
                Some('-') => sign = -Rat::one(),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.uint()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            let mut acc = constant(Rat::one());
            for _ in 0..n {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(c @ ('x' | 'y' | 'z')) => {
                self.pos += 1;
                let mut e = [0; 3];
                e[(c as u8 - b'x') as usize] = 1;
                let mut s = Sparse::new();
                s.insert(e, Rat::one());
                Ok(s)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    return Ok(constant(Rat::new(n, d)));
                }
                Ok(constant(Rat::from_integer(n)))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text: String = self.s[start..self.pos].iter().collect();
        Ok(text.parse().expect("digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat_frac;

    #[test]
    fn parses_spec_example() {
        let f = parse_hpoly("x^2 + 2*x*y - x*z + y*z").unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.num_terms(), 4);
        assert_eq!(f.coeff(&[1, 0, 1]), QuadScalar::from_int(-1));
    }

    #[test]
    fn rational_coefficients_and_products() {
        let f = parse_hpoly("3/4*x*(y - z) + -1/2*y^2").unwrap_err();
        assert!(matches!(f, Error::Parse(_)));
        let f = parse_hpoly("3/4*x*(y - z) - 1/2*y^2").unwrap();
        assert_eq!(f.coeff(&[1, 1, 0]), QuadScalar::from_rat(rat_frac(3, 4)));
        assert_eq!(f.coeff(&[0, 2, 0]), QuadScalar::from_rat(rat_frac(-1, 2)));
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert!(parse_hpoly("x^2 + y").is_err());
        assert!(parse_hpoly("x +").is_err());
        assert!(parse_hpoly("x/2").is_err());
    }

    #[test]
    fn cancellation() {
        assert!(parse_hpoly("x*y - y*x").unwrap().is_zero());
    }
}
