//! Sparse polynomials over [`QuadScalar`]: homogeneous forms in `x, y, z`,
//! affine polynomials in two chart variables, and univariate helpers.

mod affine;
mod macaulay;
mod parse;
mod resultant;
mod roots;
mod univariate;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{common_extension, QuadScalar, Rat};

pub use affine::AffinePoly;
pub use macaulay::{hilbert_jacobian, ideal_piece_rank, macaulay_matrix, syzygy_kernel_dim};
pub use parse::parse_hpoly;
pub use resultant::{interpolate, resultant, BinaryForm};
pub use roots::{binary_form_roots, form_roots, univariate_roots};
pub use univariate::UniPoly;

/// Exponent triple `(x, y, z)`.
pub type Monomial = [u32; 3];

pub const VARS: [char; 3] = ['x', 'y', 'z'];

/// Dimension of the degree-`k` piece of `Q[x, y, z]`.
pub fn graded_dim(k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    let k = k as usize;
    (k + 1) * (k + 2) / 2
}

/// Degree-`k` monomials in graded-lex order, largest first.
pub fn monomials(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(graded_dim(k as i64));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

/// Position of `m` in [`monomials`] of its degree.
pub fn monomial_index(m: &Monomial) -> usize {
    let k = (m[0] + m[1] + m[2]) as usize;
    let rest = k - m[0] as usize;
    rest * (rest + 1) / 2 + (rest - m[1] as usize)
}

/// Homogeneous polynomial in `x, y, z`. No zero coefficients are stored and
/// every stored monomial has total degree `degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPoly {
    degree: u32,
    terms: BTreeMap<Monomial, QuadScalar>,
}

impl HPoly {
    pub fn zero(degree: u32) -> Self {
        HPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: QuadScalar) -> Self {
        let mut p = Self::zero(0);
        p.add_term([0, 0, 0], c);
        p
    }

    /// The coordinate `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, QuadScalar::one())
    }

    pub fn monomial(e: Monomial, c: QuadScalar) -> Self {
        let mut p = Self::zero(e.iter().sum());
        p.add_term(e, c);
        p
    }

    /// Builds a form from terms; fails if the terms are not all of one degree.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, QuadScalar)>,
    {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::Parse(format!(
                    "monomial {e:?} is not of degree {degree}"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `a x + b y + c z`.
    pub fn linear(c: &[Rat; 3]) -> Self {
        let terms = (0..3).map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            (e, QuadScalar::from_rat(c[i].clone()))
        });
        Self::from_terms(1, terms).expect("linear form")
    }

    /// Conic with coefficients ordered `x^2, xy, xz, y^2, yz, z^2`.
    pub fn conic(c: &[Rat; 6]) -> Self {
        const E: [Monomial; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
        let terms = E.iter().zip(c).map(|(e, c)| (*e, QuadScalar::from_rat(c.clone())));
        Self::from_terms(2, terms).expect("conic form")
    }

    fn add_term(&mut self, e: Monomial, c: QuadScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QuadScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Monomial) -> QuadScalar {
        self.terms.get(e).cloned().unwrap_or_else(QuadScalar::zero)
    }

    pub fn extension(&self) -> Result<i64> {
        common_extension(self.terms.values())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(QuadScalar::is_rational)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&QuadScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QuadScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        HPoly {
            degree: self.degree + m.iter().sum::<u32>(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + m[0], e[1] + m[1], e[2] + m[2]], c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(QuadScalar::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                out.add_term(e2, c * &QuadScalar::from_int(e[i] as i64));
            }
        }
        out
    }

    /// `(f_x, f_y, f_z)`.
    pub fn partials(&self) -> [HPoly; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    pub fn eval(&self, p: &[QuadScalar; 3]) -> QuadScalar {
        let mut acc = QuadScalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    t = &t * &p[i].pow(e[i]);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Linear change of variables `x_i -> sum_j m[i][j] x_j`.
    pub fn substitute_linear(&self, m: &[[Rat; 3]; 3]) -> Self {
        let images: Vec<HPoly> = m.iter().map(HPoly::linear).collect();
        let mut powers: Vec<Vec<HPoly>> = Vec::with_capacity(3);
        for img in &images {
            let mut v = vec![HPoly::constant(QuadScalar::one())];
            for k in 1..=self.degree as usize {
                let next = v[k - 1].mul(img);
                v.push(next);
            }
            powers.push(v);
        }
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize])
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Whether `other = c * self` for a nonzero scalar `c`.
    pub fn is_proportional(&self, other: &Self) -> bool {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return false;
        }
        let Some((e0, c0)) = self.terms.iter().next() else {
            return other.is_zero();
        };
        let Some(d0) = other.terms.get(e0) else {
            return false;
        };
        let ratio = d0 / c0;
        self.terms
            .iter()
            .all(|(e, c)| other.terms.get(e).is_some_and(|d| *d == c * &ratio))
    }

    /// Sets variable `var` to 1 and keeps the other two in order.
    pub fn dehomogenize(&self, var: usize) -> AffinePoly {
        let keep: Vec<usize> = (0..3).filter(|&i| i != var).collect();
        AffinePoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| ([e[keep[0]], e[keep[1]]], c.clone())),
        )
    }

    /// Degree in variable `var`.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Coefficient of the pure power `var^degree`.
    pub fn pure_power_coeff(&self, var: usize) -> QuadScalar {
        let mut e = [0; 3];
        e[var] = self.degree;
        self.coeff(&e)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| {
                    if e[i] == 1 {
                        VARS[i].to_string()
                    } else {
                        format!("{}^{}", VARS[i], e[i])
                    }
                })
                .collect();
            let (neg, coeff) = match c.as_rat() {
                Some(r) => (r.is_negative(), r.abs().to_string()),
                None => (false, format!("({c})")),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HPoly {
        parse_hpoly(s).unwrap()
    }

    #[test]
    fn display_round_trips() {
        for src in ["x^2 + y^2 - 3*z^2", "-x*y + 1/2*z^2", "x^3 - y^2*z", "-2*x"] {
            let f = p(src);
            assert_eq!(f.to_string(), src);
            assert_eq!(p(&f.to_string()), f);
        }
    }

    #[test]
    fn partials_examples() {
        let [a, b, c] = p("x*y*z").partials();
        assert_eq!((a, b, c), (p("y*z"), p("x*z"), p("x*y")));
        let [a, b, c] = p("x^2 + y^2 - 2*z^2").partials();
        assert_eq!((a, b, c), (p("2*x"), p("2*y"), p("-4*z")));
        let [a, b, c] = p("x^3").partials();
        assert_eq!(a, p("3*x^2"));
        assert!(b.is_zero() && c.is_zero());
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn graded_dim_examples() {
        assert_eq!(graded_dim(0), 1);
        assert_eq!(graded_dim(2), 6);
        assert_eq!(graded_dim(36), 703);
        assert_eq!(graded_dim(-1), 0);
    }

    #[test]
    fn monomial_index_matches_listing() {
        for k in 0..8 {
            for (i, m) in monomials(k).iter().enumerate() {
                assert_eq!(monomial_index(m), i);
            }
        }
    }

    #[test]
    fn substitution_roundtrip() {
        use crate::scalars::rat;
        let f = p("x^2 + 2*x*y - x*z + y*z");
        let shear = [
            [rat(1), rat(2), rat(0)],
            [rat(0), rat(1), rat(0)],
            [rat(0), rat(0), rat(1)],
        ];
        let back = [
            [rat(1), rat(-2), rat(0)],
            [rat(0), rat(1), rat(0)],
            [rat(0), rat(0), rat(1)],
        ];
        assert_eq!(f.substitute_linear(&shear).substitute_linear(&back), f);
    }

    #[test]
    fn proportionality() {
        assert!(p("x").is_proportional(&p("2*x")));
        assert!(!p("x").is_proportional(&p("y")));
        assert!(p("x^2 - y*z").is_proportional(&p("-3*x^2 + 3*y*z")));
    }
}
