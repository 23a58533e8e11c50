//! Exact scalars: rationals and elements of a single quadratic extension `Q(sqrt(m))`.
//!
//! A [`QuadScalar`] carries its own extension tag. Values with a zero irrational
//! part are always stored with tag `0`, so a demoted value compares equal to the
//! plain rational it represents.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `a + b*sqrt(m)`. Invariant: `m` is squarefree and not 1; `b == 0` iff `m == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadScalar {
    a: Rat,
    b: Rat,
    m: i64,
}

impl QuadScalar {
    /// Builds `a + b*sqrt(m)`, demoting to a rational when `b == 0`.
    ///
    /// `m` must be squarefree and different from 0 and 1 whenever `b != 0`.
    pub fn new(a: Rat, b: Rat, m: i64) -> Self {
        if b.is_zero() {
            return Self::from_rat(a);
        }
        assert!(m != 0 && m != 1, "extension tag must be squarefree and != 0, 1");
        debug_assert!(is_squarefree(m), "extension tag {m} is not squarefree");
        QuadScalar { a, b, m }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadScalar {
            a,
            b: Rat::zero(),
            m: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    /// `sqrt(m)` itself.
    pub fn sqrt_of(m: i64) -> Self {
        Self::new(Rat::zero(), Rat::one(), m)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rat {
        &self.b
    }

    /// Extension tag; 0 for rationals.
    pub fn ext(&self) -> i64 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.m == 0
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -&self.b,
            m: self.m,
        }
    }

    /// `a^2 - m b^2`, the field norm down to Q.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * rat(self.m)
    }

    fn join_ext(&self, other: &Self) -> Result<i64> {
        match (self.m, other.m) {
            (0, m) | (m, 0) => Ok(m),
            (m, n) if m == n => Ok(m),
            (m, n) => Err(Error::MixedExtension(m, n)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let m = self.join_ext(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, m))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let m = self.join_ext(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, m))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let m = self.join_ext(other)?;
        if self.m == 0 {
            return Ok(Self::new(&self.a * &other.a, &self.a * &other.b, m));
        }
        if other.m == 0 {
            return Ok(Self::new(&self.a * &other.a, &self.b * &other.a, m));
        }
        let a = &self.a * &other.a + &self.b * &other.b * rat(m);
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new(a, b, m))
    }

    /// `1/(a + b sqrt m) = (a - b sqrt m) / (a^2 - m b^2)`.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.m == 0 {
            return Ok(Self::from_rat(self.a.recip()));
        }
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -&self.b / &n, self.m))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.join_ext(other)?;
        self.try_mul(&other.try_inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        Self::from_rat(Rat::one())
    }
}

impl From<Rat> for QuadScalar {
    fn from(a: Rat) -> Self {
        Self::from_rat(a)
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

// Operator impls panic on mixed extensions. Callers that can see values from
// different fields validate with `common_extension` first.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, rhs: &QuadScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QuadScalar> for QuadScalar {
    fn sub_assign(&mut self, rhs: &QuadScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QuadScalar> for QuadScalar {
    fn mul_assign(&mut self, rhs: &QuadScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -self.a,
            b: -self.b,
            m: self.m,
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -(self.clone())
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 || self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.m);
        let mag = self.b.abs();
        let term = if mag.is_one() { root } else { format!("{mag}*{root}") };
        let neg = self.b.is_negative();
        match (self.a.is_zero(), neg) {
            (true, false) => write!(f, "{term}"),
            (true, true) => write!(f, "-{term}"),
            (false, false) => write!(f, "{} + {term}", self.a),
            (false, true) => write!(f, "{} - {term}", self.a),
        }
    }
}

/// Extension tag shared by all values, or `MixedExtension`.
pub fn common_extension<'a, I>(values: I) -> Result<i64>
where
    I: IntoIterator<Item = &'a QuadScalar>,
{
    let mut m = 0;
    for v in values {
        if v.m != 0 {
            if m == 0 {
                m = v.m;
            } else if m != v.m {
                return Err(Error::MixedExtension(m, v.m));
            }
        }
    }
    Ok(m)
}

pub fn is_squarefree(m: i64) -> bool {
    if m == 0 {
        return false;
    }
    let mut n = m.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        if n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Splits a positive integer as `s^2 * t` with `t` squarefree. Returns `None`
/// when the cofactor left after trial division is too large to certify.
fn square_part(n: &BigInt) -> Option<(BigInt, BigInt)> {
    debug_assert!(n.sign() == Sign::Plus);
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while rest.is_multiple_of(&bp) {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            square *= bp.pow(e / 2);
            if e % 2 == 1 {
                free *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some((square, free));
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        return Some((square * r, free));
    }
    // No prime factor below p remains; a cofactor below p^3 is either prime or
    // a product of two distinct primes (a square was ruled out above).
    let bound = BigInt::from(p).pow(3);
    if rest < bound {
        return Some((square, free * rest));
    }
    None
}

/// Square root of a rational as `r * sqrt(m)` with `m` squarefree.
///
/// Returns the root together with its extension tag (0 when the root is
/// rational), or `None` if the squarefree part cannot be certified or does not
/// fit in an `i64`.
pub fn sqrt_in_field(q: &Rat) -> Option<(QuadScalar, i64)> {
    if q.is_zero() {
        return Some((QuadScalar::zero(), 0));
    }
    // sqrt(n/d) = sqrt(n*d)/d
    let d = q.denom().clone();
    let nd = q.numer() * &d;
    let (square, free) = square_part(&nd.abs())?;
    let m = if nd.is_negative() {
        -free.to_i64()?
    } else {
        free.to_i64()?
    };
    let coeff = Rat::new(square, d);
    if m == 1 {
        Some((QuadScalar::from_rat(coeff), 0))
    } else {
        Some((QuadScalar::new(Rat::zero(), coeff, m), m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, m: i64) -> QuadScalar {
        QuadScalar::new(rat(a), rat(b), m)
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(&q(1, 1, 2) * &q(1, -1, 2), QuadScalar::from_int(-1));
    }

    #[test]
    fn rational_inverse() {
        let third = QuadScalar::from_int(3).try_inv().unwrap();
        assert_eq!(third, QuadScalar::from_rat(rat_frac(1, 3)));
    }

    #[test]
    fn componentwise_sum() {
        assert_eq!(&q(1, 1, 5) + &q(2, -3, 5), q(3, -2, 5));
    }

    #[test]
    fn mixed_extension_is_an_error() {
        assert!(matches!(
            q(1, 1, 2).try_mul(&q(0, 1, 3)),
            Err(Error::MixedExtension(2, 3))
        ));
        // a rational operand mixes with anything
        assert_eq!(
            q(1, 1, 2).try_mul(&QuadScalar::from_int(2)).unwrap(),
            q(2, 2, 2)
        );
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            QuadScalar::zero().try_inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn demotion_compares_equal() {
        let x = &q(1, 1, 7) - &q(0, 1, 7);
        assert_eq!(x, QuadScalar::from_int(1));
        assert_eq!(x.ext(), 0);
    }

    #[test]
    fn sqrt_examples() {
        let (r, m) = sqrt_in_field(&rat_frac(9, 4)).unwrap();
        assert_eq!((r, m), (QuadScalar::from_rat(rat_frac(3, 2)), 0));
        let (r, m) = sqrt_in_field(&rat(8)).unwrap();
        assert_eq!((r, m), (q(0, 2, 2), 2));
        let (r, m) = sqrt_in_field(&rat(-1)).unwrap();
        assert_eq!((r.clone(), m), (q(0, 1, -1), -1));
        assert_eq!(&r * &r, QuadScalar::from_int(-1));
    }

    #[test]
    fn sqrt_of_fraction_squares_back() {
        for (n, d) in [(3, 7), (-5, 12), (50, 9), (-18, 1)] {
            let v = rat_frac(n, d);
            let (r, _) = sqrt_in_field(&v).unwrap();
            assert_eq!(&r * &r, QuadScalar::from_rat(v));
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(QuadScalar::from_rat(rat_frac(-3, 4)).to_string(), "-3/4");
        assert_eq!(q(1, -2, 5).to_string(), "1 - 2*sqrt(5)");
        assert_eq!(q(0, 1, 3).to_string(), "sqrt(3)");
        assert_eq!(q(0, -1, 3).to_string(), "-sqrt(3)");
    }
}
