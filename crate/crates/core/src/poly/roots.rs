//! Exact roots of rational binary forms whose irreducible factors have degree
//! at most two.
//!
//! Rational roots are found by isolating the integer roots of a monic integer
//! transform with Sturm sequences; a quartic left without rational roots is
//! split into rational quadratics through its resolvent cubic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BinaryForm, UniPoly};
use crate::error::{Error, Result};
use crate::scalars::{sqrt_in_field, QuadScalar, Rat};

fn rat_coeffs(p: &UniPoly) -> Result<Vec<Rat>> {
    p.coeffs()
        .iter()
        .map(|c| {
            c.as_rat()
                .cloned()
                .ok_or_else(|| Error::UnrepresentablePoint("irrational resultant".into()))
        })
        .collect()
}

fn from_rats(c: &[Rat]) -> UniPoly {
    UniPoly::new(c.iter().cloned().map(QuadScalar::from_rat).collect())
}

fn eval_rat(c: &[Rat], t: &Rat) -> Rat {
    c.iter().rev().fold(Rat::zero(), |acc, a| acc * t + a)
}

/// Primitive integer coefficients of a rational polynomial.
fn integer_coeffs(c: &[Rat]) -> Vec<BigInt> {
    let lcm = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = c.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.into_iter().map(|v| v / &g).collect()
}

fn sign_changes(seq: &[Vec<Rat>], t: &Rat) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = eval_rat(p, t);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_sequence(p: &[Rat]) -> Vec<Vec<Rat>> {
    let p0 = from_rats(p);
    let mut seq = vec![p0.clone(), p0.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].degree().unwrap_or(0) == 0 {
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&QuadScalar::from_int(-1)));
    }
    seq.iter().map(|q| rat_coeffs(q).expect("rational")).collect()
}

/// Integer roots of a squarefree monic integer polynomial.
fn integer_roots(b: &[BigInt]) -> Vec<BigInt> {
    let c: Vec<Rat> = b.iter().cloned().map(Rat::from_integer).collect();
    let seq = sturm_sequence(&c);
    let bound = b.iter().map(|v| v.abs()).max().unwrap_or_default() + BigInt::one();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut roots = Vec::new();
    // (lo, hi) are half-integers, which are never roots of a monic integer polynomial
    let mut stack = vec![(Rat::from_integer(-&bound) - &half, Rat::from_integer(bound) + &half)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&seq, &lo) as i64 - sign_changes(&seq, &hi) as i64;
        if count <= 0 {
            continue;
        }
        let width = (&hi - &lo).to_integer();
        if width.is_one() {
            let n = (&lo + &half).to_integer();
            if eval_rat(&c, &Rat::from_integer(n.clone())).is_zero() {
                roots.push(n);
            }
            continue;
        }
        let mid = Rat::from_integer((&lo + &half).to_integer() + (&width / BigInt::from(2))) - &half;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort();
    roots
}

/// Rational roots of a squarefree rational polynomial.
fn rational_roots(c: &[Rat]) -> Vec<Rat> {
    let a = integer_coeffs(c);
    let n = a.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = a[n].clone();
    // b(s) = lead^(n-1) a(s / lead) is monic with integer coefficients
    let mut b = Vec::with_capacity(n + 1);
    for (i, ai) in a.iter().enumerate() {
        if i == n {
            b.push(BigInt::one());
        } else {
            b.push(ai * lead.pow((n - 1 - i) as u32));
        }
    }
    integer_roots(&b)
        .into_iter()
        .map(|s| Rat::new(s, lead.clone()))
        .collect()
}

/// Splits a monic rational quartic without rational roots into two rational
/// quadratics, if possible.
fn split_quartic(c: &[Rat]) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let four = Rat::from_integer(BigInt::from(4));
    // y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)
    let resolvent = vec![
        -(a * a * d - &four * b * d + cc * cc),
        a * cc - &four * d,
        -b.clone(),
        Rat::one(),
    ];
    let res_poly = from_rats(&resolvent);
    let sqfree = res_poly.div_rem(&res_poly.gcd(&res_poly.derivative())).0;
    for y0 in rational_roots(&rat_coeffs(&sqfree).ok()?) {
        let qs = quadratic_rational_roots(&Rat::one(), &-y0.clone(), d);
        let pr = quadratic_rational_roots(&Rat::one(), &-a.clone(), &(b - &y0));
        let (Some((q, s)), Some((p, r))) = (qs, pr) else {
            continue;
        };
        for (q, s) in [(q.clone(), s.clone()), (s, q)] {
            let f1 = vec![q, p.clone(), Rat::one()];
            let f2 = vec![s, r.clone(), Rat::one()];
            if from_rats(&f1).mul(&from_rats(&f2)) == from_rats(c) {
                return Some((f1, f2));
            }
        }
    }
    None
}

/// Both roots of `a t^2 + b t + c` when they are rational.
fn quadratic_rational_roots(a: &Rat, b: &Rat, c: &Rat) -> Option<(Rat, Rat)> {
    let disc = b * b - Rat::from_integer(BigInt::from(4)) * a * c;
    let (root, m) = sqrt_in_field(&disc)?;
    if m != 0 {
        return None;
    }
    let r = root.rational_part();
    let two_a = a * Rat::from_integer(BigInt::from(2));
    Some(((-b + r) / &two_a, (-b - r) / &two_a))
}

/// Roots of a squarefree quadratic, possibly in a quadratic extension.
fn quadratic_roots(c: &[Rat]) -> Result<Vec<QuadScalar>> {
    let (cc, b, a) = (&c[0], &c[1], &c[2]);
    let disc = b * b - Rat::from_integer(BigInt::from(4)) * a * cc;
    let (root, _) = sqrt_in_field(&disc)
        .ok_or_else(|| Error::UnrepresentablePoint(format!("cannot certify sqrt({disc})")))?;
    let two_a = QuadScalar::from_rat(a * Rat::from_integer(BigInt::from(2)));
    let mb = QuadScalar::from_rat(-b.clone());
    Ok(vec![
        &(&mb + &root) / &two_a,
        &(&mb - &root) / &two_a,
    ])
}

/// Distinct roots of a squarefree rational polynomial.
pub fn univariate_roots(p: &UniPoly) -> Result<Vec<QuadScalar>> {
    let c = rat_coeffs(&p.monic())?;
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = from_rats(&c);
    for r in rational_roots(&c) {
        rest = rest.div_rem(&UniPoly::linear_root(&QuadScalar::from_rat(r.clone()))).0;
        out.push(QuadScalar::from_rat(r));
    }
    let rest_c = rat_coeffs(&rest.monic())?;
    match rest_c.len() - 1 {
        0 => {}
        2 => out.extend(quadratic_roots(&rest_c)?),
        4 => {
            let (f1, f2) = split_quartic(&rest_c).ok_or_else(|| {
                Error::UnrepresentablePoint("irreducible quartic factor".into())
            })?;
            out.extend(quadratic_roots(&f1)?);
            out.extend(quadratic_roots(&f2)?);
        }
        n => {
            return Err(Error::UnrepresentablePoint(format!(
                "factor of degree {n} without rational roots"
            )))
        }
    }
    Ok(out)
}

/// Distinct roots `(u, w)` of a nonzero rational binary form with their
/// multiplicities, normalized with `w = 1`, or `(1, 0)` for the root at
/// infinity.
pub fn binary_form_roots(f: &BinaryForm) -> Result<Vec<([QuadScalar; 2], usize)>> {
    form_roots(f.degree, &f.poly)
}

/// Roots of the degree-`degree` form whose dehomogenization in `t = u/w` is
/// `poly`.
pub fn form_roots(degree: usize, poly: &UniPoly) -> Result<Vec<([QuadScalar; 2], usize)>> {
    let mut out = Vec::new();
    let at_infinity = degree - poly.degree().unwrap_or(degree);
    if at_infinity > 0 {
        out.push(([QuadScalar::one(), QuadScalar::zero()], at_infinity));
    }
    for (factor, mult) in poly.squarefree_decomposition() {
        for r in univariate_roots(&factor)? {
            out.push(([r, QuadScalar::one()], mult));
        }
    }
    Ok(out)
}
