use num_traits::{One, Zero};

use super::{HPoly, UniPoly};
use crate::matrix::determinant;
use crate::scalars::QuadScalar;

/// Binary form `sum_i c_i u^i w^(D-i)` in the two variables `vars = [u, w]`
/// that survive an elimination. Stored as the dehomogenized polynomial in
/// `t = u/w` together with the form degree `D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    pub vars: [usize; 2],
    pub degree: usize,
    pub poly: UniPoly,
}

impl BinaryForm {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Multiplicity of the root `(u : w) = (1 : 0)`.
    pub fn root_at_infinity(&self) -> usize {
        match self.poly.degree() {
            Some(d) => self.degree - d,
            None => 0,
        }
    }

    pub fn eval(&self, u: &QuadScalar, w: &QuadScalar) -> QuadScalar {
        let mut acc = QuadScalar::zero();
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            acc = &acc + &(&(c * &u.pow(i as u32)) * &w.pow((self.degree - i) as u32));
        }
        acc
    }
}

/// Coefficients of `p` as a polynomial in `var`, each evaluated at
/// `(u, w) = (t, 1)`.
fn coeffs_in(p: &HPoly, var: usize, others: [usize; 2], t: &QuadScalar) -> Vec<QuadScalar> {
    let mut out = vec![QuadScalar::zero(); p.degree_in(var) as usize + 1];
    for (e, c) in p.terms() {
        let j = e[var] as usize;
        out[j] = &out[j] + &(c * &t.pow(e[others[0]]));
    }
    out
}

fn sylvester_det(a: &[QuadScalar], b: &[QuadScalar]) -> QuadScalar {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    if n == 0 {
        return QuadScalar::one();
    }
    let mut m = vec![vec![QuadScalar::zero(); n]; n];
    for r in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + r][r + j] = c.clone();
        }
    }
    determinant(m)
}

/// Newton interpolation through `(x_i, y_i)`.
pub fn interpolate(xs: &[QuadScalar], ys: &[QuadScalar]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<QuadScalar> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = acc.mul(&UniPoly::linear_root(&xs[i])).add(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

/// Sylvester resultant of `p` and `q` with respect to `var`, as a binary form in
/// the two remaining variables (in increasing index order).
///
/// The formal degrees are the actual degrees of `p` and `q` in `var`; the form
/// degree is `n1*d2 + n2*d1 - d1*d2`. Computed by evaluating the Sylvester
/// determinant at `D + 1` points and interpolating.
pub fn resultant(p: &HPoly, q: &HPoly, var: usize) -> BinaryForm {
    let others: Vec<usize> = (0..3).filter(|&i| i != var).collect();
    let others = [others[0], others[1]];
    let (n1, n2) = (p.degree() as usize, q.degree() as usize);
    let (d1, d2) = (p.degree_in(var) as usize, q.degree_in(var) as usize);
    let degree = n1 * d2 + n2 * d1 - d1 * d2;
    let xs: Vec<QuadScalar> = (0..=degree as i64).map(QuadScalar::from_int).collect();
    let ys: Vec<QuadScalar> = xs
        .iter()
        .map(|t| sylvester_det(&coeffs_in(p, var, others, t), &coeffs_in(q, var, others, t)))
        .collect();
    BinaryForm {
        vars: others,
        degree,
        poly: interpolate(&xs, &ys),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_hpoly;

    fn p(s: &str) -> HPoly {
        parse_hpoly(s).unwrap()
    }

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&n| QuadScalar::from_int(n)).collect())
    }

    #[test]
    fn two_lines() {
        // eliminate x from x and y: the form is y (up to scalar), root (0:1)
        let r = resultant(&p("x"), &p("y"), 0);
        assert_eq!(r.vars, [1, 2]);
        assert_eq!(r.degree, 1);
        assert_eq!(r.poly.monic(), up(&[0, 1]));
    }

    #[test]
    fn tangent_line() {
        let r = resultant(&p("x"), &p("y^2 - x*z"), 0);
        assert_eq!(r.degree, 2);
        assert_eq!(r.poly.monic(), up(&[0, 0, 1]));
    }

    #[test]
    fn two_conics_pencil() {
        // (y^2 - z^2)^2 in t = y/z: t^4 - 2t^2 + 1
        let r = resultant(&p("x^2 + y^2 - 2*z^2"), &p("x^2 + 2*y^2 - 3*z^2"), 0);
        assert_eq!(r.degree, 4);
        assert_eq!(r.poly.monic(), up(&[1, 0, -2, 0, 1]));
    }

    #[test]
    fn shared_component_vanishes() {
        let r = resultant(&p("x*y"), &p("x*z + y*z"), 0);
        assert!(!r.is_zero());
        let r = resultant(&p("(x + y)*z"), &p("(x + y)*(x - z)"), 0);
        assert!(r.is_zero());
    }
}
