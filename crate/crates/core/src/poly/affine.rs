use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalars::{common_extension, QuadScalar};
use crate::error::Result;

/// Polynomial in two chart variables `(u, v)`; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AffinePoly {
    terms: BTreeMap<[u32; 2], QuadScalar>,
}

impl AffinePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ([u32; 2], QuadScalar)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: [u32; 2], c: QuadScalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(QuadScalar::zero);
        *v = &*v + &c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 2], &QuadScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32; 2]) -> QuadScalar {
        self.terms.get(e).cloned().unwrap_or_else(QuadScalar::zero)
    }

    pub fn extension(&self) -> Result<i64> {
        common_extension(self.terms.values())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e[0] + e[1]).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1]).min()
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                out.add_term(e2, c * &QuadScalar::from_int(e[i] as i64));
            }
        }
        out
    }

    pub fn eval(&self, p: &[QuadScalar; 2]) -> QuadScalar {
        let mut acc = QuadScalar::zero();
        for (e, c) in &self.terms {
            acc = &acc + &(c * &(&p[0].pow(e[0]) * &p[1].pow(e[1])));
        }
        acc
    }

    /// `g(u + s[0], v + s[1])`: moves the point `s` to the origin.
    pub fn translate(&self, s: &[QuadScalar; 2]) -> Self {
        let deg = self.total_degree() as usize;
        // binomial expansions of (u + s)^k as coefficient vectors
        let expand = |shift: &QuadScalar| -> Vec<Vec<QuadScalar>> {
            let mut rows: Vec<Vec<QuadScalar>> = vec![vec![QuadScalar::one()]];
            for k in 1..=deg {
                let prev = &rows[k - 1];
                let mut next = vec![QuadScalar::zero(); k + 1];
                for (j, c) in prev.iter().enumerate() {
                    next[j + 1] = &next[j + 1] + c;
                    next[j] = &next[j] + &(c * shift);
                }
                rows.push(next);
            }
            rows
        };
        let eu = expand(&s[0]);
        let ev = expand(&s[1]);
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let (pu, pv) = (&eu[e[0] as usize], &ev[e[1] as usize]);
            for (i, a) in pu.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ca = c * a;
                for (j, b) in pv.iter().enumerate() {
                    if !b.is_zero() {
                        out.add_term([i as u32, j as u32], &ca * b);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QuadScalar {
        QuadScalar::from_int(n)
    }

    #[test]
    fn translate_moves_root_to_origin() {
        // (u - 2)^2 + (v + 1)
        let g = AffinePoly::from_terms([
            ([2, 0], q(1)),
            ([1, 0], q(-4)),
            ([0, 0], q(5)),
            ([0, 1], q(1)),
        ]);
        let t = g.translate(&[q(2), q(-1)]);
        assert_eq!(t, AffinePoly::from_terms([([2, 0], q(1)), ([0, 1], q(1))]));
        assert_eq!(t.order(), Some(1));
    }
}
