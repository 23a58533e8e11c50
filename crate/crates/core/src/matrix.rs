//! Exact rank by fraction-free sparse elimination.
//!
//! Rational matrices are cleared to primitive integer rows and eliminated over
//! `Z` with content removal after every row combination. Matrices with entries
//! in a quadratic extension are eliminated over the field directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::scalars::{common_extension, QuadScalar};

/// Sparse row: `(column, value)` sorted by column, no zeros.
pub type SparseRow<T> = Vec<(usize, T)>;

#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow<QuadScalar>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: Vec<Vec<QuadScalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let data = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect::<Vec<_>>();
        ExactMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Builds from sparse rows; each row is sorted and zero entries dropped.
    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseRow<QuadScalar>>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|(_, v)| !v.is_zero());
                r.sort_by_key(|(c, _)| *c);
                assert!(r.iter().all(|(c, _)| *c < cols), "column out of range");
                r
            })
            .collect::<Vec<_>>();
        ExactMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> QuadScalar {
        self.data[r]
            .iter()
            .find(|(j, _)| *j == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(QuadScalar::zero)
    }

    pub fn sparse_rows(&self) -> &[SparseRow<QuadScalar>] {
        &self.data
    }

    pub fn extension(&self) -> Result<i64> {
        common_extension(self.data.iter().flatten().map(|(_, v)| v))
    }
}

/// Rank over the fraction field of the entries.
pub fn exact_rank(m: &ExactMatrix) -> Result<usize> {
    if m.extension()? == 0 {
        let rows = m.data.iter().map(integer_row).collect();
        Ok(integer_rank(rows, m.cols))
    } else {
        Ok(field_rank(m.data.clone(), m.cols))
    }
}

/// Primitive integer multiple of a rational row.
fn integer_row(r: &SparseRow<QuadScalar>) -> SparseRow<BigInt> {
    let lcm = r.iter().fold(BigInt::one(), |acc, (_, v)| {
        acc.lcm(v.rational_part().denom())
    });
    let mut out: SparseRow<BigInt> = r
        .iter()
        .map(|(c, v)| {
            let q = v.rational_part();
            (*c, q.numer() * (&lcm / q.denom()))
        })
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(r: &mut SparseRow<BigInt>) {
    let mut g = BigInt::zero();
    for (_, v) in r.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in r.iter_mut() {
            *v /= &g;
        }
    }
    if r.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in r.iter_mut() {
            *v = -&*v;
        }
    }
}

/// `alpha * r - beta * p`, both sorted sparse rows.
fn combine<T, F>(r: &SparseRow<T>, p: &SparseRow<T>, f: F) -> SparseRow<T>
where
    T: Clone + Zero,
    F: Fn(Option<&T>, Option<&T>) -> T,
{
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (col, v) = match (r.get(i), p.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                i += 1;
                j += 1;
                (*ci, f(Some(vi), Some(vj)))
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                i += 1;
                (*ci, f(Some(vi), None))
            }
            (Some((ci, vi)), None) => {
                i += 1;
                (*ci, f(Some(vi), None))
            }
            (_, Some((cj, vj))) => {
                j += 1;
                (*cj, f(None, Some(vj)))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Bucket elimination: rows are grouped by leading column; each bucket elects
/// a pivot and the remaining rows are reduced below it.
fn bucket_eliminate<T, P, R>(rows: Vec<SparseRow<T>>, cols: usize, pivot_cost: P, reduce: R) -> usize
where
    P: Fn(&SparseRow<T>) -> (u64, usize),
    R: Fn(&SparseRow<T>, &SparseRow<T>) -> SparseRow<T>,
{
    let mut buckets: Vec<Vec<SparseRow<T>>> = (0..cols).map(|_| Vec::new()).collect();
    for r in rows {
        if let Some((c, _)) = r.first() {
            buckets[*c].push(r);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        rank += 1;
        let best = (0..bucket.len())
            .min_by_key(|&i| pivot_cost(&bucket[i]))
            .expect("nonempty");
        let pivot = bucket.swap_remove(best);
        for r in bucket {
            let reduced = reduce(&r, &pivot);
            if let Some((c2, _)) = reduced.first() {
                debug_assert!(*c2 > c);
                buckets[*c2].push(reduced);
            }
        }
    }
    rank
}

pub(crate) fn integer_rank(rows: Vec<SparseRow<BigInt>>, cols: usize) -> usize {
    bucket_eliminate(
        rows,
        cols,
        |r| (r[0].1.bits(), r.len()),
        |r, p| {
            let (a, b) = (&p[0].1, &r[0].1);
            let g = a.gcd(b);
            let (alpha, beta) = (a / &g, b / &g);
            let mut out = combine(r, p, |x, y| match (x, y) {
                (Some(x), Some(y)) => &alpha * x - &beta * y,
                (Some(x), None) => &alpha * x,
                (None, Some(y)) => -(&beta * y),
                (None, None) => BigInt::zero(),
            });
            make_primitive(&mut out);
            out
        },
    )
}

fn field_rank(rows: Vec<SparseRow<QuadScalar>>, cols: usize) -> usize {
    let normalize = |r: SparseRow<QuadScalar>| -> SparseRow<QuadScalar> {
        match r.first() {
            Some((_, lead)) => {
                let inv = lead.try_inv().expect("nonzero lead");
                r.into_iter().map(|(c, v)| (c, &v * &inv)).collect()
            }
            None => r,
        }
    };
    let rows: Vec<_> = rows.into_iter().map(normalize).collect();
    bucket_eliminate(
        rows,
        cols,
        |r| (0, r.len()),
        |r, p| {
            let beta = r[0].1.clone();
            let out = combine(r, p, |x, y| match (x, y) {
                (Some(x), Some(y)) => x - &(&beta * y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => -(&beta * y),
                (None, None) => QuadScalar::zero(),
            });
            normalize(out)
        },
    )
}

/// Determinant of a small dense square matrix over a single field.
#[allow(clippy::needless_range_loop)]
pub fn determinant(mut m: Vec<Vec<QuadScalar>>) -> QuadScalar {
    let n = m.len();
    let mut det = QuadScalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return QuadScalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let inv = m[c][c].try_inv().expect("nonzero pivot");
        det = &det * &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] * &inv;
            for j in c..n {
                let t = &factor * &m[c][j];
                m[r][j] = &m[r][j] - &t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&n| QuadScalar::from_int(n)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), 3);
        assert_eq!(exact_rank(&dense(&[&[0, 0], &[0, 0]])).unwrap(), 0);
        assert_eq!(exact_rank(&dense(&[&[1, 2], &[2, 4]])).unwrap(), 1);
    }

    #[test]
    fn quadratic_entries() {
        let s2 = QuadScalar::sqrt_of(2);
        let one = QuadScalar::one();
        // rows (1, sqrt2) and (sqrt2, 2) are proportional
        let m = ExactMatrix::from_dense(vec![
            vec![one.clone(), s2.clone()],
            vec![s2.clone(), QuadScalar::from_int(2)],
        ]);
        assert_eq!(exact_rank(&m).unwrap(), 1);
        let m = ExactMatrix::from_dense(vec![vec![s2.clone()], vec![QuadScalar::sqrt_of(3)]]);
        assert!(matches!(exact_rank(&m), Err(crate::error::Error::MixedExtension(..))));
    }

    #[test]
    fn rational_rows_are_cleared() {
        let half = QuadScalar::from_rat(crate::scalars::rat_frac(1, 2));
        let m = ExactMatrix::from_dense(vec![
            vec![half.clone(), QuadScalar::from_int(1)],
            vec![QuadScalar::from_int(1), QuadScalar::from_int(2)],
        ]);
        assert_eq!(exact_rank(&m).unwrap(), 1);
    }

    #[test]
    fn det_small() {
        let m = vec![
            vec![QuadScalar::from_int(2), QuadScalar::from_int(1)],
            vec![QuadScalar::from_int(1), QuadScalar::from_int(3)],
        ];
        assert_eq!(determinant(m), QuadScalar::from_int(5));
    }
}
