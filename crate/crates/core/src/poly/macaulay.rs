//! Macaulay matrices of homogeneous ideals: graded pieces of ideals,
//! Jacobian syzygies and the Hilbert function of the Milnor algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{graded_dim, monomial_index, monomials, HPoly};
use crate::error::{Error, Result};
use crate::matrix::{exact_rank, integer_rank, ExactMatrix, SparseRow};
use crate::scalars::{common_extension, QuadScalar};

/// Rows are the products `m * g` for generators `g` of degree at most `k` and
/// monomials `m` of complementary degree; columns are degree-`k` monomials in
/// graded-lex order.
pub fn macaulay_matrix(gens: &[HPoly], k: i64) -> ExactMatrix {
    let cols = graded_dim(k);
    let mut rows = Vec::new();
    for g in gens {
        if g.is_zero() || k < g.degree() as i64 {
            continue;
        }
        for m in monomials(k as u32 - g.degree()) {
            let row: SparseRow<QuadScalar> = g
                .terms()
                .map(|(e, c)| (monomial_index(&[e[0] + m[0], e[1] + m[1], e[2] + m[2]]), c.clone()))
                .collect();
            rows.push(row);
        }
    }
    ExactMatrix::from_sparse_rows(cols, rows)
}

/// Dimension of the degree-`k` piece of the ideal generated by `gens`.
pub fn ideal_piece_rank(gens: &[HPoly], k: i64) -> Result<usize> {
    if k < 0 {
        return Ok(0);
    }
    let ext = common_extension(gens.iter().flat_map(|g| g.terms().map(|(_, c)| c)))?;
    if ext != 0 {
        return exact_rank(&macaulay_matrix(gens, k));
    }
    // Monomial shifts keep coefficients, so each generator is cleared once.
    let mut rows = Vec::new();
    for g in gens {
        if g.is_zero() || k < g.degree() as i64 {
            continue;
        }
        let lcm = g
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.rational_part().denom()));
        let mut content = BigInt::from(0);
        let ints: Vec<([u32; 3], BigInt)> = g
            .terms()
            .map(|(e, c)| {
                let q = c.rational_part();
                let v = q.numer() * (&lcm / q.denom());
                content = content.gcd(&v);
                (*e, v)
            })
            .collect();
        for m in monomials(k as u32 - g.degree()) {
            let mut row: SparseRow<BigInt> = ints
                .iter()
                .map(|(e, v)| {
                    (
                        monomial_index(&[e[0] + m[0], e[1] + m[1], e[2] + m[2]]),
                        v / &content,
                    )
                })
                .collect();
            row.sort_by_key(|(c, _)| *c);
            if row[0].1 < BigInt::from(0) {
                for (_, v) in row.iter_mut() {
                    *v = -&*v;
                }
            }
            rows.push(row);
        }
    }
    Ok(integer_rank(rows, graded_dim(k)))
}

/// Dimension of the kernel of `(a, b, c) -> a f_x + b f_y + c f_z` on
/// triples of degree-`r` forms. Restricted to `0 <= r <= deg f - 2`, below
/// the degree where Koszul relations appear.
pub fn syzygy_kernel_dim(f: &HPoly, r: i64) -> Result<usize> {
    let max = f.degree() as i64 - 2;
    if r < 0 || r > max {
        return Err(Error::RangeError { r, max });
    }
    let partials = f.partials();
    let image = ideal_piece_rank(&partials, r + f.degree() as i64 - 1)?;
    Ok(3 * graded_dim(r) - image)
}

/// `dim (S / J_f)_k` for the Jacobian ideal `J_f = (f_x, f_y, f_z)`.
pub fn hilbert_jacobian(f: &HPoly, k: i64) -> Result<usize> {
    let partials = f.partials();
    Ok(graded_dim(k) - ideal_piece_rank(&partials, k)?)
}
