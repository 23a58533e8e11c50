//! Global invariants: total Tjurina number, minimal degree of a Jacobian
//! relation, Chern classes of the logarithmic bundle, and freeness.

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::Curve;
use crate::error::{Error, Result};
use crate::local::all_singularities;
use crate::poly::{hilbert_jacobian, syzygy_kernel_dim, HPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TjurinaMethod {
    /// Stable value of the Hilbert function of the Milnor algebra.
    Global,
    /// Sum of local Tjurina numbers.
    Local,
    /// Both, required to agree.
    Both,
}

/// Number of consecutive equal Hilbert values required.
const PLATEAU: usize = 3;

/// Stable value of `dim (S/J_f)_k`, with the first degree of the plateau.
///
/// The scan starts at `3d - 6` and stops at the first run of three equal
/// values; it gives up past degree `4d`.
pub fn global_tjurina(f: &HPoly) -> Result<(usize, i64)> {
    let d = f.degree() as i64;
    let start = (3 * d - 6).max(0);
    let cap = 4 * d;
    let mut values: Vec<(i64, usize)> = (start..start + PLATEAU as i64)
        .into_par_iter()
        .map(|k| Ok((k, hilbert_jacobian(f, k)?)))
        .collect::<Result<_>>()?;
    loop {
        let n = values.len();
        let tail = &values[n - PLATEAU..];
        if tail.iter().all(|(_, h)| *h == tail[0].1) {
            return Ok((tail[0].1, tail[0].0));
        }
        let next = values[n - 1].0 + 1;
        if next > cap {
            return Err(Error::StabilizationFailure(cap as usize));
        }
        values.push((next, hilbert_jacobian(f, next)?));
    }
}

pub fn local_tjurina(curve: &Curve) -> Result<usize> {
    Ok(all_singularities(curve)?.iter().map(|s| s.tau).sum())
}

/// Total Tjurina number of the curve.
pub fn total_tjurina(curve: &Curve, method: TjurinaMethod) -> Result<usize> {
    match method {
        TjurinaMethod::Global => Ok(global_tjurina(curve.poly())?.0),
        TjurinaMethod::Local => local_tjurina(curve),
        TjurinaMethod::Both => {
            let g = global_tjurina(curve.poly())?.0;
            let l = local_tjurina(curve)?;
            if g != l {
                return Err(Error::IdentityViolated(format!(
                    "global Tjurina number {g} differs from the local sum {l}"
                )));
            }
            Ok(g)
        }
    }
}

/// Minimal degree of a Jacobian relation `a f_x + b f_y + c f_z = 0`, or
/// `d - 1` when there is none below the Koszul relations.
pub fn mdr(f: &HPoly) -> Result<usize> {
    let d = f.degree() as i64;
    for r in 0..=d - 2 {
        if syzygy_kernel_dim(f, r)? > 0 {
            return Ok(r as usize);
        }
    }
    Ok((d - 1).max(0) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub c1: i64,
    pub c2: i64,
    /// Positive integers `a <= b` with `a + b = -c1` and `a b = c2`.
    pub split: Option<(i64, i64)>,
}

pub fn chern_from(degree: u32, tau: usize) -> ChernData {
    let d = degree as i64;
    let c1 = 1 - d;
    let c2 = (d - 1) * (d - 1) - tau as i64;
    let split = (1..=(d - 1) / 2)
        .find(|a| a * (d - 1 - a) == c2)
        .map(|a| (a, d - 1 - a));
    ChernData { c1, c2, split }
}

pub fn chern(curve: &Curve) -> Result<ChernData> {
    Ok(chern_from(curve.degree(), total_tjurina(curve, TjurinaMethod::Global)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub degree: u32,
    pub tau: usize,
    pub mdr: usize,
    pub is_free: bool,
    pub exponents: Option<(usize, usize)>,
    /// Set for degrees at most 2, where the exponents are not both positive.
    pub below_scope: bool,
}

pub fn freeness_from(degree: u32, tau: usize, mdr: usize) -> FreenessReport {
    let d = degree as usize;
    let dm1 = d.saturating_sub(1);
    let is_free = 2 * mdr <= dm1 && tau + mdr * (dm1 - mdr) == dm1 * dm1;
    FreenessReport {
        degree,
        tau,
        mdr,
        is_free,
        exponents: is_free.then_some((mdr, dm1 - mdr)),
        below_scope: d <= 2,
    }
}

pub fn freeness(curve: &Curve) -> Result<FreenessReport> {
    let tau = total_tjurina(curve, TjurinaMethod::Global)?;
    Ok(freeness_from(curve.degree(), tau, mdr(curve.poly())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Component;
    use crate::poly::parse_hpoly;
    use crate::scalars::rat;

    fn line(id: &str, c: [i64; 3]) -> Component {
        Component::line(id, c.map(rat)).unwrap()
    }

    fn triangle() -> Curve {
        Curve::new(vec![line("x", [1, 0, 0]), line("y", [0, 1, 0]), line("z", [0, 0, 1])]).unwrap()
    }

    #[test]
    fn triangle_invariants() {
        let t = triangle();
        assert_eq!(total_tjurina(&t, TjurinaMethod::Both).unwrap(), 3);
        assert_eq!(mdr(t.poly()).unwrap(), 1);
        let f = freeness(&t).unwrap();
        assert!(f.is_free);
        assert_eq!(f.exponents, Some((1, 1)));
    }

    #[test]
    fn chern_examples() {
        assert_eq!(chern_from(9, 48), ChernData { c1: -8, c2: 16, split: Some((4, 4)) });
        assert_eq!(chern_from(7, 27), ChernData { c1: -6, c2: 9, split: Some((3, 3)) });
        assert_eq!(chern_from(2, 0), ChernData { c1: -1, c2: 1, split: None });
    }

    #[test]
    fn smooth_conic_is_flagged() {
        let c = Curve::new(vec![Component::conic("C", [1, 0, 0, 1, 0, -1].map(rat)).unwrap()]).unwrap();
        let f = freeness(&c).unwrap();
        assert_eq!(f.tau, 0);
        assert_eq!(f.mdr, 1);
        assert!(f.below_scope);
        assert!(!f.is_free);
    }

    #[test]
    fn generic_line_arrangement_is_not_free() {
        // four lines in general position: tau = 6, mdr = 2 = d - 1 - 1
        let f = parse_hpoly("x*y*z*(x + y + z)").unwrap();
        assert_eq!(global_tjurina(&f).unwrap().0, 6);
        assert_eq!(mdr(&f).unwrap(), 2);
        assert!(!freeness_from(4, 6, 2).is_free);
    }
}
