//! Local invariants of plane curve singularities: Milnor and Tjurina numbers,
//! branch counts, delta invariants and epsilon defects.
//!
//! Local algebras are computed by truncation: the dimension of
//! `k[u,v] / (I + m^N)` is nondecreasing in `N`, and once two consecutive
//! orders agree we have `m^N ⊂ I + m^(N+1)`, hence `m^N ⊂ I` by Nakayama.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Curve, ProjPoint};
use crate::error::{Error, Result};
use crate::matrix::{exact_rank, ExactMatrix, SparseRow};
use crate::poly::{AffinePoly, HPoly};
use crate::scalars::QuadScalar;

const FIRST_ORDER: usize = 3;

fn trunc_index(e: &[u32; 2]) -> usize {
    let deg = (e[0] + e[1]) as usize;
    deg * (deg + 1) / 2 + e[1] as usize
}

/// `dim k[u,v]_{<n} / span{ trunc_n(m * g) }`.
fn truncated_dim(gens: &[AffinePoly], n: usize) -> Result<usize> {
    let cols = n * (n + 1) / 2;
    let mut rows: Vec<SparseRow<QuadScalar>> = Vec::new();
    for g in gens {
        let Some(order) = g.order() else { continue };
        let order = order as usize;
        if order >= n {
            continue;
        }
        for deg in 0..n - order {
            for j in 0..=deg as u32 {
                let m = [deg as u32 - j, j];
                let row: SparseRow<QuadScalar> = g
                    .terms()
                    .filter(|(e, _)| (e[0] + e[1]) as usize + deg < n)
                    .map(|(e, c)| (trunc_index(&[e[0] + m[0], e[1] + m[1]]), c.clone()))
                    .collect();
                rows.push(row);
            }
        }
    }
    Ok(cols - exact_rank(&ExactMatrix::from_sparse_rows(cols, rows))?)
}

/// Colength of the ideal generated by `gens` in the local ring at the origin.
///
/// `bound` is an a priori bound on the answer; the truncation order is capped
/// at `2 * bound + 4`.
pub fn local_algebra_dim(gens: &[AffinePoly], bound: usize) -> Result<usize> {
    if gens
        .iter()
        .any(|g| !g.is_zero() && g.order() == Some(0))
    {
        return Ok(0);
    }
    let cap = 2 * bound + 4;
    let mut prev = truncated_dim(gens, FIRST_ORDER)?;
    for n in FIRST_ORDER + 1..=cap {
        let cur = truncated_dim(gens, n)?;
        if cur == prev {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NotFiniteColength(cap))
}

/// Default chart for a point: its last nonzero coordinate.
pub fn default_chart(p: &ProjPoint) -> usize {
    (0..3)
        .rev()
        .find(|&i| !p.coords()[i].is_zero())
        .expect("projective point has a nonzero coordinate")
}

/// `f` in the affine chart `x_chart = 1`, translated so that `p` sits at the
/// origin.
pub fn local_poly(f: &HPoly, p: &ProjPoint, chart: usize) -> AffinePoly {
    let c = p.coords();
    let inv = c[chart].try_inv().expect("chart coordinate must be nonzero");
    let keep: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let shift = [&c[keep[0]] * &inv, &c[keep[1]] * &inv];
    f.dehomogenize(chart).translate(&shift)
}

fn milnor_bound(f: &HPoly) -> usize {
    let d = f.degree().max(1) as usize;
    (d - 1) * (d - 1) + 1
}

pub fn milnor_in_chart(f: &HPoly, p: &ProjPoint, chart: usize) -> Result<usize> {
    let g = local_poly(f, p, chart);
    local_algebra_dim(&[g.partial(0), g.partial(1)], milnor_bound(f))
}

pub fn tjurina_in_chart(f: &HPoly, p: &ProjPoint, chart: usize) -> Result<usize> {
    let g = local_poly(f, p, chart);
    local_algebra_dim(&[g.partial(0), g.partial(1), g], milnor_bound(f))
}

/// Milnor number of the curve `f = 0` at `p`.
pub fn milnor(f: &HPoly, p: &ProjPoint) -> Result<usize> {
    milnor_in_chart(f, p, default_chart(p))
}

/// Tjurina number of the curve `f = 0` at `p`.
pub fn tjurina(f: &HPoly, p: &ProjPoint) -> Result<usize> {
    tjurina_in_chart(f, p, default_chart(p))
}

/// Local intersection multiplicity of `f = 0` and `g = 0` at `p`.
pub fn intersection_multiplicity(f: &HPoly, g: &HPoly, p: &ProjPoint) -> Result<usize> {
    let chart = default_chart(p);
    let bound = (f.degree() * g.degree()) as usize;
    local_algebra_dim(&[local_poly(f, p, chart), local_poly(g, p, chart)], bound)
}

/// `(mu + branches - 1) / 2`.
pub fn delta(mu: usize, branches: usize) -> Result<usize> {
    let s = mu + branches;
    if s == 0 || !(s - 1).is_multiple_of(2) {
        return Err(Error::ParityError { mu, branches });
    }
    Ok((s - 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityData {
    pub point: ProjPoint,
    pub components: Vec<String>,
    pub mu: usize,
    pub tau: usize,
    pub branches: usize,
    pub delta: usize,
    pub epsilon: usize,
}

/// Number of branches of the curve at `p`: one per smooth component through
/// it, or the supplied count for generic components.
pub fn branches(curve: &Curve, p: &ProjPoint) -> Result<usize> {
    let mut total = 0;
    for c in curve.components() {
        if c.poly().eval(p.coords()).is_zero() {
            total += c.branches_at(p)?;
        }
    }
    Ok(total)
}

/// Full local data at one point of the curve.
pub fn singularity_data(curve: &Curve, p: &ProjPoint, components: Vec<String>) -> Result<SingularityData> {
    let f = curve.poly();
    let mu = milnor(f, p)?;
    let tau = tjurina(f, p)?;
    let r = branches(curve, p)?;
    let delta = delta(mu, r)?;
    if tau > mu {
        return Err(Error::IdentityViolated(format!("tau {tau} exceeds mu {mu} at {p}")));
    }
    Ok(SingularityData {
        point: p.clone(),
        components,
        mu,
        tau,
        branches: r,
        delta,
        epsilon: mu - tau,
    })
}

/// Local data at every singular point, in point order.
pub fn all_singularities(curve: &Curve) -> Result<Vec<SingularityData>> {
    let points = curve.singular_points()?;
    points
        .par_iter()
        .map(|sp| singularity_data(curve, &sp.point, sp.components.clone()))
        .collect()
}

/// Per-point `eps_p(big) - eps_p(small)` over the points where the component
/// sets differ, i.e. the points of the extra components on `small`.
///
/// `small` must consist of components of `big`.
pub fn epsilon_pair_points(big: &Curve, small: &Curve) -> Result<BTreeMap<ProjPoint, i64>> {
    let extra: Vec<_> = big
        .components()
        .iter()
        .filter(|c| small.component(c.id()).is_none())
        .collect();
    let mut points = std::collections::BTreeSet::new();
    for e in &extra {
        for p in small.meet(e)? {
            points.insert(p);
        }
    }
    let points: Vec<ProjPoint> = points.into_iter().collect();
    let values: Vec<(ProjPoint, i64)> = points
        .par_iter()
        .map(|p| -> Result<(ProjPoint, i64)> {
            let eb = milnor(big.poly(), p)? as i64 - tjurina(big.poly(), p)? as i64;
            let es = milnor(small.poly(), p)? as i64 - tjurina(small.poly(), p)? as i64;
            Ok((p.clone(), eb - es))
        })
        .collect::<Result<_>>()?;
    Ok(values.into_iter().collect())
}

/// `eps(big, small)`: the sum of [`epsilon_pair_points`].
pub fn epsilon_pair(big: &Curve, small: &Curve) -> Result<i64> {
    Ok(epsilon_pair_points(big, small)?.values().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_hpoly;
    use crate::scalars::rat;

    fn aff(terms: &[([u32; 2], i64)]) -> AffinePoly {
        AffinePoly::from_terms(terms.iter().map(|(e, c)| (*e, QuadScalar::from_int(*c))))
    }

    fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
        ProjPoint::rational([rat(a), rat(b), rat(c)]).unwrap()
    }

    #[test]
    fn algebra_examples() {
        let u = aff(&[([1, 0], 1)]);
        let v = aff(&[([0, 1], 1)]);
        assert_eq!(local_algebra_dim(&[u.clone(), v.clone()], 1).unwrap(), 1);
        assert_eq!(local_algebra_dim(&[v, u], 1).unwrap(), 1);
        // partials of v^2 - u^4
        let g = [aff(&[([3, 0], -4)]), aff(&[([0, 1], 2)])];
        assert_eq!(local_algebra_dim(&g, 9).unwrap(), 3);
    }

    #[test]
    fn non_isolated_is_detected() {
        // the ideal (u^2) has infinite colength
        let g = [aff(&[([2, 0], 1)])];
        assert!(matches!(
            local_algebra_dim(&g, 2),
            Err(Error::NotFiniteColength(_))
        ));
    }

    #[test]
    fn node_and_concurrent_lines() {
        let f = parse_hpoly("x*y").unwrap();
        assert_eq!(milnor(&f, &pt(0, 0, 1)).unwrap(), 1);
        assert_eq!(tjurina(&f, &pt(0, 0, 1)).unwrap(), 1);
        let f = parse_hpoly("x*y*(x - y)*(x + 2*y)").unwrap();
        assert_eq!(milnor(&f, &pt(0, 0, 1)).unwrap(), 9);
        assert_eq!(tjurina(&f, &pt(0, 0, 1)).unwrap(), 9);
    }

    #[test]
    fn tacnode_and_smooth_point() {
        let f = parse_hpoly("y*(y*z - x^2)").unwrap();
        let o = pt(0, 0, 1);
        assert_eq!(milnor(&f, &o).unwrap(), 3);
        assert_eq!(tjurina(&f, &o).unwrap(), 3);
        assert_eq!(milnor(&f, &pt(1, 0, 0)).unwrap(), 0);
    }

    #[test]
    fn non_quasihomogeneous_point() {
        // x^5 + y^5 + x^2 y^2 (T_{2,5,5}): mu = 11, tau = 10
        let f = parse_hpoly("x^5 + y^5 + x^2*y^2*z").unwrap();
        let o = pt(0, 0, 1);
        assert_eq!(milnor(&f, &o).unwrap(), 11);
        assert_eq!(tjurina(&f, &o).unwrap(), 10);
    }

    #[test]
    fn chart_choice_does_not_matter() {
        let f = parse_hpoly("(x - z)*(y - z)*(x - y)*(x + y - 2*z)").unwrap();
        let p = pt(1, 1, 1);
        for chart in 0..3 {
            assert_eq!(milnor_in_chart(&f, &p, chart).unwrap(), 9);
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(1, 2).unwrap(), 1);
        assert_eq!(delta(4, 3).unwrap(), 3);
        assert_eq!(delta(3, 2).unwrap(), 2);
        assert!(matches!(delta(2, 2), Err(Error::ParityError { .. })));
    }

    #[test]
    fn multiplicity_of_tangency() {
        let l = parse_hpoly("x").unwrap();
        let c = parse_hpoly("y^2 - x*z").unwrap();
        assert_eq!(intersection_multiplicity(&l, &c, &pt(0, 0, 1)).unwrap(), 2);
    }
}
