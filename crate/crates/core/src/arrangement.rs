//! Reduced plane curves as labeled components, their pairwise intersections
//! and singular loci.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::local::intersection_multiplicity;
use crate::matrix::determinant;
use crate::poly::{binary_form_roots, form_roots, interpolate, resultant, HPoly, UniPoly};
use crate::scalars::{rat, QuadScalar, Rat};

/// Point of the projective plane, normalized so that its last nonzero
/// coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    coords: [QuadScalar; 3],
}

impl ProjPoint {
    pub fn new(coords: [QuadScalar; 3]) -> Result<Self> {
        crate::scalars::common_extension(coords.iter())?;
        let Some(last) = (0..3).rev().find(|&i| !coords[i].is_zero()) else {
            return Err(Error::InvalidComponent("point with all coordinates zero".into()));
        };
        let inv = coords[last].try_inv()?;
        Ok(ProjPoint {
            coords: coords.map(|c| &c * &inv),
        })
    }

    pub fn rational(coords: [Rat; 3]) -> Result<Self> {
        Self::new(coords.map(QuadScalar::from_rat))
    }

    pub fn coords(&self) -> &[QuadScalar; 3] {
        &self.coords
    }

    /// Extension tag shared by the coordinates (0 for rational points).
    pub fn ext(&self) -> i64 {
        self.coords.iter().map(QuadScalar::ext).find(|m| *m != 0).unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(QuadScalar::is_rational)
    }

    fn sort_key(&self) -> (i64, [(&Rat, &Rat); 3]) {
        fn k(c: &QuadScalar) -> (&Rat, &Rat) {
            (c.rational_part(), c.irrational_part())
        }
        (self.ext(), [k(&self.coords[0]), k(&self.coords[1]), k(&self.coords[2])])
    }

    /// Image under `x -> M x`.
    fn transform(&self, m: &[[Rat; 3]; 3]) -> Result<Self> {
        let c = &self.coords;
        Self::new(std::array::from_fn(|i| {
            (0..3).fold(QuadScalar::zero(), |acc, j| {
                &acc + &(&QuadScalar::from_rat(m[i][j].clone()) * &c[j])
            })
        }))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "({} : {} : {})", c[0], c[1], c[2])
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

/// Singular point of a generic component, with the number of its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuppliedPoint {
    pub point: ProjPoint,
    pub branches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Line([Rat; 3]),
    /// Coefficients of `x^2, xy, xz, y^2, yz, z^2`.
    Conic([Rat; 6]),
    /// An irreducible or reduced curve of any degree. Its singular points
    /// must be supplied before the singular locus of a curve containing it
    /// can be enumerated.
    Generic {
        singular_points: Option<Vec<SuppliedPoint>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    id: String,
    kind: ComponentKind,
    poly: HPoly,
}

impl Component {
    pub fn line(id: impl Into<String>, coeffs: [Rat; 3]) -> Result<Self> {
        let id = id.into();
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidComponent(format!("line `{id}` has zero coefficients")));
        }
        let poly = HPoly::linear(&coeffs);
        Ok(Component {
            id,
            kind: ComponentKind::Line(coeffs),
            poly,
        })
    }

    pub fn conic(id: impl Into<String>, coeffs: [Rat; 6]) -> Result<Self> {
        let id = id.into();
        let [a, b, c, d, e, f] = coeffs.clone().map(QuadScalar::from_rat);
        let half = QuadScalar::from_rat(Rat::new(1.into(), 2.into()));
        let (b, c, e) = (&b * &half, &c * &half, &e * &half);
        let m = vec![
            vec![a, b.clone(), c.clone()],
            vec![b, d, e.clone()],
            vec![c, e, f],
        ];
        if determinant(m).is_zero() {
            return Err(Error::SingularConic(id));
        }
        let poly = HPoly::conic(&coeffs);
        Ok(Component {
            id,
            kind: ComponentKind::Conic(coeffs),
            poly,
        })
    }

    /// A component given by its polynomial. Rejects constants and polynomials
    /// with repeated factors.
    pub fn generic(
        id: impl Into<String>,
        poly: HPoly,
        singular_points: Option<Vec<SuppliedPoint>>,
    ) -> Result<Self> {
        let id = id.into();
        if poly.degree() == 0 || poly.is_zero() {
            return Err(Error::InvalidComponent(format!("`{id}` is constant")));
        }
        if !is_squarefree(&poly)? {
            return Err(Error::NotReduced(format!("`{id}` has a repeated factor")));
        }
        if let Some(points) = &singular_points {
            for sp in points {
                if !poly.eval(sp.point.coords()).is_zero() {
                    return Err(Error::InvalidComponent(format!(
                        "supplied point {} is not on `{id}`",
                        sp.point
                    )));
                }
            }
        }
        Ok(Component {
            id,
            kind: ComponentKind::Generic { singular_points },
            poly,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> &ComponentKind {
        &self.kind
    }

    pub fn poly(&self) -> &HPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    pub fn is_line(&self) -> bool {
        matches!(self.kind, ComponentKind::Line(_))
    }

    pub fn is_conic(&self) -> bool {
        matches!(self.kind, ComponentKind::Conic(_))
    }

    pub fn type_name(&self) -> &'static str {
        match self.kind {
            ComponentKind::Line(_) => "line",
            ComponentKind::Conic(_) => "conic",
            ComponentKind::Generic { .. } => "generic",
        }
    }

    /// Number of branches of this component at a point on it.
    pub fn branches_at(&self, p: &ProjPoint) -> Result<usize> {
        match &self.kind {
            ComponentKind::Generic { singular_points } => {
                let points = singular_points
                    .as_ref()
                    .ok_or_else(|| Error::MissingSingularData(self.id.clone()))?;
                Ok(points
                    .iter()
                    .find(|sp| &sp.point == p)
                    .map_or(1, |sp| sp.branches))
            }
            _ => Ok(1),
        }
    }

    fn singular_points(&self) -> Result<Vec<ProjPoint>> {
        match &self.kind {
            ComponentKind::Generic { singular_points } => Ok(singular_points
                .as_ref()
                .ok_or_else(|| Error::MissingSingularData(self.id.clone()))?
                .iter()
                .map(|sp| sp.point.clone())
                .collect()),
            _ => Ok(Vec::new()),
        }
    }

    /// Two rational points spanning a line.
    fn line_basis(&self) -> Option<[[Rat; 3]; 2]> {
        let ComponentKind::Line([a, b, c]) = &self.kind else {
            return None;
        };
        let (o, z) = (Rat::one(), Rat::zero());
        Some(if !c.is_zero() {
            [[o.clone(), z.clone(), -a / c], [z, o, -b / c]]
        } else if !b.is_zero() {
            [[o.clone(), -a / b, z.clone()], [z.clone(), z, o]]
        } else {
            [[z.clone(), o.clone(), z.clone()], [z.clone(), z, o]]
        })
    }
}

/// `f(s * p0 + p1)` as a polynomial in `s`.
fn restrict(f: &HPoly, p0: &[Rat; 3], p1: &[Rat; 3]) -> UniPoly {
    let d = f.degree() as i64;
    let xs: Vec<QuadScalar> = (0..=d).map(QuadScalar::from_int).collect();
    let ys: Vec<QuadScalar> = (0..=d)
        .map(|s| {
            let s = rat(s);
            let pt: [QuadScalar; 3] =
                std::array::from_fn(|i| QuadScalar::from_rat(&s * &p0[i] + &p1[i]));
            f.eval(&pt)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Whether a rational form has no repeated factor, tested on its restrictions
/// to a fixed family of lines: a reduced curve restricts to a squarefree
/// binary form on all but finitely many lines, a non-reduced one on none.
pub fn is_squarefree(f: &HPoly) -> Result<bool> {
    if !f.is_rational() {
        return Err(Error::InvalidComponent("irrational polynomial".into()));
    }
    let d = f.degree() as usize;
    for k in 1..=40i64 {
        let p0 = [rat(1), rat(k), rat((k * k) % 11 - 5)];
        let p1 = [rat(0), rat(1), rat((3 * k) % 7 + 2)];
        let g = restrict(f, &p0, &p1);
        if g.degree().unwrap_or(0) + 1 < d {
            continue;
        }
        if g.gcd(&g.derivative()).degree().unwrap_or(0) == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Pairwise intersection point with its local intersection multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionRecord {
    pub point: ProjPoint,
    pub pair: (String, String),
    pub multiplicity: usize,
}

/// Intersection of a line with another component, read off the restriction
/// of the other component to the line.
fn intersect_line(line: &Component, other: &HPoly) -> Result<Vec<(ProjPoint, usize)>> {
    let [p0, p1] = line.line_basis().expect("a line");
    let g = restrict(other, &p0, &p1);
    if g.is_zero() {
        return Err(Error::NotReduced(format!("`{}` lies on another component", line.id)));
    }
    form_roots(other.degree() as usize, &g)?
        .into_iter()
        .map(|([u, w], m)| {
            let c: [QuadScalar; 3] = std::array::from_fn(|i| {
                &(&u * &QuadScalar::from_rat(p0[i].clone())) + &(&w * &QuadScalar::from_rat(p1[i].clone()))
            });
            Ok((ProjPoint::new(c)?, m))
        })
        .collect()
}

/// Coordinate changes tried in turn when a projection maps two intersection
/// points to the same point.
fn charts() -> Vec<[[Rat; 3]; 3]> {
    let id = |i: usize, j: usize| if i == j { rat(1) } else { rat(0) };
    let mut out = vec![std::array::from_fn(|i| std::array::from_fn(|j| id(i, j)))];
    for (a, b, c) in [(1, 2, 3), (2, -3, 5), (-1, 4, 7), (3, 5, -2), (5, -7, 11)] {
        out.push([
            [rat(1), rat(0), rat(0)],
            [rat(a), rat(1), rat(0)],
            [rat(b), rat(c), rat(1)],
        ]);
    }
    out
}

/// Common points of `p` and `q` on the line through the coordinate point
/// `e_var` and the point with coordinates `root` in the other two variables.
/// `None` if there is more than one.
fn lift(p: &HPoly, q: &HPoly, var: usize, others: [usize; 2], root: &[QuadScalar; 2]) -> Option<[QuadScalar; 3]> {
    let slice = |f: &HPoly| {
        let mut c = vec![QuadScalar::zero(); f.degree() as usize + 1];
        for (e, v) in f.terms() {
            let i = e[var] as usize;
            c[i] = &c[i] + &(&(v * &root[0].pow(e[others[0]])) * &root[1].pow(e[others[1]]));
        }
        UniPoly::new(c)
    };
    let g = slice(p).gcd(&slice(q));
    if g.degree() != Some(1) {
        return None;
    }
    let c = g.coeffs();
    let x = -&(&c[0] / &c[1]);
    let mut out: [QuadScalar; 3] = std::array::from_fn(|_| QuadScalar::zero());
    out[var] = x;
    out[others[0]] = root[0].clone();
    out[others[1]] = root[1].clone();
    Some(out)
}

fn common_points(p: &HPoly, q: &HPoly) -> Result<Vec<ProjPoint>> {
    for m in charts() {
        let (pt, qt) = (p.substitute_linear(&m), q.substitute_linear(&m));
        'vars: for var in 0..3 {
            if pt.pure_power_coeff(var).is_zero() && qt.pure_power_coeff(var).is_zero() {
                continue;
            }
            let r = resultant(&pt, &qt, var);
            if r.is_zero() {
                return Err(Error::NotReduced("components share a factor".into()));
            }
            let mut points = Vec::new();
            for (root, _) in binary_form_roots(&r)? {
                match lift(&pt, &qt, var, r.vars, &root) {
                    Some(c) => points.push(ProjPoint::new(c)?.transform(&m)?),
                    None => continue 'vars,
                }
            }
            return Ok(points);
        }
    }
    Err(Error::UnrepresentablePoint("no projection separates the intersection points".into()))
}

/// All intersection points of two distinct components with multiplicities.
pub fn intersect(c1: &Component, c2: &Component) -> Result<Vec<IntersectionRecord>> {
    if c1.poly.is_proportional(&c2.poly) {
        return Err(Error::NotReduced(format!("`{}` and `{}` coincide", c1.id, c2.id)));
    }
    let points = if c1.is_line() {
        intersect_line(c1, &c2.poly)?
    } else if c2.is_line() {
        intersect_line(c2, &c1.poly)?
    } else {
        common_points(&c1.poly, &c2.poly)?
            .into_iter()
            .map(|p| {
                let m = intersection_multiplicity(&c1.poly, &c2.poly, &p)?;
                Ok((p, m))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let total: usize = points.iter().map(|(_, m)| m).sum();
    let expected = (c1.degree() * c2.degree()) as usize;
    if total != expected {
        return Err(Error::IdentityViolated(format!(
            "intersection of `{}` and `{}` has total multiplicity {total}, expected {expected}",
            c1.id, c2.id
        )));
    }
    let mut records: Vec<IntersectionRecord> = points
        .into_iter()
        .map(|(point, multiplicity)| IntersectionRecord {
            point,
            pair: (c1.id.clone(), c2.id.clone()),
            multiplicity,
        })
        .collect();
    records.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(records)
}

/// Singular point together with the ids of the components through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub components: Vec<String>,
}

/// Reduced curve: a nonempty list of components with distinct ids.
#[derive(Clone, Debug)]
pub struct Curve {
    components: Vec<Component>,
    poly: HPoly,
    singular: OnceLock<Result<Vec<SingularPoint>>>,
}

impl Curve {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyCurve);
        }
        let mut ids = BTreeSet::new();
        for c in &components {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::Schema(format!("duplicate component id `{}`", c.id)));
            }
        }
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                if a.poly.is_proportional(&b.poly) {
                    return Err(Error::NotReduced(format!("`{}` and `{}` coincide", a.id, b.id)));
                }
                let generic = |c: &Component| matches!(c.kind, ComponentKind::Generic { .. });
                if (generic(a) || generic(b)) && !is_squarefree(&a.poly.mul(&b.poly))? {
                    return Err(Error::NotReduced(format!(
                        "`{}` and `{}` share a component",
                        a.id, b.id
                    )));
                }
            }
        }
        let poly = components
            .iter()
            .skip(1)
            .fold(components[0].poly.clone(), |acc, c| acc.mul(&c.poly));
        Ok(Curve {
            components,
            poly,
            singular: OnceLock::new(),
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn poly(&self) -> &HPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    /// The curve without component `id`.
    pub fn delete(&self, id: &str) -> Result<Curve> {
        if self.component(id).is_none() {
            return Err(Error::UnknownId(id.to_string()));
        }
        if self.components.len() == 1 {
            return Err(Error::LastComponent(id.to_string()));
        }
        Curve::new(self.components.iter().filter(|c| c.id != id).cloned().collect())
    }

    /// The curve with `comp` appended.
    pub fn add(&self, comp: Component) -> Result<Curve> {
        let mut components = self.components.clone();
        components.push(comp);
        Curve::new(components)
    }

    /// Distinct points where `comp` meets this curve.
    pub fn meet(&self, comp: &Component) -> Result<Vec<ProjPoint>> {
        let mut out = BTreeSet::new();
        for c in &self.components {
            if c.id == comp.id {
                continue;
            }
            for r in intersect(c, comp)? {
                out.insert(r.point);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// All pairwise intersection records, in component order.
    pub fn intersections(&self) -> Result<Vec<IntersectionRecord>> {
        let n = self.components.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let per_pair: Vec<Vec<IntersectionRecord>> = pairs
            .par_iter()
            .map(|&(i, j)| intersect(&self.components[i], &self.components[j]))
            .collect::<Result<_>>()?;
        Ok(per_pair.into_iter().flatten().collect())
    }

    /// Singular points in point order, each with the components through it.
    pub fn singular_points(&self) -> Result<Vec<SingularPoint>> {
        self.singular
            .get_or_init(|| self.compute_singular_points())
            .clone()
    }

    fn compute_singular_points(&self) -> Result<Vec<SingularPoint>> {
        let mut points: BTreeSet<ProjPoint> = BTreeSet::new();
        for c in &self.components {
            points.extend(c.singular_points()?);
        }
        points.extend(self.intersections()?.into_iter().map(|r| r.point));
        let mut out = BTreeMap::new();
        for p in points {
            let through: Vec<String> = self
                .components
                .iter()
                .filter(|c| c.poly.eval(p.coords()).is_zero())
                .map(|c| c.id.clone())
                .collect();
            out.insert(p, through);
        }
        Ok(out
            .into_iter()
            .map(|(point, components)| SingularPoint { point, components })
            .collect())
    }
}
