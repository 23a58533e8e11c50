//! Case analysis of the line and conic addition-deletion constraints for
//! curves whose logarithmic Chern polynomial splits, and the numeric
//! identities attached to adding a smooth conic.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Component, ComponentKind, Curve, ProjPoint};
use crate::error::{Error, Result};
use crate::global::{chern_from, freeness_from, global_tjurina, local_tjurina, mdr, ChernData, FreenessReport};
use crate::local::{delta, epsilon_pair, milnor, tjurina};
use crate::scalars::{rat, Rat};

/// Outcome of one case analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Classification {
    /// The curve must be free with these exponents.
    ForcedFree { a: i64, b: i64 },
    /// The curve cannot be free.
    ForcedNonFree,
    /// Both free and non-free curves occur in this case.
    Unconstrained,
    /// The counts fall in a range the constraints exclude.
    DichotomyViolated,
    /// The Chern polynomial has no splitting with positive integer roots.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictInputs {
    /// Number of distinct intersection points.
    pub count: usize,
    pub epsilon: i64,
    /// `count + epsilon`.
    pub value: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub case: String,
    pub target: String,
    pub classification: Classification,
    pub inputs: VerdictInputs,
    pub consistent_with_direct: bool,
}

/// Directly computed global data of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Direct {
    pub tau: usize,
    pub chern: ChernData,
    pub freeness: FreenessReport,
}

/// Global data with the Tjurina number taken from the local sum when every
/// singular point is representable, and from the Hilbert function otherwise.
pub fn direct(curve: &Curve) -> Result<Direct> {
    let tau = match local_tjurina(curve) {
        Ok(t) => t,
        Err(Error::UnrepresentablePoint(_)) => global_tjurina(curve.poly())?.0,
        Err(e) => return Err(e),
    };
    direct_from_tau(curve, tau)
}

pub fn direct_from_tau(curve: &Curve, tau: usize) -> Result<Direct> {
    let mdr = mdr(curve.poly())?;
    Ok(Direct {
        tau,
        chern: chern_from(curve.degree(), tau),
        freeness: freeness_from(curve.degree(), tau, mdr),
    })
}

fn split_of(direct: &Direct) -> Option<(i64, i64)> {
    if direct.freeness.below_scope {
        None
    } else {
        direct.chern.split
    }
}

fn in_open(x: i64, lo: i64, hi: i64) -> bool {
    lo < x && x < hi
}

/// Deleting a component line; `v = |C' ∩ L| + eps(C, C')`.
pub fn classify_line_deletion(v: i64, a: i64, b: i64) -> (&'static str, Classification) {
    use Classification::*;
    if in_open(v, a + 1, b + 1) {
        ("A.1.a", DichotomyViolated)
    } else if v == a + 1 || v == b + 1 {
        ("A.1.b", ForcedFree { a, b })
    } else if v > b + 1 {
        ("A.1.c", ForcedNonFree)
    } else {
        ("A.1.a", Unconstrained)
    }
}

/// Adding an external line; `v = |C ∩ L| + eps(C ∪ L, C)`.
pub fn classify_line_addition(v: i64, a: i64, b: i64) -> (&'static str, Classification) {
    use Classification::*;
    if in_open(v, a + 1, b + 1) {
        ("A.2.a", DichotomyViolated)
    } else if v == a + 1 || v == b + 1 {
        ("A.2.b", ForcedFree { a, b })
    } else if v < a + 1 {
        ("A.2.c", ForcedNonFree)
    } else {
        ("A.2.a", Unconstrained)
    }
}

/// Deleting a component conic; `k = |C' ∩ C0| + eps(C, C')`.
pub fn classify_conic_deletion(k: i64, a: i64, b: i64) -> (&'static str, Classification) {
    use Classification::*;
    let m = k.div_euclid(2);
    if k % 2 == 0 {
        if in_open(m, a, b) {
            ("B1.1", DichotomyViolated)
        } else if m == a || m == b {
            ("B1.1.a", ForcedFree { a, b })
        } else if m < a {
            ("B1.1.b", Unconstrained)
        } else {
            ("B1.1.c", ForcedNonFree)
        }
    } else if in_open(m, a - 1, b - 1) {
        ("B1.2", DichotomyViolated)
    } else if m == a - 1 {
        ("B1.2.a", ForcedFree { a, b })
    } else if m == b - 1 {
        // forces a = b = m + 1
        if a == b {
            ("B1.2.a", ForcedFree { a, b })
        } else {
            ("B1.2.a", DichotomyViolated)
        }
    } else if m < a - 1 {
        ("B1.2.b", Unconstrained)
    } else {
        ("B1.2.c", ForcedNonFree)
    }
}

/// Adding an external smooth conic; `k = |C ∩ C0| + eps(C ∪ C0, C)`.
pub fn classify_conic_addition(k: i64, a: i64, b: i64) -> (&'static str, Classification) {
    use Classification::*;
    let m = k.div_euclid(2);
    if k % 2 == 0 {
        if in_open(m, a, b) {
            ("B2.1", DichotomyViolated)
        } else if m == a || m == b {
            ("B2.1.a", ForcedFree { a, b })
        } else if m < a {
            ("B2.1.b", ForcedNonFree)
        } else {
            ("B2.1.c", Unconstrained)
        }
    } else if in_open(m, a, b) {
        ("B2.2", DichotomyViolated)
    } else if m == a {
        // forces m = b
        if a == b {
            ("B2.2.a", ForcedFree { a, b })
        } else {
            ("B2.2.a", DichotomyViolated)
        }
    } else if m == b {
        ("B2.2.b", ForcedFree { a, b })
    } else if m < a {
        ("B2.2.c", ForcedNonFree)
    } else {
        ("B2.2.d", Unconstrained)
    }
}

fn consistent(c: &Classification, direct: &Direct) -> bool {
    match c {
        Classification::ForcedFree { a, b } => {
            direct.freeness.exponents == Some((*a as usize, *b as usize))
        }
        Classification::ForcedNonFree => !direct.freeness.is_free,
        Classification::DichotomyViolated => false,
        Classification::Unconstrained | Classification::NotApplicable => true,
    }
}

/// Distinct points of `small ∩ extra` and `eps(big, small)`.
fn count_and_epsilon(big: &Curve, small: &Curve, extra: &Component) -> Result<(usize, i64)> {
    let n = small.meet(extra)?.len();
    Ok((n, epsilon_pair(big, small)?))
}

type Classifier = fn(i64, i64, i64) -> (&'static str, Classification);

fn verdict(
    target: &str,
    count: usize,
    epsilon: i64,
    conic: bool,
    direct: &Direct,
    classify: Classifier,
) -> Verdict {
    let value = count as i64 + epsilon;
    let split = split_of(direct);
    let (case, classification) = match split {
        Some((a, b)) => classify(value, a, b),
        None => ("n/a", Classification::NotApplicable),
    };
    let (m, parity) = if conic {
        (
            Some(value.div_euclid(2)),
            Some(if value % 2 == 0 { "even" } else { "odd" }),
        )
    } else {
        (None, None)
    };
    Verdict {
        case: case.to_string(),
        target: target.to_string(),
        consistent_with_direct: consistent(&classification, direct),
        classification,
        inputs: VerdictInputs {
            count,
            epsilon,
            value,
            m,
            parity,
            split,
        },
    }
}

fn component_of<'a>(curve: &'a Curve, id: &str) -> Result<&'a Component> {
    curve.component(id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

pub fn line_deletion(curve: &Curve, id: &str, direct: &Direct) -> Result<Verdict> {
    let line = component_of(curve, id)?;
    if !line.is_line() {
        return Err(Error::NotALine(id.to_string()));
    }
    let rest = curve.delete(id)?;
    let (n, eps) = count_and_epsilon(curve, &rest, line)?;
    Ok(verdict(id, n, eps, false, direct, classify_line_deletion))
}

pub fn line_addition(curve: &Curve, line: &Component, direct: &Direct) -> Result<Verdict> {
    if !line.is_line() {
        return Err(Error::NotALine(line.id().to_string()));
    }
    let big = curve.add(line.clone())?;
    let (n, eps) = count_and_epsilon(&big, curve, line)?;
    Ok(verdict(line.id(), n, eps, false, direct, classify_line_addition))
}

pub fn conic_deletion(curve: &Curve, id: &str, direct: &Direct) -> Result<Verdict> {
    let conic = component_of(curve, id)?;
    if !conic.is_conic() {
        return Err(Error::NotAConic(id.to_string()));
    }
    let rest = curve.delete(id)?;
    let (n, eps) = count_and_epsilon(curve, &rest, conic)?;
    Ok(verdict(id, n, eps, true, direct, classify_conic_deletion))
}

pub fn conic_addition(curve: &Curve, conic: &Component, direct: &Direct) -> Result<Verdict> {
    if !conic.is_conic() {
        return Err(Error::NotAConic(conic.id().to_string()));
    }
    let big = curve.add(conic.clone())?;
    let (n, eps) = count_and_epsilon(&big, curve, conic)?;
    Ok(verdict(conic.id(), n, eps, true, direct, classify_conic_addition))
}

pub fn verify_line_deletion(curve: &Curve, id: &str) -> Result<Verdict> {
    line_deletion(curve, id, &direct(curve)?)
}

pub fn verify_line_addition(curve: &Curve, line: &Component) -> Result<Verdict> {
    line_addition(curve, line, &direct(curve)?)
}

pub fn verify_conic_deletion(curve: &Curve, id: &str) -> Result<Verdict> {
    conic_deletion(curve, id, &direct(curve)?)
}

pub fn verify_conic_addition(curve: &Curve, conic: &Component) -> Result<Verdict> {
    conic_addition(curve, conic, &direct(curve)?)
}

/// Whether the sharper constraints for free curves hold.
fn free_case_holds(kind: FreeCaseKind, v: i64, a: i64, b: i64) -> bool {
    let m = v.div_euclid(2);
    let even = v % 2 == 0;
    match kind {
        FreeCaseKind::ComponentLine => v <= a + 1 || v == b + 1,
        FreeCaseKind::ExternalLine => v == a + 1 || v > b,
        FreeCaseKind::ComponentConic if even => m == b || m <= a,
        FreeCaseKind::ComponentConic => (m == a - 1 && m == b - 1) || m < a,
        FreeCaseKind::ExternalConic if even => m == a || m >= b,
        FreeCaseKind::ExternalConic => (m == a && m == b) || m >= b,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeCaseKind {
    ComponentLine,
    ExternalLine,
    ComponentConic,
    ExternalConic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeCaseCheck {
    pub kind: FreeCaseKind,
    pub target: String,
    pub count: usize,
    pub epsilon: i64,
    pub value: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeCaseReport {
    pub exponents: (usize, usize),
    pub checks: Vec<FreeCaseCheck>,
    /// Sampled external objects skipped because an intersection point is
    /// not representable.
    pub skipped: usize,
}

impl FreeCaseReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| !c.holds).count()
    }
}

const MAX_LINE_SAMPLES: usize = 24;
const MAX_CONIC_SAMPLES: usize = 8;

fn line_through(p: &[Rat; 3], q: &[Rat; 3]) -> Option<[Rat; 3]> {
    let c = [
        &p[1] * &q[2] - &p[2] * &q[1],
        &p[2] * &q[0] - &p[0] * &q[2],
        &p[0] * &q[1] - &p[1] * &q[0],
    ];
    if c.iter().all(Zero::is_zero) {
        None
    } else {
        Some(normalize(&c))
    }
}

fn normalize(c: &[Rat]) -> [Rat; 3] {
    let lead = c.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
    [&c[0] / &lead, &c[1] / &lead, &c[2] / &lead]
}

/// Null vector of a rank-5 system of five conic conditions, if unique.
#[allow(clippy::needless_range_loop)]
fn conic_through(points: &[[Rat; 3]]) -> Option<[Rat; 6]> {
    let mut rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            vec![
                &p[0] * &p[0],
                &p[0] * &p[1],
                &p[0] * &p[2],
                &p[1] * &p[1],
                &p[1] * &p[2],
                &p[2] * &p[2],
            ]
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..6 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::from_integer(1.into()) / &rows[r][c];
        for j in 0..6 {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..6 {
                    let t = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != 5 {
        return None;
    }
    let free = (0..6).find(|c| !pivots.contains(c))?;
    let mut sol: [Rat; 6] = std::array::from_fn(|_| rat(0));
    sol[free] = rat(1);
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = -rows[i][free].clone();
    }
    Some(sol)
}

/// Deterministic family of external lines and conics to test.
fn external_samples(curve: &Curve) -> Result<(Vec<Component>, Vec<Component>)> {
    let points: Vec<[Rat; 3]> = curve
        .singular_points()?
        .iter()
        .filter(|s| s.point.is_rational())
        .map(|s| s.point.coords().clone().map(|c| c.rational_part().clone()))
        .collect();
    let is_component = |poly: &crate::poly::HPoly| {
        curve.components().iter().any(|c| c.poly().is_proportional(poly))
    };
    let mut seen = BTreeSet::new();
    let mut lines = Vec::new();
    let mut push_line = |c: [Rat; 3], lines: &mut Vec<Component>| -> Result<()> {
        if lines.len() >= MAX_LINE_SAMPLES || !seen.insert(c.clone()) {
            return Ok(());
        }
        let l = Component::line(format!("ext_line_{}", lines.len()), c)?;
        if !is_component(l.poly()) {
            lines.push(l);
        }
        Ok(())
    };
    push_line(normalize(&[rat(3), rat(-5), rat(7)]), &mut lines)?;
    let aux = [rat(7), rat(-3), rat(11)];
    for p in &points {
        if let Some(c) = line_through(p, &aux) {
            push_line(c, &mut lines)?;
        }
    }
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if let Some(c) = line_through(p, q) {
                push_line(c, &mut lines)?;
            }
        }
    }
    let mut conics = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push_conic = |c: [Rat; 6], conics: &mut Vec<Component>| {
        if conics.len() >= MAX_CONIC_SAMPLES {
            return;
        }
        let lead = c.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
        let c = c.map(|x| x / &lead);
        if !seen.insert(c.clone()) {
            return;
        }
        if let Ok(q) = Component::conic(format!("ext_conic_{}", conics.len()), c) {
            if !is_component(q.poly()) {
                conics.push(q);
            }
        }
    };
    push_conic([1, 3, 5, -2, 1, -7].map(rat), &mut conics);
    let n = points.len();
    'outer: for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        if conics.len() >= MAX_CONIC_SAMPLES {
                            break 'outer;
                        }
                        let five = [&points[a], &points[b], &points[c], &points[d], &points[e]]
                            .map(|p| p.clone());
                        if let Some(q) = conic_through(&five) {
                            push_conic(q, &mut conics);
                        }
                    }
                }
            }
        }
    }
    Ok((lines, conics))
}

/// Checks the sharper constraints satisfied by free curves on every
/// component line and conic and on a deterministic sample of external lines
/// and conics.
pub fn free_case_checks(curve: &Curve, direct: &Direct) -> Result<FreeCaseReport> {
    let (a, b) = direct.freeness.exponents.ok_or(Error::NotFree)?;
    let (ai, bi) = (a as i64, b as i64);
    let check = |kind: FreeCaseKind, target: &str, n: usize, eps: i64| {
        let value = n as i64 + eps;
        FreeCaseCheck {
            kind,
            target: target.to_string(),
            count: n,
            epsilon: eps,
            value,
            holds: free_case_holds(kind, value, ai, bi),
        }
    };
    let mut checks = Vec::new();
    for c in curve.components() {
        let kind = match c.kind() {
            ComponentKind::Line(_) => FreeCaseKind::ComponentLine,
            ComponentKind::Conic(_) => FreeCaseKind::ComponentConic,
            ComponentKind::Generic { .. } => continue,
        };
        if curve.components().len() < 2 {
            continue;
        }
        let rest = curve.delete(c.id())?;
        let (n, eps) = count_and_epsilon(curve, &rest, c)?;
        checks.push(check(kind, c.id(), n, eps));
    }
    let (lines, conics) = external_samples(curve)?;
    let externals: Vec<(FreeCaseKind, Component)> = lines
        .into_iter()
        .map(|l| (FreeCaseKind::ExternalLine, l))
        .chain(conics.into_iter().map(|q| (FreeCaseKind::ExternalConic, q)))
        .collect();
    let results: Vec<Option<FreeCaseCheck>> = externals
        .par_iter()
        .map(|(kind, comp)| -> Result<Option<FreeCaseCheck>> {
            let big = curve.add(comp.clone())?;
            match count_and_epsilon(&big, curve, comp) {
                Ok((n, eps)) => Ok(Some(check(*kind, comp.id(), n, eps))),
                Err(Error::UnrepresentablePoint(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let skipped = results.iter().filter(|r| r.is_none()).count();
    checks.extend(results.into_iter().flatten());
    Ok(FreeCaseReport {
        exponents: (a, b),
        checks,
        skipped,
    })
}

/// Quantities attached to a smooth conic `C0` of a curve, relative to the
/// curve `C` of the remaining components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionContext {
    pub conic: String,
    pub reduced_point_count: usize,
    pub epsilon_sum: i64,
    pub k: i64,
    pub tau_jump: i64,
    pub k0: i64,
    /// `2 (deg C - 1)`
    pub expected_sum: i64,
    pub holds: bool,
}

fn check_conic(curve: &Curve, id: &str) -> Result<(Curve, Component)> {
    let conic = component_of(curve, id)?.clone();
    if !conic.is_conic() {
        return Err(Error::NotAConic(id.to_string()));
    }
    Ok((curve.delete(id)?, conic))
}

pub fn deletion_context(curve_with_conic: &Curve, conic_id: &str) -> Result<DeletionContext> {
    let (rest, conic) = check_conic(curve_with_conic, conic_id)?;
    let points = rest.meet(&conic)?;
    let jumps: Vec<(i64, i64)> = points
        .par_iter()
        .map(|p| -> Result<(i64, i64)> {
            let big = curve_with_conic.poly();
            let small = rest.poly();
            let tau_jump = tjurina(big, p)? as i64 - tjurina(small, p)? as i64;
            let eps_jump = (milnor(big, p)? as i64 - tjurina(big, p)? as i64)
                - (milnor(small, p)? as i64 - tjurina(small, p)? as i64);
            Ok((tau_jump, eps_jump))
        })
        .collect::<Result<_>>()?;
    let tau_jump: i64 = jumps.iter().map(|j| j.0).sum();
    let epsilon_sum: i64 = jumps.iter().map(|j| j.1).sum();
    let deg = rest.degree() as i64;
    let k = points.len() as i64 + epsilon_sum;
    let k0 = -2 + tau_jump - 2 * deg;
    let expected_sum = 2 * (deg - 1);
    Ok(DeletionContext {
        conic: conic_id.to_string(),
        reduced_point_count: points.len(),
        epsilon_sum,
        k,
        tau_jump,
        k0,
        expected_sum,
        holds: k + k0 == expected_sum,
    })
}

/// Both sides of an identity summed over the points where a conic meets a
/// curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub points: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

struct Jumps {
    points: usize,
    mu: i64,
    delta: i64,
}

fn jumps(curve: &Curve, conic: &Component) -> Result<Jumps> {
    if !conic.is_conic() {
        return Err(Error::NotAConic(conic.id().to_string()));
    }
    let big = curve.add(conic.clone())?;
    let points: Vec<ProjPoint> = curve.meet(conic)?;
    let per: Vec<(i64, i64)> = points
        .par_iter()
        .map(|p| -> Result<(i64, i64)> {
            let mu_big = milnor(big.poly(), p)?;
            let mu_small = milnor(curve.poly(), p)?;
            let r_big = crate::local::branches(&big, p)?;
            let r_small = crate::local::branches(curve, p)?;
            let d_big = delta(mu_big, r_big)? as i64;
            let d_small = delta(mu_small, r_small)? as i64;
            Ok((mu_big as i64 - mu_small as i64 + 1, d_big - d_small))
        })
        .collect::<Result<_>>()?;
    Ok(Jumps {
        points: points.len(),
        mu: per.iter().map(|x| x.0).sum(),
        delta: per.iter().map(|x| x.1).sum(),
    })
}

/// `sum_P [mu_P(C ∪ C0) - mu_P(C) + 1] = 4 deg C`.
pub fn mu_formula_check(curve: &Curve, conic: &Component) -> Result<IdentityReport> {
    let j = jumps(curve, conic)?;
    let rhs = 4 * curve.degree() as i64;
    Ok(IdentityReport {
        identity: "mu",
        points: j.points,
        lhs: j.mu,
        rhs,
        holds: j.mu == rhs,
    })
}

/// `sum_P [delta_P(C ∪ C0) - delta_P(C)] = 2 deg C`.
pub fn delta_formula_check(curve: &Curve, conic: &Component) -> Result<IdentityReport> {
    let j = jumps(curve, conic)?;
    let rhs = 2 * curve.degree() as i64;
    Ok(IdentityReport {
        identity: "delta",
        points: j.points,
        lhs: j.delta,
        rhs,
        holds: j.delta == rhs,
    })
}
