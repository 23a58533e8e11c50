//! Reports for scenes: global and local invariants plus query results, as
//! JSON values with sorted keys.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arrangement::{Component, Curve};
use crate::error::{Error, Result};
use crate::global::{global_tjurina, TjurinaMethod};
use crate::local::all_singularities;
use crate::scene::{ComponentSpec, Query, Scene};
use crate::verify::{
    conic_addition, conic_deletion, deletion_context, delta_formula_check, direct, direct_from_tau,
    free_case_checks, line_addition, line_deletion, mu_formula_check, Classification, Direct, Verdict,
};

/// Worst outcome among the checks of a report, in increasing severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// A numeric identity failed.
    IdentityViolated,
    /// A verdict fell in an excluded range or contradicts direct freeness.
    VerdictViolated,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub value: Value,
    pub status: Status,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub tau: TjurinaMethod,
    pub timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            tau: TjurinaMethod::Both,
            timing: false,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn curve_summary(curve: &Curve) -> Value {
    let comps: Vec<Value> = curve
        .components()
        .iter()
        .map(|c| {
            json!({
                "id": c.id(),
                "type": c.type_name(),
                "degree": c.degree(),
                "poly": c.poly().to_string(),
            })
        })
        .collect();
    json!({ "degree": curve.degree(), "components": comps })
}

fn direct_value(d: &Direct) -> Value {
    json!({
        "tau": d.tau,
        "mdr": d.freeness.mdr,
        "chern": to_value(&d.chern),
        "free": {
            "is_free": d.freeness.is_free,
            "exponents": d.freeness.exponents,
            "below_scope": d.freeness.below_scope,
        },
    })
}

/// Full invariant report of a scene, including its queries.
pub fn analyze(scene: &Scene, opts: AnalyzeOptions) -> Result<Report> {
    let mut timing = Map::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timing: &mut Map<String, Value>| {
        timing.insert(name.to_string(), json!(clock.elapsed().as_millis() as u64));
        clock = Instant::now();
    };

    let curve = scene.curve()?;
    lap("build", &mut timing);

    let (global, stable_from) = match opts.tau {
        TjurinaMethod::Global | TjurinaMethod::Both => {
            let (t, k) = global_tjurina(curve.poly())?;
            (Some(t), Some(k))
        }
        TjurinaMethod::Local => (None, None),
    };
    lap("tau_global", &mut timing);

    let singularities = match opts.tau {
        TjurinaMethod::Local | TjurinaMethod::Both => Some(all_singularities(&curve)?),
        TjurinaMethod::Global => None,
    };
    let local = singularities
        .as_ref()
        .map(|s| s.iter().map(|p| p.tau).sum::<usize>());
    lap("local", &mut timing);

    if let (Some(g), Some(l)) = (global, local) {
        if g != l {
            return Err(Error::IdentityViolated(format!(
                "global Tjurina number {g} differs from the local sum {l}"
            )));
        }
    }
    let tau = global.or(local).expect("at least one method runs");
    let d = direct_from_tau(&curve, tau)?;
    lap("mdr", &mut timing);

    let mut status = Status::Ok;
    let mut queries = Vec::new();
    for q in &scene.queries {
        let (v, s) = run_query(&curve, &d, q)?;
        status = status.max(s);
        queries.push(v);
    }
    lap("queries", &mut timing);

    let mut report = json!({
        "scene": scene.name,
        "curve": curve_summary(&curve),
        "tau": { "global": global, "local": local, "stable_from": stable_from },
        "invariants": direct_value(&d),
        "singularities": singularities.as_ref().map(to_value),
        "queries": queries,
    });
    if opts.timing {
        report["timing_ms"] = Value::Object(timing);
    }
    Ok(Report {
        value: report,
        status,
    })
}

fn arg_target(q: &Query) -> Result<&str> {
    q.args
        .get("target")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema(format!("query `{}` needs a string `target`", q.op)))
}

fn arg_component(q: &Query) -> Result<Component> {
    let spec = q
        .args
        .get("component")
        .ok_or_else(|| Error::Schema(format!("query `{}` needs a `component`", q.op)))?;
    let spec: ComponentSpec =
        serde_json::from_value(spec.clone()).map_err(|e| Error::Schema(e.to_string()))?;
    spec.build()
}

fn verdict_status(v: &Verdict) -> Status {
    if v.classification == Classification::DichotomyViolated || !v.consistent_with_direct {
        Status::VerdictViolated
    } else {
        Status::Ok
    }
}

fn single(op: &str, v: Verdict) -> (Value, Status) {
    let s = verdict_status(&v);
    (json!({ "op": op, "verdict": to_value(&v) }), s)
}

fn kind_name(c: &Classification) -> String {
    to_value(c)["kind"].as_str().expect("tagged enum").to_string()
}

fn all_of(op: &str, verdicts: Vec<Verdict>) -> (Value, Status) {
    let status = verdicts.iter().map(verdict_status).max().unwrap_or(Status::Ok);
    let counts: BTreeSet<usize> = verdicts.iter().map(|v| v.inputs.count).collect();
    let kinds: BTreeSet<String> = verdicts.iter().map(|v| kind_name(&v.classification)).collect();
    let cases: BTreeSet<&str> = verdicts.iter().map(|v| v.case.as_str()).collect();
    (
        json!({
            "op": op,
            "counts": counts,
            "classifications": kinds,
            "cases": cases,
            "verdicts": to_value(&verdicts),
        }),
        status,
    )
}

fn identities(curve: &Curve, q: &Query) -> Result<(Value, Status)> {
    let (with_conic, without, conic) = match q.args.get("target") {
        Some(_) => {
            let id = arg_target(q)?;
            let conic = curve
                .component(id)
                .ok_or_else(|| Error::UnknownId(id.to_string()))?
                .clone();
            (curve.clone(), curve.delete(id)?, conic)
        }
        None => {
            let conic = arg_component(q)?;
            (curve.add(conic.clone())?, curve.clone(), conic)
        }
    };
    let ctx = deletion_context(&with_conic, conic.id())?;
    let mu = mu_formula_check(&without, &conic)?;
    let delta = delta_formula_check(&without, &conic)?;
    let status = if ctx.holds && mu.holds && delta.holds {
        Status::Ok
    } else {
        Status::IdentityViolated
    };
    Ok((
        json!({
            "op": q.op,
            "target": conic.id(),
            "deletion_context": to_value(&ctx),
            "mu_formula": to_value(&mu),
            "delta_formula": to_value(&delta),
        }),
        status,
    ))
}

/// Runs one query against a curve with precomputed global data.
pub fn run_query(curve: &Curve, d: &Direct, q: &Query) -> Result<(Value, Status)> {
    let op = q.op.as_str();
    match op {
        "line_deletion" => Ok(single(op, line_deletion(curve, arg_target(q)?, d)?)),
        "line_addition" => Ok(single(op, line_addition(curve, &arg_component(q)?, d)?)),
        "conic_deletion" => Ok(single(op, conic_deletion(curve, arg_target(q)?, d)?)),
        "conic_addition" => Ok(single(op, conic_addition(curve, &arg_component(q)?, d)?)),
        "line_deletion_all" => {
            let vs = curve
                .components()
                .iter()
                .filter(|c| c.is_line())
                .map(|c| line_deletion(curve, c.id(), d))
                .collect::<Result<Vec<_>>>()?;
            Ok(all_of(op, vs))
        }
        "conic_deletion_all" => {
            let vs = curve
                .components()
                .iter()
                .filter(|c| c.is_conic())
                .map(|c| conic_deletion(curve, c.id(), d))
                .collect::<Result<Vec<_>>>()?;
            Ok(all_of(op, vs))
        }
        "free_case" => {
            let r = free_case_checks(curve, d)?;
            let status = if r.violations() == 0 {
                Status::Ok
            } else {
                Status::VerdictViolated
            };
            Ok((
                json!({ "op": op, "violations": r.violations(), "report": to_value(&r) }),
                status,
            ))
        }
        "identities" => identities(curve, q),
        other => Err(Error::Schema(format!("unknown query op `{other}`"))),
    }
}

/// Builds the query behind a verification request: a component id selects
/// the deletion form, an inline JSON component the addition form.
pub fn query_for(theorem: &str, target: Option<&str>) -> Result<Query> {
    let inline = target.is_some_and(|t| t.trim_start().starts_with('{'));
    let args = match target {
        None => json!({}),
        Some(t) if inline => {
            let v: Value = serde_json::from_str(t).map_err(|e| Error::Schema(e.to_string()))?;
            json!({ "component": v })
        }
        Some(t) => json!({ "target": t }),
    };
    let op = match (theorem, inline, target.is_some()) {
        ("A", false, true) => "line_deletion",
        ("A", true, _) => "line_addition",
        ("A", false, false) => "line_deletion_all",
        ("B1", false, true) => "conic_deletion",
        ("B1", false, false) => "conic_deletion_all",
        ("B2", true, _) => "conic_addition",
        ("free-case", _, _) => "free_case",
        ("identities", _, true) => "identities",
        _ => {
            return Err(Error::Schema(format!(
                "theorem `{theorem}` does not take target {target:?}"
            )))
        }
    };
    Ok(Query {
        op: op.to_string(),
        args,
    })
}

/// Runs one verification on a scene's curve.
pub fn verify_scene(scene: &Scene, theorem: &str, target: Option<&str>) -> Result<Report> {
    let curve = scene.curve()?;
    let q = query_for(theorem, target)?;
    let d = direct(&curve)?;
    let (result, status) = run_query(&curve, &d, &q)?;
    Ok(Report {
        value: json!({
            "scene": scene.name,
            "curve": curve_summary(&curve),
            "invariants": direct_value(&d),
            "result": result,
        }),
        status,
    })
}
