//! Plain-text rendering of reports.

use std::fmt::Write;

use serde_json::Value;

fn show(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(show).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn point(v: &Value) -> String {
    match v.as_array() {
        Some(cs) => {
            let parts: Vec<String> = cs.iter().map(show).collect();
            format!("({})", parts.join(" : "))
        }
        None => show(v),
    }
}

fn verdict_line(v: &Value) -> String {
    let class = &v["classification"];
    let mut kind = show(&class["kind"]);
    if let (Some(a), Some(b)) = (class.get("a"), class.get("b")) {
        kind = format!("{kind} ({a}, {b})");
    }
    let inputs = &v["inputs"];
    let mut line = format!(
        "{} {}: count {}, epsilon {}",
        show(&v["case"]),
        show(&v["target"]),
        inputs["count"],
        inputs["epsilon"]
    );
    if let Some(m) = inputs.get("m") {
        let _ = write!(line, ", m {m}");
    }
    let consistent = if v["consistent_with_direct"] == Value::Bool(true) {
        "consistent"
    } else {
        "INCONSISTENT"
    };
    let _ = write!(line, " -> {kind}, {consistent}");
    line
}

fn identity_line(name: &str, v: &Value) -> String {
    format!(
        "{name}: {} = {} {}",
        v["lhs"],
        v["rhs"],
        if v["holds"] == Value::Bool(true) { "holds" } else { "FAILS" }
    )
}

fn query(out: &mut String, q: &Value) {
    let op = show(&q["op"]);
    let _ = writeln!(out, "  {op}");
    if let Some(v) = q.get("verdict") {
        let _ = writeln!(out, "    {}", verdict_line(v));
    }
    if let Some(vs) = q.get("verdicts").and_then(Value::as_array) {
        let _ = writeln!(out, "    counts {}", show(&q["counts"]));
        for v in vs {
            let _ = writeln!(out, "    {}", verdict_line(v));
        }
    }
    if let Some(n) = q.get("violations") {
        let checks = q["report"]["checks"].as_array().map_or(0, Vec::len);
        let skipped = &q["report"]["skipped"];
        let _ = writeln!(out, "    {checks} checks, {n} violations, {skipped} skipped");
    }
    if let Some(ctx) = q.get("deletion_context") {
        let _ = writeln!(
            out,
            "    k {}, k0 {}, k + k0 = {} {}",
            ctx["k"],
            ctx["k0"],
            ctx["expected_sum"],
            if ctx["holds"] == Value::Bool(true) { "holds" } else { "FAILS" }
        );
        let _ = writeln!(out, "    {}", identity_line("mu sum", &q["mu_formula"]));
        let _ = writeln!(out, "    {}", identity_line("delta sum", &q["delta_formula"]));
    }
}

/// Renders an analysis or verification report.
pub fn text(r: &Value) -> String {
    let mut out = String::new();
    if let Some(name) = r["scene"].as_str() {
        let _ = writeln!(out, "scene {name}");
    }
    let curve = &r["curve"];
    let ids: Vec<String> = curve["components"]
        .as_array()
        .map(|cs| cs.iter().map(|c| show(&c["id"])).collect())
        .unwrap_or_default();
    let _ = writeln!(out, "degree {} [{}]", curve["degree"], ids.join(" "));
    if let Some(t) = r.get("tau") {
        let _ = writeln!(
            out,
            "tau global {} local {} (stable from {})",
            show(&t["global"]),
            show(&t["local"]),
            show(&t["stable_from"])
        );
    }
    let inv = &r["invariants"];
    let chern = &inv["chern"];
    let _ = writeln!(
        out,
        "tau {}, mdr {}, c1 {}, c2 {}, split {}",
        inv["tau"],
        inv["mdr"],
        chern["c1"],
        chern["c2"],
        show(&chern["split"])
    );
    let free = &inv["free"];
    let status = if free["is_free"] == Value::Bool(true) {
        format!("free with exponents {}", show(&free["exponents"]))
    } else {
        "not free".to_string()
    };
    let scope = if free["below_scope"] == Value::Bool(true) { " (degree below scope)" } else { "" };
    let _ = writeln!(out, "{status}{scope}");
    if let Some(sing) = r.get("singularities").and_then(Value::as_array) {
        let _ = writeln!(out, "singular points {}", sing.len());
        for s in sing {
            let _ = writeln!(
                out,
                "  {} on {}: mu {} tau {} r {} delta {} eps {}",
                point(&s["point"]),
                show(&s["components"]),
                s["mu"],
                s["tau"],
                s["branches"],
                s["delta"],
                s["epsilon"]
            );
        }
    }
    if let Some(qs) = r.get("queries").and_then(Value::as_array) {
        if !qs.is_empty() {
            let _ = writeln!(out, "queries");
        }
        for q in qs {
            query(&mut out, q);
        }
    }
    if let Some(q) = r.get("result") {
        let _ = writeln!(out, "result");
        query(&mut out, q);
    }
    if let Some(t) = r.get("timing_ms").and_then(Value::as_object) {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(out, "timing ms: {}", parts.join(", "));
    }
    out
}
