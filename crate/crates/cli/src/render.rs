use std::fmt::Write;

use rescycle::cycles::Cycle;
use rescycle::{QReport, Q};
use serde_json::{json, Map, Value};

use crate::{CaseOutcome, CycleSummary};

fn status(r: &QReport) -> &'static str {
    if r.matched() {
        "PASS"
    } else {
        "FAIL"
    }
}

/// The identity a pipeline establishes, written out.
fn identity(r: &QReport) -> String {
    if r.pipeline.starts_with("demo ex-embedded") {
        return "Dφ_1Dφ_2 R^E_2 = (2πi)² ℓ(2k−m)[0] and (1/(2πi)) tr(Dφ_1 R^K_1) = m[y=0]".into();
    }
    if r.pipeline == "nonpure" {
        return "Σ_k (1/((2πi)^k k!)) tr(Dφ_1⋯Dφ_k 1_{W_k} R^E_k) = [Z]".into();
    }
    let p = r.oracle.supports().iter().map(|s| s.len()).max().unwrap_or(0);
    if r.pipeline == "universal" {
        return format!("(1/((2πi)^p p!)) tr(Dφ_1⋯Dφ_p R^K_p) = m[W] for each component W (p = codim W, here ≤ {p})");
    }
    format!("(1/((2πi)^{p} {p}!)) tr(Dφ_1⋯Dφ_{p} R^E_{p}) = [Z]")
}

fn cycle_json(c: &Cycle<Q>, names: &[String]) -> Value {
    let mut m = Map::new();
    for (s, mass) in c.iter() {
        m.insert(s.render(names), Value::String(mass.to_string()));
    }
    Value::Object(m)
}

fn differences(r: &QReport) -> Vec<String> {
    let names = &r.variables;
    let mut supports = r.computed.supports();
    supports.extend(r.oracle.supports());
    supports.sort_by_key(|s| (s.len(), std::cmp::Reverse(*s)));
    supports.dedup();
    let show = |c: &Cycle<Q>, s| c.mass(s).map_or("0".to_string(), |m| m.to_string());
    supports
        .into_iter()
        .filter(|&s| r.computed.mass(s) != r.oracle.mass(s))
        .map(|s| {
            format!(
                "{}: computed {}, oracle {}",
                s.render(names),
                show(&r.computed, s),
                show(&r.oracle, s)
            )
        })
        .collect()
}

pub fn render_text(o: &CaseOutcome, timings: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "== {} ==", o.label);
    match &o.result {
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
        }
        Ok(r) => {
            let names = &r.variables;
            let _ = writeln!(out, "pipeline: {}", r.pipeline);
            let _ = writeln!(out, "identity: {}", identity(r));
            let _ = writeln!(
                out,
                "computed: {}; oracle: {}; {}",
                r.computed.render(names),
                r.oracle.render(names),
                status(r)
            );
            for line in differences(r) {
                let _ = writeln!(out, "  difference {line}");
            }
            if !r.remainder.is_zero() {
                let _ = writeln!(out, "  remainder: {}", r.remainder.render(names));
            }
            for (name, ok) in &r.checks {
                let _ = writeln!(out, "  [{}] {name}", if *ok { "ok" } else { "FAILED" });
            }
            for n in &r.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            if timings {
                for (stage, t) in &r.timings {
                    let _ = writeln!(out, "  time {stage}: {t:.2?}");
                }
            }
        }
    }
    out
}

pub fn render_json(o: &CaseOutcome) -> Value {
    let result = match &o.result {
        Err(e) => json!({
            "source": o.label,
            "status": "ERROR",
            "exit_code": e.exit_code(),
            "error": e.to_string(),
        }),
        Ok(r) => {
            let names = &r.variables;
            json!({
                "source": o.label,
                "status": status(r),
                "pipeline": r.pipeline,
                "identity": identity(r),
                "computed": cycle_json(&r.computed, names),
                "oracle": cycle_json(&r.oracle, names),
                "difference": cycle_json(&r.difference(), names),
                "remainder": r.remainder.render(names),
                "checks": r.checks.iter().map(|(n, ok)| json!({"name": n, "ok": ok})).collect::<Vec<_>>(),
                "intermediates": r.intermediates.iter().map(|(n, v)| json!({"name": n, "value": v})).collect::<Vec<_>>(),
                "notes": r.notes,
            })
        }
    };
    attach(o.file.as_ref(), result)
}

fn attach(file: Option<&crate::CaseFile>, result: Value) -> Value {
    let mut v = file.map_or_else(|| json!({}), |f| serde_json::to_value(f).unwrap_or_else(|_| json!({})));
    if let Value::Object(m) = &mut v {
        m.insert("result".into(), result);
    }
    v
}

pub fn render_cycle_text(o: &CycleSummary) -> String {
    let mut out = format!("== {} ==\n", o.label);
    match &o.result {
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
        }
        Ok((names, cycle, parts)) => {
            let _ = writeln!(out, "oracle: [Z] = {}", cycle.render(names));
            for (prime, mult) in parts {
                let _ = writeln!(out, "  {}: multiplicity {mult}", prime.render(names));
            }
        }
    }
    out
}

pub fn render_cycle_json(o: &CycleSummary) -> Value {
    let result = match &o.result {
        Err(e) => json!({"source": o.label, "status": "ERROR", "exit_code": e.exit_code(), "error": e.to_string()}),
        Ok((names, cycle, parts)) => json!({
            "source": o.label,
            "cycle": cycle_json(cycle, names),
            "components": parts
                .iter()
                .map(|(p, m)| json!({"prime": p.render(names), "multiplicity": m}))
                .collect::<Vec<_>>(),
        }),
    };
    attach(o.file.as_ref(), result)
}

pub fn render_intermediates(r: &QReport) -> String {
    let mut out = String::new();
    for (name, value) in &r.intermediates {
        let _ = writeln!(out, "{name}:\n{value}\n");
    }
    let _ = writeln!(
        out,
        "residue normal form of the remainder:\n{}",
        r.remainder.render(&r.variables)
    );
    out
}
