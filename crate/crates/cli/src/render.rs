//! JSON and table output.

use frobchi::vanishing::NumericalVanishing;
use frobchi::{BigRational, ChiTable, Decomposition, EigenComponents};
use serde_json::{json, Map, Value};

use crate::commands::Report;
use crate::error::CliError;

pub const SCHEMA: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

/// Always `num/den`, also for integers.
pub fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rationals(qs: &[BigRational]) -> Vec<String> {
    qs.iter().map(rational).collect()
}

fn object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

fn decomposition(d: &Decomposition, full: bool) -> Map<String, Value> {
    let mut m = object(json!({
        "components": rationals(&d.components.components),
        "dutta": rational(d.dutta()),
        "u": d.components.u,
    }));
    if full {
        m.insert("p".into(), json!(d.table.p));
        m.insert("t".into(), json!(d.table.t));
        m.insert("values".into(), json!(d.table.values));
    }
    m
}

fn numvan(n: &NumericalVanishing) -> Map<String, Value> {
    let shown = n
        .witness
        .and_then(|w| n.checks.iter().find(|c| c.e == w))
        .or(n.checks.last())
        .expect("at least one check");
    let mut m = object(json!({ "pass": n.pass, "lhs": shown.lhs, "rhs": shown.rhs }));
    if let Some(w) = n.witness {
        m.insert("witness".into(), json!({ "e": w, "lhs": shown.lhs, "rhs": shown.rhs }));
    }
    if n.checks.len() > 1 {
        let checks: Vec<Value> = n
            .checks
            .iter()
            .map(|c| json!({ "e": c.e, "lhs": c.lhs, "rhs": c.rhs }))
            .collect();
        m.insert("checks".into(), Value::Array(checks));
    }
    m
}

pub fn to_json(report: &Report) -> Value {
    let mut m = match report {
        Report::Validate {
            p,
            vars,
            ring_dim,
            complexes,
            modules,
        } => {
            let mut cs = Map::new();
            for c in complexes {
                cs.insert(c.name.clone(), json!({ "lo": c.lo, "ranks": c.ranks }));
            }
            let mut ms = Map::new();
            for md in modules {
                ms.insert(md.name.clone(), json!({ "dim": md.dim }));
            }
            object(json!({
                "valid": true,
                "ring": { "p": p, "vars": vars, "dim": ring_dim },
                "complexes": cs,
                "modules": ms,
            }))
        }
        Report::Homology(entries) => {
            let hs: Vec<Value> = entries
                .iter()
                .map(|h| json!({ "degree": h.degree, "dim": h.dim, "length": h.length }))
                .collect();
            object(json!({ "homology": hs }))
        }
        Report::Chi(c) => object(json!({ "chi": c })),
        Report::ChiSeries(t) => object(json!({ "p": t.p, "t": t.t, "values": t.values })),
        Report::Dutta(d) => decomposition(d, false),
        Report::Decompose(d) => decomposition(d, true),
        Report::Vdim { probes, report } => {
            let fits: Vec<Value> = report
                .fits
                .iter()
                .map(|f| {
                    json!({
                        "probe": probes[f.probe],
                        "order": f.order,
                        "confirmed": f.confirmed,
                        "values": f.table.values,
                        "components": rationals(&f.components.components),
                    })
                })
                .collect();
            let fixed: Vec<Value> = report
                .fixed_point
                .iter()
                .map(|v| {
                    let mut o = object(json!({ "probe": probes[v.probe], "pass": v.pass }));
                    if let Some(w) = v.witness {
                        o.insert("witness".into(), json!({ "e": w, "value": v.values[w] }));
                    }
                    Value::Object(o)
                })
                .collect();
            let mut o = object(json!({
                "t": report.t,
                "u_max": report.u_max,
                "u_obs": report.u_obs,
                "bracket": [report.u_obs, report.u_max],
                "fits": fits,
                "fixed_point": fixed,
            }));
            if let Some(n) = &report.numerical {
                o.insert("numerical".into(), Value::Object(numvan(n)));
            }
            o
        }
        Report::FixedPoint(verdicts) => {
            let vs: Vec<Value> = verdicts
                .iter()
                .map(|v| {
                    let mut o = object(json!({ "probe": v.probe, "pass": v.pass, "values": v.values }));
                    if let Some(w) = v.witness {
                        o.insert("witness".into(), json!({ "e": w, "value": v.values[w] }));
                    }
                    Value::Object(o)
                })
                .collect();
            object(json!({ "pass": verdicts.iter().all(|v| v.pass), "verdicts": vs }))
        }
        Report::Numvan(n) => numvan(n),
    };
    m.insert("schema".into(), json!(SCHEMA));
    Value::Object(m)
}

pub fn error_json(err: &CliError) -> Value {
    let mut e = object(json!({
        "code": err.code,
        "class": err.class_name(),
        "message": err.message,
    }));
    if let (Some(line), Some(column)) = (err.line, err.column) {
        e.insert("line".into(), json!(line));
        e.insert("column".into(), json!(column));
    }
    json!({ "schema": SCHEMA, "error": e })
}

/// Left-aligned label column followed by right-aligned cells.
fn grid(rows: &[(String, Vec<String>)]) -> String {
    let label = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let cols = rows.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for (_, cells) in rows {
        for (k, c) in cells.iter().enumerate() {
            width[k] = width[k].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for (l, cells) in rows {
        out.push_str(&format!("{l:<label$}"));
        for (k, c) in cells.iter().enumerate() {
            out.push_str(&format!("  {c:>w$}", w = width[k]));
        }
        out.push('\n');
    }
    out
}

fn series_rows(table: &ChiTable) -> Vec<(String, Vec<String>)> {
    vec![
        ("e".into(), (0..table.values.len()).map(|e| e.to_string()).collect()),
        ("c_e".into(), table.values.iter().map(|v| v.to_string()).collect()),
    ]
}

fn component_rows(c: &EigenComponents) -> Vec<(String, Vec<String>)> {
    vec![
        ("i".into(), (0..c.components.len()).map(|i| i.to_string()).collect()),
        ("a_i".into(), rationals(&c.components)),
    ]
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn to_table(report: &Report) -> String {
    match report {
        Report::Validate {
            p,
            vars,
            ring_dim,
            complexes,
            modules,
        } => {
            let mut out = format!("ring     F_{p}[{}]  dim {ring_dim}\n", vars.join(", "));
            for c in complexes {
                let ranks: Vec<String> = c.ranks.iter().map(|r| r.to_string()).collect();
                out.push_str(&format!("complex  {}  from degree {}  ranks {}\n", c.name, c.lo, ranks.join(" ")));
            }
            for m in modules {
                out.push_str(&format!("module   {}  dim {}\n", m.name, m.dim));
            }
            out
        }
        Report::Homology(entries) => {
            let rows = vec![
                ("i".to_string(), entries.iter().map(|h| h.degree.to_string()).collect()),
                ("dim H_i".to_string(), entries.iter().map(|h| h.dim.to_string()).collect()),
                (
                    "len H_i".to_string(),
                    entries
                        .iter()
                        .map(|h| h.length.map_or("inf".to_string(), |n| n.to_string()))
                        .collect(),
                ),
            ];
            grid(&rows)
        }
        Report::Chi(c) => format!("chi  {c}\n"),
        Report::ChiSeries(t) => format!("p = {}, t = {}\n{}", t.p, t.t, grid(&series_rows(t))),
        Report::Dutta(d) | Report::Decompose(d) => {
            let mut rows = series_rows(&d.table);
            rows.extend(component_rows(&d.components));
            format!(
                "p = {}, t = {}, u = {}\n{}dutta  {}\n",
                d.table.p,
                d.table.t,
                d.components.u,
                grid(&rows),
                rational(d.dutta())
            )
        }
        Report::Vdim { probes, report } => {
            let mut out = format!(
                "t = {}, vanishing dimension in [{}, {}]\n",
                report.t, report.u_obs, report.u_max
            );
            let mut rows = vec![(
                "probe".to_string(),
                vec!["order".to_string(), "fixed point".to_string(), "c_e".to_string()],
            )];
            for (f, v) in report.fits.iter().zip(&report.fixed_point) {
                let values: Vec<String> = f.table.values.iter().map(|c| c.to_string()).collect();
                rows.push((
                    probes[f.probe].clone(),
                    vec![f.order.to_string(), verdict(v.pass).to_string(), values.join(" ")],
                ));
            }
            out.push_str(&grid(&rows));
            if let Some(n) = &report.numerical {
                out.push_str(&format!("numerical vanishing  {}\n", verdict(n.pass)));
            }
            out
        }
        Report::FixedPoint(verdicts) => {
            let mut rows = Vec::new();
            for v in verdicts {
                let values: Vec<String> = v.values.iter().map(|c| c.to_string()).collect();
                let witness = v.witness.map_or(String::new(), |w| format!("e = {w}"));
                rows.push((v.probe.clone(), vec![verdict(v.pass).to_string(), values.join(" "), witness]));
            }
            grid(&rows)
        }
        Report::Numvan(n) => {
            let rows = vec![
                ("e".to_string(), n.checks.iter().map(|c| c.e.to_string()).collect()),
                ("chi(F^e X)".to_string(), n.checks.iter().map(|c| c.lhs.to_string()).collect()),
                ("p^(e d) chi(X)".to_string(), n.checks.iter().map(|c| c.rhs.to_string()).collect()),
            ];
            format!("{}numerical vanishing  {}\n", grid(&rows), verdict(n.pass))
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", to_json(report)),
        Format::Table => to_table(report),
    }
}

pub fn render_error(err: &CliError, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", error_json(err)),
        Format::Table => format!("{err}\n"),
    }
}
