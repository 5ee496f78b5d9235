//! JSON, CSV and text forms of engine objects. Coefficients are always the
//! canonical text of the scalar; maps keep insertion order, lists are index-sorted.

use serde_json::{json, Map, Value};

use kndeg_core::curve::{BasisExpansion, Divisor};
use kndeg_core::degen::MarkingFate;
use kndeg_core::kn::StructureTable;
use kndeg_core::printed::Finding;
use kndeg_core::ParamScalar;

pub fn params_json(params: &[(String, ParamScalar)]) -> Value {
    let mut m = Map::new();
    for (k, v) in params {
        m.insert(k.clone(), Value::String(v.to_string()));
    }
    Value::Object(m)
}

pub fn expansion_json(e: &BasisExpansion) -> Value {
    Value::Array(
        e.iter()
            .map(|(index, c)| json!({"index": index, "coeff": c.to_string()}))
            .collect(),
    )
}

pub fn table_json(t: &StructureTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|((n, m), e)| json!({"n": n, "m": m, "terms": expansion_json(e)}))
        .collect();
    json!({
        "case": t.origin().name(),
        "window": t.window(),
        "params": params_json(t.params()),
        "entries": entries,
    })
}

pub fn table_text(t: &StructureTable) -> String {
    let mut s = format!("# {} window {}\n", t.origin().name(), t.window());
    for (k, v) in t.params() {
        s.push_str(&format!("# {k} = {v}\n"));
    }
    for ((n, m), e) in t.entries() {
        s.push_str(&format!("[V[{n}], V[{m}]] = {e}\n"));
    }
    s
}

/// One row per term; empty brackets get a row with empty index and coefficient.
pub fn table_csv(t: &StructureTable) -> String {
    let rows = t.entries().flat_map(|((n, m), e)| {
        if e.is_empty() {
            vec![vec![n.to_string(), m.to_string(), String::new(), String::new()]]
        } else {
            e.iter()
                .map(|(j, c)| vec![n.to_string(), m.to_string(), j.to_string(), c.to_string()])
                .collect()
        }
    });
    csv_string(&["n", "m", "index", "coeff"], rows)
}

pub fn csv_string<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn divisor_json(d: &Divisor) -> Value {
    Value::Array(
        d.iter()
            .map(|(p, k)| json!({"point": p.name(), "order": k}))
            .collect(),
    )
}

pub fn fate_json(f: &MarkingFate) -> Value {
    json!({
        "subcase": f.subcase.name(),
        "markings": f.p1_markings.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "before": f.marking_count_before,
        "after": f.marking_count_after,
        "singular_hit": f.singular_hit,
    })
}

pub fn finding_json(f: &Finding) -> Value {
    json!({"location": f.location, "engine": f.engine, "printed": f.printed})
}

pub fn findings_json(fs: &[Finding]) -> Value {
    Value::Array(fs.iter().map(finding_json).collect())
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
