//! Report envelope shared by the JSON-emitting commands.

use std::time::Duration;

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "polyrep.report/1";

/// What kind of statement each part of a report is.
pub fn claims() -> Value {
    json!({
        "exact": "divisibility, multiplicities, irreducibility, vertex evaluations and lattice memberships are exact rational computations",
        "sampled": "shape hypotheses, non-singular zeros and set agreement are checked on finite lattices; a PASS is consistent with the rule, not a proof of it",
        "certificate": "a certificate is relative to the asserted witnesses and holds whenever their hypotheses do",
        "indices": "polynomial, facet and edge indices are 1-based",
    })
}

/// `schema, tool, command, input, claims, <results...>, timing`.
pub fn envelope(command: &str, input: Value, results: Map<String, Value>, elapsed: Option<Duration>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("tool".into(), json!({ "name": "polyrep", "version": env!("CARGO_PKG_VERSION") }));
    m.insert("command".into(), json!(command));
    m.insert("input".into(), input);
    m.insert("claims".into(), claims());
    m.extend(results);
    if let Some(t) = elapsed {
        m.insert("timing".into(), json!({ "elapsed_ms": (t.as_secs_f64() * 1e6).round() / 1e3 }));
    }
    Value::Object(m)
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
