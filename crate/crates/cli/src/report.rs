//! Report assembly, number formatting and the content digest.

use qwalk::transfer::SymbolicTime;
use qwalk::{Complex64, Graph, QuantumState, TransferCertificate};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Significant digits kept for every float in a report.
pub const DIGITS: usize = 12;

/// Tolerance for echoing a time in symbolic form.
const SYMBOLIC_TOL: f64 = 1e-9;

#[derive(Debug, Default)]
pub struct Report {
    pub command: Value,
    pub graph: Option<Value>,
    pub results: Value,
    pub certificates: Vec<Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(name: &str, args: Value) -> Self {
        Report { command: json!({ "name": name, "args": args }), results: Value::Null, ..Default::default() }
    }

    pub fn with_graph(mut self, g: &Graph) -> Self {
        self.graph = Some(graph_summary(g));
        self
    }

    pub fn certificate(&mut self, g: &Graph, source: &QuantumState, target: &QuantumState, cert: &TransferCertificate) {
        if cert.verdict == qwalk::Verdict::EvidenceOnly {
            self.warnings.push(format!("{} -> {}: evidence only ({})", source.describe(g), target.describe(g), cert.criterion));
        }
        self.certificates.push(certificate_json(g, source, target, cert));
    }

    /// Final JSON document. `timing` is added after the digest is taken.
    pub fn finish(self, timing: Option<f64>) -> Value {
        let mut body = Map::new();
        body.insert("command".into(), self.command);
        if let Some(g) = self.graph {
            body.insert("graph".into(), g);
        }
        body.insert("results".into(), self.results);
        body.insert("certificates".into(), Value::Array(self.certificates));
        body.insert("warnings".into(), json!(self.warnings));
        let mut doc = round_value(Value::Object(body));
        let digest = digest(&doc);
        let obj = doc.as_object_mut().expect("object");
        obj.insert("digest".into(), Value::String(digest));
        if let Some(t) = timing {
            obj.insert("timing".into(), json!({ "seconds": round(t) }));
        }
        doc
    }
}

/// SHA-256 over the compact serialization, ignoring `digest` and `timing`.
pub fn digest(doc: &Value) -> String {
    let mut v = doc.clone();
    if let Some(o) = v.as_object_mut() {
        o.remove("digest");
        o.remove("timing");
    }
    let bytes = serde_json::to_vec(&v).expect("serializable");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn round(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(|x| json!(round(x))).unwrap_or(Value::Null),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn graph_summary(g: &Graph) -> Value {
    let vertices: Vec<Value> = (0..g.n()).map(|v| json!({ "id": v, "label": g.label(v) })).collect();
    json!({
        "n": g.n(),
        "edge_count": g.edge_count(),
        "integer_weighted": g.is_integer_weighted(),
        "vertices": vertices,
    })
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Numeric time with its symbolic echo when one is recognised.
pub fn time(t: f64, symbolic: Option<SymbolicTime>) -> Value {
    let sym = symbolic.or_else(|| SymbolicTime::recognize(t, SYMBOLIC_TOL));
    json!({ "value": t, "symbolic": sym.map(|s| s.to_string()) })
}

pub fn certificate_json(g: &Graph, source: &QuantumState, target: &QuantumState, cert: &TransferCertificate) -> Value {
    json!({
        "source": source.describe(g),
        "target": target.describe(g),
        "verdict": cert.verdict.to_string(),
        "criterion": cert.criterion,
        "time": cert.time.map(|t| time(t, cert.symbolic_time)),
        "phase": cert.phase.map(complex),
        "peak_fidelity": cert.peak_fidelity,
        "support": cert.support,
        "notes": cert.notes,
    })
}
