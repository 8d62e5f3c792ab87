//! Graph JSON: `{"n": int, "edges": [[u, v, w], ...], "labels": [...], "loops": bool}`.
//!
//! Omitted weights default to 1. Writing produces the canonical form: each
//! edge once with `u <= v`, sorted, integral weights as JSON integers.

use std::collections::HashMap;
use std::path::Path;

use serde_json::{json, Value};

use super::{Graph, GraphError};

fn parse_vertex(v: &Value, n: usize) -> Result<usize, GraphError> {
    let x = v.as_u64().ok_or_else(|| GraphError::Parse(format!("vertex id {v} is not a non-negative integer")))?;
    let x = x as usize;
    if x >= n {
        return Err(GraphError::VertexOutOfRange { vertex: x, n });
    }
    Ok(x)
}

pub fn graph_from_json(text: &str) -> Result<Graph, GraphError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| GraphError::Parse("top level must be an object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| GraphError::Parse("missing or invalid \"n\"".into()))? as usize;
    let loops = match obj.get("loops") {
        None | Some(Value::Null) => false,
        Some(Value::Bool(b)) => *b,
        Some(other) => return Err(GraphError::Parse(format!("\"loops\" must be a boolean, got {other}"))),
    };
    let labels = match obj.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .map(|l| match l {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>(),
        ),
        Some(other) => return Err(GraphError::Parse(format!("\"labels\" must be an array, got {other}"))),
    };

    // every directed entry seen so far; conflicting entries are asymmetric input
    let mut entries: HashMap<(usize, usize), f64> = HashMap::new();
    let edges = match obj.get("edges") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(e)) => e.clone(),
        Some(other) => return Err(GraphError::Parse(format!("\"edges\" must be an array, got {other}"))),
    };
    for e in &edges {
        let items = e.as_array().ok_or_else(|| GraphError::Parse(format!("edge {e} is not an array")))?;
        if !(2..=3).contains(&items.len()) {
            return Err(GraphError::Parse(format!("edge {e} must be [u, v] or [u, v, w]")));
        }
        let u = parse_vertex(&items[0], n)?;
        let v = parse_vertex(&items[1], n)?;
        let w = match items.get(2) {
            None => 1.0,
            Some(x) => x.as_f64().ok_or_else(|| GraphError::Parse(format!("weight in {e} is not a number")))?,
        };
        if let Some(&prev) = entries.get(&(u, v)) {
            if prev != w {
                return Err(GraphError::Asymmetric { u, v, forward: prev, backward: w });
            }
        }
        entries.insert((u, v), w);
    }
    let mut dense = vec![0.0; n * n];
    for (&(u, v), &w) in &entries {
        if let Some(&back) = entries.get(&(v, u)) {
            if back != w {
                return Err(GraphError::Asymmetric { u, v, forward: w, backward: back });
            }
        }
        dense[u * n + v] = w;
        dense[v * n + u] = w;
    }
    Graph::from_dense(n, dense, loops, labels)
}

fn weight_value(w: f64) -> Value {
    if w.fract() == 0.0 && w.abs() < 9.0e15 {
        json!(w as i64)
    } else {
        json!(w)
    }
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g.edges().into_iter().map(|(u, v, w)| json!([u, v, weight_value(w)])).collect();
    json!({
        "n": g.n(),
        "edges": edges,
        "labels": g.labels(),
        "loops": g.loops_allowed(),
    })
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let text = std::fs::read_to_string(path)?;
    graph_from_json(&text)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    let text = serde_json::to_string_pretty(&graph_to_json(g)).expect("graph JSON serializes");
    std::fs::write(path, text + "\n")?;
    Ok(())
}
