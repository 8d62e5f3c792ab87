use serde_json::{json, Value};

use super::PartitionError;
use crate::graph::Graph;

/// Two vertex-disjoint copies `X_1`, `X_2` with the bijection
/// `f: copy1[i] -> copy2[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPair {
    copy1: Vec<usize>,
    copy2: Vec<usize>,
}

/// Outcome of [`verify_branch_pair`]. `diagnostics` names the first violated
/// condition with witness vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCheck {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl BranchPair {
    /// Pairs `copy1[i]` with `copy2[i]`. Structural checks happen in
    /// [`verify_branch_pair`].
    pub fn new(copy1: Vec<usize>, copy2: Vec<usize>) -> Self {
        BranchPair { copy1, copy2 }
    }

    pub fn from_map(f: &[(usize, usize)]) -> Self {
        BranchPair { copy1: f.iter().map(|p| p.0).collect(), copy2: f.iter().map(|p| p.1).collect() }
    }

    pub fn copy1(&self) -> &[usize] {
        &self.copy1
    }

    pub fn copy2(&self) -> &[usize] {
        &self.copy2
    }

    pub fn len(&self) -> usize {
        self.copy1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copy1.is_empty()
    }

    /// `f(a)` for `a` in copy 1.
    pub fn twin(&self, a: usize) -> Option<usize> {
        self.copy1.iter().position(|&x| x == a).map(|i| self.copy2[i])
    }

    /// `f` as `(a, f(a))` pairs.
    pub fn map(&self) -> Vec<(usize, usize)> {
        self.copy1.iter().copied().zip(self.copy2.iter().copied()).collect()
    }

    /// The involution swapping each `a` with `f(a)` and fixing everything
    /// else.
    pub fn switching_permutation(&self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for (&a, &b) in self.copy1.iter().zip(&self.copy2) {
            if a < n && b < n {
                p[a] = b;
                p[b] = a;
            }
        }
        p
    }

    /// Reads `{"copy1": [...], "copy2": [...], "f": [[a, fa], ...]}`.
    /// Vertices are ids (numbers) or labels (strings). When `f` is present it
    /// fixes the pairing and `copy1`/`copy2`, if given, must list the same
    /// sets; otherwise the copies are paired by position.
    pub fn from_json(text: &str, g: &Graph) -> Result<Self, PartitionError> {
        let v: Value = serde_json::from_str(text).map_err(|e| PartitionError::Parse(e.to_string()))?;
        let vertex = |x: &Value| -> Result<usize, PartitionError> {
            match x {
                Value::Number(k) => k
                    .as_u64()
                    .map(|k| k as usize)
                    .filter(|&k| k < g.n())
                    .ok_or_else(|| PartitionError::Parse(format!("vertex {k} out of range"))),
                Value::String(s) => g.vertex_by_label(s).ok_or_else(|| PartitionError::Parse(format!("unknown vertex label {s:?}"))),
                other => Err(PartitionError::Parse(format!("expected vertex id or label, found {other}"))),
            }
        };
        let list = |key: &str| -> Result<Option<Vec<usize>>, PartitionError> {
            match v.get(key) {
                None => Ok(None),
                Some(Value::Array(xs)) => xs.iter().map(vertex).collect::<Result<Vec<_>, _>>().map(Some),
                Some(_) => Err(PartitionError::Parse(format!("{key:?} must be an array"))),
            }
        };
        let c1 = list("copy1")?;
        let c2 = list("copy2")?;
        let bp = match v.get("f") {
            Some(Value::Array(pairs)) => {
                let mut f = Vec::with_capacity(pairs.len());
                for p in pairs {
                    match p.as_array().map(Vec::as_slice) {
                        Some([a, b]) => f.push((vertex(a)?, vertex(b)?)),
                        _ => return Err(PartitionError::Parse("each entry of \"f\" must be [a, f(a)]".into())),
                    }
                }
                let bp = BranchPair::from_map(&f);
                let same = |given: &Option<Vec<usize>>, have: &[usize]| {
                    given.as_ref().is_none_or(|x| {
                        let (mut x, mut y) = (x.clone(), have.to_vec());
                        x.sort_unstable();
                        y.sort_unstable();
                        x == y
                    })
                };
                if !same(&c1, bp.copy1()) || !same(&c2, bp.copy2()) {
                    return Err(PartitionError::Parse("\"copy1\"/\"copy2\" do not match the domain and range of \"f\"".into()));
                }
                bp
            }
            Some(_) => return Err(PartitionError::Parse("\"f\" must be an array".into())),
            None => match (c1, c2) {
                (Some(a), Some(b)) => BranchPair::new(a, b),
                _ => return Err(PartitionError::Parse("need \"f\" or both \"copy1\" and \"copy2\"".into())),
            },
        };
        Ok(bp)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "copy1": self.copy1,
            "copy2": self.copy2,
            "f": self.map().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }
}

fn fail(msg: String) -> BranchCheck {
    BranchCheck { valid: false, diagnostics: vec![msg] }
}

/// Checks that `bp` describes isomorphic branches of `g`: disjoint copies of
/// equal size, `f` an isomorphism of the induced subgraphs, no edges between
/// the copies, and identical wiring to the rest of the graph. Together these
/// make the switching permutation an automorphism.
pub fn verify_branch_pair(g: &Graph, bp: &BranchPair) -> BranchCheck {
    let n = g.n();
    let (c1, c2) = (bp.copy1(), bp.copy2());
    if c1.is_empty() {
        return fail("branch copies are empty".into());
    }
    if c1.len() != c2.len() {
        return fail(format!("copy sizes differ: {} vs {}", c1.len(), c2.len()));
    }
    let mut owner = vec![0u8; n];
    for (tag, copy) in [(1u8, c1), (2u8, c2)] {
        for &v in copy {
            if v >= n {
                return fail(format!("vertex {v} out of range"));
            }
            if owner[v] != 0 {
                return fail(format!("vertex {v} listed twice (copies must be disjoint)"));
            }
            owner[v] = tag;
        }
    }
    let lab = |v: usize| g.label(v).to_string();
    let pairs = bp.map();
    for &(a, fa) in &pairs {
        for &(b, fb) in &pairs {
            if g.weight(a, b) != g.weight(fa, fb) {
                return fail(format!(
                    "f is not an isomorphism: w({},{}) = {} but w({},{}) = {}",
                    lab(a),
                    lab(b),
                    g.weight(a, b),
                    lab(fa),
                    lab(fb),
                    g.weight(fa, fb)
                ));
            }
        }
    }
    for &a in c1 {
        for &b in c2 {
            if g.weight(a, b) != 0.0 {
                return fail(format!("cross-copy edge between {} and {}", lab(a), lab(b)));
            }
        }
    }
    for &(a, fa) in &pairs {
        for y in (0..n).filter(|&y| owner[y] == 0) {
            if g.weight(a, y) != g.weight(fa, y) {
                return fail(format!(
                    "wiring differs at outside vertex {}: w({},{}) = {} but w({},{}) = {}",
                    lab(y),
                    lab(a),
                    lab(y),
                    g.weight(a, y),
                    lab(fa),
                    lab(y),
                    g.weight(fa, y)
                ));
            }
        }
    }
    BranchCheck { valid: true, diagnostics: Vec::new() }
}
