//! Weighted undirected graphs.
//!
//! A [`Graph`] is immutable once built. Vertices are `0..n`; display labels
//! (1-indexed for paths, `Z_n` residues for cycles, tuples for Cayley graphs)
//! live in a separate label table so matrix indexing stays contiguous.

mod families;
mod io;
mod ops;

use nalgebra::DMatrix;
use thiserror::Error;

pub use families::{build_family, FamilySpec};
pub use io::{graph_from_json, graph_to_json, read_graph, write_graph};
pub use ops::{attach_branches, cartesian_product, corona, disjoint_union, join};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("asymmetric weight: w({u},{v}) = {forward} but w({v},{u}) = {backward}")]
    Asymmetric { u: usize, v: usize, forward: f64, backward: f64 },
    #[error("self-loop at vertex {0} but loops are not enabled")]
    SelfLoop(usize),
    #[error("non-finite weight on ({u},{v})")]
    NonFinite { u: usize, v: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("malformed graph file: {0}")]
    Parse(String),
    #[error("malformed branch attachment: {0}")]
    Attachment(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Integers up to this magnitude are exactly representable as `f64`.
const EXACT_INT_LIMIT: f64 = 9.007_199_254_740_992e15;

fn is_exact_integer(w: f64) -> bool {
    w.fract() == 0.0 && w.abs() <= EXACT_INT_LIMIT
}

/// Weighted undirected graph with a symmetric weight function.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    weights: Vec<f64>,
    labels: Vec<String>,
    loops: bool,
    integer_weighted: bool,
}

impl Graph {
    /// Builds a graph from a dense row-major weight matrix, checking symmetry,
    /// finiteness and the loop policy.
    pub fn from_dense(n: usize, weights: Vec<f64>, loops: bool, labels: Option<Vec<String>>) -> Result<Self, GraphError> {
        assert_eq!(weights.len(), n * n, "dense weight matrix must be n*n");
        for u in 0..n {
            for v in u..n {
                let forward = weights[u * n + v];
                let backward = weights[v * n + u];
                if !forward.is_finite() || !backward.is_finite() {
                    return Err(GraphError::NonFinite { u, v });
                }
                if forward != backward {
                    return Err(GraphError::Asymmetric { u, v, forward, backward });
                }
            }
            if !loops && weights[u * n + u] != 0.0 {
                return Err(GraphError::SelfLoop(u));
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(GraphError::LabelCount { expected: n, found: l.len() }),
            Some(l) => l,
            None => (0..n).map(|v| v.to_string()).collect(),
        };
        let integer_weighted = weights.iter().all(|&w| is_exact_integer(w));
        Ok(Graph { n, weights, labels, loops, integer_weighted })
    }

    /// The graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph::from_dense(n, vec![0.0; n * n], false, None).expect("empty graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[u * self.n + v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// First vertex carrying `label`.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops
    }

    /// True iff every weight is an integer exactly representable in `f64`.
    pub fn is_integer_weighted(&self) -> bool {
        self.integer_weighted
    }

    /// True iff all weights are 0 or 1 and there are no loops.
    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|u| self.weight(u, u) == 0.0)
            && self.weights.iter().all(|&w| w == 0.0 || w == 1.0)
    }

    pub fn adjacency(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n, self.n, &self.weights)
    }

    /// Integer adjacency matrix (row-major) for integer-weighted graphs.
    pub fn integer_adjacency(&self) -> Option<Vec<i64>> {
        self.integer_weighted.then(|| self.weights.iter().map(|&w| w as i64).collect())
    }

    /// Edges `(u, v, w)` with `u <= v` and `w != 0`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                let w = self.weight(u, v);
                if w != 0.0 {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.weight(v, u) != 0.0).collect()
    }

    /// Weighted degree `sum_u w(v, u)`.
    pub fn degree(&self, v: usize) -> f64 {
        self.weights[v * self.n..(v + 1) * self.n].iter().sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks `w(a, b) = w(p(a), p(b))` for all vertex pairs, which is
    /// `P^T A P = A` for the permutation matrix of `perm`.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || hit[p] {
                return false;
            }
            hit[p] = true;
        }
        (0..self.n).all(|a| (0..self.n).all(|b| self.weight(a, b) == self.weight(perm[a], perm[b])))
    }

    /// Induced subgraph on `vertices`, relabelled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut w = vec![0.0; k * k];
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                w[i * k + j] = self.weight(a, b);
            }
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::from_dense(k, w, self.loops, Some(labels)).expect("induced subgraph of a valid graph")
    }

    /// Returns a copy with replaced display labels.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount { expected: self.n, found: labels.len() });
        }
        Ok(Graph { labels, ..self.clone() })
    }

    /// `Some(n)` if this is exactly the simple path `0 - 1 - ... - (n-1)` on
    /// internal IDs.
    pub fn as_path(&self) -> Option<usize> {
        let n = self.n;
        if n == 0 || !self.is_simple() {
            return None;
        }
        let ok = (0..n).all(|u| (0..n).all(|v| (self.weight(u, v) == 1.0) == (u.abs_diff(v) == 1)));
        ok.then_some(n)
    }

    /// `Some(n)` if this is exactly the cycle `j ~ j +- 1 (mod n)` on internal
    /// IDs, `n >= 3`.
    pub fn as_cycle(&self) -> Option<usize> {
        let n = self.n;
        if n < 3 || !self.is_simple() {
            return None;
        }
        let ok = (0..n).all(|u| {
            (0..n).all(|v| {
                let d = u.abs_diff(v);
                (self.weight(u, v) == 1.0) == (d == 1 || d == n - 1)
            })
        });
        ok.then_some(n)
    }
}

/// Incremental construction of a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    weights: Vec<f64>,
    labels: Option<Vec<String>>,
    loops: bool,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { n, weights: vec![0.0; n * n], labels: None, loops: false }
    }

    pub fn loops(mut self, allowed: bool) -> Self {
        self.loops = allowed;
        self
    }

    pub fn labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        self.labels = Some(labels.into_iter().map(Into::into).collect());
        self
    }

    /// Sets `w(u, v) = w(v, u) = w`.
    pub fn edge(mut self, u: usize, v: usize, w: f64) -> Result<Self, GraphError> {
        self.set_edge(u, v, w)?;
        Ok(self)
    }

    pub fn set_edge(&mut self, u: usize, v: usize, w: f64) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        self.weights[u * self.n + v] = w;
        self.weights[v * self.n + u] = w;
        Ok(())
    }

    /// Adds unit-weight edges.
    pub fn edges(mut self, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for &(u, v) in edges {
            self.set_edge(u, v, 1.0)?;
        }
        Ok(self)
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        Graph::from_dense(self.n, self.weights, self.loops, self.labels)
    }
}
