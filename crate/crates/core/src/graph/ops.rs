//! Graph composition operators.

use std::collections::HashSet;

use super::{Graph, GraphError};
use crate::partition::BranchPair;

/// Dense weights of `g` copied into the block starting at `offset` of an
/// `n`-vertex buffer.
fn embed(buf: &mut [f64], n: usize, g: &Graph, offset: usize) {
    for u in 0..g.n() {
        for v in 0..g.n() {
            buf[(offset + u) * n + offset + v] = g.weight(u, v);
        }
    }
}

/// Labels of `h` made distinct from `taken` by appending primes.
fn fresh_labels(taken: &[String], h: &Graph) -> Vec<String> {
    let mut seen: HashSet<String> = taken.iter().cloned().collect();
    h.labels()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            while seen.contains(&l) {
                l.push('\'');
            }
            seen.insert(l.clone());
            l
        })
        .collect()
}

/// `g [] h` on `V(g) x V(h)`; vertex `(a, x)` has id `a * |V(h)| + x`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.n(), h.n());
    let n = ng * nh;
    let mut w = vec![0.0; n * n];
    for a in 0..ng {
        for x in 0..nh {
            let i = a * nh + x;
            for y in 0..nh {
                if y != x {
                    w[i * n + a * nh + y] = h.weight(x, y);
                }
            }
            for b in 0..ng {
                if b != a {
                    w[i * n + b * nh + x] = g.weight(a, b);
                }
            }
            // loops survive from both factors
            w[i * n + i] = g.weight(a, a) + h.weight(x, x);
        }
    }
    let mut labels = Vec::with_capacity(n);
    for a in 0..ng {
        for x in 0..nh {
            labels.push(format!("({},{})", g.label(a), h.label(x)));
        }
    }
    Graph::from_dense(n, w, g.loops_allowed() || h.loops_allowed(), Some(labels)).expect("product of valid graphs")
}

fn union_with(g: &Graph, h: &Graph, cross: f64) -> Graph {
    let (ng, nh) = (g.n(), h.n());
    let n = ng + nh;
    let mut w = vec![0.0; n * n];
    embed(&mut w, n, g, 0);
    embed(&mut w, n, h, ng);
    if cross != 0.0 {
        for a in 0..ng {
            for x in ng..n {
                w[a * n + x] = cross;
                w[x * n + a] = cross;
            }
        }
    }
    let mut labels = g.labels().to_vec();
    labels.extend(fresh_labels(g.labels(), h));
    Graph::from_dense(n, w, g.loops_allowed() || h.loops_allowed(), Some(labels)).expect("union of valid graphs")
}

/// Disjoint union; the vertices of `h` follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    union_with(g, h, 0.0)
}

/// `g + h`: disjoint union plus every edge between `V(g)` and `V(h)` with
/// weight 1.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    union_with(g, h, 1.0)
}

/// `g o h`: one copy of `g` and `|V(g)|` copies of `h`, the i-th vertex of
/// `g` joined to every vertex of the i-th copy. Copy `i` occupies ids
/// `ng + i * nh .. ng + (i + 1) * nh`.
pub fn corona(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.n(), h.n());
    let n = ng + ng * nh;
    let mut w = vec![0.0; n * n];
    embed(&mut w, n, g, 0);
    let mut labels = g.labels().to_vec();
    for i in 0..ng {
        let off = ng + i * nh;
        embed(&mut w, n, h, off);
        for x in off..off + nh {
            w[i * n + x] = 1.0;
            w[x * n + i] = 1.0;
        }
        labels.extend(h.labels().iter().map(|l| format!("{}@{}", l, g.label(i))));
    }
    Graph::from_dense(n, w, g.loops_allowed() || h.loops_allowed(), Some(labels)).expect("corona of valid graphs")
}

/// Wires two copies of `x1` identically to `host`.
///
/// `attach` lists `(a, y, w)`: vertex `a` of `x1` joins host vertex `y` with
/// weight `w`, and so does its twin in the second copy. The result has the
/// host on ids `0..nh`, copy 1 on `nh..nh+n1` and copy 2 on
/// `nh+n1..nh+2*n1`; the returned [`BranchPair`] maps each copy-1 vertex to
/// its twin. An empty host is accepted and yields a disconnected graph.
pub fn attach_branches(host: &Graph, x1: &Graph, attach: &[(usize, usize, f64)]) -> Result<(Graph, BranchPair), GraphError> {
    let (nh, n1) = (host.n(), x1.n());
    let n = nh + 2 * n1;
    let mut w = vec![0.0; n * n];
    embed(&mut w, n, host, 0);
    embed(&mut w, n, x1, nh);
    embed(&mut w, n, x1, nh + n1);
    let mut seen = HashSet::new();
    for &(a, y, wt) in attach {
        if a >= n1 {
            return Err(GraphError::Attachment(format!("branch vertex {a} out of range (branch has {n1} vertices)")));
        }
        if y >= nh {
            return Err(GraphError::Attachment(format!("host vertex {y} out of range (host has {nh} vertices)")));
        }
        if !wt.is_finite() {
            return Err(GraphError::Attachment(format!("non-finite weight on ({a},{y})")));
        }
        if !seen.insert((a, y)) {
            return Err(GraphError::Attachment(format!("pair ({a},{y}) listed twice")));
        }
        for copy in [nh + a, nh + n1 + a] {
            w[copy * n + y] = wt;
            w[y * n + copy] = wt;
        }
    }
    let mut labels = host.labels().to_vec();
    labels.extend(x1.labels().iter().map(|l| format!("{l}_1")));
    labels.extend(x1.labels().iter().map(|l| format!("{l}_2")));
    let g = Graph::from_dense(n, w, host.loops_allowed() || x1.loops_allowed(), Some(labels))?;
    let copy1: Vec<usize> = (nh..nh + n1).collect();
    let copy2: Vec<usize> = (nh + n1..n).collect();
    Ok((g, BranchPair::new(copy1, copy2)))
}
