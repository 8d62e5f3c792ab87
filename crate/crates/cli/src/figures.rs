//! Worked example graphs with their branch pairs and expected transfers.

use anyhow::Result;
use qwalk::{BranchPair, Graph, GraphBuilder};

/// A labelled example: the graph, branch pairs, and pair transfers
/// `(a,b) -> (c,d)` given by label that it is known to carry.
pub struct Example {
    pub name: String,
    pub graph: Graph,
    pub branches: Vec<BranchPair>,
    pub transfers: Vec<[&'static str; 4]>,
}

fn numbered(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Ok(GraphBuilder::new(n).labels((1..=n).map(|j| j.to_string())).edges(&e)?.build()?)
}

fn by_label(g: &Graph, pairs: &[(&str, &str)]) -> BranchPair {
    let id = |l: &str| g.vertex_by_label(l).expect("example label");
    BranchPair::from_map(&pairs.iter().map(|&(a, b)| (id(a), id(b))).collect::<Vec<_>>())
}

/// `P_5` read as a host vertex `u` with two pendant copies of `P_2`.
pub fn figure1() -> Result<Example> {
    let g = GraphBuilder::new(5).labels(["a", "b", "u", "d", "c"]).edges(&[(0, 1), (1, 2), (2, 3), (3, 4)])?.build()?;
    let bp = by_label(&g, &[("a", "c"), ("b", "d")]);
    Ok(Example { name: "figure1".into(), graph: g, branches: vec![bp], transfers: vec![["a", "c", "b", "d"]] })
}

/// Twelve-vertex graph with two branch pairs.
pub fn figure2() -> Result<Example> {
    let edges = [
        (1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (3, 6), (6, 4), (4, 10), (10, 11), (11, 12), (6, 2), (2, 7), (7, 8), (8, 9),
        (2, 5), (5, 4),
    ];
    let g = numbered(12, &edges)?;
    let small = by_label(&g, &[("1", "3"), ("5", "6")]);
    let large = by_label(&g, &[("2", "4"), ("7", "10"), ("8", "11"), ("9", "12")]);
    Ok(Example {
        name: "figure2".into(),
        graph: g,
        branches: vec![small, large],
        transfers: vec![["1", "3", "5", "6"], ["2", "4", "9", "12"]],
    })
}

/// Paths and cycles on `1..=n` with extra edges.
fn variant(name: &str, n: usize, cycle: bool, extra: &[(usize, usize)], abcd: [&'static str; 4]) -> Result<Example> {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|j| (j, j + 1)).collect();
    if cycle {
        edges.push((n, 1));
    }
    edges.extend_from_slice(extra);
    let g = numbered(n, &edges)?;
    let [a, b, c, d] = abcd;
    let bp = by_label(&g, &[(a, b), (c, d)]);
    Ok(Example { name: name.into(), graph: g, branches: vec![bp], transfers: vec![[a, b, c, d]] })
}

/// `P_6` with edges added, each keeping a pair transfer.
pub fn p6_edges() -> Result<Vec<Example>> {
    Ok(vec![
        variant("p6-edges-1", 6, false, &[(1, 6)], ["2", "6", "3", "5"])?,
        variant("p6-edges-2", 6, false, &[(3, 5), (2, 4)], ["1", "6", "2", "5"])?,
        variant("p6-edges-3", 6, false, &[(1, 5), (2, 4), (4, 6)], ["2", "5", "3", "6"])?,
    ])
}

/// `C_10` with chords, each keeping a pair transfer.
pub fn c10_edges() -> Result<Vec<Example>> {
    Ok(vec![
        variant("c10-edges-1", 10, true, &[(3, 8), (4, 9)], ["5", "7", "4", "8"])?,
        variant("c10-edges-2", 10, true, &[(3, 9), (4, 10), (5, 7), (6, 8)], ["5", "8", "4", "9"])?,
    ])
}

/// Four 6-cycles `c - x - a - y - b - z`, with `u ~ a1, a2`, `v ~ a3, a4` and
/// `w ~ u, v`. The branch pairs are `{C1, C2, u} / {C3, C4, v}` and
/// `C1 / C2`.
pub fn figure4() -> Result<Example> {
    let ring = ["c", "x", "a", "y", "b", "z"];
    let mut labels = Vec::new();
    for k in 1..=4 {
        labels.extend(ring.iter().map(|r| format!("{r}{k}")));
    }
    labels.extend(["u", "v", "w"].map(String::from));
    let mut b = GraphBuilder::new(27).labels(labels);
    for k in 0..4 {
        for j in 0..6 {
            b = b.edge(6 * k + j, 6 * k + (j + 1) % 6, 1.0)?;
        }
    }
    let a = |k: usize| 6 * (k - 1) + 2;
    let (u, v, w) = (24, 25, 26);
    for (x, y) in [(u, a(1)), (u, a(2)), (v, a(3)), (v, a(4)), (w, u), (w, v)] {
        b = b.edge(x, y, 1.0)?;
    }
    let g = b.build()?;
    let outer: Vec<(usize, usize)> = (0..12).map(|j| (j, j + 12)).chain([(u, v)]).collect();
    let inner: Vec<(usize, usize)> = (0..6).map(|j| (j, j + 6)).collect();
    Ok(Example {
        name: "figure4".into(),
        graph: g,
        branches: vec![BranchPair::from_map(&outer), BranchPair::from_map(&inner)],
        transfers: Vec::new(),
    })
}
