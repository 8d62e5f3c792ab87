//! Named graph families with the conventional vertex labelling.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{cartesian_product, Graph, GraphBuilder, GraphError};

/// A named family member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `P_n`, labelled `1..n`.
    Path(usize),
    /// `C_n` on `Z_n`, `j ~ k` iff `j - k = +-1 (mod n)`.
    Cycle(usize),
    /// `K_n`, labelled `1..n`.
    Complete(usize),
    /// `K_{1,l}`: hub `0`, leaves `1..l`.
    Star(usize),
    /// Book graph `K_{1,l} [] P_2`: spine `u`, `v`, pages `a_k - b_k`.
    Book(usize),
    /// `Cay(Z_{m_1} x ... x Z_{m_r}, S)`.
    CayleyAbelian { orders: Vec<usize>, connection_set: Vec<Vec<i64>> },
    /// `K_n` with the edges of vertex-disjoint 4-cycles `[a, b, c, d]`
    /// (0-based, edges `ab, bc, cd, da`) removed.
    CompleteMinusC4s { n: usize, cycles: Vec<[usize; 4]> },
}

impl FamilySpec {
    /// Cayley spec whose connection set is closed under negation.
    pub fn cayley_symmetrized(orders: Vec<usize>, generators: Vec<Vec<i64>>) -> Self {
        let mut set = BTreeSet::new();
        for g in generators {
            let pos: Vec<i64> = g.iter().zip(&orders).map(|(&x, &m)| x.rem_euclid(m as i64)).collect();
            let neg: Vec<i64> = g.iter().zip(&orders).map(|(&x, &m)| (-x).rem_euclid(m as i64)).collect();
            set.insert(pos);
            set.insert(neg);
        }
        FamilySpec::CayleyAbelian { orders, connection_set: set.into_iter().collect() }
    }

    /// Generators of a subgroup of the automorphism group that the family
    /// is known to carry. Used to feed the structural obstruction checks.
    pub fn automorphism_generators(&self) -> Vec<Vec<usize>> {
        match self {
            FamilySpec::Path(n) => vec![(0..*n).rev().collect()],
            FamilySpec::Cycle(n) => {
                let n = *n;
                vec![(0..n).map(|j| (j + 1) % n).collect(), (0..n).map(|j| (n - j) % n).collect()]
            }
            FamilySpec::Complete(n) if *n >= 2 => {
                let n = *n;
                let mut swap: Vec<usize> = (0..n).collect();
                swap.swap(0, 1);
                vec![swap, (0..n).map(|j| (j + 1) % n).collect()]
            }
            FamilySpec::CayleyAbelian { orders, .. } => {
                let total: usize = orders.iter().product();
                let coords = |v: usize| cayley_coords(v, orders);
                let index = |c: &[i64]| cayley_index(c, orders);
                let mut gens = vec![(0..total)
                    .map(|v| index(&coords(v).iter().map(|x| -x).collect::<Vec<_>>()))
                    .collect::<Vec<_>>()];
                for axis in 0..orders.len() {
                    gens.push(
                        (0..total)
                            .map(|v| {
                                let mut c = coords(v);
                                c[axis] += 1;
                                index(&c)
                            })
                            .collect(),
                    );
                }
                gens
            }
            _ => Vec::new(),
        }
    }
}

pub(crate) fn cayley_coords(mut v: usize, orders: &[usize]) -> Vec<i64> {
    let mut c = vec![0i64; orders.len()];
    for (slot, &m) in c.iter_mut().zip(orders).rev() {
        *slot = (v % m) as i64;
        v /= m;
    }
    c
}

pub(crate) fn cayley_index(c: &[i64], orders: &[usize]) -> usize {
    c.iter().zip(orders).fold(0usize, |acc, (&x, &m)| acc * m + x.rem_euclid(m as i64) as usize)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::InvalidSpec(msg()))
    }
}

/// Builds the simple graph described by `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<Graph, GraphError> {
    match spec {
        FamilySpec::Path(n) => {
            let n = *n;
            require(n >= 1, || "path needs at least one vertex".into())?;
            let edges: Vec<_> = (1..n).map(|j| (j - 1, j)).collect();
            GraphBuilder::new(n).labels((1..=n).map(|j| j.to_string())).edges(&edges)?.build()
        }
        FamilySpec::Cycle(n) => {
            let n = *n;
            require(n >= 3, || format!("cycle needs at least 3 vertices, got {n}"))?;
            let edges: Vec<_> = (0..n).map(|j| (j, (j + 1) % n)).collect();
            GraphBuilder::new(n).labels((0..n).map(|j| j.to_string())).edges(&edges)?.build()
        }
        FamilySpec::Complete(n) => {
            let n = *n;
            require(n >= 1, || "complete graph needs at least one vertex".into())?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            GraphBuilder::new(n).labels((1..=n).map(|j| j.to_string())).edges(&edges)?.build()
        }
        FamilySpec::Star(l) => {
            let l = *l;
            require(l >= 1, || "star needs at least one leaf".into())?;
            let edges: Vec<_> = (1..=l).map(|j| (0, j)).collect();
            GraphBuilder::new(l + 1).labels((0..=l).map(|j| j.to_string())).edges(&edges)?.build()
        }
        FamilySpec::Book(l) => {
            let l = *l;
            let star = build_family(&FamilySpec::Star(l))?;
            let p2 = build_family(&FamilySpec::Path(2))?;
            // product vertex (s, p) has id 2s + p: hub row gives u, v; leaf k gives a_k, b_k
            let book = cartesian_product(&star, &p2);
            let mut labels = vec!["u".to_string(), "v".to_string()];
            for k in 1..=l {
                labels.push(format!("a{k}"));
                labels.push(format!("b{k}"));
            }
            book.with_labels(labels)
        }
        FamilySpec::CayleyAbelian { orders, connection_set } => build_cayley(orders, connection_set),
        FamilySpec::CompleteMinusC4s { n, cycles } => {
            let n = *n;
            let mut used = BTreeSet::new();
            for cyc in cycles {
                for &v in cyc {
                    require(v < n, || format!("4-cycle vertex {v} out of range for K_{n}"))?;
                    require(used.insert(v), || format!("4-cycles are not vertex-disjoint (vertex {v} repeated)"))?;
                }
            }
            let mut b = GraphBuilder::new(n).labels((1..=n).map(|j| j.to_string()));
            for u in 0..n {
                for v in u + 1..n {
                    b.set_edge(u, v, 1.0)?;
                }
            }
            for cyc in cycles {
                for i in 0..4 {
                    b.set_edge(cyc[i], cyc[(i + 1) % 4], 0.0)?;
                }
            }
            b.build()
        }
    }
}

fn build_cayley(orders: &[usize], connection_set: &[Vec<i64>]) -> Result<Graph, GraphError> {
    require(!orders.is_empty() && orders.iter().all(|&m| m >= 1), || "group orders must be positive".into())?;
    let reduce = |s: &[i64], sign: i64| -> Vec<i64> {
        s.iter().zip(orders).map(|(&x, &m)| (sign * x).rem_euclid(m as i64)).collect()
    };
    let mut set = BTreeSet::new();
    for s in connection_set {
        require(s.len() == orders.len(), || format!("element {s:?} has wrong arity for orders {orders:?}"))?;
        let r = reduce(s, 1);
        require(r.iter().any(|&x| x != 0), || "connection set contains the identity".into())?;
        set.insert(r);
    }
    for s in &set {
        let neg = reduce(s, -1);
        require(set.contains(&neg), || format!("connection set is not closed under negation: {s:?} lacks {neg:?}"))?;
    }
    let total: usize = orders.iter().product();
    let labels = (0..total).map(|v| {
        let c = cayley_coords(v, orders);
        format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    });
    let mut b = GraphBuilder::new(total).labels(labels);
    for a in 0..total {
        let ca = cayley_coords(a, orders);
        for s in &set {
            let sum: Vec<i64> = ca.iter().zip(s).map(|(x, y)| x + y).collect();
            b.set_edge(a, cayley_index(&sum, orders), 1.0)?;
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_two_is_single_edge() {
        let g = build_family(&FamilySpec::Path(2)).unwrap();
        assert_eq!(g.edges(), vec![(0, 1, 1.0)]);
        assert_eq!(g.labels(), &["1".to_string(), "2".to_string()]);
    }

    #[test]
    fn cycle_adjacency_is_plus_minus_one() {
        let g = build_family(&FamilySpec::Cycle(6)).unwrap();
        assert_eq!(g.as_cycle(), Some(6));
        assert_eq!(g.label(0), "0");
        assert!(build_family(&FamilySpec::Cycle(2)).is_err());
    }

    #[test]
    fn cayley_brute_force_adjacency_and_regularity() {
        let s = vec![vec![0, 1], vec![0, -1], vec![1, 0], vec![-1, 0], vec![1, 2], vec![-1, 2], vec![2, 0], vec![-2, 0]];
        let spec = FamilySpec::CayleyAbelian { orders: vec![8, 4], connection_set: s.clone() };
        let g = build_family(&spec).unwrap();
        assert_eq!(g.n(), 32);
        let reduced: BTreeSet<(i64, i64)> = s.iter().map(|x| (x[0].rem_euclid(8), x[1].rem_euclid(4))).collect();
        assert_eq!(reduced.len(), 8);
        for a in 0..32 {
            assert_eq!(g.degree(a), 8.0);
            for b in 0..32 {
                let (ja, ka) = ((a / 4) as i64, (a % 4) as i64);
                let (jb, kb) = ((b / 4) as i64, (b % 4) as i64);
                let diff = ((ja - jb).rem_euclid(8), (ka - kb).rem_euclid(4));
                assert_eq!(g.weight(a, b) == 1.0, reduced.contains(&diff), "pair ({a},{b})");
            }
        }
        assert_eq!(g.label(6), "(1,2)");
    }

    #[test]
    fn cayley_rejects_asymmetric_connection_set() {
        let spec = FamilySpec::CayleyAbelian { orders: vec![5], connection_set: vec![vec![1]] };
        assert!(matches!(build_family(&spec), Err(GraphError::InvalidSpec(_))));
        let sym = FamilySpec::cayley_symmetrized(vec![5], vec![vec![1]]);
        assert_eq!(build_family(&sym).unwrap().as_cycle(), Some(5));
    }

    #[test]
    fn complete_minus_overlapping_c4s_is_invalid() {
        let spec = FamilySpec::CompleteMinusC4s { n: 7, cycles: vec![[0, 1, 2, 3], [3, 4, 5, 6]] };
        assert!(build_family(&spec).is_err());
        let ok = FamilySpec::CompleteMinusC4s { n: 8, cycles: vec![[0, 1, 2, 3], [4, 5, 6, 7]] };
        let g = build_family(&ok).unwrap();
        assert_eq!(g.edge_count(), 28 - 8);
        assert_eq!(g.weight(0, 2), 1.0);
        assert_eq!(g.weight(0, 1), 0.0);
    }

    #[test]
    fn book_graph_labels_and_size() {
        let g = build_family(&FamilySpec::Book(3)).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 3 + 3 + 4);
        let u = g.vertex_by_label("u").unwrap();
        let a1 = g.vertex_by_label("a1").unwrap();
        let b1 = g.vertex_by_label("b1").unwrap();
        assert_eq!(g.weight(u, a1), 1.0);
        assert_eq!(g.weight(a1, b1), 1.0);
    }

    #[test]
    fn family_automorphisms_are_automorphisms() {
        for spec in [
            FamilySpec::Path(6),
            FamilySpec::Cycle(7),
            FamilySpec::Complete(5),
            FamilySpec::cayley_symmetrized(vec![3, 5], vec![vec![1, 0], vec![0, 2]]),
        ] {
            let g = build_family(&spec).unwrap();
            for p in spec.automorphism_generators() {
                assert!(g.is_automorphism(&p), "{spec:?}");
            }
        }
    }
}
