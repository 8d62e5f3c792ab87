use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::PartitionError;
use crate::graph::Graph;

/// Equitable partition with its symmetrized quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct EquitablePartition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
    /// `c_jk`: weight from any vertex of cell `j` into cell `k`.
    divisor: DMatrix<f64>,
}

/// Weighted sum as a hashable key: exact for integer weights, else rounded
/// to 12 decimals.
fn sum_key(x: f64, exact: bool) -> i128 {
    if exact {
        x as i128
    } else {
        (x * 1e12).round() as i128
    }
}

fn check_seed(n: usize, seed: &[Vec<usize>]) -> Result<Vec<usize>, PartitionError> {
    let mut color = vec![usize::MAX; n];
    for (j, cell) in seed.iter().enumerate() {
        if cell.is_empty() {
            return Err(PartitionError::InvalidSeed(format!("cell {j} is empty")));
        }
        for &v in cell {
            if v >= n {
                return Err(PartitionError::InvalidSeed(format!("vertex {v} out of range")));
            }
            if color[v] != usize::MAX {
                return Err(PartitionError::InvalidSeed(format!("vertex {v} appears in two cells")));
            }
            color[v] = j;
        }
    }
    if let Some(v) = color.iter().position(|&c| c == usize::MAX) {
        return Err(PartitionError::InvalidSeed(format!("vertex {v} is in no cell")));
    }
    Ok(color)
}

/// Cells `{v, p(v), p(p(v)), ...}` of a permutation.
pub fn orbit_partition(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cells = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let mut cell = Vec::new();
        let mut u = v;
        while !seen[u] {
            seen[u] = true;
            cell.push(u);
            u = perm[u];
        }
        cell.sort_unstable();
        cells.push(cell);
    }
    cells
}

/// Coarsest equitable refinement of `seed` (a single cell when `None`).
///
/// Each round splits every cell by the signature (own cell, weight into
/// each cell); it stops when a round creates no new cell, after at most `n`
/// rounds. Cells come out sorted by their smallest vertex.
pub fn refine_equitable(g: &Graph, seed: Option<&[Vec<usize>]>) -> Result<EquitablePartition, PartitionError> {
    let n = g.n();
    let mut color = match seed {
        Some(cells) => check_seed(n, cells)?,
        None => vec![0; n],
    };
    let exact = g.is_integer_weighted();
    let mut count = color.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: BTreeMap<(usize, Vec<(usize, i128)>), usize> = BTreeMap::new();
        let mut next = vec![0; n];
        for v in 0..n {
            let mut sums: BTreeMap<usize, f64> = BTreeMap::new();
            for (u, &cu) in color.iter().enumerate() {
                let w = g.weight(v, u);
                if w != 0.0 {
                    *sums.entry(cu).or_insert(0.0) += w;
                }
            }
            let sig: Vec<(usize, i128)> =
                sums.into_iter().map(|(c, s)| (c, sum_key(s, exact))).filter(|&(_, k)| k != 0).collect();
            let fresh = ids.len();
            next[v] = *ids.entry((color[v], sig)).or_insert(fresh);
        }
        let new_count = ids.len();
        color = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    Ok(EquitablePartition::from_colors(g, &color))
}

impl EquitablePartition {
    fn from_colors(g: &Graph, color: &[usize]) -> Self {
        let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &c) in color.iter().enumerate() {
            by_color.entry(c).or_default().push(v);
        }
        let mut cells: Vec<Vec<usize>> = by_color.into_values().collect();
        cells.sort_by_key(|c| c[0]);
        let mut cell_of = vec![0; g.n()];
        for (j, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = j;
            }
        }
        let d = cells.len();
        let mut divisor = DMatrix::zeros(d, d);
        for (j, cell) in cells.iter().enumerate() {
            let a = cell[0];
            for (k, other) in cells.iter().enumerate() {
                divisor[(j, k)] = other.iter().map(|&b| g.weight(a, b)).sum();
            }
        }
        EquitablePartition { cells, cell_of, divisor }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    /// `c_jk`.
    pub fn cell_sum(&self, j: usize, k: usize) -> f64 {
        self.divisor[(j, k)]
    }

    /// `(A_Pi)_jk = sign(c_jk) sqrt(c_jk c_kj)`.
    pub fn quotient(&self) -> DMatrix<f64> {
        let d = self.len();
        DMatrix::from_fn(d, d, |j, k| {
            let (x, y) = (self.divisor[(j, k)], self.divisor[(k, j)]);
            x.signum() * (x * y).abs().sqrt() * f64::from(u8::from(x != 0.0))
        })
    }

    /// The quotient as a (possibly looped) weighted graph.
    pub fn quotient_graph(&self) -> Graph {
        let d = self.len();
        let q = self.quotient();
        let w: Vec<f64> = (0..d).flat_map(|j| (0..d).map(move |k| (j, k))).map(|(j, k)| q[(j, k)]).collect();
        let labels = (0..d).map(|j| format!("cell{j}")).collect();
        Graph::from_dense(d, w, true, Some(labels)).expect("symmetrized quotient is symmetric")
    }

    /// `n x d` matrix whose column `j` is the unit indicator of cell `j`.
    pub fn characteristic_matrix(&self) -> DMatrix<f64> {
        let n = self.cell_of.len();
        let mut c = DMatrix::zeros(n, self.len());
        for (j, cell) in self.cells.iter().enumerate() {
            let x = 1.0 / (cell.len() as f64).sqrt();
            for &v in cell {
                c[(v, j)] = x;
            }
        }
        c
    }

    /// Largest violation of the constant cell-sum condition.
    pub fn equitability_defect(&self, g: &Graph) -> f64 {
        let mut worst = 0.0f64;
        for (j, cell) in self.cells.iter().enumerate() {
            for &a in cell {
                for (k, other) in self.cells.iter().enumerate() {
                    let s: f64 = other.iter().map(|&b| g.weight(a, b)).sum();
                    worst = worst.max((s - self.divisor[(j, k)]).abs());
                }
            }
        }
        worst
    }
}
