//! Equitable partitions, quotients and the isomorphic-branch decomposition.

mod branch;
mod equitable;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::exec::Exec;
use crate::graph::{attach_branches, Graph, GraphError};
use crate::spectral::{analyze, SpectralData, SpectralError};
use crate::transfer::{certify_pst, evolve_vector, transition_matrix, QuantumState, TransferCertificate, TransferError, CERTIFY_FIDELITY};

pub use branch::{verify_branch_pair, BranchCheck, BranchPair};
pub use equitable::{orbit_partition, refine_equitable, EquitablePartition};

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("invalid seed partition: {0}")]
    InvalidSeed(String),
    #[error("invalid branches: {0}")]
    InvalidBranches(String),
    #[error("branch has no perfect state transfer between the given states ({0})")]
    BranchLacksPst(String),
    #[error("branch file: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

/// The orthogonal change of basis and the two blocks it separates.
#[derive(Debug, Clone)]
pub struct BranchDecomposition {
    /// Columns: `(e_a - e_f(a)) / sqrt(2)` for `a` in copy 1 by ascending
    /// id, then the unit indicators of the quotient cells.
    pub q: DMatrix<f64>,
    /// Copy-1 vertices in the order used by `q` and `x1`.
    pub copy1_order: Vec<usize>,
    pub x1: Graph,
    pub partition: EquitablePartition,
    pub quotient: Graph,
}

/// Per-time deviation `max |Q^T U_G(t) Q - diag(U_X1(t), U_quot(t))|`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCheck {
    pub times: Vec<f64>,
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub cells: Vec<Vec<usize>>,
}

/// Builds `Q`, the branch `X_1` and the quotient by the orbits of the
/// switching permutation (refined to equitability, which leaves an orbit
/// partition unchanged).
pub fn branch_decomposition(g: &Graph, bp: &BranchPair) -> Result<BranchDecomposition, PartitionError> {
    let check = verify_branch_pair(g, bp);
    if !check.valid {
        return Err(PartitionError::InvalidBranches(check.diagnostics.join("; ")));
    }
    let n = g.n();
    let mut pairs = bp.map();
    pairs.sort_unstable();
    let copy1_order: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let seed = orbit_partition(&bp.switching_permutation(n));
    let partition = refine_equitable(g, Some(&seed))?;
    let m = pairs.len();
    let c = partition.characteristic_matrix();
    let r = 1.0 / 2f64.sqrt();
    let mut q = DMatrix::zeros(n, m + partition.len());
    for (i, &(a, fa)) in pairs.iter().enumerate() {
        q[(a, i)] = r;
        q[(fa, i)] = -r;
    }
    q.view_mut((0, m), (n, partition.len())).copy_from(&c);
    let quotient = partition.quotient_graph();
    Ok(BranchDecomposition { q, copy1_order: copy1_order.clone(), x1: g.induced_subgraph(&copy1_order), partition, quotient })
}

/// Checks the block decomposition of `U_G(t)` at each time.
pub fn block_decomposition_check(g: &Graph, bp: &BranchPair, times: &[f64], exec: Exec) -> Result<BlockCheck, PartitionError> {
    let d = branch_decomposition(g, bp)?;
    let sg = analyze(g)?;
    let sx = analyze(&d.x1)?;
    let sq = analyze(&d.quotient)?;
    let m = d.copy1_order.len();
    let qc = d.q.map(|x| Complex64::new(x, 0.0));
    let qt = qc.transpose();
    let deviations = exec.map(times, |&t| {
        let big = &qt * transition_matrix(&sg, t) * &qc;
        let ux = transition_matrix(&sx, t);
        let uq = transition_matrix(&sq, t);
        let mut worst = 0.0f64;
        for i in 0..big.nrows() {
            for j in 0..big.ncols() {
                let want = match (i < m, j < m) {
                    (true, true) => ux[(i, j)],
                    (false, false) => uq[(i - m, j - m)],
                    _ => Complex64::new(0.0, 0.0),
                };
                worst = worst.max((big[(i, j)] - want).norm());
            }
        }
        worst
    });
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    Ok(BlockCheck { times: times.to_vec(), deviations, max_deviation, cells: d.partition.cells().to_vec() })
}

/// `U_G(t) (e_a - e_f(a))` from the branch alone: `U_X1(t) e_a` on copy 1
/// and its negative on copy 2. `x1_spec` is the decomposition of the
/// subgraph induced on `bp.copy1()` in that order.
pub fn pair_evolution_via_branch(bp: &BranchPair, x1_spec: &SpectralData, n: usize, t: f64, a: usize) -> Option<Vec<Complex64>> {
    let i = bp.copy1().iter().position(|&x| x == a)?;
    let mut e = vec![Complex64::new(0.0, 0.0); bp.len()];
    e[i] = Complex64::new(1.0, 0.0);
    let v = evolve_vector(x1_spec, t, &e);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, (&c1, &c2)) in bp.copy1().iter().zip(bp.copy2()).enumerate() {
        out[c1] = v[k];
        out[c2] = -v[k];
    }
    Some(out)
}

/// Result of building a graph with transfer between lifted states.
#[derive(Debug, Clone)]
pub struct Construction {
    pub graph: Graph,
    pub branches: BranchPair,
    /// `(lift(mu), lift(zeta))` on the built graph.
    pub source: QuantumState,
    pub target: QuantumState,
    /// Certificate on the branch, re-verified numerically on the built graph.
    pub certificate: TransferCertificate,
    pub fidelity_on_graph: f64,
}

/// `(s on copy 1 - s on copy 2) / sqrt(2)`.
fn lift(bp: &BranchPair, n: usize, s: &QuantumState) -> Result<QuantumState, TransferError> {
    let r = 1.0 / 2f64.sqrt();
    let mut amp = vec![Complex64::new(0.0, 0.0); n];
    for (k, (&c1, &c2)) in bp.copy1().iter().zip(bp.copy2()).enumerate() {
        amp[c1] = s.amplitudes()[k] * r;
        amp[c2] = -s.amplitudes()[k] * r;
    }
    QuantumState::raw(amp)
}

/// Attaches two copies of `x1` to `host` and transports the transfer
/// `mu -> zeta` on `x1` to the lifted states, with the same time and phase.
///
/// Fails with [`PartitionError::BranchLacksPst`] when `x1` has no certified
/// transfer. A numerical fidelity below the certification bound on the built
/// graph downgrades the certificate to evidence.
pub fn transfer_by_construction(
    host: &Graph,
    x1: &Graph,
    attach: &[(usize, usize, f64)],
    mu: &QuantumState,
    zeta: &QuantumState,
) -> Result<Construction, PartitionError> {
    let sx = analyze(x1)?;
    let cert = certify_pst(x1, &sx, mu, zeta)?;
    if !cert.is_yes() {
        return Err(PartitionError::BranchLacksPst(cert.criterion));
    }
    let (graph, branches) = attach_branches(host, x1, attach)?;
    let n = graph.n();
    let source = lift(&branches, n, mu)?;
    let target = lift(&branches, n, zeta)?;
    let sg = analyze(&graph)?;
    let tau = cert.time.expect("certified transfer has a time");
    let v = evolve_vector(&sg, tau, source.amplitudes());
    let overlap: Complex64 = target.amplitudes().iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
    let fidelity_on_graph = overlap.norm_sqr();
    let mut certificate = cert;
    certificate.criterion = "branch-construction".into();
    certificate.support.clear();
    certificate.peak_fidelity = Some(fidelity_on_graph);
    certificate.notes.push(format!("transfer on the branch lifted to a graph on {n} vertices"));
    if fidelity_on_graph < CERTIFY_FIDELITY {
        certificate.verdict = crate::transfer::Verdict::EvidenceOnly;
        certificate.criterion = "numeric-verification-failed".into();
    }
    Ok(Construction { graph, branches, source, target, certificate, fidelity_on_graph })
}

/// [`transfer_by_construction`] for vertex states `a -> b` of `x1`.
pub fn vertex_transfer_by_construction(
    host: &Graph,
    x1: &Graph,
    attach: &[(usize, usize, f64)],
    a: usize,
    b: usize,
) -> Result<Construction, PartitionError> {
    let mu = QuantumState::vertex(x1.n(), a)?;
    let zeta = QuantumState::vertex(x1.n(), b)?;
    transfer_by_construction(host, x1, attach, &mu, &zeta)
}
