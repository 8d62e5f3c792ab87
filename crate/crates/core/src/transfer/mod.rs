//! Quantum states, the transition matrix and transfer phenomena.

mod certify;
mod evolution;
mod pgst;
mod revival;
mod search;
mod state;
mod support;
mod sweep;

use thiserror::Error;

use crate::graph::GraphError;
use crate::spectral::SpectralError;

pub use certify::{certify_pst, SymbolicTime, TransferCertificate, Verdict, CERTIFY_FIDELITY};
pub use evolution::{evolve, evolve_vector, fidelity, transition_matrix, TransitionAmplitude};
pub use pgst::{
    cycle_pair_family_predicate, cycle_pair_pgst_predicate, path_pair_pgst_predicate, path_vertex_pgst_predicate, pgst_obstructions,
    FamilyPredicate, ObstructionReport, ObstructionVerdict, Refutation,
};
pub use revival::{fractional_revival_check, mstate_transfer_check, Revival};
pub use search::{pgst_evidence, pgst_evidence_for, sedentary_bound, PgstEvidence, SearchOptions, SedentaryEstimate};
pub use state::{QuantumState, StateKind};
pub use support::{
    eigenvalue_support, is_periodic, neighborhood_invariant, strongly_cospectral, Periodicity, StrongCospectrality, Support,
    SUPPORT_TOL,
};
pub use sweep::{ppst_sweep, PpstPair, PpstSweep, SourceSummary};

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pair state needs two distinct vertices, got ({0},{0})")]
    DegeneratePair(usize),
    #[error("state has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("source and target are the same state up to phase")]
    DependentStates,
    #[error("coefficients sum to {0}; multi-state transfer needs sum zero")]
    NonzeroCoefficientSum(f64),
    #[error("permutation {0} is not an automorphism of the graph")]
    NotAutomorphism(usize),
    #[error("invalid branches: {0}")]
    InvalidBranches(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
