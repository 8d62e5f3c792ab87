//! Continuous-time quantum walks on weighted graphs.
//!
//! The crate is organised around four layers:
//!
//! - [`graph`]: the weighted graph model, named families, composition
//!   operators (Cartesian product, join, corona, branch attachment) and the
//!   JSON file format.
//! - [`spectral`]: grouped eigendecomposition with orthogonal eigenprojectors,
//!   plus exact characteristic polynomials and algebraic classification of
//!   eigenvalues for integer-weighted graphs.
//! - [`transfer`]: quantum states, the transition matrix `U(t) = exp(itA)`,
//!   and every transfer phenomenon built on it (perfect/pretty good transfer,
//!   fractional revival, sedentariness, multi-state transfer).
//! - [`partition`]: equitable partitions, symmetrized quotients and the
//!   isomorphic-branch block decomposition.
//!
//! Batch work (sweeps over pair states, fidelity grids, block checks over many
//! times) runs through [`exec`], which uses rayon when the `parallel` feature
//! is enabled and falls back to plain iteration otherwise.

pub mod arith;
pub mod exec;
pub mod graph;
pub mod optimize;
pub mod partition;
pub mod spectral;
pub mod transfer;

pub use num_complex::Complex64;

pub use graph::{FamilySpec, Graph, GraphBuilder, GraphError};
pub use partition::{BranchPair, EquitablePartition, PartitionError};
pub use spectral::{AlgebraicClass, IntPoly, SpectralData, SpectralError};
pub use transfer::{QuantumState, StateKind, TransferCertificate, TransferError, Verdict};
