//! Grouped eigendecomposition, eigenprojectors and exact eigenvalue
//! classification.
//!
//! Eigenvectors carry sign and basis freedom, so the public surface is the
//! set of distinct eigenvalues with their orthogonal projectors `E_lambda`.
//! Internally each eigenvalue keeps an orthonormal basis `V` of its
//! eigenspace (`E = V V^T`), which lets state components be computed in the
//! eigenspace coordinates without forming `n x n` projectors.

mod classify;
mod exact;
mod poly;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::Graph;

pub use classify::classify_eigenvalues;
pub use exact::exact_projection_vanishes;
pub use poly::{char_poly_berkowitz, IntPoly};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
    #[error("exact arithmetic requires an integer-weighted graph")]
    NotIntegerWeighted,
    #[error("spectral data has {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
}

/// Exact arithmetic type of an eigenvalue of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraicClass {
    /// The eigenvalue is the integer `value`.
    Integer { value: BigInt },
    /// The eigenvalue is `(c + d sqrt(delta)) / 2` with `delta > 1`
    /// square-free and `d != 0`.
    Quadratic { c: BigInt, d: BigInt, delta: u64 },
    /// Neither; `min_poly_degree` is known when the remaining factor of the
    /// characteristic polynomial is forced to be irreducible.
    Other { min_poly_degree: Option<usize> },
}

impl AlgebraicClass {
    pub fn is_integer(&self) -> bool {
        matches!(self, AlgebraicClass::Integer { .. })
    }

    /// Numeric value of an exact class; `None` for [`AlgebraicClass::Other`].
    pub fn value(&self) -> Option<f64> {
        match self {
            AlgebraicClass::Integer { value } => value.to_f64(),
            AlgebraicClass::Quadratic { c, d, delta } => {
                Some((c.to_f64()? + d.to_f64()? * (*delta as f64).sqrt()) / 2.0)
            }
            AlgebraicClass::Other { .. } => None,
        }
    }

    /// Writes the class as `(c + d sqrt(delta)) / 2`; integers use `d = 0`
    /// and report no `delta`.
    pub fn half_form(&self) -> Option<(i64, i64, Option<u64>)> {
        match self {
            AlgebraicClass::Integer { value } => Some((value.to_i64()?.checked_mul(2)?, 0, None)),
            AlgebraicClass::Quadratic { c, d, delta } => Some((c.to_i64()?, d.to_i64()?, Some(*delta))),
            AlgebraicClass::Other { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            AlgebraicClass::Integer { value } => format!("integer {value}"),
            AlgebraicClass::Quadratic { c, d, delta } => format!("({c} + {d}*sqrt({delta}))/2"),
            AlgebraicClass::Other { min_poly_degree: Some(k) } => format!("algebraic of degree {k}"),
            AlgebraicClass::Other { min_poly_degree: None } => "algebraic of unknown degree".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct EigenGroup {
    pub value: f64,
    /// `n x m` orthonormal basis of the eigenspace.
    pub basis: DMatrix<f64>,
}

/// Distinct eigenvalues (descending) with their eigenprojectors.
#[derive(Debug, Clone)]
pub struct SpectralData {
    n: usize,
    raw_values: Vec<f64>,
    raw_vectors: DMatrix<f64>,
    groups: Vec<EigenGroup>,
    classes: Option<Vec<AlgebraicClass>>,
    char_poly: Option<IntPoly>,
    tol: f64,
    spectral_radius: f64,
    diagnostics: Vec<String>,
}

/// Default grouping tolerance `1e-9 * max(1, ||A||_2)`.
pub fn default_tolerance(spectral_radius: f64) -> f64 {
    1e-9 * spectral_radius.max(1.0)
}

/// Symmetric eigensolve with eigenvalues within `tol` merged into one class.
///
/// `tol = None` uses [`default_tolerance`]. Merging chains through sorted
/// neighbours, so a run of eigenvalues with consecutive gaps at most `tol`
/// forms one class.
pub fn decompose(g: &Graph, tol: Option<f64>) -> Result<SpectralData, SpectralError> {
    let n = g.n();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    let eig = SymmetricEigen::new(g.adjacency());
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(SpectralError::Eigensolver("non-finite eigenvalue".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let raw_values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut raw_vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        raw_vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    let spectral_radius = raw_values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = tol.unwrap_or_else(|| default_tolerance(spectral_radius));

    let indices: Vec<usize> = (0..n).collect();
    let groups = group_by_tolerance(&raw_values, &raw_vectors, &indices, tol);
    Ok(SpectralData {
        n,
        raw_values,
        raw_vectors,
        groups,
        classes: None,
        char_poly: None,
        tol,
        spectral_radius,
        diagnostics: Vec::new(),
    })
}

/// Groups the given raw indices (descending by value) into tolerance chains.
pub(crate) fn group_by_tolerance(values: &[f64], vectors: &DMatrix<f64>, indices: &[usize], tol: f64) -> Vec<EigenGroup> {
    let mut groups = Vec::new();
    let mut start = 0;
    while start < indices.len() {
        let mut end = start + 1;
        while end < indices.len() && (values[indices[end - 1]] - values[indices[end]]).abs() <= tol {
            end += 1;
        }
        let members = &indices[start..end];
        let value = members.iter().map(|&i| values[i]).sum::<f64>() / members.len() as f64;
        groups.push(EigenGroup { value, basis: basis_of(vectors, members) });
        start = end;
    }
    groups
}

pub(crate) fn basis_of(vectors: &DMatrix<f64>, members: &[usize]) -> DMatrix<f64> {
    let mut basis = DMatrix::zeros(vectors.nrows(), members.len());
    for (k, &i) in members.iter().enumerate() {
        basis.set_column(k, &vectors.column(i));
    }
    basis
}

/// Decomposes and, for integer-weighted graphs, classifies every eigenvalue.
pub fn analyze(g: &Graph) -> Result<SpectralData, SpectralError> {
    analyze_with_tol(g, None)
}

pub fn analyze_with_tol(g: &Graph, tol: Option<f64>) -> Result<SpectralData, SpectralError> {
    let spec = decompose(g, tol)?;
    if g.is_integer_weighted() {
        classify_eigenvalues(g, spec)
    } else {
        Ok(spec)
    }
}

/// `det(xI - A)` with exact coefficients.
pub fn char_poly_exact(g: &Graph) -> Result<IntPoly, SpectralError> {
    let a = g.integer_adjacency().ok_or(SpectralError::NotIntegerWeighted)?;
    Ok(char_poly_berkowitz(&a, g.n()))
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct eigenvalues.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Distinct eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.value).collect()
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.groups[i].value
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.basis.ncols()).collect()
    }

    /// Every eigenvalue with repetition, descending.
    pub fn raw_eigenvalues(&self) -> &[f64] {
        &self.raw_values
    }

    /// `E_lambda_i = V V^T`.
    pub fn projector(&self, i: usize) -> DMatrix<f64> {
        let v = &self.groups[i].basis;
        v * v.transpose()
    }

    pub fn classes(&self) -> Option<&[AlgebraicClass]> {
        self.classes.as_deref()
    }

    pub fn char_poly(&self) -> Option<&IntPoly> {
        self.char_poly.as_ref()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `||A||_2 = max |lambda|`.
    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    /// Warnings produced while grouping and classifying.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    /// Coordinates `V_i^T s` of a (complex) vector in eigenspace `i`. Their
    /// norm equals `||E_i s||`.
    pub fn coordinates(&self, i: usize, s: &[Complex64]) -> Vec<Complex64> {
        let v = &self.groups[i].basis;
        (0..v.ncols())
            .map(|k| {
                let col = v.column(k);
                s.iter().zip(col.iter()).map(|(x, &c)| x * c).sum()
            })
            .collect()
    }

    /// `E_i s` as a full vector.
    pub fn project(&self, i: usize, s: &[Complex64]) -> Vec<Complex64> {
        let coords = self.coordinates(i, s);
        let v = &self.groups[i].basis;
        (0..self.n)
            .map(|r| coords.iter().enumerate().map(|(k, c)| c * v[(r, k)]).sum())
            .collect()
    }

    /// `sum_i lambda_i E_i`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (i, g) in self.groups.iter().enumerate() {
            a += self.projector(i) * g.value;
        }
        a
    }

    /// Index of the distinct eigenvalue within `tol` of `value`.
    pub fn index_of(&self, value: f64, tol: f64) -> Option<usize> {
        self.groups.iter().position(|g| (g.value - value).abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn spec_of(f: FamilySpec) -> SpectralData {
        analyze(&build_family(&f).unwrap()).unwrap()
    }

    #[test]
    fn p2_projectors_by_hand() {
        let s = spec_of(FamilySpec::Path(2));
        assert_eq!(s.len(), 2);
        assert!((s.eigenvalue(0) - 1.0).abs() < 1e-12);
        assert!((s.eigenvalue(1) + 1.0).abs() < 1e-12);
        let e_plus = s.projector(0);
        let e_minus = s.projector(1);
        for (r, c, plus, minus) in [(0, 0, 0.5, 0.5), (0, 1, 0.5, -0.5), (1, 1, 0.5, 0.5)] {
            assert!((e_plus[(r, c)] - plus).abs() < 1e-12);
            assert!((e_minus[(r, c)] - minus).abs() < 1e-12);
        }
    }

    #[test]
    fn p4_has_golden_ratio_spectrum() {
        let s = spec_of(FamilySpec::Path(4));
        let r5 = 5f64.sqrt();
        let expected = [(1.0 + r5) / 2.0, (r5 - 1.0) / 2.0, (1.0 - r5) / 2.0, -(1.0 + r5) / 2.0];
        assert_eq!(s.len(), 4);
        for (x, y) in s.eigenvalues().iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn c6_multiplicities() {
        let s = spec_of(FamilySpec::Cycle(6));
        // 2cos(2 j pi / 6), j = 0..5
        assert_eq!(s.eigenvalues().iter().map(|x| x.round() as i64).collect::<Vec<_>>(), vec![2, 1, -1, -2]);
        assert_eq!(s.multiplicities(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn empty_graph_is_an_error() {
        assert!(matches!(decompose(&Graph::empty(0), None), Err(SpectralError::EmptyGraph)));
    }

    #[test]
    fn char_poly_requires_integer_weights() {
        let g = crate::graph::GraphBuilder::new(2).edge(0, 1, 0.5).unwrap().build().unwrap();
        assert!(matches!(char_poly_exact(&g), Err(SpectralError::NotIntegerWeighted)));
        let p4 = build_family(&FamilySpec::Path(4)).unwrap();
        assert_eq!(char_poly_exact(&p4).unwrap().to_string(), "x^4 - 3x^2 + 1");
    }

    #[test]
    fn coordinates_norm_matches_projection() {
        let s = spec_of(FamilySpec::Cycle(5));
        let v: Vec<Complex64> = (0..5).map(|k| Complex64::new(k as f64, 1.0 - k as f64)).collect();
        for i in 0..s.len() {
            let c: f64 = s.coordinates(i, &v).iter().map(|z| z.norm_sqr()).sum();
            let p: f64 = s.project(i, &v).iter().map(|z| z.norm_sqr()).sum();
            assert!((c - p).abs() < 1e-10);
        }
    }
}
