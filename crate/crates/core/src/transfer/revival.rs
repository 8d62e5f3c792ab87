use num_complex::Complex64;

use super::certify::certify_pst;
use super::evolution::evolve;
use super::{QuantumState, TransferCertificate, TransferError};
use crate::graph::Graph;
use crate::partition::{verify_branch_pair, BranchPair};
use crate::spectral::SpectralData;

/// `U(t) s1 = alpha s1 + beta s2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Revival {
    pub alpha: Complex64,
    pub beta: Complex64,
    /// `||U(t) s1 - alpha s1 - beta s2||`.
    pub residual: f64,
}

/// Projects `U(t) s1` onto `span{s1, s2}` and reports the coefficients when
/// the residual is below `tol` and `|beta| > tol`.
pub fn fractional_revival_check(spec: &SpectralData, t: f64, s1: &QuantumState, s2: &QuantumState, tol: f64) -> Option<Revival> {
    let v = evolve(spec, t, s1);
    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
    let (x, y) = (s1.amplitudes(), s2.amplitudes());
    let (g11, g12, g22) = (dot(x, x), dot(x, y), dot(y, y));
    let g21 = g12.conj();
    let (r1, r2) = (dot(x, &v), dot(y, &v));
    let det = g11 * g22 - g12 * g21;
    if det.norm() < 1e-14 {
        return None;
    }
    let alpha = (r1 * g22 - g12 * r2) / det;
    let beta = (g11 * r2 - g21 * r1) / det;
    let residual = v
        .iter()
        .zip(x.iter().zip(y))
        .map(|(w, (a, b))| (w - alpha * a - beta * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (residual < tol && beta.norm() > tol).then_some(Revival { alpha, beta, residual })
}

/// Multi-state transfer across isomorphic branches.
///
/// `branches` all share the same first copy `X_1` and pair it with
/// `X_2, ..., X_m`. The source is `sum_k l_k e_{a_k}` where `a_1 = a` and
/// `a_k` is the twin of `a` in `X_k`; the target is built the same way from
/// `b`. The coefficients must sum to zero and have unit norm.
pub fn mstate_transfer_check(
    g: &Graph,
    spec: &SpectralData,
    branches: &[BranchPair],
    a: usize,
    b: usize,
    coefficients: &[f64],
) -> Result<(TransferCertificate, QuantumState, QuantumState), TransferError> {
    if branches.is_empty() {
        return Err(TransferError::InvalidBranches("at least one branch pair is required".into()));
    }
    if coefficients.len() != branches.len() + 1 {
        return Err(TransferError::LengthMismatch { expected: branches.len() + 1, found: coefficients.len() });
    }
    let sum: f64 = coefficients.iter().sum();
    if sum.abs() > 1e-12 {
        return Err(TransferError::NonzeroCoefficientSum(sum));
    }
    let base = branches[0].copy1();
    for (i, bp) in branches.iter().enumerate() {
        if bp.copy1() != base {
            return Err(TransferError::InvalidBranches(format!("branch pair {i} does not share the first copy")));
        }
        let check = verify_branch_pair(g, bp);
        if !check.valid {
            return Err(TransferError::InvalidBranches(format!("branch pair {i}: {}", check.diagnostics.join("; "))));
        }
    }
    let lift = |v: usize| -> Result<Vec<usize>, TransferError> {
        let mut out = vec![v];
        for bp in branches {
            out.push(bp.twin(v).ok_or_else(|| TransferError::InvalidBranches(format!("vertex {v} is not in the first copy")))?);
        }
        Ok(out)
    };
    let n = g.n();
    let source = QuantumState::mstate(n, &lift(a)?, coefficients)?;
    let target = QuantumState::mstate(n, &lift(b)?, coefficients)?;
    let cert = certify_pst(g, spec, &source, &target)?;
    Ok((cert, source, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};
    use crate::spectral::analyze;
    use std::f64::consts::PI;

    #[test]
    fn p4_end_vertex_revival() {
        let g = build_family(&FamilySpec::Path(4)).unwrap();
        let s = analyze(&g).unwrap();
        let t = 2.0 * PI / 5f64.sqrt();
        let r = fractional_revival_check(&s, t, &QuantumState::vertex(4, 0).unwrap(), &QuantumState::vertex(4, 3).unwrap(), 1e-9).unwrap();
        let x = PI / 5f64.sqrt();
        assert!((r.alpha - Complex64::new(-x.cos(), 0.0)).norm() < 1e-9);
        assert!((r.beta - Complex64::new(0.0, -x.sin())).norm() < 1e-9);
    }

    #[test]
    fn no_revival_at_time_zero() {
        let g = build_family(&FamilySpec::Path(4)).unwrap();
        let s = analyze(&g).unwrap();
        let r = fractional_revival_check(&s, 0.0, &QuantumState::vertex(4, 0).unwrap(), &QuantumState::vertex(4, 3).unwrap(), 1e-9);
        assert!(r.is_none());
    }
}
