use num_bigint::BigInt;
use num_complex::Complex64;

use super::TransferError;
use crate::graph::Graph;

const NORM_TOL: f64 = 1e-12;

/// How a state was built; kept for reporting and for exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum StateKind {
    Vertex(usize),
    /// `(e_a - e_b) / sqrt 2`.
    Pair(usize, usize),
    /// `sum_k l_k e_{j_k}` with distinct vertices.
    MState { vertices: Vec<usize>, coefficients: Vec<f64> },
    Raw,
}

/// Unit vector over the vertices of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
    kind: StateKind,
}

fn check_vertex(v: usize, n: usize) -> Result<(), TransferError> {
    if v >= n {
        Err(TransferError::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl QuantumState {
    pub fn vertex(n: usize, a: usize) -> Result<Self, TransferError> {
        check_vertex(a, n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[a] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { amplitudes, kind: StateKind::Vertex(a) })
    }

    pub fn pair(n: usize, a: usize, b: usize) -> Result<Self, TransferError> {
        check_vertex(a, n)?;
        check_vertex(b, n)?;
        if a == b {
            return Err(TransferError::DegeneratePair(a));
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[a] = Complex64::new(h, 0.0);
        amplitudes[b] = Complex64::new(-h, 0.0);
        Ok(QuantumState { amplitudes, kind: StateKind::Pair(a, b) })
    }

    /// `sum_k l_k e_{j_k}`; coefficients on a repeated vertex are added
    /// before the norm is checked.
    pub fn mstate(n: usize, vertices: &[usize], coefficients: &[f64]) -> Result<Self, TransferError> {
        if vertices.len() != coefficients.len() {
            return Err(TransferError::LengthMismatch { expected: vertices.len(), found: coefficients.len() });
        }
        let mut merged: Vec<(usize, f64)> = Vec::new();
        for (&v, &l) in vertices.iter().zip(coefficients) {
            check_vertex(v, n)?;
            match merged.iter_mut().find(|(u, _)| *u == v) {
                Some(slot) => slot.1 += l,
                None => merged.push((v, l)),
            }
        }
        merged.retain(|&(_, l)| l != 0.0);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        for &(v, l) in &merged {
            amplitudes[v] = Complex64::new(l, 0.0);
        }
        let nrm = norm(&amplitudes);
        if (nrm - 1.0).abs() > NORM_TOL {
            return Err(TransferError::NotNormalized(nrm));
        }
        let (vertices, coefficients) = merged.into_iter().unzip();
        Ok(QuantumState { amplitudes, kind: StateKind::MState { vertices, coefficients } })
    }

    /// Takes the amplitudes as given; they must already have unit norm.
    pub fn raw(amplitudes: Vec<Complex64>) -> Result<Self, TransferError> {
        let nrm = norm(&amplitudes);
        if (nrm - 1.0).abs() > NORM_TOL {
            return Err(TransferError::NotNormalized(nrm));
        }
        Ok(QuantumState { amplitudes, kind: StateKind::Raw })
    }

    /// Scales a nonzero real vector to unit norm.
    pub fn normalized(values: &[f64]) -> Result<Self, TransferError> {
        let nrm = values.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm == 0.0 || !nrm.is_finite() {
            return Err(TransferError::NotNormalized(nrm));
        }
        QuantumState::raw(values.iter().map(|&x| Complex64::new(x / nrm, 0.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(x, y)| x.conj() * y).sum()
    }

    /// True when `other` is a unit multiple of `self`.
    pub fn is_dependent(&self, other: &QuantumState) -> bool {
        (self.inner(other).norm() - 1.0).abs() < 1e-10
    }

    /// An integer vector parallel to the state, when one is known exactly:
    /// `e_a` for vertices and `e_a - e_b` for pairs.
    pub fn integer_direction(&self) -> Option<Vec<BigInt>> {
        let n = self.n();
        let mut v = vec![BigInt::from(0); n];
        match self.kind {
            StateKind::Vertex(a) => v[a] = BigInt::from(1),
            StateKind::Pair(a, b) => {
                v[a] = BigInt::from(1);
                v[b] = BigInt::from(-1);
            }
            _ => return None,
        }
        Some(v)
    }

    /// The image `P s` under a vertex permutation: `(P s)_{p(v)} = s_v`.
    pub fn permuted(&self, perm: &[usize]) -> QuantumState {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.n()];
        for (v, &z) in self.amplitudes.iter().enumerate() {
            amplitudes[perm[v]] = z;
        }
        let kind = match &self.kind {
            StateKind::Vertex(a) => StateKind::Vertex(perm[*a]),
            StateKind::Pair(a, b) => StateKind::Pair(perm[*a], perm[*b]),
            StateKind::MState { vertices, coefficients } => StateKind::MState {
                vertices: vertices.iter().map(|&v| perm[v]).collect(),
                coefficients: coefficients.clone(),
            },
            StateKind::Raw => StateKind::Raw,
        };
        QuantumState { amplitudes, kind }
    }

    /// Short description using the graph's labels, e.g. `(1,5)`.
    pub fn describe(&self, g: &Graph) -> String {
        match &self.kind {
            StateKind::Vertex(a) => g.label(*a).to_string(),
            StateKind::Pair(a, b) => format!("({},{})", g.label(*a), g.label(*b)),
            StateKind::MState { vertices, coefficients } => {
                let terms: Vec<String> =
                    vertices.iter().zip(coefficients).map(|(&v, l)| format!("{:.6}*e[{}]", l, g.label(v))).collect();
                terms.join(" + ")
            }
            StateKind::Raw => "custom state".into(),
        }
    }
}
