use nalgebra::DMatrix;
use num_complex::Complex64;

use super::QuantumState;
use crate::spectral::SpectralData;

fn phase(t: f64, lambda: f64) -> Complex64 {
    Complex64::from_polar(1.0, t * lambda)
}

/// `U(t) = sum_lambda exp(i t lambda) E_lambda`.
pub fn transition_matrix(spec: &SpectralData, t: f64) -> DMatrix<Complex64> {
    let n = spec.n();
    let mut u = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..spec.len() {
        let e = spec.projector(i);
        let z = phase(t, spec.eigenvalue(i));
        u.zip_apply(&e, |x, p| *x += z * p);
    }
    u
}

/// `U(t) s` without forming `U(t)`.
pub fn evolve(spec: &SpectralData, t: f64, s: &QuantumState) -> Vec<Complex64> {
    evolve_vector(spec, t, s.amplitudes())
}

pub fn evolve_vector(spec: &SpectralData, t: f64, s: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); spec.n()];
    for i in 0..spec.len() {
        let z = phase(t, spec.eigenvalue(i));
        for (o, p) in out.iter_mut().zip(spec.project(i, s)) {
            *o += z * p;
        }
    }
    out
}

/// `|<target|U(t)|source>|^2`.
pub fn fidelity(spec: &SpectralData, t: f64, source: &QuantumState, target: &QuantumState) -> f64 {
    TransitionAmplitude::new(spec, source, target).fidelity(t)
}

/// `<target|U(t)|source>` reduced to a short exponential sum
/// `sum_lambda w_lambda exp(i t lambda)` over the eigenvalues where both
/// states have weight. Evaluating it costs one phasor per eigenvalue.
#[derive(Debug, Clone)]
pub struct TransitionAmplitude {
    pub(crate) lambdas: Vec<f64>,
    pub(crate) weights: Vec<Complex64>,
}

impl TransitionAmplitude {
    pub fn new(spec: &SpectralData, source: &QuantumState, target: &QuantumState) -> Self {
        let mut lambdas = Vec::new();
        let mut weights = Vec::new();
        for i in 0..spec.len() {
            let cs = spec.coordinates(i, source.amplitudes());
            let ct = spec.coordinates(i, target.amplitudes());
            let w: Complex64 = ct.iter().zip(&cs).map(|(y, x)| y.conj() * x).sum();
            if w.norm() > 1e-15 {
                lambdas.push(spec.eigenvalue(i));
                weights.push(w);
            }
        }
        TransitionAmplitude { lambdas, weights }
    }

    pub fn amplitude(&self, t: f64) -> Complex64 {
        self.lambdas.iter().zip(&self.weights).map(|(&l, w)| w * phase(t, l)).sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr().min(1.0)
    }

    /// Largest `|lambda|` among the terms; sets the grid resolution.
    pub fn bandwidth(&self) -> f64 {
        self.lambdas.iter().fold(0.0f64, |m, l| m.max(l.abs()))
    }
}
