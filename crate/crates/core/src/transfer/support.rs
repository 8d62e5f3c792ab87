use std::collections::BTreeSet;

use super::QuantumState;
use crate::graph::Graph;
use crate::spectral::{exact_projection_vanishes, AlgebraicClass, SpectralData};

/// Default support tolerance on `||E_lambda s||`.
pub const SUPPORT_TOL: f64 = 1e-9;

/// Eigenvalue support of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    /// Indices into the distinct eigenvalues of the spectral data, ascending
    /// (so eigenvalues descending).
    pub indices: Vec<usize>,
    pub eigenvalues: Vec<f64>,
    /// `||E_lambda s||` for every distinct eigenvalue.
    pub norms: Vec<f64>,
    pub warnings: Vec<String>,
}

impl Support {
    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// `{lambda : ||E_lambda s|| > tol}`.
///
/// Norms in the band `(tol, 10 tol]` are decided exactly when the graph has
/// integer weights, the eigenvalue is an integer and the state has a known
/// integer direction; otherwise the borderline value is reported as a
/// warning and the numeric decision stands.
pub fn eigenvalue_support(g: &Graph, spec: &SpectralData, state: &QuantumState, tol: f64) -> Support {
    let norms: Vec<f64> = (0..spec.len())
        .map(|i| spec.coordinates(i, state.amplitudes()).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut indices = Vec::new();
    let mut warnings = Vec::new();
    let direction = state.integer_direction();
    for (i, &nrm) in norms.iter().enumerate() {
        let mut inside = nrm > tol;
        if nrm > tol && nrm <= 10.0 * tol {
            let exact = match (spec.classes().map(|c| &c[i]), &direction) {
                (Some(AlgebraicClass::Integer { value }), Some(dir)) if g.is_integer_weighted() => exact_projection_vanishes(g, value, dir).ok(),
                _ => None,
            };
            match exact {
                Some(vanishes) => inside = !vanishes,
                None => warnings.push(format!(
                    "projection onto eigenvalue {:.12} has borderline norm {:.3e}; kept by numeric tolerance",
                    spec.eigenvalue(i),
                    nrm
                )),
            }
        }
        if inside {
            indices.push(i);
        }
    }
    let eigenvalues = indices.iter().map(|&i| spec.eigenvalue(i)).collect();
    Support { indices, eigenvalues, norms, warnings }
}

/// Outcome of the strong cospectrality test.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongCospectrality {
    pub holds: bool,
    /// `sigma_lambda` with `E_lambda s1 = sigma_lambda E_lambda s2`; 0 where
    /// both projections vanish or where the test failed.
    pub signs: Vec<i8>,
    /// First eigenvalue index where neither sign works.
    pub first_failure: Option<usize>,
}

/// Checks `E_lambda s1 = +-E_lambda s2` for every eigenvalue.
pub fn strongly_cospectral(spec: &SpectralData, s1: &QuantumState, s2: &QuantumState, tol: f64) -> StrongCospectrality {
    let mut signs = vec![0i8; spec.len()];
    let mut first_failure = None;
    for (i, sign) in signs.iter_mut().enumerate() {
        let a = spec.coordinates(i, s1.amplitudes());
        let b = spec.coordinates(i, s2.amplitudes());
        let dist = |sg: f64| a.iter().zip(&b).map(|(x, y)| (x - y * sg).norm_sqr()).sum::<f64>().sqrt();
        let size = a.iter().chain(&b).map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if size <= tol {
            continue;
        }
        if dist(1.0) <= tol {
            *sign = 1;
        } else if dist(-1.0) <= tol {
            *sign = -1;
        } else if first_failure.is_none() {
            first_failure = Some(i);
        }
    }
    if first_failure.is_some() {
        signs.iter_mut().for_each(|s| *s = 0);
    }
    StrongCospectrality { holds: first_failure.is_none(), signs, first_failure }
}

/// `|N(a) xor N(b)| = |N(c) xor N(d)|`, a walk-count necessary condition for
/// strong cospectrality of the pair states `(a,b)` and `(c,d)`.
///
/// `None` when the graph is not simple and the count does not apply.
pub fn neighborhood_invariant(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> Option<bool> {
    if !g.is_simple() {
        return None;
    }
    let sym = |x: usize, y: usize| {
        let nx: BTreeSet<usize> = g.neighbors(x).into_iter().collect();
        let ny: BTreeSet<usize> = g.neighbors(y).into_iter().collect();
        nx.symmetric_difference(&ny).count()
    };
    Some(sym(a, b) == sym(c, d))
}

/// Result of the periodicity test on a support.
#[derive(Debug, Clone, PartialEq)]
pub enum Periodicity {
    /// At most one eigenvalue: periodic with any period.
    Trivial,
    /// Every support eigenvalue is an integer.
    Integer,
    /// Every support eigenvalue is `(c + d sqrt(delta)) / 2` with one `c` and
    /// one `delta`; integers count as `d = 0`.
    Quadratic { c: i64, delta: u64 },
    NotPeriodic(String),
    /// Exact classes are unavailable (non-integer weights).
    Unknown(String),
}

impl Periodicity {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Periodicity::Trivial | Periodicity::Integer | Periodicity::Quadratic { .. })
    }
}

/// Periodicity of a state from the classes of its support eigenvalues.
///
/// The rule is exact for states proportional to rational vectors, whose
/// supports are closed under algebraic conjugation.
pub fn is_periodic(spec: &SpectralData, support: &Support) -> Periodicity {
    if support.len() <= 1 {
        return Periodicity::Trivial;
    }
    let Some(classes) = spec.classes() else {
        return Periodicity::Unknown("eigenvalue classification unavailable".into());
    };
    let mut forms = Vec::new();
    for &i in &support.indices {
        match classes[i].half_form() {
            Some(f) => forms.push(f),
            None => {
                return Periodicity::NotPeriodic(format!(
                    "support contains {:.12}, {}",
                    spec.eigenvalue(i),
                    classes[i].describe()
                ))
            }
        }
    }
    let deltas: BTreeSet<u64> = forms.iter().filter_map(|f| f.2).collect();
    if deltas.is_empty() {
        return Periodicity::Integer;
    }
    if deltas.len() > 1 {
        return Periodicity::NotPeriodic(format!("support mixes quadratic fields sqrt{deltas:?}"));
    }
    let cs: BTreeSet<i64> = forms.iter().map(|f| f.0).collect();
    if cs.len() > 1 {
        return Periodicity::NotPeriodic(format!("support eigenvalues (c + d sqrt(delta))/2 have differing c {cs:?}"));
    }
    Periodicity::Quadratic { c: *cs.iter().next().unwrap(), delta: *deltas.iter().next().unwrap() }
}

/// `(c, d)` such that eigenvalue `i` equals `(c + d sqrt(delta)) / 2`.
pub(crate) fn half_coordinates(spec: &SpectralData, i: usize) -> Option<(i64, i64)> {
    spec.classes()?.get(i)?.half_form().map(|(c, d, _)| (c, d))
}
