use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::evolution::TransitionAmplitude;
use super::search::{pgst_evidence, SearchOptions};
use super::support::{half_coordinates, is_periodic, neighborhood_invariant, strongly_cospectral, Periodicity, Support};
use super::{eigenvalue_support, QuantumState, StateKind, TransferError, SUPPORT_TOL};
use crate::arith::gcd;
use crate::graph::Graph;
use crate::spectral::SpectralData;

/// Fidelity a certified transfer must reach when re-evaluated numerically.
pub const CERTIFY_FIDELITY: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedYes,
    CertifiedNo,
    EvidenceOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedYes => "certified-yes",
            Verdict::CertifiedNo => "certified-no",
            Verdict::EvidenceOnly => "evidence-only",
        })
    }
}

/// `num * pi / (den * sqrt(radicand))`; `radicand = 1` means no root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicTime {
    pub num: i64,
    pub den: i64,
    pub radicand: u64,
}

impl SymbolicTime {
    pub fn new(num: i64, den: i64, radicand: u64) -> Self {
        let g = gcd(num, den).max(1);
        SymbolicTime { num: num / g, den: den / g, radicand }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 * PI / (self.den as f64 * (self.radicand as f64).sqrt())
    }

    /// Finds `k pi / (g sqrt(delta))` within `tol` of `t`, preferring small
    /// denominators and radicands.
    pub fn recognize(t: f64, tol: f64) -> Option<SymbolicTime> {
        if !t.is_finite() || t <= 0.0 {
            return None;
        }
        for radicand in (1..=30u64).filter(|&r| r == 1 || crate::arith::is_square_free(r)) {
            for den in 1..=24i64 {
                let k = t * den as f64 * (radicand as f64).sqrt() / PI;
                let kr = k.round();
                if (1.0..=1e6).contains(&kr) {
                    let cand = SymbolicTime::new(kr as i64, den, radicand);
                    if (cand.value() - t).abs() <= tol {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for SymbolicTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 1 {
            write!(f, "pi")?;
        } else {
            write!(f, "{}*pi", self.num)?;
        }
        match (self.den, self.radicand) {
            (1, 1) => Ok(()),
            (1, r) => write!(f, "/sqrt({r})"),
            (d, 1) => write!(f, "/{d}"),
            (d, r) => write!(f, "/({d}*sqrt({r}))"),
        }
    }
}

/// Verdict with its witness.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferCertificate {
    pub verdict: Verdict,
    pub time: Option<f64>,
    pub symbolic_time: Option<SymbolicTime>,
    /// `gamma` in `U(tau) source = gamma target`.
    pub phase: Option<Complex64>,
    /// Fidelity at `time` (certified) or the best found (evidence).
    pub peak_fidelity: Option<f64>,
    /// Name of the condition or search that decided the verdict.
    pub criterion: String,
    pub support: Vec<f64>,
    pub notes: Vec<String>,
}

impl TransferCertificate {
    pub fn no(criterion: &str, support: Vec<f64>, note: impl Into<String>) -> Self {
        TransferCertificate {
            verdict: Verdict::CertifiedNo,
            time: None,
            symbolic_time: None,
            phase: None,
            peak_fidelity: None,
            criterion: criterion.into(),
            support,
            notes: vec![note.into()],
        }
    }

    pub fn evidence(criterion: &str, support: Vec<f64>, time: f64, fidelity: f64, note: impl Into<String>) -> Self {
        TransferCertificate {
            verdict: Verdict::EvidenceOnly,
            time: Some(time),
            symbolic_time: None,
            phase: None,
            peak_fidelity: Some(fidelity),
            criterion: criterion.into(),
            support,
            notes: vec![note.into()],
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::CertifiedYes
    }
}

/// Perfect transfer from `source` to `target`, decided exactly when the
/// eigenvalues are classified (integer-weighted graphs).
///
/// Pipeline: walk-count prefilter for pair states on simple graphs, equal
/// supports, strong cospectrality, periodicity, then the phase alignment
/// `exp(i t (lambda - lambda_0)) = sigma_lambda sigma_lambda_0`. Writing
/// `lambda_0 - lambda = n_lambda h` with `h = 1` (integers) or
/// `h = sqrt(delta) / 2` (shared quadratic field) and `g = gcd(n_lambda)`,
/// the times where every phase is real are `k pi / (h g)`. An even `k` would
/// make all signs equal, forcing `source = +-target`, so only odd `k` can
/// work and the sign system is decided by `sigma_lambda sigma_lambda_0 =
/// (-1)^(n_lambda / g)`. The minimal time is `pi / (h g)`.
pub fn certify_pst(g: &Graph, spec: &SpectralData, source: &QuantumState, target: &QuantumState) -> Result<TransferCertificate, TransferError> {
    check_states(g, spec, source, target)?;
    let s1 = eigenvalue_support(g, spec, source, SUPPORT_TOL);
    let s2 = eigenvalue_support(g, spec, target, SUPPORT_TOL);
    Ok(certify_with_supports(g, spec, source, target, &s1, &s2))
}

pub(crate) fn check_states(g: &Graph, spec: &SpectralData, source: &QuantumState, target: &QuantumState) -> Result<(), TransferError> {
    for s in [source, target] {
        if s.n() != g.n() || s.n() != spec.n() {
            return Err(TransferError::LengthMismatch { expected: g.n(), found: s.n() });
        }
    }
    if source.is_dependent(target) {
        return Err(TransferError::DependentStates);
    }
    Ok(())
}

pub(crate) fn certify_with_supports(
    g: &Graph,
    spec: &SpectralData,
    source: &QuantumState,
    target: &QuantumState,
    s1: &Support,
    s2: &Support,
) -> TransferCertificate {
    let support = s1.eigenvalues.clone();
    let mut warnings: Vec<String> = s1.warnings.iter().chain(&s2.warnings).cloned().collect();
    if let (StateKind::Pair(a, b), StateKind::Pair(c, d)) = (source.kind(), target.kind()) {
        if neighborhood_invariant(g, *a, *b, *c, *d) == Some(false) {
            return with_notes(
                TransferCertificate::no(
                    "walk-count-mismatch",
                    support,
                    "|N(a) xor N(b)| differs from |N(c) xor N(d)|, so the pair states are not strongly cospectral",
                ),
                warnings,
            );
        }
    }
    if s1.indices != s2.indices {
        let note = format!("source support {:?} differs from target support {:?}", fmt_values(&s1.eigenvalues), fmt_values(&s2.eigenvalues));
        return with_notes(TransferCertificate::no("support-mismatch", support, note), warnings);
    }
    let sc = strongly_cospectral(spec, source, target, SUPPORT_TOL);
    if !sc.holds {
        let i = sc.first_failure.expect("failure index");
        let note = format!("E_lambda source != +-E_lambda target at lambda = {:.12}", spec.eigenvalue(i));
        return with_notes(TransferCertificate::no("not-strongly-cospectral", support, note), warnings);
    }

    let periodicity = is_periodic(spec, s1);
    let (h_radicand, ns) = match &periodicity {
        Periodicity::NotPeriodic(reason) => {
            return with_notes(TransferCertificate::no("not-periodic", support, reason.clone()), warnings);
        }
        Periodicity::Unknown(reason) => {
            let amp = TransitionAmplitude::new(spec, source, target);
            let ev = pgst_evidence(&amp, &SearchOptions { horizon: 1e3, ..SearchOptions::default() });
            let mut c = TransferCertificate::evidence(
                "classification-unavailable",
                support,
                ev.peak_time,
                ev.peak_fidelity,
                format!("{reason}; peak fidelity from a time search over (0, 1000]"),
            );
            c.notes.append(&mut warnings);
            return c;
        }
        Periodicity::Trivial => {
            return with_notes(
                TransferCertificate::no("not-periodic", support, "support has a single eigenvalue; the states would be dependent"),
                warnings,
            );
        }
        Periodicity::Integer => (1u64, differences(spec, &s1.indices, false)),
        Periodicity::Quadratic { delta, .. } => (*delta, differences(spec, &s1.indices, true)),
    };
    let Some(ns) = ns else {
        return with_notes(
            TransferCertificate::no("not-periodic", support, "exact eigenvalue forms overflow 64-bit integers"),
            warnings,
        );
    };
    let gd = ns.iter().fold(0i64, |acc, &x| gcd(acc, x));
    let sig0 = sc.signs[s1.indices[0]];
    for (k, &i) in s1.indices.iter().enumerate().skip(1) {
        let need: i8 = if (ns[k] / gd) % 2 == 0 { 1 } else { -1 };
        if sc.signs[i] * sig0 != need {
            let note = format!(
                "sign of E_lambda at lambda = {:.12} must be {} relative to lambda_0 = {:.12} at every candidate time",
                spec.eigenvalue(i),
                if need == 1 { "equal" } else { "opposite" },
                spec.eigenvalue(s1.indices[0])
            );
            return with_notes(TransferCertificate::no("phase-parity-obstruction", support, note), warnings);
        }
    }

    // tau = pi / (h g): h = 1, or h = sqrt(delta) / 2
    let sym = if h_radicand == 1 { SymbolicTime::new(1, gd, 1) } else { SymbolicTime::new(2, gd, h_radicand) };
    let tau = sym.value();
    let lambda0 = spec.eigenvalue(s1.indices[0]);
    let gamma = Complex64::from_polar(1.0, tau * lambda0) * f64::from(sig0);
    let amp = TransitionAmplitude::new(spec, source, target);
    let fid = amp.fidelity(tau);
    if fid < CERTIFY_FIDELITY {
        let mut c = TransferCertificate::evidence(
            "numeric-verification-failed",
            support,
            tau,
            fid,
            format!("phase alignment predicts transfer at {sym} but the fidelity there is {fid:.12}"),
        );
        c.notes.append(&mut warnings);
        return c;
    }
    let mut notes = vec![format!("gcd of eigenvalue differences in units of h: {gd}; signs satisfy the parity rule")];
    notes.append(&mut warnings);
    TransferCertificate {
        verdict: Verdict::CertifiedYes,
        time: Some(tau),
        symbolic_time: Some(sym),
        phase: Some(gamma),
        peak_fidelity: Some(fid),
        criterion: "phase-alignment".into(),
        support,
        notes,
    }
}

/// `n_lambda = (lambda_0 - lambda) / h` for every support eigenvalue (the
/// first entry is 0).
fn differences(spec: &SpectralData, indices: &[usize], quadratic: bool) -> Option<Vec<i64>> {
    let coord = |i: usize| -> Option<i64> {
        let (c, d) = half_coordinates(spec, i)?;
        // integers are stored as c = 2v, d = 0
        Some(if quadratic { d } else { c / 2 })
    };
    let x0 = coord(indices[0])?;
    indices.iter().map(|&i| coord(i).and_then(|x| x0.checked_sub(x))).collect()
}

fn with_notes(mut c: TransferCertificate, mut warnings: Vec<String>) -> TransferCertificate {
    c.notes.append(&mut warnings);
    c
}

fn fmt_values(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| format!("{x:.6}")).collect()
}
