//! Structural obstructions to pretty good transfer and the known family
//! characterizations for paths and cycles.

use std::collections::{HashSet, VecDeque};

use super::{QuantumState, StateKind, TransferError};
use crate::arith::{is_prime, two_adic};
use crate::graph::Graph;

/// Largest group generated from the supplied automorphisms before the
/// closure is cut off.
const CLOSURE_LIMIT: usize = 4096;

/// Which obstruction refuted a target.
#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub target: QuantumState,
    pub criterion: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObstructionVerdict {
    /// Every considered target is refuted.
    CertifiedNo { criterion: String, refutations: Vec<Refutation> },
    /// Some targets survive every obstruction; `survivors` lists them.
    Inconclusive { refutations: Vec<Refutation>, survivors: Vec<QuantumState> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    pub group_order: usize,
    pub closure_truncated: bool,
    pub vertex_transitive: bool,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn is_no(&self) -> bool {
        matches!(self.verdict, ObstructionVerdict::CertifiedNo { .. })
    }

    pub fn criterion(&self) -> Option<&str> {
        match &self.verdict {
            ObstructionVerdict::CertifiedNo { criterion, .. } => Some(criterion),
            ObstructionVerdict::Inconclusive { .. } => None,
        }
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p o q)(v) = p(q(v))
    q.iter().map(|&v| p[v]).collect()
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (v, &pv) in p.iter().enumerate() {
        inv[pv] = v;
    }
    inv
}

fn fixed_points(p: &[usize]) -> Vec<usize> {
    p.iter().enumerate().filter(|(v, &pv)| *v == pv).map(|(v, _)| v).collect()
}

/// Group generated by `gens`, up to [`CLOSURE_LIMIT`] elements.
fn closure(n: usize, gens: &[Vec<usize>]) -> (Vec<Vec<usize>>, bool) {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                if out.len() >= CLOSURE_LIMIT {
                    return (out, true);
                }
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    (out, false)
}

/// For every vertex, an automorphism fixing exactly that vertex, when one
/// can be built from the group elements and conjugation by the generators.
fn single_fixers(n: usize, elements: &[Vec<usize>], gens: &[Vec<usize>]) -> Vec<Option<Vec<usize>>> {
    let mut fixers: Vec<Option<Vec<usize>>> = vec![None; n];
    for p in elements {
        if let [v] = fixed_points(p)[..] {
            if fixers[v].is_none() {
                fixers[v] = Some(p.clone());
            }
        }
    }
    // spread along generator orbits: if phi fixes only u and tau(u) = v, then
    // tau phi tau^-1 fixes only v
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| fixers[v].is_some()).collect();
    while let Some(u) = queue.pop_front() {
        let phi = fixers[u].clone().expect("queued vertices have fixers");
        for g in gens {
            let v = g[u];
            if fixers[v].is_none() {
                fixers[v] = Some(compose(&compose(g, &phi), &inverse(g)));
                queue.push_back(v);
            }
        }
    }
    fixers
}

fn is_transitive(n: usize, gens: &[Vec<usize>]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for g in gens {
            if !seen[g[u]] {
                seen[g[u]] = true;
                queue.push_back(g[u]);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// `P s = eps s` for `eps = +-1`.
fn eigen_sign(s: &QuantumState, p: &[usize]) -> Option<i8> {
    let ps = s.permuted(p);
    let diff = |sg: f64| ps.amplitudes().iter().zip(s.amplitudes()).map(|(x, y)| (x - y * sg).norm()).fold(0.0, f64::max);
    if diff(1.0) < 1e-12 {
        Some(1)
    } else if diff(-1.0) < 1e-12 {
        Some(-1)
    } else {
        None
    }
}

fn sign_word(e: Option<i8>) -> &'static str {
    match e {
        Some(1) => "itself",
        Some(_) => "minus itself",
        None => "an independent state",
    }
}

fn pair_vertices(s: &QuantumState) -> Option<(usize, usize)> {
    match *s.kind() {
        StateKind::Pair(a, b) => Some((a, b)),
        _ => None,
    }
}

struct Context<'a> {
    g: &'a Graph,
    elements: Vec<Vec<usize>>,
    fixers: Vec<Option<Vec<usize>>>,
    antipodal_cycle: bool,
}

impl Context<'_> {
    fn refute(&self, source: &QuantumState, target: &QuantumState) -> Option<(String, String)> {
        if let (Some((a, b)), Some((c, d))) = (pair_vertices(source), pair_vertices(target)) {
            for (v, others) in [(a, [c, d]), (b, [c, d]), (c, [a, b]), (d, [a, b])] {
                if others.contains(&v) {
                    continue;
                }
                if let Some(p) = &self.fixers[v] {
                    let witness = format!("automorphism {} fixes only vertex {}", self.describe_perm(p), self.g.label(v));
                    return Some(("single-fixed-point".to_string(), witness));
                }
            }
        }
        for p in &self.elements {
            let es = eigen_sign(source, p);
            let et = eigen_sign(target, p);
            // pretty good transfer in either direction forces matching stabilizer signs
            let mismatch = match (es, et) {
                (Some(x), Some(y)) => x != y,
                (Some(_), None) | (None, Some(_)) => true,
                (None, None) => false,
            };
            if mismatch {
                let criterion = if self.antipodal_cycle { "antipodal-pair-even-cycle" } else { "stabilizer-mismatch" };
                let witness = format!(
                    "automorphism {} sends source to {} and target to {}",
                    self.describe_perm(p),
                    sign_word(es),
                    sign_word(et),
                );
                return Some((criterion.to_string(), witness));
            }
        }
        None
    }

    fn describe_perm(&self, p: &[usize]) -> String {
        let moved: Vec<String> =
            p.iter().enumerate().filter(|(v, &pv)| *v != pv).map(|(v, &pv)| format!("{}->{}", self.g.label(v), self.g.label(pv))).collect();
        if moved.is_empty() {
            "identity".into()
        } else {
            format!("[{}]", moved.join(" "))
        }
    }
}

/// Applies the automorphism obstructions to pretty good transfer.
///
/// The supplied permutations must be automorphisms; the group they generate
/// is enumerated (up to 4096 elements). A target is refuted when some group
/// element fixes the source up to sign but not the target with the same
/// sign (or vice versa), or, for pair states, when an automorphism fixes
/// exactly one vertex that lies in one pair but not the other. Such
/// automorphisms are also obtained by conjugating along generator orbits,
/// which is how vertex-transitive graphs with a single-fixed-point map (odd
/// abelian Cayley graphs with inversion) are refuted for every pair.
///
/// With `target = None` every state of the same kind is considered and the
/// verdict is `CertifiedNo` only if all of them are refuted.
pub fn pgst_obstructions(
    g: &Graph,
    source: &QuantumState,
    target: Option<&QuantumState>,
    automorphisms: &[Vec<usize>],
) -> Result<ObstructionReport, TransferError> {
    let n = g.n();
    if source.n() != n {
        return Err(TransferError::LengthMismatch { expected: n, found: source.n() });
    }
    for (i, p) in automorphisms.iter().enumerate() {
        if !g.is_automorphism(p) {
            return Err(TransferError::NotAutomorphism(i));
        }
    }
    let (elements, truncated) = closure(n, automorphisms);
    let fixers = single_fixers(n, &elements, automorphisms);
    let vertex_transitive = is_transitive(n, automorphisms);
    let antipodal_cycle = match (g.as_cycle(), pair_vertices(source)) {
        (Some(m), Some((a, b))) => m % 2 == 0 && (a + m - b) % m == m / 2,
        _ => false,
    };
    let ctx = Context { g, elements, fixers, antipodal_cycle };

    let targets: Vec<QuantumState> = match target {
        Some(t) => {
            if t.n() != n {
                return Err(TransferError::LengthMismatch { expected: n, found: t.n() });
            }
            vec![t.clone()]
        }
        None => all_targets(source, n),
    };
    let mut refutations = Vec::new();
    let mut survivors = Vec::new();
    for t in targets {
        if t.is_dependent(source) {
            continue;
        }
        match ctx.refute(source, &t) {
            Some((criterion, witness)) => refutations.push(Refutation { target: t, criterion, witness }),
            None => survivors.push(t),
        }
    }
    let mut notes = Vec::new();
    if truncated {
        notes.push(format!("automorphism group closure stopped at {CLOSURE_LIMIT} elements"));
    }
    let verdict = if survivors.is_empty() && !refutations.is_empty() {
        let first = refutations[0].criterion.clone();
        let criterion = if refutations.iter().all(|r| r.criterion == first) {
            if first == "single-fixed-point" && vertex_transitive && target.is_none() {
                "vertex-transitive-single-fixed-point".to_string()
            } else {
                first
            }
        } else {
            "all-targets-refuted".to_string()
        };
        ObstructionVerdict::CertifiedNo { criterion, refutations }
    } else {
        ObstructionVerdict::Inconclusive { refutations, survivors }
    };
    Ok(ObstructionReport { verdict, group_order: ctx.elements.len(), closure_truncated: truncated, vertex_transitive, notes })
}

fn all_targets(source: &QuantumState, n: usize) -> Vec<QuantumState> {
    match source.kind() {
        StateKind::Vertex(_) => (0..n).map(|v| QuantumState::vertex(n, v).expect("in range")).collect(),
        _ => {
            let mut out = Vec::new();
            for c in 0..n {
                for d in c + 1..n {
                    out.push(QuantumState::pair(n, c, d).expect("distinct vertices"));
                }
            }
            out
        }
    }
}

fn odd_part_is_one_or_prime(n: u64) -> bool {
    let (_, odd) = two_adic(n);
    odd == 1 || is_prime(odd)
}

/// Cycle pair-PGST characterization: `C_n` admits pair-PGST iff `n = 2^k` or
/// `n = 2^k p` with `k >= 1` and `p` an odd prime.
pub fn cycle_pair_pgst_predicate(n: u64) -> bool {
    let (k, _) = two_adic(n);
    n >= 3 && k >= 1 && odd_part_is_one_or_prime(n)
}

/// Vertex PGST on `P_n` between `a` and `b` (1-based): `a + b = n + 1`,
/// `a != b`, and either `n + 1 = 2^k`, or `n + 1 = 2^k p` with `p` an odd
/// prime and `a` a multiple of `2^(k-1)` (no constraint when `k = 0`).
pub fn path_vertex_pgst_predicate(n: u64, a: u64, b: u64) -> bool {
    if a == 0 || b == 0 || a + b != n + 1 || a == b {
        return false;
    }
    let (k, odd) = two_adic(n + 1);
    if odd == 1 {
        return k >= 1;
    }
    if !is_prime(odd) {
        return false;
    }
    k == 0 || a.is_multiple_of(1u64 << (k - 1))
}

/// Result of a pair-PGST family predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyPredicate {
    pub holds: bool,
    /// `n + 1 = 2p` (paths) or `n = 2p` (cycles): the divisibility
    /// condition `2^(k-2) | a` has `k = 1` and is read as vacuous.
    pub k_equals_one: bool,
}

fn pair_family(m: u64, a: u64) -> FamilyPredicate {
    // m = n + 1 for paths, n for cycles; both need m = 2^k or 2^k p
    let (k, odd) = two_adic(m);
    let none = FamilyPredicate { holds: false, k_equals_one: false };
    if k == 0 || 4 * a == m || 2 * a >= m || a == 0 {
        return none;
    }
    if odd == 1 {
        return FamilyPredicate { holds: k > 2, k_equals_one: false };
    }
    if !is_prime(odd) {
        return none;
    }
    if k == 1 {
        return FamilyPredicate { holds: true, k_equals_one: true };
    }
    FamilyPredicate { holds: a.is_multiple_of(1u64 << (k - 2)), k_equals_one: false }
}

/// Sufficient condition for pair-PGST in `P_n` between `(a, n+1-a)` and
/// `((n+1)/2 - a, (n+1)/2 + a)`, 1-based.
pub fn path_pair_pgst_predicate(n: u64, a: u64) -> FamilyPredicate {
    pair_family(n + 1, a)
}

/// Sufficient condition for pair-PGST in `C_n` between `(a, n-a)` and
/// `(n/2 - a, n/2 + a)`.
pub fn cycle_pair_family_predicate(n: u64, a: u64) -> FamilyPredicate {
    pair_family(n, a)
}
