use std::collections::BTreeMap;

use super::certify::certify_with_supports;
use super::{eigenvalue_support, QuantumState, Support, TransferCertificate, SUPPORT_TOL};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::spectral::SpectralData;

/// A certified perfect pair state transfer `(a,b) -> (c,d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PpstPair {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub certificate: TransferCertificate,
}

/// Why a source pair has no certified partner.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSummary {
    pub source: (usize, usize),
    /// Other pairs with the same eigenvalue support.
    pub partners_checked: usize,
    /// Criterion counts over those partners.
    pub criteria: BTreeMap<String, usize>,
    pub certified_partner: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpstSweep {
    pub certified: Vec<PpstPair>,
    pub sources: Vec<SourceSummary>,
    /// Criterion counts over all unordered pairs of pair states; pairs with
    /// different supports are counted under `support-mismatch` without
    /// running the pipeline.
    pub histogram: BTreeMap<String, usize>,
    pub warnings: Vec<String>,
}

/// Runs the certification pipeline over all unordered pairs of pair states
/// that share an eigenvalue support. Work is parallel by candidate; the
/// output order is fixed by vertex ids.
pub fn ppst_sweep(g: &Graph, spec: &SpectralData, exec: Exec) -> PpstSweep {
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let states: Vec<QuantumState> = pairs.iter().map(|&(a, b)| QuantumState::pair(n, a, b).expect("distinct")).collect();
    let supports: Vec<Support> = exec.map(&states, |s| eigenvalue_support(g, spec, s, SUPPORT_TOL));

    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, s) in supports.iter().enumerate() {
        buckets.entry(s.indices.clone()).or_default().push(i);
    }
    let mut candidates = Vec::new();
    for members in buckets.values() {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                candidates.push((i, j));
            }
        }
    }
    let total = pairs.len() * pairs.len().saturating_sub(1) / 2;
    let mut histogram = BTreeMap::new();
    if total > candidates.len() {
        histogram.insert("support-mismatch".to_string(), total - candidates.len());
    }

    let certs = exec.map(&candidates, |&(i, j)| certify_with_supports(g, spec, &states[i], &states[j], &supports[i], &supports[j]));

    let mut sources: Vec<SourceSummary> = pairs
        .iter()
        .map(|&p| SourceSummary { source: p, partners_checked: 0, criteria: BTreeMap::new(), certified_partner: None })
        .collect();
    let mut certified = Vec::new();
    let mut warnings: Vec<String> = supports.iter().flat_map(|s| s.warnings.iter().cloned()).collect();
    for (&(i, j), cert) in candidates.iter().zip(certs) {
        *histogram.entry(cert.criterion.clone()).or_insert(0) += 1;
        for (me, other) in [(i, j), (j, i)] {
            let s = &mut sources[me];
            s.partners_checked += 1;
            *s.criteria.entry(cert.criterion.clone()).or_insert(0) += 1;
            if cert.is_yes() {
                if let Some(prev) = s.certified_partner {
                    warnings.push(format!(
                        "monogamy violated: {:?} certified with both {:?} and {:?}",
                        pairs[me], prev, pairs[other]
                    ));
                }
                s.certified_partner = Some(pairs[other]);
            }
        }
        if cert.is_yes() {
            certified.push(PpstPair { source: pairs[i], target: pairs[j], certificate: cert });
        }
    }
    certified.sort_by_key(|p| (p.source, p.target));
    PpstSweep { certified, sources, histogram, warnings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};
    use crate::spectral::analyze;

    fn sweep(f: FamilySpec) -> PpstSweep {
        let g = build_family(&f).unwrap();
        let s = analyze(&g).unwrap();
        ppst_sweep(&g, &s, Exec::Sequential)
    }

    #[test]
    fn p5_has_exactly_one() {
        let r = sweep(FamilySpec::Path(5));
        let found: Vec<_> = r.certified.iter().map(|p| (p.source, p.target)).collect();
        assert_eq!(found, vec![((0, 4), (1, 3))]);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn p6_has_none() {
        assert!(sweep(FamilySpec::Path(6)).certified.is_empty());
    }

    #[test]
    fn c8_has_some() {
        assert!(!sweep(FamilySpec::Cycle(8)).certified.is_empty());
    }

    #[test]
    fn histogram_counts_every_pair_of_pairs() {
        let r = sweep(FamilySpec::Path(5));
        let total: usize = r.histogram.values().sum();
        assert_eq!(total, 10 * 9 / 2);
    }
}
