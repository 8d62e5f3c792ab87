//! Exact classification of the eigenvalues of an integer matrix.
//!
//! Integer roots come from rounding a numeric eigenvalue and testing
//! `p(r) = 0`. Quadratic irrationals `(c + d sqrt(delta)) / 2` are found by a
//! bounded scan over `(delta, d)` and confirmed by exact division of the
//! characteristic polynomial by `x^2 - c x + (c^2 - d^2 delta) / 4`. The exact
//! multiplicities then decide how the raw eigenvalues are grouped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{basis_of, char_poly_exact, group_by_tolerance, AlgebraicClass, EigenGroup, IntPoly, SpectralData, SpectralError};
use crate::arith::is_square_free;
use crate::graph::Graph;

/// Exactly identified root: its class and algebraic multiplicity.
#[derive(Debug, Clone)]
struct ExactRoot {
    class: AlgebraicClass,
    value: f64,
    multiplicity: usize,
}

/// Key of a monic quadratic factor, `(c, d^2 delta)`, shared by conjugates.
type QuadKey = (i64, i64);

struct Finder<'a> {
    poly: &'a IntPoly,
    radius: f64,
    near: f64,
    ints: BTreeMap<i64, usize>,
    quads: BTreeMap<QuadKey, (u64, usize)>,
}

impl<'a> Finder<'a> {
    fn new(poly: &'a IntPoly, radius: f64) -> Self {
        Finder { poly, radius, near: 1e-6 * radius.max(1.0), ints: BTreeMap::new(), quads: BTreeMap::new() }
    }

    fn multiplicity(&self, factor: &IntPoly) -> usize {
        let mut p = self.poly.clone();
        p.strip_factor(factor)
    }

    fn try_integer(&mut self, lambda: f64) -> Option<ExactRoot> {
        let r = lambda.round();
        if (lambda - r).abs() > self.near || r.abs() > 9.0e15 {
            return None;
        }
        let r = r as i64;
        if let Some(&m) = self.ints.get(&r) {
            return Some(int_root(r, m));
        }
        let rb = BigInt::from(r);
        if !self.poly.eval(&rb).is_zero() {
            return None;
        }
        let m = self.multiplicity(&IntPoly::linear(&rb));
        self.ints.insert(r, m);
        Some(int_root(r, m))
    }

    fn try_quadratic(&mut self, lambda: f64) -> Option<ExactRoot> {
        let rho = self.radius.max(lambda.abs());
        let max_delta = 4 * (rho * rho).ceil() as u64 + 1;
        for delta in 2..=max_delta {
            if !is_square_free(delta) {
                continue;
            }
            let sq = (delta as f64).sqrt();
            let dmax = (2.0 * rho / sq).ceil() as i64;
            for d in (-dmax..=dmax).filter(|&d| d != 0) {
                let cf = (2.0 * lambda - d as f64 * sq).round();
                if (cf + d as f64 * sq - 2.0 * lambda).abs() > 2.0 * self.near {
                    continue;
                }
                let c = cf as i64;
                let d2 = d * d * delta as i64;
                if (c * c - d2).rem_euclid(4) != 0 {
                    continue;
                }
                let key = (c, d2);
                let m = match self.quads.get(&key) {
                    Some(&(_, m)) => m,
                    None => {
                        let q = IntPoly::monic_quadratic(BigInt::from(-c), BigInt::from((c * c - d2) / 4));
                        if self.poly.div_exact_monic(&q).is_none() {
                            continue;
                        }
                        let m = self.multiplicity(&q);
                        self.quads.insert(key, (delta, m));
                        m
                    }
                };
                let value = (c as f64 + d as f64 * sq) / 2.0;
                let class = AlgebraicClass::Quadratic { c: BigInt::from(c), d: BigInt::from(d), delta };
                return Some(ExactRoot { class, value, multiplicity: m });
            }
        }
        None
    }
}

fn int_root(r: i64, m: usize) -> ExactRoot {
    ExactRoot { class: AlgebraicClass::Integer { value: BigInt::from(r) }, value: r as f64, multiplicity: m }
}

/// Fills in the algebraic class of every eigenvalue and regroups the raw
/// eigenvalues so that each group's size equals the exact multiplicity.
///
/// A diagnostic is recorded when the regrouping differs from the numeric
/// tolerance grouping; the exact count wins.
pub fn classify_eigenvalues(g: &Graph, mut spec: SpectralData) -> Result<SpectralData, SpectralError> {
    if spec.n != g.n() {
        return Err(SpectralError::SizeMismatch { expected: g.n(), found: spec.n });
    }
    let poly = char_poly_exact(g)?;
    let mut finder = Finder::new(&poly, spec.spectral_radius);

    let mut roots: Vec<ExactRoot> = Vec::new();
    for &lambda in &spec.raw_values {
        if roots.iter().any(|r| (r.value - lambda).abs() <= finder.near) {
            continue;
        }
        let found = finder.try_integer(lambda).or_else(|| finder.try_quadratic(lambda));
        if let Some(r) = found {
            if !roots.iter().any(|x| x.class == r.class) {
                roots.push(r);
            }
        }
    }

    // each exact root claims its multiplicity's worth of nearest raw eigenvalues
    let n = spec.n;
    let mut used = vec![false; n];
    let mut groups: Vec<(EigenGroup, Option<AlgebraicClass>)> = Vec::new();
    roots.sort_by(|a, b| b.value.total_cmp(&a.value));
    for r in &roots {
        let mut order: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        order.sort_by(|&i, &j| (spec.raw_values[i] - r.value).abs().total_cmp(&(spec.raw_values[j] - r.value).abs()));
        let mut members: Vec<usize> = order.into_iter().take(r.multiplicity).collect();
        members.sort_unstable();
        for &i in &members {
            used[i] = true;
        }
        if members.is_empty() {
            continue;
        }
        let far = members.iter().map(|&i| (spec.raw_values[i] - r.value).abs()).fold(0.0, f64::max);
        if far > 1e-6 * spec.spectral_radius.max(1.0) {
            spec.diagnostics.push(format!(
                "exact eigenvalue {} with multiplicity {} claimed a numeric eigenvalue {:.3e} away",
                r.class.describe(),
                r.multiplicity,
                far
            ));
        }
        groups.push((EigenGroup { value: r.value, basis: basis_of(&spec.raw_vectors, &members) }, Some(r.class.clone())));
    }
    let leftover: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
    for grp in group_by_tolerance(&spec.raw_values, &spec.raw_vectors, &leftover, spec.tol) {
        groups.push((grp, None));
    }
    groups.sort_by(|a, b| b.0.value.total_cmp(&a.0.value));

    let other_count = groups.iter().filter(|g| g.1.is_none()).count();
    let exact_degree: usize = roots.iter().map(|r| r.multiplicity).sum();
    let residual_degree = poly.degree().unwrap_or(0).saturating_sub(exact_degree);
    // with no integer or quadratic factor left, a squarefree residual of degree 3..=5 is irreducible
    let forced_degree = (residual_degree == other_count && (3..=5).contains(&other_count)).then_some(other_count);
    let other_mults_simple = groups.iter().filter(|g| g.1.is_none()).all(|g| g.0.basis.ncols() == 1);

    let old_mults: Vec<usize> = spec.groups.iter().map(|g| g.basis.ncols()).collect();
    let new_mults: Vec<usize> = groups.iter().map(|g| g.0.basis.ncols()).collect();
    if old_mults != new_mults {
        spec.diagnostics.push(format!(
            "tolerance grouping gave multiplicities {old_mults:?}; exact characteristic polynomial gives {new_mults:?}"
        ));
    }

    let mut classes = Vec::with_capacity(groups.len());
    spec.groups = groups
        .into_iter()
        .map(|(grp, class)| {
            classes.push(class.unwrap_or(AlgebraicClass::Other {
                min_poly_degree: if other_mults_simple { forced_degree } else { None },
            }));
            grp
        })
        .collect();
    spec.classes = Some(classes);
    spec.char_poly = Some(poly);
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec, GraphBuilder};
    use crate::spectral::analyze;

    fn classes_of(spec: FamilySpec) -> (Vec<f64>, Vec<AlgebraicClass>) {
        let s = analyze(&build_family(&spec).unwrap()).unwrap();
        (s.eigenvalues(), s.classes().unwrap().to_vec())
    }

    fn quad(c: i64, d: i64, delta: u64) -> AlgebraicClass {
        AlgebraicClass::Quadratic { c: c.into(), d: d.into(), delta }
    }

    #[test]
    fn p4_is_golden() {
        let (_, cls) = classes_of(FamilySpec::Path(4));
        assert_eq!(cls, vec![quad(1, 1, 5), quad(-1, 1, 5), quad(1, -1, 5), quad(-1, -1, 5)]);
    }

    #[test]
    fn p3_sqrt2_uses_even_d() {
        let (vals, cls) = classes_of(FamilySpec::Path(3));
        assert_eq!(cls[0], quad(0, 2, 2));
        assert_eq!(cls[1], AlgebraicClass::Integer { value: 0.into() });
        assert_eq!(cls[2], quad(0, -2, 2));
        assert!((vals[0] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn c4_is_integral() {
        let (_, cls) = classes_of(FamilySpec::Cycle(4));
        assert!(cls.iter().all(AlgebraicClass::is_integer));
        assert_eq!(cls.len(), 3);
    }

    #[test]
    fn p7_has_degree_four_factor() {
        // 2cos(j pi / 8): j = 2, 6 give +-sqrt 2, 4 gives 0, odd j are roots of x^4 - 4x^2 + 2
        let (_, cls) = classes_of(FamilySpec::Path(7));
        assert_eq!(cls[1], quad(0, 2, 2));
        assert_eq!(cls[3], AlgebraicClass::Integer { value: 0.into() });
        assert_eq!(cls[0], AlgebraicClass::Other { min_poly_degree: Some(4) });
    }

    #[test]
    fn cubic_field_from_c7() {
        // 2cos(2 pi j / 7) are roots of x^3 + x^2 - 2x - 1, each of multiplicity 2
        let (_, cls) = classes_of(FamilySpec::Cycle(7));
        assert_eq!(cls[0], AlgebraicClass::Integer { value: 2.into() });
        assert!(cls[1..].iter().all(|c| matches!(c, AlgebraicClass::Other { .. })));
    }

    #[test]
    fn exact_multiplicity_wins_over_loose_tolerance() {
        // eigenvalues 1 and -1 of two disjoint edges plus K1 at 0: a huge tolerance merges them all
        let g = GraphBuilder::new(5).edges(&[(0, 1), (2, 3)]).unwrap().build().unwrap();
        let s = super::super::decompose(&g, Some(5.0)).unwrap();
        assert_eq!(s.len(), 1);
        let s = classify_eigenvalues(&g, s).unwrap();
        assert_eq!(s.multiplicities(), vec![2, 1, 2]);
        assert!(!s.diagnostics().is_empty());
    }
}
