mod common;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qwalk::exec::Exec;
use qwalk::graph::{build_family, FamilySpec};
use qwalk::partition::BranchPair;
use qwalk::spectral::analyze;
use qwalk::transfer::{
    certify_pst, eigenvalue_support, evolve, fidelity, fractional_revival_check, mstate_transfer_check, neighborhood_invariant,
    pgst_evidence_for, sedentary_bound, strongly_cospectral, transition_matrix, SearchOptions, SUPPORT_TOL,
};
use qwalk::{QuantumState, Verdict};
use rand::Rng;

fn c(x: f64, y: f64) -> Complex64 {
    Complex64::new(x, y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn unitary_and_one_parameter_group(seed in any::<u64>(), n in 1usize..=10, s in -20.0f64..20.0, t in -20.0f64..20.0) {
        let mut r = common::rng(seed);
        let g = common::random_integer_graph(&mut r, n, 0.5, 3);
        let sp = analyze(&g).unwrap();
        let u = transition_matrix(&sp, t);
        let id = DMatrix::<Complex64>::identity(n, n);
        prop_assert!(common::max_abs(&(&u * u.adjoint() - &id)) < 1e-10);
        let lhs = transition_matrix(&sp, s + t);
        let rhs = transition_matrix(&sp, s) * &u;
        prop_assert!(common::max_abs(&(lhs - rhs)) < 1e-9);
    }

    #[test]
    fn fidelity_is_symmetric(seed in any::<u64>(), n in 2usize..=10, t in 0.0f64..50.0) {
        let mut r = common::rng(seed);
        let g = common::random_integer_graph(&mut r, n, 0.5, 3);
        let sp = analyze(&g).unwrap();
        let a = r.gen_range(0..n);
        let b = (a + r.gen_range(1..n)) % n;
        let x = QuantumState::pair(n, a, b).unwrap();
        let y = QuantumState::vertex(n, r.gen_range(0..n)).unwrap();
        prop_assert!((fidelity(&sp, t, &x, &y) - fidelity(&sp, t, &y, &x)).abs() < 1e-12);
    }

    #[test]
    fn strong_cospectrality_implies_neighbourhood_invariant(seed in any::<u64>(), n in 4usize..=9) {
        let mut r = common::rng(seed);
        let g = common::random_integer_graph(&mut r, n, 0.5, 1);
        let sp = analyze(&g).unwrap();
        for a in 0..n {
            for b in a + 1..n {
                for cc in 0..n {
                    for d in cc + 1..n {
                        if (a, b) == (cc, d) {
                            continue;
                        }
                        let s1 = QuantumState::pair(n, a, b).unwrap();
                        let s2 = QuantumState::pair(n, cc, d).unwrap();
                        if strongly_cospectral(&sp, &s1, &s2, SUPPORT_TOL).holds {
                            prop_assert_eq!(neighborhood_invariant(&g, a, b, cc, d), Some(true));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn support_is_invariant_under_automorphisms() {
    let specs = [
        FamilySpec::Path(7),
        FamilySpec::Cycle(8),
        FamilySpec::Cycle(9),
        FamilySpec::Complete(5),
        FamilySpec::cayley_symmetrized(vec![4, 4], vec![vec![1, 0], vec![0, 1]]),
    ];
    for f in specs {
        let g = build_family(&f).unwrap();
        let sp = analyze(&g).unwrap();
        let n = g.n();
        for p in f.automorphism_generators() {
            assert!(g.is_automorphism(&p));
            for a in 0..n {
                for b in a + 1..n {
                    let s = QuantumState::pair(n, a, b).unwrap();
                    let x = eigenvalue_support(&g, &sp, &s, SUPPORT_TOL);
                    let y = eigenvalue_support(&g, &sp, &s.permuted(&p), SUPPORT_TOL);
                    assert_eq!(x.indices, y.indices, "{f:?} ({a},{b})");
                }
            }
        }
    }
}

#[test]
fn certified_transfers_recheck_and_are_periodic_at_twice_the_time() {
    let mut r = common::rng(5);
    let mut checked = 0;
    for _ in 0..40 {
        let g = common::integer_spectrum_graph(&mut r);
        let sp = analyze(&g).unwrap();
        let n = g.n();
        for a in 0..n {
            for b in a + 1..n {
                let s = QuantumState::vertex(n, a).unwrap();
                let t = QuantumState::vertex(n, b).unwrap();
                let cert = certify_pst(&g, &sp, &s, &t).unwrap();
                if !cert.is_yes() {
                    continue;
                }
                let tau = cert.time.unwrap();
                let gamma = cert.phase.unwrap();
                assert!(fidelity(&sp, tau, &s, &t) >= 1.0 - 1e-9);
                let back = evolve(&sp, 2.0 * tau, &s);
                let err: f64 = back.iter().zip(s.amplitudes()).map(|(x, y)| (x - gamma * gamma * y).norm_sqr()).sum::<f64>().sqrt();
                assert!(err <= 1e-8);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn certification_agrees_with_brute_force_grid() {
    let mut r = common::rng(2024);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..50 {
        let g = common::integer_spectrum_graph(&mut r);
        let sp = analyze(&g).unwrap();
        let walk = common::DenseWalk::new(&g);
        let n = g.n();
        let mut cases: Vec<(QuantumState, QuantumState, Vec<f64>, Vec<f64>)> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                cases.push((
                    QuantumState::vertex(n, a).unwrap(),
                    QuantumState::vertex(n, b).unwrap(),
                    common::vertex(n, a),
                    common::vertex(n, b),
                ));
            }
        }
        for _ in 0..10 {
            let mut pick = || {
                let a = r.gen_range(0..n);
                (a, (a + r.gen_range(1..n)) % n)
            };
            let ((a, b), (p, q)) = (pick(), pick());
            if (a.min(b), a.max(b)) == (p.min(q), p.max(q)) {
                continue;
            }
            cases.push((
                QuantumState::pair(n, a, b).unwrap(),
                QuantumState::pair(n, p, q).unwrap(),
                common::pair(n, a, b),
                common::pair(n, p, q),
            ));
        }
        for (s, t, sv, tv) in cases {
            if s.is_dependent(&t) {
                continue;
            }
            let cert = certify_pst(&g, &sp, &s, &t).unwrap();
            assert_ne!(cert.verdict, Verdict::EvidenceOnly, "{:?}", cert);
            let best = common::grid_oracle(&walk, &sv, &tv);
            assert_eq!(cert.is_yes(), best >= 1.0 - 1e-6, "cert {:?} oracle {best}", cert);
            if cert.is_yes() {
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    assert!(yes >= 5 && no >= 5, "yes={yes} no={no}");
}

#[test]
fn path_pair_transfers() {
    let p5 = build_family(&FamilySpec::Path(5)).unwrap();
    let s5 = analyze(&p5).unwrap();
    let f = fidelity(&s5, PI / 2.0, &QuantumState::pair(5, 0, 4).unwrap(), &QuantumState::pair(5, 1, 3).unwrap());
    assert!((f - 1.0).abs() < 1e-12);
    let p7 = build_family(&FamilySpec::Path(7)).unwrap();
    let s7 = analyze(&p7).unwrap();
    let f = fidelity(&s7, PI / 2f64.sqrt(), &QuantumState::pair(7, 0, 6).unwrap(), &QuantumState::pair(7, 2, 4).unwrap());
    assert!((f - 1.0).abs() < 1e-12);
    let p9 = build_family(&FamilySpec::Path(9)).unwrap();
    let s9 = analyze(&p9).unwrap();
    for (a, b) in [(0, 8), (1, 7), (2, 6)] {
        let cert = certify_pst(&p9, &s9, &QuantumState::pair(9, a, b).unwrap(), &QuantumState::pair(9, 3, 5).unwrap()).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedNo);
    }
}

#[test]
fn p9_pair_revival_matches_p4() {
    let p9 = build_family(&FamilySpec::Path(9)).unwrap();
    let s = analyze(&p9).unwrap();
    let t = 2.0 * PI / 5f64.sqrt();
    let r = fractional_revival_check(&s, t, &QuantumState::pair(9, 0, 8).unwrap(), &QuantumState::pair(9, 3, 5).unwrap(), 1e-9).unwrap();
    let x = PI / 5f64.sqrt();
    assert!((r.alpha - c(-x.cos(), 0.0)).norm() < 1e-9);
    assert!((r.beta - c(0.0, -x.sin())).norm() < 1e-9);
}

#[test]
fn book_graph_three_page_state() {
    for l in 3..=5usize {
        let g = build_family(&FamilySpec::Book(l)).unwrap();
        let sp = analyze(&g).unwrap();
        let page = |k: usize| vec![2 * k, 2 * k + 1];
        let branches = [BranchPair::new(page(1), page(2)), BranchPair::new(page(1), page(3))];
        let l6 = 6f64.sqrt();
        let (cert, _, _) = mstate_transfer_check(&g, &sp, &branches, 2, 3, &[1.0 / l6, 1.0 / l6, -2.0 / l6]).unwrap();
        assert!(cert.is_yes(), "{cert:?}");
        assert!((cert.time.unwrap() - PI / 2.0).abs() < 1e-12);
        assert!((cert.phase.unwrap() - c(0.0, 1.0)).norm() < 1e-9);
    }
}

#[test]
fn two_copy_mstate_reduces_to_pair_transfer() {
    let g = build_family(&FamilySpec::Path(5)).unwrap();
    let sp = analyze(&g).unwrap();
    let r = 1.0 / 2f64.sqrt();
    let (cert, s, t) = mstate_transfer_check(&g, &sp, &[BranchPair::new(vec![0, 1], vec![4, 3])], 0, 1, &[r, -r]).unwrap();
    let direct = certify_pst(&g, &sp, &QuantumState::pair(5, 0, 4).unwrap(), &QuantumState::pair(5, 1, 3).unwrap()).unwrap();
    assert_eq!(cert.verdict, direct.verdict);
    assert_eq!(cert.time, direct.time);
    assert!(s.inner(&QuantumState::pair(5, 0, 4).unwrap()).norm() > 1.0 - 1e-12);
    assert!(t.inner(&QuantumState::pair(5, 1, 3).unwrap()).norm() > 1.0 - 1e-12);
    assert!(mstate_transfer_check(&g, &sp, &[BranchPair::new(vec![0, 1], vec![4, 3])], 0, 1, &[0.6, 0.8]).is_err());
}

#[test]
fn complete_graphs_are_sedentary() {
    for n in [5usize, 8] {
        let g = build_family(&FamilySpec::Complete(n)).unwrap();
        let sp = analyze(&g).unwrap();
        let est = sedentary_bound(&sp, 0, 1e3, Exec::Parallel);
        assert!(est.infimum_estimate >= 1.0 - 2.0 / n as f64 - 1e-6);
        assert!(est.infimum_estimate <= 1.0 - 2.0 / n as f64 + 1e-6);
    }
}

#[test]
fn pst_pair_has_unit_peak() {
    let g = build_family(&FamilySpec::Path(3)).unwrap();
    let sp = analyze(&g).unwrap();
    let e = pgst_evidence_for(&sp, &QuantumState::vertex(3, 0).unwrap(), &QuantumState::vertex(3, 2).unwrap(), &SearchOptions { horizon: 10.0, ..Default::default() });
    assert!(e.peak_fidelity > 1.0 - 1e-10);
    assert!((e.peak_time - PI / 2f64.sqrt()).abs() < 1e-6);
}

#[test]
fn c5_pairs_stay_away_from_one() {
    let g = build_family(&FamilySpec::Cycle(5)).unwrap();
    let sp = analyze(&g).unwrap();
    let opts = SearchOptions { horizon: 2e3, ..Default::default() };
    let e = pgst_evidence_for(&sp, &QuantumState::pair(5, 0, 1).unwrap(), &QuantumState::pair(5, 0, 2).unwrap(), &opts);
    assert!(e.peak_fidelity < 0.99);
}
