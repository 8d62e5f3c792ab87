mod common;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use qwalk::graph::{build_family, cartesian_product, FamilySpec};
use qwalk::spectral::{analyze, char_poly_exact, decompose};
use qwalk::{AlgebraicClass, IntPoly};

fn op_norm_bound(m: &DMatrix<f64>) -> f64 {
    // Frobenius norm bounds the operator norm
    m.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projector_algebra(seed in any::<u64>(), n in 1usize..=12, p in 0.1f64..0.9) {
        let mut r = common::rng(seed);
        let g = common::random_integer_graph(&mut r, n, p, 3);
        let s = decompose(&g, None).unwrap();
        let id = DMatrix::<f64>::identity(n, n);
        let mut sum = DMatrix::zeros(n, n);
        for i in 0..s.len() {
            let e = s.projector(i);
            prop_assert!(op_norm_bound(&(&e * &e - &e)) < 1e-10);
            for j in i + 1..s.len() {
                prop_assert!(op_norm_bound(&(&e * s.projector(j))) < 1e-10);
            }
            sum += e;
        }
        prop_assert!(op_norm_bound(&(sum - id)) < 1e-10);
        prop_assert!((s.reconstruct() - g.adjacency()).abs().max() < 1e-9);
    }

    #[test]
    fn exact_classes_are_roots(seed in any::<u64>(), n in 1usize..=12, p in 0.1f64..0.9) {
        let mut r = common::rng(seed);
        let g = common::random_integer_graph(&mut r, n, p, 3);
        let s = analyze(&g).unwrap();
        let poly = s.char_poly().unwrap();
        for (i, c) in s.classes().unwrap().iter().enumerate() {
            match c {
                AlgebraicClass::Integer { value } => prop_assert!(poly.eval(value).is_zero()),
                AlgebraicClass::Quadratic { c, d, delta } => {
                    let q = IntPoly::monic_quadratic(-c.clone(), (c * c - d * d * BigInt::from(*delta)) / 4);
                    prop_assert!(poly.div_exact_monic(&q).is_some());
                    prop_assert!((c.clone() * c - d * d * BigInt::from(*delta)) % 4 == BigInt::zero());
                }
                AlgebraicClass::Other { .. } => {}
            }
            if let Some(v) = c.value() {
                prop_assert!((v - s.eigenvalue(i)).abs() < 1e-9);
            }
        }
    }
}

/// Root of multiplicity `m` near `x`: `p^(m-1)` changes sign across `x +- h`,
/// evaluated exactly.
fn has_root_near(p: &IntPoly, m: usize, x: f64, h: f64) -> bool {
    let mut q = p.clone();
    for _ in 1..m {
        q = q.derivative();
    }
    let lo = BigRational::from_float(x - h).unwrap();
    let hi = BigRational::from_float(x + h).unwrap();
    let (a, b) = (q.eval_rational(&lo), q.eval_rational(&hi));
    a.is_zero() || b.is_zero() || a.is_negative() != b.is_negative()
}

#[test]
fn numeric_eigenvalues_bracket_exact_roots() {
    let mut r = common::rng(7);
    for n in [4usize, 9, 16, 24, 32] {
        for _ in 0..3 {
            let g = common::random_integer_graph(&mut r, n, 0.3, 2);
            let s = analyze(&g).unwrap();
            let p = char_poly_exact(&g).unwrap();
            assert_eq!(p.degree(), Some(n));
            let total: usize = s.multiplicities().iter().sum();
            assert_eq!(total, n);
            for (i, &m) in s.multiplicities().iter().enumerate() {
                assert!(has_root_near(&p, m, s.eigenvalue(i), 1e-8), "n={n} eigenvalue {} (mult {m})", s.eigenvalue(i));
            }
        }
    }
}

#[test]
fn char_poly_examples() {
    let p2 = char_poly_exact(&build_family(&FamilySpec::Path(2)).unwrap()).unwrap();
    assert_eq!(p2, IntPoly::from_i64(&[-1, 0, 1]));
    let p4 = char_poly_exact(&build_family(&FamilySpec::Path(4)).unwrap()).unwrap();
    assert_eq!(p4, IntPoly::from_i64(&[1, 0, -3, 0, 1]));
    let c4 = char_poly_exact(&build_family(&FamilySpec::Cycle(4)).unwrap()).unwrap();
    assert_eq!(c4, IntPoly::from_i64(&[0, 0, -4, 0, 1]));
}

#[test]
fn path_and_cycle_spectra_up_to_64() {
    use std::f64::consts::PI;
    for n in 1..=64usize {
        let s = decompose(&build_family(&FamilySpec::Path(n)).unwrap(), None).unwrap();
        let mut want: Vec<f64> = (1..=n).map(|j| 2.0 * (j as f64 * PI / (n + 1) as f64).cos()).collect();
        want.sort_by(|a, b| b.total_cmp(a));
        let got = s.raw_eigenvalues();
        for (x, y) in got.iter().zip(&want) {
            assert!((x - y).abs() < 1e-10, "P{n}");
        }
    }
    for n in 3..=64usize {
        let s = decompose(&build_family(&FamilySpec::Cycle(n)).unwrap(), None).unwrap();
        let mut want: Vec<f64> = (0..n).map(|j| 2.0 * (2.0 * j as f64 * PI / n as f64).cos()).collect();
        want.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in s.raw_eigenvalues().iter().zip(&want) {
            assert!((x - y).abs() < 1e-10, "C{n}");
        }
    }
}

#[test]
fn product_spectrum_is_all_sums() {
    let mut r = common::rng(11);
    for _ in 0..10 {
        let g = common::random_integer_graph(&mut r, 7, 0.4, 2);
        let h = common::random_integer_graph(&mut r, 9, 0.4, 2);
        let gh = cartesian_product(&g, &h);
        let sg = decompose(&g, None).unwrap();
        let sh = decompose(&h, None).unwrap();
        let mut want: Vec<f64> = sg.raw_eigenvalues().iter().flat_map(|x| sh.raw_eigenvalues().iter().map(move |y| x + y)).collect();
        want.sort_by(|a, b| b.total_cmp(a));
        let got = decompose(&gh, None).unwrap();
        for (x, y) in got.raw_eigenvalues().iter().zip(&want) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn spectrum_examples() {
    let s = analyze(&build_family(&FamilySpec::Path(7)).unwrap()).unwrap();
    let quad2 = s
        .classes()
        .unwrap()
        .iter()
        .filter(|c| matches!(c, AlgebraicClass::Quadratic { delta: 2, .. }))
        .count();
    assert_eq!(quad2, 2);
    let s = analyze(&build_family(&FamilySpec::Cycle(4)).unwrap()).unwrap();
    assert!(s.classes().unwrap().iter().all(AlgebraicClass::is_integer));
}
