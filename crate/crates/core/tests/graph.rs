mod common;

use proptest::prelude::*;
use qwalk::graph::{build_family, graph_from_json, graph_to_json, FamilySpec};

fn families() -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for n in 1..=12 {
        v.push(FamilySpec::Path(n));
        v.push(FamilySpec::Complete(n));
        v.push(FamilySpec::Star(n));
        v.push(FamilySpec::Book(n));
    }
    for n in 3..=12 {
        v.push(FamilySpec::Cycle(n));
    }
    v.push(FamilySpec::cayley_symmetrized(vec![8, 4], vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 0]]));
    v.push(FamilySpec::cayley_symmetrized(vec![5], vec![vec![1]]));
    v.push(FamilySpec::CompleteMinusC4s { n: 8, cycles: vec![[0, 1, 2, 3], [4, 5, 6, 7]] });
    v
}

#[test]
fn family_adjacency_is_exactly_symmetric() {
    for f in families() {
        let a = build_family(&f).unwrap().adjacency();
        assert_eq!((&a - a.transpose()).abs().max(), 0.0, "{f:?}");
    }
}

#[test]
fn json_round_trip_is_identity() {
    for f in families() {
        let g = build_family(&f).unwrap();
        let text = graph_to_json(&g).to_string();
        let back = graph_from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(graph_to_json(&back).to_string(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn switching_map_is_an_automorphism(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (g, bp) = common::random_construction(&mut r);
        let p = bp.switching_permutation(g.n());
        prop_assert!(g.is_automorphism(&p));
        prop_assert!(qwalk::partition::verify_branch_pair(&g, &bp).valid);
    }
}
