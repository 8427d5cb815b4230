mod common;

use k3sig::ade::{cartan_matrix, form_signature, is_negative_definite, plumbing_form};
use k3sig::{AdeKind, AdeType, DynkinGraph, FormSignature, SymIntForm};
use proptest::prelude::*;

fn symmetric(dim: usize, entries: Vec<i64>) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0; dim]; dim];
    let mut it = entries.into_iter();
    for i in 0..dim {
        for j in i..dim {
            let x = it.next().unwrap_or(0);
            rows[i][j] = x;
            rows[j][i] = x;
        }
    }
    rows
}

fn arb_symmetric(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |e| symmetric(n, e))
    })
}

fn inertia(rows: &[Vec<i64>]) -> (usize, usize, usize) {
    let s = form_signature(&SymIntForm::new(rows.to_vec()).unwrap());
    (s.positives, s.negatives, s.zeros)
}

/// Random tree on `n` vertices from a parent sequence.
fn arb_tree(max_n: usize) -> impl Strategy<Value = DynkinGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        (parents, prop::collection::vec(-4i64..=1, n)).prop_map(move |(ps, w)| {
            let edges = ps.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            DynkinGraph::new(n, edges, w).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn signature_matches_sturm_oracle(rows in arb_symmetric(5, 3)) {
        prop_assert_eq!(inertia(&rows), common::sturm_inertia(&rows));
    }

    #[test]
    fn signature_of_sparse_forms(rows in arb_symmetric(6, 1)) {
        prop_assert_eq!(inertia(&rows), common::sturm_inertia(&rows));
    }

    #[test]
    fn block_sum_adds_inertia(a in arb_symmetric(4, 3), b in arb_symmetric(4, 3)) {
        let qa = SymIntForm::new(a).unwrap();
        let qb = SymIntForm::new(b).unwrap();
        let sa = form_signature(&qa);
        let sb = form_signature(&qb);
        let s = form_signature(&qa.block_sum(&qb));
        prop_assert_eq!(
            s,
            FormSignature::new(sa.positives + sb.positives, sa.negatives + sb.negatives, sa.zeros + sb.zeros)
        );
    }

    #[test]
    fn negation_swaps_inertia(rows in arb_symmetric(5, 3)) {
        let q = SymIntForm::new(rows).unwrap();
        let s = form_signature(&q);
        let t = form_signature(&q.negate());
        prop_assert_eq!((t.positives, t.negatives, t.zeros), (s.negatives, s.positives, s.zeros));
        prop_assert_eq!(t.sigma(), -s.sigma());
        prop_assert_eq!(s.dim(), q.dim());
    }

    #[test]
    fn plumbing_on_random_trees(g in arb_tree(7)) {
        prop_assert!(g.is_tree());
        prop_assert_eq!(g.component_count(), 1);
        let rows = plumbing_form(&g).rows();
        prop_assert_eq!(inertia(&rows), common::sturm_inertia(&rows));
    }
}

#[test]
fn plumbing_of_minus_two_curves_is_minus_cartan() {
    for t in AdeType::all_up_to(20) {
        let form = plumbing_form(&t.dynkin_graph());
        assert_eq!(form, cartan_matrix(t).negate(), "{t}");
        assert!(is_negative_definite(&form), "{t}");
    }
}

#[test]
fn cartan_matrices_are_positive_definite_by_minors() {
    for t in AdeType::all_up_to(12) {
        let minors = common::leading_minors(&cartan_matrix(t).rows());
        assert!(minors.iter().all(|m| m.sign() == num_bigint::Sign::Plus), "{t}: {minors:?}");
    }
}

#[test]
fn cartan_determinants() {
    let det = |t: AdeType| common::determinant(&cartan_matrix(t).rows());
    for n in 1..=12 {
        assert_eq!(det(AdeType::a(n)), (n + 1).into());
    }
    for n in 4..=12 {
        assert_eq!(det(AdeType::d(n)), 4.into());
    }
    assert_eq!(det(AdeType::e(6)), 3.into());
    assert_eq!(det(AdeType::e(7)), 2.into());
    assert_eq!(det(AdeType::e(8)), 1.into());
}

#[test]
fn tube_signatures_agree_with_oracle_up_to_rank_8() {
    for t in AdeType::all_up_to(8) {
        let rows = cartan_matrix(t).negate().rows();
        assert_eq!(common::sturm_inertia(&rows), (0, t.rank() as usize, 0), "{t}");
    }
}

#[test]
fn affine_e8_is_degenerate() {
    // arms of length 2, 1 and 5 around vertex 2
    let mut edges: Vec<(usize, usize)> = (1..8).map(|i| (i - 1, i)).collect();
    edges.push((2, 8));
    let g = DynkinGraph::new(9, edges, vec![-2; 9]).unwrap();
    assert!(g.is_tree());
    let rows = plumbing_form(&g).rows();
    let expected = common::sturm_inertia(&rows);
    assert_eq!(inertia(&rows), expected);
    assert_eq!(expected, (0, 8, 1));
}

#[test]
fn hyperbolic_blocks() {
    assert_eq!(inertia(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
    let rows = vec![vec![0, 2, 1], vec![2, 0, 3], vec![1, 3, 0]];
    assert_eq!(inertia(&rows), common::sturm_inertia(&rows));
}

#[test]
fn graph_kinds() {
    for t in AdeType::all_up_to(20) {
        let g = t.dynkin_graph();
        assert_eq!(g.vertex_count(), t.rank() as usize);
        assert_eq!(g.edges().len(), g.vertex_count() - 1);
        let max_degree = (0..g.vertex_count())
            .map(|v| g.edges().iter().filter(|&&(a, b)| a == v || b == v).count())
            .max()
            .unwrap();
        let expected = match t.kind() {
            AdeKind::A => 2.min(t.rank() as usize - 1),
            AdeKind::D | AdeKind::E => 3,
        };
        assert_eq!(max_degree, expected, "{t}");
    }
}
