mod common;

use common::*;
use iterforce::{
    burning_number, closure, failed_zero_forcing_number, min_fort, superfluous_burning_number,
    zero_forcing_number, Budget, Graph, VertexSet,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_naive(g in arb_graph(10), mask in any::<u64>()) {
        let n = g.order();
        let mask = mask & ((1u64 << n) - 1);
        let start = VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        let (fast, _) = closure(&g, &start);
        let slow = naive_closure(&g, &mask_to_flags(n, mask));
        let slow: Vec<usize> = (0..n).filter(|&v| slow[v]).collect();
        prop_assert_eq!(fast.to_vec(), slow);
    }

    #[test]
    fn zero_forcing_matches_naive(g in arb_graph(9)) {
        let r = zero_forcing_number(&g, &Budget::unlimited()).unwrap();
        prop_assert_eq!(r.value, Some(naive_z(&g)));
        let w: u64 = r.witness.iter().map(|&v| 1u64 << v).sum();
        prop_assert!(forces_everything(&g, w));
        // Lexicographically least among minimum sets.
        let k = r.witness.len();
        let n = g.order();
        let least = (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == k && forces_everything(&g, *m))
            .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
            .min()
            .unwrap();
        prop_assert_eq!(r.witness, least);
    }

    #[test]
    fn forts_match_naive(g in arb_graph(9)) {
        let n = g.order();
        let fz = failed_zero_forcing_number(&g, &Budget::unlimited()).unwrap();
        let f = min_fort(&g, n, &Budget::unlimited()).unwrap();
        prop_assert_eq!(fz.value, Some(naive_fz(&g)));
        prop_assert_eq!(f.value, Some(naive_min_fort(&g)));
        prop_assert_eq!(fz.value.unwrap() + f.value.unwrap(), n);
        let mask: u64 = f.witness.iter().map(|&v| 1u64 << v).sum();
        prop_assert!(naive_is_fort(&g, mask));
    }

    #[test]
    fn burning_matches_naive(g in arb_graph(7)) {
        prop_assume!(g.is_connected());
        let b = burning_number(&g, &Budget::unlimited()).unwrap();
        prop_assert_eq!(b.value, Some(naive_b(&g)));
        let seq: Vec<Option<usize>> = b.witness.iter().copied().map(Some).collect();
        prop_assert!(burned_after(&g, &seq).iter().all(|&x| x));
        let bs = superfluous_burning_number(&g, &Budget::unlimited()).unwrap();
        prop_assert_eq!(bs.value, Some(naive_b_star(&g)));
        let mut seq: Vec<Option<usize>> = bs.witness.iter().copied().map(Some).collect();
        *seq.last_mut().unwrap() = None;
        prop_assert!(burned_after(&g, &seq).iter().all(|&x| x));
    }
}

#[test]
fn naive_oracles_agree_on_hand_values() {
    assert_eq!(naive_z(&Graph::path(5)), 1);
    assert_eq!(naive_z(&Graph::complete(4)), 3);
    assert_eq!(naive_fz(&Graph::complete(4)), 2);
    assert_eq!(naive_min_fort(&Graph::cycle(5)), 3);
    assert_eq!(naive_b(&Graph::path(4)), 2);
    assert_eq!(naive_b(&Graph::path(5)), 3);
    assert_eq!(naive_b_star(&Graph::complete(1)), 2);
    assert_eq!(naive_b_star(&Graph::path(4)), 3);
    assert_eq!(iso_classes(4).len(), 11);
    assert_eq!(all_labelled(4).len(), 64);
}
