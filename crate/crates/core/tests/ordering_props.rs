mod common;

use common::{arb_graph, brute_wreach};
use domkernel::orderings::{degeneracy, degeneracy_order, wcol_of_order, wreach, wreach_family};
use domkernel::profiles::vc_dimension;
use domkernel::{Graph, Ordering, Vertex};
use proptest::prelude::*;

fn arb_graph_and_order(max_n: usize) -> impl Strategy<Value = (Graph, Ordering)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let seq: Vec<Vertex> = g.vertices().collect();
        (Just(g), Just(seq).prop_shuffle())
            .prop_map(|(g, seq)| (g, Ordering::from_sequence(seq).unwrap()))
    })
}

fn positions(order: &Ordering) -> Vec<usize> {
    (0..order.len()).map(|v| order.position(v)).collect()
}

proptest! {
    #![proptest_config(common::cases(500))]

    #[test]
    fn wreach_matches_path_enumeration((g, order) in arb_graph_and_order(10), r in 1u32..4) {
        let pos = positions(&order);
        for v in g.vertices() {
            let fast = wreach(&g, &order, v, r).unwrap();
            prop_assert_eq!(&fast, &brute_wreach(&g, &pos, v, r), "v = {}", v);
            prop_assert!(fast.contains(v));
            prop_assert!(fast.iter().all(|u| u == v || order.less(u, v)));
        }
    }

    #[test]
    fn wcol_grows_with_radius((g, order) in arb_graph_and_order(12), r in 1u32..4) {
        prop_assert!(wcol_of_order(&g, &order, r).unwrap() <= wcol_of_order(&g, &order, r + 1).unwrap());
    }

    #[test]
    fn degeneracy_order_bounds_back_degree(g in arb_graph(12)) {
        let order = degeneracy_order(&g);
        let d = degeneracy(&g);
        prop_assert_eq!(wcol_of_order(&g, &order, 1).unwrap(), if g.n() == 0 { 0 } else { d + 1 });
    }

    #[test]
    fn wreach_families_have_small_vc((g, order) in arb_graph_and_order(10), r in 1u32..3) {
        let family = wreach_family(&g, &order, r).unwrap();
        prop_assert!(vc_dimension(&family, 12).unwrap().value() <= g.n());
    }
}
