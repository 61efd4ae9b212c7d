use multirees::graph::chordal::{find_long_induced_cycle, gamma_free, long_induced_cycle_by_subsets};
use multirees::graph::{is_chordal_bipartite, BipartiteGraph, ChordalMethod};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(l, r)| (Just(l), Just(r), proptest::collection::vec(any::<bool>(), l * r)))
        .prop_map(|(l, r, bits)| {
            let mut g = BipartiteGraph::new(
                (1..=l).map(|i| format!("x{i}")).collect(),
                (1..=r).map(|j| format!("t{j}")).collect(),
            );
            for a in 0..l {
                for b in 0..r {
                    if bits[a * r + b] {
                        g.add_edge(a, b);
                    }
                }
            }
            g
        })
}

fn is_chordless_cycle(g: &BipartiteGraph, cycle: &[usize]) -> bool {
    let adj = g.adjacency();
    let k = cycle.len();
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if adj[cycle[i]].contains(&cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn search_methods_agree_with_subset_enumeration(g in arb_graph()) {
        let reference = long_induced_cycle_by_subsets(&g);
        let search = find_long_induced_cycle(&g);
        prop_assert_eq!(reference.is_none(), search.is_none());
        prop_assert_eq!(reference.is_none(), gamma_free(&g));
        if let Some(c) = search {
            prop_assert!(c.len() >= 6);
            prop_assert!(is_chordless_cycle(&g, &c));
        }
        let v = is_chordal_bipartite(&g, ChordalMethod::GammaFree);
        prop_assert_eq!(v.chordal, reference.is_none());
    }
}
