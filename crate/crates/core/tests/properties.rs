use proptest::prelude::*;

use stargraph::cuts::symbol_profile;
use stargraph::decomposition::{partition_by_dimension, partition_by_symbol};
use stargraph::{AdjacencyMode, StarGraph, VertexId, VertexSet};

fn graph(n: usize) -> StarGraph {
    StarGraph::new(n, AdjacencyMode::Auto).unwrap()
}

/// `(n, vertex set)` with `3 <= n <= 6`.
fn vertex_set() -> impl Strategy<Value = (usize, VertexSet)> {
    (3usize..=6).prop_flat_map(|n| {
        let order = (1..=n).product::<usize>();
        (Just(n), prop::collection::btree_set(0..order, 1..=order.min(40)))
            .prop_map(|(n, s)| (n, s.into_iter().map(VertexId).collect()))
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_regular(n in 2usize..=7, seed in any::<u64>()) {
        let g = graph(n);
        let v = VertexId(seed as usize % g.order());
        let nbrs: Vec<VertexId> = g.neighbors(v).collect();
        prop_assert_eq!(nbrs.len(), n - 1);
        for w in nbrs {
            prop_assert!(w != v);
            prop_assert!(g.neighbors(w).any(|u| u == v));
        }
    }

    #[test]
    fn materialized_and_implicit_agree(n in 2usize..=7, seed in any::<u64>()) {
        let a = StarGraph::new(n, AdjacencyMode::Materialized).unwrap();
        let b = StarGraph::new(n, AdjacencyMode::Implicit).unwrap();
        let v = VertexId(seed as usize % a.order());
        prop_assert_eq!(a.neighbors(v).collect::<Vec<_>>(), b.neighbors(v).collect::<Vec<_>>());
    }

    #[test]
    fn boundary_counts_match((n, x) in vertex_set()) {
        let g = graph(n);
        let boundary = g.edge_boundary(&x).unwrap();
        let inner = g.induced_edge_count(&x);
        prop_assert_eq!(boundary.len(), x.len() * (n - 1) - 2 * inner);
        let outside = g.neighborhood(&x).unwrap();
        prop_assert!(outside.is_disjoint(&x));
        prop_assert!(outside.len() <= boundary.len());
    }

    #[test]
    fn profile_duality((n, x) in vertex_set()) {
        let g = graph(n);
        let p = symbol_profile(&g, &x).unwrap();
        prop_assert!(p.duality_holds());
        prop_assert_eq!(p.position_total(), p.symbol_total());
        for j in 2..=n {
            for i in p.symbols_at(j) {
                prop_assert!(p.positions_of(i).contains(&j));
            }
        }
    }

    #[test]
    fn partitions_cover_every_vertex_once(n in 2usize..=6, pick in any::<usize>()) {
        let g = graph(n);
        let j = 2 + pick % (n - 1);
        let dp = partition_by_dimension(&g, j).unwrap();
        let mut seen = vec![0u8; g.order()];
        for (_, part) in dp.parts() {
            for v in part.iter() {
                seen[v.0] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));

        let i = 1 + pick % n;
        let sp = partition_by_symbol(&g, i).unwrap();
        let mut seen = vec![0u8; g.order()];
        for v in sp.center().iter().chain(sp.parts().flat_map(|(_, p)| p.iter())) {
            seen[v.0] += 1;
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }
}
