use proptest::prelude::*;
use schur_core::trigraph::{
    binomial, brute_force_max_triangles, extremal_graph, max_triangles_formula, SimpleGraph,
};

fn graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=10).prop_flat_map(|v| {
        prop::collection::vec(any::<bool>(), v * (v - 1) / 2).prop_map(move |bits| {
            let mut g = SimpleGraph::empty(v);
            let mut it = bits.into_iter();
            for a in 0..v {
                for b in a + 1..v {
                    if it.next().unwrap() {
                        g.add_edge(a, b);
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn edges_split_between_graph_and_complement(g in graph()) {
        let v = g.vertex_count() as u64;
        prop_assert_eq!((g.edge_count() + g.complement().edge_count()) as u64, binomial(v, 2));
        prop_assert_eq!(g.complement().complement(), g.clone());
    }

    #[test]
    fn no_graph_beats_the_formula(g in graph()) {
        prop_assert!(g.count_triangles() <= max_triangles_formula(g.edge_count() as u64));
    }
}

#[test]
fn brute_force_agrees_on_six_vertices() {
    for e in 0..=15 {
        assert_eq!(brute_force_max_triangles(e, 6).unwrap(), max_triangles_formula(e as u64), "e = {e}");
    }
}

#[test]
fn extremal_graphs_are_extremal() {
    for e in 0..=45u64 {
        assert_eq!(extremal_graph(e).count_triangles(), max_triangles_formula(e));
    }
}
