mod common;

use std::io::Cursor;

use common::*;
use dismantler::graph::{barabasi_albert, erdos_renyi, parse_edge_list, powerlaw_cluster, watts_strogatz, write_edge_list};
use dismantler::{Graph, UnionFind};
use proptest::prelude::*;

#[test]
fn generators_produce_valid_graphs() {
    for seed in 0..5 {
        for g in [
            erdos_renyi(300, 6.0, seed).unwrap(),
            barabasi_albert(300, 4, seed).unwrap(),
            watts_strogatz(300, 8, 0.3, seed).unwrap(),
            powerlaw_cluster(300, 3, 0.5, seed).unwrap(),
        ] {
            g.validate().unwrap();
            assert_eq!(g.num_nodes(), 300);
        }
    }
}

#[test]
fn ba_edge_band_for_standard_size() {
    for seed in 0..5 {
        let e = barabasi_albert(1000, 4, seed).unwrap().num_edges();
        assert!((3984..=3990).contains(&e), "{e}");
    }
}

#[test]
fn ring_lattice_counts() {
    let g = watts_strogatz(10, 4, 0.0, 1).unwrap();
    assert_eq!(g.num_edges(), 20);
    assert!(g.degrees().iter().all(|&d| d == 4));
}

#[test]
fn edge_list_round_trip_preserves_structure() {
    let g = powerlaw_cluster(150, 2, 0.4, 9).unwrap();
    let mut buf = Vec::new();
    write_edge_list(&g, None, &mut buf).unwrap();
    let back = parse_edge_list(Cursor::new(buf)).unwrap();
    assert_eq!(back.graph.num_nodes(), g.num_nodes());
    assert_eq!(back.graph.num_edges(), g.num_edges());
    for (u, v) in g.edges() {
        let (a, b) = (
            back.labels.iter().position(|l| l == &u.to_string()).unwrap(),
            back.labels.iter().position(|l| l == &v.to_string()).unwrap(),
        );
        assert!(back.graph.has_edge(a, b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn union_find_gcc_equals_bfs(seed in any::<u64>()) {
        let g = random_graph(seed, 200);
        let bfs = bfs_gcc(&g, &vec![false; g.num_nodes()]);
        prop_assert_eq!(g.gcc_size(), bfs);
        prop_assert_eq!(g.gcc_size_bfs(), bfs);
    }

    #[test]
    fn union_find_tracks_max_set(ops in prop::collection::vec((0usize..40, 0usize..40), 0..80)) {
        let mut uf = UnionFind::new(40);
        let mut label: Vec<usize> = (0..40).collect();
        for (a, b) in ops {
            uf.union(a, b);
            let (la, lb) = (label[a], label[b]);
            for l in label.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
            let biggest = (0..40).map(|x| label.iter().filter(|&&l| l == x).count()).max().unwrap();
            prop_assert_eq!(uf.max_component(), biggest);
            for i in 0..40 {
                prop_assert_eq!(uf.same(a, i), label[a] == label[i]);
            }
        }
    }

    #[test]
    fn gcc_shrinks_under_larger_victim_sets(seed in any::<u64>(), order_seed in any::<u64>()) {
        let g = random_graph(seed, 60);
        let order = random_permutation(g.num_nodes(), order_seed);
        let mut last = g.gcc_size();
        for k in 0..=order.len() {
            let sub = g.remove_nodes(&order[..k]);
            prop_assert_eq!(sub.graph.num_nodes(), g.num_nodes() - k);
            sub.graph.validate().unwrap();
            let now = sub.graph.gcc_size();
            prop_assert!(now <= last);
            last = now;
        }
    }

    #[test]
    fn arbitrary_edge_lists_build_simple_graphs(edges in prop::collection::vec((0usize..20, 0usize..20), 0..120)) {
        let g = Graph::from_edges(20, edges.clone()).unwrap();
        g.validate().unwrap();
        for (u, v) in edges {
            prop_assert_eq!(g.has_edge(u, v), u != v);
        }
    }
}
