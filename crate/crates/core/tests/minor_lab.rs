mod common;

use std::collections::BTreeSet;

use common::interleave;
use hcircle_core::corpus;
use hcircle_core::graph::families::{complete, complete_bipartite, cycle, cycle_n, diamond, wheel};
use hcircle_core::graph::{v, FiniteGraph, Vertex};
use hcircle_core::minor::{
    circular_ordering_oracle, find_k4_subgraph, find_minor, is_outerplanar, k4_minor_equals_subgraph,
    Pattern,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn set(names: &[&str]) -> BTreeSet<Vertex> {
    names.iter().map(|&s| v(s)).collect()
}

/// Minor test by trying every map from host vertices to pattern vertices
/// (or "deleted"), checking connectivity and adjacency directly.
fn brute_has_minor(g: &FiniteGraph, pattern: Pattern) -> bool {
    let n = g.vertex_count();
    let p = pattern.vertex_names().len();
    let total = (p + 1).pow(n as u32);
    (0..total).any(|mut code| {
        let mut label = vec![0; n];
        for x in label.iter_mut() {
            *x = code % (p + 1);
            code /= p + 1;
        }
        let sets: Vec<BTreeSet<Vertex>> = (0..p)
            .map(|k| (0..n).filter(|&i| label[i] == k + 1).map(|i| g.name(i).clone()).collect())
            .collect();
        if sets.iter().any(|s| s.is_empty() || !g.induced(s).is_connected()) {
            return false;
        }
        pattern.edges().iter().all(|&(a, b)| {
            g.edges().iter().any(|e| {
                (sets[a].contains(e.a()) && sets[b].contains(e.b()))
                    || (sets[a].contains(e.b()) && sets[b].contains(e.a()))
            })
        })
    })
}

#[test]
fn k4_subgraph_examples() {
    let k4 = complete(&["a", "b", "c", "d"]);
    assert_eq!(find_k4_subgraph(&k4), Some(set(&["a", "b", "c", "d"])));
    assert_eq!(find_k4_subgraph(&cycle_n(6)), None);
    let w5 = wheel("h", &["a", "b", "c", "d", "e"]);
    assert_eq!(find_k4_subgraph(&w5), None);
    // Exhaustive 4-subset scan as the oracle.
    let vs = w5.vertices().to_vec();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                for d in c + 1..6 {
                    let q = [a, b, c, d];
                    let clique = q.iter().all(|&i| q.iter().all(|&j| i == j || w5.has_edge(&vs[i], &vs[j])));
                    assert!(!clique);
                }
            }
        }
    }
}

#[test]
fn k23_minor_examples() {
    let k23 = complete_bipartite(&["a1", "a2"], &["b1", "b2", "b3"]);
    let w = find_minor(&k23, Pattern::K23).unwrap().unwrap();
    assert!(w.branch_sets.values().all(|s| s.len() == 1));
    w.validate(&k23).unwrap();
    assert!(find_minor(&complete(&["a", "b", "c", "d"]), Pattern::K23).unwrap().is_none());
    let w4 = wheel("h", &["a", "b", "c", "d"]);
    let w = find_minor(&w4, Pattern::K23).unwrap().unwrap();
    assert_eq!(w.branch_sets["a1"], set(&["a"]));
    assert_eq!(w.branch_sets["a2"], set(&["c"]));
    let others: BTreeSet<Vertex> = ["b1", "b2", "b3"].iter().flat_map(|k| w.branch_sets[*k].clone()).collect();
    assert_eq!(others, set(&["b", "d", "h"]));
    for (x, y) in [("a", "h"), ("a", "b"), ("a", "d"), ("c", "h"), ("c", "b"), ("c", "d")] {
        assert!(w4.has_edge(&v(x), &v(y)));
    }
}

#[test]
fn outerplanar_examples() {
    assert!(is_outerplanar(&cycle_n(5)).unwrap());
    assert!(!is_outerplanar(&complete(&["a", "b", "c", "d"])).unwrap());
    assert!(is_outerplanar(&diamond()).unwrap());
    assert_eq!(
        circular_ordering_oracle(&diamond()).unwrap(),
        Some(vec![v("a"), v("c"), v("b"), v("d")])
    );
}

#[test]
fn circular_oracle_examples() {
    let c4 = cycle(&["a", "b", "c", "d"]);
    assert_eq!(circular_ordering_oracle(&c4).unwrap(), Some(vec![v("a"), v("b"), v("c"), v("d")]));
    let k23 = complete_bipartite(&["a1", "a2"], &["b1", "b2", "b3"]);
    assert_eq!(circular_ordering_oracle(&k23).unwrap(), None);
    assert!(circular_ordering_oracle(&cycle_n(11)).is_err());
}

#[test]
fn circular_oracle_orders_are_crossing_free() {
    for n in 1..=7 {
        for g in corpus::connected_graphs(n) {
            if let Some(order) = circular_ordering_oracle(&g).unwrap() {
                let pos = |x: &Vertex| order.iter().position(|y| y == x).unwrap();
                let chords: Vec<(usize, usize)> = g.edges().iter().map(|e| (pos(e.a()), pos(e.b()))).collect();
                for a in &chords {
                    for b in &chords {
                        assert!(!interleave(*a, *b));
                    }
                }
            }
        }
    }
}

#[test]
fn k4_minor_vs_subgraph_examples() {
    assert!(k4_minor_equals_subgraph(&complete(&["a", "b", "c", "d"])).unwrap());
    assert!(k4_minor_equals_subgraph(&cycle_n(6)).unwrap());
    assert!(k4_minor_equals_subgraph(&complete_bipartite(&["a", "b"], &["x", "y", "z"])).is_err());
}

#[test]
fn minor_search_agrees_with_brute_force() {
    for n in 1..=6 {
        for g in corpus::connected_graphs(n) {
            for pattern in [Pattern::K4, Pattern::K23] {
                let found = find_minor(&g, pattern).unwrap();
                if let Some(w) = &found {
                    w.validate(&g).unwrap();
                }
                assert_eq!(found.is_some(), brute_has_minor(&g, pattern), "{pattern} in {g:?}");
            }
        }
    }
}

#[test]
fn subgraph_implies_minor() {
    for g in corpus::connected_graphs(7) {
        if find_k4_subgraph(&g).is_some() {
            assert!(find_minor(&g, Pattern::K4).unwrap().is_some());
        }
    }
}

#[test]
fn oversized_hosts_are_rejected() {
    assert!(find_minor(&cycle_n(31), Pattern::K4).is_err());
}

proptest! {
    #[test]
    fn minors_are_monotone_under_subgraphs(seed in 0u64..300) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = corpus::random_two_connected(&mut rng, 9);
        let keep: Vec<_> = g.edges().into_iter().filter(|_| rng.gen_bool(0.7)).collect();
        let h = FiniteGraph::new(g.vertices().iter().cloned(), keep).unwrap();
        for pattern in [Pattern::K4, Pattern::K23] {
            if find_minor(&h, pattern).unwrap().is_some() {
                prop_assert!(find_minor(&g, pattern).unwrap().is_some());
            }
        }
    }
}
