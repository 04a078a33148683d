mod common;

use std::collections::{BTreeMap, BTreeSet};

use hcircle_core::graph::{families, v, Vertex};
use hcircle_core::lazy::{
    ball, deep_components, double_ladder, end_degree_bound, end_nesting, end_report, lazy_power, level_quotient,
    Budget, DegreeMode, FiniteLazy, LazyGraph,
};
use hcircle_core::Error;
use proptest::prelude::*;

/// Hides a generator's level structure so the BFS heuristics get exercised.
struct Plain<G>(G);

impl<G: LazyGraph> LazyGraph for Plain<G> {
    fn root(&self) -> Vertex {
        self.0.root()
    }
    fn neighbors(&self, x: &Vertex) -> Vec<Vertex> {
        self.0.neighbors(x)
    }
}

fn budget() -> Budget {
    Budget::default()
}

/// Ladder vertex ids within `r` columns of the root, worked out by hand: the
/// root column plus everything reachable along the rails.
fn ladder_ball_oracle(r: usize) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::new();
    for i in -(r as i64)..=(r as i64) {
        let top_dist = i.unsigned_abs() as usize;
        if top_dist <= r {
            out.insert(v(&format!("L:{i}:top")));
        }
        if top_dist + 1 <= r {
            out.insert(v(&format!("L:{i}:bottom")));
        }
    }
    out
}

#[test]
fn ladder_degrees_are_three() {
    let lg = double_ladder();
    for x in ball(&lg, 6, budget()).unwrap().order {
        assert_eq!(lg.neighbors(&x).len(), 3, "{x}");
    }
}

#[test]
fn ladder_ball_examples() {
    let lg = double_ladder();
    let b0 = ball(&lg, 0, budget()).unwrap();
    assert_eq!(b0.order, vec![v("L:0:top")]);
    assert_eq!(b0.graph.edge_count(), 0);
    let b1 = ball(&lg, 1, budget()).unwrap();
    assert_eq!(b1.graph.vertex_count(), 4);
    assert_eq!(b1.graph.edge_count(), 3);
    assert_eq!(b1.boundary.len(), 3);
}

#[test]
fn ladder_balls_match_hand_count() {
    let lg = double_ladder();
    for r in 0..10 {
        let b = ball(&lg, r, budget()).unwrap();
        assert_eq!(b.graph.vertex_set(), ladder_ball_oracle(r), "r={r}");
        assert!(b.graph.vertex_count() <= 2 * (2 * r + 1));
    }
}

#[test]
fn balls_are_nested_induced_subgraphs() {
    let lg = double_ladder();
    let mut prev = ball(&lg, 0, budget()).unwrap();
    for r in 1..8 {
        let b = ball(&lg, r, budget()).unwrap();
        let keep = prev.graph.vertex_set();
        assert!(keep.is_subset(&b.graph.vertex_set()));
        assert_eq!(b.graph.induced(&keep).edge_set(), prev.graph.edge_set());
        assert_eq!(&b.order[..prev.order.len()], &prev.order[..]);
        prev = b;
    }
}

#[test]
fn ball_over_budget_is_an_error() {
    let lg = double_ladder();
    let tight = Budget { max_vertices: 10, depth: 4 };
    assert!(matches!(ball(&lg, 20, tight), Err(Error::Budget(_))));
}

#[test]
fn symmetry_audits() {
    common::symmetry_audit(&double_ladder(), 30, 1000, 1);
    common::symmetry_audit(&lazy_power(double_ladder(), 2).unwrap(), 12, 1000, 2);
    common::symmetry_audit(&lazy_power(double_ladder(), 3).unwrap(), 8, 1000, 3);
}

#[test]
fn ladder_has_two_deep_components() {
    let lg = double_ladder();
    for r in 1..8 {
        let comps = deep_components(&lg, r, budget()).unwrap();
        assert_eq!(comps.len(), 2, "r={r}");
        let labels: BTreeSet<&str> = comps.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, BTreeSet::from(["left", "right"]));
        for c in &comps {
            assert_eq!(c.fingers.len(), 2);
            assert_eq!(c.finger_edges.len(), 2);
        }
    }
}

#[test]
fn plain_ladder_components_by_growth() {
    let lg = Plain(double_ladder());
    for r in 1..6 {
        let comps = deep_components(&lg, r, budget()).unwrap();
        assert_eq!(comps.len(), 2, "r={r}");
        // A distance ball is not column aligned: each side is fenced off by
        // the top vertex of the last column and the bottom vertex before it.
        for c in &comps {
            assert_eq!(c.fingers.len(), 2);
            assert_eq!(c.finger_edges.len(), 3);
        }
        assert_ne!(comps[0].representative, comps[1].representative);
    }
}

#[test]
fn finite_graphs_have_no_deep_components() {
    let g = families::cycle_n(12);
    let root = g.vertices()[0].clone();
    let lg = FiniteLazy::new(g, root).unwrap();
    for r in 0..4 {
        assert!(deep_components(&lg, r, budget()).unwrap().is_empty());
        assert!(end_report(&lg, r, budget()).unwrap().components.is_empty());
    }
    assert!(end_nesting(&lg, 1, 3, budget()).unwrap().is_empty());
}

#[test]
fn nesting_is_a_bijection_on_the_ladder() {
    for lg in [&double_ladder() as &dyn LazyGraph, &Plain(double_ladder())] {
        let m = end_nesting(lg, 2, 5, budget()).unwrap();
        assert_eq!(m.len(), 2);
        let targets: BTreeSet<usize> = m.values().copied().collect();
        assert_eq!(targets.len(), 2);
    }
}

#[test]
fn nesting_composes() {
    for lg in [&double_ladder() as &dyn LazyGraph, &Plain(double_ladder())] {
        for r1 in 1..4 {
            for r2 in r1 + 1..5 {
                for r3 in r2 + 1..6 {
                    let a = end_nesting(lg, r1, r2, budget()).unwrap();
                    let b = end_nesting(lg, r2, r3, budget()).unwrap();
                    let c = end_nesting(lg, r1, r3, budget()).unwrap();
                    let composed: BTreeMap<usize, usize> = b.iter().map(|(k, m)| (*k, a[m])).collect();
                    assert_eq!(composed, c, "{r1} {r2} {r3}");
                }
            }
        }
    }
}

#[test]
fn nesting_needs_increasing_radii() {
    assert!(matches!(end_nesting(&double_ladder(), 3, 3, budget()), Err(Error::Precondition(_))));
}

#[test]
fn ladder_end_degrees_are_two() {
    let lg = double_ladder();
    for r in 1..6 {
        for c in deep_components(&lg, r, budget()).unwrap() {
            assert_eq!(end_degree_bound(&lg, &c, DegreeMode::Vertex, budget()).unwrap(), (2, 2));
            assert_eq!(end_degree_bound(&lg, &c, DegreeMode::Edge, budget()).unwrap(), (2, 2));
        }
    }
}

#[test]
fn plain_ladder_end_degrees() {
    // Distance balls leave three finger edges per side, so only the vertex
    // bound is tight.
    let lg = Plain(double_ladder());
    for r in 1..6 {
        for c in deep_components(&lg, r, budget()).unwrap() {
            assert_eq!(end_degree_bound(&lg, &c, DegreeMode::Vertex, budget()).unwrap(), (2, 2));
            assert_eq!(end_degree_bound(&lg, &c, DegreeMode::Edge, budget()).unwrap(), (2, 3));
        }
    }
}

#[test]
fn power_of_ladder_ends() {
    // In the square every end is separated by two consecutive columns, so
    // both kinds of degree are 4.
    let lg = lazy_power(double_ladder(), 2).unwrap();
    for r in 2..5 {
        let comps = deep_components(&lg, r, budget()).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            let (lo, hi) = end_degree_bound(&lg, c, DegreeMode::Vertex, budget()).unwrap();
            assert_eq!(lo, 4);
            assert!(lo <= hi);
            let (lo, hi) = end_degree_bound(&lg, c, DegreeMode::Edge, budget()).unwrap();
            assert!(lo >= 4 && lo <= hi);
        }
    }
}

#[test]
fn end_report_json_shape() {
    let lg = double_ladder();
    let report = end_report(&lg, 3, budget()).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["radius"], 3);
    assert_eq!(json["components"].as_array().unwrap().len(), 2);
    assert_eq!(json["components"][0]["degree_bounds"]["vertex"], serde_json::json!([2, 2]));
    assert_eq!(json["components"][1]["degree_bounds"]["edge"], serde_json::json!([2, 2]));
}

#[test]
fn power_degrees() {
    let lg = double_ladder();
    let sq = lazy_power(double_ladder(), 2).unwrap();
    for x in ball(&lg, 5, budget()).unwrap().order {
        // Hand count for (i, top): (i±1, top) and (i, bottom) at distance
        // one, (i±2, top) and (i±1, bottom) at distance two.
        assert_eq!(sq.neighbors(&x).len(), 7, "{x}");
    }
    let one = lazy_power(double_ladder(), 1).unwrap();
    for x in ball(&lg, 5, budget()).unwrap().order {
        assert_eq!(one.neighbors(&x), lg.neighbors(&x));
    }
    assert!(matches!(lazy_power(double_ladder(), 0), Err(Error::Precondition(_))));
}

#[test]
fn ladder_quotient_shape() {
    let lg = double_ladder();
    for r in 1..5 {
        let q = level_quotient(&lg, r, budget()).unwrap();
        assert_eq!(q.surrogates.len(), 2);
        for s in &q.surrogates {
            assert_eq!(q.graph.degree(s), 2);
        }
        for x in q.graph.vertices() {
            if !q.surrogates.contains(x) {
                assert_eq!(q.graph.degree(x), 3, "{x}");
            }
        }
    }
}

#[test]
fn finite_quotient_is_the_graph() {
    let g = families::cycle_n(9);
    let lg = FiniteLazy::new(g.clone(), v("0")).unwrap();
    let q = level_quotient(&lg, 2, budget()).unwrap();
    assert!(q.surrogates.is_empty());
    assert_eq!(q.graph.to_simple().unwrap().edge_set(), g.edge_set());
}

proptest! {
    #[test]
    fn ball_sizes_on_powers(r in 0usize..6, k in 1usize..4) {
        let lg = lazy_power(double_ladder(), k).unwrap();
        let b = ball(&lg, r, budget()).unwrap();
        // A power ball of radius r is the base ball of radius k*r.
        let base = ball(&double_ladder(), k * r, budget()).unwrap();
        prop_assert_eq!(b.graph.vertex_set(), base.graph.vertex_set());
    }

    #[test]
    fn bounds_are_ordered(r in 1usize..6, depth in 2usize..10) {
        let b = Budget { max_vertices: 50_000, depth };
        let lg = Plain(double_ladder());
        for c in deep_components(&lg, r, b).unwrap() {
            for mode in [DegreeMode::Vertex, DegreeMode::Edge] {
                let (lo, hi) = end_degree_bound(&lg, &c, mode, b).unwrap();
                prop_assert!(lo <= hi);
            }
        }
    }
}
