mod common;

use std::collections::BTreeSet;

use hcircle_core::fragment::{build_gn, load_tutte_fragment, section5_graph, Contact, Slot};
use hcircle_core::graph::{enumerate_hamilton_cycles, Edge, Vertex};
use hcircle_core::lazy::{double_ladder, level_quotient, Budget, DoubleLadder, LazyGraph};
use hcircle_core::unique::{
    certify_lazy, certify_section5, check_candidate_circle, fragment_tree_dp, quotient_hamilton, section5_circle,
    stabilized_viable, transfer_table, verify_candidate_circle, viable_patterns,
};

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn transfer_table_counts() {
    let f = load_tutte_fragment().unwrap();
    let tt = transfer_table(&f);
    assert_eq!(tt.get(Contact::U).len(), 0);
    assert_eq!(tt.get(Contact::R).len(), 2);
    assert_eq!(tt.get(Contact::L).len(), f.report().t_minus_l);
    for m in Contact::ALL {
        for p in tt.get(m) {
            assert_eq!(p.at_c.iter().filter(|&&b| b).count(), 2);
            assert_eq!(p.at_v.iter().filter(|&&b| b).count(), 2);
            let ends: BTreeSet<Contact> =
                [&p.path[0], p.path.last().unwrap()].iter().map(|x| f.contact_of(x).unwrap()).collect();
            assert!(!ends.contains(&m) && ends.len() == 2);
        }
    }
}

#[test]
fn viability_fixed_point() {
    let f = load_tutte_fragment().unwrap();
    let tt = transfer_table(&f);
    for depth in 1..6 {
        let lists = viable_patterns(&tt, depth);
        for m in Contact::ALL {
            for &i in &lists[m.index()] {
                // The c-child could otherwise only leave out u.
                assert!(tt.get(m)[i].at_c[Contact::U.index()], "depth {depth}");
            }
        }
    }
    let (depth, lists) = stabilized_viable(&tt).unwrap();
    assert!(depth <= 3);
    assert!(lists[Contact::U.index()].is_empty());
    assert!(lists[Contact::L.index()].is_empty());
    assert_eq!(lists[Contact::R.index()].len(), 1);
    let p = &tt.missing_r[lists[Contact::R.index()][0]];
    assert_eq!(p.child_missing(Slot::C), Contact::R);
    assert_eq!(p.child_missing(Slot::V), Contact::R);
}

#[test]
fn unrestricted_counts_match_enumeration() {
    let f = load_tutte_fragment().unwrap();
    let tt = transfer_table(&f);
    let lg = section5_graph().unwrap();
    for n in 0..=3 {
        let (g, tree) = build_gn(n).unwrap();
        let verdict = fragment_tree_dp(&tree, &tt).unwrap();
        let cycles = enumerate_hamilton_cycles(&g);
        assert_eq!(verdict.quotient_cycles, cycles.len() as u64, "n={n}");
        if n == 0 {
            assert_eq!(verdict.quotient_cycles as usize, 2 + f.report().t_minus_l);
        }
        if n <= 2 {
            assert_eq!(quotient_hamilton(&lg, n, budget()).unwrap().len(), cycles.len(), "n={n}");
        }
    }
}

/// Projections of the Hamilton cycles of `G_{n+2}` onto the persistent edges
/// of `G_n`: the circles of the limit graph seen at level `n`, computed
/// without the transfer tables.
fn deep_projections(n: usize) -> BTreeSet<BTreeSet<Edge>> {
    let (_, tree) = build_gn(n).unwrap();
    let persistent = tree.persistent_edges();
    let (big, _) = build_gn(n + 2).unwrap();
    enumerate_hamilton_cycles(&big).into_iter().map(|c| &c.into_iter().collect::<BTreeSet<_>>() & &persistent).collect()
}

#[test]
fn restricted_count_and_forced_set_match_deeper_levels() {
    let tt = transfer_table(&load_tutte_fragment().unwrap());
    for n in 0..=1 {
        let (_, tree) = build_gn(n).unwrap();
        let verdict = fragment_tree_dp(&tree, &tt).unwrap();
        let projections = deep_projections(n);
        assert_eq!(verdict.count, projections.len() as u64, "n={n}");
        let only = projections.into_iter().next().unwrap();
        assert_eq!(verdict.forced.iter().cloned().collect::<BTreeSet<_>>(), only, "n={n}");
    }
}

#[test]
fn fragment_tree_settles_by_level_three() {
    let tt = transfer_table(&load_tutte_fragment().unwrap());
    let mut prev: Option<(BTreeSet<Edge>, BTreeSet<Edge>)> = None;
    for n in 0..=3 {
        let (_, tree) = build_gn(n).unwrap();
        let v = fragment_tree_dp(&tree, &tt).unwrap();
        assert_eq!(v.count, 1, "n={n}");
        let forced: BTreeSet<Edge> = v.forced.iter().cloned().collect();
        if let Some((pf, pp)) = &prev {
            assert!(forced.intersection(pp).cloned().collect::<BTreeSet<_>>().is_superset(pf));
            assert!(v.stable, "n={n}");
        } else {
            assert!(!v.stable);
        }
        prev = Some((forced, tree.persistent_edges()));
    }
    let report = certify_section5(3, budget()).unwrap();
    assert_eq!(report.limit_claim, "unique (fragment-tree exact)");
    assert!(report.is_unique());
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["levels"][0]["level"], 1);
    assert_eq!(json["levels"][2]["count"], 1);
}

#[test]
fn forced_set_is_the_circle() {
    let tt = transfer_table(&load_tutte_fragment().unwrap());
    let lg = section5_graph().unwrap();
    let member = section5_circle(&tt).unwrap();
    for n in 1..=3 {
        let (_, tree) = build_gn(n).unwrap();
        let v = fragment_tree_dp(&tree, &tt).unwrap();
        let expected: BTreeSet<Edge> = tree.persistent_edges().into_iter().filter(|e| member(&lg, e.a(), e.b())).collect();
        assert_eq!(v.forced.iter().cloned().collect::<BTreeSet<_>>(), expected, "n={n}");
    }
}

fn ladder_rails_in_columns(r: i64) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for i in -r..r {
        for side in ["top", "bottom"] {
            out.insert(Edge::new(Vertex::new(format!("L:{i}:{side}")), Vertex::new(format!("L:{}:{side}", i + 1))));
        }
    }
    out
}

#[test]
fn ladder_quotients_have_one_cycle() {
    let lg = double_ladder();
    for r in 1..=6 {
        let cycles = quotient_hamilton(&lg, r, budget()).unwrap();
        assert_eq!(cycles.len(), 1, "r={r}");
        assert!(cycles[0].iter().all(|e| DoubleLadder::is_rail(e.a(), e.b())));
    }
    let report = certify_lazy(&lg, 6, budget()).unwrap();
    assert!(report.is_unique());
    for v in &report.levels {
        assert_eq!(v.count, 1);
        assert!(v.stable);
        assert_eq!(v.forced.iter().cloned().collect::<BTreeSet<_>>(), ladder_rails_in_columns(v.level as i64));
    }
}

#[test]
fn ladder_rails_verify() {
    let lg = double_ladder();
    let levels: Vec<usize> = (1..=6).collect();
    let rails = |a: &Vertex, b: &Vertex| DoubleLadder::is_rail(a, b);
    assert!(verify_candidate_circle(&lg, &rails, &levels, budget()).unwrap());
    let rung = Edge::new(Vertex::new("L:0:top"), Vertex::new("L:0:bottom"));
    let with_rung = |a: &Vertex, b: &Vertex| DoubleLadder::is_rail(a, b) || rung == Edge::new(a.clone(), b.clone());
    assert!(!verify_candidate_circle(&lg, &with_rung, &levels, budget()).unwrap());
    // Dropping a far rail is only seen once the level reaches it.
    let far = Edge::new(Vertex::new("L:9:top"), Vertex::new("L:10:top"));
    let without_far = |a: &Vertex, b: &Vertex| DoubleLadder::is_rail(a, b) && far != Edge::new(a.clone(), b.clone());
    let checks = check_candidate_circle(&lg, &without_far, &[2, 8, 9, 10], budget()).unwrap();
    assert_eq!(checks.iter().map(|c| c.ok).collect::<Vec<_>>(), vec![true, true, false, false]);
}

/// Every single-edge change of `member` inside the quotients of the given
/// levels is rejected.
fn assert_perturbations_rejected(lg: &dyn LazyGraph, member: &dyn Fn(&Vertex, &Vertex) -> bool, levels: &[usize]) {
    for &level in levels {
        let q = level_quotient(lg, level, budget()).unwrap();
        for flip in q.edge_map.values() {
            let perturbed = |a: &Vertex, b: &Vertex| member(a, b) != (*flip == Edge::new(a.clone(), b.clone()));
            assert!(!verify_candidate_circle(lg, &perturbed, &[level], budget()).unwrap(), "level {level} {flip:?}");
        }
    }
}

#[test]
fn ladder_perturbations_rejected() {
    let lg = double_ladder();
    assert_perturbations_rejected(&lg, &|a, b| DoubleLadder::is_rail(a, b), &[1, 2, 3, 4, 5, 6]);
}

#[test]
fn section5_circle_verifies_and_perturbations_fail() {
    let tt = transfer_table(&load_tutte_fragment().unwrap());
    let lg = section5_graph().unwrap();
    let c = section5_circle(&tt).unwrap();
    let member = |a: &Vertex, b: &Vertex| c(&lg, a, b);
    assert!(verify_candidate_circle(&lg, &member, &[1, 2, 3], budget()).unwrap());
    assert_perturbations_rejected(&lg, &member, &[1, 2, 3]);
    // Every vertex of a deep ball meets the circle twice.
    for x in hcircle_core::lazy::ball(&lg, 9, budget()).unwrap().order {
        assert_eq!(lg.neighbors(&x).iter().filter(|y| member(&x, y)).count(), 2, "{x}");
    }
}

#[test]
fn section5_circle_meets_each_cut_twice() {
    let tt = transfer_table(&load_tutte_fragment().unwrap());
    let lg = section5_graph().unwrap();
    let c = section5_circle(&tt).unwrap();
    for n in 0..=3 {
        let q = level_quotient(&lg, n, budget()).unwrap();
        for comp in &q.components {
            assert_eq!(comp.finger_edges.iter().filter(|e| c(&lg, e.a(), e.b())).count(), 2);
        }
    }
}
