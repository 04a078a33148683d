//! Certifying unique Hamilton circles of lazily given infinite graphs from
//! finite data: transfer tables of the fragment, the viability fixed point,
//! the fragment-tree count, generic quotient enumeration, and a level-wise
//! check of a candidate edge set.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{bail, Result};
use crate::fragment::{path_edges, section5_graph, Contact, Fragment, FragmentTree, Slot};
use crate::graph::{CycleSearch, Edge, Vertex};
use crate::lazy::{level_quotient, level_region, Budget, LazyGraph};

/// Deepest level the viability recursion may need before it must settle.
pub const MAX_VIABILITY_DEPTH: usize = 16;

/// A Hamilton path of the fragment minus one contact, with the two edges it
/// uses at `c` (among `cl`, `cs`, `ct`) and at `v` (among `vw`, `vx`, `vy`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferPath {
    pub path: Vec<Vertex>,
    pub edges: BTreeSet<Edge>,
    pub at_c: [bool; 3],
    pub at_v: [bool; 3],
}

impl TransferPath {
    /// The contact the child in `slot` must leave out: the one whose
    /// identified parent edge this path does not use.
    pub fn child_missing(&self, slot: Slot) -> Contact {
        let used = if slot == Slot::C { self.at_c } else { self.at_v };
        let i = used.iter().position(|&b| !b).expect("a path uses two of three edges");
        Contact::ALL[i]
    }
}

/// Hamilton paths of the fragment minus each contact, indexed by contact.
#[derive(Debug, Clone, Serialize)]
pub struct TransferTable {
    pub missing_u: Vec<TransferPath>,
    pub missing_l: Vec<TransferPath>,
    pub missing_r: Vec<TransferPath>,
}

impl TransferTable {
    pub fn get(&self, m: Contact) -> &[TransferPath] {
        match m {
            Contact::U => &self.missing_u,
            Contact::L => &self.missing_l,
            Contact::R => &self.missing_r,
        }
    }
}

pub fn transfer_table(f: &Fragment) -> TransferTable {
    let r = f.roles();
    let at = |edges: &BTreeSet<Edge>, hub: &Vertex, slot: Slot| {
        Contact::ALL.map(|m| edges.contains(&Edge::new(hub.clone(), f.child_contact_target(slot, m).clone())))
    };
    let list = |m: Contact| {
        f.hamilton_paths(m)
            .iter()
            .map(|p| {
                let edges = path_edges(p);
                TransferPath { at_c: at(&edges, &r.c, Slot::C), at_v: at(&edges, &r.v, Slot::V), path: p.clone(), edges }
            })
            .collect()
    };
    TransferTable { missing_u: list(Contact::U), missing_l: list(Contact::L), missing_r: list(Contact::R) }
}

/// Indices into each list of the table, by contact.
pub type PatternLists = [Vec<usize>; 3];

/// Patterns viable at `depth`: all of them at depth 0; at depth `k + 1`
/// those whose children at `c` and `v` have a viable pattern at depth `k`.
pub fn viable_patterns(tt: &TransferTable, depth: usize) -> PatternLists {
    let mut lists: PatternLists = Contact::ALL.map(|m| (0..tt.get(m).len()).collect());
    for _ in 0..depth {
        lists = step(tt, &lists);
    }
    lists
}

fn step(tt: &TransferTable, lists: &PatternLists) -> PatternLists {
    Contact::ALL.map(|m| {
        (0..tt.get(m).len())
            .filter(|&i| {
                let p = &tt.get(m)[i];
                [Slot::C, Slot::V].iter().all(|&s| !lists[p.child_missing(s).index()].is_empty())
            })
            .collect()
    })
}

/// The settled viable lists and the depth at which they settle. The
/// missing-`r` list must end with exactly one path, using `cl` and `vw`.
pub fn stabilized_viable(tt: &TransferTable) -> Result<(usize, PatternLists)> {
    let mut lists = viable_patterns(tt, 0);
    for depth in 0..MAX_VIABILITY_DEPTH {
        let next = step(tt, &lists);
        if next == lists {
            if lists.iter().all(|l| l.is_empty()) {
                bail!(Consistency, "no pattern survives: the construction has no Hamilton circle");
            }
            let r = &lists[Contact::R.index()];
            if r.len() != 1 {
                bail!(Consistency, "{} viable paths without r, expected exactly one", r.len());
            }
            let p = &tt.missing_r[r[0]];
            if !p.at_c[Contact::U.index()] || !p.at_v[Contact::U.index()] {
                bail!(Consistency, "the viable path without r must use cl and vw");
            }
            return Ok((depth, lists));
        }
        lists = next;
    }
    bail!(Consistency, "viability did not settle within depth {MAX_VIABILITY_DEPTH}")
}

/// Counts and forced edges of the Hamilton cycles at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientVerdict {
    pub level: usize,
    /// Hamilton circles compatible with this level. For the fragment tree
    /// the deepest copies are restricted to the settled viable patterns, so
    /// this counts circles of the limit graph.
    pub count: u64,
    /// Hamilton cycles of the level quotient with nothing restricted.
    pub quotient_cycles: u64,
    /// Persistent edges used by every counted circle.
    pub forced: Vec<Edge>,
    /// Whether the forced set, cut down to the previous level's persistent
    /// edges, equals the previous level's forced set.
    pub stable: bool,
}

struct TreeCounts {
    count: u64,
    quotient_cycles: u64,
    forced: BTreeSet<Edge>,
}

/// Number of ways to complete the subtree below a copy at depth `d` that
/// leaves out `m`, with the deepest copies limited to `leaf`.
fn completions(tt: &TransferTable, n: usize, leaf: &PatternLists, m: Contact, d: usize, memo: &mut BTreeMap<(Contact, usize), u64>) -> u64 {
    if d == n {
        return leaf[m.index()].len() as u64;
    }
    if let Some(&c) = memo.get(&(m, d)) {
        return c;
    }
    let total = tt
        .get(m)
        .iter()
        .map(|p| {
            let a = completions(tt, n, leaf, p.child_missing(Slot::C), d + 1, memo);
            let b = completions(tt, n, leaf, p.child_missing(Slot::V), d + 1, memo);
            a.saturating_mul(b)
        })
        .fold(0u64, u64::saturating_add);
    memo.insert((m, d), total);
    total
}

fn tree_counts(ft: &FragmentTree, tt: &TransferTable, viable: &PatternLists) -> TreeCounts {
    let n = ft.level();
    let all: PatternLists = Contact::ALL.map(|m| (0..tt.get(m).len()).collect());
    let mut memo = BTreeMap::new();
    let quotient_cycles = Contact::ALL.iter().map(|&m| completions(tt, n, &all, m, 0, &mut memo)).sum();
    let mut memo = BTreeMap::new();
    let mut feasible = |m: Contact, d: usize| completions(tt, n, viable, m, d, &mut memo);
    let count = Contact::ALL.iter().map(|&m| feasible(m, 0)).sum();

    // Walk down the tree keeping, per copy, the patterns that occur in some
    // counted circle; an edge is forced when all of them use it.
    let mut reach: BTreeMap<String, BTreeSet<Contact>> = BTreeMap::new();
    reach.insert(String::new(), Contact::ALL.into_iter().filter(|&m| feasible(m, 0) > 0).collect());
    let mut forced = BTreeSet::new();
    for copy in ft.copies() {
        let d = copy.path.len();
        let ms = reach.get(&copy.path).cloned().unwrap_or_default();
        let mut usable: Vec<&TransferPath> = Vec::new();
        for &m in &ms {
            for (i, p) in tt.get(m).iter().enumerate() {
                let ok = if d == n {
                    viable[m.index()].contains(&i)
                } else {
                    feasible(p.child_missing(Slot::C), d + 1) > 0 && feasible(p.child_missing(Slot::V), d + 1) > 0
                };
                if ok {
                    usable.push(p);
                    if d < n {
                        for s in [Slot::C, Slot::V] {
                            reach.entry(format!("{}{}", copy.path, s.tag())).or_default().insert(p.child_missing(s));
                        }
                    }
                }
            }
        }
        let Some((first, rest)) = usable.split_first() else { continue };
        let common = rest.iter().fold(first.edges.clone(), |acc, p| &acc & &p.edges);
        forced.extend(common.iter().filter_map(|e| ft.local_edge(&copy.path, e)));
    }
    let persistent = ft.persistent_edges();
    let forced = if count == 0 { BTreeSet::new() } else { &forced & &persistent };
    TreeCounts { count, quotient_cycles, forced }
}

/// Exact count of Hamilton circles through the fragment tree at the tree's
/// level, the unrestricted quotient count, and the forced edge set.
pub fn fragment_tree_dp(ft: &FragmentTree, tt: &TransferTable) -> Result<QuotientVerdict> {
    let (_, viable) = stabilized_viable(tt)?;
    let now = tree_counts(ft, tt, &viable);
    let stable = if ft.level() == 0 {
        false
    } else {
        let prev_tree = crate::fragment::build_gn(ft.level() - 1)?.1;
        let prev = tree_counts(&prev_tree, tt, &viable);
        let cut: BTreeSet<Edge> = &now.forced & &prev_tree.persistent_edges();
        cut == prev.forced
    };
    Ok(QuotientVerdict {
        level: ft.level(),
        count: now.count,
        quotient_cycles: now.quotient_cycles,
        forced: now.forced.into_iter().collect(),
        stable,
    })
}

/// Hamilton cycles of the level-`r` quotient, as sets of original edges.
/// Both edges at a surrogate of degree 2 are fixed before the search.
pub fn quotient_hamilton(lg: &dyn LazyGraph, r: usize, budget: Budget) -> Result<Vec<BTreeSet<Edge>>> {
    let q = level_quotient(lg, r, budget)?;
    let (names, pairs, ids) = q.graph.indexed();
    let index: BTreeMap<&Vertex, usize> = names.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut forced_in = Vec::new();
    for s in &q.surrogates {
        let si = index[s];
        let incident: Vec<usize> = (0..pairs.len()).filter(|&e| pairs[e].0 == si || pairs[e].1 == si).collect();
        if incident.len() == 2 {
            forced_in.extend(incident);
        }
    }
    let mut out: Vec<BTreeSet<Edge>> = CycleSearch::new(names.len(), &pairs)
        .run_with(&forced_in, &[])
        .into_iter()
        .map(|c| c.into_iter().map(|e| q.edge_map[&ids[e]].clone()).collect())
        .collect();
    out.sort();
    Ok(out)
}

fn quotient_level(lg: &dyn LazyGraph, r: usize, budget: Budget) -> Result<(u64, BTreeSet<Edge>, BTreeSet<Edge>)> {
    let cycles = quotient_hamilton(lg, r, budget)?;
    let persistent = level_quotient(lg, r, budget)?.persistent_edges();
    let forced = match cycles.split_first() {
        None => BTreeSet::new(),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, c| &acc & c),
    };
    Ok((cycles.len() as u64, &forced & &persistent, persistent))
}

/// Quotient verdicts for levels `1..=levels` of any lazy graph.
pub fn quotient_verdicts(lg: &dyn LazyGraph, levels: usize, budget: Budget) -> Result<Vec<QuotientVerdict>> {
    let (_, mut prev_forced, mut prev_persistent) = quotient_level(lg, 0, budget)?;
    let mut out = Vec::new();
    for level in 1..=levels {
        let (count, forced, persistent) = quotient_level(lg, level, budget)?;
        let stable = &forced & &prev_persistent == prev_forced;
        out.push(QuotientVerdict { level, count, quotient_cycles: count, forced: forced.iter().cloned().collect(), stable });
        prev_forced = forced;
        prev_persistent = persistent;
    }
    Ok(out)
}

/// Level verdicts together with what they justify about the limit.
#[derive(Debug, Clone, Serialize)]
pub struct UniquenessReport {
    pub levels: Vec<QuotientVerdict>,
    pub limit_claim: String,
    pub budget: Budget,
}

impl UniquenessReport {
    pub fn is_unique(&self) -> bool {
        self.limit_claim.starts_with("unique")
    }
}

/// Fragment-tree verdicts for levels `1..=levels` of the limit graph.
pub fn certify_section5(levels: usize, budget: Budget) -> Result<UniquenessReport> {
    let tt = transfer_table(&section5_graph()?.fragment().clone());
    let mut out = Vec::new();
    for level in 1..=levels {
        let (_, tree) = crate::fragment::build_gn(level)?;
        out.push(fragment_tree_dp(&tree, &tt)?);
    }
    let settled = out.last().is_some_and(|v| v.count == 1 && v.stable);
    let limit_claim = if settled { "unique (fragment-tree exact)".to_string() } else { "not certified".to_string() };
    Ok(UniquenessReport { levels: out, limit_claim, budget })
}

/// Quotient verdicts for a generic lazy graph. Only level-bounded claims
/// are made.
pub fn certify_lazy(lg: &dyn LazyGraph, levels: usize, budget: Budget) -> Result<UniquenessReport> {
    let out = quotient_verdicts(lg, levels, budget)?;
    let limit_claim = if let Some(v) = out.iter().find(|v| v.count == 0) {
        format!("no Hamilton circle (level {} quotient has no Hamilton cycle)", v.level)
    } else if out.iter().all(|v| v.count == 1) && out.last().is_some_and(|v| v.stable) {
        format!("unique at levels <= {levels} with stabilized forced set")
    } else {
        format!("not unique at levels <= {levels}")
    };
    Ok(UniquenessReport { levels: out, limit_claim, budget })
}

/// Outcome of checking a candidate edge set at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub level: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Checks a candidate circle level by level: degree 2 at every vertex of
/// the quotient other than the surrogates, an even crossing count between
/// 2 and the cut size at every deep component, and a connected quotient.
pub fn check_candidate_circle(
    lg: &dyn LazyGraph,
    member: &dyn Fn(&Vertex, &Vertex) -> bool,
    levels: &[usize],
    budget: Budget,
) -> Result<Vec<LevelCheck>> {
    let mut out = Vec::new();
    for &level in levels {
        let reason = check_level(lg, member, level, budget)?;
        out.push(LevelCheck { level, ok: reason.is_none(), reason });
    }
    Ok(out)
}

pub fn verify_candidate_circle(
    lg: &dyn LazyGraph,
    member: &dyn Fn(&Vertex, &Vertex) -> bool,
    levels: &[usize],
    budget: Budget,
) -> Result<bool> {
    Ok(check_candidate_circle(lg, member, levels, budget)?.iter().all(|c| c.ok))
}

fn check_level(lg: &dyn LazyGraph, member: &dyn Fn(&Vertex, &Vertex) -> bool, level: usize, budget: Budget) -> Result<Option<String>> {
    let q = level_quotient(lg, level, budget)?;
    let region = level_region(lg, level, budget)?;
    let surrogates: BTreeSet<&Vertex> = q.surrogates.iter().collect();
    for x in q.graph.vertices().iter().filter(|x| !surrogates.contains(x)) {
        let deg = lg.neighbors(x).iter().filter(|y| member(x, y)).count();
        if deg != 2 {
            return Ok(Some(format!("vertex {x} has {deg} member edges")));
        }
    }
    debug_assert!(region.iter().all(|x| q.graph.contains(x)));
    for c in &q.components {
        let k = c.finger_edges.iter().filter(|e| member(e.a(), e.b())).count();
        if k % 2 == 1 || k < 2 || k > c.finger_edges.len() {
            return Ok(Some(format!("cut of component {} is crossed {k} times", c.id)));
        }
    }
    let mut adj: BTreeMap<&Vertex, Vec<&Vertex>> = BTreeMap::new();
    for (id, a, b) in q.graph.edges() {
        let e = &q.edge_map[&id];
        if member(e.a(), e.b()) {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    let start = q.graph.vertices().iter().next().expect("the root is in every region");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in adj.get(x).into_iter().flatten() {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    if seen.len() != q.graph.vertex_count() {
        return Ok(Some(format!("member edges split the level-{level} quotient")));
    }
    Ok(None)
}

/// Membership in the circle of the limit graph that runs through every
/// copy along the settled viable path without `r`.
pub fn section5_circle(tt: &TransferTable) -> Result<impl Fn(&crate::fragment::Section5Graph, &Vertex, &Vertex) -> bool> {
    let (_, viable) = stabilized_viable(tt)?;
    let chosen = tt.missing_r[viable[Contact::R.index()][0]].edges.clone();
    Ok(move |lg: &crate::fragment::Section5Graph, a: &Vertex, b: &Vertex| {
        lg.edge_owner(a, b).is_some_and(|o| chosen.contains(&o.local))
    })
}
