//! Caterpillars and their squares: recognition, the ordered partition of a
//! caterpillar's vertices, square strings, covers by two paths, Hamilton
//! cycles of squares, and the Eulerian split-to-cycle procedure.

mod partition;
mod strings;

use std::collections::{BTreeSet, VecDeque};

use crate::error::{bail, Result};
use crate::graph::{eulerian_v_splits, Edge, FiniteGraph, MultiGraph, VSplitResult, Vertex};

pub use partition::{caterpillar_partition, CaterpillarPartition, PartitionClass};
pub use strings::{
    decomp_covers, hamilton_cycle_of_square, square_string, CoverReport, RayPair, SquareStringSpec,
};

/// The spine `t - L` of a caterpillar, oriented so that the end with the
/// smaller id comes first; `None` if `t` is a tree but not a caterpillar.
/// A single edge has an empty spine and a single vertex is its own spine.
pub fn is_caterpillar(t: &FiniteGraph) -> Result<Option<Vec<Vertex>>> {
    if !t.is_tree() {
        bail!(Precondition, "input is not a tree");
    }
    if t.vertex_count() == 1 {
        return Ok(Some(t.vertices().to_vec()));
    }
    let inner: Vec<&Vertex> = t.vertices().iter().filter(|x| t.degree(x) > 1).collect();
    let spine = t.induced(inner);
    if spine.vertex_count() == 0 {
        return Ok(Some(Vec::new()));
    }
    if spine.vertices().iter().any(|x| spine.degree(x) > 2) {
        return Ok(None);
    }
    let start = spine
        .vertices()
        .iter()
        .find(|x| spine.degree(x) <= 1)
        .expect("a finite path has an end")
        .clone();
    let mut order = vec![start];
    while order.len() < spine.vertex_count() {
        let last = order.last().unwrap();
        let next = spine
            .neighbors(last)
            .into_iter()
            .find(|y| order.len() < 2 || *y != order[order.len() - 2])
            .expect("path continues");
        order.push(next);
    }
    Ok(Some(order))
}

/// A copy of the once-subdivided claw in `g`, if there is one: a centre,
/// three neighbours, and a further private neighbour of each.
pub fn find_s_k13(g: &FiniteGraph) -> Option<FiniteGraph> {
    for c in g.vertices() {
        let nbrs = g.neighbors(c);
        if nbrs.len() < 3 {
            continue;
        }
        let mut chosen = Vec::new();
        let mut used = BTreeSet::from([c.clone()]);
        if pick_legs(g, &nbrs, 0, &mut chosen, &mut used) {
            let edges = chosen.iter().flat_map(|(x, y): &(Vertex, Vertex)| {
                [Edge::new(c.clone(), x.clone()), Edge::new(x.clone(), y.clone())]
            });
            return Some(FiniteGraph::from_edges(edges).expect("legs are disjoint"));
        }
    }
    None
}

fn pick_legs(
    g: &FiniteGraph,
    nbrs: &[Vertex],
    from: usize,
    chosen: &mut Vec<(Vertex, Vertex)>,
    used: &mut BTreeSet<Vertex>,
) -> bool {
    if chosen.len() == 3 {
        return true;
    }
    for i in from..nbrs.len() {
        let x = &nbrs[i];
        if used.contains(x) {
            continue;
        }
        used.insert(x.clone());
        for y in g.neighbors(x) {
            if used.contains(&y) {
                continue;
            }
            used.insert(y.clone());
            chosen.push((x.clone(), y.clone()));
            if pick_legs(g, nbrs, i + 1, chosen, used) {
                return true;
            }
            chosen.pop();
            used.remove(&y);
        }
        used.remove(x);
    }
    false
}

/// Largest graph accepted by [`spanning_caterpillar_search`].
pub const MAX_SPANNING_SEARCH_VERTICES: usize = 20;
const SPANNING_SEARCH_BUDGET: usize = 5_000_000;

/// A spanning tree of `g` that is a caterpillar, if one exists. Searches
/// paths in lexicographic DFS order for one that dominates every vertex,
/// then hangs each remaining vertex on its first path neighbour.
pub fn spanning_caterpillar_search(g: &FiniteGraph) -> Result<Option<FiniteGraph>> {
    let n = g.vertex_count();
    if n > MAX_SPANNING_SEARCH_VERTICES {
        bail!(SizeLimit, "spanning caterpillar search is limited to {MAX_SPANNING_SEARCH_VERTICES} vertices, got {n}");
    }
    if n == 0 || !g.is_connected() {
        bail!(Precondition, "graph must be nonempty and connected");
    }
    struct Search<'a> {
        g: &'a FiniteGraph,
        path: Vec<usize>,
        on_path: Vec<bool>,
        covered: Vec<usize>,
        steps: usize,
    }
    impl Search<'_> {
        fn push(&mut self, x: usize) {
            self.path.push(x);
            self.on_path[x] = true;
            self.covered[x] += 1;
            for &y in self.g.adj(x) {
                self.covered[y] += 1;
            }
        }
        fn pop(&mut self) {
            let x = self.path.pop().unwrap();
            self.on_path[x] = false;
            self.covered[x] -= 1;
            for &y in self.g.adj(x) {
                self.covered[y] -= 1;
            }
        }
        fn run(&mut self) -> Result<bool> {
            self.steps += 1;
            if self.steps > SPANNING_SEARCH_BUDGET {
                bail!(SizeLimit, "spanning caterpillar search exceeded its step budget");
            }
            if self.covered.iter().all(|&c| c > 0) {
                return Ok(true);
            }
            let last = *self.path.last().unwrap();
            for &y in self.g.adj(last) {
                if !self.on_path[y] {
                    self.push(y);
                    if self.run()? {
                        return Ok(true);
                    }
                    self.pop();
                }
            }
            Ok(false)
        }
    }
    let mut s = Search { g, path: Vec::new(), on_path: vec![false; n], covered: vec![0; n], steps: 0 };
    for start in 0..n {
        s.push(start);
        if s.run()? {
            let mut edges: Vec<Edge> = s.path.windows(2).map(|w| g.edge(w[0], w[1])).collect();
            for x in 0..n {
                if !s.on_path[x] {
                    let hook = s.path.iter().find(|&&p| g.adj(x).contains(&p)).unwrap();
                    edges.push(g.edge(x, *hook));
                }
            }
            return Ok(Some(FiniteGraph::new(g.vertices().iter().cloned(), edges)?));
        }
        s.pop();
    }
    Ok(None)
}

/// A shortest `x`-`y` path inside the classes from `v`'s class to `w`'s
/// class, where `x` and `y` lie strictly between them. `part` must come from
/// a spanning caterpillar of `g`.
pub fn interval_path(
    g: &FiniteGraph,
    part: &CaterpillarPartition,
    x: &Vertex,
    y: &Vertex,
    v: &Vertex,
    w: &Vertex,
) -> Result<Vec<Vertex>> {
    if g.vertex_set() != part.tree().vertex_set()
        || !part.tree().edges().iter().all(|e| g.has_edge(e.a(), e.b()))
    {
        bail!(Precondition, "partition does not come from a spanning tree of the graph");
    }
    let (cv, cw) = (part.class_index(v)?, part.class_index(w)?);
    let (cx, cy) = (part.class_index(x)?, part.class_index(y)?);
    if !(cv < cx && cx < cw && cv < cy && cy < cw) {
        bail!(Precondition, "x and y must lie in classes strictly between those of v and w");
    }
    let inside: BTreeSet<Vertex> = (cv..=cw).flat_map(|i| part.classes()[i].members.clone()).collect();
    let sub = g.induced(&inside);
    let (s, t) = (sub.index_of(x).unwrap(), sub.index_of(y).unwrap());
    let mut parent = vec![usize::MAX; sub.vertex_count()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(a) = queue.pop_front() {
        for &b in sub.adj(a) {
            if parent[b] == usize::MAX {
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }
    if parent[t] == usize::MAX {
        bail!(Consistency, "no path between {x} and {y} inside the interval");
    }
    let mut path = vec![t];
    while *path.last().unwrap() != s {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Ok(path.into_iter().map(|i| sub.name(i).clone()).collect())
}

/// Splits degree-4 vertices (smallest first, first Eulerian split each
/// time) until the Eulerian multigraph is a single cycle.
pub fn split_to_cycle(m: &MultiGraph) -> Result<(MultiGraph, Vec<VSplitResult>)> {
    if !m.is_eulerian() {
        bail!(Precondition, "multigraph is not Eulerian");
    }
    if m.degrees().values().any(|&d| d != 2 && d != 4) {
        bail!(Precondition, "all degrees must be 2 or 4");
    }
    let mut current = m.clone();
    let mut history = Vec::new();
    loop {
        let next = current.degrees().into_iter().find(|&(_, d)| d == 4).map(|(x, _)| x);
        let Some(x) = next else { break };
        let split = eulerian_v_splits(&current, &x)?
            .into_iter()
            .next()
            .ok_or_else(|| crate::Error::Consistency(format!("no Eulerian split at {x}")))?;
        current = split.graph.clone();
        history.push(split);
    }
    if !current.is_connected() || current.degrees().values().any(|&d| d != 2) {
        bail!(Consistency, "splitting did not end in a cycle");
    }
    Ok((current, history))
}
