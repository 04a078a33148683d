use std::collections::{BTreeSet, VecDeque};

use crate::error::{bail, Result};
use crate::graph::{Edge, EdgeSet, FiniteGraph, Vertex};

/// The k-th power: adds `vw` whenever `1 < d(v, w) <= k`. `k = 1` returns
/// the graph unchanged; `k = 0` is rejected.
pub fn kth_power(g: &FiniteGraph, k: usize) -> Result<FiniteGraph> {
    if k == 0 {
        bail!(Precondition, "power exponent must be positive");
    }
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for s in 0..n {
        // Bounded BFS from s.
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == k {
                continue;
            }
            for &y in g.adj(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        for t in s + 1..n {
            if dist[t] != usize::MAX {
                edges.push(g.edge(s, t));
            }
        }
    }
    FiniteGraph::new(g.vertices().iter().cloned(), edges)
}

/// At least three vertices, connected, and no cut vertex.
pub fn is_two_connected(g: &FiniteGraph) -> bool {
    g.vertex_count() >= 3 && g.is_connected() && cut_vertices(g).is_empty()
}

/// Articulation points of the graph (in any component), sorted.
pub fn cut_vertices(g: &FiniteGraph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent, next neighbour position).
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (x, parent) = (top.0, top.1);
            let next = g.adj(x).get(top.2).copied();
            if let Some(y) = next {
                top.2 += 1;
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    if x == root {
                        root_children += 1;
                    }
                    stack.push((y, x, 0));
                } else if y != parent {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[x]);
                    if parent != root && low[x] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&i| is_cut[i]).map(|i| g.name(i).clone()).collect()
}

/// Whether every vertex has even degree in `d`; for finite graphs this is
/// the same as `d` meeting every cut in an even number of edges.
pub fn is_even_cut_parity(g: &FiniteGraph, d: &EdgeSet) -> Result<bool> {
    let mut deg = vec![0usize; g.vertex_count()];
    for e in d {
        if !g.has_edge(e.a(), e.b()) {
            bail!(Precondition, "edge {e} is not an edge of the graph");
        }
        deg[g.index_of(e.a()).unwrap()] += 1;
        deg[g.index_of(e.b()).unwrap()] += 1;
    }
    Ok(deg.iter().all(|d| d % 2 == 0))
}

/// The edges with exactly one endpoint in `s`.
pub fn cut_edges(g: &FiniteGraph, s: &BTreeSet<Vertex>) -> Result<EdgeSet> {
    for x in s {
        g.require(x)?;
    }
    Ok(g.edges().into_iter().filter(|e| s.contains(e.a()) != s.contains(e.b())).collect())
}

/// Contracts the connected vertex set `h` to one fresh vertex named by
/// joining the members with `+`; loops vanish and parallel edges merge.
pub fn contract_subgraph(g: &FiniteGraph, h: &BTreeSet<Vertex>) -> Result<FiniteGraph> {
    if h.is_empty() {
        bail!(Precondition, "contracted set is empty");
    }
    for x in h {
        g.require(x)?;
    }
    if !g.induced(h).is_connected() {
        bail!(Precondition, "contracted set does not induce a connected subgraph");
    }
    let base: Vec<&str> = h.iter().map(Vertex::as_str).collect();
    let merged = g.fresh_name(&base.join("+"));
    Ok(merge_vertices(g, h, &merged))
}

/// Replaces the set `h` by the single vertex `merged` (assumed fresh).
fn merge_vertices(g: &FiniteGraph, h: &BTreeSet<Vertex>, merged: &Vertex) -> FiniteGraph {
    let rename = |x: &Vertex| if h.contains(x) { merged.clone() } else { x.clone() };
    let vertices: Vec<Vertex> = g.vertices().iter().map(rename).collect();
    let edges: BTreeSet<Edge> = g
        .edges()
        .into_iter()
        .filter_map(|e| {
            let (a, b) = (rename(e.a()), rename(e.b()));
            (a != b).then(|| Edge::new(a, b))
        })
        .collect();
    FiniteGraph::new(vertices, edges).expect("contraction of a valid graph")
}
