use std::collections::{BTreeMap, BTreeSet};

use crate::error::{bail, Result};
use crate::graph::simple::fresh_name;
use crate::graph::{FiniteGraph, Vertex};

/// Finite undirected multigraph without loops. Parallel edges are told apart
/// by their integer ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeMap<u64, (Vertex, Vertex)>,
}

impl MultiGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<Vertex>,
        E: IntoIterator<Item = (u64, Vertex, Vertex)>,
    {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().map(Into::into).collect();
        let mut map = BTreeMap::new();
        for (id, a, b) in edges {
            if a == b {
                bail!(InvalidGraph, "loop at {a} (edge {id})");
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                bail!(InvalidGraph, "edge {id} has an endpoint outside the vertex set");
            }
            let pair = if a <= b { (a, b) } else { (b, a) };
            if map.insert(id, pair).is_some() {
                bail!(InvalidGraph, "repeated edge id {id}");
            }
        }
        Ok(MultiGraph { vertices, edges: map })
    }

    /// Builds a multigraph from endpoint pairs, numbering edges 0, 1, ...
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let pairs: Vec<(Vertex, Vertex)> =
            pairs.into_iter().map(|(a, b)| (Vertex::new(a), Vertex::new(b))).collect();
        let vertices: Vec<Vertex> =
            pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let edges = pairs.into_iter().enumerate().map(|(i, (a, b))| (i as u64, a, b));
        Self::new(vertices, edges)
    }

    /// The simple graph as a multigraph; edge ids follow the canonical edge order.
    pub fn from_simple(g: &FiniteGraph) -> Self {
        let edges = g
            .edges()
            .into_iter()
            .enumerate()
            .map(|(i, e)| (i as u64, e.a().clone(), e.b().clone()));
        Self::new(g.vertices().iter().cloned(), edges).expect("simple graph is a valid multigraph")
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(id, a, b)` with `a <= b`, by id.
    pub fn edges(&self) -> impl Iterator<Item = (u64, &Vertex, &Vertex)> {
        self.edges.iter().map(|(&id, (a, b))| (id, a, b))
    }

    pub fn endpoints(&self, id: u64) -> Option<(&Vertex, &Vertex)> {
        self.edges.get(&id).map(|(a, b)| (a, b))
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    /// Ids of edges incident with `v`, ascending.
    pub fn incident(&self, v: &Vertex) -> Vec<u64> {
        self.edges
            .iter()
            .filter(|(_, (a, b))| a == v || b == v)
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn degree(&self, v: &Vertex) -> usize {
        self.edges.values().filter(|(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut deg: BTreeMap<Vertex, usize> = self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for (a, b) in self.edges.values() {
            *deg.get_mut(a).unwrap() += 1;
            *deg.get_mut(b).unwrap() += 1;
        }
        deg
    }

    /// Whether all vertices of positive degree lie in one component.
    pub fn is_connected_on_support(&self) -> bool {
        let (names, pairs, _) = self.indexed();
        let n = names.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        let mut used = vec![false; n];
        for &(a, b) in &pairs {
            used[a] = true;
            used[b] = true;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut root = None;
        for x in 0..n {
            if used[x] {
                let r = find(&mut parent, x);
                match root {
                    None => root = Some(r),
                    Some(r0) if r0 != r => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Connected on all vertices, isolated ones included.
    pub fn is_connected(&self) -> bool {
        let deg = self.degrees();
        let isolated = deg.values().filter(|&&d| d == 0).count();
        if isolated > 0 {
            return self.vertices.len() <= 1;
        }
        self.is_connected_on_support()
    }

    /// Connected on the support and every degree even.
    pub fn is_eulerian(&self) -> bool {
        self.degrees().values().all(|d| d % 2 == 0) && self.is_connected_on_support()
    }

    /// Sorted vertex names, index pairs per edge and the matching edge ids.
    pub fn indexed(&self) -> (Vec<Vertex>, Vec<(usize, usize)>, Vec<u64>) {
        let names: Vec<Vertex> = self.vertices.iter().cloned().collect();
        let pos: BTreeMap<&Vertex, usize> = names.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut pairs = Vec::with_capacity(self.edges.len());
        let mut ids = Vec::with_capacity(self.edges.len());
        for (&id, (a, b)) in &self.edges {
            pairs.push((pos[a], pos[b]));
            ids.push(id);
        }
        (names, pairs, ids)
    }

    /// Replaces `v` by two fresh vertices; edges in `part1` go to the first,
    /// the remaining edges at `v` go to the second.
    pub fn v_split(&self, v: &Vertex, part1: &BTreeSet<u64>) -> Result<VSplitResult> {
        if !self.contains(v) {
            bail!(Precondition, "vertex {v} is not in the multigraph");
        }
        let delta: BTreeSet<u64> = self.incident(v).into_iter().collect();
        if !part1.is_subset(&delta) {
            bail!(Precondition, "split part is not a subset of the edges at {v}");
        }
        let part2: BTreeSet<u64> = delta.difference(part1).copied().collect();
        if part1.is_empty() || part2.is_empty() {
            bail!(Precondition, "both sides of a split must be nonempty");
        }
        let v1 = fresh_name(&format!("{v}#1"), |x| self.contains(x));
        let v2 = fresh_name(&format!("{v}#2"), |x| self.contains(x) || *x == v1);
        let mut vertices: BTreeSet<Vertex> = self.vertices.clone();
        vertices.remove(v);
        vertices.insert(v1.clone());
        vertices.insert(v2.clone());
        let edges = self.edges.iter().map(|(&id, (a, b))| {
            let repl = if part1.contains(&id) { &v1 } else { &v2 };
            let a = if a == v { repl.clone() } else { a.clone() };
            let b = if b == v { repl.clone() } else { b.clone() };
            (id, a, b)
        });
        let graph = MultiGraph::new(vertices, edges)?;
        Ok(VSplitResult {
            graph,
            vertex: v.clone(),
            v1,
            v2,
            part1: part1.iter().copied().collect(),
            part2: part2.into_iter().collect(),
        })
    }

    /// Merges `a` and `b` into a single vertex named `into`. Edges between
    /// `a` and `b` would become loops and are rejected.
    pub fn identify(&self, a: &Vertex, b: &Vertex, into: &Vertex) -> Result<MultiGraph> {
        let rename = |x: &Vertex| if x == a || x == b { into.clone() } else { x.clone() };
        let vertices: BTreeSet<Vertex> = self.vertices.iter().map(rename).collect();
        let edges = self.edges.iter().map(|(&id, (x, y))| (id, rename(x), rename(y)));
        MultiGraph::new(vertices, edges)
    }

    /// Underlying simple graph, if there are no parallel edges.
    pub fn to_simple(&self) -> Option<FiniteGraph> {
        let mut seen = BTreeSet::new();
        for (a, b) in self.edges.values() {
            if !seen.insert((a.clone(), b.clone())) {
                return None;
            }
        }
        let edges = seen.into_iter().map(|(a, b)| crate::graph::Edge::new(a, b));
        FiniteGraph::new(self.vertices.iter().cloned(), edges).ok()
    }
}

/// Outcome of splitting one vertex of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSplitResult {
    pub graph: MultiGraph,
    /// The vertex that was split.
    pub vertex: Vertex,
    pub v1: Vertex,
    pub v2: Vertex,
    /// Edge ids now at `v1`.
    pub part1: Vec<u64>,
    /// Edge ids now at `v2`.
    pub part2: Vec<u64>,
}

/// All v-splits at a degree-4 vertex of an Eulerian multigraph that are
/// again Eulerian, in pairing order: {e1e2|e3e4}, {e1e3|e2e4}, {e1e4|e2e3}.
pub fn eulerian_v_splits(m: &MultiGraph, v: &Vertex) -> Result<Vec<VSplitResult>> {
    if !m.contains(v) {
        bail!(Precondition, "vertex {v} is not in the multigraph");
    }
    let delta = m.incident(v);
    if delta.len() != 4 {
        bail!(Precondition, "vertex {v} has degree {}, expected 4", delta.len());
    }
    if !m.is_eulerian() {
        bail!(Precondition, "multigraph is not Eulerian");
    }
    let mut out = Vec::new();
    for partner in 1..4 {
        let part1: BTreeSet<u64> = [delta[0], delta[partner]].into_iter().collect();
        let split = m.v_split(v, &part1)?;
        if split.graph.is_eulerian() {
            out.push(split);
        }
    }
    Ok(out)
}
