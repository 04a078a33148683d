use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{bail, Result};
use crate::graph::{Edge, Vertex};

/// Finite simple undirected graph.
///
/// Vertices are kept sorted, so the index of a vertex is its rank in the
/// canonical order. Adjacency lists are sorted by index as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    names: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// A set of edges of some graph (the graph itself is not referenced; callers
/// validate membership where it matters).
pub type EdgeSet = BTreeSet<Edge>;

impl FiniteGraph {
    /// Builds a graph, rejecting loops, repeated edges and unknown endpoints.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<Vertex>,
        E: IntoIterator<Item = Edge>,
    {
        let set: BTreeSet<Vertex> = vertices.into_iter().map(Into::into).collect();
        let names: Vec<Vertex> = set.into_iter().collect();
        let index: HashMap<Vertex, usize> =
            names.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); names.len()];
        let mut seen = BTreeSet::new();
        for edge in edges {
            if edge.a() == edge.b() {
                bail!(InvalidGraph, "loop at {}", edge.a());
            }
            let (Some(&i), Some(&j)) = (index.get(edge.a()), index.get(edge.b())) else {
                bail!(InvalidGraph, "edge {edge} has an endpoint outside the vertex set");
            };
            if !seen.insert((i, j)) {
                bail!(InvalidGraph, "repeated edge {edge}");
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(FiniteGraph { names, index, adj, edge_count: seen.len() })
    }

    /// Builds a graph whose vertex set is the set of edge endpoints.
    pub fn from_edges<E>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = Edge>,
    {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let vertices: Vec<Vertex> =
            edges.iter().flat_map(|e| [e.a().clone(), e.b().clone()]).collect();
        Self::new(vertices, edges)
    }

    /// Like [`FiniteGraph::new`] but silently merges repeated edges.
    pub fn new_merging<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<Vertex>,
        E: IntoIterator<Item = Edge>,
    {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        Self::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.names
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.names.iter().cloned().collect()
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> Vec<Edge> {
        self.index_edges().into_iter().map(|(i, j)| self.edge(i, j)).collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().into_iter().collect()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn index_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub(crate) fn require(&self, v: &Vertex) -> Result<usize> {
        match self.index.get(v) {
            Some(&i) => Ok(i),
            None => bail!(Precondition, "vertex {v} is not in the graph"),
        }
    }

    pub fn name(&self, i: usize) -> &Vertex {
        &self.names[i]
    }

    pub fn edge(&self, i: usize, j: usize) -> Edge {
        Edge::new(self.names[i].clone(), self.names[j].clone())
    }

    /// Neighbour indices of vertex index `i`, sorted.
    pub fn adj(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        match self.index.get(v) {
            Some(&i) => self.adj[i].iter().map(|&j| self.names[j].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn degree(&self, v: &Vertex) -> usize {
        self.index.get(v).map_or(0, |&i| self.adj[i].len())
    }

    pub fn has_edge(&self, a: &Vertex, b: &Vertex) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Subgraph induced on the given vertices (unknown names are ignored).
    pub fn induced<'a, I>(&self, keep: I) -> FiniteGraph
    where
        I: IntoIterator<Item = &'a Vertex>,
    {
        let keep: BTreeSet<usize> = keep.into_iter().filter_map(|v| self.index_of(v)).collect();
        let names: Vec<Vertex> = keep.iter().map(|&i| self.names[i].clone()).collect();
        let edges: Vec<Edge> = self
            .index_edges()
            .into_iter()
            .filter(|(i, j)| keep.contains(i) && keep.contains(j))
            .map(|(i, j)| self.edge(i, j))
            .collect();
        FiniteGraph::new(names, edges).expect("induced subgraph of a valid graph")
    }

    /// The graph minus one vertex.
    pub fn without(&self, v: &Vertex) -> FiniteGraph {
        self.induced(self.names.iter().filter(|u| *u != v))
    }

    /// Spanning subgraph with the given edges removed.
    pub fn without_edges(&self, remove: &EdgeSet) -> FiniteGraph {
        let edges = self.edges().into_iter().filter(|e| !remove.contains(e));
        FiniteGraph::new(self.names.clone(), edges).expect("subgraph of a valid graph")
    }

    /// Component label per vertex index, labels numbered by smallest member.
    pub(crate) fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.names.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let (label, count) = self.component_labels();
        let mut out = vec![Vec::new(); count];
        for (i, &l) in label.iter().enumerate() {
            out[l].push(self.names[i].clone());
        }
        out
    }

    /// Connected in the usual sense; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// BFS distances from vertex index `s`.
    pub(crate) fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.names.len()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: &Vertex, b: &Vertex) -> Option<usize> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        self.distances_from(i)[j]
    }

    /// Shortest path between two vertices (smallest-index BFS tree).
    pub fn shortest_path(&self, a: &Vertex, b: &Vertex) -> Option<Vec<Vertex>> {
        let (s, t) = (self.index_of(a)?, self.index_of(b)?);
        let mut parent = vec![usize::MAX; self.names.len()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[t] == usize::MAX {
            return None;
        }
        let mut path = vec![t];
        while *path.last().unwrap() != s {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        Some(path.into_iter().map(|i| self.names[i].clone()).collect())
    }

    /// Returns a name not present in the graph, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> Vertex {
        fresh_name(base, |v| self.contains(v))
    }

    /// A connected acyclic graph.
    pub fn is_tree(&self) -> bool {
        !self.names.is_empty() && self.is_connected() && self.edge_count + 1 == self.names.len()
    }
}

/// Appends primes to `base` until `taken` rejects the candidate.
pub(crate) fn fresh_name(base: &str, taken: impl Fn(&Vertex) -> bool) -> Vertex {
    let mut name = base.to_string();
    while taken(&Vertex::new(name.as_str())) {
        name.push('\'');
    }
    Vertex::new(name)
}
