//! Small named graph families used by tests, the corpus and the CLI.

use crate::graph::{Edge, FiniteGraph, Vertex};

/// Names `0..n`, zero-padded so that string order matches numeric order.
pub fn numbered(n: usize) -> Vec<Vertex> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| Vertex::new(format!("{i:0width$}"))).collect()
}

fn build(names: Vec<Vertex>, pairs: impl IntoIterator<Item = (usize, usize)>) -> FiniteGraph {
    let edges: Vec<Edge> =
        pairs.into_iter().map(|(i, j)| Edge::new(names[i].clone(), names[j].clone())).collect();
    FiniteGraph::new(names, edges).expect("family graphs are simple")
}

fn owned(names: &[&str]) -> Vec<Vertex> {
    names.iter().map(|&s| Vertex::new(s)).collect()
}

pub fn path(names: &[&str]) -> FiniteGraph {
    let n = names.len();
    build(owned(names), (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(names: &[&str]) -> FiniteGraph {
    let n = names.len();
    build(owned(names), (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(names: &[&str]) -> FiniteGraph {
    let n = names.len();
    build(owned(names), (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn complete_bipartite(left: &[&str], right: &[&str]) -> FiniteGraph {
    let mut names = owned(left);
    names.extend(owned(right));
    let l = left.len();
    build(names, (0..l).flat_map(|i| (0..right.len()).map(move |j| (i, l + j))))
}

pub fn star(center: &str, leaves: &[&str]) -> FiniteGraph {
    complete_bipartite(&[center], leaves)
}

pub fn path_n(n: usize) -> FiniteGraph {
    build(numbered(n), (1..n).map(|i| (i - 1, i)))
}

pub fn cycle_n(n: usize) -> FiniteGraph {
    build(numbered(n), (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_n(n: usize) -> FiniteGraph {
    build(numbered(n), (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Wheel with rim `rim` (in cycle order) and the given hub.
pub fn wheel(hub: &str, rim: &[&str]) -> FiniteGraph {
    let mut edges: Vec<Edge> = cycle(rim).edges();
    edges.extend(rim.iter().map(|&r| Edge::new(hub, r)));
    FiniteGraph::from_edges(edges).expect("wheel is simple")
}

/// Spider: a centre with legs of the given lengths. Leg `i` has vertices
/// `i.1`, `i.2`, ... outward from the centre `c`.
pub fn spider(legs: &[usize]) -> FiniteGraph {
    let mut edges = Vec::new();
    for (i, &len) in legs.iter().enumerate() {
        let mut prev = Vertex::new("c");
        for d in 1..=len {
            let cur = Vertex::new(format!("{i}.{d}"));
            edges.push(Edge::new(prev, cur.clone()));
            prev = cur;
        }
    }
    let mut vertices: Vec<Vertex> = edges.iter().flat_map(|e| [e.a().clone(), e.b().clone()]).collect();
    vertices.push(Vertex::new("c"));
    FiniteGraph::new(vertices, edges).expect("spider is simple")
}

/// The once-subdivided claw S(K_{1,3}).
pub fn subdivided_claw() -> FiniteGraph {
    spider(&[2, 2, 2])
}

/// K4 minus the edge cd: the chord is `ab`.
pub fn diamond() -> FiniteGraph {
    FiniteGraph::from_edges([
        Edge::new("a", "b"),
        Edge::new("a", "c"),
        Edge::new("a", "d"),
        Edge::new("b", "c"),
        Edge::new("b", "d"),
    ])
    .expect("diamond is simple")
}

/// Two triangles `abc` and `cde` sharing the vertex `c`.
pub fn bowtie() -> FiniteGraph {
    FiniteGraph::from_edges([
        Edge::new("a", "b"),
        Edge::new("b", "c"),
        Edge::new("a", "c"),
        Edge::new("c", "d"),
        Edge::new("d", "e"),
        Edge::new("c", "e"),
    ])
    .expect("bowtie is simple")
}

/// Path `a-b-c-d` plus a hub `h` adjacent to all four.
pub fn fan() -> FiniteGraph {
    let mut edges = path(&["a", "b", "c", "d"]).edges();
    edges.extend(["a", "b", "c", "d"].iter().map(|&x| Edge::new("h", x)));
    FiniteGraph::from_edges(edges).expect("fan is simple")
}
