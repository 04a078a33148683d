use std::fmt;

use serde::{Deserialize, Serialize};

/// Opaque vertex identifier. Ordering is lexicographic on the underlying string
/// and is the canonical order used for every deterministic choice in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(String);

impl Vertex {
    pub fn new(name: impl Into<String>) -> Self {
        Vertex(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Vertex {
    fn from(s: &str) -> Self {
        Vertex(s.to_string())
    }
}

impl From<String> for Vertex {
    fn from(s: String) -> Self {
        Vertex(s)
    }
}

impl From<&String> for Vertex {
    fn from(s: &String) -> Self {
        Vertex(s.clone())
    }
}

impl From<&Vertex> for Vertex {
    fn from(v: &Vertex) -> Self {
        v.clone()
    }
}

/// Undirected edge of a simple graph, stored with its endpoints sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(Vertex, Vertex)", into = "(Vertex, Vertex)")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: impl Into<Vertex>, b: impl Into<Vertex>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn a(&self) -> &Vertex {
        &self.0
    }

    pub fn b(&self) -> &Vertex {
        &self.1
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        &self.0 == v || &self.1 == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(&self, v: &Vertex) -> Option<&Vertex> {
        if &self.0 == v {
            Some(&self.1)
        } else if &self.1 == v {
            Some(&self.0)
        } else {
            None
        }
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((a, b): (Vertex, Vertex)) -> Self {
        Edge::new(a, b)
    }
}

impl From<Edge> for (Vertex, Vertex) {
    fn from(e: Edge) -> Self {
        (e.0, e.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Shorthand used heavily in tests: `v("a")`.
pub fn v(name: &str) -> Vertex {
    Vertex::new(name)
}

/// Shorthand for an edge between two named vertices.
pub fn e(a: &str, b: &str) -> Edge {
    Edge::new(a, b)
}
