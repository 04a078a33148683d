//! The JSON graph format:
//! `{"multi": false, "vertices": ["a","b"], "edges": [["a","b"]]}`, with
//! multigraph edges written as `[id, "a", "b"]` under `"multi": true`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{bail, Error, Result};
use crate::graph::{Edge, FiniteGraph, MultiGraph, Vertex};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    multi: bool,
    vertices: Vec<Vertex>,
    edges: Vec<EdgeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum EdgeEntry {
    Multi(u64, Vertex, Vertex),
    Simple(Vertex, Vertex),
}

/// Either kind of graph, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Simple(FiniteGraph),
    Multi(MultiGraph),
}

impl AnyGraph {
    /// The simple graph, or an error for multigraph input.
    pub fn into_simple(self) -> Result<FiniteGraph> {
        match self {
            AnyGraph::Simple(g) => Ok(g),
            AnyGraph::Multi(_) => bail!(Format, "expected a simple graph (\"multi\": false)"),
        }
    }

    /// The graph as a multigraph (simple graphs convert losslessly).
    pub fn into_multi(self) -> MultiGraph {
        match self {
            AnyGraph::Simple(g) => MultiGraph::from_simple(&g),
            AnyGraph::Multi(m) => m,
        }
    }
}

impl TryFrom<GraphDoc> for AnyGraph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        if doc.multi {
            let mut edges = Vec::with_capacity(doc.edges.len());
            for entry in doc.edges {
                match entry {
                    EdgeEntry::Multi(id, a, b) => edges.push((id, a, b)),
                    EdgeEntry::Simple(..) => bail!(Format, "multigraph edges must be [id, a, b]"),
                }
            }
            Ok(AnyGraph::Multi(MultiGraph::new(doc.vertices, edges)?))
        } else {
            let mut edges = Vec::with_capacity(doc.edges.len());
            for entry in doc.edges {
                match entry {
                    EdgeEntry::Simple(a, b) => edges.push(Edge::new(a, b)),
                    EdgeEntry::Multi(..) => bail!(Format, "simple graph edges must be [a, b]"),
                }
            }
            Ok(AnyGraph::Simple(FiniteGraph::new(doc.vertices, edges)?))
        }
    }
}

impl From<&FiniteGraph> for GraphDoc {
    fn from(g: &FiniteGraph) -> Self {
        GraphDoc {
            multi: false,
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .into_iter()
                .map(|e| EdgeEntry::Simple(e.a().clone(), e.b().clone()))
                .collect(),
        }
    }
}

impl From<&MultiGraph> for GraphDoc {
    fn from(m: &MultiGraph) -> Self {
        GraphDoc {
            multi: true,
            vertices: m.vertices().iter().cloned().collect(),
            edges: m.edges().map(|(id, a, b)| EdgeEntry::Multi(id, a.clone(), b.clone())).collect(),
        }
    }
}

/// Parses either kind of graph.
pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    AnyGraph::try_from(doc)
}

/// Parses a simple graph; multigraph input is an error.
pub fn parse_simple(text: &str) -> Result<FiniteGraph> {
    parse_graph(text)?.into_simple()
}

impl Serialize for FiniteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        AnyGraph::try_from(doc).and_then(AnyGraph::into_simple).map_err(D::Error::custom)
    }
}

impl Serialize for MultiGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        AnyGraph::try_from(doc).map(AnyGraph::into_multi).map_err(D::Error::custom)
    }
}
