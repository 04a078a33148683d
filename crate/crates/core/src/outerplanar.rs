//! Unique Hamilton cycles of 2-connected outerplanar graphs via
//! 2-contractible edges, contraction quotients, and chord-diagram layouts.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{bail, Result};
use crate::graph::{
    contract_subgraph, fresh_name, is_two_connected, Edge, EdgeSet, FiniteGraph, Vertex,
};
use crate::minor::{find_minor, is_outerplanar, Pattern};

/// Edges whose contraction leaves the graph 2-connected.
pub fn two_contractible_edges(g: &FiniteGraph) -> Result<EdgeSet> {
    if !is_two_connected(g) {
        bail!(Precondition, "graph is not 2-connected");
    }
    let mut out = EdgeSet::new();
    for e in g.edges() {
        let h: BTreeSet<Vertex> = [e.a().clone(), e.b().clone()].into();
        if is_two_connected(&contract_subgraph(g, &h)?) {
            out.insert(e);
        }
    }
    Ok(out)
}

/// Whether `edges` form one cycle through every vertex of `g`.
pub fn is_spanning_cycle(g: &FiniteGraph, edges: &EdgeSet) -> bool {
    let n = g.vertex_count();
    if n < 3 || edges.len() != n || !edges.iter().all(|e| g.has_edge(e.a(), e.b())) {
        return false;
    }
    let sub = FiniteGraph::new(g.vertices().iter().cloned(), edges.iter().cloned())
        .expect("edges of g");
    sub.is_connected() && sub.vertices().iter().all(|x| sub.degree(x) == 2)
}

/// Vertices of a spanning cycle in order, starting at the smallest vertex
/// and stepping first to its smaller cycle neighbour.
pub fn cycle_order(edges: &EdgeSet) -> Vec<Vertex> {
    let mut adj: BTreeMap<&Vertex, Vec<&Vertex>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.a()).or_default().push(e.b());
        adj.entry(e.b()).or_default().push(e.a());
    }
    let Some((&start, _)) = adj.iter().next() else { return Vec::new() };
    let mut order = vec![start.clone()];
    let mut prev = start;
    let mut cur = *adj[start].iter().min().unwrap();
    while cur != start {
        order.push(cur.clone());
        let next = *adj[cur].iter().find(|&&x| x != prev).unwrap();
        prev = cur;
        cur = next;
    }
    order
}

/// The unique Hamilton cycle of a 2-connected outerplanar graph: its
/// 2-contractible edges, or all three edges of a triangle.
pub fn unique_hamilton_cycle_outerplanar(g: &FiniteGraph) -> Result<EdgeSet> {
    if !is_two_connected(g) {
        bail!(Precondition, "graph is not 2-connected");
    }
    if !is_outerplanar(g)? {
        bail!(Precondition, "graph is not outerplanar");
    }
    if g.vertex_count() == 3 {
        return Ok(g.edge_set());
    }
    let cycle = two_contractible_edges(g)?;
    if !is_spanning_cycle(g, &cycle) {
        bail!(Consistency, "2-contractible edges do not form a Hamilton cycle");
    }
    Ok(cycle)
}

/// Components of `g - k`, each sorted, listed by smallest member.
fn outside_components(g: &FiniteGraph, k: &BTreeSet<Vertex>) -> Vec<BTreeSet<Vertex>> {
    let rest: Vec<&Vertex> = g.vertices().iter().filter(|x| !k.contains(*x)).collect();
    g.induced(rest).components().into_iter().map(|c| c.into_iter().collect()).collect()
}

/// Contracts every component of `g - k` to a single vertex named
/// `comp:<smallest member>` and merges parallel edges.
pub fn contraction_quotient(g: &FiniteGraph, k: &BTreeSet<Vertex>) -> Result<FiniteGraph> {
    if k.is_empty() {
        bail!(Precondition, "kept set is empty");
    }
    for x in k {
        g.require(x)?;
    }
    let mut rename: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut taken: BTreeSet<Vertex> = g.vertex_set();
    for comp in outside_components(g, k) {
        let min = comp.iter().next().unwrap();
        let name = fresh_name(&format!("comp:{min}"), |x| taken.contains(x));
        taken.insert(name.clone());
        for x in comp {
            rename.insert(x, name.clone());
        }
    }
    let map = |x: &Vertex| rename.get(x).cloned().unwrap_or_else(|| x.clone());
    let vertices: BTreeSet<Vertex> = g.vertices().iter().map(map).collect();
    let edges: BTreeSet<Edge> = g
        .edges()
        .into_iter()
        .filter_map(|e| {
            let (a, b) = (map(e.a()), map(e.b()));
            (a != b).then(|| Edge::new(a, b))
        })
        .collect();
    FiniteGraph::new(vertices, edges)
}

fn require_connected_subset(g: &FiniteGraph, k: &BTreeSet<Vertex>) -> Result<()> {
    if k.is_empty() {
        bail!(Precondition, "vertex set is empty");
    }
    for x in k {
        g.require(x)?;
    }
    if !g.induced(k).is_connected() {
        bail!(Precondition, "vertex set does not induce a connected subgraph");
    }
    Ok(())
}

/// Whether the contraction quotient over a connected `k` with at least
/// three vertices is 2-connected (it always is when `g` is).
pub fn check_quotient_two_connected(g: &FiniteGraph, k: &BTreeSet<Vertex>) -> Result<bool> {
    if !is_two_connected(g) {
        bail!(Precondition, "graph is not 2-connected");
    }
    require_connected_subset(g, k)?;
    if k.len() < 3 {
        bail!(Precondition, "kept set needs at least three vertices");
    }
    Ok(is_two_connected(&contraction_quotient(g, k)?))
}

/// A component of `g - (k0 ∪ N(k0))` whose neighbourhood does not have
/// exactly two vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Struct1Violation {
    pub component: BTreeSet<Vertex>,
    pub neighborhood: BTreeSet<Vertex>,
}

/// Lists the components beyond the closed neighbourhood of `k0` whose
/// neighbourhood size differs from 2. Requires `g` 2-connected without a
/// K2,3 minor and `k0` connected.
pub fn check_struct1(g: &FiniteGraph, k0: &BTreeSet<Vertex>) -> Result<Vec<Struct1Violation>> {
    if !is_two_connected(g) {
        bail!(Precondition, "graph is not 2-connected");
    }
    require_connected_subset(g, k0)?;
    if find_minor(g, Pattern::K23)?.is_some() {
        bail!(Precondition, "graph has a K23 minor");
    }
    let mut closed = k0.clone();
    for x in k0 {
        closed.extend(g.neighbors(x));
    }
    let mut out = Vec::new();
    for comp in outside_components(g, &closed) {
        let neighborhood: BTreeSet<Vertex> = comp
            .iter()
            .flat_map(|x| g.neighbors(x))
            .filter(|y| !comp.contains(y))
            .collect();
        if neighborhood.len() != 2 {
            out.push(Struct1Violation { component: comp, neighborhood });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlacedVertex {
    pub vertex: Vertex,
    /// Position on the unit circle, radians.
    pub angle: f64,
}

/// Vertices on the unit circle in Hamilton-cycle order; cycle edges are
/// arcs, the remaining edges straight chords.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskLayout {
    pub vertices: Vec<PlacedVertex>,
    pub boundary: Vec<Edge>,
    pub chords: Vec<Edge>,
}

impl DiskLayout {
    fn position(&self, x: &Vertex) -> usize {
        self.vertices.iter().position(|p| &p.vertex == x).expect("laid-out vertex")
    }

    /// Whether no two chords interleave in the cyclic order.
    pub fn crossing_free(&self) -> bool {
        let spans: Vec<(usize, usize)> = self
            .chords
            .iter()
            .map(|c| {
                let (p, q) = (self.position(c.a()), self.position(c.b()));
                (p.min(q), p.max(q))
            })
            .collect();
        spans.iter().enumerate().all(|(i, &(a0, a1))| {
            spans[i + 1..].iter().all(|&(b0, b1)| {
                let shared = a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1;
                let inside = |x: usize| a0 < x && x < a1;
                shared || inside(b0) == inside(b1)
            })
        })
    }

    /// SVG drawing on a 512 x 512 canvas.
    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 512.0;
        const RADIUS: f64 = 200.0;
        let at = |angle: f64| (SIZE / 2.0 + RADIUS * angle.cos(), SIZE / 2.0 + RADIUS * angle.sin());
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="512" height="512" viewBox="0 0 512 512">"#
        );
        let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="2">"#);
        let n = self.vertices.len();
        for i in 0..n {
            let (x1, y1) = at(self.vertices[i].angle);
            let (x2, y2) = at(self.vertices[(i + 1) % n].angle);
            let _ = writeln!(
                s,
                r#"<path d="M {x1:.3} {y1:.3} A {RADIUS} {RADIUS} 0 0 1 {x2:.3} {y2:.3}"/>"#
            );
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g stroke="steelblue" stroke-width="1.5">"#);
        for c in &self.chords {
            let (x1, y1) = at(self.vertices[self.position(c.a())].angle);
            let (x2, y2) = at(self.vertices[self.position(c.b())].angle);
            let _ = writeln!(s, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="14" text-anchor="middle">"#);
        for p in &self.vertices {
            let (x, y) = at(p.angle);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="black"/>"#);
            let (lx, ly) = (SIZE / 2.0 + (RADIUS + 20.0) * p.angle.cos(), SIZE / 2.0 + (RADIUS + 20.0) * p.angle.sin());
            let label = p.vertex.as_str().replace('&', "&amp;").replace('<', "&lt;");
            let _ = writeln!(s, r#"<text x="{lx:.3}" y="{:.3}">{label}</text>"#, ly + 5.0);
        }
        let _ = writeln!(s, "</g>\n</svg>");
        s
    }
}

/// Lays out a 2-connected outerplanar graph: equally spaced angles along
/// its unique Hamilton cycle from the smallest vertex.
pub fn disk_layout(g: &FiniteGraph) -> Result<DiskLayout> {
    let cycle = unique_hamilton_cycle_outerplanar(g)?;
    let order = cycle_order(&cycle);
    let n = order.len();
    let vertices: Vec<PlacedVertex> = order
        .iter()
        .enumerate()
        .map(|(i, x)| PlacedVertex { vertex: x.clone(), angle: 2.0 * PI * i as f64 / n as f64 })
        .collect();
    let boundary: Vec<Edge> = (0..n).map(|i| Edge::new(order[i].clone(), order[(i + 1) % n].clone())).collect();
    let chords: Vec<Edge> = g.edges().into_iter().filter(|e| !cycle.contains(e)).collect();
    let layout = DiskLayout { vertices, boundary, chords };
    if !layout.crossing_free() {
        bail!(Consistency, "chords cross in the Hamilton-cycle order");
    }
    Ok(layout)
}
