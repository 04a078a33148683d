//! The three-contact fragment gadget, its recursive expansion into the
//! cubic graphs `G_n`, and the limit graph served as a lazy oracle.
//!
//! Copies of the fragment form a binary tree addressed by strings over
//! `{c, v}`: the root copy has the empty path and copy `p` has children
//! `pc` and `pv`, which replace its `c` and `v` vertices. Vertex ids are
//! `F:<path>:<local>`; the root's three merged contacts form the vertex `z`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::graph::{enumerate_hamilton_paths, Edge, FiniteGraph, Vertex};
use crate::lazy::{LazyGraph, LevelStructure};

/// Largest level [`build_gn`] accepts.
pub const MAX_LEVEL: usize = 4;

/// Id of the vertex formed by the root copy's merged contacts.
pub const ROOT_VERTEX: &str = "z";

const FRAGMENT_DATA: &str = include_str!("../data/tutte_fragment.json");

/// Named vertices of the fragment. `s`, `t` are the neighbours of `c` other
/// than `l`; `w`, `x`, `y` are the neighbours of `v`. The order inside each
/// group fixes how child contacts are identified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub u: Vertex,
    pub l: Vertex,
    pub r: Vertex,
    pub c: Vertex,
    pub v: Vertex,
    pub s: Vertex,
    pub t: Vertex,
    pub w: Vertex,
    pub x: Vertex,
    pub y: Vertex,
}

/// One of the fragment's three degree-1 vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    U,
    L,
    R,
}

impl Contact {
    pub const ALL: [Contact; 3] = [Contact::U, Contact::L, Contact::R];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Which deleted vertex of the parent a child copy replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    C,
    V,
}

impl Slot {
    pub fn tag(self) -> char {
        match self {
            Slot::C => 'c',
            Slot::V => 'v',
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FragmentDoc {
    multi: bool,
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
    roles: Roles,
}

/// The validated fragment.
#[derive(Debug, Clone)]
pub struct Fragment {
    graph: FiniteGraph,
    roles: Roles,
    /// Hamilton paths of the fragment minus each contact, in contact order.
    paths: [Vec<Vec<Vertex>>; 3],
}

/// The shipped fragment, validated.
pub fn load_tutte_fragment() -> Result<Fragment> {
    Fragment::from_json(FRAGMENT_DATA)
}

impl Fragment {
    /// Parses and validates a fragment: degrees, the neighbourhoods of `c`
    /// and `v`, and the Hamilton path counts 0 without `u` and 2 without
    /// `r`, both of the latter using the pendant edges at `u` and `l`.
    pub fn from_json(text: &str) -> Result<Fragment> {
        let doc: FragmentDoc = serde_json::from_str(text)?;
        if doc.multi {
            bail!(Format, "fragment must be a simple graph");
        }
        let graph = FiniteGraph::new(doc.vertices, doc.edges.into_iter().map(|(a, b)| Edge::new(a, b)))?;
        let roles = doc.roles;
        let named = [&roles.u, &roles.l, &roles.r, &roles.c, &roles.v, &roles.s, &roles.t, &roles.w, &roles.x, &roles.y];
        for x in named {
            graph.require(x)?;
        }
        let distinct: BTreeSet<&Vertex> = named.iter().copied().collect();
        if distinct.len() != named.len() {
            bail!(Consistency, "fragment roles must name distinct vertices");
        }
        let contacts = [&roles.u, &roles.l, &roles.r];
        for x in graph.vertices() {
            let want = if contacts.contains(&x) { 1 } else { 3 };
            if graph.degree(x) != want {
                bail!(Consistency, "fragment vertex {x} has degree {}, expected {want}", graph.degree(x));
            }
        }
        let set = |xs: &[&Vertex]| xs.iter().map(|&x| x.clone()).collect::<BTreeSet<_>>();
        if graph.neighbors(&roles.c).into_iter().collect::<BTreeSet<_>>() != set(&[&roles.l, &roles.s, &roles.t]) {
            bail!(Consistency, "c must be adjacent to exactly l, s and t");
        }
        if graph.neighbors(&roles.v).into_iter().collect::<BTreeSet<_>>() != set(&[&roles.w, &roles.x, &roles.y]) {
            bail!(Consistency, "v must be adjacent to exactly w, x and y");
        }
        if graph.has_edge(&roles.c, &roles.v) {
            bail!(Consistency, "c and v must not be adjacent");
        }
        for m in [&roles.u, &roles.r] {
            let k = &graph.neighbors(m)[0];
            if *k == roles.c || *k == roles.v {
                bail!(Consistency, "pendant neighbour of {m} must not be c or v");
            }
        }
        let paths = [&roles.u, &roles.l, &roles.r].map(|m| enumerate_hamilton_paths(&graph.without(m)));
        if !paths[Contact::U.index()].is_empty() {
            bail!(Consistency, "fragment minus u has {} Hamilton paths, expected 0", paths[0].len());
        }
        if paths[Contact::R.index()].len() != 2 {
            bail!(Consistency, "fragment minus r has {} Hamilton paths, expected 2", paths[2].len());
        }
        let frag = Fragment { graph, roles, paths };
        for p in frag.hamilton_paths(Contact::R) {
            let edges = path_edges(p);
            for m in [Contact::U, Contact::L] {
                if !edges.contains(&frag.pendant_edge(m)) {
                    bail!(Consistency, "a Hamilton path of fragment minus r misses the pendant edge at {m:?}");
                }
            }
        }
        Ok(frag)
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn roles(&self) -> &Roles {
        &self.roles
    }

    pub fn contact(&self, m: Contact) -> &Vertex {
        match m {
            Contact::U => &self.roles.u,
            Contact::L => &self.roles.l,
            Contact::R => &self.roles.r,
        }
    }

    pub fn contact_of(&self, x: &Vertex) -> Option<Contact> {
        Contact::ALL.into_iter().find(|&m| self.contact(m) == x)
    }

    /// The interior vertex adjacent to a contact.
    pub fn pendant(&self, m: Contact) -> Vertex {
        self.graph.neighbors(self.contact(m))[0].clone()
    }

    pub fn pendant_edge(&self, m: Contact) -> Edge {
        Edge::new(self.contact(m).clone(), self.pendant(m))
    }

    /// Vertices other than the three contacts.
    pub fn interior(&self) -> Vec<Vertex> {
        self.graph.vertices().iter().filter(|x| self.contact_of(x).is_none()).cloned().collect()
    }

    /// Hamilton paths of the fragment with contact `m` removed.
    pub fn hamilton_paths(&self, m: Contact) -> &[Vec<Vertex>] {
        &self.paths[m.index()]
    }

    /// The parent vertex that a child's contact is identified with.
    pub fn child_contact_target(&self, slot: Slot, m: Contact) -> &Vertex {
        let r = &self.roles;
        match (slot, m) {
            (Slot::C, Contact::U) => &r.l,
            (Slot::C, Contact::L) => &r.s,
            (Slot::C, Contact::R) => &r.t,
            (Slot::V, Contact::U) => &r.w,
            (Slot::V, Contact::L) => &r.x,
            (Slot::V, Contact::R) => &r.y,
        }
    }

    /// For a neighbour `k` of the deleted vertex in `slot`, the child
    /// contact that takes its place.
    pub fn child_contact_for(&self, slot: Slot, k: &Vertex) -> Option<Contact> {
        Contact::ALL.into_iter().find(|&m| self.child_contact_target(slot, m) == k)
    }

    /// Counts and forced-edge facts about the fragment's Hamilton paths.
    pub fn report(&self) -> FragmentReport {
        let r_paths: Vec<BTreeSet<Edge>> = self.hamilton_paths(Contact::R).iter().map(|p| path_edges(p)).collect();
        let common = r_paths.iter().skip(1).fold(r_paths[0].clone(), |acc, p| &acc & p);
        FragmentReport {
            t_minus_u: self.hamilton_paths(Contact::U).len(),
            t_minus_l: self.hamilton_paths(Contact::L).len(),
            t_minus_r: self.hamilton_paths(Contact::R).len(),
            pendant_edges_forced: [Contact::U, Contact::L].iter().all(|&m| common.contains(&self.pendant_edge(m))),
            common_t_minus_r_edges: common.len(),
        }
    }
}

/// Edges of a vertex path.
pub fn path_edges(p: &[Vertex]) -> BTreeSet<Edge> {
    p.windows(2).map(|w| Edge::new(w[0].clone(), w[1].clone())).collect()
}

/// Hamilton path counts of the fragment with each contact removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentReport {
    pub t_minus_u: usize,
    pub t_minus_l: usize,
    pub t_minus_r: usize,
    /// Both paths without `r` use the pendant edges at `u` and `l`.
    pub pendant_edges_forced: bool,
    /// Size of the intersection of the two paths without `r`.
    pub common_t_minus_r_edges: usize,
}

/// The fragment-local edge that a graph edge comes from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EdgeOwner {
    pub path: String,
    pub local: Edge,
}

pub fn copy_vertex(path: &str, local: &Vertex) -> Vertex {
    Vertex::new(format!("F:{path}:{local}"))
}

/// Splits `F:<path>:<local>` into its parts.
pub fn parse_copy_vertex(x: &Vertex) -> Option<(&str, &str)> {
    let rest = x.as_str().strip_prefix("F:")?;
    let (path, local) = rest.split_once(':')?;
    if path.chars().all(|ch| ch == 'c' || ch == 'v') {
        Some((path, local))
    } else {
        None
    }
}

/// Adjacency of the expanded copy tree. Copies at depth below `level` are
/// expanded (their `c` and `v` replaced by children); `None` expands all.
struct Expansion<'a> {
    f: &'a Fragment,
    level: Option<usize>,
}

impl Expansion<'_> {
    fn expanded(&self, path: &str) -> bool {
        self.level.map_or(true, |n| path.len() < n)
    }

    fn is_vertex(&self, x: &Vertex) -> bool {
        if x.as_str() == ROOT_VERTEX {
            return true;
        }
        let Some((path, local)) = parse_copy_vertex(x) else { return false };
        let local = Vertex::new(local);
        if self.level.is_some_and(|n| path.len() > n) || !self.f.graph.contains(&local) {
            return false;
        }
        if self.f.contact_of(&local).is_some() {
            return false;
        }
        !(self.expanded(path) && (local == self.f.roles.c || local == self.f.roles.v))
    }

    /// The vertex a copy's contact is identified with.
    fn resolve_contact(&self, path: &str, m: Contact) -> Vertex {
        let Some(tag) = path.chars().last() else {
            return Vertex::new(ROOT_VERTEX);
        };
        let parent = &path[..path.len() - 1];
        let slot = if tag == 'c' { Slot::C } else { Slot::V };
        let target = self.f.child_contact_target(slot, m);
        match self.f.contact_of(target) {
            Some(pm) => self.resolve_contact(parent, pm),
            None => copy_vertex(parent, target),
        }
    }

    /// The far end of a copy's pendant edge at contact `m`, with the copy
    /// owning that edge. If the pendant vertex was replaced by a child, the
    /// edge continues into the child.
    fn edge_target(&self, path: &str, m: Contact) -> (Vertex, EdgeOwner) {
        let k = self.f.pendant(m);
        for slot in [Slot::C, Slot::V] {
            let deleted = if slot == Slot::C { &self.f.roles.c } else { &self.f.roles.v };
            if self.expanded(path) && k == *deleted {
                let cm = self.f.child_contact_for(slot, self.f.contact(m)).expect("pendant of a deleted vertex maps to a child contact");
                return self.edge_target(&format!("{path}{}", slot.tag()), cm);
            }
        }
        let owner = EdgeOwner { path: path.to_string(), local: self.f.pendant_edge(m) };
        (copy_vertex(path, &k), owner)
    }

    fn neighbors_with_owner(&self, x: &Vertex) -> Vec<(Vertex, EdgeOwner)> {
        if !self.is_vertex(x) {
            return Vec::new();
        }
        if x.as_str() == ROOT_VERTEX {
            let mut out: Vec<_> = Contact::ALL.into_iter().map(|m| self.edge_target("", m)).collect();
            out.sort();
            return out;
        }
        let (path, local) = parse_copy_vertex(x).expect("checked above");
        let k = Vertex::new(local);
        let mut out = Vec::new();
        for j in self.f.graph.neighbors(&k) {
            if let Some(m) = self.f.contact_of(&j) {
                let owner = EdgeOwner { path: path.to_string(), local: Edge::new(k.clone(), j) };
                out.push((self.resolve_contact(path, m), owner));
                continue;
            }
            let slot = if j == self.f.roles.c {
                Some(Slot::C)
            } else if j == self.f.roles.v {
                Some(Slot::V)
            } else {
                None
            };
            match slot {
                Some(slot) if self.expanded(path) => {
                    let cm = self.f.child_contact_for(slot, &k).expect("neighbour of a deleted vertex maps to a child contact");
                    out.push(self.edge_target(&format!("{path}{}", slot.tag()), cm));
                }
                _ => {
                    let owner = EdgeOwner { path: path.to_string(), local: Edge::new(k.clone(), j.clone()) };
                    out.push((copy_vertex(path, &j), owner));
                }
            }
        }
        out.sort();
        out
    }

    fn neighbors(&self, x: &Vertex) -> Vec<Vertex> {
        self.neighbors_with_owner(x).into_iter().map(|(y, _)| y).collect()
    }

    /// Vertices of one copy that exist in this expansion.
    fn copy_vertices(&self, path: &str) -> Vec<Vertex> {
        self.f
            .interior()
            .into_iter()
            .map(|k| copy_vertex(path, &k))
            .filter(|x| self.is_vertex(x))
            .collect()
    }
}

/// All copy paths of depth at most `n`, shortest first.
pub fn copy_paths(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..n {
        layer = layer.iter().flat_map(|p| [format!("{p}c"), format!("{p}v")]).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// One fragment copy in `G_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopyRecord {
    pub path: String,
    /// Vertices absorbing this copy's `u`, `l` and `r`.
    pub contacts: [Vertex; 3],
    /// Copies at the deepest level are marked: intact, and expanded next.
    pub marked: bool,
}

/// The recursion tree of copies together with `G_n`.
#[derive(Debug, Clone)]
pub struct FragmentTree {
    fragment: Fragment,
    level: usize,
    copies: Vec<CopyRecord>,
    graph: FiniteGraph,
}

impl FragmentTree {
    pub fn fragment(&self) -> &Fragment {
        &self.fragment
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn copies(&self) -> &[CopyRecord] {
        &self.copies
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn marked(&self) -> impl Iterator<Item = &CopyRecord> {
        self.copies.iter().filter(|c| c.marked)
    }

    fn expansion(&self) -> Expansion<'_> {
        Expansion { f: &self.fragment, level: Some(self.level) }
    }

    /// Vertices of one copy in `G_n`.
    pub fn copy_vertices(&self, path: &str) -> BTreeSet<Vertex> {
        self.expansion().copy_vertices(path).into_iter().collect()
    }

    /// Vertices of a copy and all its descendants.
    pub fn subtree_vertices(&self, path: &str) -> BTreeSet<Vertex> {
        self.copies
            .iter()
            .filter(|c| c.path.starts_with(path))
            .flat_map(|c| self.copy_vertices(&c.path))
            .collect()
    }

    /// The graph edge behind a fragment-local edge of a copy, or `None` if
    /// the local edge touches a vertex replaced by a child.
    pub fn local_edge(&self, path: &str, local: &Edge) -> Option<Edge> {
        let exp = self.expansion();
        let end = |x: &Vertex| match self.fragment.contact_of(x) {
            Some(m) => Some(exp.resolve_contact(path, m)),
            None => {
                let y = copy_vertex(path, x);
                exp.is_vertex(&y).then_some(y)
            }
        };
        Some(Edge::new(end(local.a())?, end(local.b())?))
    }

    /// Who owns a graph edge, as seen from its endpoint `a`.
    pub fn edge_owner(&self, a: &Vertex, b: &Vertex) -> Option<EdgeOwner> {
        self.expansion().neighbors_with_owner(a).into_iter().find(|(y, _)| y == b).map(|(_, o)| o)
    }

    /// Edges of `G_n` that stay in every later level: those not incident
    /// to the `c` or `v` of a marked copy.
    pub fn persistent_edges(&self) -> BTreeSet<Edge> {
        let doomed: BTreeSet<Vertex> = self
            .marked()
            .flat_map(|c| [copy_vertex(&c.path, &self.fragment.roles.c), copy_vertex(&c.path, &self.fragment.roles.v)])
            .collect();
        self.graph.edges().into_iter().filter(|e| !doomed.contains(e.a()) && !doomed.contains(e.b())).collect()
    }

    /// The tree one level deeper.
    pub fn expand(&self) -> Result<FragmentTree> {
        build_tree(self.fragment.clone(), self.level + 1)
    }
}

fn build_tree(fragment: Fragment, level: usize) -> Result<FragmentTree> {
    if level > MAX_LEVEL {
        bail!(SizeLimit, "construction level {level} exceeds the cap of {MAX_LEVEL}");
    }
    let exp = Expansion { f: &fragment, level: Some(level) };
    let paths = copy_paths(level);
    let mut vertices = vec![Vertex::new(ROOT_VERTEX)];
    for p in &paths {
        vertices.extend(exp.copy_vertices(p));
    }
    let mut edges = BTreeSet::new();
    for x in &vertices {
        for y in exp.neighbors(x) {
            if !exp.neighbors(&y).contains(x) {
                bail!(Consistency, "expansion adjacency is not symmetric at {x} and {y}");
            }
            edges.insert(Edge::new(x.clone(), y));
        }
    }
    let graph = FiniteGraph::new(vertices, edges)?;
    let copies = paths
        .iter()
        .map(|p| CopyRecord {
            path: p.clone(),
            contacts: Contact::ALL.map(|m| exp.resolve_contact(p, m)),
            marked: p.len() == level,
        })
        .collect();
    Ok(FragmentTree { fragment, level, copies, graph })
}

/// `G_n` with the root's contacts merged into `z`, and its copy tree.
pub fn build_gn(n: usize) -> Result<(FiniteGraph, FragmentTree)> {
    let tree = build_tree(load_tutte_fragment()?, n)?;
    Ok((tree.graph.clone(), tree))
}

/// The limit of the `G_n`: every copy expanded, edges that persist from
/// some level on. Level `n` of its level structure is `z` plus all copies
/// of depth at most `n`; each component outside is the subtree below one
/// copy of depth `n + 1`, labelled by that copy's path.
#[derive(Debug, Clone)]
pub struct Section5Graph {
    fragment: Fragment,
}

pub fn section5_graph() -> Result<Section5Graph> {
    Ok(Section5Graph { fragment: load_tutte_fragment()? })
}

impl Section5Graph {
    pub fn fragment(&self) -> &Fragment {
        &self.fragment
    }

    fn expansion(&self) -> Expansion<'_> {
        Expansion { f: &self.fragment, level: None }
    }

    /// Who owns the edge `ab`, or `None` if it is not an edge.
    pub fn edge_owner(&self, a: &Vertex, b: &Vertex) -> Option<EdgeOwner> {
        self.expansion().neighbors_with_owner(a).into_iter().find(|(y, _)| y == b).map(|(_, o)| o)
    }
}

impl LazyGraph for Section5Graph {
    fn root(&self) -> Vertex {
        Vertex::new(ROOT_VERTEX)
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        self.expansion().neighbors(v)
    }

    fn levels(&self) -> Option<&dyn LevelStructure> {
        Some(self)
    }
}

impl LevelStructure for Section5Graph {
    fn region(&self, level: usize) -> Vec<Vertex> {
        let exp = self.expansion();
        let mut out = vec![Vertex::new(ROOT_VERTEX)];
        for p in copy_paths(level) {
            out.extend(exp.copy_vertices(&p));
        }
        out.sort();
        out
    }

    fn component_label(&self, level: usize, v: &Vertex) -> Option<String> {
        if !self.expansion().is_vertex(v) {
            return None;
        }
        let (path, _) = parse_copy_vertex(v)?;
        (path.len() > level).then(|| path[..=level].to_string())
    }
}
