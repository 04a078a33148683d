//! Locally finite infinite graphs given by neighbour oracles, with balls,
//! deep components as finite stand-ins for ends, and end-degree bounds by
//! disjoint-path packing.

mod flow;
mod ladder;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::graph::{fresh_name, Edge, FiniteGraph, MultiGraph, Vertex};
use flow::{FlowNetwork, INF};

pub use ladder::{double_ladder, DoubleLadder};

/// A locally finite graph given by a root and a neighbour function.
///
/// `neighbors` must be pure, return a finite sorted list, and be symmetric:
/// `u` lists `v` exactly when `v` lists `u`. Unknown ids have no neighbours.
pub trait LazyGraph: Send + Sync {
    fn root(&self) -> Vertex;
    fn neighbors(&self, v: &Vertex) -> Vec<Vertex>;
    /// Exact level structure, for generators that know their own ends.
    fn levels(&self) -> Option<&dyn LevelStructure> {
        None
    }
}

/// An exhaustion of a graph by finite regions together with an exact
/// labelling of the components outside each region. Every such component
/// must be infinite, and regions must grow with the level.
pub trait LevelStructure: Send + Sync {
    fn region(&self, level: usize) -> Vec<Vertex>;
    /// Label of the component of `G - region(level)` containing `v`, or
    /// `None` if `v` is in the region or not a vertex.
    fn component_label(&self, level: usize, v: &Vertex) -> Option<String>;
}

/// Exploration limits. `depth` is how many BFS layers a component must keep
/// growing through to count as deep, and how far disjoint paths are pushed
/// into it for end-degree bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_vertices: usize,
    pub depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vertices: 200_000, depth: 12 }
    }
}

/// A finite graph served through the lazy interface.
#[derive(Debug, Clone)]
pub struct FiniteLazy {
    graph: FiniteGraph,
    root: Vertex,
}

impl FiniteLazy {
    pub fn new(graph: FiniteGraph, root: impl Into<Vertex>) -> Result<Self> {
        let root = root.into();
        graph.require(&root)?;
        Ok(FiniteLazy { graph, root })
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }
}

impl LazyGraph for FiniteLazy {
    fn root(&self) -> Vertex {
        self.root.clone()
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        if self.graph.contains(v) {
            self.graph.neighbors(v)
        } else {
            Vec::new()
        }
    }
}

/// The `k`-th power of a lazy graph: neighbours are all other vertices
/// within distance `k`. Level structure is not carried over.
pub struct LazyPower<G> {
    inner: G,
    k: usize,
}

pub fn lazy_power<G: LazyGraph>(lg: G, k: usize) -> Result<LazyPower<G>> {
    if k == 0 {
        bail!(Precondition, "power must be at least 1");
    }
    Ok(LazyPower { inner: lg, k })
}

impl<G: LazyGraph> LazyGraph for LazyPower<G> {
    fn root(&self) -> Vertex {
        self.inner.root()
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let mut seen = BTreeSet::from([v.clone()]);
        let mut layer = vec![v.clone()];
        for _ in 0..self.k {
            let mut next = Vec::new();
            for x in &layer {
                for y in self.inner.neighbors(x) {
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        seen.remove(v);
        seen.into_iter().collect()
    }
}

/// The subgraph induced on vertices within distance `radius` of the root.
#[derive(Debug, Clone, Serialize)]
pub struct BallView {
    pub radius: usize,
    pub graph: FiniteGraph,
    /// Vertices in BFS discovery order.
    pub order: Vec<Vertex>,
    /// Vertices at distance exactly `radius`.
    pub boundary: Vec<Vertex>,
}

pub fn ball(lg: &dyn LazyGraph, radius: usize, budget: Budget) -> Result<BallView> {
    let root = lg.root();
    let mut order = vec![root.clone()];
    let mut seen = BTreeSet::from([root.clone()]);
    let mut layer = vec![root];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &layer {
            for y in lg.neighbors(x) {
                if seen.insert(y.clone()) {
                    if seen.len() > budget.max_vertices {
                        bail!(Budget, "ball of radius {radius} exceeds {} vertices", budget.max_vertices);
                    }
                    order.push(y.clone());
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            layer = next;
            break;
        }
        layer = next;
    }
    let graph = induced(lg, &seen)?;
    let mut boundary = if radius == 0 { order.clone() } else { layer };
    boundary.sort();
    Ok(BallView { radius, graph, order, boundary })
}

fn induced(lg: &dyn LazyGraph, set: &BTreeSet<Vertex>) -> Result<FiniteGraph> {
    let mut edges = Vec::new();
    for x in set {
        for y in lg.neighbors(x) {
            if *x < y && set.contains(&y) {
                edges.push(Edge::new(x.clone(), y));
            }
        }
    }
    FiniteGraph::new(set.iter().cloned(), edges)
}

/// The finite region used at `level`: the generator's own region when it
/// has a level structure, otherwise the ball of that radius.
pub fn level_region(lg: &dyn LazyGraph, level: usize, budget: Budget) -> Result<BTreeSet<Vertex>> {
    match lg.levels() {
        Some(ls) => Ok(ls.region(level).into_iter().collect()),
        None => Ok(ball(lg, level, budget)?.graph.vertex_set()),
    }
}

/// An infinite component outside the level region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeepComponent {
    pub radius: usize,
    pub id: usize,
    pub label: String,
    /// Region vertices adjacent to the component.
    pub fingers: Vec<Vertex>,
    /// Edges between the region and the component.
    pub finger_edges: Vec<Edge>,
    /// Smallest component vertex adjacent to the region.
    pub representative: Vertex,
}

struct Explored {
    label: String,
    starts: BTreeSet<Vertex>,
    vertices: BTreeSet<Vertex>,
    deep: bool,
}

/// Components of `G - region`. With a level structure they are read off
/// the labels; otherwise each is grown by BFS and counts as deep when it is
/// still growing after `budget.depth` layers. Two parts that only meet
/// beyond that depth are reported separately in the BFS case.
fn explore(lg: &dyn LazyGraph, level: usize, region: &BTreeSet<Vertex>, budget: Budget) -> Result<Vec<Explored>> {
    let mut starts = BTreeSet::new();
    for x in region {
        for y in lg.neighbors(x) {
            if !region.contains(&y) {
                starts.insert(y);
            }
        }
    }
    if let Some(ls) = lg.levels() {
        let mut groups: BTreeMap<String, BTreeSet<Vertex>> = BTreeMap::new();
        for y in starts {
            let Some(label) = ls.component_label(level, &y) else {
                bail!(Consistency, "vertex {y} outside region {level} has no component label");
            };
            groups.entry(label).or_default().insert(y);
        }
        return Ok(groups
            .into_iter()
            .map(|(label, starts)| Explored { label, vertices: starts.clone(), starts, deep: true })
            .collect());
    }
    let mut out: Vec<Explored> = Vec::new();
    let mut assigned = BTreeSet::new();
    let mut explored = 0usize;
    for s in &starts {
        if assigned.contains(s) {
            continue;
        }
        let mut seen = BTreeSet::from([s.clone()]);
        let mut layer = vec![s.clone()];
        let mut d = 0;
        while !layer.is_empty() && d < budget.depth {
            let mut next = Vec::new();
            for x in &layer {
                for y in lg.neighbors(x) {
                    if !region.contains(&y) && seen.insert(y.clone()) {
                        explored += 1;
                        if explored > budget.max_vertices {
                            bail!(Budget, "component exploration exceeds {} vertices", budget.max_vertices);
                        }
                        next.push(y);
                    }
                }
            }
            layer = next;
            d += 1;
        }
        let mine: BTreeSet<Vertex> = starts.iter().filter(|x| seen.contains(*x)).cloned().collect();
        assigned.extend(mine.iter().cloned());
        out.push(Explored { label: s.to_string(), starts: mine, vertices: seen, deep: !layer.is_empty() });
    }
    Ok(out)
}

fn to_component(lg: &dyn LazyGraph, radius: usize, id: usize, region: &BTreeSet<Vertex>, ex: &Explored) -> DeepComponent {
    let mut fingers = BTreeSet::new();
    let mut finger_edges = BTreeSet::new();
    for y in &ex.starts {
        for x in lg.neighbors(y) {
            if region.contains(&x) {
                finger_edges.insert(Edge::new(x.clone(), y.clone()));
                fingers.insert(x);
            }
        }
    }
    DeepComponent {
        radius,
        id,
        label: ex.label.clone(),
        fingers: fingers.into_iter().collect(),
        finger_edges: finger_edges.into_iter().collect(),
        representative: ex.starts.iter().next().expect("a component has a start").clone(),
    }
}

/// The deep components outside the level-`r` region, ordered by
/// representative.
pub fn deep_components(lg: &dyn LazyGraph, r: usize, budget: Budget) -> Result<Vec<DeepComponent>> {
    let region = level_region(lg, r, budget)?;
    let mut explored: Vec<Explored> = explore(lg, r, &region, budget)?.into_iter().filter(|e| e.deep).collect();
    explored.sort_by(|a, b| a.starts.iter().next().cmp(&b.starts.iter().next()));
    Ok(explored.iter().enumerate().map(|(i, e)| to_component(lg, r, i, &region, e)).collect())
}

/// For each deep component at `r2`, the id of the deep component at `r1`
/// containing it.
pub fn end_nesting(lg: &dyn LazyGraph, r1: usize, r2: usize, budget: Budget) -> Result<BTreeMap<usize, usize>> {
    if r1 >= r2 {
        bail!(Precondition, "nesting needs r1 < r2, got {r1} and {r2}");
    }
    let outer = deep_components(lg, r1, budget)?;
    let inner = deep_components(lg, r2, budget)?;
    let mut map = BTreeMap::new();
    if let Some(ls) = lg.levels() {
        for c in &inner {
            let label = ls.component_label(r1, &c.representative);
            let Some(parent) = outer.iter().find(|o| Some(&o.label) == label.as_ref()) else {
                bail!(Consistency, "component {} at level {r2} lies in no component at level {r1}", c.id);
            };
            map.insert(c.id, parent.id);
        }
        return Ok(map);
    }
    let region = level_region(lg, r1, budget)?;
    let all = explore(lg, r1, &region, budget)?;
    for c in &inner {
        // Walk outside the smaller region until reaching a vertex next to it.
        let mut seen = BTreeSet::from([c.representative.clone()]);
        let mut queue = VecDeque::from([c.representative.clone()]);
        let mut hit = None;
        while let Some(x) = queue.pop_front() {
            if let Some(e) = all.iter().find(|e| e.starts.contains(&x)) {
                hit = Some(e);
                break;
            }
            for y in lg.neighbors(&x) {
                if !region.contains(&y) && seen.insert(y.clone()) {
                    if seen.len() > budget.max_vertices {
                        bail!(Budget, "nesting search exceeds {} vertices", budget.max_vertices);
                    }
                    queue.push_back(y);
                }
            }
        }
        let Some(e) = hit.filter(|e| e.deep) else {
            bail!(Consistency, "component {} at level {r2} lies in no deep component at level {r1}", c.id);
        };
        let parent = outer.iter().find(|o| o.label == e.label).expect("deep components are listed");
        map.insert(c.id, parent.id);
    }
    Ok(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    Vertex,
    Edge,
}

/// Lower and upper bounds on how many disjoint rays the ends inside `comp`
/// carry. The lower bound is the number of vertex- or edge-disjoint paths
/// from the fingers to depth `budget.depth` inside the component; the upper
/// bound is the number of fingers or finger edges.
pub fn end_degree_bound(lg: &dyn LazyGraph, comp: &DeepComponent, mode: DegreeMode, budget: Budget) -> Result<(usize, usize)> {
    let region = level_region(lg, comp.radius, budget)?;
    let starts: BTreeSet<Vertex> = comp
        .finger_edges
        .iter()
        .map(|e| if region.contains(e.a()) { e.b().clone() } else { e.a().clone() })
        .collect();
    let mut index: BTreeMap<Vertex, usize> = BTreeMap::new();
    for x in comp.fingers.iter().chain(&starts) {
        let next = index.len();
        index.entry(x.clone()).or_insert(next);
    }
    let mut layer: Vec<Vertex> = starts.iter().cloned().collect();
    for _ in 0..budget.depth {
        let mut next = Vec::new();
        for x in &layer {
            for y in lg.neighbors(x) {
                if region.contains(&y) || index.contains_key(&y) {
                    continue;
                }
                let next_id = index.len();
                index.insert(y.clone(), next_id);
                if index.len() > budget.max_vertices {
                    bail!(Budget, "path packing exceeds {} vertices", budget.max_vertices);
                }
                next.push(y);
            }
        }
        layer = next;
    }
    if layer.is_empty() {
        bail!(Budget, "component {} ends before depth {}", comp.id, budget.depth);
    }
    let n = index.len();
    let split = mode == DegreeMode::Vertex;
    let nodes = if split { 2 * n + 2 } else { n + 2 };
    let (source, sink) = (nodes - 2, nodes - 1);
    let inn = |i: usize| i;
    let out = |i: usize| if split { n + i } else { i };
    let mut net = FlowNetwork::new(nodes);
    if split {
        for i in 0..n {
            net.arc(inn(i), out(i), 1);
        }
    }
    let link = |net: &mut FlowNetwork, a: usize, b: usize| {
        if split {
            net.arc(out(a), inn(b), INF);
            net.arc(out(b), inn(a), INF);
        } else {
            net.edge(a, b, 1);
        }
    };
    for e in &comp.finger_edges {
        link(&mut net, index[e.a()], index[e.b()]);
    }
    let fingers: BTreeSet<&Vertex> = comp.fingers.iter().collect();
    for (x, &i) in &index {
        if fingers.contains(x) {
            continue;
        }
        for y in lg.neighbors(x) {
            if let Some(&j) = index.get(&y) {
                if *x < y && !fingers.contains(&y) {
                    link(&mut net, i, j);
                }
            }
        }
    }
    for f in &comp.fingers {
        net.arc(source, inn(index[f]), INF);
    }
    for x in &layer {
        net.arc(out(index[x]), sink, INF);
    }
    let lower = net.max_flow(source, sink) as usize;
    let upper = match mode {
        DegreeMode::Vertex => comp.fingers.len(),
        DegreeMode::Edge => comp.finger_edges.len(),
    };
    if lower > upper {
        bail!(Consistency, "packing found {lower} disjoint paths through a cut of size {upper}");
    }
    Ok((lower, upper))
}

/// The region of a level with every deep component contracted to a single
/// surrogate vertex. Finite components outside the region are kept as they
/// are, and parallel edges to a surrogate are kept apart.
#[derive(Debug, Clone)]
pub struct LevelQuotient {
    pub level: usize,
    pub graph: MultiGraph,
    /// Original edge behind each quotient edge id.
    pub edge_map: BTreeMap<u64, Edge>,
    /// Surrogate vertex of each deep component, indexed by component id.
    pub surrogates: Vec<Vertex>,
    pub components: Vec<DeepComponent>,
}

impl LevelQuotient {
    /// Original edges of a set of quotient edge ids.
    pub fn original_edges(&self, ids: &BTreeSet<u64>) -> BTreeSet<Edge> {
        ids.iter().map(|id| self.edge_map[id].clone()).collect()
    }

    /// Original edges of the quotient that avoid every surrogate.
    pub fn persistent_edges(&self) -> BTreeSet<Edge> {
        let surrogates: BTreeSet<&Vertex> = self.surrogates.iter().collect();
        self.graph
            .edges()
            .filter(|(_, a, b)| !surrogates.contains(a) && !surrogates.contains(b))
            .map(|(id, _, _)| self.edge_map[&id].clone())
            .collect()
    }
}

pub fn level_quotient(lg: &dyn LazyGraph, level: usize, budget: Budget) -> Result<LevelQuotient> {
    let region = level_region(lg, level, budget)?;
    let mut explored = explore(lg, level, &region, budget)?;
    explored.sort_by(|a, b| a.starts.iter().next().cmp(&b.starts.iter().next()));
    let mut kept = region.clone();
    for e in explored.iter().filter(|e| !e.deep) {
        kept.extend(e.vertices.iter().cloned());
    }
    let deep: Vec<&Explored> = explored.iter().filter(|e| e.deep).collect();
    let components: Vec<DeepComponent> =
        deep.iter().enumerate().map(|(i, e)| to_component(lg, level, i, &region, e)).collect();
    let mut taken: BTreeSet<Vertex> = kept.clone();
    let mut surrogates = Vec::new();
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, e) in deep.iter().enumerate() {
        let s = fresh_name(&format!("S:{}", e.label), |x| taken.contains(x));
        taken.insert(s.clone());
        surrogates.push(s);
        for y in &e.starts {
            owner.insert(y.clone(), i);
        }
    }
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for x in &kept {
        for y in lg.neighbors(x) {
            if kept.contains(&y) || owner.contains_key(&y) {
                edges.insert(Edge::new(x.clone(), y));
            }
        }
    }
    let mut edge_map = BTreeMap::new();
    let mut triples = Vec::new();
    for (id, e) in edges.into_iter().enumerate() {
        let id = id as u64;
        let map_end = |x: &Vertex| owner.get(x).map(|&i| surrogates[i].clone()).unwrap_or_else(|| x.clone());
        triples.push((id, map_end(e.a()), map_end(e.b())));
        edge_map.insert(id, e);
    }
    let graph = MultiGraph::new(kept.into_iter().chain(surrogates.iter().cloned()), triples)?;
    Ok(LevelQuotient { level, graph, edge_map, surrogates, components })
}

/// Deep components of one level with both kinds of degree bounds.
#[derive(Debug, Clone, Serialize)]
pub struct EndReport {
    pub radius: usize,
    pub components: Vec<EndEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EndEntry {
    pub id: usize,
    pub fingers: Vec<Vertex>,
    pub degree_bounds: DegreeBounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub vertex: (usize, usize),
    pub edge: (usize, usize),
}

pub fn end_report(lg: &dyn LazyGraph, radius: usize, budget: Budget) -> Result<EndReport> {
    let components = deep_components(lg, radius, budget)?
        .into_iter()
        .map(|c| {
            let vertex = end_degree_bound(lg, &c, DegreeMode::Vertex, budget)?;
            let edge = end_degree_bound(lg, &c, DegreeMode::Edge, budget)?;
            Ok(EndEntry { id: c.id, fingers: c.fingers, degree_bounds: DegreeBounds { vertex, edge } })
        })
        .collect::<Result<_>>()?;
    Ok(EndReport { radius, components })
}
