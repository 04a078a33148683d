//! Forbidden-substructure search: K4 subgraphs, K4 / K2,3 minors,
//! outerplanarity, and a brute-force circular-order oracle.
//!
//! Minor search walks the partitions of the host's vertex set into connected
//! parts, starting from singletons and merging adjacent parts. A pattern is
//! a minor exactly when some such partition has a quotient containing the
//! pattern as a subgraph; the parts it uses are the branch sets.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::graph::{Edge, FiniteGraph, Vertex};

/// Largest host accepted by [`find_minor`].
pub const MAX_MINOR_VERTICES: usize = 30;
/// Number of partitions [`find_minor`] may visit before giving up.
pub const MINOR_STATE_BUDGET: usize = 2_000_000;
/// Largest graph accepted by [`circular_ordering_oracle`].
pub const MAX_ORACLE_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    K4,
    K23,
}

impl Pattern {
    /// Pattern vertex names in search order.
    pub fn vertex_names(self) -> &'static [&'static str] {
        match self {
            Pattern::K4 => &["a", "b", "c", "d"],
            Pattern::K23 => &["a1", "a2", "b1", "b2", "b3"],
        }
    }

    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::K4 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            Pattern::K23 => &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        }
    }

    /// Interchangeable vertices: `class[i] == class[j]` means some pattern
    /// automorphism swaps them.
    fn class(self) -> &'static [usize] {
        match self {
            Pattern::K4 => &[0, 0, 0, 0],
            Pattern::K23 => &[0, 0, 1, 1, 1],
        }
    }

    fn degree(self, i: usize) -> usize {
        self.edges().iter().filter(|&&(a, b)| a == i || b == i).count()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::K4 => "K4",
            Pattern::K23 => "K23",
        })
    }
}

/// One host edge realising one pattern edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEdge {
    pub pattern: (String, String),
    pub host: Edge,
}

/// Branch sets and connecting edges of a minor model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub pattern: Pattern,
    pub branch_sets: BTreeMap<String, BTreeSet<Vertex>>,
    pub edges: Vec<WitnessEdge>,
}

impl MinorWitness {
    /// Checks disjointness, connectivity and every connecting edge.
    pub fn validate(&self, g: &FiniteGraph) -> Result<()> {
        let names = self.pattern.vertex_names();
        let mut used = BTreeSet::new();
        for name in names {
            let Some(set) = self.branch_sets.get(*name) else {
                bail!(Consistency, "branch set {name} missing");
            };
            if set.is_empty() || !set.iter().all(|x| g.contains(x)) {
                bail!(Consistency, "branch set {name} is empty or leaves the graph");
            }
            if !g.induced(set).is_connected() {
                bail!(Consistency, "branch set {name} is disconnected");
            }
            for x in set {
                if !used.insert(x.clone()) {
                    bail!(Consistency, "vertex {x} lies in two branch sets");
                }
            }
        }
        if self.edges.len() != self.pattern.edges().len() {
            bail!(Consistency, "wrong number of connecting edges");
        }
        for (we, &(i, j)) in self.edges.iter().zip(self.pattern.edges()) {
            let (p, q) = (names[i], names[j]);
            if we.pattern != (p.to_string(), q.to_string()) {
                bail!(Consistency, "connecting edges out of order");
            }
            let (bp, bq) = (&self.branch_sets[p], &self.branch_sets[q]);
            let joins = (bp.contains(we.host.a()) && bq.contains(we.host.b()))
                || (bp.contains(we.host.b()) && bq.contains(we.host.a()));
            if !g.has_edge(we.host.a(), we.host.b()) || !joins {
                bail!(Consistency, "edge {} does not join {p} and {q}", we.host);
            }
        }
        Ok(())
    }
}

/// The first 4-clique in lexicographic order of vertex indices.
pub fn find_k4_subgraph(g: &FiniteGraph) -> Option<BTreeSet<Vertex>> {
    let n = g.vertex_count();
    for a in 0..n {
        for &b in g.adj(a).iter().filter(|&&b| b > a) {
            for &c in g.adj(b).iter().filter(|&&c| c > b) {
                if !g.adj(a).contains(&c) {
                    continue;
                }
                for &d in g.adj(c).iter().filter(|&&d| d > c) {
                    if g.adj(a).contains(&d) && g.adj(b).contains(&d) {
                        return Some([a, b, c, d].iter().map(|&i| g.name(i).clone()).collect());
                    }
                }
            }
        }
    }
    None
}

struct MinorSearch<'a> {
    g: &'a FiniteGraph,
    pattern: Pattern,
    /// Neighbourhood bitmask per host vertex.
    nbr: Vec<u64>,
    visited: HashSet<Vec<u64>>,
}

impl MinorSearch<'_> {
    fn quotient(&self, parts: &[u64]) -> Vec<u64> {
        parts
            .iter()
            .map(|&p| {
                let mut reach = 0u64;
                let mut bits = p;
                while bits != 0 {
                    let x = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    reach |= self.nbr[x];
                }
                reach &= !p;
                let mut adj = 0u64;
                for (j, &q) in parts.iter().enumerate() {
                    if q & reach != 0 {
                        adj |= 1 << j;
                    }
                }
                adj
            })
            .collect()
    }

    /// Subgraph embedding of the pattern into the quotient, respecting the
    /// symmetry classes so each embedding is tried once up to automorphism.
    fn embed(&self, qadj: &[u64], image: &mut Vec<usize>) -> bool {
        let i = image.len();
        let names = self.pattern.vertex_names();
        if i == names.len() {
            return true;
        }
        let class = self.pattern.class();
        let lower = (0..i).filter(|&j| class[j] == class[i]).map(|j| image[j] + 1).max().unwrap_or(0);
        let need = self.pattern.degree(i);
        for q in lower..qadj.len() {
            if image.contains(&q) || (qadj[q].count_ones() as usize) < need {
                continue;
            }
            let fits = self.pattern.edges().iter().all(|&(a, b)| {
                let other = if a == i && b < i {
                    b
                } else if b == i && a < i {
                    a
                } else {
                    return true;
                };
                qadj[q] & (1 << image[other]) != 0
            });
            if fits {
                image.push(q);
                if self.embed(qadj, image) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }

    fn dfs(&mut self, parts: Vec<u64>) -> Result<Option<Vec<u64>>> {
        let p = self.pattern.vertex_names().len();
        let qadj = self.quotient(&parts);
        let mut image = Vec::new();
        if self.embed(&qadj, &mut image) {
            return Ok(Some(image.into_iter().map(|q| parts[q]).collect()));
        }
        if parts.len() <= p {
            return Ok(None);
        }
        // Cycle rank can only drop under contraction.
        let qedges: usize = qadj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        let pattern_rank = self.pattern.edges().len() + 1 - p;
        if qedges + 1 < parts.len() + pattern_rank {
            return Ok(None);
        }
        for i in 0..parts.len() {
            let mut adj = qadj[i] & !((1u64 << (i + 1)) - 1);
            while adj != 0 {
                let j = adj.trailing_zeros() as usize;
                adj &= adj - 1;
                let mut next: Vec<u64> = parts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(k, &q)| if k == i { q | parts[j] } else { q })
                    .collect();
                next.sort_unstable_by_key(|q| q.trailing_zeros());
                if self.visited.insert(next.clone()) {
                    if self.visited.len() > MINOR_STATE_BUDGET {
                        bail!(SizeLimit, "minor search exceeded {MINOR_STATE_BUDGET} partitions");
                    }
                    if let Some(found) = self.dfs(next)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// A model of `pattern` as a minor of `g`, if there is one. Errors when the
/// host is larger than [`MAX_MINOR_VERTICES`] or the search budget runs out.
pub fn find_minor(g: &FiniteGraph, pattern: Pattern) -> Result<Option<MinorWitness>> {
    let n = g.vertex_count();
    if n > MAX_MINOR_VERTICES {
        bail!(SizeLimit, "minor search is limited to {MAX_MINOR_VERTICES} vertices, got {n}");
    }
    // Vertices of degree at most one never help: both patterns have minimum
    // degree two, and such a vertex can be dropped from any branch set.
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|i| g.adj(i).len()).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&i| deg[i] <= 1).collect();
    while let Some(x) = stack.pop() {
        if !alive[x] {
            continue;
        }
        alive[x] = false;
        for &y in g.adj(x) {
            if alive[y] {
                deg[y] -= 1;
                if deg[y] == 1 {
                    stack.push(y);
                }
            }
        }
    }
    let nbr: Vec<u64> = (0..n)
        .map(|i| g.adj(i).iter().filter(|&&j| alive[j]).fold(0, |m, &j| m | (1 << j)))
        .collect();
    let parts: Vec<u64> = (0..n).filter(|&i| alive[i]).map(|i| 1u64 << i).collect();
    let mut search = MinorSearch { g, pattern, nbr, visited: HashSet::new() };
    let Some(sets) = search.dfs(parts)? else { return Ok(None) };
    let names = pattern.vertex_names();
    let to_set = |mask: u64| -> BTreeSet<Vertex> {
        (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| search.g.name(i).clone()).collect()
    };
    let branch_sets: BTreeMap<String, BTreeSet<Vertex>> =
        names.iter().zip(&sets).map(|(name, &m)| (name.to_string(), to_set(m))).collect();
    let edges = pattern
        .edges()
        .iter()
        .map(|&(i, j)| {
            let host = g
                .index_edges()
                .into_iter()
                .find(|&(x, y)| {
                    let (bx, by) = (1u64 << x, 1u64 << y);
                    (sets[i] & bx != 0 && sets[j] & by != 0) || (sets[i] & by != 0 && sets[j] & bx != 0)
                })
                .map(|(x, y)| g.edge(x, y))
                .expect("adjacent branch sets share an edge");
            WitnessEdge { pattern: (names[i].to_string(), names[j].to_string()), host }
        })
        .collect();
    let witness = MinorWitness { pattern, branch_sets, edges };
    witness.validate(g)?;
    Ok(Some(witness))
}

/// Why a graph fails to be outerplanar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    K4Subgraph(BTreeSet<Vertex>),
    K23Minor(MinorWitness),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::K4Subgraph(_) => f.write_str("K4 subgraph"),
            Obstruction::K23Minor(_) => f.write_str("K23 minor"),
        }
    }
}

/// The first obstruction to outerplanarity: a K4 subgraph, else a K2,3
/// minor. Without a K2,3 minor, a K4 minor forces a K4 subgraph, so this is
/// a complete test.
pub fn outerplanarity_obstruction(g: &FiniteGraph) -> Result<Option<Obstruction>> {
    if let Some(k4) = find_k4_subgraph(g) {
        return Ok(Some(Obstruction::K4Subgraph(k4)));
    }
    Ok(find_minor(g, Pattern::K23)?.map(Obstruction::K23Minor))
}

pub fn is_outerplanar(g: &FiniteGraph) -> Result<bool> {
    Ok(outerplanarity_obstruction(g)?.is_none())
}

/// For a graph without a K2,3 minor: whether having K4 as a minor agrees
/// with having it as a subgraph.
pub fn k4_minor_equals_subgraph(g: &FiniteGraph) -> Result<bool> {
    if find_minor(g, Pattern::K23)?.is_some() {
        bail!(Precondition, "graph has a K23 minor");
    }
    Ok(find_minor(g, Pattern::K4)?.is_some() == find_k4_subgraph(g).is_some())
}

/// A cyclic order of the vertices in which no two edges cross as chords of
/// a circle, found by exhaustive search with the smallest vertex first.
pub fn circular_ordering_oracle(g: &FiniteGraph) -> Result<Option<Vec<Vertex>>> {
    let n = g.vertex_count();
    if n > MAX_ORACLE_VERTICES {
        bail!(SizeLimit, "circular-order oracle is limited to {MAX_ORACLE_VERTICES} vertices, got {n}");
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
        let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
        if b.0 == a0 || b.0 == a1 || b.1 == a0 || b.1 == a1 {
            return false;
        }
        let inside = |x: usize| a0 < x && x < a1;
        inside(b.0) != inside(b.1)
    }
    fn place(
        g: &FiniteGraph,
        pos: &mut Vec<usize>,
        order: &mut Vec<usize>,
        chords: &mut Vec<(usize, usize)>,
    ) -> bool {
        let n = g.vertex_count();
        if order.len() == n {
            return true;
        }
        let k = order.len();
        for x in 0..n {
            if pos[x] != usize::MAX {
                continue;
            }
            let new: Vec<(usize, usize)> =
                g.adj(x).iter().filter(|&&y| pos[y] != usize::MAX).map(|&y| (pos[y], k)).collect();
            let ok = new.iter().all(|&c| chords.iter().all(|&d| !crosses(c, d)));
            if !ok {
                continue;
            }
            pos[x] = k;
            order.push(x);
            let before = chords.len();
            chords.extend(new);
            if place(g, pos, order, chords) {
                return true;
            }
            chords.truncate(before);
            order.pop();
            pos[x] = usize::MAX;
        }
        false
    }
    let mut pos = vec![usize::MAX; n];
    pos[0] = 0;
    let mut order = vec![0];
    let mut chords = Vec::new();
    if place(g, &mut pos, &mut order, &mut chords) {
        Ok(Some(order.into_iter().map(|i| g.name(i).clone()).collect()))
    } else {
        Ok(None)
    }
}
