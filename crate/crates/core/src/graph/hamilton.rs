//! Backtracking search for Hamilton cycles and paths.
//!
//! The kernel works on an indexed multigraph and decides edges one at a
//! time. Each vertex tracks how many of its edges are taken and how many are
//! still available; a vertex with two taken edges drops the rest, a vertex
//! with only two available edges takes both. Taken edges form vertex-disjoint
//! paths and an edge closing one of them early is dropped as soon as it would
//! do so.

use std::collections::BTreeSet;

use crate::graph::{EdgeSet, FiniteGraph, MultiGraph, Vertex};

const UNDECIDED: u8 = 0;
const TAKEN: u8 = 1;
const DROPPED: u8 = 2;

#[derive(Clone)]
struct State {
    status: Vec<u8>,
    taken_deg: Vec<u8>,
    avail: Vec<u32>,
    /// For an endpoint of a taken path, the other endpoint; `other[v] == v`
    /// for a vertex with no taken edge.
    other: Vec<usize>,
    taken: usize,
}

/// Hamilton cycle search over `n` vertices and the given edge list.
pub(crate) struct CycleSearch<'a> {
    n: usize,
    ends: &'a [(usize, usize)],
    inc: Vec<Vec<usize>>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl<'a> CycleSearch<'a> {
    pub(crate) fn new(n: usize, ends: &'a [(usize, usize)]) -> Self {
        let mut inc = vec![Vec::new(); n];
        for (e, &(a, b)) in ends.iter().enumerate() {
            inc[a].push(e);
            inc[b].push(e);
        }
        CycleSearch { n, ends, inc, limit: usize::MAX, found: Vec::new() }
    }

    /// Stop after this many cycles.
    pub(crate) fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    /// Runs with some edges decided up front; contradictory choices simply
    /// yield no cycles.
    pub(crate) fn run_with(mut self, forced_in: &[usize], forced_out: &[usize]) -> Vec<Vec<usize>> {
        if self.n < 3 {
            return Vec::new();
        }
        let mut st = State {
            status: vec![UNDECIDED; self.ends.len()],
            taken_deg: vec![0; self.n],
            avail: self.inc.iter().map(|l| l.len() as u32).collect(),
            other: (0..self.n).collect(),
            taken: 0,
        };
        let mut queue: Vec<usize> = (0..self.n).collect();
        for &e in forced_out {
            if !self.drop_edge(&mut st, e, &mut queue) {
                return Vec::new();
            }
        }
        for &e in forced_in {
            if !self.take(&mut st, e, &mut queue) {
                return Vec::new();
            }
        }
        if self.propagate(&mut st, &mut queue) {
            self.search(st);
        }
        let mut found = self.found;
        for c in &mut found {
            c.sort_unstable();
        }
        found.sort();
        found
    }

    pub(crate) fn run(self) -> Vec<Vec<usize>> {
        self.run_with(&[], &[])
    }

    fn take(&self, st: &mut State, e: usize, queue: &mut Vec<usize>) -> bool {
        match st.status[e] {
            TAKEN => return true,
            DROPPED => return false,
            _ => {}
        }
        let (a, b) = self.ends[e];
        if st.taken_deg[a] >= 2 || st.taken_deg[b] >= 2 {
            return false;
        }
        let closing = st.taken_deg[a] > 0 && st.other[a] == b;
        if closing && st.taken + 1 != self.n {
            return false;
        }
        st.status[e] = TAKEN;
        st.taken_deg[a] += 1;
        st.taken_deg[b] += 1;
        st.taken += 1;
        queue.push(a);
        queue.push(b);
        if !closing {
            let (ea, eb) = (st.other[a], st.other[b]);
            st.other[ea] = eb;
            st.other[eb] = ea;
            if st.taken + 1 != self.n {
                for &f in &self.inc[ea] {
                    if st.status[f] == UNDECIDED {
                        let (x, y) = self.ends[f];
                        if (x == ea && y == eb) || (x == eb && y == ea) {
                            if !self.drop_edge(st, f, queue) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn drop_edge(&self, st: &mut State, e: usize, queue: &mut Vec<usize>) -> bool {
        match st.status[e] {
            DROPPED => return true,
            TAKEN => return false,
            _ => {}
        }
        let (a, b) = self.ends[e];
        st.status[e] = DROPPED;
        st.avail[a] -= 1;
        st.avail[b] -= 1;
        queue.push(a);
        queue.push(b);
        true
    }

    fn propagate(&self, st: &mut State, queue: &mut Vec<usize>) -> bool {
        while let Some(x) = queue.pop() {
            if st.taken_deg[x] == 2 {
                if st.avail[x] > 2 {
                    for &f in &self.inc[x] {
                        if st.status[f] == UNDECIDED && !self.drop_edge(st, f, queue) {
                            return false;
                        }
                    }
                }
            } else if st.avail[x] < 2 {
                return false;
            } else if st.avail[x] == 2 {
                for &f in &self.inc[x] {
                    if st.status[f] == UNDECIDED && !self.take(st, f, queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The graph of non-dropped edges must be connected.
    fn connected(&self, st: &State) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &f in &self.inc[x] {
                if st.status[f] != DROPPED {
                    let (a, b) = self.ends[f];
                    let y = if a == x { b } else { a };
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == self.n
    }

    fn search(&mut self, st: State) {
        if self.found.len() >= self.limit {
            return;
        }
        if st.taken == self.n {
            let cycle = (0..self.ends.len()).filter(|&e| st.status[e] == TAKEN).collect();
            self.found.push(cycle);
            return;
        }
        if !self.connected(&st) {
            return;
        }
        // Branch at the vertex with the fewest open choices.
        let mut best: Option<(u32, usize)> = None;
        for x in 0..self.n {
            if st.taken_deg[x] < 2 {
                let slack = st.avail[x] - st.taken_deg[x] as u32;
                if best.map_or(true, |(s, _)| slack < s) {
                    best = Some((slack, x));
                }
            }
        }
        let Some((_, x)) = best else { return };
        let Some(&f) = self.inc[x].iter().find(|&&f| st.status[f] == UNDECIDED) else {
            return;
        };
        let mut with = st.clone();
        let mut queue = Vec::new();
        if self.take(&mut with, f, &mut queue) && self.propagate(&mut with, &mut queue) {
            self.search(with);
        }
        let mut without = st;
        let mut queue = Vec::new();
        if self.drop_edge(&mut without, f, &mut queue) && self.propagate(&mut without, &mut queue) {
            self.search(without);
        }
    }
}

/// All Hamilton cycles of a simple graph, each as its edge set, sorted.
/// Graphs with fewer than three vertices have none.
pub fn enumerate_hamilton_cycles(g: &FiniteGraph) -> Vec<EdgeSet> {
    let pairs = g.index_edges();
    let mut out: Vec<EdgeSet> = CycleSearch::new(g.vertex_count(), &pairs)
        .run()
        .into_iter()
        .map(|c| c.into_iter().map(|e| g.edge(pairs[e].0, pairs[e].1)).collect())
        .collect();
    out.sort();
    out
}

/// Whether the graph has a Hamilton cycle (stops at the first one found).
pub fn has_hamilton_cycle(g: &FiniteGraph) -> bool {
    let pairs = g.index_edges();
    !CycleSearch::new(g.vertex_count(), &pairs).limit(1).run().is_empty()
}

/// All Hamilton cycles of a multigraph as sets of edge ids, sorted. Parallel
/// edges yield distinct cycles.
pub fn enumerate_multi_hamilton_cycles(m: &MultiGraph) -> Vec<BTreeSet<u64>> {
    let (names, pairs, ids) = m.indexed();
    let mut out: Vec<BTreeSet<u64>> = CycleSearch::new(names.len(), &pairs)
        .run()
        .into_iter()
        .map(|c| c.into_iter().map(|e| ids[e]).collect())
        .collect();
    out.sort();
    out
}

/// All Hamilton paths, each reported once and oriented to start at its
/// smaller endpoint; sorted by vertex sequence.
///
/// Implemented as Hamilton cycles through an added universal vertex, so a
/// degree-1 vertex gets its one real edge forced immediately.
pub fn enumerate_hamilton_paths(g: &FiniteGraph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![g.name(0).clone()]];
    }
    let mut pairs = g.index_edges();
    let real = pairs.len();
    pairs.extend((0..n).map(|i| (i, n)));
    let cycles = CycleSearch::new(n + 1, &pairs).run();
    let mut paths: Vec<Vec<usize>> = cycles
        .into_iter()
        .map(|c| {
            let mut adj = vec![Vec::new(); n];
            let mut ends = Vec::new();
            for e in c {
                if e < real {
                    let (a, b) = pairs[e];
                    adj[a].push(b);
                    adj[b].push(a);
                } else {
                    ends.push(pairs[e].0);
                }
            }
            let start = *ends.iter().min().unwrap();
            let mut path = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            while let Some(&next) = adj[cur].iter().find(|&&y| y != prev) {
                path.push(next);
                prev = cur;
                cur = next;
            }
            path
        })
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| p.into_iter().map(|i| g.name(i).clone()).collect())
        .collect()
}
