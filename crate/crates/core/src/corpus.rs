//! Graph corpora: exhaustive small-graph enumeration up to isomorphism and
//! seeded random generators for the property suites.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use serde::Serialize;
use rand::Rng;

use crate::graph::families::numbered;
use crate::graph::iso::{canonical_form_adj, CanonicalForm};
use crate::graph::{Edge, FiniteGraph, MultiGraph, Vertex};

fn to_graph(adj: &[Vec<usize>]) -> FiniteGraph {
    let names = numbered(adj.len());
    let mut edges = Vec::new();
    for (i, list) in adj.iter().enumerate() {
        for &j in list {
            if i < j {
                edges.push(Edge::new(names[i].clone(), names[j].clone()));
            }
        }
    }
    FiniteGraph::new(names, edges).expect("generated graphs are simple")
}

/// Grows every class on `n - 1` vertices by one vertex joined to each
/// allowed neighbour set, keeping one representative per isomorphism class.
fn extend(prev: &[Vec<Vec<usize>>], allow: impl Fn(usize) -> bool) -> Vec<Vec<Vec<usize>>> {
    let mut seen: BTreeMap<CanonicalForm, Vec<Vec<usize>>> = BTreeMap::new();
    for adj in prev {
        let n = adj.len();
        for mask in 1u32..(1 << n) {
            if !allow(mask.count_ones() as usize) {
                continue;
            }
            let mut next = adj.clone();
            next.push(Vec::new());
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    next[i].push(n);
                    next[n].push(i);
                }
            }
            let form = canonical_form_adj(&next);
            seen.entry(form).or_insert(next);
        }
    }
    seen.into_values().collect()
}

/// All connected graphs on `n` vertices up to isomorphism, named `0..n`.
///
/// Every connected graph has a vertex whose removal keeps it connected, so
/// extending connected graphs by one vertex with a nonempty neighbourhood
/// reaches every class.
pub fn connected_graphs(n: usize) -> Vec<FiniteGraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![vec![Vec::new()]];
    for _ in 1..n {
        level = extend(&level, |_| true);
    }
    level.iter().map(|a| to_graph(a)).collect()
}

/// All trees on `n` vertices up to isomorphism.
pub fn trees(n: usize) -> Vec<FiniteGraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![vec![Vec::new()]];
    for _ in 1..n {
        level = extend(&level, |k| k == 1);
    }
    level.iter().map(|a| to_graph(a)).collect()
}

fn diagonals_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize| a.0 < x && x < a.1;
    let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    !shared && inside(b.0) != inside(b.1)
}

/// All 2-connected outerplanar graphs on `n >= 3` vertices up to
/// isomorphism: an `n`-gon plus every non-crossing set of diagonals.
pub fn two_connected_outerplanar(n: usize) -> Vec<FiniteGraph> {
    if n < 3 {
        return Vec::new();
    }
    let diagonals: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();
    let mut seen: BTreeMap<CanonicalForm, Vec<Vec<usize>>> = BTreeMap::new();
    let mut chosen = Vec::new();
    fn rec(
        n: usize,
        diagonals: &[(usize, usize)],
        from: usize,
        chosen: &mut Vec<(usize, usize)>,
        seen: &mut BTreeMap<CanonicalForm, Vec<Vec<usize>>>,
    ) {
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i].push(j);
            adj[j].push(i);
        }
        for &(a, b) in chosen.iter() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        seen.entry(canonical_form_adj(&adj)).or_insert(adj);
        for k in from..diagonals.len() {
            let d = diagonals[k];
            if chosen.iter().all(|&c| !diagonals_cross(c, d)) {
                chosen.push(d);
                rec(n, diagonals, k + 1, chosen, seen);
                chosen.pop();
            }
        }
    }
    rec(n, &diagonals, 0, &mut chosen, &mut seen);
    seen.into_values().map(|a| to_graph(&a)).collect()
}

/// One 2-connected outerplanar graph: an `n`-gon with a random maximal or
/// partial set of non-crossing diagonals.
pub fn random_outerplanar<R: Rng>(rng: &mut R, n: usize) -> FiniteGraph {
    let names = numbered(n);
    let mut edges: BTreeSet<Edge> =
        (0..n).map(|i| Edge::new(names[i].clone(), names[(i + 1) % n].clone())).collect();
    let mut diagonals: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();
    diagonals.shuffle(rng);
    let keep = rng.gen_range(0.0..=1.0);
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for d in diagonals {
        if rng.gen_bool(keep) && chosen.iter().all(|&c| !diagonals_cross(c, d)) {
            chosen.push(d);
            edges.insert(Edge::new(names[d.0].clone(), names[d.1].clone()));
        }
    }
    FiniteGraph::new(names, edges).expect("polygon with diagonals is simple")
}

/// A random 2-connected simple graph on `n >= 3` vertices built from a cycle
/// by adding ears, then sprinkling extra edges.
pub fn random_two_connected<R: Rng>(rng: &mut R, n: usize) -> FiniteGraph {
    assert!(n >= 3, "2-connected graphs need at least three vertices");
    let names = numbered(n);
    let start = rng.gen_range(3..=n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add = |edges: &mut BTreeSet<(usize, usize)>, a: usize, b: usize| {
        edges.insert((a.min(b), a.max(b)));
    };
    for i in 0..start {
        add(&mut edges, order[i], order[(i + 1) % start]);
    }
    let mut placed = start;
    while placed < n {
        let len = rng.gen_range(1..=(n - placed));
        let a = order[rng.gen_range(0..placed)];
        let mut b = order[rng.gen_range(0..placed)];
        while b == a {
            b = order[rng.gen_range(0..placed)];
        }
        let mut prev = a;
        for k in 0..len {
            let x = order[placed + k];
            add(&mut edges, prev, x);
            prev = x;
        }
        add(&mut edges, prev, b);
        placed += len;
    }
    let extra = rng.gen_range(0..=n / 2);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            add(&mut edges, a, b);
        }
    }
    let edges = edges.into_iter().map(|(a, b)| Edge::new(names[a].clone(), names[b].clone()));
    FiniteGraph::new(names.clone(), edges).expect("ear construction is simple")
}

/// A random connected vertex set of `g` with at least `min` vertices (grown
/// from a random seed vertex). `g` must be connected with `min` vertices.
pub fn random_connected_subset<R: Rng>(rng: &mut R, g: &FiniteGraph, min: usize) -> BTreeSet<Vertex> {
    let n = g.vertex_count();
    let target = rng.gen_range(min.max(1)..=n);
    let mut inside = vec![false; n];
    let s = rng.gen_range(0..n);
    inside[s] = true;
    let mut size = 1;
    while size < target {
        let frontier: Vec<usize> = (0..n)
            .filter(|&x| !inside[x] && g.adj(x).iter().any(|&y| inside[y]))
            .collect();
        let Some(&x) = frontier.choose(rng) else { break };
        inside[x] = true;
        size += 1;
    }
    (0..n).filter(|&x| inside[x]).map(|x| g.name(x).clone()).collect()
}

fn walk_multigraph(walk: &[usize]) -> MultiGraph {
    let names = numbered(walk.iter().max().map_or(0, |m| m + 1));
    let len = walk.len();
    let edges = (0..len).map(|i| {
        (i as u64, names[walk[i]].clone(), names[walk[(i + 1) % len]].clone())
    });
    let used: BTreeSet<usize> = walk.iter().copied().collect();
    MultiGraph::new(used.into_iter().map(|i| names[i].clone()), edges)
        .expect("closed walk without repeated consecutive vertices has no loops")
}

/// A random connected Eulerian multigraph on at most `max_vertices` vertices
/// that has at least one vertex of degree 4: the edge set of a random
/// closed walk.
pub fn random_eulerian_with_degree4<R: Rng>(rng: &mut R, max_vertices: usize) -> MultiGraph {
    loop {
        let n = rng.gen_range(3..=max_vertices.max(3));
        let len = rng.gen_range(n..=3 * n);
        let mut walk = vec![0usize];
        while walk.len() < len {
            let last = *walk.last().unwrap();
            let mut x = rng.gen_range(0..n);
            while x == last {
                x = rng.gen_range(0..n);
            }
            walk.push(x);
        }
        if walk.last() == walk.first() {
            walk.pop();
        }
        if walk.len() < 3 {
            continue;
        }
        let m = walk_multigraph(&compact(&walk));
        if m.degrees().values().any(|&d| d == 4) {
            return m;
        }
    }
}

/// Renumbers walk vertices to `0..k` in order of first appearance.
fn compact(walk: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    walk.iter()
        .map(|&x| {
            let next = map.len();
            *map.entry(x).or_insert(next)
        })
        .collect()
}

/// A random connected Eulerian multigraph with all degrees in {2, 4}: a
/// closed walk visiting each vertex once or twice.
pub fn random_eulerian_degree_2_4<R: Rng>(rng: &mut R, max_vertices: usize) -> MultiGraph {
    loop {
        let n = rng.gen_range(2..=max_vertices.max(3));
        let mut walk: Vec<usize> = Vec::new();
        for x in 0..n {
            walk.push(x);
            if rng.gen_bool(0.5) {
                walk.push(x);
            }
        }
        if walk.len() < 3 {
            continue;
        }
        for _ in 0..20 {
            walk.shuffle(rng);
            let len = walk.len();
            if (0..len).all(|i| walk[i] != walk[(i + 1) % len]) {
                return walk_multigraph(&walk);
            }
        }
    }
}

/// Largest sizes swept by [`property_suites`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteLimits {
    pub trees: usize,
    pub connected: usize,
    pub outerplanar: usize,
    pub k23_free: usize,
}

impl Default for SuiteLimits {
    fn default() -> Self {
        SuiteLimits { trees: 10, connected: 8, outerplanar: 9, k23_free: 7 }
    }
}

impl SuiteLimits {
    /// Every limit capped at `n`.
    pub fn capped(self, n: usize) -> Self {
        SuiteLimits {
            trees: self.trees.min(n),
            connected: self.connected.min(n),
            outerplanar: self.outerplanar.min(n),
            k23_free: self.k23_free.min(n),
        }
    }
}

/// Result of one exhaustive sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub graphs: usize,
    pub failures: usize,
}

/// Exhaustive small-graph sweeps: caterpillar recognition against the claw
/// test and Hamiltonicity of the square, outerplanarity against the
/// circular-order oracle, unique Hamilton cycles and disk layouts of
/// 2-connected outerplanar graphs, and K4 minors against K4 subgraphs in
/// K2,3-minor-free graphs.
pub fn property_suites(limits: SuiteLimits) -> crate::Result<Vec<SuiteOutcome>> {
    use crate::caterpillar::{find_s_k13, hamilton_cycle_of_square, is_caterpillar};
    use crate::graph::{enumerate_hamilton_cycles, has_hamilton_cycle, kth_power};
    use crate::minor::{circular_ordering_oracle, find_k4_subgraph, find_minor, is_outerplanar, Pattern};
    use crate::outerplanar::{disk_layout, is_spanning_cycle, two_contractible_edges};

    let mut out = Vec::new();
    let mut run = |name: &str, graphs: Vec<FiniteGraph>, check: &dyn Fn(&FiniteGraph) -> crate::Result<bool>| {
        let mut failures = 0;
        for g in &graphs {
            if !check(g)? {
                failures += 1;
            }
        }
        out.push(SuiteOutcome { name: name.to_string(), graphs: graphs.len(), failures });
        Ok::<_, crate::Error>(())
    };
    run("caterpillar", (3..=limits.trees).flat_map(trees).collect(), &|t| {
        let cat = is_caterpillar(t)?.is_some();
        let square = kth_power(t, 2)?;
        let agree = cat == find_s_k13(t).is_none() && cat == has_hamilton_cycle(&square);
        Ok(agree && (!cat || is_spanning_cycle(&square, &hamilton_cycle_of_square(t)?)))
    })?;
    run("outerplanar", (1..=limits.connected).flat_map(connected_graphs).collect(), &|g| {
        Ok(is_outerplanar(g)? == circular_ordering_oracle(g)?.is_some())
    })?;
    run("unique-cycle", (4..=limits.outerplanar).flat_map(two_connected_outerplanar).collect(), &|g| {
        let cycles = enumerate_hamilton_cycles(g);
        Ok(cycles.len() == 1 && cycles[0] == two_contractible_edges(g)?)
    })?;
    run("layout", (3..=limits.outerplanar).flat_map(two_connected_outerplanar).collect(), &|g| {
        Ok(disk_layout(g)?.crossing_free())
    })?;
    let k23_free: Vec<FiniteGraph> = (1..=limits.k23_free)
        .flat_map(connected_graphs)
        .filter(|g| matches!(find_minor(g, Pattern::K23), Ok(None)))
        .collect();
    run("k4-minor", k23_free, &|g| Ok(find_minor(g, Pattern::K4)?.is_some() == find_k4_subgraph(g).is_some()))?;
    Ok(out)
}
