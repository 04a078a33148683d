//! Brute-force oracles shared by the integration tests. These deliberately
//! avoid the library's search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hcircle_core::graph::{Edge, EdgeSet, FiniteGraph, Vertex};

/// All permutations of `items` (Heap's algorithm).
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut a = items.to_vec();
    let n = a.len();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Hamilton cycles as edge sets, by trying every vertex order.
pub fn brute_hamilton_cycles(g: &FiniteGraph) -> BTreeSet<EdgeSet> {
    let vs = g.vertices().to_vec();
    let n = vs.len();
    let mut out = BTreeSet::new();
    if n < 3 {
        return out;
    }
    for perm in permutations(&vs[1..]) {
        let mut order = vec![vs[0].clone()];
        order.extend(perm);
        if (0..n).all(|i| g.has_edge(&order[i], &order[(i + 1) % n])) {
            out.insert((0..n).map(|i| Edge::new(order[i].clone(), order[(i + 1) % n].clone())).collect());
        }
    }
    out
}

/// Hamilton paths oriented from the smaller endpoint, by trying every order.
pub fn brute_hamilton_paths(g: &FiniteGraph) -> BTreeSet<Vec<Vertex>> {
    let vs = g.vertices().to_vec();
    let mut out = BTreeSet::new();
    for perm in permutations(&vs) {
        if perm.windows(2).all(|w| g.has_edge(&w[0], &w[1])) {
            let mut p = perm.clone();
            if p.first() > p.last() {
                p.reverse();
            }
            out.insert(p);
        }
    }
    out
}

/// All-pairs distances by repeated relaxation (Floyd-Warshall).
pub fn floyd(g: &FiniteGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for &j in g.adj(i) {
            d[i][j] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Connectivity by union-find over an explicit edge list.
pub fn connected_after_removing(g: &FiniteGraph, removed: &BTreeSet<Vertex>) -> bool {
    let keep: Vec<&Vertex> = g.vertices().iter().filter(|v| !removed.contains(*v)).collect();
    if keep.is_empty() {
        return true;
    }
    let mut reached: BTreeSet<&Vertex> = BTreeSet::from([keep[0]]);
    loop {
        let mut grew = false;
        for e in g.edges() {
            if removed.contains(e.a()) || removed.contains(e.b()) {
                continue;
            }
            let (ia, ib) = (reached.contains(e.a()), reached.contains(e.b()));
            if ia != ib {
                reached.insert(if ia { keep.iter().find(|v| **v == e.b()).unwrap() } else { keep.iter().find(|v| **v == e.a()).unwrap() });
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    reached.len() == keep.len()
}

/// Two-connectivity straight from the definition.
pub fn brute_two_connected(g: &FiniteGraph) -> bool {
    g.vertex_count() >= 3
        && connected_after_removing(g, &BTreeSet::new())
        && g.vertices().iter().all(|v| connected_after_removing(g, &BTreeSet::from([v.clone()])))
}

/// Whether two chords (given by cycle positions) interleave.
pub fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    if [b.0, b.1].iter().any(|&x| x == a0 || x == a1) {
        return false;
    }
    let inside = |x: usize| a0 < x && x < a1;
    inside(b.0) != inside(b.1)
}

/// Every simple path of `g` that starts at `start`, including `[start]`.
pub fn simple_paths_from(g: &FiniteGraph, start: &Vertex) -> Vec<Vec<Vertex>> {
    fn go(g: &FiniteGraph, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        out.push(path.clone());
        let last = path.last().unwrap().clone();
        for y in g.neighbors(&last) {
            if !path.contains(&y) {
                path.push(y);
                go(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut vec![start.clone()], &mut out);
    out
}

/// Checks `u ∈ N(v) ⇔ v ∈ N(u)` for `probes` vertices drawn from the ball of
/// the given radius, plus sortedness and absence of loops.
pub fn symmetry_audit(lg: &dyn hcircle_core::lazy::LazyGraph, radius: usize, probes: usize, seed: u64) {
    use hcircle_core::lazy::{ball, Budget};
    use rand::{seq::SliceRandom, SeedableRng};
    let pool = ball(lg, radius, Budget::default()).unwrap().order;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..probes {
        let v = pool.choose(&mut rng).unwrap();
        let nbrs = lg.neighbors(v);
        assert!(nbrs.windows(2).all(|w| w[0] < w[1]), "neighbours of {v} not sorted and distinct");
        assert!(!nbrs.contains(v), "loop at {v}");
        for u in &nbrs {
            assert!(lg.neighbors(u).contains(v), "{u} in N({v}) but not conversely");
        }
    }
}
