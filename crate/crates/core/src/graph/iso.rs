//! Isomorphism testing and canonical forms by colour refinement plus
//! individualisation.

use std::collections::BTreeMap;

use crate::graph::{FiniteGraph, Vertex};

/// Refines `colors` until stable. New colours are ranks of
/// (old colour, sorted neighbour colours), so the result does not depend on
/// vertex numbering.
fn refine(adj: &[Vec<usize>], colors: &mut [usize]) {
    let mut count = distinct(colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        for (v, sig) in sigs.iter().enumerate() {
            colors[v] = sorted.binary_search(&sig).unwrap();
        }
        let next = sorted.len();
        if next == count {
            return;
        }
        count = next;
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Gives `v` its own colour, placed just before the rest of its cell.
fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let target = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(x, &c)| 2 * c + usize::from(c == target && x != v))
        .collect()
}

fn twins(adj: &[Vec<usize>], u: usize, v: usize) -> bool {
    let a = adj[u].iter().filter(|&&x| x != v);
    let b = adj[v].iter().filter(|&&x| x != u);
    a.eq(b)
}

/// Canonical adjacency code of a graph: equal codes iff isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

fn code_for(adj: &[Vec<usize>], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut bits = vec![0u64; (n * n).div_ceil(64).max(1)];
    for (v, list) in adj.iter().enumerate() {
        for &u in list {
            let k = pos[v] * n + pos[u];
            bits[k / 64] |= 1 << (k % 64);
        }
    }
    bits
}

fn canon_search(adj: &[Vec<usize>], mut colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(adj, &mut colors);
    let n = adj.len();
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    if cells.len() == n {
        let order: Vec<usize> = cells.values().map(|c| c[0]).collect();
        let code = code_for(adj, &order);
        if best.as_ref().map_or(true, |(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    }
    let cell = cells.values().filter(|c| c.len() > 1).min_by_key(|c| c.len()).unwrap();
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // Swapping two twins is an automorphism fixing everything else, so
        // their branches produce the same leaves.
        if tried.iter().any(|&u| twins(adj, u, v)) {
            continue;
        }
        tried.push(v);
        canon_search(adj, individualize(&colors, v), best);
    }
}

fn adjacency(g: &FiniteGraph) -> Vec<Vec<usize>> {
    (0..g.vertex_count()).map(|i| g.adj(i).to_vec()).collect()
}

/// Canonical form and the canonical vertex order that realises it.
pub fn canonical_labeling(g: &FiniteGraph) -> (CanonicalForm, Vec<Vertex>) {
    let adj = adjacency(g);
    let n = adj.len();
    if n == 0 {
        return (CanonicalForm { n: 0, bits: vec![0] }, Vec::new());
    }
    let colors: Vec<usize> = adj.iter().map(|l| l.len()).collect();
    let mut best = None;
    canon_search(&adj, colors, &mut best);
    let (bits, order) = best.unwrap();
    (CanonicalForm { n, bits }, order.into_iter().map(|i| g.name(i).clone()).collect())
}

pub fn canonical_form(g: &FiniteGraph) -> CanonicalForm {
    canonical_labeling(g).0
}

fn iso_search(adj: &[Vec<usize>], n: usize, mut colors: Vec<usize>) -> Option<Vec<usize>> {
    refine(adj, &mut colors);
    let mut cells: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (x, &c) in colors.iter().enumerate() {
        let cell = cells.entry(c).or_default();
        if x < n {
            cell.0.push(x);
        } else {
            cell.1.push(x - n);
        }
    }
    if cells.values().any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    if cells.len() == n {
        let mut map = vec![0; n];
        for (a, b) in cells.values() {
            map[a[0]] = b[0];
        }
        let ok = (0..n).all(|x| {
            let mut img: Vec<usize> = adj[x].iter().map(|&y| map[y] + n).collect();
            img.sort_unstable();
            img == adj[map[x] + n]
        });
        return ok.then_some(map);
    }
    let (gs, hs) = cells.values().filter(|(a, _)| a.len() > 1).min_by_key(|(a, _)| a.len()).unwrap();
    let v = gs[0];
    let fresh = colors.iter().max().unwrap() + 1;
    for &w in hs {
        let mut next = colors.clone();
        next[v] = fresh;
        next[w + n] = fresh;
        if let Some(map) = iso_search(adj, n, next) {
            return Some(map);
        }
    }
    None
}

/// An isomorphism from `g` to `h`, if one exists.
pub fn find_isomorphism(g: &FiniteGraph, h: &FiniteGraph) -> Option<BTreeMap<Vertex, Vertex>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut adj = adjacency(g);
    adj.extend((0..n).map(|i| h.adj(i).iter().map(|&j| j + n).collect::<Vec<_>>()));
    let colors: Vec<usize> = adj.iter().map(|l| l.len()).collect();
    let map = iso_search(&adj, n, colors)?;
    Some((0..n).map(|i| (g.name(i).clone(), h.name(map[i]).clone())).collect())
}

pub fn are_isomorphic(g: &FiniteGraph, h: &FiniteGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Canonical form of a graph given as index adjacency lists.
pub(crate) fn canonical_form_adj(adj: &[Vec<usize>]) -> CanonicalForm {
    let n = adj.len();
    if n == 0 {
        return CanonicalForm { n: 0, bits: vec![0] };
    }
    let colors: Vec<usize> = adj.iter().map(|l| l.len()).collect();
    let mut best = None;
    canon_search(adj, colors, &mut best);
    CanonicalForm { n, bits: best.unwrap().0 }
}
