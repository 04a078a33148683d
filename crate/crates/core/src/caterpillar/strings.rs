use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::partition::{caterpillar_partition, CaterpillarPartition};
use crate::error::{bail, Result};
use crate::graph::{kth_power, EdgeSet, Edge, FiniteGraph, Vertex};

/// Endpoints and closure flags of a square string. A closed end contains
/// its whole class; an open end contains only the endpoint from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareStringSpec {
    pub v: Vertex,
    pub w: Vertex,
    pub left_closed: bool,
    pub right_closed: bool,
}

/// Two paths starting at `v` and `w` respectively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayPair {
    pub r_v: Vec<Vertex>,
    pub r_w: Vec<Vertex>,
}

/// Covers of a caterpillar's vertex set by paths of its square.
///
/// For `v`, `w` at even distance: a `v`-`w` path `p` with a disjoint path
/// `d` covering the rest, and optionally two disjoint paths from `v` and `w`
/// covering everything. For odd distance: two such pairs, where `rays`
/// keeps `r_v` left of `w`'s class and `primed` keeps `r_v` right of `v`'s.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "parity", rename_all = "snake_case")]
pub enum CoverReport {
    Even { p: Vec<Vertex>, d: Vec<Vertex>, rays: Option<RayPair> },
    Odd { rays: RayPair, primed: RayPair },
}

/// Leaves of class `i` followed by its jumping vertex.
fn leaves_then_jump(part: &CaterpillarPartition, i: usize) -> Vec<Vertex> {
    let mut s = part.leaves(i);
    s.extend(part.jumping(i).cloned());
    s
}

/// Jumping vertex of class `i` followed by its leaves.
fn jump_then_leaves(part: &CaterpillarPartition, i: usize) -> Vec<Vertex> {
    let mut s: Vec<Vertex> = part.jumping(i).cloned().into_iter().collect();
    s.extend(part.leaves(i));
    s
}

/// Every class from `from` on, each as leaves then jumping vertex.
fn natural_right(part: &CaterpillarPartition, from: usize) -> Vec<Vertex> {
    (from..part.len()).flat_map(|i| leaves_then_jump(part, i)).collect()
}

/// Descending sweep `J(a-1), top, J(a-2), Lf(a-1), ..., J(0), Lf(1)` that
/// covers every class below `a`, using `top` in place of the leaves of `a`.
fn left_tail(part: &CaterpillarPartition, a: usize, top: Vec<Vertex>) -> Vec<Vertex> {
    let mut s = Vec::new();
    let mut top = Some(top);
    for j in (0..a).rev() {
        s.extend(part.jumping(j).cloned());
        if j + 1 == a {
            s.extend(top.take().unwrap());
        } else {
            s.extend(part.leaves(j + 1));
        }
    }
    s
}

/// The part of a string inside `v`'s class that ends at the jumping vertex:
/// just `v` if it is jumping, otherwise `v`, the other leaves, the jumping
/// vertex.
fn start_segment(part: &CaterpillarPartition, a: usize, v: &Vertex) -> Vec<Vertex> {
    let mut s = vec![v.clone()];
    if !part.is_jumping(v) {
        s.extend(part.leaves(a).into_iter().filter(|x| x != v));
        s.extend(part.jumping(a).cloned());
    }
    s
}

/// Step-2 classes strictly between `from` and `to`, ascending.
fn between_ascending(part: &CaterpillarPartition, from: usize, to: usize) -> Vec<Vertex> {
    (from + 2..to).step_by(2).flat_map(|i| leaves_then_jump(part, i)).collect()
}

/// Step-2 classes from `from` down to `to` inclusive, as jumping vertex
/// then leaves.
fn return_sweep(part: &CaterpillarPartition, from: usize, to: usize) -> Vec<Vertex> {
    if from < to {
        return Vec::new();
    }
    (to..=from).rev().step_by(2).flat_map(|i| jump_then_leaves(part, i)).collect()
}

/// A square string from `spec.v` to `spec.w`. It uses only classes of the
/// same index parity as theirs, contains every such class strictly between
/// them, and contains the rest of an end class only when that end is closed.
///
/// If `v` and `w` share a class and either end is closed, the string runs
/// through the whole class; when also `v == w` it starts at `v` and is not
/// closed up.
pub fn square_string(part: &CaterpillarPartition, spec: &SquareStringSpec) -> Result<Vec<Vertex>> {
    let (v, w) = (&spec.v, &spec.w);
    let (a, b) = (part.class_index(v)?, part.class_index(w)?);
    if a > b {
        bail!(Precondition, "class of {v} comes after the class of {w}");
    }
    if (b - a) % 2 != 0 {
        bail!(Precondition, "{v} and {w} lie in classes of different parity");
    }
    if a == b {
        if !spec.left_closed && !spec.right_closed {
            return Ok(if v == w { vec![v.clone()] } else { vec![v.clone(), w.clone()] });
        }
        let mut s = vec![v.clone()];
        s.extend(part.classes()[a].members.iter().filter(|x| *x != v && *x != w).cloned());
        if w != v {
            s.push(w.clone());
        }
        return Ok(s);
    }
    let ja = part.jumping(a).expect("a class before another has a jumping vertex");
    let mut s = Vec::new();
    if spec.left_closed {
        if v == ja && part.classes()[a].members.len() > 1 {
            bail!(Precondition, "a left-closed string cannot start at the jumping vertex {v} of a class with leaves");
        }
        s.extend(start_segment(part, a, v));
    } else {
        if v != ja {
            bail!(Precondition, "a left-open string cannot leave the class of leaf {v}");
        }
        s.push(v.clone());
    }
    s.extend(between_ascending(part, a, b));
    if spec.right_closed {
        s.extend(leaves_then_jump(part, b).into_iter().filter(|x| x != w));
    }
    s.push(w.clone());
    Ok(s)
}

/// A Hamilton cycle of the square of a caterpillar with at least three
/// vertices: even classes ascending, then odd classes descending.
pub fn hamilton_cycle_of_square(t: &FiniteGraph) -> Result<EdgeSet> {
    if t.vertex_count() < 3 {
        bail!(Precondition, "need at least three vertices, got {}", t.vertex_count());
    }
    let part = caterpillar_partition(t)?;
    let n = part.len();
    let mut order: Vec<Vertex> = (0..n).step_by(2).flat_map(|i| leaves_then_jump(&part, i)).collect();
    order.extend((0..n).filter(|i| i % 2 == 1).rev().flat_map(|i| jump_then_leaves(&part, i)));
    let square = kth_power(t, 2)?;
    let mut cycle = EdgeSet::new();
    for (i, x) in order.iter().enumerate() {
        let y = &order[(i + 1) % order.len()];
        if !square.has_edge(x, y) {
            bail!(Consistency, "{x} and {y} are consecutive in the sweep but not adjacent in the square");
        }
        cycle.insert(Edge::new(x.clone(), y.clone()));
    }
    if order.len() != t.vertex_count() || cycle.len() != order.len() {
        bail!(Consistency, "sweep is not a spanning cycle");
    }
    Ok(cycle)
}

/// Path covers of a finite caterpillar relative to `v` and `w`, with
/// `v`'s class not after `w`'s. Every returned path is checked against the
/// square of `t`, for disjointness, coverage, start vertices and which
/// classes it may enter.
///
/// When `v` and `w` share a class, the pair of rays exists unless `v == w`
/// or `v` is the jumping vertex and `w` is not, since then the ray from
/// `w` would need `v` to reach later classes.
pub fn decomp_covers(
    t: &FiniteGraph,
    part: &CaterpillarPartition,
    v: &Vertex,
    w: &Vertex,
) -> Result<CoverReport> {
    if part.tree() != t {
        bail!(Precondition, "partition was built for a different tree");
    }
    let (a, b) = (part.class_index(v)?, part.class_index(w)?);
    if a > b {
        bail!(Precondition, "class of {v} comes after the class of {w}");
    }
    let report = if (b - a) % 2 == 0 {
        even_covers(part, a, b, v, w)?
    } else {
        odd_covers(part, a, b, v, w)
    };
    check_report(part, a, b, v, w, &report)?;
    Ok(report)
}

fn even_covers(
    part: &CaterpillarPartition,
    a: usize,
    b: usize,
    v: &Vertex,
    w: &Vertex,
) -> Result<CoverReport> {
    let (v_jump, w_jump) = (part.is_jumping(v), part.is_jumping(w));
    if a == b {
        let p = if v == w {
            vec![v.clone()]
        } else {
            square_string(part, &SquareStringSpec { v: v.clone(), w: w.clone(), left_closed: !v_jump, right_closed: w_jump })?
        };
        let in_p: BTreeSet<&Vertex> = p.iter().collect();
        let top = part.leaves(a).into_iter().filter(|x| !in_p.contains(x)).collect();
        let mut d = left_tail(part, a, top);
        d.reverse();
        d.extend(part.jumping(a).filter(|x| !in_p.contains(x)).cloned());
        d.extend(natural_right(part, a + 1));
        let rays = if v == w || v_jump {
            None
        } else {
            let mut r_w = vec![w.clone()];
            if !w_jump {
                r_w.extend(leaves_then_jump(part, a).into_iter().filter(|x| x != v && x != w));
            }
            r_w.extend(natural_right(part, a + 1));
            let top = if w_jump { part.leaves(a).into_iter().filter(|x| x != v).collect() } else { Vec::new() };
            let mut r_v = vec![v.clone()];
            r_v.extend(left_tail(part, a, top));
            Some(RayPair { r_v, r_w })
        };
        return Ok(CoverReport::Even { p, d, rays });
    }

    let p = square_string(part, &SquareStringSpec { v: v.clone(), w: w.clone(), left_closed: !v_jump, right_closed: w_jump })?;
    let in_p: BTreeSet<&Vertex> = p.iter().collect();
    let top_a: Vec<Vertex> = if v_jump { part.leaves(a) } else { Vec::new() };
    let mut d = left_tail(part, a, top_a.clone());
    d.reverse();
    d.extend((a + 1..b).step_by(2).flat_map(|i| leaves_then_jump(part, i)));
    d.extend(natural_right(part, b).into_iter().filter(|x| !in_p.contains(x)));

    let mut r_v = start_segment(part, a, v);
    r_v.extend(between_ascending(part, a, b));
    if w_jump {
        r_v.extend(part.leaves(b));
    }
    r_v.extend(return_sweep(part, b - 1, a + 1));
    r_v.extend(left_tail(part, a, top_a));
    let mut r_w = end_segment(part, b, w);
    r_w.extend(natural_right(part, b + 1));
    Ok(CoverReport::Even { p, d, rays: Some(RayPair { r_v, r_w }) })
}

/// `w` followed, when `w` is a leaf, by the rest of its class ending at the
/// jumping vertex.
fn end_segment(part: &CaterpillarPartition, b: usize, w: &Vertex) -> Vec<Vertex> {
    let mut s = vec![w.clone()];
    if !part.is_jumping(w) {
        s.extend(leaves_then_jump(part, b).into_iter().filter(|x| x != w));
    }
    s
}

fn odd_covers(part: &CaterpillarPartition, a: usize, b: usize, v: &Vertex, w: &Vertex) -> CoverReport {
    let (v_jump, w_jump) = (part.is_jumping(v), part.is_jumping(w));
    let top_a: Vec<Vertex> = if v_jump { part.leaves(a) } else { Vec::new() };

    let mut r_v = start_segment(part, a, v);
    r_v.extend(between_ascending(part, a, b));
    if w_jump {
        r_v.extend(part.leaves(b));
    }
    if b >= a + 3 {
        r_v.extend(return_sweep(part, b - 2, a + 1));
    }
    r_v.extend(left_tail(part, a, top_a.clone()));
    let mut r_w = end_segment(part, b, w);
    r_w.extend(natural_right(part, b + 1));

    let mut r2_v = start_segment(part, a, v);
    r2_v.extend(between_ascending(part, a, b));
    if !w_jump {
        r2_v.extend(leaves_then_jump(part, b).into_iter().filter(|x| x != w));
    }
    r2_v.extend(natural_right(part, b + 1));
    let mut r2_w = vec![w.clone()];
    if w_jump {
        r2_w.extend(part.leaves(b));
    }
    if b >= a + 3 {
        r2_w.extend(return_sweep(part, b - 2, a + 1));
    }
    r2_w.extend(left_tail(part, a, top_a));

    CoverReport::Odd { rays: RayPair { r_v, r_w }, primed: RayPair { r_v: r2_v, r_w: r2_w } }
}

fn check_report(
    part: &CaterpillarPartition,
    a: usize,
    b: usize,
    v: &Vertex,
    w: &Vertex,
    report: &CoverReport,
) -> Result<()> {
    let square = kth_power(part.tree(), 2)?;
    let check_path = |name: &str, path: &[Vertex]| -> Result<()> {
        if path.is_empty() {
            bail!(Consistency, "cover path {name} is empty");
        }
        let distinct: BTreeSet<&Vertex> = path.iter().collect();
        if distinct.len() != path.len() {
            bail!(Consistency, "cover path {name} repeats a vertex");
        }
        if let Some(pair) = path.windows(2).find(|p| !square.has_edge(&p[0], &p[1])) {
            bail!(Consistency, "cover path {name} uses {}{} outside the square", pair[0], pair[1]);
        }
        Ok(())
    };
    let check_pair = |n1: &str, p1: &[Vertex], n2: &str, p2: &[Vertex]| -> Result<()> {
        check_path(n1, p1)?;
        check_path(n2, p2)?;
        let s1: BTreeSet<&Vertex> = p1.iter().collect();
        if p2.iter().any(|x| s1.contains(x)) {
            bail!(Consistency, "cover paths {n1} and {n2} intersect");
        }
        if p1.len() + p2.len() != part.tree().vertex_count() {
            bail!(Consistency, "cover paths {n1} and {n2} miss vertices");
        }
        Ok(())
    };
    let check_rays = |pair: &RayPair, suffix: &str, v_max: usize, w_min: usize| -> Result<()> {
        let (nv, nw) = (format!("r_v{suffix}"), format!("r_w{suffix}"));
        check_pair(&nv, &pair.r_v, &nw, &pair.r_w)?;
        if pair.r_v[0] != *v || pair.r_w[0] != *w {
            bail!(Consistency, "cover paths {nv} and {nw} start at the wrong vertices");
        }
        if pair.r_v.iter().any(|x| part.class_index(x).unwrap() > v_max) {
            bail!(Consistency, "{nv} enters a class beyond its bound");
        }
        if pair.r_w.iter().any(|x| part.class_index(x).unwrap() < w_min) {
            bail!(Consistency, "{nw} enters a class before its bound");
        }
        Ok(())
    };
    match report {
        CoverReport::Even { p, d, rays } => {
            check_pair("p", p, "d", d)?;
            if p[0] != *v || p[p.len() - 1] != *w {
                bail!(Consistency, "p does not run from {v} to {w}");
            }
            if let Some(pair) = rays {
                check_rays(pair, "", b, a)?;
            }
        }
        CoverReport::Odd { rays, primed } => {
            check_rays(rays, "", b, a)?;
            // Primed pair: the ray from v stays right of v's class and the
            // ray from w stays left of w's class.
            check_pair("r_v'", &primed.r_v, "r_w'", &primed.r_w)?;
            if primed.r_v[0] != *v || primed.r_w[0] != *w {
                bail!(Consistency, "primed cover paths start at the wrong vertices");
            }
            if primed.r_v.iter().any(|x| part.class_index(x).unwrap() < a) {
                bail!(Consistency, "r_v' enters a class before {v}'s class");
            }
            if primed.r_w.iter().any(|x| part.class_index(x).unwrap() > b) {
                bail!(Consistency, "r_w' enters a class beyond {w}'s class");
            }
        }
    }
    Ok(())
}
