use crate::graph::Vertex;
use crate::lazy::{LazyGraph, LevelStructure};

/// The two-way infinite ladder: vertices `L:i:top` and `L:i:bottom` for
/// every integer `i`, rails between consecutive columns and a rung in each
/// column. Rooted at `L:0:top`.
///
/// Its level regions are the columns `-r..=r`, whose complement has the two
/// tails as components.
#[derive(Debug, Clone, Copy, Default)]
pub struct DoubleLadder;

pub fn double_ladder() -> DoubleLadder {
    DoubleLadder
}

fn name(i: i64, top: bool) -> Vertex {
    Vertex::new(format!("L:{i}:{}", if top { "top" } else { "bottom" }))
}

/// Column and side of a ladder vertex id.
fn parse(v: &Vertex) -> Option<(i64, bool)> {
    let mut parts = v.as_str().split(':');
    if parts.next()? != "L" {
        return None;
    }
    let i = parts.next()?.parse().ok()?;
    let top = match parts.next()? {
        "top" => true,
        "bottom" => false,
        _ => return None,
    };
    (parts.next().is_none() && name(i, top) == *v).then_some((i, top))
}

impl DoubleLadder {
    /// Whether `ab` is a rail edge, i.e. joins consecutive columns on the
    /// same side.
    pub fn is_rail(a: &Vertex, b: &Vertex) -> bool {
        match (parse(a), parse(b)) {
            (Some((i, s)), Some((j, t))) => s == t && i.abs_diff(j) == 1,
            _ => false,
        }
    }
}

impl LazyGraph for DoubleLadder {
    fn root(&self) -> Vertex {
        name(0, true)
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let Some((i, top)) = parse(v) else { return Vec::new() };
        let mut out = vec![name(i - 1, top), name(i + 1, top), name(i, !top)];
        out.sort();
        out
    }

    fn levels(&self) -> Option<&dyn LevelStructure> {
        Some(self)
    }
}

impl LevelStructure for DoubleLadder {
    fn region(&self, level: usize) -> Vec<Vertex> {
        let r = level as i64;
        let mut out: Vec<Vertex> = (-r..=r).flat_map(|i| [name(i, true), name(i, false)]).collect();
        out.sort();
        out
    }

    fn component_label(&self, level: usize, v: &Vertex) -> Option<String> {
        let (i, _) = parse(v)?;
        if i.unsigned_abs() <= level as u64 {
            return None;
        }
        Some(if i < 0 { "left".into() } else { "right".into() })
    }
}
