use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::caterpillar::is_caterpillar;
use crate::error::{bail, Result};
use crate::graph::{FiniteGraph, Vertex};

/// One class of the ordered partition. `jumping` is the member that is not
/// a leaf of the tree; the last class consists of leaves only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionClass {
    pub members: BTreeSet<Vertex>,
    pub jumping: Option<Vertex>,
}

impl PartitionClass {
    /// Members other than the jumping vertex, sorted.
    pub fn leaves(&self) -> Vec<Vertex> {
        self.members.iter().filter(|x| Some(*x) != self.jumping.as_ref()).cloned().collect()
    }
}

/// Ordered partition of a caterpillar's vertices.
///
/// With spine `s0 s1 ... s(k-1)` the classes are `{s0}`, then
/// `{s(i)} ∪ leaves(s(i-1))` for `1 <= i < k`, then `leaves(s(k-1))`.
/// The class index of a vertex equals its distance from `s0`, so two
/// vertices are at even distance exactly when their class indices have the
/// same parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaterpillarPartition {
    #[serde(skip)]
    tree: FiniteGraph,
    spine: Vec<Vertex>,
    classes: Vec<PartitionClass>,
    #[serde(skip)]
    class_of: BTreeMap<Vertex, usize>,
}

impl CaterpillarPartition {
    pub fn tree(&self) -> &FiniteGraph {
        &self.tree
    }

    /// The spine used for the classes. For a single edge this is its smaller
    /// endpoint.
    pub fn spine(&self) -> &[Vertex] {
        &self.spine
    }

    pub fn classes(&self) -> &[PartitionClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The first class, `{s0}`.
    pub fn head(&self) -> &PartitionClass {
        &self.classes[0]
    }

    /// The last class, the leaves at the far end of the spine.
    pub fn tail(&self) -> &PartitionClass {
        self.classes.last().unwrap()
    }

    pub fn class_index(&self, x: &Vertex) -> Result<usize> {
        match self.class_of.get(x) {
            Some(&i) => Ok(i),
            None => bail!(Precondition, "vertex {x} is not in the caterpillar"),
        }
    }

    pub fn jumping(&self, i: usize) -> Option<&Vertex> {
        self.classes.get(i).and_then(|c| c.jumping.as_ref())
    }

    pub fn leaves(&self, i: usize) -> Vec<Vertex> {
        self.classes.get(i).map(PartitionClass::leaves).unwrap_or_default()
    }

    pub fn is_jumping(&self, x: &Vertex) -> bool {
        self.class_of.get(x).and_then(|&i| self.jumping(i)) == Some(x)
    }

    /// Checks the two structural properties: members of one class are at
    /// distance 2, and the jumping vertex of a class is adjacent to every
    /// member of the next class.
    pub fn validate(&self) -> Result<()> {
        let union: usize = self.classes.iter().map(|c| c.members.len()).sum();
        if union != self.tree.vertex_count() || self.class_of.len() != union {
            bail!(Consistency, "classes do not partition the vertex set");
        }
        for (i, class) in self.classes.iter().enumerate() {
            let members: Vec<&Vertex> = class.members.iter().collect();
            for (p, a) in members.iter().enumerate() {
                for b in &members[p + 1..] {
                    if self.tree.distance(a, b) != Some(2) {
                        bail!(Consistency, "{a} and {b} share class {i} but are not at distance 2");
                    }
                }
            }
            if let Some(next) = self.classes.get(i + 1) {
                let Some(j) = &class.jumping else {
                    bail!(Consistency, "class {i} has a successor but no jumping vertex");
                };
                if !next.members.iter().all(|x| self.tree.has_edge(j, x)) {
                    bail!(Consistency, "jumping vertex {j} misses part of class {}", i + 1);
                }
            }
        }
        Ok(())
    }
}

/// Builds and validates the ordered partition of a caterpillar with at
/// least two vertices.
pub fn caterpillar_partition(t: &FiniteGraph) -> Result<CaterpillarPartition> {
    if t.vertex_count() < 2 {
        bail!(Precondition, "caterpillar needs at least two vertices");
    }
    let Some(mut spine) = is_caterpillar(t)? else {
        bail!(Precondition, "tree is not a caterpillar");
    };
    if spine.is_empty() {
        // A single edge: treat its smaller endpoint as the spine.
        spine.push(t.vertices()[0].clone());
    }
    let leaves_of = |x: &Vertex| -> BTreeSet<Vertex> {
        t.neighbors(x).into_iter().filter(|y| !spine.contains(y)).collect()
    };
    let k = spine.len();
    let mut classes = vec![PartitionClass {
        members: BTreeSet::from([spine[0].clone()]),
        jumping: Some(spine[0].clone()),
    }];
    for i in 1..k {
        let mut members = leaves_of(&spine[i - 1]);
        members.insert(spine[i].clone());
        classes.push(PartitionClass { members, jumping: Some(spine[i].clone()) });
    }
    classes.push(PartitionClass { members: leaves_of(&spine[k - 1]), jumping: None });
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.members.iter().map(move |x| (x.clone(), i)))
        .collect();
    let part = CaterpillarPartition { tree: t.clone(), spine, classes, class_of };
    part.validate()?;
    Ok(part)
}
