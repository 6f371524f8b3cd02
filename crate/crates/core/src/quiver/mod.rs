//! Quivers with frozen vertices and the three-step mutation rule.
//!
//! A [`Quiver`] is a finite directed multigraph with no loops, no oriented
//! 2-cycles and no arrows between two frozen vertices. Arrows are stored as a
//! multiplicity map keyed by ordered vertex pairs, so cancelling opposite
//! arrows in the last step of a mutation is a single subtraction per pair.
//!
//! Vertices are kept sorted by id. Two quivers compare equal iff they have the
//! same vertex ids, labels, frozen flags and arrow multiplicities.

mod canonical;
mod class;
mod dynkin;
mod json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use canonical::{canonical_form, CanonicalForm, CanonicalKey};
pub use class::{
    mutation_class, mutation_class_with, search_mutation_class, ClassResult, ClassSearch,
};
pub use dynkin::{dynkin_recognize, DynkinComponent, DynkinKind, DynkinReport};
pub use json::{ArrowJson, QuiverJson, VertexJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is frozen and cannot be mutated")]
    FrozenVertexMutation(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("oriented 2-cycle between `{0}` and `{1}`")]
    TwoCycle(String, String),
    #[error("arrow between frozen vertices `{0}` and `{1}`")]
    FrozenArrow(String, String),
    #[error("arrow `{0}` -> `{1}` has multiplicity 0")]
    ZeroMultiplicity(String, String),
}

impl QuiverError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            QuiverError::UnknownVertex(_) => "UnknownVertex",
            QuiverError::FrozenVertexMutation(_) => "FrozenVertexMutation",
            QuiverError::DuplicateVertex(_) => "DuplicateVertex",
            QuiverError::Loop(_) => "Loop",
            QuiverError::TwoCycle(..) => "TwoCycle",
            QuiverError::FrozenArrow(..) => "FrozenArrow",
            QuiverError::ZeroMultiplicity(..) => "ZeroMultiplicity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub id: String,
    pub label: String,
    pub frozen: bool,
}

impl Vertex {
    pub fn mutable(id: impl Into<String>) -> Self {
        let id = id.into();
        Vertex { label: id.clone(), id, frozen: false }
    }

    pub fn frozen(id: impl Into<String>) -> Self {
        let id = id.into();
        Vertex { label: id.clone(), id, frozen: true }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: BTreeMap<(usize, usize), u32>,
}

/// Incremental constructor; validation happens in [`QuiverBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct QuiverBuilder {
    vertices: Vec<Vertex>,
    arrows: Vec<(String, String, u32)>,
}

impl QuiverBuilder {
    pub fn vertex(mut self, v: Vertex) -> Self {
        self.vertices.push(v);
        self
    }

    pub fn mutable(self, id: &str) -> Self {
        self.vertex(Vertex::mutable(id))
    }

    pub fn frozen(self, id: &str) -> Self {
        self.vertex(Vertex::frozen(id))
    }

    pub fn arrow(mut self, from: &str, to: &str, mult: u32) -> Self {
        self.arrows.push((from.to_owned(), to.to_owned(), mult));
        self
    }

    pub fn build(self) -> Result<Quiver, QuiverError> {
        Quiver::new(self.vertices, self.arrows)
    }
}

impl Quiver {
    pub fn builder() -> QuiverBuilder {
        QuiverBuilder::default()
    }

    /// Builds a quiver from vertices and `(from, to, multiplicity)` triples.
    /// Repeated triples for the same ordered pair accumulate; arrows in both
    /// directions between one pair are rejected rather than cancelled.
    pub fn new<I>(mut vertices: Vec<Vertex>, arrows: I) -> Result<Quiver, QuiverError>
    where
        I: IntoIterator<Item = (String, String, u32)>,
    {
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(QuiverError::DuplicateVertex(w[0].id.clone()));
            }
        }
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| QuiverError::UnknownVertex(id.to_owned()))
        };
        let mut map: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (from, to, mult) in arrows {
            let (u, v) = (lookup(&from)?, lookup(&to)?);
            if mult == 0 {
                return Err(QuiverError::ZeroMultiplicity(from, to));
            }
            if u == v {
                return Err(QuiverError::Loop(from));
            }
            if vertices[u].frozen && vertices[v].frozen {
                return Err(QuiverError::FrozenArrow(from, to));
            }
            if map.contains_key(&(v, u)) {
                return Err(QuiverError::TwoCycle(from, to));
            }
            *map.entry((u, v)).or_insert(0) += mult;
        }
        Ok(Quiver { vertices, arrows: map })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.index_of(id).map(|i| &self.vertices[i])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
    }

    fn require(&self, id: &str) -> Result<usize, QuiverError> {
        self.index_of(id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_owned()))
    }

    fn require_mutable(&self, id: &str) -> Result<usize, QuiverError> {
        let k = self.require(id)?;
        if self.vertices[k].frozen {
            return Err(QuiverError::FrozenVertexMutation(id.to_owned()));
        }
        Ok(k)
    }

    pub fn mutable_ids(&self) -> impl Iterator<Item = &str> {
        self.vertices
            .iter()
            .filter(|v| !v.frozen)
            .map(|v| v.id.as_str())
    }

    pub fn mutable_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.frozen).count()
    }

    /// Arrows as `(from, to, multiplicity)`, ordered by vertex index pairs.
    pub fn arrows(&self) -> impl Iterator<Item = (&Vertex, &Vertex, u32)> {
        self.arrows
            .iter()
            .map(|(&(u, v), &m)| (&self.vertices[u], &self.vertices[v], m))
    }

    pub(crate) fn arrow_indices(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.arrows
    }

    /// Number of arrows `from -> to` (0 when absent or reversed).
    pub fn multiplicity(&self, from: &str, to: &str) -> u32 {
        match (self.index_of(from), self.index_of(to)) {
            (Some(u), Some(v)) => self.arrows.get(&(u, v)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// Skew-symmetric exchange matrix entry `mult(i -> j) - mult(j -> i)`.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        let fwd = self.arrows.get(&(i, j)).copied().unwrap_or(0) as i64;
        let bwd = self.arrows.get(&(j, i)).copied().unwrap_or(0) as i64;
        fwd - bwd
    }

    /// Applies the quiver mutation at `id`; `self` is left untouched.
    pub fn mutate(&self, id: &str) -> Result<Quiver, QuiverError> {
        let k = self.require_mutable(id)?;
        Ok(self.mutate_at(k))
    }

    pub(crate) fn mutate_at(&self, k: usize) -> Quiver {
        debug_assert!(!self.vertices[k].frozen);
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        let mut arrows = BTreeMap::new();
        for (&(u, v), &m) in &self.arrows {
            if v == k {
                ins.push((u, m));
            } else if u == k {
                outs.push((v, m));
            } else {
                arrows.insert((u, v), m);
            }
        }
        // x -> k -> y contributes mult(x,k) * mult(k,y) arrows x -> y, skipped
        // when both ends are frozen; opposite pairs cancel as they are added.
        for &(x, a) in &ins {
            for &(y, b) in &outs {
                if self.vertices[x].frozen && self.vertices[y].frozen {
                    continue;
                }
                let m = a.checked_mul(b).expect("arrow multiplicity overflow");
                add_cancelling(&mut arrows, x, y, m);
            }
        }
        for &(x, a) in &ins {
            arrows.insert((k, x), a);
        }
        for &(y, b) in &outs {
            arrows.insert((y, k), b);
        }
        let q = Quiver { vertices: self.vertices.clone(), arrows };
        debug_assert!(q.check_invariants().is_ok());
        q
    }

    /// Multisets of arrow sources into `id` and arrow targets out of `id`.
    pub fn exchange_neighborhoods(
        &self,
        id: &str,
    ) -> Result<(BTreeMap<String, u32>, BTreeMap<String, u32>), QuiverError> {
        let k = self.require_mutable(id)?;
        let (ins, outs) = self.neighborhoods_at(k);
        let named = |xs: Vec<(usize, u32)>| {
            xs.into_iter()
                .map(|(i, m)| (self.vertices[i].id.clone(), m))
                .collect()
        };
        Ok((named(ins), named(outs)))
    }

    pub(crate) fn neighborhoods_at(&self, k: usize) -> (Vec<(usize, u32)>, Vec<(usize, u32)>) {
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for (&(u, v), &m) in &self.arrows {
            if v == k {
                ins.push((u, m));
            } else if u == k {
                outs.push((v, m));
            }
        }
        (ins, outs)
    }

    /// The full subquiver on the mutable vertices.
    pub fn mutable_part(&self) -> Quiver {
        self.induced(|v| !v.frozen)
    }

    /// The full subquiver on vertices satisfying `keep`.
    pub fn induced<F: Fn(&Vertex) -> bool>(&self, keep: F) -> Quiver {
        let mut remap = vec![None; self.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep(v) {
                remap[i] = Some(vertices.len());
                vertices.push(v.clone());
            }
        }
        let arrows = self
            .arrows
            .iter()
            .filter_map(|(&(u, v), &m)| Some(((remap[u]?, remap[v]?), m)))
            .collect();
        Quiver { vertices, arrows }
    }

    /// Renames vertex `old` to `new_id` with a new label; arrows follow.
    pub fn relabel(&self, old: &str, new_id: &str, new_label: &str) -> Result<Quiver, QuiverError> {
        let k = self.require(old)?;
        if old != new_id && self.index_of(new_id).is_some() {
            return Err(QuiverError::DuplicateVertex(new_id.to_owned()));
        }
        let mut vertices = self.vertices.clone();
        vertices[k].id = new_id.to_owned();
        vertices[k].label = new_label.to_owned();
        Ok(self.with_vertices(vertices))
    }

    /// Applies `f` to every vertex (ids may change; they must stay unique).
    pub fn map_vertices<F: Fn(&Vertex) -> Vertex>(&self, f: F) -> Result<Quiver, QuiverError> {
        let vertices: Vec<Vertex> = self.vertices.iter().map(f).collect();
        let seen: BTreeSet<&str> = vertices.iter().map(|v| v.id.as_str()).collect();
        if seen.len() != vertices.len() {
            let mut ids: Vec<&str> = vertices.iter().map(|v| v.id.as_str()).collect();
            ids.sort();
            let dup = ids.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]).unwrap_or("");
            return Err(QuiverError::DuplicateVertex(dup.to_owned()));
        }
        let q = self.with_vertices(vertices);
        q.check_invariants()?;
        Ok(q)
    }

    // Re-sorts after an id change; `vertices` is parallel to `self.vertices`.
    fn with_vertices(&self, vertices: Vec<Vertex>) -> Quiver {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut pos = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let sorted = order.iter().map(|&i| vertices[i].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|(&(u, v), &m)| ((pos[u], pos[v]), m))
            .collect();
        Quiver { vertices: sorted, arrows }
    }

    /// Adds vertices and arrows to an existing quiver.
    pub fn extend<I>(&self, extra: Vec<Vertex>, arrows: I) -> Result<Quiver, QuiverError>
    where
        I: IntoIterator<Item = (String, String, u32)>,
    {
        let mut vertices = self.vertices.clone();
        vertices.extend(extra);
        let existing = self.arrows().map(|(u, v, m)| (u.id.clone(), v.id.clone(), m));
        Quiver::new(vertices, existing.chain(arrows))
    }

    pub fn check_invariants(&self) -> Result<(), QuiverError> {
        for (&(u, v), &m) in &self.arrows {
            let (a, b) = (&self.vertices[u].id, &self.vertices[v].id);
            if m == 0 {
                return Err(QuiverError::ZeroMultiplicity(a.clone(), b.clone()));
            }
            if u == v {
                return Err(QuiverError::Loop(a.clone()));
            }
            if self.arrows.contains_key(&(v, u)) {
                return Err(QuiverError::TwoCycle(a.clone(), b.clone()));
            }
            if self.vertices[u].frozen && self.vertices[v].frozen {
                return Err(QuiverError::FrozenArrow(a.clone(), b.clone()));
            }
        }
        Ok(())
    }
}

fn add_cancelling(arrows: &mut BTreeMap<(usize, usize), u32>, x: usize, y: usize, m: u32) {
    if let Some(back) = arrows.get_mut(&(y, x)) {
        if *back > m {
            *back -= m;
        } else {
            let rest = m - *back;
            arrows.remove(&(y, x));
            if rest > 0 {
                arrows.insert((x, y), rest);
            }
        }
    } else {
        *arrows.entry((x, y)).or_insert(0) += m;
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mutable: Vec<&str> = self.mutable_ids().collect();
        let frozen: Vec<&str> = self
            .vertices
            .iter()
            .filter(|v| v.frozen)
            .map(|v| v.id.as_str())
            .collect();
        write!(f, "mutable [{}] frozen [{}]", mutable.join(" "), frozen.join(" "))?;
        for (u, v, m) in self.arrows() {
            if m == 1 {
                write!(f, " {}->{}", u.id, v.id)?;
            } else {
                write!(f, " {}-{}->{}", u.id, m, v.id)?;
            }
        }
        Ok(())
    }
}

/// Quivers that show up across tests, examples and the CLI.
pub mod catalog {
    use super::*;

    /// Linearly oriented path `1 -> 2 -> ... -> n` on mutable vertices.
    pub fn path(n: usize) -> Quiver {
        let mut b = Quiver::builder();
        for i in 1..=n {
            b = b.mutable(&i.to_string());
        }
        for i in 1..n {
            b = b.arrow(&i.to_string(), &(i + 1).to_string(), 1);
        }
        b.build().expect("path quiver is valid")
    }

    /// Two mutable vertices joined by a double arrow.
    pub fn kronecker() -> Quiver {
        Quiver::builder()
            .mutable("1")
            .mutable("2")
            .arrow("1", "2", 2)
            .build()
            .expect("kronecker quiver is valid")
    }

    /// Three mutable vertices with double arrows `1 => 2 => 3 => 1`.
    pub fn markov() -> Quiver {
        Quiver::builder()
            .mutable("1")
            .mutable("2")
            .mutable("3")
            .arrow("1", "2", 2)
            .arrow("2", "3", 2)
            .arrow("3", "1", 2)
            .build()
            .expect("markov quiver is valid")
    }

    /// D_n with the branch at vertex `n-2`; arms `n-1` and `n` hang off it.
    pub fn d_type(n: usize) -> Quiver {
        assert!(n >= 4);
        let mut b = Quiver::builder();
        for i in 1..=n {
            b = b.mutable(&i.to_string());
        }
        for i in 1..n - 1 {
            b = b.arrow(&i.to_string(), &(i + 1).to_string(), 1);
        }
        b = b.arrow(&(n - 2).to_string(), &n.to_string(), 1);
        b.build().expect("D quiver is valid")
    }

    /// Mutable `x,y,z` and frozen `u,v`, with a doubled arrow appearing after
    /// mutation at `z`.
    pub fn five_vertex_example() -> Quiver {
        Quiver::builder()
            .mutable("x")
            .mutable("y")
            .mutable("z")
            .frozen("u")
            .frozen("v")
            .arrow("y", "x", 1)
            .arrow("z", "u", 1)
            .arrow("v", "z", 1)
            .arrow("z", "y", 1)
            .arrow("x", "u", 1)
            .arrow("x", "z", 1)
            .build()
            .expect("example quiver is valid")
    }
}
