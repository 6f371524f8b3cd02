//! Recognition of orientations of simply-laced Dynkin diagrams.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinKind {
    A,
    D,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinComponent {
    #[serde(rename = "type")]
    pub kind: DynkinKind,
    pub rank: usize,
    /// Vertex ids of the component, sorted.
    pub vertices: Vec<String>,
}

impl fmt::Display for DynkinComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinReport {
    pub components: Vec<DynkinComponent>,
    pub covers_all_mutable: bool,
}

impl fmt::Display for DynkinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Decides whether the mutable part of `q` is an orientation of a disjoint
/// union of ADE diagrams. Arrow directions are ignored; any multiplicity
/// above one between mutable vertices rules it out.
pub fn dynkin_recognize(q: &Quiver) -> Option<DynkinReport> {
    let m = q.mutable_part();
    let n = m.len();
    let mut adj = vec![Vec::new(); n];
    for (&(u, v), &mult) in m.arrow_indices() {
        if mult > 1 {
            return None;
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            for &w in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
            i += 1;
        }
        let edges: usize = members.iter().map(|&u| adj[u].len()).sum::<usize>() / 2;
        if edges + 1 != members.len() {
            return None;
        }
        let (kind, rank) = classify_tree(&adj, &members)?;
        let mut vertices: Vec<String> = members.iter().map(|&u| m.vertices()[u].id.clone()).collect();
        vertices.sort();
        components.push(DynkinComponent { kind, rank, vertices });
    }
    components.sort();
    Some(DynkinReport { components, covers_all_mutable: true })
}

fn classify_tree(adj: &[Vec<usize>], members: &[usize]) -> Option<(DynkinKind, usize)> {
    let n = members.len();
    let branch: Vec<usize> = members.iter().copied().filter(|&u| adj[u].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some((DynkinKind::A, n)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&w| arm_length(adj, *c, w)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some((DynkinKind::D, n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some((DynkinKind::E, n)),
                _ => None,
            }
        }
        _ => None,
    }
}

// Number of vertices on the arm leaving `center` through `first`.
fn arm_length(adj: &[Vec<usize>], center: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}
