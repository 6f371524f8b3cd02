//! Canonical forms of quivers under frozen-flag-preserving relabeling.
//!
//! Colour refinement (frozen flag, then signed arrow signatures) followed by
//! individualization over the remaining ambiguous cells. Every leaf of the
//! search is a total order of the vertices; the lexicographically smallest
//! encoding wins. Interchangeable twins (same neighbourhood, same flag, no
//! arrow between them) are explored only once per cell, which keeps quivers
//! with many parallel frozen vertices cheap.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Quiver, Vertex};

/// Labeling-independent encoding of a quiver: frozen flags by canonical
/// position and sorted `(from, to, multiplicity)` triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub frozen: Vec<bool>,
    pub arrows: Vec<(u32, u32, u32)>,
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// The canonical quiver, with ids `c0, c1, ...` (zero-padded).
    pub quiver: Quiver,
    /// Original vertex id to canonical id.
    pub relabeling: BTreeMap<String, String>,
}

pub fn canonical_form(q: &Quiver) -> CanonicalForm {
    let n = q.len();
    let adj = Adjacency::new(q);
    let initial: Vec<u32> = q.vertices().iter().map(|v| v.frozen as u32).collect();
    let mut best: Option<(CanonicalKey, Vec<usize>)> = None;
    search(&adj, initial, &mut best);
    let (key, pos) = best.unwrap_or_else(|| (CanonicalKey { frozen: vec![], arrows: vec![] }, vec![]));

    let width = n.saturating_sub(1).to_string().len();
    let name = |p: usize| format!("c{:0width$}", p, width = width);
    let mut relabeling = BTreeMap::new();
    let mut vertices = Vec::with_capacity(n);
    for (i, v) in q.vertices().iter().enumerate() {
        relabeling.insert(v.id.clone(), name(pos[i]));
        let mut cv = if v.frozen { Vertex::frozen(name(pos[i])) } else { Vertex::mutable(name(pos[i])) };
        cv.label = cv.id.clone();
        vertices.push(cv);
    }
    let arrows = key
        .arrows
        .iter()
        .map(|&(u, v, m)| (name(u as usize), name(v as usize), m));
    let quiver = Quiver::new(vertices, arrows).expect("relabeling preserves quiver invariants");
    CanonicalForm { key, quiver, relabeling }
}

struct Adjacency {
    n: usize,
    /// Per vertex: (neighbour, signed multiplicity; positive = outgoing).
    nbrs: Vec<Vec<(usize, i64)>>,
    twin: Vec<usize>,
    frozen: Vec<bool>,
}

impl Adjacency {
    fn new(q: &Quiver) -> Self {
        let n = q.len();
        let mut nbrs = vec![Vec::new(); n];
        for (&(u, v), &m) in q.arrow_indices() {
            nbrs[u].push((v, m as i64));
            nbrs[v].push((u, -(m as i64)));
        }
        for l in &mut nbrs {
            l.sort();
        }
        let frozen: Vec<bool> = q.vertices().iter().map(|v| v.frozen).collect();
        let mut twin: Vec<usize> = (0..n).collect();
        for u in 0..n {
            if twin[u] != u {
                continue;
            }
            for v in u + 1..n {
                if twin[v] == v && frozen[u] == frozen[v] && is_twin(&nbrs, u, v) {
                    twin[v] = u;
                }
            }
        }
        Adjacency { n, nbrs, twin, frozen }
    }
}

fn is_twin(nbrs: &[Vec<(usize, i64)>], u: usize, v: usize) -> bool {
    if nbrs[u].iter().any(|&(w, _)| w == v) {
        return false;
    }
    nbrs[u] == nbrs[v]
}

/// One round of refinement until the partition is stable.
fn refine(adj: &Adjacency, mut colors: Vec<u32>) -> Vec<u32> {
    let mut count = distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<(i64, u32)>)> = (0..adj.n)
            .map(|v| {
                let mut s: Vec<(i64, u32)> =
                    adj.nbrs[v].iter().map(|&(w, m)| (m, colors[w])).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<(i64, u32)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).expect("signature present") as u32)
            .collect();
        let c = sorted.len();
        colors = next;
        if c == count {
            return colors;
        }
        count = c;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(adj: &Adjacency, colors: Vec<u32>, best: &mut Option<(CanonicalKey, Vec<usize>)>) {
    let colors = refine(adj, colors);
    let n = adj.n;
    if distinct(&colors) == n {
        let pos: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let key = encode(adj, &pos);
        let better = match best {
            None => true,
            Some((b, _)) => key.cmp(b) == Ordering::Less,
        };
        if better {
            *best = Some((key, pos));
        }
        return;
    }
    // first non-singleton cell, by colour
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &colors {
        *sizes.entry(c).or_insert(0) += 1;
    }
    let cell = sizes
        .iter()
        .find(|(_, &s)| s > 1)
        .map(|(&c, _)| c)
        .expect("a non-singleton cell exists");
    let mut tried: Vec<usize> = Vec::new();
    for v in 0..n {
        if colors[v] != cell || tried.contains(&adj.twin[v]) {
            continue;
        }
        tried.push(adj.twin[v]);
        let child: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| if c == cell && u != v { 2 * c + 1 } else { 2 * c })
            .collect();
        search(adj, child, best);
    }
}

fn encode(adj: &Adjacency, pos: &[usize]) -> CanonicalKey {
    let mut frozen = vec![false; adj.n];
    for v in 0..adj.n {
        frozen[pos[v]] = adj.frozen[v];
    }
    let mut arrows: Vec<(u32, u32, u32)> = Vec::new();
    for u in 0..adj.n {
        for &(w, m) in &adj.nbrs[u] {
            if m > 0 {
                arrows.push((pos[u] as u32, pos[w] as u32, m as u32));
            }
        }
    }
    arrows.sort_unstable();
    CanonicalKey { frozen, arrows }
}
