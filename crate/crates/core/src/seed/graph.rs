use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Seed, SeedError, SeedKey};
use crate::laurent::LaurentPoly;
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeEdge {
    pub from: usize,
    pub to: usize,
    /// Mutated vertex in the seed `from`.
    pub from_vertex: String,
    /// The vertex of seed `to` that carries the same attachment after the
    /// mutation, i.e. the direction that leads back.
    pub to_vertex: String,
}

/// Seeds in BFS discovery order (index 0 is the start) and one edge per
/// mutation, listed once.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub seeds: Vec<Seed>,
    pub edges: Vec<ExchangeEdge>,
}

#[derive(Clone, Debug)]
pub enum Enumeration {
    Complete(ExchangeGraph),
    CapExceeded(ExchangeGraph),
}

impl Enumeration {
    pub fn graph(&self) -> &ExchangeGraph {
        match self {
            Enumeration::Complete(g) | Enumeration::CapExceeded(g) => g,
        }
    }

    pub fn into_graph(self) -> ExchangeGraph {
        match self {
            Enumeration::Complete(g) | Enumeration::CapExceeded(g) => g,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Enumeration::Complete(_))
    }
}

pub fn enumerate_exchange_graph(s: &Seed, cap: usize) -> Result<Enumeration, SeedError> {
    enumerate_exchange_graph_with(s, cap, Exec::default())
}

/// Breadth-first closure of `s` under seed mutation, up to `cap` seeds.
///
/// Each BFS level mutates its whole frontier through `exec`, then merges the
/// results sequentially in frontier order, so indices and edges are the same
/// for every execution strategy. When a new seed turns up while `cap` seeds
/// are already known the search stops and returns what it has; edges into
/// seeds that were never admitted are dropped.
pub fn enumerate_exchange_graph_with(
    s: &Seed,
    cap: usize,
    exec: Exec,
) -> Result<Enumeration, SeedError> {
    assert!(cap >= 1, "cap must be positive");
    let mut seeds = vec![s.clone()];
    let mut index: HashMap<SeedKey, usize> = HashMap::new();
    index.insert(s.key(), 0);
    let mut edges = Vec::new();
    // Half-edges (seed, vertex index) already accounted for by an edge.
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&i| {
                let q = seeds[i].quiver();
                (0..q.len())
                    .filter(move |&k| !q.vertices()[k].frozen)
                    .map(move |k| (i, k))
            })
            .filter(|job| !done.contains(job))
            .collect();
        let results = exec.map(&jobs, |&(i, k)| {
            seeds[i].mutate_at(k).map(|m| {
                let key = m.key();
                (m, key)
            })
        });
        let mut next = Vec::new();
        for (&(i, k), res) in jobs.iter().zip(results) {
            if done.contains(&(i, k)) {
                continue;
            }
            let (m, key) = res?;
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if seeds.len() == cap {
                        return Ok(Enumeration::CapExceeded(ExchangeGraph { seeds, edges }));
                    }
                    let j = seeds.len();
                    let fresh = m.attachment_at(k);
                    if !fresh.has_positive_coefficients() {
                        log::warn!("cluster variable with a non-positive coefficient: {fresh}");
                    }
                    index.insert(key, j);
                    seeds.push(m.clone());
                    next.push(j);
                    j
                }
            };
            // The attachment just created at `k` sits at some vertex of the
            // stored representative of class `j`.
            let back = m.correspondence(&seeds[j])[k];
            done.insert((i, k));
            done.insert((j, back));
            edges.push(ExchangeEdge {
                from: i,
                to: j,
                from_vertex: seeds[i].quiver().vertices()[k].id.clone(),
                to_vertex: seeds[j].quiver().vertices()[back].id.clone(),
            });
        }
        frontier = next;
    }
    log::debug!("exchange graph closed: {} seeds, {} edges", seeds.len(), edges.len());
    Ok(Enumeration::Complete(ExchangeGraph { seeds, edges }))
}

impl ExchangeGraph {
    /// Number of incident edges per seed.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.seeds.len()];
        for e in &self.edges {
            d[e.from] += 1;
            d[e.to] += 1;
        }
        d
    }

    /// Every seed has one edge per mutable vertex.
    pub fn is_regular(&self) -> bool {
        self.degrees()
            .iter()
            .zip(&self.seeds)
            .all(|(&d, s)| d == s.quiver().mutable_count())
    }

    /// No loops and no repeated pairs.
    pub fn is_simple(&self) -> bool {
        let mut pairs = HashSet::new();
        self.edges.iter().all(|e| {
            e.from != e.to && pairs.insert((e.from.min(e.to), e.from.max(e.to)))
        })
    }

    /// Generator indices (into [`Self::generators`]) of each extended cluster.
    fn extended_clusters(&self, gens: &HashMap<&LaurentPoly, usize>) -> Vec<BTreeSet<usize>> {
        self.seeds
            .iter()
            .map(|s| s.extended_cluster().map(|(_, p)| gens[p]).collect())
            .collect()
    }

    /// Frozen variables followed by cluster variables, each block sorted.
    pub fn generators(&self) -> Vec<LaurentPoly> {
        let mut g = frozen_variables(self);
        g.extend(cluster_variables(self));
        g
    }
}

/// Distinct attachments at mutable vertices, sorted canonically.
pub fn cluster_variables(g: &ExchangeGraph) -> Vec<LaurentPoly> {
    let set: BTreeSet<&LaurentPoly> = g.seeds.iter().flat_map(|s| s.cluster()).collect();
    set.into_iter().cloned().collect()
}

pub fn frozen_variables(g: &ExchangeGraph) -> Vec<LaurentPoly> {
    let set: BTreeSet<&LaurentPoly> = g.seeds.iter().flat_map(|s| s.frozen_attachments()).collect();
    set.into_iter().cloned().collect()
}

/// Cluster variables that have a non-positive coefficient.
pub fn positivity_counterexamples(g: &ExchangeGraph) -> Vec<LaurentPoly> {
    cluster_variables(g)
        .into_iter()
        .filter(|p| !p.has_positive_coefficients())
        .collect()
}

/// Simplicial complex on cluster variables whose facets are the clusters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterComplex {
    pub vertices: Vec<LaurentPoly>,
    /// Sorted vertex indices, one facet per seed, deduplicated and sorted.
    pub facets: Vec<Vec<usize>>,
}

pub fn cluster_complex(g: &ExchangeGraph) -> ClusterComplex {
    let vertices = cluster_variables(g);
    let pos: HashMap<&LaurentPoly, usize> = vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let facets: BTreeSet<Vec<usize>> = g
        .seeds
        .iter()
        .map(|s| {
            let mut f: Vec<usize> = s.cluster().into_iter().map(|p| pos[p]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    ClusterComplex { vertices, facets: facets.into_iter().collect() }
}

impl ClusterComplex {
    /// `f[d]` is the number of faces with `d + 1` vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        let dim = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut faces: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); dim];
        for facet in &self.facets {
            assert!(facet.len() < 32, "facet too large to enumerate faces");
            for mask in 1u32..(1 << facet.len()) {
                let face: Vec<usize> = facet
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                faces[face.len() - 1].insert(face);
            }
        }
        faces.iter().map(HashSet::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

fn generator_index(g: &ExchangeGraph) -> (Vec<LaurentPoly>, HashMap<LaurentPoly, usize>) {
    let gens = g.generators();
    let idx = gens.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    (gens, idx)
}

/// Whether `p` and `q` lie in a common extended cluster.
pub fn compatible(g: &ExchangeGraph, p: &LaurentPoly, q: &LaurentPoly) -> Result<bool, SeedError> {
    let (_, idx) = generator_index(g);
    let find = |x: &LaurentPoly| idx.get(x).copied().ok_or_else(|| SeedError::NotAGenerator(x.to_string()));
    let (a, b) = (find(p)?, find(q)?);
    let by_ref: HashMap<&LaurentPoly, usize> = idx.iter().map(|(k, &v)| (k, v)).collect();
    Ok(g.extended_clusters(&by_ref)
        .iter()
        .any(|c| c.contains(&a) && c.contains(&b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterMonomial {
    /// `(generator, exponent)` pairs with generators as in
    /// [`ExchangeGraph::generators`], sorted by generator.
    pub factors: Vec<(usize, u32)>,
    pub value: LaurentPoly,
}

impl ClusterMonomial {
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }
}

/// All products of pairwise compatible generators of total degree at most
/// `max_degree`, the empty product included. Pairwise compatibility is
/// checked against the extended clusters directly: a set of generators is
/// allowed when it lies inside one of them. Products that coincide as
/// Laurent polynomials are kept once and the collision is logged.
pub fn cluster_monomials(g: &ExchangeGraph, max_degree: u32) -> Vec<ClusterMonomial> {
    let (gens, idx) = generator_index(g);
    let by_ref: HashMap<&LaurentPoly, usize> = idx.iter().map(|(k, &v)| (k, v)).collect();
    let mut supports: BTreeSet<Vec<(usize, u32)>> = BTreeSet::new();
    for cluster in g.extended_clusters(&by_ref) {
        let members: Vec<usize> = cluster.into_iter().collect();
        let mut current = Vec::new();
        exponent_vectors(&members, 0, max_degree, &mut current, &mut supports);
    }
    let mut out: Vec<ClusterMonomial> = Vec::with_capacity(supports.len());
    let mut by_value: HashMap<LaurentPoly, usize> = HashMap::new();
    let one = LaurentPoly::one(g.seeds[0].vars());
    for factors in supports {
        let value = factors
            .iter()
            .fold(one.clone(), |acc, &(i, e)| &acc * &gens[i].pow(e));
        if let Some(&prev) = by_value.get(&value) {
            log::warn!(
                "cluster monomials {:?} and {:?} coincide as Laurent polynomials",
                out[prev].factors,
                factors
            );
            continue;
        }
        by_value.insert(value.clone(), out.len());
        out.push(ClusterMonomial { factors, value });
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.factors.cmp(&b.factors)));
    out
}

fn exponent_vectors(
    members: &[usize],
    start: usize,
    budget: u32,
    current: &mut Vec<(usize, u32)>,
    out: &mut BTreeSet<Vec<(usize, u32)>>,
) {
    out.insert(current.clone());
    for i in start..members.len() {
        for e in 1..=budget {
            current.push((members[i], e));
            exponent_vectors(members, i + 1, budget - e, current, out);
            current.pop();
        }
    }
}
