//! Seeds: a quiver together with one Laurent polynomial per vertex.
//!
//! Mutable vertices carry cluster variables and frozen vertices carry frozen
//! variables. A seed mutation rewrites the quiver and replaces a single
//! attachment through the exchange relation; the division in that relation is
//! exact, and any failure is reported as [`SeedError::LaurentViolation`]
//! instead of being papered over with rational functions.

mod check;
mod classify;
mod graph;
mod json;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::laurent::{is_identifier, LaurentError, LaurentPoly, VarTable};
use crate::quiver::{Quiver, QuiverError};

pub use check::{laurent_check, LaurentCheckReport, LaurentViolation};
pub use classify::{classify_quiver, classify_type, TypeVerdict};
pub use graph::{
    cluster_complex, cluster_monomials, cluster_variables, compatible,
    enumerate_exchange_graph, enumerate_exchange_graph_with, frozen_variables,
    positivity_counterexamples, ClusterComplex, ClusterMonomial, Enumeration, ExchangeEdge,
    ExchangeGraph,
};
pub use json::{ExchangeGraphJson, SeedJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("exchange at `{vertex}` is not a Laurent polynomial: {reason}")]
    LaurentViolation { vertex: String, reason: String },
    #[error("`{0}` is neither a cluster variable nor a frozen variable")]
    NotAGenerator(String),
    #[error("vertex `{0}` has no attachment")]
    MissingAttachment(String),
    #[error("attachment given for unknown vertex `{0}`")]
    UnknownAttachment(String),
}

impl SeedError {
    pub fn code(&self) -> &'static str {
        match self {
            SeedError::Quiver(e) => e.code(),
            SeedError::Laurent(e) => e.code(),
            SeedError::LaurentViolation { .. } => "LaurentViolation",
            SeedError::NotAGenerator(_) => "NotAGenerator",
            SeedError::MissingAttachment(_) => "MissingAttachment",
            SeedError::UnknownAttachment(_) => "UnknownAttachment",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    quiver: Quiver,
    vars: Arc<VarTable>,
    // Parallel to `quiver.vertices()`.
    attach: Vec<LaurentPoly>,
}

/// One application of the exchange relation `old * new = in_product + out_product`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeRelation {
    pub vertex: String,
    pub old: LaurentPoly,
    pub new: LaurentPoly,
    /// Product over arrows `y -> vertex` of the attachment at `y`.
    pub in_product: LaurentPoly,
    /// Product over arrows `vertex -> y` of the attachment at `y`.
    pub out_product: LaurentPoly,
}

impl std::fmt::Display for ExchangeRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}) * ({}) = {} + {}",
            self.old, self.new, self.in_product, self.out_product
        )
    }
}

/// Canonical, hashable summary of a seed: attachments sorted with their
/// frozen flags, and arrows rewritten in terms of positions in that order.
/// For seeds with pairwise distinct attachments (every seed reachable from an
/// initial one) two seeds have equal keys iff they are equal as seeds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey {
    pub attachments: Vec<(bool, LaurentPoly)>,
    pub arrows: Vec<(u32, u32, u32)>,
}

/// Variable name for a vertex id: the id itself when it is an identifier,
/// otherwise `x` followed by the id with other characters replaced by `_`.
fn variable_name(id: &str) -> String {
    if is_identifier(id) {
        return id.to_owned();
    }
    let cleaned: String = id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    format!("x{cleaned}")
}

impl Seed {
    /// The initial seed of `q`: every vertex carries its own variable.
    pub fn initial(q: &Quiver) -> Seed {
        let mut names: Vec<String> = Vec::with_capacity(q.len());
        for v in q.vertices() {
            let mut name = variable_name(&v.id);
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        let vars = VarTable::new(names).expect("generated names are unique identifiers");
        let attach = (0..q.len()).map(|i| LaurentPoly::var(&vars, i)).collect();
        Seed { quiver: q.clone(), vars, attach }
    }

    /// A seed with explicitly given attachments, one per vertex.
    pub fn from_parts(
        quiver: Quiver,
        vars: Arc<VarTable>,
        mut attachments: BTreeMap<String, LaurentPoly>,
    ) -> Result<Seed, SeedError> {
        let mut attach = Vec::with_capacity(quiver.len());
        for v in quiver.vertices() {
            let p = attachments
                .remove(&v.id)
                .ok_or_else(|| SeedError::MissingAttachment(v.id.clone()))?;
            if p.vars() != &vars {
                return Err(LaurentError::VarTableMismatch.into());
            }
            attach.push(p);
        }
        if let Some(extra) = attachments.into_keys().next() {
            return Err(SeedError::UnknownAttachment(extra));
        }
        Ok(Seed { quiver, vars, attach })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn attachment(&self, id: &str) -> Option<&LaurentPoly> {
        self.quiver.index_of(id).map(|i| &self.attach[i])
    }

    pub(crate) fn attachment_at(&self, i: usize) -> &LaurentPoly {
        &self.attach[i]
    }

    /// `(vertex id, attachment)` for every vertex, in vertex order.
    pub fn extended_cluster(&self) -> impl Iterator<Item = (&str, &LaurentPoly)> {
        self.quiver
            .vertices()
            .iter()
            .zip(&self.attach)
            .map(|(v, p)| (v.id.as_str(), p))
    }

    /// Attachments at mutable vertices.
    pub fn cluster(&self) -> Vec<&LaurentPoly> {
        self.quiver
            .vertices()
            .iter()
            .zip(&self.attach)
            .filter(|(v, _)| !v.frozen)
            .map(|(_, p)| p)
            .collect()
    }

    pub fn frozen_attachments(&self) -> Vec<&LaurentPoly> {
        self.quiver
            .vertices()
            .iter()
            .zip(&self.attach)
            .filter(|(v, _)| v.frozen)
            .map(|(_, p)| p)
            .collect()
    }

    /// The exchange relation at `id`, without building the mutated seed.
    pub fn exchange_relation(&self, id: &str) -> Result<ExchangeRelation, SeedError> {
        let k = self
            .quiver
            .index_of(id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_owned()))?;
        if self.quiver.vertices()[k].frozen {
            return Err(QuiverError::FrozenVertexMutation(id.to_owned()).into());
        }
        self.exchange_at(k)
    }

    fn exchange_at(&self, k: usize) -> Result<ExchangeRelation, SeedError> {
        let (ins, outs) = self.quiver.neighborhoods_at(k);
        let product = |xs: &[(usize, u32)]| {
            xs.iter().fold(LaurentPoly::one(&self.vars), |acc, &(i, m)| {
                &acc * &self.attach[i].pow(m)
            })
        };
        let in_product = product(&ins);
        let out_product = product(&outs);
        let old = self.attach[k].clone();
        let vertex = self.quiver.vertices()[k].id.clone();
        let new = (&in_product + &out_product)
            .exact_div(&old)
            .map_err(|e| SeedError::LaurentViolation { vertex: vertex.clone(), reason: e.to_string() })?;
        Ok(ExchangeRelation { vertex, old, new, in_product, out_product })
    }

    /// Seed mutation at the mutable vertex `id`.
    pub fn mutate(&self, id: &str) -> Result<Seed, SeedError> {
        Ok(self.mutate_with_relation(id)?.0)
    }

    /// Seed mutation together with the exchange relation that produced it.
    pub fn mutate_with_relation(&self, id: &str) -> Result<(Seed, ExchangeRelation), SeedError> {
        let rel = self.exchange_relation(id)?;
        let k = self.quiver.index_of(id).expect("checked above");
        Ok((self.apply(k, &rel), rel))
    }

    pub(crate) fn mutate_at(&self, k: usize) -> Result<Seed, SeedError> {
        let rel = self.exchange_at(k)?;
        Ok(self.apply(k, &rel))
    }

    fn apply(&self, k: usize, rel: &ExchangeRelation) -> Seed {
        let mut attach = self.attach.clone();
        attach[k] = rel.new.clone();
        Seed { quiver: self.quiver.mutate_at(k), vars: self.vars.clone(), attach }
    }

    /// Mutates along `path`, left to right.
    pub fn mutate_sequence<S: AsRef<str>>(&self, path: &[S]) -> Result<Seed, SeedError> {
        let mut s = self.clone();
        for v in path {
            s = s.mutate(v.as_ref())?;
        }
        Ok(s)
    }

    pub fn key(&self) -> SeedKey {
        let order = self.sorted_order();
        let mut pos = vec![0u32; order.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p as u32;
        }
        let attachments = order
            .iter()
            .map(|&i| (self.quiver.vertices()[i].frozen, self.attach[i].clone()))
            .collect();
        let mut arrows: Vec<(u32, u32, u32)> = self
            .quiver
            .arrow_indices()
            .iter()
            .map(|(&(u, v), &m)| (pos[u], pos[v], m))
            .collect();
        arrows.sort_unstable();
        SeedKey { attachments, arrows }
    }

    // Vertex indices sorted by (frozen flag, attachment).
    fn sorted_order(&self) -> Vec<usize> {
        let vs = self.quiver.vertices();
        let mut order: Vec<usize> = (0..vs.len()).collect();
        order.sort_by(|&a, &b| {
            vs[a].frozen.cmp(&vs[b].frozen).then_with(|| self.attach[a].cmp(&self.attach[b]))
        });
        order
    }

    fn has_repeated_attachments(&self) -> bool {
        let order = self.sorted_order();
        order.windows(2).any(|w| self.attach[w[0]] == self.attach[w[1]])
    }

    /// For each vertex of `self`, the vertex of `other` carrying the same
    /// attachment. Only meaningful when `self.key() == other.key()`.
    pub(crate) fn correspondence(&self, other: &Seed) -> Vec<usize> {
        let a = self.sorted_order();
        let b = other.sorted_order();
        let mut map = vec![0; a.len()];
        for (i, j) in a.into_iter().zip(b) {
            map[i] = j;
        }
        map
    }
}

/// Whether a frozen-flag-preserving bijection carries `a`'s quiver onto
/// `b`'s and every attachment onto an identical one.
pub fn seeds_equal(a: &Seed, b: &Seed) -> Result<bool, SeedError> {
    if a.vars != b.vars {
        return Err(LaurentError::VarTableMismatch.into());
    }
    if a.quiver.len() != b.quiver.len() {
        return Ok(false);
    }
    if !a.has_repeated_attachments() && !b.has_repeated_attachments() {
        return Ok(a.key() == b.key());
    }
    Ok(matching_bijection(a, b))
}

// Backtracking fallback for seeds whose attachments repeat; such seeds never
// arise from mutation but can be built by hand.
fn matching_bijection(a: &Seed, b: &Seed) -> bool {
    let n = a.quiver.len();
    let va = a.quiver.vertices();
    let vb = b.quiver.vertices();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| va[i].frozen == vb[j].frozen && a.attach[i] == b.attach[j])
                .collect()
        })
        .collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &Seed,
        b: &Seed,
        cand: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == map.len() {
            return a.quiver.arrow_indices().len() == b.quiver.arrow_indices().len()
                && a.quiver
                    .arrow_indices()
                    .iter()
                    .all(|(&(u, v), &m)| b.quiver.arrow_indices().get(&(map[u], map[v])) == Some(&m));
        }
        for &j in &cand[i] {
            if used[j] {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if go(i + 1, a, b, cand, map, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    go(0, a, b, &candidates, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog::*;
    use crate::quiver::Vertex;

    fn p(s: &Seed, text: &str) -> LaurentPoly {
        LaurentPoly::parse(s.vars(), text).unwrap()
    }

    #[test]
    fn initial_seed_uses_vertex_ids() {
        let s = Seed::initial(&five_vertex_example());
        assert_eq!(s.vars().names(), ["u", "v", "x", "y", "z"]);
        let a2 = Seed::initial(&path(2));
        assert_eq!(a2.vars().names(), ["x1", "x2"]);
        assert_eq!(a2.attachment("1").unwrap().to_string(), "x1");
    }

    #[test]
    fn two_step_exchange() {
        let s = Seed::initial(&five_vertex_example());
        let (s1, rel) = s.mutate_with_relation("z").unwrap();
        assert_eq!(&rel.in_product + &rel.out_product, p(&s, "v*x + u*y"));
        let z1 = s1.attachment("z").unwrap().clone();
        assert_eq!(&z1 * &p(&s, "z"), p(&s, "v*x + u*y"));
        let (_, rel2) = s1.mutate_with_relation("x").unwrap();
        assert_eq!(&rel2.in_product + &rel2.out_product, &z1 + &p(&s, "u^2"));
    }

    #[test]
    fn a2_period_five() {
        let s = Seed::initial(&path(2));
        let mut cur = s.clone();
        let mut seen = Vec::new();
        for step in 0..5 {
            let v = if step % 2 == 0 { "1" } else { "2" };
            cur = cur.mutate(v).unwrap();
            seen.push(cur.attachment(v).unwrap().to_string());
        }
        assert_eq!(seen[0], "x1^-1*x2 + x1^-1");
        assert_eq!(seen[1], "x2^-1 + x1^-1 + x1^-1*x2^-1");
        assert_eq!(seen[2], "x1*x2^-1 + x2^-1");
        assert_eq!(seen[3], "x1");
        assert_eq!(seen[4], "x2");
        assert!(seeds_equal(&cur, &s).unwrap());
    }

    #[test]
    fn empty_products_are_one() {
        let s = Seed::initial(&path(1));
        let m = s.mutate("1").unwrap();
        assert_eq!(m.attachment("1").unwrap().to_string(), "2*x1^-1");
    }

    #[test]
    fn equality() {
        let s = Seed::initial(&path(2));
        assert!(seeds_equal(&s, &s.mutate("1").unwrap().mutate("1").unwrap()).unwrap());
        assert!(!seeds_equal(&s, &s.mutate("1").unwrap()).unwrap());
        let other = Seed::initial(&path(3));
        assert_eq!(seeds_equal(&s, &other).unwrap_err().code(), "VarTableMismatch");
    }

    #[test]
    fn equality_ignores_vertex_names() {
        let q = five_vertex_example();
        let s = Seed::initial(&q);
        let renamed = q
            .map_vertices(|v| Vertex { id: format!("w{}", v.id), ..v.clone() })
            .unwrap();
        let attach: BTreeMap<String, LaurentPoly> = s
            .extended_cluster()
            .map(|(id, poly)| (format!("w{id}"), poly.clone()))
            .collect();
        let t = Seed::from_parts(renamed, s.vars().clone(), attach).unwrap();
        assert!(seeds_equal(&s, &t).unwrap());
    }

    #[test]
    fn repeated_attachments_use_the_fallback() {
        let q = path(2);
        let s = Seed::initial(&q);
        let x1 = s.attachment("1").unwrap().clone();
        let both: BTreeMap<String, LaurentPoly> =
            [("1".to_string(), x1.clone()), ("2".to_string(), x1)].into();
        let t = Seed::from_parts(q.clone(), s.vars().clone(), both.clone()).unwrap();
        assert!(seeds_equal(&t, &t).unwrap());
        assert!(!seeds_equal(&t, &s).unwrap());
    }

    #[test]
    fn errors() {
        let s = Seed::initial(&five_vertex_example());
        assert_eq!(s.mutate("u").unwrap_err().code(), "FrozenVertexMutation");
        assert_eq!(s.mutate("nope").unwrap_err().code(), "UnknownVertex");
    }

    #[test]
    fn frozen_attachments_are_fixed() {
        let s = Seed::initial(&five_vertex_example());
        let t = s.mutate_sequence(&["z", "x", "y", "z"]).unwrap();
        assert_eq!(s.frozen_attachments(), t.frozen_attachments());
    }
}
