//! Breadth-first exploration of mutation classes up to isomorphism.

use std::collections::HashMap;

use super::{canonical_form, CanonicalKey, Quiver};
use crate::par::Exec;

/// Outcome of a mutation-class enumeration. Members are canonical quivers,
/// sorted by their [`CanonicalKey`].
#[derive(Clone, Debug)]
pub enum ClassResult {
    Complete(Vec<Quiver>),
    CapExceeded(Vec<Quiver>),
}

impl ClassResult {
    pub fn quivers(&self) -> &[Quiver] {
        match self {
            ClassResult::Complete(q) | ClassResult::CapExceeded(q) => q,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, ClassResult::Complete(_))
    }

    pub fn len(&self) -> usize {
        self.quivers().len()
    }

    pub fn is_empty(&self) -> bool {
        self.quivers().is_empty()
    }
}

/// Outcome of [`search_mutation_class`].
#[derive(Clone, Debug)]
pub enum ClassSearch {
    /// A member satisfying the predicate (as produced by mutation, not
    /// canonicalized) and the number of classes seen so far.
    Found(Quiver, usize),
    Exhausted(ClassResult),
}

pub fn mutation_class(q: &Quiver, cap: usize) -> ClassResult {
    mutation_class_with(q, cap, Exec::default())
}

pub fn mutation_class_with(q: &Quiver, cap: usize, exec: Exec) -> ClassResult {
    match search_mutation_class(q, cap, exec, |_| false) {
        ClassSearch::Exhausted(r) => r,
        ClassSearch::Found(..) => unreachable!("predicate never matches"),
    }
}

/// BFS over the mutation class of `q`, deduplicated by canonical form, that
/// stops at the first member satisfying `hit`. The frontier of each level is
/// expanded with `exec`; merging happens in frontier order, so the explored
/// set never depends on scheduling.
pub fn search_mutation_class<F>(q: &Quiver, cap: usize, exec: Exec, hit: F) -> ClassSearch
where
    F: Fn(&Quiver) -> bool,
{
    assert!(cap >= 1, "cap must be positive");
    let start = canonical_form(q);
    if hit(q) {
        return ClassSearch::Found(q.clone(), 1);
    }
    let mut seen: HashMap<CanonicalKey, Quiver> = HashMap::new();
    seen.insert(start.key, start.quiver.clone());
    let mut frontier = vec![start.quiver];
    let finish = |seen: HashMap<CanonicalKey, Quiver>, complete: bool| {
        let mut members: Vec<(CanonicalKey, Quiver)> = seen.into_iter().collect();
        members.sort_by(|a, b| a.0.cmp(&b.0));
        let qs = members.into_iter().map(|(_, q)| q).collect();
        ClassSearch::Exhausted(if complete {
            ClassResult::Complete(qs)
        } else {
            ClassResult::CapExceeded(qs)
        })
    };
    while !frontier.is_empty() {
        let expanded: Vec<Vec<(Quiver, crate::quiver::CanonicalForm)>> = exec.map(&frontier, |f| {
            (0..f.len())
                .filter(|&k| !f.vertices()[k].frozen)
                .map(|k| {
                    let m = f.mutate_at(k);
                    let c = canonical_form(&m);
                    (m, c)
                })
                .collect()
        });
        let mut next = Vec::new();
        for (m, c) in expanded.into_iter().flatten() {
            if seen.contains_key(&c.key) {
                continue;
            }
            if hit(&m) {
                return ClassSearch::Found(m, seen.len() + 1);
            }
            if seen.len() == cap {
                return finish(seen, false);
            }
            seen.insert(c.key, c.quiver.clone());
            next.push(c.quiver);
        }
        frontier = next;
    }
    finish(seen, true)
}
