use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{Seed, SeedError, SeedKey};
use crate::laurent::LaurentPoly;
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentViolation {
    /// Mutation sequence from the initial seed to the failing seed.
    pub path: Vec<String>,
    pub vertex: String,
    pub message: String,
}

/// What a bounded-depth sweep of seed mutations found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentCheckReport {
    pub depth: usize,
    pub seeds_visited: usize,
    pub mutations: usize,
    pub cluster_variables: usize,
    pub max_terms: usize,
    pub max_coefficient_digits: usize,
    pub laurent_violations: Vec<LaurentViolation>,
    /// Rendered cluster variables with a non-positive coefficient; only
    /// filled when positivity checking was requested.
    pub positivity_counterexamples: Vec<String>,
    pub positivity_checked: bool,
}

impl LaurentCheckReport {
    pub fn all_exact(&self) -> bool {
        self.laurent_violations.is_empty()
    }
}

/// Applies every mutation sequence of length at most `depth` to `seed`,
/// skipping seeds already visited, and records each exchange that fails to
/// be an exact Laurent polynomial division. Each level runs through `exec`.
pub fn laurent_check(seed: &Seed, depth: usize, check_positivity: bool, exec: Exec) -> LaurentCheckReport {
    let mut seen: HashSet<SeedKey> = HashSet::new();
    seen.insert(seed.key());
    let mut variables: BTreeSet<LaurentPoly> = seed.cluster().into_iter().cloned().collect();
    let mut frontier: Vec<(Seed, Vec<String>)> = vec![(seed.clone(), Vec::new())];
    let mut violations = Vec::new();
    let mut mutations = 0;

    for _ in 0..depth {
        let jobs: Vec<(usize, String)> = frontier
            .iter()
            .enumerate()
            .flat_map(|(i, (s, _))| s.quiver().mutable_ids().map(move |v| (i, v.to_owned())))
            .collect();
        let results: Vec<Result<Seed, SeedError>> =
            exec.map(&jobs, |(i, v)| frontier[*i].0.mutate(v));
        mutations += jobs.len();
        let mut next = Vec::new();
        for ((i, v), res) in jobs.into_iter().zip(results) {
            let mut path = frontier[i].1.clone();
            path.push(v.clone());
            match res {
                Ok(m) => {
                    variables.insert(m.attachment(&v).expect("mutated vertex exists").clone());
                    if seen.insert(m.key()) {
                        next.push((m, path));
                    }
                }
                Err(e) => violations.push(LaurentViolation { path, vertex: v, message: e.to_string() }),
            }
        }
        frontier = next;
    }

    let max_terms = variables.iter().map(LaurentPoly::len).max().unwrap_or(0);
    let max_coefficient_digits = variables
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.magnitude().to_string().len()))
        .max()
        .unwrap_or(0);
    let positivity_counterexamples = if check_positivity {
        variables
            .iter()
            .filter(|p| !p.has_positive_coefficients())
            .map(|p| {
                log::warn!("positivity counterexample: {p}");
                p.to_string()
            })
            .collect()
    } else {
        Vec::new()
    };
    LaurentCheckReport {
        depth,
        seeds_visited: seen.len(),
        mutations,
        cluster_variables: variables.len(),
        max_terms,
        max_coefficient_digits,
        laurent_violations: violations,
        positivity_counterexamples,
        positivity_checked: check_positivity,
    }
}
