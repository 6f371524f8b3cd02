use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{cluster_variables, frozen_variables, Enumeration, ExchangeGraph, Seed, SeedError};
use crate::laurent::{LaurentPoly, VarTable};
use crate::quiver::{Quiver, QuiverJson};

/// Wire form of a seed. Without `variables` the seed is the initial one of
/// its quiver; `var_table` defaults to the names the initial seed would use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub quiver: QuiverJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var_table: Option<Vec<String>>,
    /// Vertex id to rendered Laurent polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<BTreeMap<String, String>>,
}

impl From<&Seed> for SeedJson {
    fn from(s: &Seed) -> Self {
        SeedJson {
            quiver: QuiverJson::from(s.quiver()),
            var_table: Some(s.vars().names().to_vec()),
            variables: Some(
                s.extended_cluster()
                    .map(|(id, p)| (id.to_owned(), p.to_string()))
                    .collect(),
            ),
        }
    }
}

impl TryFrom<SeedJson> for Seed {
    type Error = SeedError;

    fn try_from(j: SeedJson) -> Result<Seed, SeedError> {
        let q = Quiver::try_from(j.quiver)?;
        let initial = Seed::initial(&q);
        let vars = match j.var_table {
            Some(names) => VarTable::new(names)?,
            None => initial.vars().clone(),
        };
        let Some(texts) = j.variables else {
            if vars.names() != initial.vars().names() {
                let attach = q
                    .vertices()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.id.clone(), LaurentPoly::var(&vars, i)))
                    .collect();
                if vars.len() != q.len() {
                    return Err(crate::laurent::LaurentError::ArityMismatch {
                        expected: q.len(),
                        got: vars.len(),
                    }
                    .into());
                }
                return Seed::from_parts(q, vars, attach);
            }
            return Ok(initial);
        };
        let mut attach = BTreeMap::new();
        for (id, text) in texts {
            attach.insert(id, LaurentPoly::parse(&vars, &text)?);
        }
        Seed::from_parts(q, vars, attach)
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeedJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Seed::try_from(SeedJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub from_vertex: String,
    pub to_vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeGraphJson {
    pub complete: bool,
    pub seeds: Vec<SeedJson>,
    pub edges: Vec<EdgeJson>,
    pub cluster_variables: Vec<String>,
    pub frozen_variables: Vec<String>,
}

impl From<&Enumeration> for ExchangeGraphJson {
    fn from(e: &Enumeration) -> Self {
        let g = e.graph();
        ExchangeGraphJson {
            complete: e.is_complete(),
            seeds: g.seeds.iter().map(SeedJson::from).collect(),
            edges: g
                .edges
                .iter()
                .map(|x| EdgeJson {
                    from: x.from,
                    to: x.to,
                    from_vertex: x.from_vertex.clone(),
                    to_vertex: x.to_vertex.clone(),
                })
                .collect(),
            cluster_variables: cluster_variables(g).iter().map(ToString::to_string).collect(),
            frozen_variables: frozen_variables(g).iter().map(ToString::to_string).collect(),
        }
    }
}

impl ExchangeGraph {
    /// Graphviz rendering. Nodes are labelled by their sorted cluster
    /// variables, edges by the mutated vertex on each side.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for (i, s) in self.seeds.iter().enumerate() {
            let mut cl: Vec<String> = s.cluster().iter().map(|p| p.to_string()).collect();
            cl.sort();
            let _ = writeln!(out, "  s{i} [label=\"{}\"];", escape(&cl.join("\\n")));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  s{} -- s{} [label=\"{}/{}\"];",
                e.from,
                e.to,
                escape(&e.from_vertex),
                escape(&e.to_vertex)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog::*;
    use crate::seed::enumerate_exchange_graph;

    #[test]
    fn seed_round_trip() {
        let s = Seed::initial(&five_vertex_example()).mutate("z").unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: Seed = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn bare_quiver_gives_initial_seed() {
        let q = path(2);
        let j = SeedJson { quiver: QuiverJson::from(&q), var_table: None, variables: None };
        assert_eq!(Seed::try_from(j).unwrap(), Seed::initial(&q));
    }

    #[test]
    fn custom_names() {
        let q = path(2);
        let j = SeedJson {
            quiver: QuiverJson::from(&q),
            var_table: Some(vec!["a".into(), "b".into()]),
            variables: None,
        };
        let s = Seed::try_from(j).unwrap();
        assert_eq!(s.attachment("2").unwrap().to_string(), "b");
    }

    #[test]
    fn bad_polynomial_is_rejected() {
        let q = path(1);
        let j = SeedJson {
            quiver: QuiverJson::from(&q),
            var_table: None,
            variables: Some([("1".to_string(), "y".to_string())].into()),
        };
        assert_eq!(Seed::try_from(j).unwrap_err().code(), "UnknownVariable");
    }

    #[test]
    fn graph_exports() {
        let e = enumerate_exchange_graph(&Seed::initial(&path(2)), 100).unwrap();
        let j = ExchangeGraphJson::from(&e);
        assert!(j.complete);
        assert_eq!(j.seeds.len(), 5);
        assert_eq!(j.edges.len(), 5);
        let dot = e.graph().to_dot();
        assert!(dot.starts_with("graph exchange {\n  s0 [label=\"x1\\nx2\"];"));
        assert_eq!(dot.matches(" -- ").count(), 5);
    }
}
