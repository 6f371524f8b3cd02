use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub frozen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub from: String,
    pub to: String,
    pub mult: u32,
}

/// Wire form of a quiver. Serialization lists vertices by id and arrows
/// lexicographically by `(from, to)`, so output is byte-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub arrows: Vec<ArrowJson>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        let vertices = q
            .vertices()
            .iter()
            .map(|v| VertexJson { id: v.id.clone(), label: Some(v.label.clone()), frozen: v.frozen })
            .collect();
        let mut arrows: Vec<ArrowJson> = q
            .arrows()
            .map(|(u, v, m)| ArrowJson { from: u.id.clone(), to: v.id.clone(), mult: m })
            .collect();
        arrows.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
        QuiverJson { vertices, arrows }
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> Self {
        QuiverJson::from(&q)
    }
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = QuiverError;

    fn try_from(j: QuiverJson) -> Result<Self, Self::Error> {
        let vertices = j
            .vertices
            .into_iter()
            .map(|v| Vertex { label: v.label.unwrap_or_else(|| v.id.clone()), id: v.id, frozen: v.frozen })
            .collect();
        Quiver::new(vertices, j.arrows.into_iter().map(|a| (a.from, a.to, a.mult)))
    }
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuiverJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = QuiverJson::deserialize(d)?;
        Quiver::try_from(j).map_err(serde::de::Error::custom)
    }
}
