use serde::{Deserialize, Serialize};

use super::{Diagonal, Lamination, MultiLamination, SurfaceError, Triangulation};

/// `{"n": 6, "diagonals": [[1, 3], [1, 4], [1, 5]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
}

impl From<&Triangulation> for TriangulationJson {
    fn from(t: &Triangulation) -> Self {
        TriangulationJson { n: t.n(), diagonals: t.diagonals().iter().map(|d| [d.0, d.1]).collect() }
    }
}

impl TryFrom<&TriangulationJson> for Triangulation {
    type Error = SurfaceError;

    fn try_from(j: &TriangulationJson) -> Result<Self, SurfaceError> {
        let ds = j
            .diagonals
            .iter()
            .map(|[a, b]| Diagonal::new(j.n, *a, *b))
            .collect::<Result<Vec<_>, _>>()?;
        Triangulation::new(j.n, ds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub a: usize,
    pub b: usize,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub curves: Vec<CurveJson>,
}

impl LaminationJson {
    pub fn from_lamination(l: &Lamination, name: Option<String>) -> Self {
        LaminationJson {
            name,
            curves: l.curves().map(|(c, m)| CurveJson { a: c.a, b: c.b, mult: m }).collect(),
        }
    }

    pub fn to_lamination(&self, n: usize) -> Result<Lamination, SurfaceError> {
        Lamination::new(n, self.curves.iter().map(|c| (c.a, c.b, c.mult)))
    }
}

/// `{"n": 6, "laminations": [{"curves": [{"a": 1, "b": 5, "mult": 1}]}]}`,
/// with an optional `"name"` per lamination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiLaminationJson {
    pub n: usize,
    #[serde(default)]
    pub laminations: Vec<LaminationJson>,
}

impl From<&MultiLamination> for MultiLaminationJson {
    fn from(ml: &MultiLamination) -> Self {
        MultiLaminationJson {
            n: ml.n(),
            laminations: ml
                .entries()
                .iter()
                .map(|(name, l)| LaminationJson::from_lamination(l, Some(name.clone())))
                .collect(),
        }
    }
}

impl TryFrom<&MultiLaminationJson> for MultiLamination {
    type Error = SurfaceError;

    fn try_from(j: &MultiLaminationJson) -> Result<Self, SurfaceError> {
        let entries = j
            .laminations
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let name = l.name.clone().unwrap_or_else(|| format!("L{}", i + 1));
                Ok((name, l.to_lamination(j.n)?))
            })
            .collect::<Result<Vec<_>, SurfaceError>>()?;
        MultiLamination::named(j.n, entries)
    }
}
