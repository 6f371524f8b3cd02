//! Triangulations of a convex polygon, flips, and their quivers.
//!
//! Marked points are `1..n` counterclockwise and the boundary segment `s_k`
//! runs from `k` to `k + 1` (with `s_n` from `n` back to `1`). A diagonal is
//! stored with its smaller endpoint first.

mod json;
mod lamination;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{Quiver, Vertex};

pub use json::{LaminationJson, MultiLaminationJson, TriangulationJson};
pub use lamination::{
    all_curves, inverse_shear, quiver_with_laminations, shear_coordinate, shear_vector,
    verify_flip_mutation, LamCurve, Lamination, MultiLamination,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("a polygon needs at least 4 marked points, got {0}")]
    PolygonTooSmall(usize),
    #[error("{0}-{1} is not a diagonal")]
    InvalidDiagonal(usize, usize),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("diagonal {0} is not in the triangulation")]
    NotInTriangulation(String),
    #[error("invalid curve between segments {0} and {1}")]
    InvalidCurve(usize, usize),
    #[error("curves {0} and {1} cross")]
    CrossingCurves(String, String),
    #[error("no lamination has shear vector {0:?}")]
    SearchExhausted(Vec<i64>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate lamination name `{0}`")]
    DuplicateName(String),
}

impl SurfaceError {
    pub fn code(&self) -> &'static str {
        match self {
            SurfaceError::PolygonTooSmall(_) => "PolygonTooSmall",
            SurfaceError::InvalidDiagonal(..) => "InvalidDiagonal",
            SurfaceError::InvalidTriangulation(_) => "InvalidTriangulation",
            SurfaceError::NotInTriangulation(_) => "NotInTriangulation",
            SurfaceError::InvalidCurve(..) => "InvalidCurve",
            SurfaceError::CrossingCurves(..) => "CrossingCurves",
            SurfaceError::SearchExhausted(_) => "SearchExhausted",
            SurfaceError::DimensionMismatch { .. } => "DimensionMismatch",
            SurfaceError::DuplicateName(_) => "DuplicateName",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal(pub usize, pub usize);

impl Diagonal {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Diagonal, SurfaceError> {
        let (a, b) = (i.min(j), i.max(j));
        let adjacent = b - a == 1 || (a == 1 && b == n);
        if a < 1 || b > n || a == b || adjacent {
            return Err(SurfaceError::InvalidDiagonal(i, j));
        }
        Ok(Diagonal(a, b))
    }

    /// Quiver vertex id, e.g. `d1_4`.
    pub fn id(&self) -> String {
        format!("d{}_{}", self.0, self.1)
    }

    pub fn crosses(&self, other: &Diagonal) -> bool {
        let (a, b, c, d) = (self.0, self.1, other.0, other.1);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    /// Segments `s_a .. s_{b-1}`: the boundary arc from `a` to `b`
    /// counterclockwise. The remaining segments form the other side.
    pub fn separates(&self, seg: usize) -> bool {
        self.0 <= seg && seg < self.1
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<Diagonal>,
}

impl Triangulation {
    pub fn new(n: usize, diagonals: Vec<Diagonal>) -> Result<Triangulation, SurfaceError> {
        if n < 4 {
            return Err(SurfaceError::PolygonTooSmall(n));
        }
        let mut ds = Vec::with_capacity(diagonals.len());
        for d in diagonals {
            ds.push(Diagonal::new(n, d.0, d.1)?);
        }
        ds.sort_unstable();
        ds.dedup();
        if ds.len() != n - 3 {
            return Err(SurfaceError::InvalidTriangulation(format!(
                "expected {} distinct diagonals, got {}",
                n - 3,
                ds.len()
            )));
        }
        for (i, a) in ds.iter().enumerate() {
            if let Some(b) = ds[i + 1..].iter().find(|b| a.crosses(b)) {
                return Err(SurfaceError::InvalidTriangulation(format!("{a} crosses {b}")));
            }
        }
        Ok(Triangulation { n, diagonals: ds })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Triangulation, SurfaceError> {
        Triangulation::new(n, pairs.iter().map(|&(i, j)| Diagonal(i.min(j), i.max(j))).collect())
    }

    /// All diagonals from vertex 1.
    pub fn fan(n: usize) -> Triangulation {
        Triangulation::new(n, (3..n).map(|j| Diagonal(1, j)).collect()).expect("fan is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.binary_search(d).is_ok()
    }

    fn is_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        b - a == 1 || (a == 1 && b == self.n) || self.contains(&Diagonal(a, b))
    }

    /// The `n - 2` triangles, each as increasing (hence counterclockwise)
    /// vertex triples.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::with_capacity(n - 2);
        for a in 1..=n {
            for b in a + 1..=n {
                if !self.is_edge(a, b) {
                    continue;
                }
                for c in b + 1..=n {
                    if self.is_edge(b, c) && self.is_edge(a, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// The quadrilateral around `d = p-r` as `(p, q, r, s)` counterclockwise.
    pub fn quadrilateral(&self, d: &Diagonal) -> Result<(usize, usize, usize, usize), SurfaceError> {
        if !self.contains(d) {
            return Err(SurfaceError::NotInTriangulation(d.to_string()));
        }
        let (p, r) = (d.0, d.1);
        // Every 3-cycle of edges in a triangulated convex polygon is a face,
        // so each side of the chord has exactly one common neighbour.
        let apex = |x: &usize| *x != p && *x != r && self.is_edge(p, *x) && self.is_edge(r, *x);
        let q = (p + 1..r).find(apex);
        let s = (r + 1..=self.n).chain(1..p).find(apex);
        match (q, s) {
            (Some(q), Some(s)) => Ok((p, q, r, s)),
            _ => Err(SurfaceError::InvalidTriangulation(format!("no quadrilateral around {d}"))),
        }
    }

    /// Replaces `d` by the other diagonal of its quadrilateral.
    pub fn flip(&self, d: &Diagonal) -> Result<(Triangulation, Diagonal), SurfaceError> {
        let (_, q, _, s) = self.quadrilateral(d)?;
        let new = Diagonal(q.min(s), q.max(s));
        let mut ds: Vec<Diagonal> = self.diagonals.iter().copied().filter(|x| x != d).collect();
        ds.push(new);
        ds.sort_unstable();
        Ok((Triangulation { n: self.n, diagonals: ds }, new))
    }

    /// All diagonals mutable, one arrow per pair of diagonal sides of a
    /// triangle, pointing from a side to the next one clockwise.
    pub fn quiver(&self) -> Quiver {
        let vertices = self.diagonals.iter().map(|d| Vertex::mutable(d.id())).collect();
        let mut arrows = Vec::new();
        for (a, b, c) in self.triangles() {
            // Clockwise around a counterclockwise triangle (a, b, c):
            // side ac, then cb, then ba.
            let sides = [(a, c), (b, c), (a, b)];
            for k in 0..3 {
                let (x, y) = (sides[k], sides[(k + 1) % 3]);
                let dx = Diagonal(x.0, x.1);
                let dy = Diagonal(y.0, y.1);
                if self.contains(&dx) && self.contains(&dy) {
                    arrows.push((dx.id(), dy.id(), 1));
                }
            }
        }
        Quiver::new(vertices, arrows).expect("triangulation quivers are valid")
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(ToString::to_string).collect();
        write!(f, "n={} {{{}}}", self.n, parts.join(", "))
    }
}

pub fn quiver_of_triangulation(t: &Triangulation) -> Quiver {
    t.quiver()
}

/// Every triangulation of the `n`-gon, sorted.
pub fn triangulations(n: usize) -> Result<Vec<Triangulation>, SurfaceError> {
    if n < 4 {
        return Err(SurfaceError::PolygonTooSmall(n));
    }
    // Triangulations of the sub-polygon on consecutive vertices lo..=hi.
    fn go(lo: usize, hi: usize, memo: &mut HashMap<(usize, usize), Vec<Vec<Diagonal>>>) -> Vec<Vec<Diagonal>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        if let Some(r) = memo.get(&(lo, hi)) {
            return r.clone();
        }
        let mut out = Vec::new();
        for apex in lo + 1..hi {
            for left in go(lo, apex, memo) {
                for right in go(apex, hi, memo) {
                    let mut ds = left.clone();
                    ds.extend_from_slice(&right);
                    if apex - lo > 1 {
                        ds.push(Diagonal(lo, apex));
                    }
                    if hi - apex > 1 {
                        ds.push(Diagonal(apex, hi));
                    }
                    out.push(ds);
                }
            }
        }
        memo.insert((lo, hi), out.clone());
        out
    }
    let mut memo = HashMap::new();
    let set: BTreeSet<Triangulation> = go(1, n, &mut memo)
        .into_iter()
        .map(|mut ds| {
            ds.sort_unstable();
            Triangulation { n, diagonals: ds }
        })
        .collect();
    Ok(set.into_iter().collect())
}

/// Triangulations and the flips between them (`i < j`, listed once).
pub fn flip_graph(n: usize) -> Result<(Vec<Triangulation>, Vec<(usize, usize)>), SurfaceError> {
    let ts = triangulations(n)?;
    let index: HashMap<&Triangulation, usize> = ts.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        for d in t.diagonals() {
            let (u, _) = t.flip(d)?;
            let j = index[&u];
            if i < j {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    Ok((ts, edges))
}
