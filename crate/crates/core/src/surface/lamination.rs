//! Laminations by boundary-to-boundary curves and their shear coordinates.
//!
//! Sign conventions: take the quadrilateral `(p, q, r, s)` around
//! `d = p-r`, listed counterclockwise. A curve crossing from side `pq` to
//! side `rs` adds `+1`, one crossing from `qr` to `sp` adds `-1`. In the
//! extended quiver a positive coordinate gives arrows from the diagonal to
//! the lamination. With this pair the laminated quiver of the hexagon
//! triangulation `{2-4, 2-6, 4-6}` reproduces the snake quiver of the
//! 4-line wiring diagram; flipping both signs at once would also be
//! consistent.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Diagonal, SurfaceError, Triangulation};
use crate::quiver::{Quiver, QuiverError, Vertex};

/// A curve with endpoints on boundary segments `s_a` and `s_b`, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LamCurve {
    pub a: usize,
    pub b: usize,
}

impl LamCurve {
    /// Segments must be distinct and non-adjacent, otherwise the curve cuts
    /// off at most one marked point and is invisible to every diagonal.
    pub fn new(n: usize, a: usize, b: usize) -> Result<LamCurve, SurfaceError> {
        let (lo, hi) = (a.min(b), a.max(b));
        if lo < 1 || hi > n || lo == hi || hi - lo == 1 || (lo == 1 && hi == n) {
            return Err(SurfaceError::InvalidCurve(a, b));
        }
        Ok(LamCurve { a: lo, b: hi })
    }

    pub fn crosses(&self, other: &LamCurve) -> bool {
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    pub fn crosses_diagonal(&self, d: &Diagonal) -> bool {
        d.separates(self.a) != d.separates(self.b)
    }
}

impl fmt::Display for LamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s{},s{})", self.a, self.b)
    }
}

/// Every valid curve type in the `n`-gon.
pub fn all_curves(n: usize) -> Vec<LamCurve> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if let Ok(c) = LamCurve::new(n, a, b) {
                out.push(c);
            }
        }
    }
    out
}

/// A multiset of pairwise non-crossing curves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lamination {
    n: usize,
    curves: BTreeMap<LamCurve, u32>,
}

impl Lamination {
    pub fn empty(n: usize) -> Lamination {
        Lamination { n, curves: BTreeMap::new() }
    }

    pub fn new<I>(n: usize, curves: I) -> Result<Lamination, SurfaceError>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        if n < 4 {
            return Err(SurfaceError::PolygonTooSmall(n));
        }
        let mut map: BTreeMap<LamCurve, u32> = BTreeMap::new();
        for (a, b, m) in curves {
            let c = LamCurve::new(n, a, b)?;
            if m > 0 {
                *map.entry(c).or_default() += m;
            }
        }
        let keys: Vec<&LamCurve> = map.keys().collect();
        for (i, x) in keys.iter().enumerate() {
            if let Some(y) = keys[i + 1..].iter().find(|y| x.crosses(y)) {
                return Err(SurfaceError::CrossingCurves(x.to_string(), y.to_string()));
            }
        }
        Ok(Lamination { n, curves: map })
    }

    pub fn single(n: usize, a: usize, b: usize) -> Result<Lamination, SurfaceError> {
        Lamination::new(n, [(a, b, 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn curves(&self) -> impl Iterator<Item = (LamCurve, u32)> + '_ {
        self.curves.iter().map(|(c, m)| (*c, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Total number of curves counted with multiplicity.
    pub fn size(&self) -> u32 {
        self.curves.values().sum()
    }
}

impl fmt::Display for Lamination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.curves.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self
            .curves
            .iter()
            .map(|(c, m)| if *m == 1 { c.to_string() } else { format!("{m}*{c}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Named laminations, each becoming one frozen vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLamination {
    n: usize,
    entries: Vec<(String, Lamination)>,
}

impl MultiLamination {
    pub fn empty(n: usize) -> MultiLamination {
        MultiLamination { n, entries: Vec::new() }
    }

    /// Names default to `L1`, `L2`, ...
    pub fn new(n: usize, laminations: Vec<Lamination>) -> Result<MultiLamination, SurfaceError> {
        let named = laminations.into_iter().enumerate().map(|(i, l)| (format!("L{}", i + 1), l));
        MultiLamination::named(n, named.collect())
    }

    pub fn named(n: usize, entries: Vec<(String, Lamination)>) -> Result<MultiLamination, SurfaceError> {
        for (i, (name, l)) in entries.iter().enumerate() {
            if l.n != n {
                return Err(SurfaceError::DimensionMismatch { expected: n, got: l.n });
            }
            if entries[..i].iter().any(|(other, _)| other == name) {
                return Err(SurfaceError::DuplicateName(name.clone()));
            }
        }
        Ok(MultiLamination { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(String, Lamination)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Whether cyclic segment index `seg` lies on the boundary arc running
/// counterclockwise from marked point `from` to marked point `to`.
fn on_arc(seg: usize, from: usize, to: usize, n: usize) -> bool {
    (seg + n - from) % n < (to + n - from) % n
}

fn curve_contribution(c: &LamCurve, quad: (usize, usize, usize, usize), n: usize) -> i64 {
    let (p, q, r, s) = quad;
    let side = |seg: usize| -> u8 {
        if on_arc(seg, p, q, n) {
            0
        } else if on_arc(seg, q, r, n) {
            1
        } else if on_arc(seg, r, s, n) {
            2
        } else {
            3
        }
    };
    match (side(c.a), side(c.b)) {
        (0, 2) | (2, 0) => 1,
        (1, 3) | (3, 1) => -1,
        _ => 0,
    }
}

pub fn shear_coordinate(t: &Triangulation, l: &Lamination, d: &Diagonal) -> Result<i64, SurfaceError> {
    if l.n != t.n() {
        return Err(SurfaceError::DimensionMismatch { expected: t.n(), got: l.n });
    }
    let quad = t.quadrilateral(d)?;
    Ok(l.curves().map(|(c, m)| m as i64 * curve_contribution(&c, quad, t.n())).sum())
}

/// Shear coordinates in the order of `t.diagonals()`.
pub fn shear_vector(t: &Triangulation, l: &Lamination) -> Result<Vec<i64>, SurfaceError> {
    t.diagonals().iter().map(|d| shear_coordinate(t, l, d)).collect()
}

pub fn quiver_with_laminations(t: &Triangulation, ml: &MultiLamination) -> Result<Quiver, SurfaceError> {
    if ml.n != t.n() {
        return Err(SurfaceError::DimensionMismatch { expected: t.n(), got: ml.n });
    }
    let base = t.quiver();
    let mut extra = Vec::with_capacity(ml.len());
    let mut arrows = Vec::new();
    for (name, l) in &ml.entries {
        extra.push(Vertex::frozen(name.clone()));
        for (d, b) in t.diagonals().iter().zip(shear_vector(t, l)?) {
            match b.signum() {
                1 => arrows.push((d.id(), name.clone(), b as u32)),
                -1 => arrows.push((name.clone(), d.id(), (-b) as u32)),
                _ => {}
            }
        }
    }
    base.extend(extra, arrows).map_err(|e| match e {
        QuiverError::DuplicateVertex(id) => SurfaceError::DuplicateName(id),
        other => SurfaceError::InvalidTriangulation(other.to_string()),
    })
}

/// The lamination with the given shear coordinates on `t`.
///
/// Two non-crossing curves never contribute opposite signs on the same
/// diagonal (that would need endpoints on `pq`, `rs` and on `qr`, `sp`,
/// which interleave), so each chosen curve must agree in sign with the
/// target everywhere it is nonzero and can only shrink the remainder. The
/// search is a depth-first walk over curve types in a fixed order with
/// repetition, pruned by that rule and by pairwise crossing.
pub fn inverse_shear(t: &Triangulation, target: &[i64]) -> Result<Lamination, SurfaceError> {
    let dims = t.diagonals().len();
    if target.len() != dims {
        return Err(SurfaceError::DimensionMismatch { expected: dims, got: target.len() });
    }
    let n = t.n();
    let candidates: Vec<(LamCurve, Vec<i64>)> = all_curves(n)
        .into_iter()
        .map(|c| {
            let l = Lamination { n, curves: BTreeMap::from([(c, 1)]) };
            let v = shear_vector(t, &l).expect("diagonals of t");
            (c, v)
        })
        .filter(|(_, v)| v.iter().any(|&x| x != 0))
        .filter(|(_, v)| v.iter().zip(target).all(|(&x, &y)| x == 0 || (x.signum() == y.signum() && x.abs() <= y.abs())))
        .collect();

    fn dfs(
        from: usize,
        remaining: &mut [i64],
        chosen: &mut Vec<usize>,
        candidates: &[(LamCurve, Vec<i64>)],
    ) -> bool {
        if remaining.iter().all(|&x| x == 0) {
            return true;
        }
        for i in from..candidates.len() {
            let (c, v) = &candidates[i];
            let fits = v.iter().zip(remaining.iter()).all(|(&x, &y)| x == 0 || (x.signum() == y.signum() && x.abs() <= y.abs()));
            if !fits || chosen.iter().any(|&j| candidates[j].0.crosses(c)) {
                continue;
            }
            remaining.iter_mut().zip(v).for_each(|(r, x)| *r -= x);
            chosen.push(i);
            if dfs(i, remaining, chosen, candidates) {
                return true;
            }
            chosen.pop();
            remaining.iter_mut().zip(v).for_each(|(r, x)| *r += x);
        }
        false
    }

    let mut remaining = target.to_vec();
    let mut chosen = Vec::new();
    if !dfs(0, &mut remaining, &mut chosen, &candidates) {
        return Err(SurfaceError::SearchExhausted(target.to_vec()));
    }
    let mut curves: BTreeMap<LamCurve, u32> = BTreeMap::new();
    for i in chosen {
        *curves.entry(candidates[i].0).or_default() += 1;
    }
    Ok(Lamination { n, curves })
}

/// Flip at `d` against mutation at `d`, with the mutated vertex renamed to
/// the new diagonal.
pub fn verify_flip_mutation(t: &Triangulation, ml: &MultiLamination, d: &Diagonal) -> Result<bool, SurfaceError> {
    let (flipped, new) = t.flip(d)?;
    let after = quiver_with_laminations(&flipped, ml)?;
    let mutated = quiver_with_laminations(t, ml)?
        .mutate(&d.id())
        .and_then(|q| q.relabel(&d.id(), &new.id(), &new.id()))
        .map_err(|e| SurfaceError::InvalidTriangulation(e.to_string()))?;
    Ok(after == mutated)
}
