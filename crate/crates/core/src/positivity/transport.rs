use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::wiring::{join_indices, move_path, LocalMove, WiringDiagram};
use super::PositivityError;
use crate::quiver::{Quiver, Vertex};

fn chamber_vertex(set: &[usize], frozen: bool) -> Vertex {
    let id = format!("D{}", join_indices(set));
    let label = format!("Δ{}", join_indices(set));
    let v = if frozen { Vertex::frozen(id) } else { Vertex::mutable(id) };
    v.with_label(label)
}

/// The quiver on the chambers of the snake diagram. Writing `[i, j]` for the
/// interval chamber, rows are indexed by the interval length `k`; within a
/// row arrows point left (`[i+1, i+k] -> [i, i+k-1]`), and between rows
/// they run up-right (`[i, i+k-1] -> [i, i+k]`) and down-right
/// (`[i, i+k] -> [i+1, i+k]`). Arrows between two frozen chambers, those
/// whose interval touches 1 or n, are left out.
pub fn snake_quiver(n: usize) -> Quiver {
    assert!(n >= 2, "need at least two lines");
    let interval = |i: usize, k: usize| -> Vec<usize> { (i..i + k).collect() };
    let frozen = |i: usize, k: usize| i == 1 || i + k - 1 == n;
    let mut vertices = Vec::new();
    for k in 1..n {
        for i in 1..=n - k + 1 {
            vertices.push(chamber_vertex(&interval(i, k), frozen(i, k)));
        }
    }
    let mut arrows: Vec<(String, String, u32)> = Vec::new();
    let mut push = |a: (usize, usize), b: (usize, usize)| {
        if frozen(a.0, a.1) && frozen(b.0, b.1) {
            return;
        }
        let id = |(i, k): (usize, usize)| format!("D{}", join_indices(&interval(i, k)));
        arrows.push((id(a), id(b), 1));
    };
    for k in 1..n {
        for i in 1..=n - k {
            push((i + 1, k), (i, k));
        }
    }
    for k in 1..n - 1 {
        for i in 1..=n - k {
            push((i, k), (i, k + 1));
            push((i, k + 1), (i + 1, k));
        }
    }
    Quiver::new(vertices, arrows).expect("snake quiver is valid")
}

/// Mutation at the flipped chamber, followed by renaming it to the chamber
/// that replaces it.
fn transport_step(q: &Quiver, mv: &LocalMove) -> Result<Quiver, PositivityError> {
    let old = format!("D{}", join_indices(&mv.old));
    let v = chamber_vertex(&mv.new, false);
    let mutated = q
        .mutate(&old)
        .map_err(|e| PositivityError::InvalidMove(format!("cannot mutate at {old}: {e}")))?;
    mutated
        .relabel(&old, &v.id, &v.label)
        .map_err(|e| PositivityError::InvalidMove(e.to_string()))
}

/// Follows `moves` from the snake diagram, mutating the snake quiver at each
/// flipped chamber. Returns the final diagram and its quiver.
pub fn transport_quiver(
    start: &WiringDiagram,
    moves: &[LocalMove],
) -> Result<(WiringDiagram, Quiver), PositivityError> {
    let n = start.n();
    if !start.same_arrangement(&WiringDiagram::snake(n)) {
        return Err(PositivityError::InvalidWord("transport starts from the snake diagram".into()));
    }
    let mut w = start.clone();
    let mut q = snake_quiver(n);
    for mv in moves {
        let mv = w.resolve_move(mv)?;
        q = transport_step(&q, &mv)?;
        w = w.apply_local_move(&mv)?;
    }
    Ok((w, q))
}

/// The quiver of any arrangement, transported along a shortest move path
/// from the snake diagram.
pub fn quiver_for_diagram(w: &WiringDiagram) -> Result<Quiver, PositivityError> {
    let snake = WiringDiagram::snake(w.n());
    let path = move_path(&snake, w)?;
    Ok(transport_quiver(&snake, &path)?.1)
}

/// Outcome of checking every local move between commutation classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportAudit {
    pub n: usize,
    pub classes: usize,
    pub moves_checked: usize,
    /// `(class word, move)` pairs where mutation disagreed with the quiver
    /// already assigned to the target class.
    pub mismatches: Vec<(Vec<usize>, LocalMove)>,
    /// Classes whose quiver vertices differ from their chamber sets.
    pub vertex_mismatches: Vec<Vec<usize>>,
}

impl TransportAudit {
    pub fn path_independent(&self) -> bool {
        self.mismatches.is_empty() && self.vertex_mismatches.is_empty()
    }
}

/// Assigns a quiver to every commutation class by transport along a BFS
/// tree from the snake diagram, then checks every local move out of every
/// class against that assignment. All edges agreeing means any two move
/// paths to the same arrangement give the same quiver.
pub fn audit_transport(n: usize) -> TransportAudit {
    let snake = WiringDiagram::snake(n);
    let mut assigned: BTreeMap<Vec<usize>, (WiringDiagram, Quiver)> = BTreeMap::new();
    assigned.insert(snake.commutation_key(), (snake.clone(), snake_quiver(n)));
    let mut queue = VecDeque::from([snake.commutation_key()]);
    let mut moves_checked = 0;
    let mut mismatches = Vec::new();
    while let Some(key) = queue.pop_front() {
        let (w, q) = assigned[&key].clone();
        for mv in w.local_moves() {
            moves_checked += 1;
            let next = w.apply_local_move(&mv).expect("listed moves apply");
            let nq = transport_step(&q, &mv).expect("chamber vertices exist");
            let nk = next.commutation_key();
            match assigned.get(&nk) {
                Some((_, existing)) => {
                    if existing != &nq {
                        mismatches.push((key.clone(), mv));
                    }
                }
                None => {
                    assigned.insert(nk.clone(), (next, nq));
                    queue.push_back(nk);
                }
            }
        }
    }
    let vertex_mismatches = assigned
        .iter()
        .filter(|(_, (w, q))| {
            let mut ids: Vec<String> = q.vertices().iter().map(|v| v.id.clone()).collect();
            let mut expected: Vec<String> = w.chambers().iter().map(|c| c.id()).collect();
            ids.sort();
            expected.sort();
            ids != expected
                || w.chambers().iter().any(|c| q.vertex(&c.id()).map(|v| v.frozen) != Some(!c.bounded))
        })
        .map(|(k, _)| k.clone())
        .collect();
    TransportAudit { n, classes: assigned.len(), moves_checked, mismatches, vertex_mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_snakes() {
        let q2 = snake_quiver(2);
        assert_eq!(q2.len(), 2);
        assert_eq!(q2.arrows().count(), 0);
        let q3 = snake_quiver(3);
        assert_eq!(q3.len(), 5);
        assert_eq!(q3.mutable_ids().collect::<Vec<_>>(), ["D2"]);
    }

    #[test]
    fn snake_four() {
        let q = snake_quiver(4);
        assert_eq!(q.len(), 9);
        assert_eq!(q.arrows().count(), 11);
        assert_eq!(q.mutable_ids().collect::<Vec<_>>(), ["D2", "D23", "D3"]);
        for (a, b) in [
            ("D2", "D1"),
            ("D3", "D2"),
            ("D4", "D3"),
            ("D23", "D12"),
            ("D34", "D23"),
            ("D2", "D23"),
            ("D3", "D34"),
            ("D23", "D234"),
            ("D12", "D2"),
            ("D23", "D3"),
            ("D123", "D23"),
        ] {
            assert_eq!(q.multiplicity(a, b), 1, "{a} -> {b}");
        }
        assert_eq!(q.vertex("D23").unwrap().label, "Δ23");
    }

    #[test]
    fn one_move_from_the_snake() {
        let s = WiringDiagram::snake(4);
        let mv = s.local_moves().into_iter().find(|m| m.old == vec![2]).unwrap();
        let (_, q) = transport_quiver(&s, &[mv]).unwrap();
        let expected = [
            ("D1", "D13"),
            ("D13", "D3"),
            ("D4", "D3"),
            ("D34", "D23"),
            ("D23", "D13"),
            ("D3", "D34"),
            ("D23", "D234"),
            ("D13", "D12"),
            ("D123", "D23"),
            ("D3", "D1"),
        ];
        let mut got: Vec<(String, String)> = q
            .arrows()
            .map(|(a, b, m)| {
                assert_eq!(m, 1);
                (a.id.clone(), b.id.clone())
            })
            .collect();
        let mut want: Vec<(String, String)> =
            expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(q.vertex("D13").unwrap().label, "Δ13");
        assert!(!q.vertex("D13").unwrap().frozen);
    }

    #[test]
    fn empty_transport_is_the_snake() {
        let s = WiringDiagram::snake(4);
        assert_eq!(transport_quiver(&s, &[]).unwrap().1, snake_quiver(4));
        let other = WiringDiagram::new(4, vec![2, 1, 2, 3, 2, 1]).unwrap();
        assert!(transport_quiver(&other, &[]).is_err());
    }

    #[test]
    fn audits_pass() {
        for n in 3..=5 {
            let a = audit_transport(n);
            assert!(a.path_independent(), "n = {n}: {a:?}");
        }
        assert_eq!(audit_transport(4).classes, 8);
    }
}
