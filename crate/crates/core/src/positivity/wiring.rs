//! Pseudoline arrangements as reduced words for the longest permutation.
//!
//! Positions are numbered 1..n from the bottom. Letter `i` crosses the two
//! lines currently at positions `i` and `i + 1`. Lines are named by the
//! position they start at on the left, so the region left of every crossing
//! at level `i` (between positions `i` and `i + 1`) lies above `{1..i}`, and
//! the region right of the last one lies above `{n-i+1..n}`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PositivityError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WiringDiagram {
    n: usize,
    word: Vec<usize>,
}

/// A region of the arrangement with the set of lines passing below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chamber {
    pub index_set: Vec<usize>,
    pub bounded: bool,
}

impl Chamber {
    /// Vertex id used in quivers: `D` followed by the indices, separated by
    /// `_` once any index has two digits.
    pub fn id(&self) -> String {
        format!("D{}", join_indices(&self.index_set))
    }

    pub fn label(&self) -> String {
        format!("Δ{}", join_indices(&self.index_set))
    }
}

pub(crate) fn join_indices(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(ToString::to_string).collect();
    if set.iter().all(|&i| i < 10) {
        parts.concat()
    } else {
        parts.join("_")
    }
}

/// A braid move at the bounded triangle sitting at `level` between the
/// crossings at word positions `first` and `second` (zero-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalMove {
    pub level: usize,
    pub first: usize,
    pub second: usize,
    /// Index set of the chamber that disappears.
    pub old: Vec<usize>,
    /// Index set of the chamber that replaces it.
    pub new: Vec<usize>,
}

/// The six chambers around a triangle: `e * f = a * c + b * d`, with `e` the
/// chamber before the move and `f` the one after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeSets {
    pub e: Vec<usize>,
    pub f: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

impl WiringDiagram {
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self, PositivityError> {
        if n < 1 {
            return Err(PositivityError::InvalidWord("need at least one line".into()));
        }
        if word.len() != n * (n - 1) / 2 {
            return Err(PositivityError::InvalidWord(format!(
                "expected {} crossings, got {}",
                n * (n - 1) / 2,
                word.len()
            )));
        }
        let mut lines: Vec<usize> = (1..=n).collect();
        for (p, &i) in word.iter().enumerate() {
            if i < 1 || i >= n {
                return Err(PositivityError::InvalidWord(format!("letter {i} at {p} is out of range")));
            }
            let (lo, hi) = (lines[i - 1], lines[i]);
            if lo > hi {
                return Err(PositivityError::InvalidWord(format!(
                    "lines {hi} and {lo} cross twice (second time at {p})"
                )));
            }
            lines.swap(i - 1, i);
        }
        Ok(WiringDiagram { n, word })
    }

    /// `(1)(2 1)(3 2 1)...(n-1 ... 1)`, whose chambers are all intervals.
    pub fn snake(n: usize) -> Self {
        let word = (1..n).flat_map(|j| (1..=j).rev()).collect();
        WiringDiagram::new(n, word).expect("snake word is reduced")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Line order (bottom to top) before the crossing at `upto`.
    fn lines_before(&self, upto: usize) -> Vec<usize> {
        let mut lines: Vec<usize> = (1..=self.n).collect();
        for &i in &self.word[..upto] {
            lines.swap(i - 1, i);
        }
        lines
    }

    /// Regions level by level: for each level, the index sets left to right.
    fn regions(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.n;
        let mut lines: Vec<usize> = (1..=n).collect();
        let below = |lines: &[usize], i: usize| {
            let mut s: Vec<usize> = lines[..i].to_vec();
            s.sort_unstable();
            s
        };
        let mut out: Vec<Vec<Vec<usize>>> = (0..n).map(|i| vec![below(&lines, i)]).collect();
        for &i in &self.word {
            lines.swap(i - 1, i);
            out[i].push(below(&lines, i));
        }
        out
    }

    /// All chambers, sorted by size and then lexicographically. There are
    /// `(n-1)(n+2)/2` of them, `2(n-1)` unbounded.
    pub fn chambers(&self) -> Vec<Chamber> {
        let mut out: Vec<Chamber> = Vec::new();
        for level in self.regions().into_iter().skip(1) {
            let last = level.len() - 1;
            for (k, set) in level.into_iter().enumerate() {
                let bounded = k != 0 && k != last;
                if !out.iter().any(|c| c.index_set == set) {
                    out.push(Chamber { index_set: set, bounded });
                }
            }
        }
        out.sort_by(|a, b| (a.index_set.len(), &a.index_set).cmp(&(b.index_set.len(), &b.index_set)));
        out
    }

    /// Braid moves available without changing the commutation class first.
    /// A bounded chamber at level `i` between consecutive `i`-crossings is a
    /// triangle exactly when one crossing at level `i - 1` or `i + 1` lies
    /// between them; every other letter in that stretch commutes with `i`.
    pub fn local_moves(&self) -> Vec<LocalMove> {
        let regions = self.regions();
        let mut moves = Vec::new();
        for i in 1..self.n {
            let at: Vec<usize> = (0..self.word.len()).filter(|&p| self.word[p] == i).collect();
            for (k, w) in at.windows(2).enumerate() {
                let (a, c) = (w[0], w[1]);
                let mids: Vec<usize> = (a + 1..c).filter(|&p| self.word[p].abs_diff(i) == 1).collect();
                if mids.len() != 1 {
                    continue;
                }
                let old = regions[i][k + 1].clone();
                let mut mv = LocalMove { level: i, first: a, second: c, old, new: Vec::new() };
                let (next, _) = self.rewrite(&mv, mids[0]);
                let new_chambers: BTreeSet<Vec<usize>> =
                    next.chambers().into_iter().map(|c| c.index_set).collect();
                let old_chambers: BTreeSet<Vec<usize>> =
                    self.chambers().into_iter().map(|c| c.index_set).collect();
                let mut fresh = new_chambers.difference(&old_chambers);
                mv.new = fresh.next().expect("a braid move changes one chamber").clone();
                debug_assert!(fresh.next().is_none());
                moves.push(mv);
            }
        }
        moves.sort();
        moves
    }

    // Commutes the stretch between the two `i`-crossings outwards so that
    // `i j i` is contiguous, then swaps it for `j i j`. Returns the new
    // diagram and the word position where the new triple starts.
    fn rewrite(&self, mv: &LocalMove, b: usize) -> (WiringDiagram, usize) {
        let (a, c) = (mv.first, mv.second);
        let i = mv.level;
        let j = self.word[b];
        let mut word = Vec::with_capacity(self.word.len());
        word.extend_from_slice(&self.word[..a]);
        word.extend_from_slice(&self.word[a + 1..b]);
        let start = word.len();
        word.extend_from_slice(&[j, i, j]);
        word.extend_from_slice(&self.word[b + 1..c]);
        word.extend_from_slice(&self.word[c + 1..]);
        (WiringDiagram::new(self.n, word).expect("braid move keeps the word reduced"), start)
    }

    fn locate(&self, mv: &LocalMove) -> Result<usize, PositivityError> {
        let ok = mv.first < mv.second
            && mv.second < self.word.len()
            && self.word[mv.first] == mv.level
            && self.word[mv.second] == mv.level
            && !self.word[mv.first + 1..mv.second].contains(&mv.level);
        let mids: Vec<usize> = if ok {
            (mv.first + 1..mv.second)
                .filter(|&p| self.word[p].abs_diff(mv.level) == 1)
                .collect()
        } else {
            Vec::new()
        };
        if mids.len() != 1 {
            return Err(PositivityError::InvalidMove(format!(
                "no triangle at level {} between positions {} and {}",
                mv.level, mv.first, mv.second
            )));
        }
        Ok(mids[0])
    }

    /// The move of this diagram at the same level and positions as `mv`.
    /// Empty `old`/`new` sets in `mv` act as wildcards; given ones must match.
    pub fn resolve_move(&self, mv: &LocalMove) -> Result<LocalMove, PositivityError> {
        self.locate(mv)?;
        let found = self
            .local_moves()
            .into_iter()
            .find(|m| (m.level, m.first, m.second) == (mv.level, mv.first, mv.second))
            .expect("located triangles are listed");
        if (!mv.old.is_empty() && mv.old != found.old) || (!mv.new.is_empty() && mv.new != found.new) {
            return Err(PositivityError::InvalidMove(format!(
                "the move at level {} flips {:?} into {:?}",
                found.level, found.old, found.new
            )));
        }
        Ok(found)
    }

    /// Applies a move of this diagram (see [`Self::resolve_move`]).
    pub fn apply_local_move(&self, mv: &LocalMove) -> Result<WiringDiagram, PositivityError> {
        let mv = self.resolve_move(mv)?;
        let b = self.locate(&mv)?;
        Ok(self.rewrite(&mv, b).0)
    }

    /// The index sets entering the three-term relation for `mv`.
    ///
    /// Just before the triangle the three lines involved sit at positions
    /// `m, m+1, m+2` in increasing order `α < β < γ` (none of them has
    /// crossed another yet), with the set `S` below them. The six chambers
    /// around the triangle are then `S+β`, `S+αγ` (the flipped pair) and
    /// `S+α`, `S+βγ`, `S+αβ`, `S+γ`.
    pub fn exchange_sets(&self, mv: &LocalMove) -> Result<ExchangeSets, PositivityError> {
        let mv = &self.resolve_move(mv)?;
        let b = self.locate(mv)?;
        let (next, start) = self.rewrite(mv, b);
        let lines = next.lines_before(start);
        let m = mv.level.min(self.word[b]);
        let s: Vec<usize> = lines[..m - 1].to_vec();
        let (al, be, ga) = (lines[m - 1], lines[m], lines[m + 1]);
        debug_assert!(al < be && be < ga);
        let with = |extra: &[usize]| {
            let mut v = s.clone();
            v.extend_from_slice(extra);
            v.sort_unstable();
            v
        };
        let (e, f) = (with(&[be]), with(&[al, ga]));
        let (e, f) = if e == mv.old { (e, f) } else { (f, e) };
        Ok(ExchangeSets {
            e,
            f,
            a: with(&[al]),
            b: with(&[ga]),
            c: with(&[be, ga]),
            d: with(&[al, be]),
        })
    }

    /// Lexicographically smallest word obtained by commuting distant
    /// letters; equal exactly for isotopic arrangements.
    pub fn commutation_key(&self) -> Vec<usize> {
        let mut rest: Vec<usize> = self.word.clone();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            // Letters that can be commuted to the front of what remains.
            let mut best: Option<usize> = None;
            for p in 0..rest.len() {
                let x = rest[p];
                if rest[..p].iter().all(|&y| y.abs_diff(x) >= 2)
                    && best.is_none_or(|b| x < rest[b])
                {
                    best = Some(p);
                }
            }
            let p = best.expect("the first letter is always available");
            out.push(rest.remove(p));
        }
        out
    }

    pub fn same_arrangement(&self, other: &WiringDiagram) -> bool {
        self.n == other.n && self.commutation_key() == other.commutation_key()
    }

    /// The diagram with its word replaced by the commutation key.
    pub fn normalized(&self) -> WiringDiagram {
        WiringDiagram { n: self.n, word: self.commutation_key() }
    }
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(ToString::to_string).collect();
        write!(f, "n={} [{}]", self.n, parts.join(","))
    }
}

/// Every reduced word of the longest permutation on `n` lines.
pub fn all_reduced_words(n: usize) -> Vec<WiringDiagram> {
    fn go(n: usize, lines: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<WiringDiagram>) {
        if word.len() == n * (n - 1) / 2 {
            out.push(WiringDiagram { n, word: word.clone() });
            return;
        }
        for i in 1..n {
            if lines[i - 1] < lines[i] {
                lines.swap(i - 1, i);
                word.push(i);
                go(n, lines, word, out);
                word.pop();
                lines.swap(i - 1, i);
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

/// One representative (the normalized word) per commutation class.
pub fn commutation_classes(n: usize) -> Vec<WiringDiagram> {
    let set: BTreeSet<Vec<usize>> = all_reduced_words(n).iter().map(|w| w.commutation_key()).collect();
    set.into_iter().map(|word| WiringDiagram { n, word }).collect()
}

/// Shortest sequence of local moves from `from` to an arrangement isotopic
/// to `to`, searching breadth-first over commutation classes. Each move is
/// expressed on the diagram it applies to, starting with `from` itself.
pub fn move_path(from: &WiringDiagram, to: &WiringDiagram) -> Result<Vec<LocalMove>, PositivityError> {
    if from.n != to.n {
        return Err(PositivityError::DimensionMismatch { expected: from.n, got: to.n });
    }
    let target = to.commutation_key();
    let start_key = from.commutation_key();
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, LocalMove)>> = HashMap::new();
    parent.insert(start_key.clone(), None);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(w) = queue.pop_front() {
        let key = w.commutation_key();
        if key == target {
            let mut path = Vec::new();
            let mut cur = key;
            while let Some(Some((prev, mv))) = parent.get(&cur) {
                path.push(mv.clone());
                cur = prev.clone();
            }
            path.reverse();
            return Ok(path);
        }
        for mv in w.local_moves() {
            let next = w.apply_local_move(&mv)?;
            let nk = next.commutation_key();
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(nk) {
                e.insert(Some((key.clone(), mv)));
                queue.push_back(next);
            }
        }
    }
    Err(PositivityError::InvalidWord("arrangement not reachable by local moves".into()))
}

/// Chamber counts by level, handy for reports.
pub fn chambers_by_level(w: &WiringDiagram) -> BTreeMap<usize, usize> {
    w.regions()
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, r)| (i, r.len()))
        .collect()
}
