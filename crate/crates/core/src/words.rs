//! Words over the index set, braid moves, the move graph and i-boxes.
//!
//! Letters are 0-based vertex indices. Positions (move windows, box
//! endpoints, neighbour indices) are 1-based: position `k` is `letters[k-1]`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::CartanData;
use crate::lusztig::ExponentVector;

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {0} is not in the index set")]
    LetterOutOfRange(usize),
    #[error("word is not Weyl-reduced")]
    NotReduced,
    #[error("move {0} is not applicable")]
    MoveNotApplicable(Move),
    #[error("words are not connected by moves ({explored} words explored, component exhausted: {exhausted})")]
    NotConnected { explored: usize, exhausted: bool },
    #[error("letters {0} and {1} form a pair with c_ij c_ji = 3, whose relation is not supported")]
    UnsupportedCartanPair(usize, usize),
    #[error("search budget of {0} words exhausted")]
    BudgetExhausted(usize),
    #[error("invalid i-box [{lo},{hi}]: {reason}")]
    InvalidBox { lo: usize, hi: usize, reason: String },
    #[error("position {0} out of range")]
    PositionOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordKind {
    WeylReduced,
    PositiveBraid,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
    kind: WordKind,
}

impl Word {
    pub fn new(cd: &CartanData, letters: Vec<usize>, kind: WordKind) -> Result<Self, WordError> {
        if let Some(&bad) = letters.iter().find(|&&i| i >= cd.rank()) {
            return Err(WordError::LetterOutOfRange(bad));
        }
        if kind == WordKind::WeylReduced && !cd.is_reduced(&letters) {
            return Err(WordError::NotReduced);
        }
        Ok(Word { letters, kind })
    }

    pub fn weyl(cd: &CartanData, letters: Vec<usize>) -> Result<Self, WordError> {
        Self::new(cd, letters, WordKind::WeylReduced)
    }

    pub fn braid(cd: &CartanData, letters: Vec<usize>) -> Result<Self, WordError> {
        Self::new(cd, letters, WordKind::PositiveBraid)
    }

    /// Reduced words are tagged `WeylReduced`, everything else `PositiveBraid`.
    pub fn classify(cd: &CartanData, letters: Vec<usize>) -> Result<Self, WordError> {
        let kind = if cd.is_reduced(&letters) { WordKind::WeylReduced } else { WordKind::PositiveBraid };
        Self::new(cd, letters, kind)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `k`.
    pub fn at(&self, k: usize) -> usize {
        self.letters[k - 1]
    }

    pub fn suffix(&self, from: usize) -> Word {
        Word { letters: self.letters[from - 1..].to_vec(), kind: self.kind }
    }

    pub(crate) fn with_letters(&self, letters: Vec<usize>) -> Word {
        Word { letters, kind: self.kind }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Two,
    Three,
    Four,
}

impl MoveKind {
    pub fn width(self) -> usize {
        match self {
            MoveKind::Two => 2,
            MoveKind::Three => 3,
            MoveKind::Four => 4,
        }
    }
}

/// A move acting on the window starting at 1-based position `pos`.
///
/// Serialized as `{"kind":"3","pos":1}`. Applying the same move to the
/// rewritten word undoes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MoveRepr", into = "MoveRepr")]
pub struct Move {
    pub pos: usize,
    pub kind: MoveKind,
}

impl Move {
    pub fn new(kind: MoveKind, pos: usize) -> Self {
        Move { pos, kind }
    }

    pub fn window(&self) -> std::ops::RangeInclusive<usize> {
        self.pos..=self.pos + self.kind.width() - 1
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            MoveKind::Two => "Two",
            MoveKind::Three => "Three",
            MoveKind::Four => "Four",
        };
        write!(f, "{name}@{}", self.pos)
    }
}

#[derive(Serialize, Deserialize)]
struct MoveRepr {
    kind: String,
    pos: usize,
}

impl From<Move> for MoveRepr {
    fn from(m: Move) -> Self {
        MoveRepr { kind: m.kind.width().to_string(), pos: m.pos }
    }
}

impl TryFrom<MoveRepr> for Move {
    type Error = String;

    fn try_from(r: MoveRepr) -> Result<Self, String> {
        let kind = match r.kind.as_str() {
            "2" => MoveKind::Two,
            "3" => MoveKind::Three,
            "4" => MoveKind::Four,
            other => return Err(format!("unknown move kind {other:?}")),
        };
        if r.pos == 0 {
            return Err("move positions are 1-based".into());
        }
        Ok(Move { pos: r.pos, kind })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveScan {
    pub moves: Vec<Move>,
    /// Start positions of `(i j i j i j)` windows with `c_ij c_ji = 3`.
    pub unsupported: Vec<usize>,
}

fn alternates(window: &[usize]) -> bool {
    window[0] != window[1] && window.iter().enumerate().all(|(t, &x)| x == window[t % 2])
}

/// Whether `m` can be applied to `letters`.
pub fn move_applies(cd: &CartanData, letters: &[usize], m: Move) -> bool {
    let width = m.kind.width();
    if m.pos == 0 || m.pos + width - 1 > letters.len() {
        return false;
    }
    let window = &letters[m.pos - 1..m.pos - 1 + width];
    if !alternates(window) {
        return false;
    }
    let bond = cd.bond(window[0], window[1]);
    match m.kind {
        MoveKind::Two => bond == 0,
        MoveKind::Three => bond == 1,
        MoveKind::Four => bond == 2,
    }
}

fn scan_letters(cd: &CartanData, letters: &[usize]) -> MoveScan {
    let mut scan = MoveScan::default();
    for pos in 1..=letters.len() {
        for kind in [MoveKind::Two, MoveKind::Three, MoveKind::Four] {
            let m = Move::new(kind, pos);
            if move_applies(cd, letters, m) {
                scan.moves.push(m);
            }
        }
        if pos + 5 <= letters.len() {
            let window = &letters[pos - 1..pos + 5];
            if alternates(window) && cd.bond(window[0], window[1]) == 3 {
                scan.unsupported.push(pos);
            }
        }
    }
    scan
}

/// All applicable moves, ordered by `(position, kind)`.
pub fn enumerate_moves(cd: &CartanData, w: &Word) -> MoveScan {
    scan_letters(cd, &w.letters)
}

fn rewrite(letters: &mut [usize], m: Move) {
    let (i, j) = (letters[m.pos - 1], letters[m.pos]);
    for (t, x) in letters[m.pos - 1..m.pos - 1 + m.kind.width()].iter_mut().enumerate() {
        *x = if t % 2 == 0 { j } else { i };
    }
}

pub fn apply_move(cd: &CartanData, w: &Word, m: Move) -> Result<Word, WordError> {
    if !move_applies(cd, &w.letters, m) {
        return Err(WordError::MoveNotApplicable(m));
    }
    let mut letters = w.letters.clone();
    rewrite(&mut letters, m);
    Ok(w.with_letters(letters))
}

/// Folds `apply_move` over `path`, returning every intermediate word
/// (including the start).
pub fn replay_path(cd: &CartanData, w: &Word, path: &[Move]) -> Result<Vec<Word>, WordError> {
    let mut out = vec![w.clone()];
    for &m in path {
        let next = apply_move(cd, out.last().expect("nonempty"), m)?;
        out.push(next);
    }
    Ok(out)
}

/// Breadth-first search in the move graph; `target` stops the search early.
struct Bfs {
    nodes: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, Move)>>,
    index: HashMap<Vec<usize>, usize>,
    found: Option<usize>,
    exhausted: bool,
}

fn bfs(cd: &CartanData, start: &[usize], target: Option<&[usize]>, budget: usize) -> Bfs {
    let mut st = Bfs {
        nodes: vec![start.to_vec()],
        parent: vec![None],
        index: HashMap::from([(start.to_vec(), 0)]),
        found: None,
        exhausted: false,
    };
    if target == Some(start) {
        st.found = Some(0);
        return st;
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let letters = st.nodes[u].clone();
        for m in scan_letters(cd, &letters).moves {
            let mut next = letters.clone();
            rewrite(&mut next, m);
            if st.index.contains_key(&next) {
                continue;
            }
            if st.nodes.len() >= budget {
                return st;
            }
            let id = st.nodes.len();
            st.index.insert(next.clone(), id);
            st.parent.push(Some((u, m)));
            let hit = target == Some(next.as_slice());
            st.nodes.push(next);
            if hit {
                st.found = Some(id);
                return st;
            }
            queue.push_back(id);
        }
    }
    st.exhausted = true;
    st
}

/// A shortest move sequence from `w` to `target`. Ties are broken by the
/// `(position, kind)` order of moves at each BFS layer.
pub fn find_move_path(cd: &CartanData, w: &Word, target: &Word, budget: usize) -> Result<Vec<Move>, WordError> {
    if w.len() != target.len() {
        return Err(WordError::NotConnected { explored: 0, exhausted: true });
    }
    let st = bfs(cd, &w.letters, Some(&target.letters), budget.max(1));
    let Some(mut id) = st.found else {
        return Err(WordError::NotConnected { explored: st.nodes.len(), exhausted: st.exhausted });
    };
    let mut path = Vec::new();
    while let Some((p, m)) = st.parent[id] {
        path.push(m);
        id = p;
    }
    path.reverse();
    Ok(path)
}

/// Every word reachable from `w` by moves, in BFS order.
pub fn move_component(cd: &CartanData, w: &Word, budget: usize) -> Result<Vec<Word>, WordError> {
    let st = bfs(cd, &w.letters, None, budget.max(1));
    if !st.exhausted {
        return Err(WordError::BudgetExhausted(budget));
    }
    Ok(st.nodes.into_iter().map(|l| w.with_letters(l)).collect())
}

fn check_supported(cd: &CartanData, letters: &[usize]) -> Result<(), WordError> {
    let mut present: Vec<usize> = letters.to_vec();
    present.sort_unstable();
    present.dedup();
    for (a, &i) in present.iter().enumerate() {
        for &j in &present[a + 1..] {
            if cd.bond(i, j) == 3 {
                return Err(WordError::UnsupportedCartanPair(i, j));
            }
        }
    }
    Ok(())
}

/// Equality in the positive braid monoid, decided by exploring the move graph.
pub fn words_equal_in_monoid(cd: &CartanData, w: &Word, other: &Word, budget: usize) -> Result<bool, WordError> {
    check_supported(cd, &w.letters)?;
    check_supported(cd, &other.letters)?;
    match find_move_path(cd, w, other, budget) {
        Ok(_) => Ok(true),
        Err(WordError::NotConnected { exhausted: true, .. }) => Ok(false),
        Err(WordError::NotConnected { .. }) => Err(WordError::BudgetExhausted(budget)),
        Err(e) => Err(e),
    }
}

/// Neighbour indices of position `a`: `a^-` (0 if none), `a^+` (`len+1` if
/// none) and, for a letter `j`, the nearest occurrences of `j` on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborIndex {
    pub minus: usize,
    pub plus: usize,
    pub minus_j: Option<usize>,
    pub plus_j: Option<usize>,
}

pub fn prev_occurrence(letters: &[usize], a: usize, letter: usize) -> usize {
    (1..a).rev().find(|&k| letters[k - 1] == letter).unwrap_or(0)
}

pub fn next_occurrence(letters: &[usize], a: usize, letter: usize) -> usize {
    (a + 1..=letters.len()).find(|&k| letters[k - 1] == letter).unwrap_or(letters.len() + 1)
}

pub fn neighbor_index(w: &Word, a: usize, j: Option<usize>) -> Result<NeighborIndex, WordError> {
    if a == 0 || a > w.len() {
        return Err(WordError::PositionOutOfRange(a));
    }
    let letter = w.at(a);
    Ok(NeighborIndex {
        minus: prev_occurrence(&w.letters, a, letter),
        plus: next_occurrence(&w.letters, a, letter),
        minus_j: j.map(|j| prev_occurrence(&w.letters, a, j)),
        plus_j: j.map(|j| next_occurrence(&w.letters, a, j)),
    })
}

/// `[lo, hi]`, or `[lo, hi}` when `brace` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IBox {
    pub lo: usize,
    pub hi: usize,
    #[serde(default)]
    pub brace: bool,
}

impl IBox {
    pub fn closed(lo: usize, hi: usize) -> Self {
        IBox { lo, hi, brace: false }
    }

    pub fn brace(lo: usize, hi: usize) -> Self {
        IBox { lo, hi, brace: true }
    }
}

impl fmt::Display for IBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}{}", self.lo, self.hi, if self.brace { "}" } else { "]" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResolvedBox {
    /// The unit minor: boxes with `lo > hi`, as produced by `a^+ > b`.
    Empty,
    Range { lo: usize, hi: usize, letter: usize },
}

impl IBox {
    /// Resolves a brace box to `[a, c]` with `c = max{k <= b : i_k = i_a}`;
    /// `lo > hi` (with `lo <= len + 1`) resolves to the empty box.
    pub fn resolve(&self, w: &Word) -> Result<ResolvedBox, WordError> {
        let invalid = |reason: &str| WordError::InvalidBox { lo: self.lo, hi: self.hi, reason: reason.into() };
        let n = w.len();
        if self.lo > self.hi {
            if self.lo == 0 || self.lo > n + 1 || self.hi > n {
                return Err(invalid("endpoint out of range"));
            }
            return Ok(ResolvedBox::Empty);
        }
        if self.lo == 0 || self.hi > n {
            return Err(invalid("endpoint out of range"));
        }
        let letter = w.at(self.lo);
        let hi = if self.brace {
            (self.lo..=self.hi).rev().find(|&k| w.at(k) == letter).expect("lo itself qualifies")
        } else {
            if w.at(self.hi) != letter {
                return Err(invalid("endpoint letters differ"));
            }
            self.hi
        };
        Ok(ResolvedBox::Range { lo: self.lo, hi, letter })
    }
}

pub fn ibox_vector(w: &Word, b: IBox) -> Result<ExponentVector, WordError> {
    Ok(resolved_vector(w, b.resolve(w)?))
}

pub fn resolved_vector(w: &Word, r: ResolvedBox) -> ExponentVector {
    let mut v = vec![0u32; w.len()];
    if let ResolvedBox::Range { lo, hi, letter } = r {
        for k in lo..=hi {
            if w.at(k) == letter {
                v[k - 1] = 1;
            }
        }
    }
    ExponentVector(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanData {
        CartanData::of_type("A2").unwrap()
    }

    #[test]
    fn word_validation() {
        let cd = a2();
        assert!(Word::weyl(&cd, vec![0, 1, 0]).is_ok());
        assert_eq!(Word::weyl(&cd, vec![0, 0]), Err(WordError::NotReduced));
        assert!(Word::braid(&cd, vec![0, 0]).is_ok());
        assert_eq!(Word::braid(&cd, vec![0, 4]), Err(WordError::LetterOutOfRange(4)));
        assert_eq!(Word::classify(&cd, vec![0, 1, 0, 1]).unwrap().kind(), WordKind::PositiveBraid);
    }

    #[test]
    fn move_enumeration() {
        let cd = a2();
        let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
        assert_eq!(enumerate_moves(&cd, &w).moves, vec![Move::new(MoveKind::Three, 1)]);
        let w = Word::braid(&cd, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(
            enumerate_moves(&cd, &w).moves,
            vec![Move::new(MoveKind::Three, 1), Move::new(MoveKind::Three, 2)]
        );
        let cd = CartanData::of_type("A1xA1").unwrap();
        let w = Word::weyl(&cd, vec![0, 1]).unwrap();
        assert_eq!(enumerate_moves(&cd, &w).moves, vec![Move::new(MoveKind::Two, 1)]);
        let g2 = CartanData::of_type("G2").unwrap();
        let w = Word::weyl(&g2, vec![0, 1, 0, 1, 0, 1]).unwrap();
        let scan = enumerate_moves(&g2, &w);
        assert!(scan.moves.is_empty());
        assert_eq!(scan.unsupported, vec![1]);
    }

    #[test]
    fn move_application() {
        let cd = a2();
        let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
        assert_eq!(apply_move(&cd, &w, Move::new(MoveKind::Three, 1)).unwrap().letters(), &[1, 0, 1]);
        assert!(matches!(
            apply_move(&cd, &w, Move::new(MoveKind::Two, 1)),
            Err(WordError::MoveNotApplicable(_))
        ));
        let b2 = CartanData::of_type("B2").unwrap();
        let w = Word::weyl(&b2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(apply_move(&b2, &w, Move::new(MoveKind::Four, 1)).unwrap().letters(), &[1, 0, 1, 0]);
    }

    #[test]
    fn move_json() {
        let m = Move::new(MoveKind::Four, 3);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"kind":"4","pos":3}"#);
        assert_eq!(serde_json::from_str::<Move>(&s).unwrap(), m);
        assert!(serde_json::from_str::<Move>(r#"{"kind":"6","pos":1}"#).is_err());
    }

    #[test]
    fn paths() {
        let cd = a2();
        let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
        let t = Word::weyl(&cd, vec![1, 0, 1]).unwrap();
        assert_eq!(find_move_path(&cd, &w, &t, DEFAULT_BUDGET).unwrap(), vec![Move::new(MoveKind::Three, 1)]);
        let bad = Word::braid(&cd, vec![0, 0, 1]).unwrap();
        assert!(matches!(
            find_move_path(&cd, &w, &bad, DEFAULT_BUDGET),
            Err(WordError::NotConnected { exhausted: true, .. })
        ));

        let a3 = CartanData::of_type("A3").unwrap();
        let w = Word::weyl(&a3, vec![0, 1, 0, 2, 1, 0]).unwrap();
        let t = Word::weyl(&a3, vec![2, 1, 2, 0, 1, 2]).unwrap();
        let path = find_move_path(&a3, &w, &t, DEFAULT_BUDGET).unwrap();
        assert!(!path.is_empty());
        assert_eq!(replay_path(&a3, &w, &path).unwrap().last().unwrap(), &t);
    }

    #[test]
    fn monoid_equality() {
        let cd = a2();
        let w = |l: Vec<usize>| Word::braid(&cd, l).unwrap();
        assert!(words_equal_in_monoid(&cd, &w(vec![0, 1, 0]), &w(vec![1, 0, 1]), DEFAULT_BUDGET).unwrap());
        assert!(!words_equal_in_monoid(&cd, &w(vec![0, 1]), &w(vec![1, 0]), DEFAULT_BUDGET).unwrap());
        let b2 = CartanData::of_type("B2").unwrap();
        let u = Word::braid(&b2, vec![0, 1, 0, 1]).unwrap();
        let v = Word::braid(&b2, vec![1, 0, 1, 0]).unwrap();
        assert!(words_equal_in_monoid(&b2, &u, &v, DEFAULT_BUDGET).unwrap());
        let g2 = CartanData::of_type("G2").unwrap();
        let u = Word::braid(&g2, vec![0, 1]).unwrap();
        assert_eq!(words_equal_in_monoid(&g2, &u, &u, 10), Err(WordError::UnsupportedCartanPair(0, 1)));
    }

    #[test]
    fn budget_is_reported() {
        let a3 = CartanData::of_type("A3").unwrap();
        let w = Word::weyl(&a3, vec![0, 1, 0, 2, 1, 0]).unwrap();
        let t = Word::weyl(&a3, vec![2, 1, 2, 0, 1, 2]).unwrap();
        assert_eq!(words_equal_in_monoid(&a3, &w, &t, 2), Err(WordError::BudgetExhausted(2)));
        assert_eq!(move_component(&a3, &w, DEFAULT_BUDGET).unwrap().len(), 16);
    }

    #[test]
    fn neighbours() {
        let cd = a2();
        let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
        let n = neighbor_index(&w, 3, None).unwrap();
        assert_eq!((n.minus, n.plus), (1, 4));
        let n = neighbor_index(&w, 1, Some(1)).unwrap();
        assert_eq!((n.minus_j, n.plus_j), (Some(0), Some(2)));
        let w = Word::braid(&cd, vec![0, 1, 0, 1]).unwrap();
        let n = neighbor_index(&w, 2, None).unwrap();
        assert_eq!((n.minus, n.plus), (0, 4));
        assert!(neighbor_index(&w, 0, None).is_err());
    }

    #[test]
    fn boxes() {
        let cd = a2();
        let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
        assert_eq!(ibox_vector(&w, IBox::closed(1, 3)).unwrap().0, vec![1, 0, 1]);
        assert_eq!(ibox_vector(&w, IBox::closed(2, 2)).unwrap().0, vec![0, 1, 0]);
        assert!(matches!(ibox_vector(&w, IBox::closed(1, 2)), Err(WordError::InvalidBox { .. })));
        assert_eq!(ibox_vector(&w, IBox::closed(4, 3)).unwrap().0, vec![0, 0, 0]);
        let w = Word::braid(&cd, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(ibox_vector(&w, IBox::brace(1, 4)).unwrap().0, vec![1, 0, 1, 0]);
        assert_eq!(IBox::brace(2, 3).resolve(&w).unwrap(), ResolvedBox::Range { lo: 2, hi: 2, letter: 1 });
    }
}
