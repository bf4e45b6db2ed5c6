//! Exponent vectors, the bi-lexicographic order and the piecewise-linear
//! transition maps attached to braid moves.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::CartanData;
use crate::words::{self, apply_move, move_applies, IBox, Move, MoveKind, ResolvedBox, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LusztigError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("move {0} is not applicable")]
    MoveNotApplicable(Move),
    #[error("leading terms {0} and {1} are incomparable")]
    IncomparableLeadingTerms(ExponentVector, ExponentVector),
    #[error("subtraction leaves a negative entry at position {0}")]
    NegativeEntry(usize),
    #[error("configuration not covered by the tabulated cases (generic image {image})")]
    CaseNotTabulated { image: ExponentVector },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An element of `Z_{>=0}^{[1, len]}`, indexed by word positions (index 0 is
/// position 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, pos: usize) -> Self {
        let mut v = vec![0; n];
        v[pos - 1] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: u32) -> Self {
        ExponentVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LusztigError> {
        check_len(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(k, (a, b))| a.checked_sub(*b).ok_or(LusztigError::NegativeEntry(k + 1)))
            .collect::<Result<Vec<_>, _>>()
            .map(ExponentVector)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderVerdict {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl OrderVerdict {
    pub fn reverse(self) -> Self {
        match self {
            OrderVerdict::Less => OrderVerdict::Greater,
            OrderVerdict::Greater => OrderVerdict::Less,
            v => v,
        }
    }
}

fn check_len(a: &ExponentVector, b: &ExponentVector) -> Result<(), LusztigError> {
    if a.len() != b.len() {
        return Err(LusztigError::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Both lexicographic orders (scanning from position 1, and from the last
/// position) must agree for a strict verdict.
pub fn bilex_compare(a: &ExponentVector, b: &ExponentVector) -> Result<OrderVerdict, LusztigError> {
    check_len(a, b)?;
    Ok(bilex_slices(&a.0, &b.0))
}

pub fn bilex_slices<T: Ord>(a: &[T], b: &[T]) -> OrderVerdict {
    let left = a.iter().cmp(b.iter());
    let right = a.iter().rev().cmp(b.iter().rev());
    match (left, right) {
        (Ordering::Equal, _) => OrderVerdict::Equal,
        (Ordering::Less, Ordering::Less) => OrderVerdict::Less,
        (Ordering::Greater, Ordering::Greater) => OrderVerdict::Greater,
        _ => OrderVerdict::Incomparable,
    }
}

/// Which of the two 4-move formulas a window `(i j i j)` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FourBranch {
    /// `c_ij = -2`: the first letter is the short root.
    ShortFirst,
    /// `c_ij = -1`: the first letter is the long root.
    LongFirst,
}

pub fn four_branch(cd: &CartanData, letters: &[usize], pos: usize) -> FourBranch {
    let (i, j) = (letters[pos - 1], letters[pos]);
    if cd.entry(i, j) == -2 {
        FourBranch::ShortFirst
    } else {
        FourBranch::LongFirst
    }
}

fn min3(a: i64, b: i64, c: i64) -> i64 {
    a.min(b).min(c)
}

/// The local formulas, on the window entries only.
pub fn local_transition(kind: MoveKind, branch: FourBranch, x: &[i64]) -> Vec<i64> {
    match kind {
        MoveKind::Two => vec![x[1], x[0]],
        MoveKind::Three => {
            let p = x[0].min(x[2]);
            vec![x[1] + x[2] - p, p, x[0] + x[1] - p]
        }
        MoveKind::Four => {
            let p1 = min3(x[0] + x[1], x[0] + x[3], x[2] + x[3]);
            match branch {
                FourBranch::ShortFirst => {
                    let p2 = min3(x[0] + 2 * x[1], x[0] + 2 * x[3], x[2] + 2 * x[3]);
                    vec![x[1] + x[2] + x[3] - p1, 2 * p1 - p2, p2 - p1, x[0] + 2 * x[1] + x[2] - p2]
                }
                FourBranch::LongFirst => {
                    let p2 = min3(2 * x[0] + x[1], 2 * x[0] + x[3], 2 * x[2] + x[3]);
                    vec![x[1] + 2 * x[2] + x[3] - p2, p2 - p1, 2 * p1 - p2, x[0] + x[1] + x[2] - p1]
                }
            }
        }
    }
}

fn apply_on_letters(cd: &CartanData, letters: &[usize], m: Move, a: &ExponentVector) -> Result<ExponentVector, LusztigError> {
    if a.len() != letters.len() {
        return Err(LusztigError::LengthMismatch(letters.len(), a.len()));
    }
    if !move_applies(cd, letters, m) {
        return Err(LusztigError::MoveNotApplicable(m));
    }
    let branch = four_branch(cd, letters, m.pos);
    let width = m.kind.width();
    let window: Vec<i64> = a.0[m.pos - 1..m.pos - 1 + width].iter().map(|&x| x as i64).collect();
    let image = local_transition(m.kind, branch, &window);
    let mut out = a.clone();
    for (t, v) in image.into_iter().enumerate() {
        out.0[m.pos - 1 + t] = u32::try_from(v).map_err(|_| LusztigError::NegativeEntry(m.pos + t))?;
    }
    Ok(out)
}

/// The transition map for one move, from the parameterization of `w` to that
/// of the rewritten word.
pub fn transition_apply(cd: &CartanData, w: &Word, m: Move, a: &ExponentVector) -> Result<ExponentVector, LusztigError> {
    apply_on_letters(cd, w.letters(), m, a)
}

pub fn transition_along_path(
    cd: &CartanData,
    w: &Word,
    path: &[Move],
    a: &ExponentVector,
) -> Result<ExponentVector, LusztigError> {
    let mut letters = w.letters().to_vec();
    let mut v = a.clone();
    for &m in path {
        v = apply_on_letters(cd, &letters, m, &v)?;
        letters = apply_move(cd, &w.with_letters(letters), m)?.letters().to_vec();
    }
    Ok(v)
}

/// Leading-term parameterization of a product.
pub fn par_product(a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector, LusztigError> {
    check_len(a, b)?;
    Ok(ExponentVector(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
}

/// `max(d1, d2) - x` for the two exchange monomials of a mutation.
pub fn par_mutation(x: &ExponentVector, d1: &ExponentVector, d2: &ExponentVector) -> Result<ExponentVector, LusztigError> {
    check_len(x, d1)?;
    let top = match bilex_compare(d1, d2)? {
        OrderVerdict::Less => d2,
        OrderVerdict::Greater | OrderVerdict::Equal => d1,
        OrderVerdict::Incomparable => {
            return Err(LusztigError::IncomparableLeadingTerms(d1.clone(), d2.clone()));
        }
    };
    top.checked_sub(x)
}

/// Which row of the i-box transition table an instance falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableRow {
    /// Neither endpoint lies in the window.
    Outside,
    /// The lower endpoint is the given window offset (0-based).
    LowerAt(usize),
    /// The upper endpoint is the given window offset (0-based).
    UpperAt(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IBoxTransition {
    pub row: TableRow,
    pub source: ExponentVector,
    pub image: ExponentVector,
    pub expected: ExponentVector,
    pub matched: bool,
}

fn boxv(w: &Word, lo: usize, hi: usize) -> Result<ExponentVector, LusztigError> {
    Ok(words::ibox_vector(w, IBox::closed(lo, hi))?)
}

fn plus_unit(mut v: ExponentVector, pos: usize) -> ExponentVector {
    v.0[pos - 1] += 1;
    v
}

/// Compares the generic transition image of an i-box vector with the
/// closed-form table entry for the move.
pub fn verify_ibox_transition(cd: &CartanData, w: &Word, m: Move, b: IBox) -> Result<IBoxTransition, LusztigError> {
    let (a, bb) = match b.resolve(w)? {
        ResolvedBox::Range { lo, hi, .. } => (lo, hi),
        ResolvedBox::Empty => {
            let zero = ExponentVector::zero(w.len());
            return Err(LusztigError::CaseNotTabulated { image: zero });
        }
    };
    let source = words::ibox_vector(w, b)?;
    let image = transition_apply(cd, w, m, &source)?;
    let w2 = apply_move(cd, w, m)?;
    let lo = m.pos;
    let hi = m.pos + m.kind.width() - 1;
    let inside = |x: usize| (lo..=hi).contains(&x);
    let not_tabulated = || LusztigError::CaseNotTabulated { image: image.clone() };

    let row = match (inside(a), inside(bb)) {
        (false, false) => TableRow::Outside,
        (true, false) if bb > hi => TableRow::LowerAt(a - lo),
        (false, true) if a < lo => TableRow::UpperAt(bb - lo),
        _ => return Err(not_tabulated()),
    };
    let n = w.len();
    let expected = match m.kind {
        MoveKind::Two => {
            let k = lo;
            match row {
                TableRow::Outside => boxv(&w2, a, bb)?,
                TableRow::LowerAt(0) => boxv(&w2, k + 1, bb)?,
                TableRow::LowerAt(_) => boxv(&w2, k, bb)?,
                TableRow::UpperAt(0) => boxv(&w2, a, k + 1)?,
                TableRow::UpperAt(_) => boxv(&w2, a, k)?,
            }
        }
        MoveKind::Three => {
            // Window (k-1, k, k+1).
            let k = lo + 1;
            let letters2 = w2.letters();
            match row {
                TableRow::Outside => boxv(&w2, a, bb)?,
                TableRow::LowerAt(0) => boxv(&w2, k, bb)?,
                TableRow::LowerAt(1) => boxv(&w2, k - 1, bb)?,
                TableRow::LowerAt(_) => {
                    let kp = words::next_occurrence(letters2, k, w2.at(k));
                    let rest = if kp <= bb { boxv(&w2, kp, bb)? } else { ExponentVector::zero(n) };
                    plus_unit(rest, k - 1)
                }
                TableRow::UpperAt(0) => {
                    let km = words::prev_occurrence(letters2, k, w2.at(k));
                    let rest = if km >= a { boxv(&w2, a, km)? } else { ExponentVector::zero(n) };
                    plus_unit(rest, k + 1)
                }
                TableRow::UpperAt(1) => boxv(&w2, a, k + 1)?,
                TableRow::UpperAt(_) => boxv(&w2, a, k)?,
            }
        }
        MoveKind::Four => {
            let k = lo;
            if bb <= k + 3 || four_branch(cd, w.letters(), k) != FourBranch::ShortFirst {
                return Err(not_tabulated());
            }
            let letters2 = w2.letters();
            match row {
                TableRow::Outside => boxv(&w2, a, bb)?,
                TableRow::LowerAt(0) => boxv(&w2, k + 1, bb)?,
                TableRow::LowerAt(1) => boxv(&w2, k, bb)?,
                TableRow::LowerAt(2) => plus_unit(boxv(&w2, k + 3, bb)?, k),
                TableRow::LowerAt(_) => {
                    let kp = words::next_occurrence(letters2, k + 2, w2.at(k + 2));
                    let rest = if kp <= bb { boxv(&w2, kp, bb)? } else { ExponentVector::zero(n) };
                    plus_unit(rest, k)
                }
                TableRow::UpperAt(_) => return Err(not_tabulated()),
            }
        }
    };
    let matched = expected == image;
    Ok(IBoxTransition { row, source, image, expected, matched })
}
