//! Simply-laced Q-data: height functions, adapted words, the repetition
//! lattice, `phi`, the inverse quantum Cartan matrix and `A_{i,p}`.
//!
//! Vertices are 0-based. Levels are plain integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanData, CartanError, RootVector};
use crate::seeds::{gls_matrix, ExchangeMatrix};
use crate::words::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QDatumError {
    #[error("Cartan matrix is not simply laced")]
    NotSimplyLaced,
    #[error("heights of adjacent vertices {0} and {1} do not differ by 1")]
    HeightParityViolation(usize, usize),
    #[error("expected {expected} heights, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vertex {0} is not a source")]
    NotASource(usize),
    #[error("({vertex},{level}) is not in the repetition lattice")]
    PointOutsideLattice { vertex: usize, level: i64 },
    #[error("window positions must be consecutive")]
    NonContiguousWindow,
    #[error("series needs order {0}")]
    SeriesOrderInsufficient(i64),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A point `(i, p)` of the repetition lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepetitionPoint {
    pub vertex: usize,
    pub level: i64,
}

impl RepetitionPoint {
    pub fn new(vertex: usize, level: i64) -> Self {
        RepetitionPoint { vertex, level }
    }
}

impl fmt::Display for RepetitionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.vertex + 1, self.level)
    }
}

/// A simply-laced Cartan datum with a height function; arrows point from
/// the higher to the lower end of each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDatum {
    pub cartan: CartanData,
    pub heights: Vec<i64>,
}

pub fn validate_height(cd: &CartanData, xi: &[i64]) -> Result<QDatum, QDatumError> {
    if !cd.is_simply_laced() {
        return Err(QDatumError::NotSimplyLaced);
    }
    if xi.len() != cd.rank() {
        return Err(QDatumError::DimensionMismatch { expected: cd.rank(), got: xi.len() });
    }
    for i in 0..cd.rank() {
        for j in i + 1..cd.rank() {
            if cd.adjacent(i, j) && (xi[i] - xi[j]).abs() != 1 {
                return Err(QDatumError::HeightParityViolation(i, j));
            }
        }
    }
    Ok(QDatum { cartan: cd.clone(), heights: xi.to_vec() })
}

impl QDatum {
    pub fn rank(&self) -> usize {
        self.heights.len()
    }

    pub fn xi(&self, i: usize) -> i64 {
        self.heights[i]
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.cartan.adjacent(i, j) && self.heights[i] > self.heights[j])
            .collect()
    }

    pub fn is_source(&self, i: usize) -> bool {
        (0..self.rank()).all(|j| !self.cartan.adjacent(i, j) || self.heights[j] < self.heights[i])
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_source(i)).collect()
    }

    /// `s_i xi`: lowers `xi_i` by 2.
    pub fn source_reflect(&self, i: usize) -> Result<QDatum, QDatumError> {
        if i >= self.rank() {
            return Err(CartanError::IndexOutOfRange(i).into());
        }
        if !self.is_source(i) {
            return Err(QDatumError::NotASource(i));
        }
        let mut out = self.clone();
        out.heights[i] -= 2;
        Ok(out)
    }

    pub fn in_lattice(&self, pt: RepetitionPoint) -> bool {
        pt.vertex < self.rank() && (pt.level - self.heights[pt.vertex]).rem_euclid(2) == 0
    }

    fn check_point(&self, pt: RepetitionPoint) -> Result<(), QDatumError> {
        if self.in_lattice(pt) {
            Ok(())
        } else {
            Err(QDatumError::PointOutsideLattice { vertex: pt.vertex, level: pt.level })
        }
    }
}

/// The reduced word for `w0` obtained by repeatedly taking the smallest-index
/// source whose reflection keeps the word reduced, with the heights before
/// each step.
pub fn adapted_word_with_heights(qd: &QDatum) -> Result<(Word, Vec<Vec<i64>>), QDatumError> {
    let ft = qd.cartan.finite_type_data()?;
    let mut cur = qd.clone();
    let mut letters: Vec<usize> = Vec::with_capacity(ft.positive_roots.len());
    let mut trail = Vec::with_capacity(ft.positive_roots.len());
    for _ in 0..ft.positive_roots.len() {
        // s_{i_1} ... s_{i_k} s_i is reduced iff s_{i_1} ... s_{i_k}(alpha_i) > 0.
        let i = cur
            .sources()
            .into_iter()
            .find(|&i| qd.cartan.apply_word(&letters, &RootVector::simple(qd.rank(), i)).is_positive())
            .ok_or(QDatumError::NotASource(usize::MAX))?;
        trail.push(cur.heights.clone());
        letters.push(i);
        cur = cur.source_reflect(i)?;
    }
    trail.push(cur.heights);
    Ok((Word::weyl(&qd.cartan, letters)?, trail))
}

pub fn adapted_word(qd: &QDatum) -> Result<Word, QDatumError> {
    Ok(adapted_word_with_heights(qd)?.0)
}

/// The Coxeter number of the component of each vertex.
pub fn coxeter_numbers(cd: &CartanData) -> Result<Vec<i64>, QDatumError> {
    let roots = cd.finite_type_data()?.positive_roots;
    let mut h = vec![0; cd.rank()];
    for comp in cd.components() {
        let count = roots.iter().filter(|r| r.coords().iter().enumerate().any(|(i, &x)| x != 0 && comp.contains(&i))).count();
        for &i in &comp {
            h[i] = (2 * count / comp.len()) as i64;
        }
    }
    Ok(h)
}

/// The bi-infinite sequence `i_{k+l} = i_k^*` extending a word for `w0`
/// (positions 1-based, any integer allowed).
pub fn extended_sequence(w0: &[usize], star: &[usize], k: i64) -> usize {
    let l = w0.len() as i64;
    let r = (k - 1).rem_euclid(l);
    let m = (k - 1).div_euclid(l);
    let mut letter = w0[r as usize];
    let inverse: Vec<usize> = (0..star.len()).map(|i| star.iter().position(|&s| s == i).expect("permutation")).collect();
    for _ in 0..m.unsigned_abs() {
        letter = if m > 0 { star[letter] } else { inverse[letter] };
    }
    letter
}

/// Everything derived once from a Q-datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDatumTables {
    pub adapted: Vec<usize>,
    pub star: Vec<usize>,
    pub coxeter: Vec<i64>,
    pub positive_roots: Vec<RootVector>,
}

impl QDatumTables {
    pub fn new(qd: &QDatum) -> Result<Self, QDatumError> {
        let ft = qd.cartan.finite_type_data()?;
        Ok(QDatumTables {
            adapted: adapted_word(qd)?.letters().to_vec(),
            star: ft.star,
            coxeter: coxeter_numbers(&qd.cartan)?,
            positive_roots: ft.positive_roots,
        })
    }

    pub fn letter(&self, k: i64) -> usize {
        extended_sequence(&self.adapted, &self.star, k)
    }
}

/// `p_k`: heights read off along the extended adapted word, reflecting
/// forwards for `k > 0` and backwards for `k <= 0`.
pub fn pk(qd: &QDatum, t: &QDatumTables, k: i64) -> RepetitionPoint {
    let i = t.letter(k);
    let level = if k > 0 {
        qd.xi(i) - 2 * (1..k).filter(|&m| t.letter(m) == i).count() as i64
    } else {
        qd.xi(i) + 2 * (k..=0).filter(|&m| t.letter(m) == i).count() as i64
    };
    RepetitionPoint::new(i, level)
}

pub fn pk_sequence(qd: &QDatum, lo: i64, hi: i64) -> Result<Vec<RepetitionPoint>, QDatumError> {
    let t = QDatumTables::new(qd)?;
    Ok((lo..=hi).map(|k| pk(qd, &t, k)).collect())
}

/// `{(i,p) : xi_{i*} - (k+1)h < p <= xi_i - kh}` with `p = xi_i mod 2`.
pub fn delta_window(qd: &QDatum, k: i64) -> Result<BTreeSet<RepetitionPoint>, QDatumError> {
    let t = QDatumTables::new(qd)?;
    let mut out = BTreeSet::new();
    for i in 0..qd.rank() {
        let h = t.coxeter[i];
        let (lo, hi) = (qd.xi(t.star[i]) - (k + 1) * h, qd.xi(i) - k * h);
        out.extend(((lo + 1)..=hi).filter(|p| (p - qd.xi(i)).rem_euclid(2) == 0).map(|p| RepetitionPoint::new(i, p)));
    }
    Ok(out)
}

/// The dimension vector of the injective at `i`: vertices with an oriented
/// path to `i` (including `i`).
pub fn injective_root(qd: &QDatum, i: usize) -> RootVector {
    let n = qd.rank();
    let mut seen = vec![false; n];
    let mut stack = vec![i];
    seen[i] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if !seen[u] && qd.cartan.adjacent(u, v) && qd.xi(u) > qd.xi(v) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    RootVector(seen.into_iter().map(i64::from).collect())
}

/// The source order `c_1, ..., c_n` of one pass reflecting every vertex
/// once (smallest unused source first); `tau` reflects
/// `c_1` first: `tau = s_{c_n} ∘ ... ∘ s_{c_1}`.
pub fn coxeter_word(qd: &QDatum) -> Result<Vec<usize>, QDatumError> {
    let mut cur = qd.clone();
    let mut out: Vec<usize> = Vec::new();
    for _ in 0..qd.rank() {
        let i = cur.sources().into_iter().find(|i| !out.contains(i)).expect("an unused source always exists");
        out.push(i);
        cur = cur.source_reflect(i)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiValue {
    pub root: RootVector,
    pub level: i64,
}

fn tau_step(cd: &CartanData, word: &[usize], v: &PhiValue, up: bool) -> PhiValue {
    let image = if up {
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        cd.apply_word(&rev, &v.root)
    } else {
        cd.apply_word(word, &v.root)
    };
    match (image.is_positive(), up) {
        (true, _) => PhiValue { root: image, level: v.level },
        (false, true) => PhiValue { root: image.neg(), level: v.level + 1 },
        (false, false) => PhiValue { root: image.neg(), level: v.level - 1 },
    }
}

/// `phi((i, xi_i)) = (gamma_i, 0)`, extended by `tau` upwards in steps of 2
/// and by `tau^{-1}` downwards.
pub fn phi_map(qd: &QDatum, pt: RepetitionPoint) -> Result<PhiValue, QDatumError> {
    qd.check_point(pt)?;
    let word = coxeter_word(qd)?;
    let steps = (pt.level - qd.xi(pt.vertex)) / 2;
    let mut v = PhiValue { root: injective_root(qd, pt.vertex), level: 0 };
    for _ in 0..steps.unsigned_abs() {
        v = tau_step(&qd.cartan, &word, &v, steps > 0);
    }
    Ok(v)
}

/// Inverse of [`phi_map`], by walking each vertex's `tau`-orbit.
pub fn phi_inverse(qd: &QDatum, value: &PhiValue) -> Result<RepetitionPoint, QDatumError> {
    let word = coxeter_word(qd)?;
    let h = coxeter_numbers(&qd.cartan)?;
    for i in 0..qd.rank() {
        // One period of tau covers h/2 steps per unit of level.
        let reach = (value.level.unsigned_abs() as i64 + 2) * h[i].max(2);
        for up in [true, false] {
            let mut v = PhiValue { root: injective_root(qd, i), level: 0 };
            for s in 0..=reach {
                if &v == value {
                    let step = if up { s } else { -s };
                    return Ok(RepetitionPoint::new(i, qd.xi(i) + 2 * step));
                }
                v = tau_step(&qd.cartan, &word, &v, up);
            }
        }
    }
    Err(QDatumError::PointOutsideLattice { vertex: usize::MAX, level: value.level })
}

/// The exchange matrix of a contiguous window of the extended adapted word,
/// with rows and columns labelled by `(i_k, p_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HlMatrix {
    pub positions: Vec<i64>,
    pub labels: Vec<RepetitionPoint>,
    pub matrix: ExchangeMatrix,
}

pub fn b_hl(qd: &QDatum, positions: &[i64]) -> Result<HlMatrix, QDatumError> {
    if positions.windows(2).any(|p| p[1] != p[0] + 1) {
        return Err(QDatumError::NonContiguousWindow);
    }
    let t = QDatumTables::new(qd)?;
    let letters: Vec<usize> = positions.iter().map(|&k| t.letter(k)).collect();
    let word = Word::braid(&qd.cartan, letters)?;
    Ok(HlMatrix {
        positions: positions.to_vec(),
        labels: positions.iter().map(|&k| pk(qd, &t, k)).collect(),
        matrix: gls_matrix(&qd.cartan, &word),
    })
}

/// Coefficients `c~(u)` of the inverse quantum Cartan matrix, expanded in
/// nonnegative powers of `q`; `c~(u) = 0` for `u <= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanSeries {
    pub rank: usize,
    /// `coefficients[u]` for `0 <= u <= u_max`.
    pub coefficients: Vec<Vec<Vec<i64>>>,
}

/// `c~(0) = 0`, `c~(1) = I`, `c~(u+1) = A c~(u) - c~(u-1)` with `A = 2I - C`.
pub fn cartan_tilde(cd: &CartanData, u_max: usize) -> Result<CartanSeries, QDatumError> {
    if !cd.is_simply_laced() {
        return Err(QDatumError::NotSimplyLaced);
    }
    let n = cd.rank();
    let adj: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { -cd.entry(i, j) }).collect()).collect();
    let identity: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut coefficients = vec![vec![vec![0; n]; n]];
    if u_max >= 1 {
        coefficients.push(identity);
    }
    for u in 1..u_max {
        let next: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| adj[i][k] * coefficients[u][k][j]).sum::<i64>() - coefficients[u - 1][i][j])
                    .collect()
            })
            .collect();
        coefficients.push(next);
    }
    Ok(CartanSeries { rank: n, coefficients })
}

impl CartanSeries {
    pub fn u_max(&self) -> i64 {
        self.coefficients.len() as i64 - 1
    }

    pub fn get(&self, i: usize, j: usize, u: i64) -> Result<i64, QDatumError> {
        if u <= 0 {
            return Ok(0);
        }
        self.coefficients.get(u as usize).map(|m| m[i][j]).ok_or(QDatumError::SeriesOrderInsufficient(u))
    }

    /// `C(q) C~(q) = I` coefficientwise for every order the series covers:
    /// `c~(u+1) + (C - 2I) c~(u) + c~(u-1) = δ_{u,0} I`.
    pub fn verify_identity(&self, cd: &CartanData) -> bool {
        let n = self.rank;
        (0..self.u_max()).all(|u| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let mid: i64 = (0..n)
                        .map(|k| (cd.entry(i, k) - 2 * i64::from(i == k)) * self.get(k, j, u).unwrap_or(0))
                        .sum();
                    let total = self.get(i, j, u + 1).unwrap_or(0) + mid + self.get(i, j, u - 1).unwrap_or(0);
                    total == i64::from(u == 0 && i == j)
                })
            })
        })
    }
}

/// `N((i,p),(j,q)) = c~(p-q-1) - c~(p-q+1) - c~(q-p-1) + c~(q-p+1)` with
/// `d_i = 1`. The last two signs make `N` antisymmetric with `N(x,x) = 0`.
pub fn n_form(series: &CartanSeries, a: RepetitionPoint, b: RepetitionPoint) -> Result<i64, QDatumError> {
    let (i, j) = (a.vertex, b.vertex);
    let d = b.level - a.level;
    Ok(series.get(i, j, -d - 1)? - series.get(i, j, -d + 1)? - series.get(i, j, d - 1)? + series.get(i, j, d + 1)?)
}

/// `A_{i,p} = Y_{i,p-1} Y_{i,p+1} prod_{j ~ i} Y_{j,p}^{-1}` as an exponent map.
pub fn a_monomial(qd: &QDatum, i: usize, p: i64) -> Result<BTreeMap<RepetitionPoint, i64>, QDatumError> {
    qd.check_point(RepetitionPoint::new(i, p - 1))?;
    let mut out = BTreeMap::new();
    out.insert(RepetitionPoint::new(i, p - 1), 1);
    out.insert(RepetitionPoint::new(i, p + 1), 1);
    for j in (0..qd.rank()).filter(|&j| qd.cartan.adjacent(i, j)) {
        out.insert(RepetitionPoint::new(j, p), -1);
    }
    Ok(out)
}
