//! Generalized Cartan matrices, symmetrizers and root arithmetic.
//!
//! Indices are 0-based internally. Every `CartanData` also carries the
//! user-facing integer labels of its index set, which is how words and
//! vectors are read and printed at the boundary.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Orbit closure stops once this many roots have been produced.
pub const ROOT_ORBIT_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unknown index label {0}")]
    UnknownLabel(i64),
    #[error("not of finite type: root orbit exceeds {0} roots")]
    NotFiniteType(usize),
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
}

/// JSON form: `{"indices":[...], "matrix":[[...]], "symmetrizer":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanSpec {
    pub indices: Vec<i64>,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizer: Option<Vec<i64>>,
}

/// A validated generalized Cartan matrix together with its symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    labels: Vec<i64>,
    entries: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
}

impl CartanData {
    /// Validates `matrix` and attaches the minimal symmetrizer (or the supplied
    /// one, if it is valid). Labels default to `1..=n`.
    pub fn validate(matrix: Vec<Vec<i64>>, symmetrizer: Option<Vec<i64>>) -> Result<Self, CartanError> {
        let n = matrix.len();
        let labels = (1..=n as i64).collect();
        Self::with_labels(labels, matrix, symmetrizer)
    }

    pub fn with_labels(
        labels: Vec<i64>,
        matrix: Vec<Vec<i64>>,
        symmetrizer: Option<Vec<i64>>,
    ) -> Result<Self, CartanError> {
        let n = matrix.len();
        if n == 0 {
            return Err(CartanError::NotGcm("empty index set".into()));
        }
        if labels.len() != n {
            return Err(CartanError::DimensionMismatch { expected: n, got: labels.len() });
        }
        if labels.iter().collect::<HashSet<_>>().len() != n {
            return Err(CartanError::NotGcm("duplicate index labels".into()));
        }
        for row in &matrix {
            if row.len() != n {
                return Err(CartanError::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(CartanError::NotGcm(format!("diagonal entry ({i},{i}) is {}", matrix[i][i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(CartanError::NotGcm(format!("positive off-diagonal entry at ({i},{j})")));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(CartanError::NotGcm(format!("zero pattern asymmetric at ({i},{j})")));
                }
            }
        }
        let symmetrizer = match symmetrizer {
            Some(d) => {
                if d.len() != n {
                    return Err(CartanError::DimensionMismatch { expected: n, got: d.len() });
                }
                if d.iter().any(|&x| x <= 0) {
                    return Err(CartanError::NotSymmetrizable("symmetrizer must be positive".into()));
                }
                for i in 0..n {
                    for j in 0..n {
                        if d[i] * matrix[i][j] != d[j] * matrix[j][i] {
                            return Err(CartanError::NotSymmetrizable(format!(
                                "supplied symmetrizer fails at ({i},{j})"
                            )));
                        }
                    }
                }
                d
            }
            None => minimal_symmetrizer(&matrix)?,
        };
        Ok(CartanData { labels, entries: matrix, symmetrizer })
    }

    pub fn from_spec(spec: CartanSpec) -> Result<Self, CartanError> {
        Self::with_labels(spec.indices, spec.matrix, spec.symmetrizer)
    }

    pub fn to_spec(&self) -> CartanSpec {
        CartanSpec {
            indices: self.labels.clone(),
            matrix: self.entries.clone(),
            symmetrizer: Some(self.symmetrizer.clone()),
        }
    }

    /// Builds a Cartan matrix from a type name such as `A3`, `B2`, `C3`, `G2`,
    /// `D4` or a product like `A1xA2`.
    ///
    /// `B_n` has its short simple root last (`c[n-1][n-2] = -2`), `C_n` is the
    /// transpose.
    pub fn of_type(name: &str) -> Result<Self, CartanError> {
        let mut blocks = Vec::new();
        for part in name.split(['x', 'X', '*']) {
            let part = part.trim();
            let unknown = || CartanError::UnknownType(name.to_string());
            let (family, rank) = part.split_at(part.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
            let rank: usize = rank.parse().map_err(|_| unknown())?;
            blocks.push(simple_type(family, rank).ok_or_else(unknown)?);
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut matrix = vec![vec![0; n]; n];
        let mut offset = 0;
        for block in &blocks {
            for (i, row) in block.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    matrix[offset + i][offset + j] = c;
                }
            }
            offset += block.len();
        }
        Self::validate(matrix, None)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn d(&self, i: usize) -> i64 {
        self.symmetrizer[i]
    }

    /// `a_ij = d_i c_ij`, the Gram matrix of the simple roots.
    pub fn bilinear_entry(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[i] * self.entries[i][j]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> i64 {
        self.labels[i]
    }

    pub fn index_of(&self, label: i64) -> Result<usize, CartanError> {
        self.labels.iter().position(|&l| l == label).ok_or(CartanError::UnknownLabel(label))
    }

    /// `c_ij c_ji`, which decides which braid relation (if any) links `i` and `j`.
    pub fn bond(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j] * self.entries[j][i]
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| i == j || matches!(self.entries[i][j], 0 | -1)))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entries[i][j] != 0
    }

    /// Connected components of the Dynkin diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![];
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(i) = queue.pop_front() {
                comp.push(i);
                for j in 0..n {
                    if !seen[j] && self.adjacent(i, j) {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn check_dim(&self, v: &RootVector) -> Result<(), CartanError> {
        if v.len() != self.rank() {
            return Err(CartanError::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    /// `(x, y) = sum_ij x_i y_j d_i c_ij`.
    pub fn bilinear_form(&self, x: &RootVector, y: &RootVector) -> Result<i64, CartanError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let n = self.rank();
        let mut total = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                total += x.0[i] * y.0[j] * self.bilinear_entry(i, j);
            }
        }
        Ok(total)
    }

    /// `s_i(x) = x - (sum_j x_j c_ij) alpha_i`.
    pub fn reflect_root(&self, i: usize, x: &RootVector) -> Result<RootVector, CartanError> {
        if i >= self.rank() {
            return Err(CartanError::IndexOutOfRange(i));
        }
        self.check_dim(x)?;
        Ok(self.reflect_unchecked(i, x))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, x: &RootVector) -> RootVector {
        let pairing: i64 = x.0.iter().zip(&self.entries[i]).map(|(a, c)| a * c).sum();
        let mut out = x.clone();
        out.0[i] -= pairing;
        out
    }

    /// Applies `s_{letters[0]} s_{letters[1]} ... ` to `x` (rightmost first).
    pub fn apply_word(&self, letters: &[usize], x: &RootVector) -> RootVector {
        letters.iter().rev().fold(x.clone(), |acc, &i| self.reflect_unchecked(i, &acc))
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})` for every position.
    pub fn roots_of_word(&self, letters: &[usize]) -> Result<WordRoots, CartanError> {
        let n = self.rank();
        if let Some(&bad) = letters.iter().find(|&&i| i >= n) {
            return Err(CartanError::IndexOutOfRange(bad));
        }
        let roots: Vec<RootVector> = (0..letters.len())
            .map(|k| self.apply_word(&letters[..k], &RootVector::simple(n, letters[k])))
            .collect();
        let all_positive = roots.iter().all(RootVector::is_positive);
        let distinct = roots.iter().collect::<HashSet<_>>().len() == roots.len();
        Ok(WordRoots { roots, all_positive, distinct })
    }

    /// `true` iff the word is a reduced expression of a Weyl group element.
    pub fn is_reduced(&self, letters: &[usize]) -> bool {
        self.roots_of_word(letters).map(|r| r.all_positive).unwrap_or(false)
    }

    pub fn finite_type_data(&self) -> Result<FiniteTypeData, CartanError> {
        let n = self.rank();
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let a = RootVector::simple(n, i);
            seen.insert(a.clone());
            queue.push_back(a);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let s = self.reflect_unchecked(i, &r);
                if seen.insert(s.clone()) {
                    if seen.len() > ROOT_ORBIT_BOUND {
                        return Err(CartanError::NotFiniteType(ROOT_ORBIT_BOUND));
                    }
                    queue.push_back(s);
                }
            }
        }
        let mut positive_roots: Vec<RootVector> = seen.into_iter().filter(RootVector::is_positive).collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0)));

        // Greedy walk: append the smallest i with w(alpha_i) > 0.
        let mut word: Vec<usize> = Vec::new();
        loop {
            let next = (0..n).find(|&i| self.apply_word(&word, &RootVector::simple(n, i)).is_positive());
            match next {
                Some(i) if word.len() < positive_roots.len() => word.push(i),
                _ => break,
            }
        }
        let star = (0..n)
            .map(|i| {
                let image = self.apply_word(&word, &RootVector::simple(n, i));
                (0..n).find(|&j| image == RootVector::simple(n, j).neg()).unwrap_or(i)
            })
            .collect();

        let mut numbers: BTreeSet<Option<usize>> = BTreeSet::new();
        for comp in self.components() {
            let count = positive_roots
                .iter()
                .filter(|r| comp.iter().any(|&i| r.0[i] != 0))
                .count();
            numbers.insert(((2 * count) % comp.len() == 0).then(|| 2 * count / comp.len()));
        }
        let coxeter_number = match numbers.len() {
            1 => numbers.into_iter().next().flatten(),
            _ => None,
        };
        Ok(FiniteTypeData { positive_roots, longest_word: word, star, coxeter_number })
    }
}

impl fmt::Display for CartanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

fn simple_type(family: &str, n: usize) -> Option<Vec<Vec<i64>>> {
    if n == 0 {
        return None;
    }
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    match family.to_ascii_uppercase().as_str() {
        "A" => {}
        "B" if n >= 2 => m[n - 1][n - 2] = -2,
        "C" if n >= 2 => m[n - 2][n - 1] = -2,
        "D" if n >= 4 => {
            m[n - 2][n - 1] = 0;
            m[n - 1][n - 2] = 0;
            m[n - 3][n - 1] = -1;
            m[n - 1][n - 3] = -1;
        }
        "G" if n == 2 => m[1][0] = -3,
        _ => return None,
    }
    Some(m)
}

/// Solves `d_i c_ij = d_j c_ji` on each connected component; the result is the
/// primitive positive solution, which has minimum 1 on every finite or affine
/// component.
fn minimal_symmetrizer(matrix: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    let n = matrix.len();
    let mut ratio: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut out = vec![0i64; n];
    for start in 0..n {
        if ratio[start].is_some() {
            continue;
        }
        ratio[start] = Some(Ratio::from_integer(1));
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = ratio[i].expect("visited vertex has a ratio");
            for j in 0..n {
                if i == j || matrix[i][j] == 0 {
                    continue;
                }
                let dj = di * Ratio::new(matrix[i][j], matrix[j][i]);
                match ratio[j] {
                    None => {
                        ratio[j] = Some(dj);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(CartanError::NotSymmetrizable(format!("cycle through ({i},{j}) is inconsistent")));
                    }
                    Some(_) => {}
                }
            }
        }
        let denom_lcm = comp.iter().fold(1i64, |acc, &i| acc.lcm(ratio[i].unwrap().denom()));
        let ints: Vec<i64> = comp.iter().map(|&i| (ratio[i].unwrap() * denom_lcm).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &v) in comp.iter().zip(&ints) {
            out[i] = v / g;
        }
    }
    Ok(out)
}

/// A vector in the root lattice, in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x != 0)
    }

    pub fn is_negative(&self) -> bool {
        self.neg().is_positive()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVector(self.0.iter().map(|x| k * x).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordRoots {
    pub roots: Vec<RootVector>,
    /// All roots positive: the word is reduced.
    pub all_positive: bool,
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTypeData {
    pub positive_roots: Vec<RootVector>,
    /// Greedy lexicographically smallest reduced word for `w0`, 0-based letters.
    pub longest_word: Vec<usize>,
    /// `w0(alpha_i) = -alpha_{star[i]}`.
    pub star: Vec<usize>,
    /// `None` when the components have different Coxeter numbers.
    pub coxeter_number: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn a2_symmetrizer_is_trivial() {
        let cd = CartanData::validate(vec![vec![2, -1], vec![-1, 2]], None).unwrap();
        assert_eq!(cd.symmetrizer(), &[1, 1]);
    }

    #[test]
    fn b2_symmetrizer_solves_dc_symmetric() {
        // c12 = -1, c21 = -2: d1 * (-1) = d2 * (-2) forces d = (2, 1).
        let cd = CartanData::validate(vec![vec![2, -1], vec![-2, 2]], None).unwrap();
        assert_eq!(cd.symmetrizer(), &[2, 1]);
        let c2 = CartanData::of_type("C2").unwrap();
        assert_eq!(c2.symmetrizer(), &[1, 2]);
        let g2 = CartanData::of_type("G2").unwrap();
        assert_eq!(g2.symmetrizer(), &[3, 1]);
    }

    #[test]
    fn rejects_non_gcm() {
        assert!(matches!(
            CartanData::validate(vec![vec![2, 1], vec![1, 2]], None),
            Err(CartanError::NotGcm(_))
        ));
        assert!(matches!(
            CartanData::validate(vec![vec![3, -1], vec![-1, 2]], None),
            Err(CartanError::NotGcm(_))
        ));
        assert!(matches!(
            CartanData::validate(vec![vec![2, 0], vec![-1, 2]], None),
            Err(CartanError::NotGcm(_))
        ));
    }

    #[test]
    fn rejects_inconsistent_cycle() {
        // Triangle whose ratios do not close up.
        let m = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert!(matches!(CartanData::validate(m, None), Err(CartanError::NotSymmetrizable(_))));
    }

    #[test]
    fn supplied_symmetrizer_is_checked() {
        let m = vec![vec![2, -1], vec![-2, 2]];
        assert!(CartanData::validate(m.clone(), Some(vec![4, 2])).is_ok());
        assert!(matches!(
            CartanData::validate(m, Some(vec![1, 2])),
            Err(CartanError::NotSymmetrizable(_))
        ));
    }

    #[test]
    fn bilinear_examples() {
        let a2 = CartanData::of_type("A2").unwrap();
        assert_eq!(a2.bilinear_form(&rv(&[1, 0]), &rv(&[1, 0])).unwrap(), 2);
        assert_eq!(a2.bilinear_form(&rv(&[1, 0]), &rv(&[0, 1])).unwrap(), -1);
        let b2 = CartanData::of_type("B2").unwrap();
        // Long simple root has squared length 2 d = 4.
        assert_eq!(b2.bilinear_form(&rv(&[1, 0]), &rv(&[1, 0])).unwrap(), 4);
        assert_eq!(b2.bilinear_form(&rv(&[0, 1]), &rv(&[0, 1])).unwrap(), 2);
        let c2 = CartanData::of_type("C2").unwrap();
        assert_eq!(c2.bilinear_form(&rv(&[0, 1]), &rv(&[0, 1])).unwrap(), 4);
        assert!(matches!(
            a2.bilinear_form(&rv(&[1]), &rv(&[1, 0])),
            Err(CartanError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflection_examples() {
        let a2 = CartanData::of_type("A2").unwrap();
        assert_eq!(a2.reflect_root(0, &rv(&[1, 0])).unwrap(), rv(&[-1, 0]));
        assert_eq!(a2.reflect_root(0, &rv(&[0, 1])).unwrap(), rv(&[1, 1]));
        let b2 = CartanData::of_type("B2").unwrap();
        assert_eq!(b2.reflect_root(1, &rv(&[1, 0])).unwrap(), rv(&[1, 2]));
        assert!(matches!(a2.reflect_root(5, &rv(&[1, 0])), Err(CartanError::IndexOutOfRange(5))));
    }

    #[test]
    fn roots_of_words() {
        let a2 = CartanData::of_type("A2").unwrap();
        let r = a2.roots_of_word(&[0, 1, 0]).unwrap();
        assert_eq!(r.roots, vec![rv(&[1, 0]), rv(&[1, 1]), rv(&[0, 1])]);
        assert!(r.all_positive && r.distinct);
        let r = a2.roots_of_word(&[0, 0]).unwrap();
        assert_eq!(r.roots, vec![rv(&[1, 0]), rv(&[-1, 0])]);
        assert!(!r.all_positive);
        let b2 = CartanData::of_type("B2").unwrap();
        let r = b2.roots_of_word(&[0, 1, 0, 1]).unwrap();
        assert_eq!(r.roots, vec![rv(&[1, 0]), rv(&[1, 1]), rv(&[1, 2]), rv(&[0, 1])]);
    }

    #[test]
    fn finite_type_examples() {
        let a2 = CartanData::of_type("A2").unwrap().finite_type_data().unwrap();
        assert_eq!(a2.positive_roots.len(), 3);
        assert_eq!(a2.longest_word, vec![0, 1, 0]);
        assert_eq!(a2.star, vec![1, 0]);
        assert_eq!(a2.coxeter_number, Some(3));

        let a1 = CartanData::of_type("A1").unwrap().finite_type_data().unwrap();
        assert_eq!((a1.positive_roots.len(), a1.longest_word.clone(), a1.star.clone()), (1, vec![0], vec![0]));
        assert_eq!(a1.coxeter_number, Some(2));

        let b2 = CartanData::of_type("B2").unwrap().finite_type_data().unwrap();
        assert_eq!(b2.positive_roots.len(), 4);
        assert_eq!(b2.coxeter_number, Some(4));
        assert_eq!(b2.star, vec![0, 1]);

        let a3 = CartanData::of_type("A3").unwrap().finite_type_data().unwrap();
        assert_eq!(a3.longest_word, vec![0, 1, 0, 2, 1, 0]);
        assert_eq!(a3.star, vec![2, 1, 0]);

        let mixed = CartanData::of_type("A1xA2").unwrap().finite_type_data().unwrap();
        assert_eq!(mixed.positive_roots.len(), 4);
        assert_eq!(mixed.coxeter_number, None);
    }

    #[test]
    fn affine_type_is_rejected() {
        let affine_a1 = CartanData::validate(vec![vec![2, -2], vec![-2, 2]], None).unwrap();
        assert!(matches!(affine_a1.finite_type_data(), Err(CartanError::NotFiniteType(_))));
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"indices":[1,2],"matrix":[[2,-1],[-2,2]]}"#;
        let spec: CartanSpec = serde_json::from_str(json).unwrap();
        let cd = CartanData::from_spec(spec).unwrap();
        assert_eq!(cd.symmetrizer(), &[2, 1]);
        let back = CartanData::from_spec(cd.to_spec()).unwrap();
        assert_eq!(back, cd);
    }
}
