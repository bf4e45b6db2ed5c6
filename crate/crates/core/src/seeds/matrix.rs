//! Exchange matrices, skew-symmetric Λ matrices and their mutation.

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::words::{next_occurrence, prev_occurrence, Word};

use super::SeedError;

/// A square `K x K` matrix together with an exchange set. Only the
/// `K x K^ex` block carries seed data; the remaining columns are kept so that
/// permutations and display stay uniform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    pub entries: Vec<Vec<i64>>,
    pub exchange: Vec<bool>,
    /// `d'_s`, defined on every slot (it is `d_{i_s}` for GLS seeds).
    pub dprime: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>, exchange: Vec<bool>, dprime: Vec<i64>) -> Result<Self, SeedError> {
        let r = entries.len();
        if entries.iter().any(|row| row.len() != r) || exchange.len() != r || dprime.len() != r {
            return Err(SeedError::ShapeMismatch("exchange matrix must be square with matching labels".into()));
        }
        Ok(ExchangeMatrix { entries, exchange, dprime })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn is_exchangeable(&self, k: usize) -> bool {
        self.exchange[k]
    }

    pub fn exchange_slots(&self) -> Vec<usize> {
        (0..self.size()).filter(|&k| self.exchange[k]).collect()
    }

    /// The `K x K^ex` block, columns in increasing slot order.
    pub fn exchange_block(&self) -> Vec<Vec<i64>> {
        let cols = self.exchange_slots();
        self.entries.iter().map(|row| cols.iter().map(|&j| row[j]).collect()).collect()
    }

    /// `d'_i b_ij = -d'_j b_ji` on the exchangeable principal part.
    pub fn is_skew_symmetrizable(&self) -> bool {
        let ex = self.exchange_slots();
        ex.iter().all(|&i| ex.iter().all(|&j| self.dprime[i] * self.get(i, j) == -self.dprime[j] * self.get(j, i)))
    }

    /// Matrix mutation at slot `k`.
    pub fn mutate(&self, k: usize) -> ExchangeMatrix {
        let r = self.size();
        let b = &self.entries;
        let mut out = b.clone();
        for i in 0..r {
            for j in 0..r {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        ExchangeMatrix { entries: out, exchange: self.exchange.clone(), dprime: self.dprime.clone() }
    }

    /// `b'_ij = b_{ρ(i) ρ(j)}` with the exchange flags carried along with their
    /// slots, i.e. the new exchange set is `ρ^{-1}(K^ex)`.
    pub fn relabel(&self, rho: &[usize]) -> ExchangeMatrix {
        let r = self.size();
        ExchangeMatrix {
            entries: (0..r).map(|i| (0..r).map(|j| self.entries[rho[i]][rho[j]]).collect()).collect(),
            exchange: (0..r).map(|i| self.exchange[rho[i]]).collect(),
            dprime: (0..r).map(|i| self.dprime[rho[i]]).collect(),
        }
    }

    pub fn submatrix(&self, keep: &[usize], exchange: &[usize]) -> ExchangeMatrix {
        ExchangeMatrix {
            entries: keep.iter().map(|&i| keep.iter().map(|&j| self.entries[i][j]).collect()).collect(),
            exchange: keep.iter().map(|i| exchange.contains(i)).collect(),
            dprime: keep.iter().map(|&i| self.dprime[i]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LambdaMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl LambdaMatrix {
    pub fn zero(r: usize) -> Self {
        LambdaMatrix { entries: vec![vec![0; r]; r] }
    }

    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, SeedError> {
        let m = LambdaMatrix { entries };
        let r = m.size();
        if m.entries.iter().any(|row| row.len() != r) {
            return Err(SeedError::ShapeMismatch("Λ must be square".into()));
        }
        if !m.is_skew_symmetric() {
            return Err(SeedError::ShapeMismatch("Λ must be skew-symmetric".into()));
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let r = self.size();
        (0..r).all(|i| (0..r).all(|j| self.entries[i][j] == -self.entries[j][i]))
    }

    /// `Λ(a, b) = sum_ij a_i b_j λ_ij`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut total = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                total += ai * bj * self.entries[i][j];
            }
        }
        total
    }

    /// Λ-mutation at `k` against the exchange matrix `b` of the same seed.
    pub fn mutate(&self, k: usize, b: &ExchangeMatrix) -> LambdaMatrix {
        let r = self.size();
        let lam = &self.entries;
        let weight: Vec<i64> = (0..r).map(|l| (-b.get(l, k)).max(0)).collect();
        let mut out = lam.clone();
        for j in 0..r {
            if j == k {
                continue;
            }
            let v = -lam[k][j] + (0..r).map(|l| weight[l] * lam[l][j]).sum::<i64>();
            out[k][j] = v;
            out[j][k] = -v;
        }
        LambdaMatrix { entries: out }
    }

    pub fn relabel(&self, rho: &[usize]) -> LambdaMatrix {
        let r = self.size();
        LambdaMatrix { entries: (0..r).map(|i| (0..r).map(|j| self.entries[rho[i]][rho[j]]).collect()).collect() }
    }

    pub fn submatrix(&self, keep: &[usize]) -> LambdaMatrix {
        LambdaMatrix { entries: keep.iter().map(|&i| keep.iter().map(|&j| self.entries[i][j]).collect()).collect() }
    }

    pub fn sub(&self, other: &LambdaMatrix) -> LambdaMatrix {
        LambdaMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }
}

/// The exchange matrix of a word: position-indexed, with `K^ex = {s : s^- >= 1}`
/// and `d'_s = d_{i_s}`.
pub fn gls_matrix(cd: &CartanData, w: &Word) -> ExchangeMatrix {
    let letters = w.letters();
    let n = letters.len();
    let minus: Vec<usize> = (1..=n).map(|k| prev_occurrence(letters, k, letters[k - 1])).collect();
    let plus: Vec<usize> = (1..=n).map(|k| next_occurrence(letters, k, letters[k - 1])).collect();
    let mut entries = vec![vec![0i64; n]; n];
    for k in 1..=n {
        let (km, kp) = (minus[k - 1], plus[k - 1]);
        for l in 1..=n {
            let lm = minus[l - 1];
            let c = cd.entry(letters[k - 1], letters[l - 1]);
            entries[k - 1][l - 1] = if km >= 1 && l == km {
                1
            } else if kp <= n && l == kp {
                -1
            } else if lm < km && km < l && l < k {
                c
            } else if km < lm && lm < k && k < l {
                -c
            } else {
                0
            };
        }
    }
    ExchangeMatrix {
        entries,
        exchange: minus.iter().map(|&m| m >= 1).collect(),
        dprime: letters.iter().map(|&i| cd.d(i)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gls_a2() {
        let cd = CartanData::of_type("A2").unwrap();
        let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
        let b = gls_matrix(&cd, &w);
        assert_eq!(b.exchange, vec![false, false, true]);
        assert_eq!(b.exchange_block(), vec![vec![-1], vec![1], vec![0]]);
        assert_eq!((b.get(2, 0), b.get(2, 1)), (1, -1));
        assert!(b.is_skew_symmetrizable());
    }

    #[test]
    fn distinct_letters_have_no_exchange_slots() {
        let cd = CartanData::of_type("A3").unwrap();
        let b = gls_matrix(&cd, &Word::weyl(&cd, vec![0, 1, 2]).unwrap());
        assert!(b.exchange_slots().is_empty());
        assert!(b.exchange_block().iter().all(Vec::is_empty));
    }

    #[test]
    fn full_gls_matrix_is_skew_symmetrizable() {
        let cd = CartanData::of_type("B3").unwrap();
        let w = Word::braid(&cd, vec![0, 1, 2, 1, 0, 1, 2, 2]).unwrap();
        let b = gls_matrix(&cd, &w);
        let n = w.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(b.dprime[i] * b.get(i, j), -b.dprime[j] * b.get(j, i), "({i},{j})");
            }
        }
    }

    #[test]
    fn mutation_is_involutive() {
        let cd = CartanData::of_type("A3").unwrap();
        let w = Word::weyl(&cd, vec![0, 1, 0, 2, 1, 0]).unwrap();
        let b = gls_matrix(&cd, &w);
        let lam = LambdaMatrix::zero(6);
        for k in b.exchange_slots() {
            assert_eq!(b.mutate(k).mutate(k), b);
            let l1 = lam.mutate(k, &b);
            assert_eq!(l1.mutate(k, &b.mutate(k)), lam);
        }
    }
}
