//! Seeds: cluster variables with exact and tropical data, exchange matrix and
//! Λ, plus mutation, permutation and restriction.

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::lusztig::{bilex_slices, par_mutation, ExponentVector, LusztigError, OrderVerdict};
use crate::words::{ibox_vector, IBox, Word};

use super::lambda::solve_lambda;
use super::matrix::{gls_matrix, ExchangeMatrix, LambdaMatrix};
use super::torus::{QuantumLaurent, Torus};
use super::SeedError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterVariable {
    /// Leading exponent vector in the parameterization of the seed's word.
    pub tropical: ExponentVector,
    /// Laurent expansion in the initial torus, when exact arithmetic is on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<QuantumLaurent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub labels: Vec<String>,
    #[serde(rename = "B")]
    pub b: ExchangeMatrix,
    #[serde(rename = "Lambda")]
    pub lambda: LambdaMatrix,
    pub variables: Vec<ClusterVariable>,
    /// Letters of the word whose parameterization the tropical data uses.
    pub word: Vec<usize>,
    /// The torus in which exact forms live (that of the initial seed).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<Torus>,
}

/// Everything computed while exchanging one variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeRecord {
    pub slot: usize,
    /// Exponents `a` (from `[b_jk]_+`) and `a'` (from `[-b_jk]_+`), with `-1` at `k`.
    pub a: Vec<i64>,
    pub a_prime: Vec<i64>,
    pub tropical_d1: ExponentVector,
    pub tropical_d2: ExponentVector,
    pub tropical: ExponentVector,
    /// `X_k mu_k(X_k) = q^{alpha/2} M_1 + q^{beta/2} M_2`; stored doubled.
    pub alpha_doubled: Option<i64>,
    pub beta_doubled: Option<i64>,
    pub verified: Option<bool>,
}

/// `(mu_k B, mu_k Λ)`.
pub fn mutate_pair(b: &ExchangeMatrix, lam: &LambdaMatrix, k: usize) -> Result<(ExchangeMatrix, LambdaMatrix), SeedError> {
    if k >= b.size() || !b.is_exchangeable(k) {
        return Err(SeedError::FrozenIndex(k));
    }
    Ok((b.mutate(k), lam.mutate(k, b)))
}

fn check_permutation(rho: &[usize], r: usize) -> Result<(), SeedError> {
    let mut seen = vec![false; r];
    if rho.len() != r {
        return Err(SeedError::InvalidPermutation);
    }
    for &x in rho {
        if x >= r || std::mem::replace(&mut seen[x], true) {
            return Err(SeedError::InvalidPermutation);
        }
    }
    Ok(())
}

fn add_scaled(acc: &mut [u32], v: &ExponentVector, k: u32) {
    for (a, x) in acc.iter_mut().zip(&v.0) {
        *a += k * x;
    }
}

impl Seed {
    /// The seed of a word: variables `D[s, len}` with tropical parameters the
    /// corresponding i-box vectors, exchange matrix from the word, Λ from
    /// [`solve_lambda`]. With `exact`, variable `s` is the generator `X_s`.
    pub fn gls(cd: &CartanData, w: &Word, exact: bool) -> Result<Seed, SeedError> {
        let b = gls_matrix(cd, w);
        let lambda = solve_lambda(&b)?;
        Self::from_parts(w, b, lambda, exact)
    }

    pub fn from_parts(w: &Word, b: ExchangeMatrix, lambda: LambdaMatrix, exact: bool) -> Result<Seed, SeedError> {
        let n = w.len();
        if b.size() != n || lambda.size() != n {
            return Err(SeedError::ShapeMismatch("seed data must match the word length".into()));
        }
        let variables = (1..=n)
            .map(|s| {
                Ok(ClusterVariable {
                    tropical: ibox_vector(w, IBox::brace(s, n))?,
                    exact: exact.then(|| QuantumLaurent::generator(n, s - 1)),
                })
            })
            .collect::<Result<Vec<_>, SeedError>>()?;
        Ok(Seed {
            labels: (1..=n).map(|s| format!("D[{s},{n}}}")).collect(),
            b,
            torus: exact.then(|| Torus::new(lambda.clone())),
            lambda,
            variables,
            word: w.letters().to_vec(),
        })
    }

    pub fn size(&self) -> usize {
        self.variables.len()
    }

    pub fn is_exact(&self) -> bool {
        self.torus.is_some() && self.variables.iter().all(|v| v.exact.is_some())
    }

    pub fn tropical(&self) -> Vec<ExponentVector> {
        self.variables.iter().map(|v| v.tropical.clone()).collect()
    }

    /// Mutation at slot `k`: matrices, the tropical parameter and (in exact
    /// mode) the Laurent expansion of the new variable.
    pub fn mutate(&self, k: usize) -> Result<(Seed, ExchangeRecord), SeedError> {
        let (b2, l2) = mutate_pair(&self.b, &self.lambda, k)?;
        let r = self.size();
        let col: Vec<i64> = (0..r).map(|j| self.b.get(j, k)).collect();
        let a: Vec<i64> = (0..r).map(|j| if j == k { -1 } else { col[j].max(0) }).collect();
        let a_prime: Vec<i64> = (0..r).map(|j| if j == k { -1 } else { (-col[j]).max(0) }).collect();

        let len = self.variables[k].tropical.len();
        let (mut d1, mut d2) = (vec![0u32; len], vec![0u32; len]);
        for j in (0..r).filter(|&j| j != k) {
            add_scaled(&mut d1, &self.variables[j].tropical, a[j] as u32);
            add_scaled(&mut d2, &self.variables[j].tropical, a_prime[j] as u32);
        }
        let (d1, d2) = (ExponentVector(d1), ExponentVector(d2));
        let tropical = par_mutation(&self.variables[k].tropical, &d1, &d2).map_err(|e| match e {
            LusztigError::IncomparableLeadingTerms(x, y) => SeedError::TropicalIncomparable(x, y),
            other => SeedError::Lusztig(other),
        })?;

        let mut record = ExchangeRecord {
            slot: k,
            a: a.clone(),
            a_prime: a_prime.clone(),
            tropical_d1: d1,
            tropical_d2: d2,
            tropical: tropical.clone(),
            alpha_doubled: None,
            beta_doubled: None,
            verified: None,
        };
        let mut exact = None;
        if let (Some(torus), true) = (&self.torus, self.is_exact()) {
            let (alpha, m1) = self.exchange_monomial(torus, k, &a)?;
            let (beta, m2) = self.exchange_monomial(torus, k, &a_prime)?;
            let rhs = m1.shifted(alpha).add(&m2.shifted(beta));
            let xk = self.variables[k].exact.as_ref().expect("exact seed");
            let g = torus.left_divide(xk, &rhs)?;
            record.verified = Some(torus.product(xk, &g)? == rhs);
            record.alpha_doubled = Some(alpha);
            record.beta_doubled = Some(beta);
            exact = Some(g);
        }
        let mut out = self.clone();
        out.b = b2;
        out.lambda = l2;
        out.variables[k] = ClusterVariable { tropical, exact };
        out.labels[k] = format!("mu{}({})", k + 1, self.labels[k]);
        Ok((out, record))
    }

    /// For `X^a = q^{c/2} X_k^{-1} prod_{j != k} X_j^{a_j}`, returns `c` and the
    /// ordered product. Uses the commutation matrix of the current seed.
    fn exchange_monomial(&self, torus: &Torus, k: usize, a: &[i64]) -> Result<(i64, QuantumLaurent), SeedError> {
        let r = self.size();
        let lam = &self.lambda;
        let mut c = 0;
        for i in 0..r {
            for j in 0..i {
                c += a[i] * a[j] * lam.get(i, j);
            }
        }
        c -= 2 * (0..k).map(|j| a[j] * lam.get(j, k)).sum::<i64>();
        let mut product = QuantumLaurent::one(torus.rank());
        for j in (0..r).filter(|&j| j != k && a[j] > 0) {
            let xj = self.variables[j].exact.as_ref().expect("exact seed");
            product = torus.product(&product, &torus.power(xj, a[j] as u32)?)?;
        }
        Ok((c, product))
    }

    /// Slot `i` receives the data of slot `rho[i]`; the exchange flags travel
    /// with their variables.
    pub fn relabel(&self, rho: &[usize]) -> Result<Seed, SeedError> {
        check_permutation(rho, self.size())?;
        Ok(Seed {
            labels: rho.iter().map(|&j| self.labels[j].clone()).collect(),
            b: self.b.relabel(rho),
            lambda: self.lambda.relabel(rho),
            variables: rho.iter().map(|&j| self.variables[j].clone()).collect(),
            word: self.word.clone(),
            torus: self.torus.clone(),
        })
    }

    /// The permuted seed `rho(t)`; requires `rho(K^ex) ⊆ K^ex`.
    pub fn permute(&self, rho: &[usize]) -> Result<Seed, SeedError> {
        check_permutation(rho, self.size())?;
        if self.b.exchange_slots().iter().any(|&k| !self.b.is_exchangeable(rho[k])) {
            return Err(SeedError::ExchangeSetNotPreserved);
        }
        self.relabel(rho)
    }

    /// The restricted seed on slots `keep` with exchange slots `keep_ex`.
    pub fn restrict(&self, keep: &[usize], keep_ex: &[usize]) -> Result<Seed, SeedError> {
        let r = self.size();
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.iter().any(|&i| i >= r) {
            return Err(SeedError::ShapeMismatch("slot out of range".into()));
        }
        if keep_ex.iter().any(|j| !keep.contains(j) || !self.b.is_exchangeable(*j)) {
            return Err(SeedError::ShapeMismatch("exchange slots must be kept exchange slots".into()));
        }
        for row in (0..r).filter(|i| !keep.contains(i)) {
            for &col in keep_ex {
                if self.b.get(row, col) != 0 {
                    return Err(SeedError::ZeroBlockViolated { row, col });
                }
            }
        }
        let project = |v: &ExponentVector| ExponentVector(keep.iter().map(|&i| v.0[i]).collect());
        let same_length = self.word.len() == r;
        Ok(Seed {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            b: self.b.submatrix(&keep, keep_ex),
            lambda: self.lambda.submatrix(&keep),
            variables: keep
                .iter()
                .map(|&i| {
                    let v = &self.variables[i];
                    ClusterVariable {
                        tropical: if same_length { project(&v.tropical) } else { v.tropical.clone() },
                        exact: v.exact.clone(),
                    }
                })
                .collect(),
            word: if same_length { keep.iter().map(|&i| self.word[i]).collect() } else { self.word.clone() },
            torus: self.torus.clone(),
        })
    }
}

/// The bilex-leading image of the terms of `f` under `X_j -> initial[j]`:
/// each monomial `X^e` maps to `sum_j e_j initial[j]`. `None` when no image
/// dominates all others.
pub fn leading_parameter(initial: &[ExponentVector], f: &QuantumLaurent) -> Option<Vec<i64>> {
    let len = initial.first().map_or(0, ExponentVector::len);
    let images: Vec<Vec<i64>> = f
        .terms()
        .map(|(e, _)| {
            let mut v = vec![0i64; len];
            for (&ej, t) in e.iter().zip(initial) {
                for (x, &tj) in v.iter_mut().zip(&t.0) {
                    *x += ej * tj as i64;
                }
            }
            v
        })
        .collect();
    images
        .iter()
        .find(|v| images.iter().all(|u| u == *v || bilex_slices(u, v) == OrderVerdict::Less))
        .cloned()
}
