//! Compatible Λ matrices: `sum_k λ_ik b_kj = -2 d'_j δ_ij` for `j` in `K^ex`.

use crate::zlinalg::{shortest_point, solve_integer_system};

use super::matrix::{ExchangeMatrix, LambdaMatrix};
use super::SeedError;

fn pair_index(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect()
}

/// The canonical compatible Λ: the integral solution of minimal Euclidean
/// norm (upper-triangle entries, row-major), ties broken by absolute values
/// then by preferring positive signs.
pub fn solve_lambda(b: &ExchangeMatrix) -> Result<LambdaMatrix, SeedError> {
    let r = b.size();
    let pairs = pair_index(r);
    let ex = b.exchange_slots();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..r {
        for &j in &ex {
            let row: Vec<i64> = pairs
                .iter()
                .map(|&(p, q)| {
                    let mut c = 0;
                    if i == p {
                        c += b.get(q, j);
                    }
                    if i == q {
                        c -= b.get(p, j);
                    }
                    c
                })
                .collect();
            rows.push(row);
            rhs.push(if i == j { -2 * b.dprime[j] } else { 0 });
        }
    }
    if pairs.is_empty() {
        return if rhs.iter().all(|&x| x == 0) { Ok(LambdaMatrix::zero(r)) } else { Err(SeedError::NoIntegralSolution) };
    }
    let lattice = solve_integer_system(&rows, &rhs, pairs.len()).ok_or(SeedError::NoIntegralSolution)?;
    let x = shortest_point(&lattice);
    let mut lam = LambdaMatrix::zero(r);
    for (&(p, q), &v) in pairs.iter().zip(&x) {
        lam.entries[p][q] = v;
        lam.entries[q][p] = -v;
    }
    Ok(lam)
}

/// `Λ B` restricted to exchange columns, as a `K x K^ex` matrix.
pub fn lambda_times_b(lam: &LambdaMatrix, b: &ExchangeMatrix) -> Vec<Vec<i64>> {
    let r = b.size();
    let ex = b.exchange_slots();
    (0..r).map(|i| ex.iter().map(|&j| (0..r).map(|k| lam.get(i, k) * b.get(k, j)).sum()).collect()).collect()
}

pub fn check_compatibility(lam: &LambdaMatrix, b: &ExchangeMatrix) -> Result<bool, SeedError> {
    if lam.size() != b.size() {
        return Err(SeedError::ShapeMismatch(format!("Λ is {} x {}, B has {} rows", lam.size(), lam.size(), b.size())));
    }
    if !lam.is_skew_symmetric() {
        return Ok(false);
    }
    let ex = b.exchange_slots();
    let prod = lambda_times_b(lam, b);
    Ok((0..b.size()).all(|i| {
        ex.iter().enumerate().all(|(c, &j)| prod[i][c] == if i == j { -2 * b.dprime[j] } else { 0 })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::seeds::matrix::gls_matrix;
    use crate::words::Word;

    #[test]
    fn a2_canonical_lambda() {
        let cd = CartanData::of_type("A2").unwrap();
        let b = gls_matrix(&cd, &Word::weyl(&cd, vec![0, 1, 0]).unwrap());
        let lam = solve_lambda(&b).unwrap();
        assert_eq!(lam.get(0, 1), 0);
        assert_eq!(lam.get(2, 0), 1);
        assert_eq!(lam.get(2, 1), -1);
        assert!(check_compatibility(&lam, &b).unwrap());
        assert!(!check_compatibility(&LambdaMatrix::zero(3), &b).unwrap());
    }

    #[test]
    fn empty_exchange_set_gives_zero() {
        let cd = CartanData::of_type("A3").unwrap();
        let b = gls_matrix(&cd, &Word::weyl(&cd, vec![0, 1, 2]).unwrap());
        assert_eq!(solve_lambda(&b).unwrap(), LambdaMatrix::zero(3));
    }

    #[test]
    fn parity_obstruction() {
        let b = ExchangeMatrix::new(vec![vec![1]], vec![true], vec![1]).unwrap();
        assert_eq!(solve_lambda(&b), Err(SeedError::NoIntegralSolution));
    }

    #[test]
    fn shape_is_checked() {
        let b = ExchangeMatrix::new(vec![vec![0]], vec![false], vec![1]).unwrap();
        assert!(matches!(check_compatibility(&LambdaMatrix::zero(2), &b), Err(SeedError::ShapeMismatch(_))));
    }
}
