//! Small exact integer linear algebra: solving `M x = r` over the integers
//! and picking the shortest point of the resulting affine lattice.

use itertools::Itertools;
use num_integer::Integer;

/// Particular solution plus a basis of the integer kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLattice {
    pub particular: Vec<i64>,
    pub kernel: Vec<Vec<i64>>,
}

fn to_i64(x: i128) -> Option<i64> {
    i64::try_from(x).ok()
}

/// Solves `m x = rhs` in integers. Returns `None` when no integral solution
/// exists. `m` has `rows` rows of length `cols`.
pub fn solve_integer_system(m: &[Vec<i64>], rhs: &[i64], cols: usize) -> Option<AffineLattice> {
    let rows = m.len();
    let mut h: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // u starts as the identity; column operations on h are mirrored on u.
    let mut u: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |mat: &mut Vec<Vec<i128>>, c: usize, j: usize, (a, b, cc, d): (i128, i128, i128, i128)| {
        // new col c = a*col_c + b*col_j ; new col j = cc*col_c + d*col_j
        for row in mat.iter_mut() {
            let (x, y) = (row[c], row[j]);
            row[c] = a * x + b * y;
            row[j] = cc * x + d * y;
        }
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut c = 0;
    for r in 0..rows {
        if c == cols {
            break;
        }
        for j in c + 1..cols {
            if h[r][j] == 0 {
                continue;
            }
            let (x, y) = (h[r][c], h[r][j]);
            let e = x.extended_gcd(&y);
            let g = e.gcd;
            let op = (e.x, e.y, -y / g, x / g);
            col_op(&mut h, c, j, op);
            col_op(&mut u, c, j, op);
        }
        if h[r][c] != 0 {
            if h[r][c] < 0 {
                let neg = (-1, 0, 0, -1);
                col_op(&mut h, c, c, neg);
                col_op(&mut u, c, c, neg);
            }
            pivots.push((r, c));
            c += 1;
        }
    }
    let mut y = vec![0i128; cols];
    for &(r, p) in &pivots {
        let partial: i128 = (0..p).map(|q| h[r][q] * y[q]).sum();
        let num = rhs[r] as i128 - partial;
        if num % h[r][p] != 0 {
            return None;
        }
        y[p] = num / h[r][p];
    }
    for r in 0..rows {
        let lhs: i128 = (0..cols).map(|q| h[r][q] * y[q]).sum();
        if lhs != rhs[r] as i128 {
            return None;
        }
    }
    let particular = (0..cols)
        .map(|i| to_i64((0..cols).map(|q| u[i][q] * y[q]).sum()))
        .collect::<Option<Vec<_>>>()?;
    let rank = pivots.len();
    let kernel = (rank..cols)
        .map(|q| (0..cols).map(|i| to_i64(u[i][q])).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some(AffineLattice { particular, kernel })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LLL reduction (delta = 3/4) of an integer basis, floating-point
/// Gram-Schmidt; adequate for the tiny kernels that occur here.
pub fn lll_reduce(mut basis: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let gso = |b: &[Vec<i64>]| -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let mut star: Vec<Vec<f64>> = Vec::new();
        let mut mu = vec![vec![0.0; n]; n];
        for i in 0..n {
            let bi: Vec<f64> = b[i].iter().map(|&x| x as f64).collect();
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = dotf(&bi, &star[j]) / dotf(&star[j], &star[j]);
                for (vk, sk) in v.iter_mut().zip(&star[j]) {
                    *vk -= mu[i][j] * sk;
                }
            }
            star.push(v);
        }
        (star, mu)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (_, mu) = gso(&basis);
            let q = mu[k][j].round() as i64;
            if q != 0 {
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
            }
        }
        let (star, mu) = gso(&basis);
        let lhs = dotf(&star[k], &star[k]);
        let rhs = (0.75 - mu[k][k - 1] * mu[k][k - 1]) * dotf(&star[k - 1], &star[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    basis
}

/// Solves the small dense real system `g t = rhs` (Gaussian elimination with
/// partial pivoting); also returns the inverse of `g`.
fn solve_real(g: &[Vec<f64>], rhs: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = g[i].clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row.push(rhs[i]);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).expect("nonempty");
        a.swap(c, p);
        let piv = a[c][c];
        for v in a[c].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                if f != 0.0 {
                    let pivot_row = a[c].clone();
                    for (v, pv) in a[r].iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
    }
    let t = (0..n).map(|i| a[i][2 * n]).collect();
    let inv = (0..n).map(|i| a[i][n..2 * n].to_vec()).collect();
    (t, inv)
}

/// Deterministic sort key: smaller absolute values first, and at equal
/// absolute value the positive sign wins.
fn tie_key(x: &[i64]) -> Vec<(u64, bool)> {
    x.iter().map(|&v| (v.unsigned_abs(), v < 0)).collect()
}

/// The point of `particular + span_Z(kernel)` with minimal Euclidean norm;
/// ties are broken lexicographically by absolute value, then positive sign.
pub fn shortest_point(lattice: &AffineLattice) -> Vec<i64> {
    let x0 = &lattice.particular;
    let kernel = lll_reduce(lattice.kernel.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect());
    let d = kernel.len();
    if d == 0 {
        return x0.clone();
    }
    let g: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| dot(&kernel[i], &kernel[j]) as f64).collect()).collect();
    let rhs: Vec<f64> = (0..d).map(|i| -(dot(&kernel[i], x0) as f64)).collect();
    let (tstar, ginv) = solve_real(&g, &rhs);
    let point = |t: &[i64]| -> Vec<i64> {
        let mut x = x0.clone();
        for (ti, v) in t.iter().zip(&kernel) {
            for (xk, vk) in x.iter_mut().zip(v) {
                *xk += ti * vk;
            }
        }
        x
    };
    let norm = |x: &[i64]| dot(x, x);
    let rounded: Vec<i64> = tstar.iter().map(|t| t.round() as i64).collect();
    let start = point(&rounded);
    let real_min = {
        let xr: Vec<f64> = (0..x0.len())
            .map(|k| x0[k] as f64 + (0..d).map(|i| tstar[i] * kernel[i][k] as f64).sum::<f64>())
            .collect();
        dotf(&xr, &xr)
    };
    let slack = (norm(&start) as f64 - real_min).max(0.0) + 1e-6;
    let ranges: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            let r = (slack * ginv[i][i].max(0.0)).sqrt();
            ((tstar[i] - r).floor() as i64..=(tstar[i] + r).ceil() as i64).collect()
        })
        .collect();
    let mut best = start;
    for t in ranges.into_iter().multi_cartesian_product() {
        let x = point(&t);
        let (nx, nb) = (norm(&x), norm(&best));
        if nx < nb || (nx == nb && tie_key(&x) < tie_key(&best)) {
            best = x;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_parametrizes() {
        // x + 2y = 4 ; kernel spanned by (2, -1).
        let lat = solve_integer_system(&[vec![1, 2]], &[4], 2).unwrap();
        assert_eq!(dot(&[1, 2], &lat.particular), 4);
        assert_eq!(lat.kernel.len(), 1);
        assert_eq!(dot(&[1, 2], &lat.kernel[0]), 0);
        // closest to origin on x + 2y = 4 among integers: (0,2) norm 4 vs (2,1) norm 5.
        assert_eq!(shortest_point(&lat), vec![0, 2]);
    }

    #[test]
    fn detects_no_integral_solution() {
        assert!(solve_integer_system(&[vec![2, 4]], &[3], 2).is_none());
        assert!(solve_integer_system(&[vec![1, 1], vec![1, 1]], &[1, 2], 2).is_none());
        assert!(solve_integer_system(&[vec![0]], &[1], 1).is_none());
    }

    #[test]
    fn tie_break_prefers_positive() {
        // x + y = 0 ; (0,0) has norm 0, unique.
        let lat = solve_integer_system(&[vec![1, 1]], &[0], 2).unwrap();
        assert_eq!(shortest_point(&lat), vec![0, 0]);
        // x + y = 1 : (1,0) and (0,1) tie; lexicographic on |x| picks (0,1).
        let lat = solve_integer_system(&[vec![1, 1]], &[1], 2).unwrap();
        assert_eq!(shortest_point(&lat), vec![0, 1]);
        // x - y = 0 with x + y + 2z = 2: candidates (1,1,0) norm 2, (0,0,1) norm 1.
        let lat = solve_integer_system(&[vec![1, -1, 0], vec![1, 1, 2]], &[0, 2], 3).unwrap();
        assert_eq!(shortest_point(&lat), vec![0, 0, 1]);
    }

    #[test]
    fn lll_keeps_lattice() {
        let b = lll_reduce(vec![vec![1, 1, 1], vec![-1, 0, 2], vec![3, 5, 6]]);
        let det = |m: &[Vec<i64>]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        assert_eq!(det(&b).abs(), 3);
    }
}
