//! Values checked against independent brute-force computations, and a few
//! published closed forms.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use braidseed::lusztig::{local_transition, transition_apply, FourBranch};
use braidseed::qdatum::{cartan_tilde, n_form, RepetitionPoint};
use braidseed::seeds::{check_compatibility, gls_matrix, solve_lambda, LambdaMatrix, QuantumLaurent, Seed, Torus};
use braidseed::words::enumerate_moves;
use braidseed::{CartanData, ExponentVector, MoveKind, RootVector, Word};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Weyl group by brute force: reflections from the symmetric form.

fn form(cd: &CartanData) -> Vec<Vec<i64>> {
    let n = cd.rank();
    (0..n).map(|i| (0..n).map(|j| cd.symmetrizer()[i] * cd.entry(i, j)).collect()).collect()
}

fn pair(s: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let n = x.len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| x[i] * y[j] * s[i][j]).sum()
}

/// `x - 2 (x, α_i)/(α_i, α_i) α_i`, with the division checked.
fn oracle_reflect(s: &[Vec<i64>], i: usize, x: &[i64]) -> Vec<i64> {
    let n = x.len();
    let mut ai = vec![0; n];
    ai[i] = 1;
    let num = 2 * pair(s, x, &ai);
    let den = pair(s, &ai, &ai);
    assert_eq!(num % den, 0);
    let mut out = x.to_vec();
    out[i] -= num / den;
    out
}

fn oracle_roots(cd: &CartanData, letters: &[usize]) -> Vec<Vec<i64>> {
    let s = form(cd);
    let n = cd.rank();
    (0..letters.len())
        .map(|k| {
            let mut v = vec![0; n];
            v[letters[k]] = 1;
            for &i in letters[..k].iter().rev() {
                v = oracle_reflect(&s, i, &v);
            }
            v
        })
        .collect()
}

/// Group elements as the images of the simple roots; returns the BFS length
/// of every element.
fn weyl_group(cd: &CartanData) -> HashMap<Vec<Vec<i64>>, usize> {
    let s = form(cd);
    let n = cd.rank();
    let id: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
    let mut seen = HashMap::from([(id.clone(), 0usize)]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let len = seen[&g];
        for i in 0..n {
            let h: Vec<Vec<i64>> = g.iter().map(|col| oracle_reflect(&s, i, col)).collect();
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), len + 1);
                queue.push_back(h);
            }
        }
    }
    seen
}

#[test]
fn roots_of_words_match_the_reflection_oracle() {
    for name in ["A2", "B2", "C2", "G2", "A3", "B3", "C3", "A1xA2"] {
        let cd = cartan(name);
        for n in 1..=5 {
            for letters in all_letters(cd.rank(), n) {
                let got = cd.roots_of_word(&letters).unwrap();
                let want = oracle_roots(&cd, &letters);
                let got: Vec<Vec<i64>> = got.roots.iter().map(|r| r.0.clone()).collect();
                assert_eq!(got, want, "{name} {letters:?}");
                let reduced = want.iter().all(|r| r.iter().all(|&x| x >= 0));
                assert_eq!(cd.is_reduced(&letters), reduced);
            }
        }
    }
}

/// For reduced `w`, the roots of the word are exactly the positive roots sent
/// negative by `w^{-1}`.
#[test]
fn word_roots_are_inversion_sets() {
    for name in ["A2", "B2", "G2", "A3", "B3", "C3", "A1xA2"] {
        let cd = cartan(name);
        let s = form(&cd);
        let positive: Vec<Vec<i64>> = cd.finite_type_data().unwrap().positive_roots.iter().map(|r| r.0.clone()).collect();
        for w in reduced_words(&cd, 8) {
            let inv: BTreeSet<Vec<i64>> = positive
                .iter()
                .filter(|b| {
                    // w^{-1} = s_{i_n} ... s_{i_1}: apply s_{i_1} first.
                    let img = w.letters().iter().fold((*b).clone(), |acc, &i| oracle_reflect(&s, i, &acc));
                    img.iter().all(|&x| x <= 0)
                })
                .cloned()
                .collect();
            let got = cd.roots_of_word(w.letters()).unwrap();
            assert!(got.distinct);
            let got: BTreeSet<Vec<i64>> = got.roots.into_iter().map(|r| r.0).collect();
            assert_eq!(got, inv, "{name} {:?}", w.letters());
        }
    }
}

#[test]
fn longest_element_matches_group_enumeration() {
    let sizes = [("A1", 2), ("A2", 6), ("B2", 8), ("C2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("C3", 48), ("A1xA2", 12)];
    for (name, order) in sizes {
        let cd = cartan(name);
        let group = weyl_group(&cd);
        assert_eq!(group.len(), order, "{name}");
        let longest = *group.values().max().unwrap();
        let ft = cd.finite_type_data().unwrap();
        assert_eq!(ft.longest_word.len(), longest, "{name}");
        assert_eq!(ft.positive_roots.len(), longest, "{name}");
        assert!(cd.is_reduced(&ft.longest_word));
        // w0 sends every simple root to minus a simple root.
        for i in 0..cd.rank() {
            let img = cd.apply_word(&ft.longest_word, &RootVector::simple(cd.rank(), i));
            assert_eq!(img, RootVector::simple(cd.rank(), ft.star[i]).neg(), "{name} star");
        }
        // Positive roots: the orbit of the simple roots, positive half.
        let s = form(&cd);
        let mut orbit: BTreeSet<Vec<i64>> = (0..cd.rank()).map(|i| RootVector::simple(cd.rank(), i).0).collect();
        loop {
            let next: BTreeSet<Vec<i64>> =
                orbit.iter().flat_map(|r| (0..cd.rank()).map(|i| oracle_reflect(&s, i, r))).chain(orbit.clone()).collect();
            if next.len() == orbit.len() {
                break;
            }
            orbit = next;
        }
        let pos: BTreeSet<Vec<i64>> = orbit.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        let got: BTreeSet<Vec<i64>> = ft.positive_roots.iter().map(|r| r.0.clone()).collect();
        assert_eq!(got, pos, "{name}");
    }
}

// ---------------------------------------------------------------------------
// Transition maps.

/// Lusztig's piecewise-linear formula for a 3-move in simply-laced type.
fn oracle_three(x: &[u32]) -> Vec<u32> {
    let (a, b, c) = (x[0], x[1], x[2]);
    let p = a.min(c);
    vec![b + c - p, p, a + b - p]
}

#[test]
fn three_moves_match_the_closed_formula() {
    let cd = cartan("A3");
    for w in reduced_words(&cd, 6) {
        for m in enumerate_moves(&cd, &w).moves.into_iter().filter(|m| m.kind == MoveKind::Three) {
            for v in all_vectors(w.len(), 2) {
                let got = transition_apply(&cd, &w, m, &ExponentVector(v.clone())).unwrap();
                let mut want = v.clone();
                let k = m.pos - 1;
                want[k..k + 3].copy_from_slice(&oracle_three(&v[k..k + 3]));
                assert_eq!(got.0, want);
            }
        }
    }
}

/// PBW weights are preserved: `sum a_k β_k` computed with the oracle roots.
#[test]
fn transitions_preserve_weight() {
    for name in ["A2", "A1xA1", "B2", "C2", "A3", "B3"] {
        let cd = cartan(name);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for w in reduced_words(&cd, 6) {
            for m in enumerate_moves(&cd, &w).moves {
                let w2 = braidseed::words::apply_move(&cd, &w, m).unwrap();
                let (r1, r2) = (oracle_roots(&cd, w.letters()), oracle_roots(&cd, w2.letters()));
                for _ in 0..20 {
                    let v: Vec<u32> = (0..w.len()).map(|_| rng.random_range(0..5)).collect();
                    let img = transition_apply(&cd, &w, m, &ExponentVector(v.clone())).unwrap();
                    let weight = |a: &[u32], roots: &[Vec<i64>]| -> Vec<i64> {
                        (0..cd.rank()).map(|i| a.iter().zip(roots).map(|(&x, r)| x as i64 * r[i]).sum()).collect()
                    };
                    assert_eq!(weight(&v, &r1), weight(&img.0, &r2), "{name} {w:?} {m:?} {v:?}");
                }
            }
        }
    }
}

#[test]
fn published_local_transitions() {
    let b = FourBranch::ShortFirst;
    // 3-move: (1,0,1) and (0,1,0) are exchanged.
    assert_eq!(local_transition(MoveKind::Three, b, &[1, 0, 1]), vec![0, 1, 0]);
    assert_eq!(local_transition(MoveKind::Three, b, &[0, 1, 0]), vec![1, 0, 1]);
    // 4-move, positions k..k+3 left to right.
    assert_eq!(local_transition(MoveKind::Four, b, &[0, 1, 0, 1]), vec![1, 0, 1, 0]);
    assert_eq!(local_transition(MoveKind::Four, b, &[1, 0, 1, 0]), vec![0, 1, 0, 1]);
    assert_eq!(local_transition(MoveKind::Four, b, &[0, 0, 1, 0]), vec![1, 0, 0, 1]);
    assert_eq!(local_transition(MoveKind::Four, b, &[0, 0, 0, 1]), vec![1, 0, 0, 0]);
}

// ---------------------------------------------------------------------------
// Exchange matrices and Λ.

#[test]
fn four_move_exchange_entries() {
    // (i j i j) with i short: B2 letters (2,1,2,1), s = 1.
    let cd = cartan("B2");
    let w = Word::braid(&cd, vec![1, 0, 1, 0, 1, 0]).unwrap();
    let b = gls_matrix(&cd, &w);
    let e = |k: usize, l: usize| b.get(k - 1, l - 1);
    assert_eq!(e(2, 4), -1);
    assert_eq!(e(6, 4), 1);
    assert_eq!(e(3, 4), 2);
    assert_eq!(e(5, 4), -2);
    assert_eq!(e(1, 3), -1);
    assert_eq!(e(5, 3), 1);
    assert_eq!(e(3, 1), 1);
    assert_eq!(e(3, 2), -2);
    assert_eq!(e(2, 3), 1);
    assert_eq!(e(4, 3), -1);
    assert_eq!(e(3, 5), -1);
    // Mutation at position 3 (slot 2); the entry at positions (2, 4) turns into 1.
    let m = b.mutate(2);
    assert_eq!(m.get(1, 3), 1);
    let r = w.len();
    for i in 0..r {
        for j in b.exchange_slots() {
            assert_eq!(m.get(i, j), oracle_mutate_entry(&b, i, j, 2), "({i},{j})");
        }
    }
}

/// `b'_ij = -b_ij` if `k` is `i` or `j`, else `b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
fn oracle_mutate_entry(b: &braidseed::seeds::ExchangeMatrix, i: usize, j: usize, k: usize) -> i64 {
    if i == k || j == k {
        return -b.get(i, j);
    }
    let (x, y) = (b.get(i, k), b.get(k, j));
    b.get(i, j) + (x.abs() * y + x * y.abs()) / 2
}

#[test]
fn matrix_mutation_matches_the_symmetric_formula() {
    for name in ["A2", "B2", "C2", "A3", "B3"] {
        let cd = cartan(name);
        for w in braid_words(&cd, 5) {
            let b = gls_matrix(&cd, &w);
            for k in b.exchange_slots() {
                let m = b.mutate(k);
                for i in 0..w.len() {
                    for j in b.exchange_slots() {
                        assert_eq!(m.get(i, j), oracle_mutate_entry(&b, i, j, k));
                    }
                }
            }
        }
    }
}

/// Compatibility written out from scratch: `sum_k λ_ik b_kj = -2 d'_j δ_ij`.
fn oracle_compatible(lam: &[Vec<i64>], w: &Word, cd: &CartanData) -> bool {
    let b = gls_matrix(cd, w);
    let n = w.len();
    let ex: Vec<usize> = (0..n).filter(|&j| w.letters()[..j].contains(&w.letters()[j])).collect();
    (0..n).all(|i| {
        ex.iter().all(|&j| {
            let s: i64 = (0..n).map(|k| lam[i][k] * b.get(k, j)).sum();
            s == if i == j { -2 * cd.d(w.letters()[j]) } else { 0 }
        })
    })
}

#[test]
fn lambda_has_minimal_norm_among_small_solutions() {
    for (name, letters) in [
        ("A2", vec![0, 1, 0]),
        ("A2", vec![0, 1, 0, 1]),
        ("B2", vec![0, 1, 0, 1]),
        ("C2", vec![0, 1, 0, 1]),
        ("A1xA1", vec![0, 1, 0, 1]),
        ("A3", vec![0, 1, 2, 0]),
    ] {
        let cd = cartan(name);
        let w = Word::braid(&cd, letters.clone()).unwrap();
        let n = w.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut best: Option<i64> = None;
        for vals in itertools::Itertools::multi_cartesian_product(pairs.iter().map(|_| -3i64..=3)) {
            let mut lam = vec![vec![0; n]; n];
            for (&(p, q), &v) in pairs.iter().zip(&vals) {
                lam[p][q] = v;
                lam[q][p] = -v;
            }
            if oracle_compatible(&lam, &w, &cd) {
                let norm: i64 = vals.iter().map(|v| v * v).sum();
                best = Some(best.map_or(norm, |b| b.min(norm)));
            }
        }
        let lam = solve_lambda(&gls_matrix(&cd, &w)).unwrap();
        assert!(oracle_compatible(&lam.entries, &w, &cd), "{name} {letters:?}");
        let norm: i64 = pairs.iter().map(|&(p, q)| lam.get(p, q).pow(2)).sum();
        assert_eq!(Some(norm), best, "{name} {letters:?}");
        assert!(check_compatibility(&lam, &gls_matrix(&cd, &w)).unwrap());
    }
}

// ---------------------------------------------------------------------------
// Quantum torus.

/// Normal ordering by hand: `X^a = q^{-1/2 sum_{i<j} a_i a_j λ_ij} X_1^{a_1}...X_r^{a_r}`,
/// and moving `X_j^{b_j}` left past `X_i^{a_i}` (`i > j`) costs `q^{a_i b_j λ_ij}`.
/// Returns the doubled q-power `e` of `X^a X^b = q^{e/2} X^{a+b}`.
fn oracle_product_shift(lam: &LambdaMatrix, a: &[i64], b: &[i64]) -> i64 {
    let r = a.len();
    let l = |i: usize, j: usize| lam.get(i, j);
    let tri = |x: &[i64]| -> i64 { (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).map(|(i, j)| x[i] * x[j] * l(i, j)).sum() };
    let swap: i64 = (0..r).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| a[i] * b[j] * l(i, j)).sum();
    let c: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    // Doubled: -tri(a) - tri(b) + 2 swap + tri(a+b).
    -tri(a) - tri(b) + 2 * swap + tri(&c)
}

#[test]
fn based_monomial_products_match_normal_ordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, letters) in [("A2", vec![0, 1, 0]), ("B2", vec![0, 1, 0, 1]), ("A3", vec![0, 1, 0, 2, 1, 0])] {
        let cd = cartan(name);
        let w = Word::weyl(&cd, letters).unwrap();
        let seed = Seed::gls(&cd, &w, true).unwrap();
        let torus: &Torus = seed.torus.as_ref().unwrap();
        let r = torus.rank();
        for _ in 0..100 {
            let a: Vec<i64> = (0..r).map(|_| rng.random_range(-3..=3)).collect();
            let b: Vec<i64> = (0..r).map(|_| rng.random_range(-3..=3)).collect();
            let p = torus.product(&QuantumLaurent::based(a.clone()), &QuantumLaurent::based(b.clone())).unwrap();
            let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let want = QuantumLaurent::based(sum).shifted(oracle_product_shift(&torus.lambda, &a, &b));
            assert_eq!(p, want);
        }
    }
}

// ---------------------------------------------------------------------------
// Inverse quantum Cartan matrix.

/// `num / den` as power series in `q` to order `n` (`den[0] = 1`).
fn series_div(num: &[i64], den: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n + 1];
    let mut rem: Vec<i64> = (0..=n + den.len()).map(|u| num.get(u).copied().unwrap_or(0)).collect();
    for u in 0..=n {
        let c = rem[u];
        out[u] = c;
        for (t, &d) in den.iter().enumerate() {
            rem[u + t] -= c * d;
        }
    }
    out
}

#[test]
fn inverse_cartan_series_by_division() {
    let n = 24;
    // A1: (q + q^-1)^-1 = q / (1 + q^2).
    let s = cartan_tilde(&cartan("A1"), n).unwrap();
    let want = series_div(&[0, 1], &[1, 0, 1], n);
    for (u, &w) in want.iter().enumerate() {
        assert_eq!(s.get(0, 0, u as i64).unwrap(), w, "A1 u={u}");
    }
    // A2: det = q^2 + 1 + q^-2, so c~_11 = (q^3 + q)/(1 + q^2 + q^4) and
    // c~_12 = q^2 / (1 + q^2 + q^4).
    let s = cartan_tilde(&cartan("A2"), n).unwrap();
    let den = [1, 0, 1, 0, 1];
    let c11 = series_div(&[0, 1, 0, 1], &den, n);
    let c12 = series_div(&[0, 0, 1], &den, n);
    for u in 0..=n {
        assert_eq!(s.get(0, 0, u as i64).unwrap(), c11[u], "A2 11 u={u}");
        assert_eq!(s.get(1, 1, u as i64).unwrap(), c11[u], "A2 22 u={u}");
        assert_eq!(s.get(0, 1, u as i64).unwrap(), c12[u], "A2 12 u={u}");
        assert_eq!(s.get(1, 0, u as i64).unwrap(), c12[u], "A2 21 u={u}");
    }
    assert_eq!(s.get(0, 1, 2).unwrap(), 1);
    // The A1 pairing of (1, p+2) and (1, p).
    let s = cartan_tilde(&cartan("A1"), 16).unwrap();
    for p in -3..3 {
        assert_eq!(n_form(&s, RepetitionPoint::new(0, p + 2), RepetitionPoint::new(0, p)).unwrap(), 2);
    }
}

// ---------------------------------------------------------------------------
// Exchange relations in A2 by hand.

#[test]
fn a2_exchange_relation_by_hand() {
    // Seed of (1,2,1): X_3 mu(X_3) = q^{α/2} X_2 + q^{β/2} X_1, with the new variable
    // of tropical type (1,0,0).
    let cd = cartan("A2");
    let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
    let seed = Seed::gls(&cd, &w, true).unwrap();
    let (next, rec) = seed.mutate(2).unwrap();
    assert_eq!(rec.a, vec![0, 1, -1]);
    assert_eq!(rec.a_prime, vec![1, 0, -1]);
    assert_eq!(next.variables[2].tropical, ExponentVector(vec![1, 0, 0]));
    let torus = seed.torus.as_ref().unwrap();
    let g = next.variables[2].exact.clone().unwrap();
    let x3 = QuantumLaurent::generator(3, 2);
    let lhs = torus.product(&x3, &g).unwrap();
    let (al, be) = (rec.alpha_doubled.unwrap(), rec.beta_doubled.unwrap());
    let rhs = QuantumLaurent::generator(3, 1).shifted(al).add(&QuantumLaurent::generator(3, 0).shifted(be));
    assert_eq!(lhs, rhs);
    // Two terms, both with X_3^{-1}.
    let exps: BTreeMap<Vec<i64>, _> = g.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    assert_eq!(exps.keys().cloned().collect::<Vec<_>>(), vec![vec![0, 1, -1], vec![1, 0, -1]]);
}
