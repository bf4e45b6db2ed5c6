#![allow(dead_code)]

use braidseed::words::{move_component, DEFAULT_BUDGET};
use braidseed::{CartanData, Word};
use itertools::Itertools;

pub fn cartan(name: &str) -> CartanData {
    CartanData::of_type(name).unwrap()
}

/// Every word over `0..rank` of length `n`.
pub fn all_letters(rank: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    itertools::repeat_n(0..rank, n).multi_cartesian_product().collect()
}

/// Every braid word of length `1..=max_len`.
pub fn braid_words(cd: &CartanData, max_len: usize) -> Vec<Word> {
    (1..=max_len)
        .flat_map(|n| all_letters(cd.rank(), n))
        .map(|l| Word::braid(cd, l).unwrap())
        .collect()
}

/// Every reduced word of length `1..=max_len`.
pub fn reduced_words(cd: &CartanData, max_len: usize) -> Vec<Word> {
    (1..=max_len)
        .flat_map(|n| all_letters(cd.rank(), n))
        .filter(|l| cd.is_reduced(l))
        .map(|l| Word::weyl(cd, l).unwrap())
        .collect()
}

/// Reduced words of the longest element.
pub fn longest_component(cd: &CartanData) -> Vec<Word> {
    let ft = cd.finite_type_data().unwrap();
    let w0 = Word::weyl(cd, ft.longest_word).unwrap();
    move_component(cd, &w0, DEFAULT_BUDGET).unwrap()
}

/// Every vector in `0..=max` of length `n`.
pub fn all_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    itertools::repeat_n(0..=max, n).multi_cartesian_product().collect()
}

/// Closed i-boxes `[a, b]` with `i_a = i_b`.
pub fn closed_boxes(w: &Word) -> Vec<(usize, usize)> {
    let n = w.len();
    (1..=n).flat_map(|a| (a..=n).filter(move |&b| w.at(a) == w.at(b)).map(move |b| (a, b))).collect()
}
