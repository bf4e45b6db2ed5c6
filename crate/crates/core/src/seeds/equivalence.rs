//! Running the compiled scripts along a move path and comparing with the
//! seed of the target word.

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::lusztig::{transition_apply, ExponentVector};
use crate::words::{apply_move, find_move_path, Move, MoveKind, Word};

use super::lambda::lambda_times_b;
use super::matrix::{gls_matrix, LambdaMatrix};
use super::script::{move_to_mutation_script, MutationScript};
use super::seed::{ExchangeRecord, Seed};
use super::SeedError;

/// Exact torus arithmetic is only attempted up to this word length.
pub const EXACT_LENGTH_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceStep {
    #[serde(rename = "move")]
    pub mv: Move,
    pub script: MutationScript,
    pub word_after: Vec<usize>,
    pub exchanges: Vec<ExchangeRecord>,
    /// For 4-moves, the full exchange matrix after the first mutation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_after_first: Option<Vec<Vec<i64>>>,
    /// For 4-moves, the entry `b'_{s+1,s+3}` of `mu_{s+2} B`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intermediate_entry: Option<i64>,
    pub b_matches: bool,
    pub tropical_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub path: Vec<Move>,
    pub steps: Vec<EquivalenceStep>,
    pub exchange_matrix_matches: bool,
    pub tropical_matches: bool,
    /// `None` when exact arithmetic was off or the word too long.
    pub exchange_relations_verified: Option<bool>,
    /// `Λ_obtained - Λ_target`.
    pub lambda_gauge: Vec<Vec<i64>>,
    /// Whether the gauge lies in the kernel `Δ B^ex = 0`.
    pub gauge_in_kernel: bool,
    pub final_tropical: Vec<ExponentVector>,
    pub target_tropical: Vec<ExponentVector>,
    pub matched: bool,
}

fn block_and_exchange(s: &Seed) -> (Vec<Vec<i64>>, Vec<bool>) {
    (s.b.exchange_block(), s.b.exchange.clone())
}

/// Executes the script for `m` on `seed` (whose tropical data is in the
/// parameterization of `w`), returning the new seed in the parameterization
/// of the rewritten word.
pub fn run_script(cd: &CartanData, w: &Word, seed: &Seed, m: Move) -> Result<(Seed, EquivalenceStep), SeedError> {
    let script = move_to_mutation_script(cd, w, m)?;
    let mut cur = seed.clone();
    let mut exchanges = Vec::new();
    let mut b_after_first = None;
    for (t, slot) in script.slots().into_iter().enumerate() {
        let (next, rec) = cur.mutate(slot)?;
        if t == 0 && m.kind == MoveKind::Four {
            b_after_first = Some(next.b.entries.clone());
        }
        exchanges.push(rec);
        cur = next;
    }
    let mut out = cur.relabel(&script.permutation(cur.size()))?;
    for v in &mut out.variables {
        v.tropical = transition_apply(cd, w, m, &v.tropical)?;
    }
    let w2 = apply_move(cd, w, m)?;
    out.word = w2.letters().to_vec();

    let target = Seed::from_parts(&w2, gls_matrix(cd, &w2), LambdaMatrix::zero(w2.len()), false)?;
    let b_matches = block_and_exchange(&out) == block_and_exchange(&target);
    let tropical_matches = out.tropical() == target.tropical();
    let s = m.pos;
    let intermediate_entry = (m.kind == MoveKind::Four).then(|| seed.b.mutate(s + 1).get(s, s + 2));
    Ok((
        out,
        EquivalenceStep {
            mv: m,
            script,
            word_after: w2.letters().to_vec(),
            exchanges,
            b_after_first,
            intermediate_entry,
            b_matches,
            tropical_matches,
        },
    ))
}

/// Finds a move path from `w` to `target`, runs the scripts on the seed of
/// `w` and compares the outcome with the seed of `target`.
pub fn seed_equivalence_report(
    cd: &CartanData,
    w: &Word,
    target: &Word,
    exact: bool,
    budget: usize,
) -> Result<EquivalenceReport, SeedError> {
    seed_equivalence_report_capped(cd, w, target, exact.then_some(EXACT_LENGTH_CAP), budget)
}

/// As [`seed_equivalence_report`], with exact arithmetic used for words of
/// length at most `exact_cap` (`None` turns it off).
pub fn seed_equivalence_report_capped(
    cd: &CartanData,
    w: &Word,
    target: &Word,
    exact_cap: Option<usize>,
    budget: usize,
) -> Result<EquivalenceReport, SeedError> {
    let path = find_move_path(cd, w, target, budget)?;
    let exact = exact_cap.is_some_and(|cap| w.len() <= cap);
    let mut seed = Seed::gls(cd, w, exact)?;
    let mut cur = w.clone();
    let mut steps = Vec::new();
    for &m in &path {
        let (next, step) = run_script(cd, &cur, &seed, m)?;
        cur = apply_move(cd, &cur, m)?;
        seed = next;
        steps.push(step);
    }
    let goal = Seed::gls(cd, target, false)?;
    let exchange_matrix_matches = block_and_exchange(&seed) == block_and_exchange(&goal);
    let tropical_matches = seed.tropical() == goal.tropical();
    let exchange_relations_verified = exact.then(|| {
        steps.iter().flat_map(|s| &s.exchanges).all(|r| r.verified == Some(true))
            && seed.variables.iter().all(|v| v.exact.is_some())
    });
    let gauge = seed.lambda.sub(&goal.lambda);
    let gauge_in_kernel = lambda_times_b(&gauge, &goal.b).iter().flatten().all(|&x| x == 0);
    let matched =
        exchange_matrix_matches && tropical_matches && exchange_relations_verified != Some(false) && gauge_in_kernel;
    Ok(EquivalenceReport {
        source: w.letters().to_vec(),
        target: target.letters().to_vec(),
        path,
        steps,
        exchange_matrix_matches,
        tropical_matches,
        exchange_relations_verified,
        lambda_gauge: gauge.entries,
        gauge_in_kernel,
        final_tropical: seed.tropical(),
        target_tropical: goal.tropical(),
        matched,
    })
}

impl EquivalenceReport {
    pub fn gauge(&self) -> LambdaMatrix {
        LambdaMatrix { entries: self.lambda_gauge.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_three_move() {
        let cd = CartanData::of_type("A2").unwrap();
        let w = Word::weyl(&cd, vec![0, 1, 0]).unwrap();
        let w2 = Word::weyl(&cd, vec![1, 0, 1]).unwrap();
        let r = seed_equivalence_report(&cd, &w, &w2, true, 1000).unwrap();
        assert_eq!(r.path.len(), 1);
        assert!(r.exchange_matrix_matches);
        assert!(r.tropical_matches, "{:?} vs {:?}", r.final_tropical, r.target_tropical);
        assert_eq!(r.exchange_relations_verified, Some(true));
        assert!(r.matched);
    }

    #[test]
    fn empty_path_matches() {
        let cd = CartanData::of_type("A3").unwrap();
        let w = Word::weyl(&cd, vec![0, 1, 0, 2, 1, 0]).unwrap();
        let r = seed_equivalence_report(&cd, &w, &w, true, 1000).unwrap();
        assert!(r.path.is_empty() && r.matched);
        assert!(r.lambda_gauge.iter().flatten().all(|&x| x == 0));
    }
}
