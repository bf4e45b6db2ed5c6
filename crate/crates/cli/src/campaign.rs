//! `verify all`: exhaustive checks over every word up to a length cap, for
//! each builtin type up to a rank cap (or the given Cartan datum).
//!
//! Jobs run in parallel; sections are assembled in job order and every
//! per-job aggregate is order-independent, so the report does not depend on
//! the thread count.

use braidseed::lusztig::transition_apply;
use braidseed::seeds::{check_compatibility, seed_equivalence_report_capped, tsystem_check, Seed, TSystemMode};
use braidseed::words::{apply_move, enumerate_moves};
use braidseed::{CartanData, ExponentVector, Word};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{closed_boxes, Ctx};
use crate::input::{self, CliError};
use crate::report::Section;

/// Seeds are built (one lattice solve each) only up to this length.
const SEED_LENGTH_CAP: usize = 6;

const BUILTIN_TYPES: &[&str] = &["A1", "A2", "A1xA1", "B2", "C2", "G2", "A3", "A1xA2", "A1xA1xA1", "B3", "C3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Job {
    TSystem,
    RoundTrip,
    Mutation,
    Equivalence,
}

impl Job {
    fn name(self) -> &'static str {
        match self {
            Job::TSystem => "tsystem",
            Job::RoundTrip => "transition_round_trip",
            Job::Mutation => "mutation_involution",
            Job::Equivalence => "seed_equivalence",
        }
    }
}

#[derive(Debug, Default, Serialize)]
struct Tally {
    checked: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert_with(what);
        }
    }

    /// Combines tallies in enumeration order.
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self
    }
}

/// Every word over `0..rank` with length `1..=max`, shortest first.
fn all_words(cd: &CartanData, max: usize) -> Vec<Word> {
    let rank = cd.rank();
    (1..=max)
        .flat_map(|len| std::iter::repeat_n(0..rank, len).multi_cartesian_product())
        .map(|letters| Word::classify(cd, letters).expect("letters are in range"))
        .collect()
}

fn show(cd: &CartanData, w: &Word) -> String {
    format!("{:?}", input::display_word(cd, w.letters()))
}

/// Unit vectors, i-box vectors and the all-ones vector.
fn probe_vectors(w: &Word) -> Vec<ExponentVector> {
    let n = w.len();
    let mut out: Vec<ExponentVector> = (1..=n).map(|p| ExponentVector::unit(n, p)).collect();
    out.extend(closed_boxes(w).into_iter().filter_map(|b| braidseed::words::ibox_vector(w, b).ok()));
    out.push(ExponentVector(vec![1; n]));
    out
}

fn check_word(cd: &CartanData, w: &Word, job: Job, exact_cap: Option<usize>, budget: usize) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    match job {
        Job::TSystem => {
            for b in closed_boxes(w) {
                let r = tsystem_check(cd, w, b, TSystemMode::Tropical)?;
                t.record(r.matched, || format!("{} box {b}", show(cd, w)));
            }
        }
        Job::RoundTrip => {
            for m in enumerate_moves(cd, w).moves {
                let w2 = apply_move(cd, w, m)?;
                for a in probe_vectors(w) {
                    let back = transition_apply(cd, &w2, m, &transition_apply(cd, w, m, &a)?)?;
                    t.record(back == a, || format!("{} move {} vector {a}", show(cd, w), input::move_label(m)));
                }
            }
        }
        Job::Mutation => {
            let seed = Seed::gls(cd, w, false)?;
            for k in seed.b.exchange_slots() {
                let (m, _) = seed.mutate(k)?;
                let (back, _) = m.mutate(k)?;
                let ok = back.b == seed.b && back.lambda == seed.lambda && check_compatibility(&m.lambda, &m.b)?;
                t.record(ok, || format!("{} slot {}", show(cd, w), k + 1));
            }
        }
        Job::Equivalence => {
            if w.kind() == braidseed::WordKind::WeylReduced {
                for m in enumerate_moves(cd, w).moves {
                    let target = apply_move(cd, w, m)?;
                    let r = seed_equivalence_report_capped(cd, w, &target, exact_cap, budget)?;
                    t.record(r.matched, || format!("{} move {}", show(cd, w), input::move_label(m)));
                }
            }
        }
    }
    Ok(t)
}

/// Types whose letter pairs all have `c_ij c_ji <= 2`, so moves and seeds apply.
fn moves_supported(cd: &CartanData) -> bool {
    (0..cd.rank()).all(|i| (0..cd.rank()).all(|j| i == j || cd.entry(i, j) * cd.entry(j, i) <= 2))
}

pub(crate) fn verify_all(ctx: &mut Ctx, length_cap: usize, rank_cap: usize) -> Result<Vec<Section>, CliError> {
    if length_cap == 0 {
        return Err(input::invalid("length-cap", "must be at least 1"));
    }
    let exact_cap = ctx.cfg.exact.then_some(ctx.cfg.exact_cap.min(length_cap));
    let budget = ctx.cfg.budget;
    let types: Vec<(String, CartanData)> = match ctx.cartan_opt()? {
        Some(cd) => vec![("given".to_string(), cd)],
        None => BUILTIN_TYPES
            .iter()
            .map(|t| Ok((t.to_string(), CartanData::of_type(t)?)))
            .filter(|r: &Result<(String, CartanData), CliError>| r.as_ref().map_or(true, |(_, cd)| cd.rank() <= rank_cap))
            .collect::<Result<_, CliError>>()?,
    };
    if types.is_empty() {
        return Err(input::invalid("rank-cap", "no builtin type has rank within the cap"));
    }
    let mut jobs = Vec::new();
    for (name, cd) in &types {
        jobs.push((name.as_str(), cd, Job::TSystem, length_cap));
        if moves_supported(cd) {
            jobs.push((name.as_str(), cd, Job::RoundTrip, length_cap));
            jobs.push((name.as_str(), cd, Job::Mutation, length_cap.min(SEED_LENGTH_CAP)));
            jobs.push((name.as_str(), cd, Job::Equivalence, length_cap.min(SEED_LENGTH_CAP)));
        }
    }
    let results: Vec<Result<Tally, CliError>> = jobs
        .par_iter()
        .map(|&(_, cd, job, max)| {
            let per_word: Vec<Result<Tally, CliError>> =
                all_words(cd, max).par_iter().map(|w| check_word(cd, w, job, exact_cap, budget)).collect();
            per_word.into_iter().try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
        })
        .collect();
    let mut out = vec![Section::info("caps", serde_json::json!({"length": length_cap, "rank": rank_cap}))];
    for ((name, _, job, max), tally) in jobs.iter().zip(results) {
        let tally = tally?;
        let ok = tally.failures == 0;
        out.push(Section::judged(
            format!("{name} {} (length <= {max})", job.name()),
            tally,
            serde_json::json!({"failures": 0}),
            ok,
        ));
    }
    Ok(out)
}
