//! One handler per subcommand; each returns the sections of its report.

use std::collections::BTreeSet;
use std::path::Path;

use braidseed::lusztig::{par_product, transition_apply, transition_along_path};
use braidseed::qdatum::{
    adapted_word, cartan_tilde, delta_window, n_form, phi_inverse, phi_map, pk_sequence, validate_height, QDatum,
    RepetitionPoint,
};
use braidseed::seeds::{
    check_compatibility, seed_equivalence_report_capped, tsystem_check, Seed, TSystemMode, TSystemReport,
};
use braidseed::words::{enumerate_moves, find_move_path, ibox_vector, replay_path, words_equal_in_monoid};
use braidseed::{CartanData, CartanError, IBox, MoveKind, OrderVerdict, Word};
use serde_json::json;

use crate::campaign;
use crate::input::{self, invalid, CliError};
use crate::report::{Metadata, Report, Section};
use crate::{CartanCmd, Command, QdatumCmd, RunConfig, SeedCmd, TransitionCmd, VerifyCmd, WordsCmd};

/// Routes a validated configuration to the library and assembles the report.
pub fn dispatch(cfg: &RunConfig) -> Report {
    let name = cfg.command.name();
    let mut ctx = Ctx { cfg, meta: Metadata::default() };
    match run(&mut ctx) {
        Ok(sections) => Report::from_sections(name, sections, ctx.meta),
        Err(e) => Report::error(name, e.info(), ctx.meta),
    }
}

pub(crate) struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub meta: Metadata,
}

impl Ctx<'_> {
    /// The Cartan datum from `--cartan`, `--type`, or `A_n` with `n = fallback`.
    pub fn cartan(&mut self, fallback: Option<usize>) -> Result<CartanData, CliError> {
        let cd = if let Some(path) = &self.cfg.cartan_file {
            let bytes = input::read_file(path)?;
            self.meta.inputs.insert("cartan_file".into(), input::sha256_hex(&bytes));
            CartanData::from_spec(input::parse_cartan_spec(&bytes)?)?
        } else if let Some(t) = &self.cfg.cartan_type {
            CartanData::of_type(t)?
        } else if let Some(n) = fallback {
            CartanData::of_type(&format!("A{}", n.max(1)))?
        } else {
            return Err(invalid("cartan", "give --cartan FILE or --type NAME"));
        };
        self.meta.inputs.insert("cartan".into(), input::canonical_cartan_digest(&cd));
        Ok(cd)
    }

    pub fn cartan_opt(&mut self) -> Result<Option<CartanData>, CliError> {
        if self.cfg.cartan_file.is_none() && self.cfg.cartan_type.is_none() {
            return Ok(None);
        }
        self.cartan(None).map(Some)
    }

    fn words(&mut self, raw: &[&str]) -> Result<(CartanData, Vec<Word>), CliError> {
        let labels = raw.iter().map(|s| input::parse_labels(s)).collect::<Result<Vec<_>, _>>()?;
        let max = labels.iter().flatten().copied().max().unwrap_or(1).max(1) as usize;
        let cd = self.cartan(Some(max))?;
        let words = labels.iter().map(|l| input::word_from_labels(&cd, l)).collect::<Result<Vec<_>, _>>()?;
        Ok((cd, words))
    }

    fn word(&mut self, raw: &str) -> Result<(CartanData, Word), CliError> {
        let (cd, mut ws) = self.words(&[raw])?;
        Ok((cd, ws.pop().expect("one word")))
    }

    fn pair(&mut self, raw: &[String]) -> Result<(CartanData, Word, Word), CliError> {
        if raw.len() != 2 {
            return Err(invalid("word", format!("expected exactly two --word values, got {}", raw.len())));
        }
        let (cd, mut ws) = self.words(&[&raw[0], &raw[1]])?;
        let b = ws.pop().expect("two words");
        let a = ws.pop().expect("two words");
        Ok((cd, a, b))
    }

    /// Whether exact arithmetic is requested, refusing words over the cap.
    fn exact_for(&self, w: &Word) -> Result<bool, CliError> {
        if self.cfg.exact && w.len() > self.cfg.exact_cap {
            return Err(invalid(
                "exact",
                format!("exact mode is limited to words of length <= {} (got {})", self.cfg.exact_cap, w.len()),
            ));
        }
        Ok(self.cfg.exact)
    }

    fn read_input(&mut self, role: &str, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = input::read_file(path)?;
        self.meta.inputs.insert(role.into(), input::sha256_hex(&bytes));
        Ok(bytes)
    }
}

fn run(ctx: &mut Ctx) -> Result<Vec<Section>, CliError> {
    match &ctx.cfg.command {
        Command::Cartan(CartanCmd::Check) => cartan_check(ctx),
        Command::Words(c) => match c {
            WordsCmd::Moves(w) => words_moves(ctx, &w.word),
            WordsCmd::Path(p) => words_path(ctx, &p.word),
            WordsCmd::Equal(p) => words_equal(ctx, &p.word),
            WordsCmd::Ibox { word, ibox } => {
                let (_, w) = ctx.word(&word.word)?;
                let b = input::parse_box(&ibox.ibox, ibox.brace)?;
                Ok(vec![Section::info("box", b.to_string()), Section::info("vector", ibox_vector(&w, b)?)])
            }
        },
        Command::Transition(c) => match c {
            TransitionCmd::Apply { word, moves, vector } => transition_apply_cmd(ctx, &word.word, moves, vector),
            TransitionCmd::VerifyIbox { word, mv, ibox } => verify_ibox(ctx, &word.word, mv, &ibox.ibox, ibox.brace),
        },
        Command::Seed(c) => match c {
            SeedCmd::Build { word, write } => seed_build(ctx, &word.word, write.as_deref()),
            SeedCmd::Mutate { seed, word, position, write } => {
                seed_mutate(ctx, seed.as_deref(), word.as_deref(), *position, write.as_deref())
            }
            SeedCmd::VerifyEquivalence(p) => equivalence(ctx, &p.word),
            SeedCmd::Tsystem { word, ibox } => tsystem(ctx, &word.word, Some(&ibox.ibox), ibox.brace),
        },
        Command::Qdatum(c) => qdatum(ctx, c),
        Command::Verify(c) => match c {
            VerifyCmd::Corollary(p) => equivalence(ctx, &p.word),
            VerifyCmd::Tsystem { word, ibox, brace } => tsystem(ctx, &word.word, ibox.as_deref(), *brace),
            VerifyCmd::All { length_cap, rank_cap } => campaign::verify_all(ctx, *length_cap, *rank_cap),
        },
    }
}

fn cartan_check(ctx: &mut Ctx) -> Result<Vec<Section>, CliError> {
    let cd = ctx.cartan(None)?;
    let n = cd.rank();
    let sym: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cd.d(i) * cd.entry(i, j)).collect()).collect();
    let sym_t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| sym[j][i]).collect()).collect();
    let finite = match cd.finite_type_data() {
        Ok(ft) => json!({
            "positive_roots": ft.positive_roots.len(),
            "longest_word": input::display_word(&cd, &ft.longest_word),
            "star": ft.star.iter().map(|&i| cd.label(i)).collect::<Vec<_>>(),
            "coxeter_number": ft.coxeter_number,
        }),
        Err(CartanError::NotFiniteType(_)) => serde_json::Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(vec![
        Section::info("indices", cd.labels()),
        Section::info("matrix", cd.matrix()),
        Section::info("symmetrizer", cd.symmetrizer()),
        Section::compare("symmetrized", sym, sym_t),
        Section::info("finite_type", finite),
    ])
}

fn move_labels(ms: &[braidseed::Move]) -> Vec<String> {
    ms.iter().map(|&m| input::move_label(m)).collect()
}

fn words_moves(ctx: &mut Ctx, raw: &str) -> Result<Vec<Section>, CliError> {
    let (cd, w) = ctx.word(raw)?;
    let scan = enumerate_moves(&cd, &w);
    let mut twice = Vec::new();
    for &m in &scan.moves {
        let once = braidseed::words::apply_move(&cd, &w, m)?;
        twice.push(input::display_word(&cd, braidseed::words::apply_move(&cd, &once, m)?.letters()));
    }
    let mut out = vec![
        Section::info("kind", w.kind()),
        Section::info("moves", move_labels(&scan.moves)),
        Section::compare("involutive", twice, vec![input::display_word(&cd, w.letters()); scan.moves.len()]),
    ];
    if !scan.unsupported.is_empty() {
        out.push(Section::info("unsupported_windows", &scan.unsupported));
    }
    Ok(out)
}

fn words_path(ctx: &mut Ctx, raw: &[String]) -> Result<Vec<Section>, CliError> {
    let (cd, a, b) = ctx.pair(raw)?;
    let path = find_move_path(&cd, &a, &b, ctx.cfg.budget)?;
    let replay = replay_path(&cd, &a, &path)?;
    let end = replay.last().expect("replay includes the start");
    Ok(vec![
        Section::info("path", move_labels(&path)),
        Section::info("length", path.len()),
        Section::compare("endpoint", input::display_word(&cd, end.letters()), input::display_word(&cd, b.letters())),
    ])
}

fn words_equal(ctx: &mut Ctx, raw: &[String]) -> Result<Vec<Section>, CliError> {
    let (cd, a, b) = ctx.pair(raw)?;
    let equal = words_equal_in_monoid(&cd, &a, &b, ctx.cfg.budget)?;
    Ok(vec![Section::judged(
        "equal_in_monoid",
        input::display_word(&cd, a.letters()),
        input::display_word(&cd, b.letters()),
        equal,
    )])
}

fn transition_apply_cmd(ctx: &mut Ctx, raw: &str, moves: &[String], vector: &str) -> Result<Vec<Section>, CliError> {
    let (cd, w) = ctx.word(raw)?;
    let path = moves.iter().map(|m| input::parse_move(m)).collect::<Result<Vec<_>, _>>()?;
    let a = input::parse_vector(vector, w.len())?;
    let image = transition_along_path(&cd, &w, &path, &a)?;
    let words = replay_path(&cd, &w, &path)?;
    let mut back = image.clone();
    for (t, &m) in path.iter().enumerate().rev() {
        back = transition_apply(&cd, &words[t + 1], m, &back)?;
    }
    Ok(vec![
        Section::info("word_after", input::display_word(&cd, words.last().expect("nonempty").letters())),
        Section::info("image", &image),
        Section::compare("round_trip", &back, &a),
    ])
}

fn verify_ibox(ctx: &mut Ctx, raw: &str, mv: &str, ibox: &str, brace: bool) -> Result<Vec<Section>, CliError> {
    let (cd, w) = ctx.word(raw)?;
    let m = input::parse_move(mv)?;
    let b = input::parse_box(ibox, brace)?;
    let t = braidseed::lusztig::verify_ibox_transition(&cd, &w, m, b)?;
    Ok(vec![
        Section::info("row", format!("{:?}", t.row)),
        Section::info("source", &t.source),
        Section::judged("image", &t.image, &t.expected, t.matched),
    ])
}

fn compatibility(seed: &Seed) -> Result<Section, CliError> {
    Ok(Section::compare("compatibility", check_compatibility(&seed.lambda, &seed.b)?, true))
}

fn seed_build(ctx: &mut Ctx, raw: &str, write: Option<&Path>) -> Result<Vec<Section>, CliError> {
    let (cd, w) = ctx.word(raw)?;
    let exact = ctx.exact_for(&w)?;
    let seed = Seed::gls(&cd, &w, exact)?;
    if let Some(p) = write {
        write_seed(p, &seed)?;
    }
    let mut out = vec![Section::info("seed", &seed)];
    out.push(compatibility(&seed)?);
    Ok(out)
}

fn write_seed(path: &Path, seed: &Seed) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(seed).expect("seed serializes");
    s.push('\n');
    std::fs::write(path, s).map_err(|e| CliError::Io { path: path.display().to_string(), reason: e.to_string() })
}

fn seed_mutate(
    ctx: &mut Ctx,
    seed_file: Option<&Path>,
    word: Option<&str>,
    position: usize,
    write: Option<&Path>,
) -> Result<Vec<Section>, CliError> {
    let seed = match (seed_file, word) {
        (Some(p), None) => {
            let bytes = ctx.read_input("seed", p)?;
            let fallback = serde_json::from_slice::<serde_json::Value>(&bytes)
                .ok()
                .and_then(|v| v["word"].as_array().map(|w| w.iter().filter_map(|x| x.as_u64()).max().unwrap_or(0) as usize))
                .map(|m| m + 1);
            let cd = ctx.cartan(fallback)?;
            input::parse_seed(&cd, &bytes)?
        }
        (None, Some(raw)) => {
            let (cd, w) = ctx.word(raw)?;
            let exact = ctx.exact_for(&w)?;
            Seed::gls(&cd, &w, exact)?
        }
        _ => return Err(invalid("seed", "give exactly one of --seed FILE or --word W")),
    };
    if position == 0 || position > seed.size() {
        return Err(invalid("position", format!("expected a position in 1..={}", seed.size())));
    }
    let slot = position - 1;
    if !seed.b.is_exchangeable(slot) {
        return Err(invalid("position", format!("position {position} is frozen")));
    }
    let (mutated, record) = seed.mutate(slot)?;
    let (back, _) = mutated.mutate(slot)?;
    if let Some(p) = write {
        write_seed(p, &mutated)?;
    }
    let mut out = vec![Section::info("exchange", &record), Section::info("seed", &mutated)];
    if let Some(v) = record.verified {
        out.push(Section::compare("exchange_relation", v, true));
    }
    out.push(Section::compare("involution_B", &back.b.entries, &seed.b.entries));
    out.push(Section::compare("involution_Lambda", &back.lambda.entries, &seed.lambda.entries));
    out.push(compatibility(&mutated)?);
    Ok(out)
}

fn equivalence(ctx: &mut Ctx, raw: &[String]) -> Result<Vec<Section>, CliError> {
    let (cd, a, b) = ctx.pair(raw)?;
    let exact = ctx.exact_for(&a)?;
    let cap = exact.then_some(ctx.cfg.exact_cap);
    let r = seed_equivalence_report_capped(&cd, &a, &b, cap, ctx.cfg.budget)?;
    let mut out = vec![Section::info("path", move_labels(&r.path))];
    for (t, step) in r.steps.iter().enumerate() {
        let name = format!("step {} {}", t + 1, input::move_label(step.mv));
        out.push(Section::info(format!("{name} mutations"), &step.script.mutations));
        if step.mv.kind == MoveKind::Four {
            out.push(Section::info(format!("{name} intermediate_entry"), step.intermediate_entry));
        }
        out.push(Section::compare(
            name,
            json!({"b_matches": step.b_matches, "tropical_matches": step.tropical_matches}),
            json!({"b_matches": true, "tropical_matches": true}),
        ));
    }
    out.push(Section::compare("exchange_matrix", r.exchange_matrix_matches, true));
    out.push(Section::compare("tropical", &r.final_tropical, &r.target_tropical));
    out.push(Section::judged("lambda_gauge", &r.lambda_gauge, "kernel of B^ex", r.gauge_in_kernel));
    match r.exchange_relations_verified {
        Some(v) => out.push(Section::compare("exchange_relations", v, true)),
        None => out.push(Section::info("exchange_relations", "not checked")),
    }
    Ok(out)
}

/// Closed boxes `[a,b]` with `i_a = i_b`.
pub(crate) fn closed_boxes(w: &Word) -> Vec<IBox> {
    let l = w.letters();
    (1..=l.len()).flat_map(|a| (a..=l.len()).filter(move |&b| l[a - 1] == l[b - 1]).map(move |b| IBox::closed(a, b))).collect()
}

pub(crate) fn tsystem_sections(prefix: &str, r: &TSystemReport) -> Vec<Section> {
    let sum = |x, y| par_product(x, y).expect("terms share a length");
    let [t0, t1, t2, t3] = &r.terms;
    let lower_ok = r.degenerate || !matches!(r.lower_verdict, OrderVerdict::Greater | OrderVerdict::Equal);
    let mut out = vec![
        Section::judged(format!("{prefix}identity"), sum(t0, t1), sum(t2, t3), r.identity_holds || r.degenerate),
        Section::judged(format!("{prefix}lower"), r.lower_verdict, OrderVerdict::Less, lower_ok),
    ];
    if r.degenerate {
        out.push(Section::info(format!("{prefix}degenerate"), true));
    }
    if let Some(e) = &r.exact {
        out.push(Section::info(format!("{prefix}exact"), e));
    }
    out
}

fn tsystem(ctx: &mut Ctx, raw: &str, ibox: Option<&str>, brace: bool) -> Result<Vec<Section>, CliError> {
    let (cd, w) = ctx.word(raw)?;
    let mode = if ctx.exact_for(&w)? { TSystemMode::Exact } else { TSystemMode::Tropical };
    let boxes = match ibox {
        Some(s) => vec![input::parse_box(s, brace)?],
        None => closed_boxes(&w),
    };
    let mut out = Vec::new();
    for b in &boxes {
        let r = tsystem_check(&cd, &w, *b, mode)?;
        let prefix = if ibox.is_some() { String::new() } else { format!("{b} ") };
        out.extend(tsystem_sections(&prefix, &r));
    }
    Ok(out)
}

fn point_label(qd: &QDatum, p: RepetitionPoint) -> (i64, i64) {
    (qd.cartan.label(p.vertex), p.level)
}

fn qdatum(ctx: &mut Ctx, c: &QdatumCmd) -> Result<Vec<Section>, CliError> {
    let xi_raw = match c {
        QdatumCmd::Build(h) | QdatumCmd::AdaptedWord(h) => &h.xi,
        QdatumCmd::Window { xi, .. } | QdatumCmd::Phi { xi, .. } | QdatumCmd::Ntab { xi, .. } => &xi.xi,
    };
    let xi = input::parse_ints("xi", xi_raw)?;
    let cd = ctx.cartan(Some(xi.len()))?;
    let qd = validate_height(&cd, &xi)?;
    let ft = cd.finite_type_data()?;
    let lab = |i: usize| cd.label(i);
    let mut out = vec![Section::info("heights", &xi)];
    match c {
        QdatumCmd::Build(_) => {
            let arrows: Vec<(i64, i64)> = qd.arrows().into_iter().map(|(a, b)| (lab(a), lab(b))).collect();
            out.push(Section::info("arrows", arrows));
            out.push(Section::info("sources", qd.sources().into_iter().map(lab).collect::<Vec<_>>()));
        }
        QdatumCmd::AdaptedWord(_) => {
            let w = adapted_word(&qd)?;
            out.push(Section::info("word", input::display_word(&cd, w.letters())));
            out.push(Section::compare("length", w.len(), ft.positive_roots.len()));
            out.push(Section::compare("reduced", cd.is_reduced(w.letters()), true));
        }
        QdatumCmd::Window { k, .. } => {
            let win = delta_window(&qd, *k)?;
            out.push(Section::info("points", win.iter().map(|&p| point_label(&qd, p)).collect::<Vec<_>>()));
            out.push(Section::compare("size", win.len(), ft.positive_roots.len()));
            if *k == 0 {
                let pk: BTreeSet<RepetitionPoint> =
                    pk_sequence(&qd, 1, ft.positive_roots.len() as i64)?.into_iter().collect();
                let show = |s: &BTreeSet<RepetitionPoint>| s.iter().map(|&p| point_label(&qd, p)).collect::<Vec<_>>();
                out.push(Section::compare("pk_image", show(&pk), show(&win)));
            }
        }
        QdatumCmd::Phi { point, .. } => {
            let v = input::parse_ints("point", point)?;
            let &[label, level] = v.as_slice() else {
                return Err(invalid("point", "expected `vertex,level`"));
            };
            let vertex = cd.index_of(label).map_err(|_| invalid("point", format!("unknown vertex {label}")))?;
            let pt = RepetitionPoint::new(vertex, level);
            let value = phi_map(&qd, pt)?;
            let back = phi_inverse(&qd, &value)?;
            out.push(Section::info("value", &value));
            out.push(Section::compare("round_trip", point_label(&qd, back), point_label(&qd, pt)));
        }
        QdatumCmd::Ntab { levels, .. } => {
            let v = input::parse_ints("levels", levels)?;
            let &[lo, hi] = v.as_slice() else {
                return Err(invalid("levels", "expected `lo,hi`"));
            };
            if lo > hi {
                return Err(invalid("levels", "lo must not exceed hi"));
            }
            let pts: Vec<RepetitionPoint> = (lo..=hi)
                .flat_map(|p| (0..cd.rank()).map(move |i| RepetitionPoint::new(i, p)))
                .filter(|&p| qd.in_lattice(p))
                .collect();
            let series = cartan_tilde(&cd, (hi - lo + 2) as usize)?;
            let table = pts
                .iter()
                .map(|&a| pts.iter().map(|&b| n_form(&series, a, b)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let neg_t: Vec<Vec<i64>> =
                (0..pts.len()).map(|i| (0..pts.len()).map(|j| -table[j][i]).collect()).collect();
            out.push(Section::info("points", pts.iter().map(|&p| point_label(&qd, p)).collect::<Vec<_>>()));
            out.push(Section::info("table", &table));
            out.push(Section::compare("antisymmetric", &table, neg_t));
        }
    }
    Ok(out)
}
