//! Argument parsing into library values, and the error type of the front end.

use std::fmt::Debug;
use std::path::Path;

use braidseed::lusztig::LusztigError;
use braidseed::qdatum::QDatumError;
use braidseed::seeds::{Seed, SeedError};
use braidseed::{CartanData, CartanError, CartanSpec, ExponentVector, IBox, Move, MoveKind, Word, WordError};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::report::ErrorInfo;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration at `{field}`: {reason}")]
    ConfigInvalid { field: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Lusztig(#[from] LusztigError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    QDatum(#[from] QDatumError),
}

pub fn invalid(field: &str, reason: impl Into<String>) -> CliError {
    CliError::ConfigInvalid { field: field.into(), reason: reason.into() }
}

/// The variant name of a library error, e.g. `NotConnected`.
fn variant<T: Debug>(e: &T) -> String {
    format!("{e:?}").chars().take_while(|c| c.is_alphanumeric()).collect()
}

fn innermost(e: &CliError) -> String {
    match e {
        CliError::ConfigInvalid { .. } => "ConfigInvalid".into(),
        CliError::Io { .. } => "Io".into(),
        CliError::Cartan(e) => variant(e),
        CliError::Word(e) => variant(e),
        CliError::Lusztig(LusztigError::Word(e)) => variant(e),
        CliError::Lusztig(e) => variant(e),
        CliError::Seed(SeedError::Word(e)) => variant(e),
        CliError::Seed(SeedError::Lusztig(LusztigError::Word(e))) => variant(e),
        CliError::Seed(SeedError::Lusztig(e)) => variant(e),
        CliError::Seed(e) => variant(e),
        CliError::QDatum(QDatumError::Cartan(e)) => variant(e),
        CliError::QDatum(QDatumError::Word(e)) => variant(e),
        CliError::QDatum(e) => variant(e),
    }
}

impl CliError {
    pub fn info(&self) -> ErrorInfo {
        let field = match self {
            CliError::ConfigInvalid { field, .. } => Some(field.clone()),
            _ => None,
        };
        ErrorInfo { kind: innermost(self), message: self.to_string(), field }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io { path: path.display().to_string(), reason: e.to_string() })
}

fn strip_brackets(s: &str) -> &str {
    s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']', '}'])
}

/// Comma-separated integers, optionally wrapped in brackets; empty input is
/// the empty list.
pub fn parse_ints(field: &str, s: &str) -> Result<Vec<i64>, CliError> {
    let body = strip_brackets(s);
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| invalid(field, format!("{t:?} is not an integer"))))
        .collect()
}

/// Word letters given as 1-based labels of the Cartan datum.
pub fn parse_labels(s: &str) -> Result<Vec<i64>, CliError> {
    parse_ints("word", s)
}

pub fn word_from_labels(cd: &CartanData, labels: &[i64]) -> Result<Word, CliError> {
    let letters = labels
        .iter()
        .map(|&l| cd.index_of(l).map_err(|_| invalid("word", format!("letter {l} is not an index of the Cartan datum"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Word::classify(cd, letters)?)
}

pub fn display_word(cd: &CartanData, letters: &[usize]) -> Vec<i64> {
    letters.iter().map(|&i| cd.label(i)).collect()
}

/// `a,b` for `[a,b]`; `[a,b}` for the brace form.
pub fn parse_box(s: &str, brace: bool) -> Result<IBox, CliError> {
    let brace = brace || s.trim().ends_with('}');
    let v = parse_ints("box", s)?;
    match v.as_slice() {
        &[a, b] if a >= 1 && b >= 1 => {
            let (a, b) = (a as usize, b as usize);
            Ok(if brace { IBox::brace(a, b) } else { IBox::closed(a, b) })
        }
        _ => Err(invalid("box", "expected two positive positions `a,b`")),
    }
}

/// `3@1` (kind, then 1-based start position).
pub fn parse_move(s: &str) -> Result<Move, CliError> {
    let (kind, pos) = s.split_once('@').ok_or_else(|| invalid("move", "expected `KIND@POS`, e.g. `3@1`"))?;
    let kind = match kind.trim() {
        "2" | "Two" => MoveKind::Two,
        "3" | "Three" => MoveKind::Three,
        "4" | "Four" => MoveKind::Four,
        other => return Err(invalid("move", format!("unknown move kind {other:?}"))),
    };
    let pos: usize = pos.trim().parse().map_err(|_| invalid("move", format!("bad position {pos:?}")))?;
    if pos == 0 {
        return Err(invalid("move", "positions are 1-based"));
    }
    Ok(Move::new(kind, pos))
}

pub fn move_label(m: Move) -> String {
    format!("{}@{}", m.kind.width(), m.pos)
}

pub fn parse_vector(s: &str, len: usize) -> Result<ExponentVector, CliError> {
    let v = parse_ints("vector", s)?;
    if v.len() != len {
        return Err(invalid("vector", format!("expected {len} entries, got {}", v.len())));
    }
    let v = v
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| invalid("vector", "entries must be nonnegative")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExponentVector(v))
}

pub fn parse_cartan_spec(bytes: &[u8]) -> Result<CartanSpec, CliError> {
    serde_json::from_slice(bytes).map_err(|e| invalid("cartan", format!("not a Cartan spec: {e}")))
}

pub fn canonical_cartan_digest(cd: &CartanData) -> String {
    sha256_hex(&serde_json::to_vec(&cd.to_spec()).expect("spec serializes"))
}

/// Parses a seed file and checks that all its parts agree in shape with each
/// other and with the Cartan datum.
pub fn parse_seed(cd: &CartanData, bytes: &[u8]) -> Result<Seed, CliError> {
    let seed: Seed = serde_json::from_slice(bytes).map_err(|e| invalid("seed", format!("not a seed: {e}")))?;
    let n = seed.word.len();
    let bad = |what: &str| invalid("seed", format!("{what} does not match the word length {n}"));
    if seed.b.size() != n || seed.b.entries.iter().any(|r| r.len() != n) || seed.b.exchange.len() != n {
        return Err(bad("B"));
    }
    if seed.b.dprime.len() != n {
        return Err(bad("B.dprime"));
    }
    if seed.lambda.size() != n || seed.lambda.entries.iter().any(|r| r.len() != n) {
        return Err(bad("Lambda"));
    }
    if !seed.lambda.is_skew_symmetric() {
        return Err(invalid("seed", "Lambda is not skew-symmetric"));
    }
    if seed.labels.len() != n || seed.variables.len() != n {
        return Err(bad("labels/variables"));
    }
    if seed.variables.iter().any(|v| v.tropical.len() != n) {
        return Err(bad("a tropical vector"));
    }
    if let Some(&l) = seed.word.iter().find(|&&l| l >= cd.rank()) {
        return Err(invalid("seed", format!("word letter {l} exceeds the rank {}", cd.rank())));
    }
    if let Some(t) = &seed.torus {
        if t.rank() != n || seed.variables.iter().flat_map(|v| &v.exact).any(|f| f.nvars() != n) {
            return Err(bad("the torus"));
        }
    }
    Ok(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_boxes_and_moves() {
        assert_eq!(parse_box("1,3", false).unwrap(), IBox::closed(1, 3));
        assert_eq!(parse_box("[1,3}", false).unwrap(), IBox::brace(1, 3));
        assert!(parse_box("0,3", false).is_err());
        assert_eq!(parse_move("3@2").unwrap(), Move::new(MoveKind::Three, 2));
        assert!(parse_move("5@1").is_err());
        assert_eq!(parse_ints("w", "(1,2,1)").unwrap(), vec![1, 2, 1]);
        assert_eq!(parse_ints("w", "").unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn error_kinds_name_the_cause() {
        let e = CliError::Seed(SeedError::Word(WordError::NotConnected { explored: 1, exhausted: true }));
        assert_eq!(e.info().kind, "NotConnected");
        assert_eq!(invalid("budget", "zero").info().field.as_deref(), Some("budget"));
    }
}
