//! Exact combinatorics of braid words, transition maps and quantum cluster
//! seeds attached to reduced expressions.

pub mod cartan;
pub mod lusztig;
pub mod qdatum;
pub mod seeds;
pub mod words;
pub mod zlinalg;

pub use cartan::{CartanData, CartanError, CartanSpec, FiniteTypeData, RootVector};
pub use lusztig::{ExponentVector, LusztigError, OrderVerdict};
pub use words::{IBox, Move, MoveKind, Word, WordError, WordKind};
