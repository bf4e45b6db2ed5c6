//! Compiling a move into mutations followed by a transposition of slots.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::lusztig::{four_branch, FourBranch, LusztigError};
use crate::words::{move_applies, prev_occurrence, Move, MoveKind, Word};

use super::SeedError;

/// Mutations (1-based positions, application order) and then the
/// disjoint transpositions `swaps` of adjacent positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationScript {
    pub mutations: Vec<usize>,
    pub swaps: Vec<(usize, usize)>,
}

impl MutationScript {
    /// The mutations as 0-based seed slots.
    pub fn slots(&self) -> Vec<usize> {
        self.mutations.iter().map(|p| p - 1).collect()
    }

    /// The transpositions as a 0-based permutation of `r` slots.
    pub fn permutation(&self, r: usize) -> Vec<usize> {
        let mut rho: Vec<usize> = (0..r).collect();
        for &(a, b) in &self.swaps {
            rho.swap(a - 1, b - 1);
        }
        rho
    }
}

impl fmt::Display for MutationScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mus: Vec<String> = self.mutations.iter().map(|p| format!("mu{p}")).collect();
        let swaps: Vec<String> = self.swaps.iter().map(|(a, b)| format!("({a} {b})")).collect();
        write!(f, "[{}] then {}", mus.join(", "), swaps.join(""))
    }
}

/// 2-move at `s`: swap `s, s+1`. 3-move on `(s, s+1, s+2)`: mutate `s+2`,
/// swap `s, s+1`.
///
/// 4-move on `(s, .., s+3)`: the two seeds sit opposite each other on the
/// hexagonal exchange graph of the window, so three mutations are needed:
/// `s+2, s+3, s+2` when the first letter is short (`c_ji = -1`),
/// `s+3, s+2, s+3` when it is long, then swap `s, s+1` and `s+2, s+3`.
pub fn move_to_mutation_script(cd: &CartanData, w: &Word, m: Move) -> Result<MutationScript, SeedError> {
    let letters = w.letters();
    if !move_applies(cd, letters, m) {
        return Err(LusztigError::MoveNotApplicable(m).into());
    }
    let s = m.pos;
    let mutations = match m.kind {
        MoveKind::Two => vec![],
        MoveKind::Three => vec![s + 2],
        MoveKind::Four => match four_branch(cd, letters, s) {
            FourBranch::ShortFirst => vec![s + 2, s + 3, s + 2],
            FourBranch::LongFirst => vec![s + 3, s + 2, s + 3],
        },
    };
    if let Some(&p) = mutations.iter().find(|&&p| prev_occurrence(letters, p, letters[p - 1]) == 0) {
        return Err(SeedError::MutationIndexFrozen(p));
    }
    let swaps = match m.kind {
        MoveKind::Four => vec![(s, s + 1), (s + 2, s + 3)],
        _ => vec![(s, s + 1)],
    };
    Ok(MutationScript { mutations, swaps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scripts() {
        let a2 = CartanData::of_type("A2").unwrap();
        let w = Word::weyl(&a2, vec![0, 1, 0]).unwrap();
        let sc = move_to_mutation_script(&a2, &w, Move::new(MoveKind::Three, 1)).unwrap();
        assert_eq!(sc, MutationScript { mutations: vec![3], swaps: vec![(1, 2)] });
        assert_eq!(sc.permutation(3), vec![1, 0, 2]);

        let a1a1 = CartanData::of_type("A1xA1").unwrap();
        let w = Word::weyl(&a1a1, vec![0, 1]).unwrap();
        let sc = move_to_mutation_script(&a1a1, &w, Move::new(MoveKind::Two, 1)).unwrap();
        assert!(sc.mutations.is_empty());

        let b2 = CartanData::of_type("B2").unwrap();
        let w = Word::braid(&b2, vec![0, 1, 0, 1, 0, 1]).unwrap();
        let sc = move_to_mutation_script(&b2, &w, Move::new(MoveKind::Four, 1)).unwrap();
        assert_eq!(sc.mutations, vec![4, 3, 4]);
        assert_eq!(sc.swaps, vec![(1, 2), (3, 4)]);
        assert_eq!(sc.permutation(6), vec![1, 0, 3, 2, 4, 5]);
        let c2 = CartanData::of_type("C2").unwrap();
        let w = Word::braid(&c2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(move_to_mutation_script(&c2, &w, Move::new(MoveKind::Four, 1)).unwrap().mutations, vec![3, 4, 3]);
    }

    #[test]
    fn not_applicable() {
        let a2 = CartanData::of_type("A2").unwrap();
        let w = Word::weyl(&a2, vec![0, 1, 0]).unwrap();
        assert!(move_to_mutation_script(&a2, &w, Move::new(MoveKind::Two, 1)).is_err());
    }
}
