use super::{next_finite_stage, Move, Strategy, Turn};
use crate::dictionary::{CellConstraint, Dictionary, MAX_FORBIDDABLE};
use crate::error::DictError;
use crate::feedback::Feedback;
use crate::word::Pos;

/// Keeps every green cell and puts a symbol not yet tried there in every other
/// cell, choosing the least such word of the dictionary. Over an `n`-letter
/// alphabet each non-green cell runs out of untried symbols after `n - 1`
/// guesses, so the `n`-th guess is forced to be the codeword.
#[derive(Clone, Debug)]
pub struct FreshSymbol {
    dict: Dictionary,
    constraint: CellConstraint,
    processed: usize,
}

impl FreshSymbol {
    pub fn new(dict: Dictionary) -> Result<Self, DictError> {
        let len = dict
            .length()
            .ok_or_else(|| DictError::Invalid("fresh-symbol play needs finite words".into()))?;
        match dict.alphabet().size() {
            Some(n) if n as u64 <= MAX_FORBIDDABLE => {}
            _ => return Err(DictError::Invalid(format!("alphabet must have at most {MAX_FORBIDDABLE} symbols"))),
        }
        Ok(FreshSymbol { constraint: CellConstraint::new(len as usize), dict, processed: 0 })
    }

    /// Requirements gathered from the turns seen so far.
    pub fn constraint(&self) -> &CellConstraint {
        &self.constraint
    }

    fn absorb(&mut self, turn: &Turn) {
        let (Some(guess), Feedback::Tricolor(f)) = (turn.guess.as_finite(), &turn.feedback) else { return };
        let Some(tiles) = f.tiles() else { return };
        for (p, (s, t)) in guess.iter().zip(tiles).enumerate() {
            if *t == crate::feedback::Tile::Green {
                self.constraint.require(p as Pos, s);
            } else {
                self.constraint.forbid(p as Pos, s);
            }
        }
    }
}

impl Strategy for FreshSymbol {
    fn name(&self) -> String {
        "fresh".into()
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        if history.len() < self.processed {
            // A shorter history means a new game.
            self.constraint = CellConstraint::new(self.constraint.len());
            self.processed = 0;
        }
        for turn in &history[self.processed..] {
            self.absorb(turn);
        }
        self.processed = history.len();
        match self.dict.find_consistent(&self.constraint) {
            Some(word) => Move::Guess { stage: next_finite_stage(history), word },
            None => Move::Exhausted,
        }
    }
}
