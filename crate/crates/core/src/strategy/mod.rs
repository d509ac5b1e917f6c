//! Codebreaker strategies behind one stepping interface.

mod combine;
mod decoder;
mod enumeration;
mod fresh;
mod probe;

pub use combine::{interleave_stage, interleave_unstage, Interleave, Sequential};
pub use decoder::{
    correctness_decoder_dup, injective_swap_decoder, DecodeError, Decoded, DupDecoder, InjectiveDecoder,
};
pub use enumeration::Enumeration;
pub use fresh::FreshSymbol;
pub use probe::{
    green_probe_set, mastermind_probe_deduce, nearly_constant, GreenProbe, MastermindProbe, ProbeError,
};

use serde::{Deserialize, Serialize};

use crate::cardinal::OrdinalStage;
use crate::feedback::Feedback;
use crate::word::Word;

/// One played guess and its answer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Turn {
    pub stage: OrdinalStage,
    pub guess: Word,
    pub feedback: Feedback,
}

/// What a strategy does next.
#[derive(Clone, Debug, PartialEq)]
pub enum Move {
    Guess { stage: OrdinalStage, word: Word },
    /// A final answer, played like a guess but never followed by another move.
    Claim { stage: OrdinalStage, word: Word },
    Exhausted,
}

impl Move {
    pub fn stage(&self) -> Option<OrdinalStage> {
        match self {
            Move::Guess { stage, .. } | Move::Claim { stage, .. } => Some(*stage),
            Move::Exhausted => None,
        }
    }

    pub fn word(&self) -> Option<&Word> {
        match self {
            Move::Guess { word, .. } | Move::Claim { word, .. } => Some(word),
            Move::Exhausted => None,
        }
    }
}

/// A codebreaker. `history` holds every turn this strategy has played so far,
/// in order; stages of emitted moves strictly increase.
pub trait Strategy: Send {
    fn name(&self) -> String;
    fn next(&mut self, history: &[Turn]) -> Move;
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        (**self).next(history)
    }
}

/// The finite stage after the last turn (stages start at 1).
pub(crate) fn next_finite_stage(history: &[Turn]) -> OrdinalStage {
    match history.last() {
        Some(t) => t.stage.succ(),
        None => OrdinalStage::finite(1),
    }
}

/// Answers a deterministic query procedure from a recorded history, so that
/// an algorithm written against an oracle can be resumed one query at a time.
pub(crate) struct Replay<'a> {
    history: &'a [Turn],
    used: usize,
    pub pending: Option<Word>,
    pub diverged: bool,
}

impl<'a> Replay<'a> {
    pub fn new(history: &'a [Turn]) -> Self {
        Replay { history, used: 0, pending: None, diverged: false }
    }

    /// The recorded answer to `w`, or `None` (remembering `w`) once the history
    /// runs out.
    pub fn ask(&mut self, w: &Word) -> Option<&'a Feedback> {
        match self.history.get(self.used) {
            Some(t) if t.guess == *w => {
                self.used += 1;
                Some(&t.feedback)
            }
            Some(_) => {
                self.diverged = true;
                None
            }
            None => {
                self.pending = Some(w.clone());
                None
            }
        }
    }

    /// Turns the outcome of a resumed run into a move.
    pub fn conclude(self, result: Option<Word>, stage_after: OrdinalStage) -> Move {
        match (self.pending, result) {
            (_, _) if self.diverged => Move::Exhausted,
            (Some(word), _) => Move::Guess { stage: next_finite_stage(self.history), word },
            (None, Some(word)) => Move::Claim { stage: stage_after, word },
            (None, None) => Move::Exhausted,
        }
    }
}
