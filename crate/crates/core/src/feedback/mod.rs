//! Wordle tricolor feedback, Mastermind `(κ, ρ, ε)` feedback, and the
//! simplified correctness counts.

mod mastermind;
mod wordle;

pub use mastermind::{
    brute_force_rearrangement, epsilon_no_dup, mastermind_feedback, mastermind_feedback_no_dup,
    simplified_feedback, MastermindFeedback, SimplifiedFeedback, BRUTE_FORCE_MAX_LEN,
};
pub use wordle::{wordle_feedback, wordle_tiles, Tile, TricolorFeedback};

use crate::cardinal::Cardinal;

/// Feedback of any of the supported game modes.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum Feedback {
    Mastermind(MastermindFeedback),
    Simplified(SimplifiedFeedback),
    Tricolor(TricolorFeedback),
}

impl Feedback {
    /// Whether the feedback says the guess was the codeword.
    pub fn is_win(&self, length: Cardinal) -> bool {
        match self {
            Feedback::Mastermind(m) => m.kappa == length && m.rho.is_zero() && m.epsilon.is_zero(),
            Feedback::Simplified(s) => s.correct == length && s.incorrect.is_zero(),
            Feedback::Tricolor(t) => t.is_win(),
        }
    }

    pub fn as_tricolor(&self) -> Option<&TricolorFeedback> {
        match self {
            Feedback::Tricolor(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_mastermind(&self) -> Option<&MastermindFeedback> {
        match self {
            Feedback::Mastermind(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_simplified(&self) -> Option<&SimplifiedFeedback> {
        match self {
            Feedback::Simplified(s) => Some(s),
            _ => None,
        }
    }
}

/// Which feedback the codemaker gives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameMode {
    Wordle,
    Mastermind,
    MastermindNoDup,
    Simplified,
}

impl GameMode {
    pub fn feedback(self, code: &crate::word::Word, guess: &crate::word::Word) -> Result<Feedback, crate::error::WordError> {
        Ok(match self {
            GameMode::Wordle => Feedback::Tricolor(wordle_feedback(code, guess)?),
            GameMode::Mastermind => Feedback::Mastermind(mastermind_feedback(code, guess)?),
            GameMode::MastermindNoDup => Feedback::Mastermind(mastermind_feedback_no_dup(code, guess)?),
            GameMode::Simplified => Feedback::Simplified(simplified_feedback(code, guess)?),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            GameMode::Wordle => "wordle",
            GameMode::Mastermind => "mastermind",
            GameMode::MastermindNoDup => "mastermind-no-dup",
            GameMode::Simplified => "simplified",
        }
    }
}

impl std::str::FromStr for GameMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "wordle" | "nerdle" => Ok(GameMode::Wordle),
            "mastermind" => Ok(GameMode::Mastermind),
            "mastermind-no-dup" | "mastermind-nodup" => Ok(GameMode::MastermindNoDup),
            "simplified" => Ok(GameMode::Simplified),
            other => Err(format!("unknown game mode {other:?}")),
        }
    }
}
