//! Running matches, recording and replaying transcripts, and the brute-force
//! winning-set oracle.

pub mod experiments;
mod space;
mod spec;

pub use space::{is_winning_set, WordSpace, MAX_SPACE};
pub use spec::{build_strategy, StrategySpecError};

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adversary::{Adversary, AdversaryError};
use crate::cardinal::{Cardinal, Fin, Omega, OrdinalStage};
use crate::dictionary::{Dictionary, DictionaryConfig};
use crate::feedback::{Feedback, GameMode};
use crate::strategy::{Move, Strategy, Turn};
use crate::word::Word;

#[derive(Debug, Error)]
pub enum ArenaError {
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error("transcript: {0}")]
    Transcript(String),
    #[error("word space has {0} words, more than the oracle handles")]
    SpaceTooLarge(u64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "camelCase")]
pub enum Outcome {
    Won { stage: OrdinalStage },
    Survived { horizon: OrdinalStage },
    Exhausted,
    /// The strategy broke the rules; the match stopped there.
    Invalid { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub mode: GameMode,
    pub dictionary: Option<DictionaryConfig>,
    pub turns: Vec<Turn>,
    pub outcome: Outcome,
}

#[derive(Serialize, Deserialize)]
struct Header {
    mode: GameMode,
    dictionary: Option<DictionaryConfig>,
}

#[derive(Serialize, Deserialize)]
struct Footer {
    outcome: Outcome,
}

impl Transcript {
    pub fn won(&self) -> bool {
        matches!(self.outcome, Outcome::Won { .. })
    }

    /// Number of guesses played.
    pub fn guesses(&self) -> usize {
        self.turns.len()
    }

    /// JSON Lines: a header, one line per turn, then the outcome.
    pub fn write_jsonl(&self, mut out: impl Write) -> Result<(), ArenaError> {
        let line = |v: serde_json::Result<String>| v.map_err(|e| ArenaError::Transcript(e.to_string()));
        writeln!(out, "{}", line(serde_json::to_string(&Header { mode: self.mode, dictionary: self.dictionary.clone() }))?)?;
        for t in &self.turns {
            writeln!(out, "{}", line(serde_json::to_string(t))?)?;
        }
        writeln!(out, "{}", line(serde_json::to_string(&Footer { outcome: self.outcome.clone() }))?)?;
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn read_jsonl(input: impl BufRead) -> Result<Self, ArenaError> {
        let bad = |e: serde_json::Error| ArenaError::Transcript(e.to_string());
        let mut lines = Vec::new();
        for l in input.lines() {
            let l = l?;
            if !l.trim().is_empty() {
                lines.push(l);
            }
        }
        if lines.len() < 2 {
            return Err(ArenaError::Transcript("missing header or outcome line".into()));
        }
        let header: Header = serde_json::from_str(&lines[0]).map_err(bad)?;
        let footer: Footer = serde_json::from_str(lines.last().unwrap()).map_err(bad)?;
        let turns = lines[1..lines.len() - 1]
            .iter()
            .map(|l| serde_json::from_str(l).map_err(bad))
            .collect::<Result<Vec<Turn>, _>>()?;
        Ok(Transcript { mode: header.mode, dictionary: header.dictionary, turns, outcome: footer.outcome })
    }
}

/// Turns played in a match whose horizon has no finite bound.
pub const MAX_TURNS: usize = 1_000_000;

fn length_of(w: &Word) -> Cardinal {
    w.len().map_or(Omega, Fin)
}

/// Plays `strategy` against `opponent` until a win, the horizon, or the
/// strategy gives up. Guesses outside `dict` (when given) end the match as invalid.
pub fn run_match(
    strategy: &mut dyn Strategy,
    opponent: &mut dyn Adversary,
    dict: Option<&Dictionary>,
    horizon: OrdinalStage,
) -> Result<Transcript, ArenaError> {
    let mut t = Transcript {
        mode: opponent.mode(),
        dictionary: dict.map(Dictionary::config),
        turns: Vec::new(),
        outcome: Outcome::Exhausted,
    };
    loop {
        if t.turns.len() >= MAX_TURNS {
            t.outcome = Outcome::Survived { horizon };
            return Ok(t);
        }
        let mv = strategy.next(&t.turns);
        let (stage, word) = match mv {
            Move::Exhausted => {
                t.outcome = Outcome::Exhausted;
                return Ok(t);
            }
            Move::Guess { stage, word } | Move::Claim { stage, word } => (stage, word),
        };
        if stage > horizon {
            t.outcome = Outcome::Survived { horizon };
            return Ok(t);
        }
        if t.turns.last().is_some_and(|last| last.stage >= stage) {
            t.outcome = Outcome::Invalid { reason: format!("stage {stage} does not increase") };
            return Ok(t);
        }
        if let Some(d) = dict {
            if !d.contains(&word).unwrap_or(false) {
                t.outcome = Outcome::Invalid { reason: format!("guess at stage {stage} is not in the dictionary") };
                return Ok(t);
            }
        }
        let feedback = opponent.answer(&word)?;
        let win = feedback.is_win(length_of(&word));
        t.turns.push(Turn { stage, guess: word, feedback });
        if win {
            t.outcome = Outcome::Won { stage };
            return Ok(t);
        }
    }
}

/// Whether `candidate` would have produced every recorded answer. A finite
/// candidate shorter than ω-guesses in a Wordle transcript is checked as a
/// prefix: greens must match inside it, and each letter it places must have
/// the recorded yellow count, as for a codeword using each letter once.
pub fn replay_check(t: &Transcript, candidate: &Word) -> bool {
    t.turns.iter().all(|turn| {
        if turn.guess.len().is_none() && candidate.len().is_some() {
            return prefix_check(t.mode, turn, candidate);
        }
        t.mode.feedback(candidate, &turn.guess).is_ok_and(|f| f == turn.feedback)
    })
}

fn prefix_check(mode: GameMode, turn: &Turn, candidate: &Word) -> bool {
    let (GameMode::Wordle, Feedback::Tricolor(f), Some(w)) = (mode, &turn.feedback, candidate.as_finite()) else {
        return false;
    };
    let Word::Closed(s) = &turn.guess else { return false };
    w.iter().enumerate().all(|(p, a)| {
        let p = p as u64;
        let expect = u64::from(s.first_occurrence(a).is_some() && s.at(p) != a);
        f.is_green(p) == (s.at(p) == a) && f.yellow_count(a).and_then(|c| c.finite()) == Some(expect)
    })
}
