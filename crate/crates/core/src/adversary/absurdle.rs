use std::collections::BTreeMap;

use super::{Adversary, AdversaryError};
use crate::dictionary::Dictionary;
use crate::error::WordError;
use crate::feedback::{wordle_tiles, Feedback, GameMode, Tile, TricolorFeedback};
use crate::word::Word;

const MAX_CANDIDATES: u64 = 1 << 20;

/// Wordle with a codemaker who keeps the largest class of candidates
/// consistent with each answer.
pub struct Absurdle {
    remaining: Vec<Word>,
}

impl Absurdle {
    pub fn new(d: &Dictionary) -> Result<Self, AdversaryError> {
        Ok(Absurdle { remaining: d.words(MAX_CANDIDATES)? })
    }

    pub fn from_candidates(remaining: Vec<Word>) -> Result<Self, AdversaryError> {
        if remaining.is_empty() {
            return Err(AdversaryError::Empty);
        }
        Ok(Absurdle { remaining })
    }

    pub fn remaining(&self) -> &[Word] {
        &self.remaining
    }

    /// The answer and the class it leaves, without changing state. Classes are
    /// ranked by size, then fewest greens, then the least pattern.
    pub fn choose(&self, guess: &Word) -> Result<(Vec<Tile>, Vec<Word>), AdversaryError> {
        let g = guess.as_finite().ok_or_else(|| WordError::ShapeMismatch("absurdle plays finite words".into()))?;
        let mut classes: BTreeMap<Vec<Tile>, Vec<Word>> = BTreeMap::new();
        for w in &self.remaining {
            let code = w.as_finite().ok_or_else(|| WordError::ShapeMismatch("absurdle plays finite words".into()))?;
            classes.entry(wordle_tiles(code, g)?).or_default().push(w.clone());
        }
        let greens = |t: &[Tile]| t.iter().filter(|x| **x == Tile::Green).count();
        // BTreeMap iteration is lexicographic, so min_by_key keeps the least pattern on ties.
        classes
            .into_iter()
            .min_by_key(|(t, ws)| (std::cmp::Reverse(ws.len()), greens(t)))
            .ok_or(AdversaryError::Empty)
    }
}

impl Adversary for Absurdle {
    fn name(&self) -> String {
        "absurdle".into()
    }

    fn mode(&self) -> GameMode {
        GameMode::Wordle
    }

    fn answer(&mut self, guess: &Word) -> Result<Feedback, AdversaryError> {
        let (tiles, class) = self.choose(guess)?;
        self.remaining = class;
        Ok(Feedback::Tricolor(TricolorFeedback::Finite(tiles)))
    }

    fn witness(&self, _len: u64) -> Option<Word> {
        self.remaining.first().cloned()
    }
}
