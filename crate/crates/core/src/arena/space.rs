use std::collections::HashSet;

use super::ArenaError;
use crate::feedback::GameMode;
use crate::word::{Symbol, Word};

/// Largest codeword universe the winning-set oracle accepts.
pub const MAX_SPACE: u64 = 10_000;

/// A finite universe of codewords.
#[derive(Clone, Debug, PartialEq)]
pub enum WordSpace {
    /// All words of length `len` over `0..colors`.
    Complete { colors: u64, len: usize },
    /// All injective words of length `len` over `0..colors`.
    Injective { colors: u64, len: usize },
    Explicit(Vec<Word>),
}

impl WordSpace {
    pub fn size(&self) -> u64 {
        match self {
            WordSpace::Complete { colors, len } => colors.saturating_pow(*len as u32),
            WordSpace::Injective { colors, len } => {
                (0..*len as u64).fold(1u64, |acc, i| acc.saturating_mul(colors.saturating_sub(i)))
            }
            WordSpace::Explicit(w) => w.len() as u64,
        }
    }

    pub fn words(&self) -> Result<Vec<Word>, ArenaError> {
        let n = self.size();
        if n > MAX_SPACE {
            return Err(ArenaError::SpaceTooLarge(n));
        }
        Ok(match self {
            WordSpace::Explicit(w) => w.clone(),
            WordSpace::Complete { colors, len } => (0..n)
                .map(|mut i| {
                    let mut w = vec![0; *len];
                    for cell in w.iter_mut().rev() {
                        *cell = i % colors;
                        i /= colors;
                    }
                    Word::finite(w)
                })
                .collect(),
            WordSpace::Injective { colors, len } => {
                let mut out = Vec::new();
                let mut cur = Vec::with_capacity(*len);
                injective(*colors, *len, &mut cur, &mut out);
                out
            }
        })
    }
}

fn injective(colors: u64, len: usize, cur: &mut Vec<Symbol>, out: &mut Vec<Word>) {
    if cur.len() == len {
        out.push(Word::finite(cur.clone()));
        return;
    }
    for c in 0..colors {
        if !cur.contains(&c) {
            cur.push(c);
            injective(colors, len, cur, out);
            cur.pop();
        }
    }
}

/// Whether the answers to the guesses in `set` tell apart every two codewords
/// of the space.
pub fn is_winning_set(set: &[Word], space: &WordSpace, mode: GameMode) -> Result<bool, ArenaError> {
    let mut seen = HashSet::new();
    for code in space.words()? {
        let answers = set
            .iter()
            .map(|g| mode.feedback(&code, g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ArenaError::Transcript(e.to_string()))?;
        let key = serde_json::to_string(&answers).map_err(|e| ArenaError::Transcript(e.to_string()))?;
        if !seen.insert(key) {
            return Ok(false);
        }
    }
    Ok(true)
}
