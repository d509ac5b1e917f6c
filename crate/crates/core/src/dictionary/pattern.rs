use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::DictError;
use crate::word::{ClosedWord, Pos, Symbol, Word};

/// Upper bound on the number of words a pattern dictionary may expand to.
pub const PATTERN_MAX_WORDS: usize = 200_000;

/// Closed-form templates together with every word obtained from a template by
/// changing at most `max_edits` of the listed positions to listed letters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PatternSpec {
    pub templates: Vec<Word>,
    #[serde(default)]
    pub edit_positions: Vec<Pos>,
    #[serde(default)]
    pub edit_letters: Vec<Symbol>,
    #[serde(default)]
    pub max_edits: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatternDict {
    spec: PatternSpec,
    words: Vec<ClosedWord>,
}

fn combinations(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop();
    }
}

impl PatternDict {
    /// Expands the templates in template-then-edit order: fewer edits first,
    /// then position sets and letters lexicographically. Repeats are dropped.
    pub fn new(spec: PatternSpec) -> Result<Self, DictError> {
        if spec.templates.is_empty() {
            return Err(DictError::Invalid("a dictionary needs at least one word".into()));
        }
        let templates: Vec<ClosedWord> = spec
            .templates
            .iter()
            .map(|w| w.as_closed().cloned().ok_or_else(|| DictError::Invalid("templates must be closed-form".into())))
            .collect::<Result<_, _>>()?;
        let mut seen = HashSet::new();
        let mut words = Vec::new();
        let mut overflow = false;
        let letters = &spec.edit_letters;
        for t in &templates {
            for k in 0..=spec.max_edits.min(spec.edit_positions.len()) {
                combinations(spec.edit_positions.len(), k, 0, &mut Vec::new(), &mut |idx| {
                    if k > 0 && letters.is_empty() {
                        return;
                    }
                    let mut choice = vec![0usize; k];
                    loop {
                        let mut w = t.clone();
                        for (j, i) in idx.iter().enumerate() {
                            w = w.with(spec.edit_positions[*i], letters[choice[j]]);
                        }
                        if words.len() >= PATTERN_MAX_WORDS {
                            overflow = true;
                            return;
                        }
                        if seen.insert(w.clone()) {
                            words.push(w);
                        }
                        // next letter assignment, last position fastest
                        let mut j = k;
                        loop {
                            if j == 0 {
                                return;
                            }
                            j -= 1;
                            choice[j] += 1;
                            if choice[j] < letters.len() {
                                break;
                            }
                            choice[j] = 0;
                        }
                    }
                });
            }
        }
        if overflow {
            return Err(DictError::TooLarge(format!("pattern dictionary above {PATTERN_MAX_WORDS} words")));
        }
        Ok(PatternDict { spec, words })
    }

    pub fn spec(&self) -> &PatternSpec {
        &self.spec
    }

    pub fn words(&self) -> &[ClosedWord] {
        &self.words
    }

    /// Letters occurring at `pos` across the dictionary, with the first word
    /// carrying each.
    pub fn letters_at(&self, pos: Pos) -> BTreeMap<Symbol, usize> {
        let mut out = BTreeMap::new();
        for (i, w) in self.words.iter().enumerate() {
            out.entry(w.at(pos)).or_insert(i);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Base;

    #[test]
    fn expansion_order_and_dedup() {
        let spec = PatternSpec {
            templates: vec![Word::constant(0), Word::closed(Base::constant(0), [(1, 1)]).unwrap()],
            edit_positions: vec![0, 1],
            edit_letters: vec![0, 1],
            max_edits: 1,
        };
        let d = PatternDict::new(spec).unwrap();
        let shown: Vec<Vec<Symbol>> = d.words().iter().map(|w| w.prefix(3)).collect();
        assert_eq!(shown, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
    }
}
