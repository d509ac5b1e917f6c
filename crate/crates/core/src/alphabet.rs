use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::WordError;
use crate::word::Symbol;

/// A finite labelled alphabet, or the countably infinite alphabet ℕ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Alphabet {
    Finite { labels: Vec<String> },
    Countable {
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        labels: BTreeMap<Symbol, String>,
    },
}

impl Alphabet {
    pub fn finite<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self, WordError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(WordError::InvalidAlphabet("an alphabet needs at least one symbol".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(WordError::InvalidAlphabet(format!("duplicate label {l:?}")));
            }
        }
        Ok(Alphabet::Finite { labels })
    }

    /// One label per character, e.g. `"ABC"`.
    pub fn from_chars(chars: &str) -> Result<Self, WordError> {
        Self::finite(chars.chars().map(String::from))
    }

    /// Symbols `0..n` labelled by their decimal value.
    pub fn numbered(n: usize) -> Self {
        Alphabet::Finite { labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn countable() -> Self {
        Alphabet::Countable { labels: BTreeMap::new() }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            Alphabet::Finite { labels } => Some(labels.len()),
            Alphabet::Countable { .. } => None,
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        match self {
            Alphabet::Finite { labels } => (s as usize) < labels.len(),
            Alphabet::Countable { .. } => true,
        }
    }

    pub fn label(&self, s: Symbol) -> String {
        match self {
            Alphabet::Finite { labels } => {
                labels.get(s as usize).cloned().unwrap_or_else(|| format!("?{s}"))
            }
            Alphabet::Countable { labels } => labels.get(&s).cloned().unwrap_or_else(|| s.to_string()),
        }
    }

    pub fn symbol(&self, label: &str) -> Option<Symbol> {
        match self {
            Alphabet::Finite { labels } => labels.iter().position(|l| l == label).map(|i| i as Symbol),
            Alphabet::Countable { labels } => labels
                .iter()
                .find(|(_, l)| l.as_str() == label)
                .map(|(s, _)| *s)
                .or_else(|| label.parse().ok()),
        }
    }

    /// True when every label is a single character, so words render without separators.
    pub fn is_compact(&self) -> bool {
        match self {
            Alphabet::Finite { labels } => labels.iter().all(|l| l.chars().count() == 1),
            Alphabet::Countable { .. } => false,
        }
    }

    /// Parses text into symbols: character by character for compact alphabets,
    /// otherwise comma/space separated labels.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>, WordError> {
        let text = text.trim();
        let unknown = |l: &str| WordError::UnknownSymbol(l.to_string());
        if self.is_compact() {
            text.chars()
                .map(|c| {
                    let l = c.to_string();
                    self.symbol(&l).ok_or_else(|| unknown(&l))
                })
                .collect()
        } else {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| self.symbol(t).ok_or_else(|| unknown(t)))
                .collect()
        }
    }

    pub fn render(&self, symbols: impl IntoIterator<Item = Symbol>) -> String {
        let parts: Vec<String> = symbols.into_iter().map(|s| self.label(s)).collect();
        if self.is_compact() {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_round_trip() {
        let a = Alphabet::from_chars("EROR").err();
        assert!(a.is_some(), "duplicate labels must be rejected");
        let a = Alphabet::from_chars("ABC").unwrap();
        let w = a.parse_word("CAB").unwrap();
        assert_eq!(w, vec![2, 0, 1]);
        assert_eq!(a.render(w), "CAB");
        assert!(a.parse_word("CAX").is_err());
    }

    #[test]
    fn countable_parses_integers() {
        let a = Alphabet::countable();
        assert_eq!(a.parse_word("3, 17 0").unwrap(), vec![3, 17, 0]);
        assert!(Alphabet::finite(Vec::<String>::new()).is_err());
    }
}
