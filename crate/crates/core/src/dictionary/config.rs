use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Dictionary, PatternSpec};
use crate::alphabet::Alphabet;
use crate::error::DictError;
use crate::word::Word;

/// How an alphabet is written in a dictionary file: a string of one-character
/// labels, a list of labels, or a full alphabet object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphabetSpec {
    Chars(String),
    Labels(Vec<String>),
    Full(Alphabet),
}

impl AlphabetSpec {
    pub fn build(&self) -> Result<Alphabet, DictError> {
        Ok(match self {
            AlphabetSpec::Chars(s) => Alphabet::from_chars(s)?,
            AlphabetSpec::Labels(l) => Alphabet::finite(l.clone())?,
            AlphabetSpec::Full(a) => a.clone(),
        })
    }
}

/// A listed word: text over the alphabet, or word JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordEntry {
    Text(String),
    Word(Word),
}

/// Serializable description of a dictionary, used in files, transcripts and
/// session records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DictionaryConfig {
    Explicit { alphabet: AlphabetSpec, words: Vec<WordEntry> },
    Complete { alphabet: AlphabetSpec, length: u64 },
    Pattern {
        alphabet: AlphabetSpec,
        #[serde(flatten)]
        spec: PatternSpec,
    },
    Nerdle { length: usize },
}

impl DictionaryConfig {
    pub fn build(&self) -> Result<Dictionary, DictError> {
        match self {
            DictionaryConfig::Explicit { alphabet, words } => {
                let a = alphabet.build()?;
                let words = words
                    .iter()
                    .map(|e| match e {
                        WordEntry::Text(t) => Ok(Word::dense(a.parse_word(t)?)),
                        WordEntry::Word(w) => Ok(w.clone()),
                    })
                    .collect::<Result<_, DictError>>()?;
                Dictionary::explicit(a, words)
            }
            DictionaryConfig::Complete { alphabet, length } => Dictionary::complete(alphabet.build()?, *length),
            DictionaryConfig::Pattern { alphabet, spec } => Dictionary::pattern(alphabet.build()?, spec.clone()),
            DictionaryConfig::Nerdle { length } => Ok(Dictionary::nerdle(*length)),
        }
    }

    /// Parses `complete:<alphabet>:<len>`, `nerdle:<len>`, `explicit:<file>`,
    /// or a bare file path.
    pub fn parse(descriptor: &str) -> Result<Self, DictError> {
        let bad = |m: &str| DictError::Descriptor(format!("{descriptor:?}: {m}"));
        if let Some(rest) = descriptor.strip_prefix("complete:") {
            let (alphabet, len) = rest.rsplit_once(':').ok_or_else(|| bad("expected complete:<alphabet>:<len>"))?;
            let length = len.parse().map_err(|_| bad("length is not a number"))?;
            return Ok(DictionaryConfig::Complete { alphabet: AlphabetSpec::Chars(alphabet.to_string()), length });
        }
        if let Some(len) = descriptor.strip_prefix("nerdle:") {
            let length = len.parse().map_err(|_| bad("length is not a number"))?;
            return Ok(DictionaryConfig::Nerdle { length });
        }
        let path = descriptor.strip_prefix("explicit:").unwrap_or(descriptor);
        Self::load(Path::new(path))
    }

    /// Reads a JSON dictionary file, or a plain list of words (one per line)
    /// whose alphabet is the set of characters used.
    pub fn load(path: &Path) -> Result<Self, DictError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DictError::Descriptor(format!("{}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self, DictError> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| DictError::Descriptor(e.to_string()));
        }
        let words: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let mut chars: Vec<char> = words.iter().flat_map(|w| w.chars()).collect();
        chars.sort_unstable();
        chars.dedup();
        Ok(DictionaryConfig::Explicit {
            alphabet: AlphabetSpec::Chars(chars.into_iter().collect()),
            words: words.into_iter().map(|w| WordEntry::Text(w.to_string())).collect(),
        })
    }
}

impl Dictionary {
    /// A config that rebuilds this dictionary.
    pub fn config(&self) -> DictionaryConfig {
        match self {
            Dictionary::Explicit { alphabet, words } => DictionaryConfig::Explicit {
                alphabet: AlphabetSpec::Full(alphabet.clone()),
                words: words.iter().cloned().map(WordEntry::Word).collect(),
            },
            Dictionary::Complete { alphabet, length } => {
                DictionaryConfig::Complete { alphabet: AlphabetSpec::Full(alphabet.clone()), length: *length }
            }
            Dictionary::Pattern { alphabet, dict } => {
                DictionaryConfig::Pattern { alphabet: AlphabetSpec::Full(alphabet.clone()), spec: dict.spec().clone() }
            }
            Dictionary::Nerdle(n) => DictionaryConfig::Nerdle { length: n.length() },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        let d = DictionaryConfig::parse("complete:ABC:3").unwrap().build().unwrap();
        assert_eq!(d.size(), Some(27));
        let d = DictionaryConfig::parse("nerdle:5").unwrap().build().unwrap();
        assert_eq!(d.length(), Some(5));
        assert!(DictionaryConfig::parse("complete:ABC").is_err());
    }

    #[test]
    fn word_list_text() {
        let d = DictionaryConfig::from_text("ERROR\nORDER\n").unwrap().build().unwrap();
        assert_eq!(d.size(), Some(2));
        assert_eq!(d.alphabet().size(), Some(4));
    }

    #[test]
    fn config_round_trip() {
        for d in [
            DictionaryConfig::parse("complete:AB:2").unwrap().build().unwrap(),
            Dictionary::from_strings("AB", &["AB", "BA"]).unwrap(),
            Dictionary::nerdle(6),
        ] {
            let text = serde_json::to_string(&d.config()).unwrap();
            let back: DictionaryConfig = serde_json::from_str(&text).unwrap();
            assert_eq!(back.build().unwrap(), d);
        }
    }
}
