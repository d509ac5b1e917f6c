//! Word families with membership, a fixed enumeration, and constraint search.

mod config;
mod constraint;
pub mod nerdle;
mod pattern;

use std::collections::BTreeMap;

pub use config::{AlphabetSpec, DictionaryConfig};
pub use constraint::{CellConstraint, MAX_FORBIDDABLE};
pub use nerdle::NerdleDict;
pub use pattern::{PatternDict, PatternSpec, PATTERN_MAX_WORDS};

use crate::alphabet::Alphabet;
use crate::error::DictError;
use crate::word::{Pos, Symbol, Word};

#[derive(Clone, Debug, PartialEq)]
pub enum Dictionary {
    /// A finite list of words in a fixed order.
    Explicit { alphabet: Alphabet, words: Vec<Word> },
    /// Every word of `length` over a finite alphabet.
    Complete { alphabet: Alphabet, length: u64 },
    Pattern { alphabet: Alphabet, dict: PatternDict },
    Nerdle(NerdleDict),
}

impl Dictionary {
    pub fn explicit(alphabet: Alphabet, words: Vec<Word>) -> Result<Self, DictError> {
        if words.is_empty() {
            return Err(DictError::Invalid("a dictionary needs at least one word".into()));
        }
        let len = words[0].len();
        for w in &words {
            if w.len() != len {
                return Err(DictError::Invalid("words of different lengths".into()));
            }
            if matches!(w, Word::Lazy(_)) {
                return Err(DictError::Invalid("lazy words cannot be listed".into()));
            }
            if !w.all_symbols_in(&alphabet) {
                return Err(DictError::Invalid("word uses a symbol outside the alphabet".into()));
            }
        }
        Ok(Dictionary::Explicit { alphabet, words })
    }

    /// Explicit dictionary from text words over a compact alphabet.
    pub fn from_strings(alphabet: &str, words: &[&str]) -> Result<Self, DictError> {
        let a = Alphabet::from_chars(alphabet)?;
        let words = words.iter().map(|w| Ok(Word::dense(a.parse_word(w)?))).collect::<Result<_, DictError>>()?;
        Self::explicit(a, words)
    }

    pub fn complete(alphabet: Alphabet, length: u64) -> Result<Self, DictError> {
        if alphabet.size().is_none() {
            return Err(DictError::Invalid("complete dictionaries need a finite alphabet".into()));
        }
        Ok(Dictionary::Complete { alphabet, length })
    }

    pub fn nerdle(length: usize) -> Self {
        Dictionary::Nerdle(NerdleDict::new(length))
    }

    pub fn pattern(alphabet: Alphabet, spec: PatternSpec) -> Result<Self, DictError> {
        let dict = PatternDict::new(spec)?;
        if !dict.words().iter().all(|w| Word::Closed(w.clone()).all_symbols_in(&alphabet)) {
            return Err(DictError::Invalid("template uses a symbol outside the alphabet".into()));
        }
        Ok(Dictionary::Pattern { alphabet, dict })
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Dictionary::Explicit { alphabet, .. }
            | Dictionary::Complete { alphabet, .. }
            | Dictionary::Pattern { alphabet, .. } => alphabet.clone(),
            Dictionary::Nerdle(_) => Alphabet::finite(nerdle::LABELS).unwrap(),
        }
    }

    /// Word length, or `None` for dictionaries of ω-words.
    pub fn length(&self) -> Option<u64> {
        match self {
            Dictionary::Explicit { words, .. } => words[0].len(),
            Dictionary::Complete { length, .. } => Some(*length),
            Dictionary::Pattern { .. } => None,
            Dictionary::Nerdle(n) => Some(n.length() as u64),
        }
    }

    /// Number of words, when known and representable.
    pub fn size(&self) -> Option<u64> {
        match self {
            Dictionary::Explicit { words, .. } => Some(words.len() as u64),
            Dictionary::Complete { alphabet, length } => {
                let n = alphabet.size().unwrap() as u64;
                u32::try_from(*length).ok().and_then(|l| n.checked_pow(l))
            }
            Dictionary::Pattern { dict, .. } => Some(dict.words().len() as u64),
            Dictionary::Nerdle(n) => n.all().map(|a| a.len() as u64),
        }
    }

    fn check_shape(&self, w: &Word) -> Result<(), DictError> {
        if w.len() != self.length() {
            return Err(DictError::Mismatch(format!(
                "expected length {}, got {}",
                self.length().map_or("ω".to_string(), |l| l.to_string()),
                w.len().map_or("ω".to_string(), |l| l.to_string())
            )));
        }
        if !w.all_symbols_in(&self.alphabet()) {
            return Err(DictError::Mismatch("symbol outside the alphabet".into()));
        }
        Ok(())
    }

    pub fn contains(&self, w: &Word) -> Result<bool, DictError> {
        self.check_shape(w)?;
        Ok(match self {
            Dictionary::Explicit { words, .. } => words.contains(w),
            Dictionary::Complete { .. } => true,
            Dictionary::Pattern { dict, .. } => match w {
                Word::Closed(c) => dict.words().contains(c),
                _ => false,
            },
            Dictionary::Nerdle(_) => nerdle::is_valid(&w.as_finite().unwrap().to_vec()),
        })
    }

    /// The `i`-th word of the dictionary's fixed enumeration: list order for
    /// explicit and pattern dictionaries, lexicographic for the others.
    pub fn enumerate(&self, i: u64) -> Result<Word, DictError> {
        let out_of_range = |size: u64| DictError::IndexOutOfRange { index: i, size };
        match self {
            Dictionary::Explicit { words, .. } => {
                words.get(i as usize).cloned().ok_or(out_of_range(words.len() as u64))
            }
            Dictionary::Complete { alphabet, length } => {
                let n = alphabet.size().unwrap() as u64;
                if let Some(size) = self.size() {
                    if i >= size {
                        return Err(out_of_range(size));
                    }
                }
                let mut symbols = vec![0; *length as usize];
                let mut rest = i;
                for s in symbols.iter_mut().rev() {
                    *s = rest % n;
                    rest /= n;
                    if rest == 0 {
                        break;
                    }
                }
                Ok(Word::finite(symbols))
            }
            Dictionary::Pattern { dict, .. } => dict
                .words()
                .get(i as usize)
                .map(|w| Word::Closed(w.clone()))
                .ok_or(out_of_range(dict.words().len() as u64)),
            Dictionary::Nerdle(n) => {
                let all = n.all().ok_or_else(|| {
                    DictError::TooLarge(format!("equations of length {}", n.length()))
                })?;
                all.get(i as usize).map(|e| Word::dense(e.clone())).ok_or(out_of_range(all.len() as u64))
            }
        }
    }

    /// Every word, in enumeration order, when there are at most `limit`.
    pub fn words(&self, limit: u64) -> Result<Vec<Word>, DictError> {
        let size = self.size().ok_or_else(|| DictError::TooLarge("dictionary size unknown".into()))?;
        if size > limit {
            return Err(DictError::TooLarge(format!("{size} words")));
        }
        (0..size).map(|i| self.enumerate(i)).collect()
    }

    /// The least word (in enumeration order) meeting the constraint. Nerdle
    /// equations longer than [`nerdle::ENUMERATE_MAX_LEN`] come from a
    /// deterministic search that need not return the least one.
    pub fn find_consistent(&self, c: &CellConstraint) -> Option<Word> {
        if let Some(len) = self.length() {
            if len as usize != c.len() {
                return None;
            }
        }
        match self {
            Dictionary::Explicit { words, .. } => words.iter().find(|w| c.satisfied_by(w)).cloned(),
            Dictionary::Pattern { dict, .. } => {
                dict.words().iter().map(|w| Word::Closed(w.clone())).find(|w| c.satisfied_by(w))
            }
            Dictionary::Complete { alphabet, .. } => complete_least(alphabet.size().unwrap() as u64, c),
            Dictionary::Nerdle(n) => {
                let mut sc = nerdle::SearchConstraint::unconstrained(c.len());
                for (p, mask) in sc.allowed.iter_mut().enumerate() {
                    *mask = match c.required(p as Pos) {
                        Some(s) if s < nerdle::SYMBOL_COUNT => 1 << s,
                        Some(_) => 0,
                        None => *mask & !(c.forbidden_mask(p as Pos) as u16),
                    };
                }
                for (s, m) in &c.min_count {
                    if *s >= nerdle::SYMBOL_COUNT {
                        return None;
                    }
                    sc.min_count[*s as usize] = (*m).min(255) as u8;
                }
                for (s, m) in &c.max_count {
                    if *s < nerdle::SYMBOL_COUNT {
                        sc.max_count[*s as usize] = (*m).min(255) as u8;
                    }
                }
                if n.length() <= nerdle::ENUMERATE_MAX_LEN {
                    nerdle::find_least(&sc).map(Word::dense)
                } else {
                    nerdle::find_equation(&sc).map(Word::dense)
                }
            }
        }
    }
}

// Least word over `0..n` meeting the constraint. Without count bounds each
// cell independently takes its least allowed symbol.
fn complete_least(n: u64, c: &CellConstraint) -> Option<Word> {
    let least = |p: usize| -> Option<Symbol> {
        match c.required(p as Pos) {
            Some(s) => (s < n).then_some(s),
            None => (0..n).find(|s| c.allows(p as Pos, *s)),
        }
    };
    if !c.has_counts() {
        let symbols: Option<Vec<Symbol>> = (0..c.len()).map(least).collect();
        return symbols.map(Word::finite);
    }
    let mut out = Vec::with_capacity(c.len());
    let mut counts = BTreeMap::new();
    fn dfs(n: u64, c: &CellConstraint, out: &mut Vec<Symbol>, counts: &mut BTreeMap<Symbol, u64>) -> bool {
        let pos = out.len();
        let deficit: u64 =
            c.min_count.iter().map(|(s, m)| m.saturating_sub(counts.get(s).copied().unwrap_or(0))).sum();
        if deficit > (c.len() - pos) as u64 {
            return false;
        }
        if pos == c.len() {
            return c.counts_ok(counts);
        }
        for s in 0..n {
            if !c.allows(pos as Pos, s) {
                continue;
            }
            let k = counts.entry(s).or_insert(0);
            if c.max_count.get(&s).is_some_and(|m| *k >= *m) {
                continue;
            }
            *k += 1;
            out.push(s);
            if dfs(n, c, out, counts) {
                return true;
            }
            out.pop();
            *counts.get_mut(&s).unwrap() -= 1;
        }
        false
    }
    dfs(n, c, &mut out, &mut counts).then(|| Word::finite(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_examples() {
        let d = Dictionary::complete(Alphabet::from_chars("AB").unwrap(), 3).unwrap();
        assert!(d.contains(&Word::dense(vec![0, 1, 0])).unwrap());
        let d2 = Dictionary::complete(Alphabet::from_chars("AB").unwrap(), 2).unwrap();
        let listed: Vec<_> = (0..4).map(|i| d2.enumerate(i).unwrap()).collect();
        assert_eq!(listed, [[0, 0], [0, 1], [1, 0], [1, 1]].map(|w| Word::dense(w.to_vec())));
        assert!(d2.enumerate(4).is_err());

        let d3 = Dictionary::complete(Alphabet::numbered(3), 3).unwrap();
        let mut c = CellConstraint::new(3);
        c.require(0, 1);
        c.forbid(1, 0);
        assert_eq!(d3.find_consistent(&c), Some(Word::dense(vec![1, 1, 0])));
    }

    #[test]
    fn explicit_examples() {
        let d = Dictionary::from_strings("DEOR", &["ERROR", "ORDER"]).unwrap();
        let a = d.alphabet();
        let order = Word::dense(a.parse_word("ORDER").unwrap());
        assert_eq!(d.enumerate(1).unwrap(), order);
        let mut c = CellConstraint::new(5);
        c.require(1, a.symbol("R").unwrap());
        assert_eq!(d.find_consistent(&c), Some(d.enumerate(0).unwrap()));
        assert!(d.contains(&Word::dense(vec![0])).is_err());
    }

    #[test]
    fn nerdle_examples() {
        let d = Dictionary::nerdle(5);
        let w = |t: &str| Word::dense(nerdle::parse(t).unwrap());
        assert!(d.contains(&w("1+2=3")).unwrap());
        assert!(!d.contains(&w("1/0=0")).unwrap());
        assert_eq!(d.enumerate(0).unwrap(), w("0+0=0"));
    }

    #[test]
    fn complete_with_counts() {
        let d = Dictionary::complete(Alphabet::numbered(3), 3).unwrap();
        let mut c = CellConstraint::new(3);
        c.min_count.insert(2, 2);
        assert_eq!(d.find_consistent(&c), Some(Word::dense(vec![0, 2, 2])));
        c.max_count.insert(0, 0);
        assert_eq!(d.find_consistent(&c), Some(Word::dense(vec![1, 2, 2])));
    }
}
