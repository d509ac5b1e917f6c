//! Finite, closed-form infinite, and lazily generated words.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::WordError;
use crate::positions::PositionSet;

pub type Symbol = u64;
pub type Pos = u64;

/// Finite words longer than this are run-length encoded when that is smaller.
pub const RLE_THRESHOLD: usize = 4096;

/// A finite symbol sequence, stored densely or as runs.
#[derive(Clone)]
pub enum FiniteWord {
    Dense(Arc<Vec<Symbol>>),
    Rle(Arc<RunLength>),
}

/// Runs `(symbol, length)` with cumulative end offsets for `O(log runs)` lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunLength {
    runs: Vec<(Symbol, u64)>,
    ends: Vec<u64>,
}

impl RunLength {
    pub fn from_runs<I: IntoIterator<Item = (Symbol, u64)>>(runs: I) -> Self {
        let mut merged: Vec<(Symbol, u64)> = Vec::new();
        for (s, n) in runs {
            if n == 0 {
                continue;
            }
            match merged.last_mut() {
                Some((last, len)) if *last == s => *len += n,
                _ => merged.push((s, n)),
            }
        }
        let mut total = 0;
        let ends = merged
            .iter()
            .map(|(_, n)| {
                total += n;
                total
            })
            .collect();
        RunLength { runs: merged, ends }
    }

    pub fn encode(symbols: &[Symbol]) -> Self {
        Self::from_runs(symbols.iter().map(|s| (*s, 1)))
    }

    pub fn len(&self) -> u64 {
        self.ends.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn runs(&self) -> &[(Symbol, u64)] {
        &self.runs
    }

    pub fn get(&self, pos: Pos) -> Option<Symbol> {
        let i = self.ends.partition_point(|end| *end <= pos);
        self.runs.get(i).map(|(s, _)| *s)
    }
}

fn count_runs(symbols: &[Symbol]) -> usize {
    if symbols.is_empty() {
        return 0;
    }
    1 + symbols.windows(2).filter(|w| w[0] != w[1]).count()
}

impl FiniteWord {
    /// Picks the representation: run-length encoding for long words whose runs
    /// take less room than the dense form.
    pub fn new(symbols: Vec<Symbol>) -> Self {
        if symbols.len() > RLE_THRESHOLD && count_runs(&symbols) * 2 <= symbols.len() {
            FiniteWord::Rle(Arc::new(RunLength::encode(&symbols)))
        } else {
            FiniteWord::Dense(Arc::new(symbols))
        }
    }

    pub fn dense(symbols: Vec<Symbol>) -> Self {
        FiniteWord::Dense(Arc::new(symbols))
    }

    pub fn from_runs<I: IntoIterator<Item = (Symbol, u64)>>(runs: I) -> Self {
        FiniteWord::Rle(Arc::new(RunLength::from_runs(runs)))
    }

    pub fn len(&self) -> u64 {
        match self {
            FiniteWord::Dense(v) => v.len() as u64,
            FiniteWord::Rle(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_rle(&self) -> bool {
        matches!(self, FiniteWord::Rle(_))
    }

    pub fn get(&self, pos: Pos) -> Option<Symbol> {
        match self {
            FiniteWord::Dense(v) => v.get(pos as usize).copied(),
            FiniteWord::Rle(r) => r.get(pos),
        }
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Symbol> + '_> {
        match self {
            FiniteWord::Dense(v) => Box::new(v.iter().copied()),
            FiniteWord::Rle(r) => Box::new(
                r.runs.iter().flat_map(|(s, n)| std::iter::repeat(*s).take(*n as usize)),
            ),
        }
    }

    /// `(symbol, length)` runs, without materializing the dense form.
    pub fn runs(&self) -> Vec<(Symbol, u64)> {
        match self {
            FiniteWord::Dense(v) => RunLength::encode(v).runs,
            FiniteWord::Rle(r) => r.runs.clone(),
        }
    }

    pub fn to_vec(&self) -> Vec<Symbol> {
        match self {
            FiniteWord::Dense(v) => v.as_ref().clone(),
            FiniteWord::Rle(_) => self.iter().collect(),
        }
    }

    pub fn as_slice(&self) -> Option<&[Symbol]> {
        match self {
            FiniteWord::Dense(v) => Some(v),
            FiniteWord::Rle(_) => None,
        }
    }
}

impl PartialEq for FiniteWord {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FiniteWord::Dense(a), FiniteWord::Dense(b)) => a == b,
            (FiniteWord::Rle(a), FiniteWord::Rle(b)) => a == b,
            _ => self.len() == other.len() && self.iter().eq(other.iter()),
        }
    }
}

impl Eq for FiniteWord {}

impl std::hash::Hash for FiniteWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.len().hash(state);
        for (s, n) in self.runs() {
            s.hash(state);
            n.hash(state);
        }
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 64 {
            f.debug_list().entries(self.iter()).finish()
        } else {
            write!(f, "FiniteWord(len={}, runs={})", self.len(), self.runs().len())
        }
    }
}

/// The periodic skeleton of a closed-form word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Base {
    /// Every position holds `symbol`.
    Constant { symbol: Symbol },
    /// Position `n` holds `n + k`.
    Shift { k: u64 },
    /// Position `n` holds `pattern[n mod pattern.len()]`.
    Periodic { pattern: Vec<Symbol> },
}

impl Base {
    pub fn constant(symbol: Symbol) -> Self {
        Base::Constant { symbol }
    }

    pub fn shift(k: u64) -> Self {
        Base::Shift { k }
    }

    pub fn periodic(pattern: Vec<Symbol>) -> Self {
        Base::Periodic { pattern }
    }

    pub fn at(&self, n: Pos) -> Symbol {
        match self {
            Base::Constant { symbol } => *symbol,
            Base::Shift { k } => n + k,
            Base::Periodic { pattern } => pattern[(n % pattern.len() as u64) as usize],
        }
    }

    /// Period of the base, `None` for shifts.
    pub fn period(&self) -> Option<u64> {
        match self {
            Base::Constant { .. } => Some(1),
            Base::Shift { .. } => None,
            Base::Periodic { pattern } => Some(pattern.len() as u64),
        }
    }

    // Minimal period; a period-1 pattern becomes a constant.
    fn normalized(self) -> Result<Base, WordError> {
        match self {
            Base::Periodic { pattern } => {
                if pattern.is_empty() {
                    return Err(WordError::InvalidClosedForm("periodic pattern is empty".into()));
                }
                let m = pattern.len();
                let d = (1..=m)
                    .find(|d| m % d == 0 && (0..m).all(|i| pattern[i] == pattern[i % d]))
                    .unwrap_or(m);
                if d == 1 {
                    Ok(Base::Constant { symbol: pattern[0] })
                } else {
                    Ok(Base::Periodic { pattern: pattern[..d].to_vec() })
                }
            }
            b => Ok(b),
        }
    }
}

/// An ω-word given by a base plus finitely many exceptions, each differing
/// from the base at its position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedWord {
    base: Base,
    exceptions: BTreeMap<Pos, Symbol>,
}

impl ClosedWord {
    /// Strict constructor: rejects empty patterns and exceptions equal to the base.
    pub fn new(base: Base, exceptions: BTreeMap<Pos, Symbol>) -> Result<Self, WordError> {
        let base = base.normalized()?;
        if let Some((p, v)) = exceptions.iter().find(|(p, v)| base.at(**p) == **v) {
            return Err(WordError::InvalidClosedForm(format!(
                "exception {p}→{v} equals the base value"
            )));
        }
        Ok(ClosedWord { base, exceptions })
    }

    /// Lenient constructor: exceptions that agree with the base are dropped.
    pub fn normalized(base: Base, exceptions: BTreeMap<Pos, Symbol>) -> Result<Self, WordError> {
        let base = base.normalized()?;
        let exceptions = exceptions.into_iter().filter(|(p, v)| base.at(*p) != *v).collect();
        Ok(ClosedWord { base, exceptions })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn exceptions(&self) -> &BTreeMap<Pos, Symbol> {
        &self.exceptions
    }

    pub fn at(&self, n: Pos) -> Symbol {
        self.exceptions.get(&n).copied().unwrap_or_else(|| self.base.at(n))
    }

    /// A copy with position `n` set to `v`.
    pub fn with(&self, n: Pos, v: Symbol) -> ClosedWord {
        let mut exceptions = self.exceptions.clone();
        if self.base.at(n) == v {
            exceptions.remove(&n);
        } else {
            exceptions.insert(n, v);
        }
        ClosedWord { base: self.base.clone(), exceptions }
    }

    /// One past the largest exception position (0 when there are none).
    pub fn exception_bound(&self) -> Pos {
        self.exceptions.keys().next_back().map_or(0, |p| p + 1)
    }

    pub fn prefix(&self, n: u64) -> Vec<Symbol> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// The positions holding `a`.
    pub fn positions_of(&self, a: Symbol) -> PositionSet {
        let mut set = match &self.base {
            Base::Constant { symbol } if *symbol == a => PositionSet::all(),
            Base::Constant { .. } => PositionSet::empty(),
            Base::Shift { k } if a >= *k => PositionSet::finite([a - k]),
            Base::Shift { .. } => PositionSet::empty(),
            Base::Periodic { pattern } => PositionSet::residues(
                pattern.len() as u64,
                (0..pattern.len() as u64).filter(|&r| pattern[r as usize] == a),
            ),
        };
        for (&p, &v) in &self.exceptions {
            set.set(p, v == a);
        }
        set
    }

    /// The least position holding `a`, if any.
    pub fn first_occurrence(&self, a: Symbol) -> Option<Pos> {
        self.positions_of(a).first_from(0)
    }
}

type Generator = Arc<dyn Fn(Pos) -> Symbol + Send + Sync>;

/// A word known through a materialized prefix and, optionally, a generator for
/// positions beyond it. Extending never changes earlier entries.
#[derive(Clone)]
pub struct LazyWord {
    prefix: Arc<Vec<Symbol>>,
    generator: Option<Generator>,
    certificate: Vec<String>,
}

impl LazyWord {
    pub fn from_prefix(prefix: Vec<Symbol>) -> Self {
        LazyWord { prefix: Arc::new(prefix), generator: None, certificate: Vec::new() }
    }

    pub fn with_generator(prefix: Vec<Symbol>, generator: Generator) -> Self {
        LazyWord { prefix: Arc::new(prefix), generator: Some(generator), certificate: Vec::new() }
    }

    pub fn with_certificate(mut self, certificate: Vec<String>) -> Self {
        self.certificate = certificate;
        self
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    /// Promised properties recorded by whoever built the word.
    pub fn certificate(&self) -> &[String] {
        &self.certificate
    }

    pub fn at(&self, n: Pos) -> Result<Symbol, WordError> {
        if let Some(s) = self.prefix.get(n as usize) {
            return Ok(*s);
        }
        match &self.generator {
            Some(g) => Ok(g(n)),
            None => Err(WordError::NotGenerated(n)),
        }
    }

    /// Materializes the first `n` positions, appending to the prefix.
    pub fn extend_to(&mut self, n: u64) -> Result<(), WordError> {
        let have = self.prefix.len() as u64;
        if n <= have {
            return Ok(());
        }
        let extra = (have..n).map(|i| self.at(i)).collect::<Result<Vec<_>, _>>()?;
        Arc::make_mut(&mut self.prefix).extend(extra);
        Ok(())
    }
}

impl PartialEq for LazyWord {
    fn eq(&self, other: &Self) -> bool {
        self.prefix == other.prefix
    }
}

impl fmt::Debug for LazyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyWord")
            .field("prefix_len", &self.prefix.len())
            .field("generator", &self.generator.is_some())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Word {
    Finite(FiniteWord),
    Closed(ClosedWord),
    Lazy(LazyWord),
}

impl Word {
    pub fn finite(symbols: Vec<Symbol>) -> Word {
        Word::Finite(FiniteWord::new(symbols))
    }

    pub fn dense(symbols: Vec<Symbol>) -> Word {
        Word::Finite(FiniteWord::dense(symbols))
    }

    pub fn from_runs<I: IntoIterator<Item = (Symbol, u64)>>(runs: I) -> Word {
        Word::Finite(FiniteWord::from_runs(runs))
    }

    pub fn constant(symbol: Symbol) -> Word {
        Word::Closed(ClosedWord { base: Base::constant(symbol), exceptions: BTreeMap::new() })
    }

    pub fn shift(k: u64) -> Word {
        Word::Closed(ClosedWord { base: Base::shift(k), exceptions: BTreeMap::new() })
    }

    pub fn periodic(pattern: Vec<Symbol>) -> Result<Word, WordError> {
        Ok(Word::Closed(ClosedWord::new(Base::periodic(pattern), BTreeMap::new())?))
    }

    pub fn closed<I: IntoIterator<Item = (Pos, Symbol)>>(base: Base, exceptions: I) -> Result<Word, WordError> {
        Ok(Word::Closed(ClosedWord::new(base, exceptions.into_iter().collect())?))
    }

    /// Finite length, or `None` for ω-words.
    pub fn len(&self) -> Option<u64> {
        match self {
            Word::Finite(f) => Some(f.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Word::Closed(_))
    }

    pub fn as_finite(&self) -> Option<&FiniteWord> {
        match self {
            Word::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_closed(&self) -> Option<&ClosedWord> {
        match self {
            Word::Closed(c) => Some(c),
            _ => None,
        }
    }

    /// The symbol at position `n`.
    pub fn eval_at(&self, n: Pos) -> Result<Symbol, WordError> {
        match self {
            Word::Finite(f) => f.get(n).ok_or(WordError::OutOfRange { pos: n, len: f.len() }),
            Word::Closed(c) => Ok(c.at(n)),
            Word::Lazy(l) => l.at(n),
        }
    }

    /// First `n` symbols (all of a shorter finite word).
    pub fn prefix(&self, n: u64) -> Result<Vec<Symbol>, WordError> {
        match self {
            Word::Finite(f) => Ok(f.iter().take(n as usize).collect()),
            Word::Closed(c) => Ok(c.prefix(n)),
            Word::Lazy(l) => (0..n).map(|i| l.at(i)).collect(),
        }
    }

    /// Symbols used by a finite or closed-form word, if finitely many.
    pub fn finite_symbol_set(&self) -> Option<std::collections::BTreeSet<Symbol>> {
        match self {
            Word::Finite(f) => Some(f.runs().into_iter().map(|(s, _)| s).collect()),
            Word::Closed(c) => match &c.base {
                Base::Shift { .. } => None,
                Base::Constant { symbol } => {
                    Some(std::iter::once(*symbol).chain(c.exceptions.values().copied()).collect())
                }
                Base::Periodic { pattern } => {
                    Some(pattern.iter().chain(c.exceptions.values()).copied().collect())
                }
            },
            Word::Lazy(_) => None,
        }
    }

    pub fn all_symbols_in(&self, alphabet: &crate::alphabet::Alphabet) -> bool {
        match self.finite_symbol_set() {
            Some(set) => set.iter().all(|s| alphabet.contains(*s)),
            None => alphabet.size().is_none(),
        }
    }
}

impl From<ClosedWord> for Word {
    fn from(c: ClosedWord) -> Self {
        Word::Closed(c)
    }
}

/// Pairwise-distinctness of a word's values.
pub fn check_injective(w: &Word) -> bool {
    match w {
        Word::Finite(f) => {
            let mut seen = HashSet::new();
            f.iter().all(|s| seen.insert(s))
        }
        Word::Closed(c) => match c.base {
            Base::Constant { .. } | Base::Periodic { .. } => false,
            Base::Shift { k } => {
                let mut seen = HashSet::new();
                c.exceptions.iter().all(|(_, &v)| {
                    // Values below k never occur in the base; larger values must
                    // have been displaced from their own base position.
                    let free = v < k || c.exceptions.contains_key(&(v - k));
                    free && seen.insert(v)
                })
            }
        },
        Word::Lazy(l) => {
            let mut seen = HashSet::new();
            l.prefix().iter().all(|s| seen.insert(*s))
        }
    }
}

/// Colors absent from an injective shift-based word, which is always a finite set.
pub fn missing_colors(c: &ClosedWord) -> Option<std::collections::BTreeSet<Symbol>> {
    let Base::Shift { k } = c.base else { return None };
    let used: HashSet<Symbol> = c.exceptions.values().copied().collect();
    let mut missing: std::collections::BTreeSet<Symbol> = (0..k).filter(|v| !used.contains(v)).collect();
    missing.extend(c.exceptions.keys().map(|p| p + k).filter(|v| !used.contains(v)));
    Some(missing)
}

// ---- JSON ----

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WordJson {
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symbols: Option<Vec<Symbol>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        runs: Option<Vec<(Symbol, u64)>>,
    },
    Closed {
        base: Base,
        #[serde(default)]
        exceptions: BTreeMap<String, SymbolJson>,
    },
    Lazy {
        prefix: Vec<Symbol>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SymbolJson {
    Int(Symbol),
    Str(String),
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let json = match self {
            Word::Finite(f) => WordJson::Finite { symbols: Some(f.to_vec()), runs: None },
            Word::Closed(c) => WordJson::Closed {
                base: c.base.clone(),
                exceptions: c
                    .exceptions
                    .iter()
                    .map(|(p, v)| (p.to_string(), SymbolJson::Int(*v)))
                    .collect(),
            },
            Word::Lazy(l) => WordJson::Lazy { prefix: l.prefix().to_vec() },
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match WordJson::deserialize(d)? {
            WordJson::Finite { symbols: Some(symbols), runs: None } => Ok(Word::finite(symbols)),
            WordJson::Finite { symbols: None, runs: Some(runs) } => Ok(Word::from_runs(runs)),
            WordJson::Finite { .. } => Err(D::Error::custom("finite word needs exactly one of symbols/runs")),
            WordJson::Closed { base, exceptions } => {
                let mut map = BTreeMap::new();
                for (p, v) in exceptions {
                    let pos: Pos = p.parse().map_err(|_| D::Error::custom(format!("bad position {p:?}")))?;
                    let sym = match v {
                        SymbolJson::Int(v) => v,
                        SymbolJson::Str(s) => {
                            s.parse().map_err(|_| D::Error::custom(format!("bad symbol {s:?}")))?
                        }
                    };
                    map.insert(pos, sym);
                }
                ClosedWord::new(base, map).map(Word::Closed).map_err(D::Error::custom)
            }
            WordJson::Lazy { prefix } => Ok(Word::Lazy(LazyWord::from_prefix(prefix))),
        }
    }
}
