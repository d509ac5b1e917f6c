use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Adversary, AdversaryError};
use crate::census::{color_census, CensusTail, ColorCensus};
#[cfg(test)]
use crate::cardinal::{Fin, Omega};
use crate::feedback::{Feedback, GameMode, TricolorFeedback};
use crate::positions::PositionSet;
use crate::word::{Base, ClosedWord, Pos, Symbol, Word};

/// Commitments about an injective ω-codeword made so far. Every letter ever
/// mentioned is promised to occur exactly once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PromiseLedger {
    cells: BTreeMap<Pos, Symbol>,
    places: BTreeMap<Symbol, Pos>,
    greens: BTreeSet<Pos>,
    #[serde(skip)]
    guesses: Vec<ClosedWord>,
}

impl PromiseLedger {
    pub fn cells(&self) -> &BTreeMap<Pos, Symbol> {
        &self.cells
    }

    pub fn places(&self) -> &BTreeMap<Symbol, Pos> {
        &self.places
    }

    /// Cells committed because their letter had been mentioned cofinitely.
    pub fn green_promises(&self) -> &BTreeSet<Pos> {
        &self.greens
    }

    pub fn stage(&self) -> usize {
        self.guesses.len()
    }

    /// Both maps are injective and inverse to each other.
    pub fn is_consistent(&self) -> bool {
        self.cells.len() == self.places.len() && self.cells.iter().all(|(p, a)| self.places.get(a) == Some(p))
    }

    fn commit(&mut self, p: Pos, a: Symbol) {
        debug_assert!(!self.cells.contains_key(&p) && !self.places.contains_key(&a));
        self.cells.insert(p, a);
        self.places.insert(a, p);
    }

    fn committed(&self) -> PositionSet {
        PositionSet::finite(self.cells.keys().copied())
    }

    fn mentions(&self, a: Symbol, guesses: &[ClosedWord]) -> PositionSet {
        guesses.iter().fold(PositionSet::empty(), |acc, g| acc.union(&g.positions_of(a)))
    }

    fn mentioned_at(&self, p: Pos, a: Symbol) -> bool {
        self.guesses.iter().any(|g| g.at(p) == a)
    }

    fn is_mentioned(&self, a: Symbol) -> bool {
        self.guesses.iter().any(|g| g.first_occurrence(a).is_some())
    }

    // Every letter at or above this bound is either mentioned by a shift-based
    // guess or by none; there are more unplaced letters below it than placed ones.
    fn letter_bound(&self) -> Symbol {
        let top = self
            .guesses
            .iter()
            .flat_map(|g| {
                let base = match g.base() {
                    Base::Constant { symbol } => *symbol,
                    Base::Shift { k } => *k,
                    Base::Periodic { pattern } => pattern.iter().copied().max().unwrap_or(0),
                };
                g.exceptions().values().copied().chain(std::iter::once(base))
            })
            .max()
            .unwrap_or(0);
        top + self.places.len() as Symbol + 2
    }

    /// A prefix of a codeword meeting every commitment and every answer given:
    /// free cells take the least unplaced letter never guessed there.
    pub fn witness_extend(&self, len: u64) -> Vec<Symbol> {
        let mut used: BTreeSet<Symbol> = self.places.keys().copied().collect();
        let mut out = Vec::with_capacity(len as usize);
        for p in 0..len {
            if let Some(&a) = self.cells.get(&p) {
                out.push(a);
                continue;
            }
            let a = (0..).find(|a| !used.contains(a) && !self.mentioned_at(p, *a)).unwrap();
            used.insert(a);
            out.push(a);
        }
        out
    }
}

/// Wordle codemaker over a countably infinite alphabet that reveals finitely
/// many cells per stage and never answers all-green.
#[derive(Default)]
pub struct PromiseAdversary {
    ledger: PromiseLedger,
    new_greens: Vec<usize>,
}

impl PromiseAdversary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ledger(&self) -> &PromiseLedger {
        &self.ledger
    }

    /// Green promises made at each stage so far.
    pub fn new_greens(&self) -> &[usize] {
        &self.new_greens
    }

    fn commit_for(&mut self, s: &ClosedWord) -> usize {
        let l = &mut self.ledger;
        let all = l.guesses.clone();
        let earlier = &all[..all.len() - 1];
        let recurring: BTreeSet<Symbol> = match s.base() {
            Base::Constant { symbol } => [*symbol].into(),
            Base::Periodic { pattern } => pattern.iter().copied().collect(),
            Base::Shift { .. } => BTreeSet::new(),
        };
        let mut greens = 0;
        for a in recurring {
            if l.places.contains_key(&a) || !l.mentions(a, &all).is_cofinite() {
                continue;
            }
            let fresh = s.positions_of(a).difference(&l.mentions(a, earlier)).difference(&l.committed());
            if let Some(p) = fresh.first_from(0) {
                l.commit(p, a);
                l.greens.insert(p);
                greens += 1;
            }
        }
        let cell = (0..).find(|p| !l.cells.contains_key(p)).unwrap();
        let letter = (0..).find(|a| !l.places.contains_key(a) && !l.mentioned_at(cell, *a)).unwrap();
        l.commit(cell, letter);
        let bound = l.letter_bound();
        if let Some(a) = (0..bound).find(|a| !l.places.contains_key(a) && l.is_mentioned(*a)) {
            let free = l.mentions(a, &all).union(&l.committed()).complement();
            if let Some(p) = free.first_from(0) {
                l.commit(p, a);
            }
        }
        greens
    }

    fn feedback_for(&self, s: &ClosedWord) -> TricolorFeedback {
        let l = &self.ledger;
        let green: BTreeSet<Pos> = l.cells.iter().filter(|(p, a)| s.at(**p) == **a).map(|(p, _)| *p).collect();
        let once = ColorCensus { explicit: BTreeMap::new(), tail: CensusTail::EachOnceFrom { k: 0 } };
        let mut yellow_counts = color_census(&Word::Closed(s.clone())).expect("closed census").pointwise_min(&once);
        for p in &green {
            yellow_counts.remove_one(l.cells[p]);
        }
        let yellow_positions = yellow_counts
            .support()
            .map(|letters| letters.into_iter().filter_map(|a| s.first_occurrence(a)).collect());
        TricolorFeedback::Infinite { green: PositionSet::finite(green), yellow_positions, yellow_counts }
    }

    /// Checks recorded answers against the witness prefix of length `len`:
    /// greens exactly where the witness matches, and a yellow for each letter
    /// the witness places inside the window away from the guess's copies.
    pub fn verify(&self, answers: &[TricolorFeedback], len: u64) -> Result<(), String> {
        let w = self.ledger.witness_extend(len);
        for (i, (s, f)) in self.ledger.guesses.iter().zip(answers).enumerate() {
            for (p, &a) in w.iter().enumerate() {
                let p = p as Pos;
                if f.is_green(p) != (s.at(p) == a) {
                    return Err(format!("stage {i}: green mismatch at {p}"));
                }
                let expect = u64::from(s.first_occurrence(a).is_some() && s.at(p) != a);
                if f.yellow_count(a).and_then(|c| c.finite()) != Some(expect) {
                    return Err(format!("stage {i}: yellow count of {a} placed at {p}"));
                }
            }
        }
        Ok(())
    }
}

impl Adversary for PromiseAdversary {
    fn name(&self) -> String {
        "promise".into()
    }

    fn mode(&self) -> GameMode {
        GameMode::Wordle
    }

    fn answer(&mut self, guess: &Word) -> Result<Feedback, AdversaryError> {
        let Word::Closed(s) = guess else { return Err(AdversaryError::NotClosed) };
        self.ledger.guesses.push(s.clone());
        let greens = self.commit_for(s);
        self.new_greens.push(greens);
        Ok(Feedback::Tricolor(self.feedback_for(s)))
    }

    fn witness(&self, len: u64) -> Option<Word> {
        Some(Word::finite(self.ledger.witness_extend(len)))
    }
}
