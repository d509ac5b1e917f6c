use std::collections::BTreeMap;

use crate::word::{Pos, Symbol, Word};

/// Per-cell requirements on a guess: a required symbol (a known green) or a set
/// of forbidden symbols, plus optional bounds on how often a letter occurs.
///
/// Forbidden sets are bitmasks, so only symbols below 128 can be forbidden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellConstraint {
    required: Vec<Option<Symbol>>,
    forbidden: Vec<u128>,
    pub min_count: BTreeMap<Symbol, u64>,
    pub max_count: BTreeMap<Symbol, u64>,
}

pub const MAX_FORBIDDABLE: Symbol = 128;

impl CellConstraint {
    /// No requirements on `len` cells.
    pub fn new(len: usize) -> Self {
        CellConstraint {
            required: vec![None; len],
            forbidden: vec![0; len],
            min_count: BTreeMap::new(),
            max_count: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.required.len()
    }

    pub fn is_empty(&self) -> bool {
        self.required.is_empty()
    }

    pub fn require(&mut self, pos: Pos, s: Symbol) {
        self.required[pos as usize] = Some(s);
        if s < MAX_FORBIDDABLE {
            self.forbidden[pos as usize] &= !(1 << s);
        }
    }

    /// Forbids `s` at `pos`; ignored when `s` is already required there.
    pub fn forbid(&mut self, pos: Pos, s: Symbol) {
        assert!(s < MAX_FORBIDDABLE, "symbol {s} cannot be forbidden");
        if self.required[pos as usize] != Some(s) {
            self.forbidden[pos as usize] |= 1 << s;
        }
    }

    pub fn required(&self, pos: Pos) -> Option<Symbol> {
        self.required[pos as usize]
    }

    pub fn forbidden_mask(&self, pos: Pos) -> u128 {
        self.forbidden[pos as usize]
    }

    pub fn allows(&self, pos: Pos, s: Symbol) -> bool {
        let p = pos as usize;
        match self.required[p] {
            Some(r) => r == s,
            None => s >= MAX_FORBIDDABLE || self.forbidden[p] & (1 << s) == 0,
        }
    }

    pub fn has_counts(&self) -> bool {
        !self.min_count.is_empty() || !self.max_count.is_empty()
    }

    pub fn counts_ok(&self, counts: &BTreeMap<Symbol, u64>) -> bool {
        let n = |s: &Symbol| counts.get(s).copied().unwrap_or(0);
        self.min_count.iter().all(|(s, m)| n(s) >= *m) && self.max_count.iter().all(|(s, m)| n(s) <= *m)
    }

    /// Whether `w` meets every cell requirement (cells beyond the constraint's
    /// length are unconstrained) and, for finite words, the count bounds.
    pub fn satisfied_by(&self, w: &Word) -> bool {
        if let Some(len) = w.len() {
            if len as usize != self.len() {
                return false;
            }
        }
        for p in 0..self.len() as Pos {
            match w.eval_at(p) {
                Ok(s) if self.allows(p, s) => {}
                _ => return false,
            }
        }
        if self.has_counts() {
            let Some(f) = w.as_finite() else { return true };
            let mut counts = BTreeMap::new();
            for (s, n) in f.runs() {
                *counts.entry(s).or_insert(0) += n;
            }
            return self.counts_ok(&counts);
        }
        true
    }
}
