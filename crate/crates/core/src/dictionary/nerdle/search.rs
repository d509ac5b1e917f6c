//! Equations satisfying per-cell constraints.
//!
//! Depth-first search over cells, with four kinds of pruning: a syntax
//! automaton run backwards over the allowed sets, magnitude bounds at term
//! boundaries (an expression on `k` cells is below `10^k` in absolute value),
//! a memo of boundary states already known to fail, and a table of all right
//! sides by value when the cells after `=` admit few of them.
//!
//! [`find_equation`] gives up on the depth-first search after a node budget
//! and solves over operator layouts instead, falling back to the unbounded
//! search only if no layout works within its budget.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use super::layout::solve_by_layout;
use super::eval::{evaluate, is_digit, DIVIDE, EQUALS, MINUS, PLUS, SYMBOL_COUNT, TIMES};
use crate::word::Symbol;

type Q = Ratio<i128>;

/// Allowed symbols per cell as a 15-bit mask, plus per-symbol count bounds.
#[derive(Clone, Debug)]
pub struct SearchConstraint {
    pub allowed: Vec<u16>,
    pub min_count: [u8; SYMBOL_COUNT as usize],
    pub max_count: [u8; SYMBOL_COUNT as usize],
}

impl SearchConstraint {
    pub fn unconstrained(length: usize) -> Self {
        SearchConstraint {
            allowed: vec![(1 << SYMBOL_COUNT) - 1; length],
            min_count: [0; SYMBOL_COUNT as usize],
            max_count: [u8::MAX; SYMBOL_COUNT as usize],
        }
    }

    fn has_counts(&self) -> bool {
        self.min_count.iter().any(|c| *c > 0) || self.max_count.iter().any(|c| *c < u8::MAX)
    }
}

// Syntax states: 0 = a numeral must start, 1 = the numeral is exactly "0",
// 2 = inside a numeral; +3 once '=' has been placed.
const EXPECT: u8 = 0;
const ZERO: u8 = 1;
const NUM: u8 = 2;

fn step(state: u8, x: Symbol) -> Option<u8> {
    let (kind, eq) = (state % 3, state / 3);
    match x {
        0 if kind == EXPECT => Some(ZERO + 3 * eq),
        1..=9 if kind == EXPECT || kind == NUM => Some(NUM + 3 * eq),
        0 if kind == NUM => Some(NUM + 3 * eq),
        PLUS..=DIVIDE if kind != EXPECT => Some(EXPECT + 3 * eq),
        EQUALS if kind != EXPECT && eq == 0 => Some(EXPECT + 3),
        _ => None,
    }
}

fn pow10(k: usize) -> Option<i128> {
    10i128.checked_pow(k as u32)
}

fn below_pow10(q: &Q, k: usize) -> bool {
    match pow10(k) {
        Some(p) => q.abs() < Q::from_integer(p),
        None => true,
    }
}

#[derive(Clone, Copy, Hash, PartialEq, Eq)]
struct Acc {
    sum: Q,
    negate: bool,
    term: Option<Q>,
    factor_op: Symbol,
    num: i128,
    lhs: Option<Q>,
}

impl Acc {
    fn new() -> Self {
        Acc { sum: Q::zero(), negate: false, term: None, factor_op: TIMES, num: 0, lhs: None }
    }

    // Folds the current numeral into the term.
    fn close_numeral(&mut self) -> Option<()> {
        let n = Q::from_integer(self.num);
        self.term = Some(match self.term {
            None => n,
            Some(t) if self.factor_op == TIMES => t.checked_mul(&n)?,
            Some(t) => {
                if n.is_zero() {
                    return None;
                }
                t.checked_div(&n)?
            }
        });
        self.num = 0;
        Some(())
    }

    fn close_term(&mut self) -> Option<()> {
        let t = self.term.take()?;
        self.sum = if self.negate { self.sum.checked_sub(&t)? } else { self.sum.checked_add(&t)? };
        self.factor_op = TIMES;
        Some(())
    }

    // Applies one symbol already accepted by the syntax automaton.
    fn push(&mut self, x: Symbol) -> Option<()> {
        if is_digit(x) {
            self.num = self.num.checked_mul(10)?.checked_add(x as i128)?;
            return Some(());
        }
        self.close_numeral()?;
        match x {
            TIMES | DIVIDE => self.factor_op = x,
            PLUS | MINUS => {
                self.close_term()?;
                self.negate = x == MINUS;
            }
            _ => {
                self.close_term()?;
                self.lhs = Some(self.sum);
                self.sum = Q::zero();
                self.negate = false;
            }
        }
        Some(())
    }

    fn finish(mut self) -> bool {
        self.close_numeral().is_some() && self.close_term().is_some() && self.lhs == Some(self.sum)
    }
}

#[derive(Hash, PartialEq, Eq)]
struct MemoKey {
    pos: u8,
    eq: bool,
    negate: bool,
    // lhs − sum after '=', the running sum before it
    value: Q,
    term: Option<Q>,
    factor_op: Symbol,
    counts: [u8; SYMBOL_COUNT as usize],
}

struct Search<'a> {
    c: &'a SearchConstraint,
    len: usize,
    feasible: Vec<[bool; 6]>,
    out: Vec<Symbol>,
    counts: [u8; SYMBOL_COUNT as usize],
    track_counts: bool,
    failed: HashSet<MemoKey>,
    // Per '=' position: every right side on the remaining cells, by value.
    right_sides: HashMap<usize, Option<HashMap<Q, Vec<Symbol>>>>,
    equals_visits: HashMap<usize, u32>,
    short_numerals: bool,
    budget: u64,
    aborted: bool,
}

// Depth-first nodes, then operator layouts, tried before the unbounded search.
const DFS_BUDGET: u64 = 2_000;
// (layout samples, weight of '*' and '/' against 1 for a digit, linear solves)
const LAYOUT_TIERS: [(usize, f64, u64); 3] =
    [(20_000, 0.05, 50_000), (200_000, 0.2, 500_000), (1_000_000, 0.5, 5_000_000)];

const SYMBOL_ORDER: [Symbol; 15] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, PLUS, MINUS, TIMES, DIVIDE, EQUALS];
const OPERATORS_FIRST: [Symbol; 15] = [PLUS, MINUS, TIMES, DIVIDE, EQUALS, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9];

// Right sides are tabulated when there are at most this many of them, once
// '=' has been placed at the same cell this often.
const TABLE_LIMIT: u64 = 1 << 18;
const TABLE_AFTER: u32 = 16;
// Failed boundary states remembered before the memo starts over.
const MEMO_LIMIT: usize = 1 << 22;

// Number of symbol strings on `start..` accepted from `state` to a final state.
fn count_completions(c: &SearchConstraint, start: usize, state: u8) -> u64 {
    let len = c.allowed.len();
    let mut n = [0u64; 6];
    n[4] = 1;
    n[5] = 1;
    for pos in (start..len).rev() {
        let mut m = [0u64; 6];
        for (s, slot) in m.iter_mut().enumerate() {
            for x in 0..SYMBOL_COUNT {
                if c.allowed[pos] & (1 << x) != 0 {
                    if let Some(t) = step(s as u8, x) {
                        *slot = slot.saturating_add(n[t as usize]);
                    }
                }
            }
        }
        n = m;
    }
    n[state as usize]
}

// Least right side (in symbol order) for each value, over cells `start..`.
fn right_side_table(c: &SearchConstraint, start: usize) -> HashMap<Q, Vec<Symbol>> {
    fn walk(c: &SearchConstraint, pos: usize, state: u8, buf: &mut Vec<Symbol>, out: &mut HashMap<Q, Vec<Symbol>>) {
        if pos == c.allowed.len() {
            if state % 3 != EXPECT {
                if let Ok(v) = evaluate::<i128>(buf) {
                    out.entry(v).or_insert_with(|| buf.clone());
                }
            }
            return;
        }
        for x in 0..SYMBOL_COUNT {
            if c.allowed[pos] & (1 << x) == 0 || x == EQUALS {
                continue;
            }
            if let Some(next) = step(state, x) {
                buf.push(x);
                walk(c, pos + 1, next, buf, out);
                buf.pop();
            }
        }
    }
    let mut out = HashMap::new();
    walk(c, start, EXPECT + 3, &mut Vec::new(), &mut out);
    out
}

impl Search<'_> {
    fn memo_key(&self, pos: usize, acc: &Acc) -> MemoKey {
        MemoKey {
            pos: pos as u8,
            eq: acc.lhs.is_some(),
            negate: acc.negate,
            value: match acc.lhs {
                Some(l) => l - acc.sum,
                None => acc.sum,
            },
            term: acc.term,
            factor_op: acc.factor_op,
            counts: if self.track_counts { self.counts } else { [0; SYMBOL_COUNT as usize] },
        }
    }

    // Bound checks when a numeral is about to start at `pos`.
    fn boundary_ok(&self, pos: usize, acc: &Acc) -> bool {
        let rest = self.len - pos;
        if acc.term.is_some() {
            return true;
        }
        match acc.lhs {
            Some(l) => below_pow10(&(l - acc.sum), rest),
            // The rest of the left side and the whole right side share `rest` cells.
            None => rest < 2 || below_pow10(&acc.sum, rest - 1),
        }
    }

    fn counts_ok_at_end(&self) -> bool {
        (0..SYMBOL_COUNT as usize).all(|s| self.counts[s] >= self.c.min_count[s])
    }

    fn dfs(&mut self, pos: usize, state: u8, acc: Acc) -> bool {
        if self.budget == 0 {
            self.aborted = true;
            return false;
        }
        self.budget -= 1;
        if pos == self.len {
            return acc.finish() && self.counts_ok_at_end();
        }
        let at_boundary = state % 3 == EXPECT;
        if at_boundary {
            if !self.boundary_ok(pos, &acc) {
                return false;
            }
            if self.failed.contains(&self.memo_key(pos, &acc)) {
                return false;
            }
        }
        let mask = self.c.allowed[pos];
        let order = if self.short_numerals && !at_boundary { &OPERATORS_FIRST } else { &SYMBOL_ORDER };
        for &x in order {
            if mask & (1 << x) == 0 {
                continue;
            }
            let Some(next) = step(state, x) else { continue };
            if !self.feasible[pos + 1][next as usize] {
                continue;
            }
            if self.track_counts && self.counts[x as usize] >= self.c.max_count[x as usize] {
                continue;
            }
            let mut a = acc;
            if a.push(x).is_none() {
                continue;
            }
            let visits = self.equals_visits.entry(pos).or_insert(0);
            *visits += u32::from(x == EQUALS);
            if x == EQUALS && !self.track_counts && *visits >= TABLE_AFTER {
                let c = self.c;
                let table = self.right_sides.entry(pos).or_insert_with(|| {
                    (count_completions(c, pos + 1, EXPECT + 3) <= TABLE_LIMIT).then(|| right_side_table(c, pos + 1))
                });
                if let Some(table) = table {
                    match a.lhs.and_then(|l| table.get(&l)) {
                        Some(rhs) => {
                            self.out.push(EQUALS);
                            self.out.extend_from_slice(rhs);
                            return true;
                        }
                        None => continue,
                    }
                }
            }
            self.out.push(x);
            self.counts[x as usize] += 1;
            if self.dfs(pos + 1, next, a) {
                return true;
            }
            self.counts[x as usize] -= 1;
            self.out.pop();
            if self.aborted {
                return false;
            }
        }
        if at_boundary && !self.aborted {
            if self.failed.len() >= MEMO_LIMIT {
                self.failed.clear();
            }
            let key = self.memo_key(pos, &acc);
            self.failed.insert(key);
        }
        false
    }
}

fn feasibility(c: &SearchConstraint) -> Vec<[bool; 6]> {
    let len = c.allowed.len();
    let mut f = vec![[false; 6]; len + 1];
    f[len] = [false, false, false, false, true, true];
    for pos in (0..len).rev() {
        for state in 0..6u8 {
            f[pos][state as usize] = (0..SYMBOL_COUNT).any(|x| {
                c.allowed[pos] & (1 << x) != 0 && step(state, x).is_some_and(|n| f[pos + 1][n as usize])
            });
        }
    }
    f
}

/// The least valid equation meeting the constraint, if any.
pub fn find_least(c: &SearchConstraint) -> Option<Vec<Symbol>> {
    let mut s = Search::new(c, false)?;
    s.dfs(0, EXPECT, Acc::new()).then_some(s.out)
}

/// Some valid equation meeting the constraint, if any. The search closes
/// numerals as early as possible, which keeps values small and finds
/// solutions of long equations quickly; the result is deterministic but not
/// necessarily least.
pub fn find_equation(c: &SearchConstraint) -> Option<Vec<Symbol>> {
    let mut s = Search::new(c, true)?;
    s.budget = DFS_BUDGET;
    if s.dfs(0, EXPECT, Acc::new()) {
        return Some(s.out);
    }
    if !s.aborted {
        return None;
    }
    if !s.track_counts {
        for (samples, product_weight, solves) in LAYOUT_TIERS {
            if let Some(eq) = solve_by_layout(c, samples, solves, product_weight) {
                return Some(eq);
            }
        }
    }
    let mut s = Search::new(c, true)?;
    s.dfs(0, EXPECT, Acc::new()).then_some(s.out)
}

impl<'a> Search<'a> {
    fn new(c: &'a SearchConstraint, short_numerals: bool) -> Option<Self> {
        let feasible = feasibility(c);
        feasible[0][EXPECT as usize].then(|| Search {
            c,
            len: c.allowed.len(),
            feasible,
            out: Vec::with_capacity(c.allowed.len()),
            counts: [0; SYMBOL_COUNT as usize],
            track_counts: c.has_counts(),
            failed: HashSet::new(),
            right_sides: HashMap::new(),
            equals_visits: HashMap::new(),
            short_numerals,
            budget: u64::MAX,
            aborted: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::eval::{is_valid, parse, render};
    use super::*;

    #[test]
    fn least_unconstrained() {
        let c = SearchConstraint::unconstrained(5);
        assert_eq!(render(&find_least(&c).unwrap()), "0+0=0");
        assert_eq!(find_least(&SearchConstraint::unconstrained(2)), None);
        assert_eq!(render(&find_least(&SearchConstraint::unconstrained(3)).unwrap()), "0=0");
    }

    #[test]
    fn avoiding_a_digit() {
        let mut c = SearchConstraint::unconstrained(8);
        for m in &mut c.allowed {
            *m &= !(1 << 7);
        }
        let eq = find_least(&c).unwrap();
        assert!(is_valid(&eq));
        assert!(!eq.contains(&7));
    }

    #[test]
    fn pinned_cells() {
        let target = parse("12*3=36").unwrap();
        let mut c = SearchConstraint::unconstrained(7);
        for (i, s) in target.iter().enumerate() {
            if i != 3 {
                c.allowed[i] = 1 << s;
            }
        }
        assert_eq!(find_least(&c).unwrap(), target);
    }

    #[test]
    fn count_bounds() {
        let mut c = SearchConstraint::unconstrained(5);
        c.min_count[1] = 1;
        let eq = find_least(&c).unwrap();
        assert_eq!(render(&eq), "0+1=1");
    }
}
