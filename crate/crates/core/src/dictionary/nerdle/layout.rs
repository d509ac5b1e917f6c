//! Equations found by fixing the operator layout first.
//!
//! A layout marks every cell as a digit or a specific operator; layouts are
//! sampled with operators weighted by how cheap they are to solve. Numerals
//! that stand alone as terms enter the equation linearly, so their digits are
//! solved column by column with a carry; numerals inside products and
//! quotients are enumerated (smallest values first, up to a cap).

use std::collections::{BTreeMap, HashSet};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{DIVIDE, EQUALS, MINUS, PLUS, TIMES};
use super::search::SearchConstraint;
use crate::word::Symbol;

type Q = Ratio<i128>;

const DIGITS: u16 = 0x3ff;
// A digit cell in a layout.
const DIGIT: Symbol = Symbol::MAX;
const CELL_ORDER: [Symbol; 6] = [PLUS, MINUS, EQUALS, TIMES, DIVIDE, DIGIT];
// Values listed per enumerated numeral, combinations tried on first sight of a
// layout, and partial sums kept per column.
const SPREAD: usize = 1024;
const FIRST_WORK: u64 = 16;
const STATE_CAP: usize = 1 << 16;

#[derive(Clone, Copy)]
struct Numeral {
    start: usize,
    len: usize,
}

struct Term {
    negative: bool,
    // (operator before the factor, numeral index); the first operator is TIMES
    factors: Vec<(Symbol, usize)>,
}

/// Samples up to `samples` layouts (seeded, so the result is deterministic)
/// and returns the first that admits digits. Layouts whose enumerated
/// numerals were not exhausted get larger grids afterwards, round-robin,
/// until `budget` linear solves have been spent.
pub fn solve_by_layout(c: &SearchConstraint, samples: usize, budget: u64, product_weight: f64) -> Option<Vec<Symbol>> {
    let len = c.allowed.len();
    // Weighted layout counts; abstract states: 0 expect a numeral, 1 inside
    // one; +2 after '='.
    let mut weight = vec![[0f64; 4]; len + 1];
    weight[len][3] = 1.0;
    for pos in (0..len).rev() {
        for state in 0..4u8 {
            weight[pos][state as usize] = CELL_ORDER
                .iter()
                .filter(|&&x| allows(c, pos, x))
                .filter_map(|&x| step(state, x).map(|n| preference(x, product_weight) * weight[pos + 1][n as usize]))
                .sum();
        }
    }
    if weight[0][0] == 0.0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(len as u64);
    let mut layout = Vec::with_capacity(len);
    let mut tried = HashSet::new();
    let mut open = Vec::new();
    let mut budget = budget;
    for _ in 0..samples {
        layout.clear();
        let mut state = 0u8;
        for pos in 0..len {
            let mut r = rng.gen::<f64>() * weight[pos][state as usize];
            let mut pick = None;
            for &x in &CELL_ORDER {
                let Some(n) = step(state, x).filter(|_| allows(c, pos, x)) else { continue };
                let w = preference(x, product_weight) * weight[pos + 1][n as usize];
                if w > 0.0 {
                    pick = Some((x, n));
                    r -= w;
                    if r < 0.0 {
                        break;
                    }
                }
            }
            let (x, n) = pick?;
            layout.push(x);
            state = n;
        }
        if !tried.insert(layout.clone()) {
            continue;
        }
        let mut plan = Plan::new(c, &layout);
        if let Some(eq) = plan.advance(c, FIRST_WORK, &mut budget) {
            return Some(eq);
        }
        if !plan.exhausted() {
            open.push(plan);
        }
        if budget == 0 {
            return None;
        }
    }
    let mut work = FIRST_WORK;
    while !open.is_empty() && budget > 0 {
        work *= 2;
        for plan in &mut open {
            if let Some(eq) = plan.advance(c, work, &mut budget) {
                return Some(eq);
            }
        }
        open.retain(|p| !p.exhausted());
    }
    None
}

// Relative sampling weight; products and quotients are kept rare because
// their numerals are enumerated rather than solved.
fn preference(x: Symbol, product_weight: f64) -> f64 {
    match x {
        TIMES | DIVIDE => product_weight,
        PLUS | MINUS => 0.5,
        _ => 1.0,
    }
}

fn allows(c: &SearchConstraint, pos: usize, x: Symbol) -> bool {
    let mask = c.allowed[pos];
    if x == DIGIT {
        mask & DIGITS != 0
    } else {
        mask & (1 << x) != 0
    }
}

fn step(state: u8, x: Symbol) -> Option<u8> {
    let (inside, eq) = (state % 2 == 1, state / 2);
    match x {
        DIGIT => Some(1 + 2 * eq),
        EQUALS if inside && eq == 0 => Some(2),
        _ if inside && x != EQUALS => Some(2 * eq),
        _ => None,
    }
}

struct Plan {
    layout: Vec<Symbol>,
    numerals: Vec<Numeral>,
    terms: Vec<Term>,
    // Per term, the numeral solved by the carry automaton.
    solved: Vec<Option<usize>>,
    enumerated: Vec<usize>,
    candidates: Vec<Vec<i128>>,
    // Grid side already searched.
    size: usize,
}

impl Plan {
    fn new(c: &SearchConstraint, layout: &[Symbol]) -> Self {
        let mut numerals = Vec::new();
        let mut terms = vec![Term { negative: false, factors: Vec::new() }];
        let mut rhs = false;
        let mut pending_op = TIMES;
        let mut pos = 0;
        while pos < layout.len() {
            if layout[pos] == DIGIT {
                let start = pos;
                while pos < layout.len() && layout[pos] == DIGIT {
                    pos += 1;
                }
                numerals.push(Numeral { start, len: pos - start });
                terms.last_mut().unwrap().factors.push((pending_op, numerals.len() - 1));
                continue;
            }
            match layout[pos] {
                TIMES | DIVIDE => pending_op = layout[pos],
                op => {
                    rhs |= op == EQUALS;
                    // Right-side terms move to the left with their sign flipped.
                    terms.push(Term { negative: rhs != (op == MINUS), factors: Vec::new() });
                    pending_op = TIMES;
                }
            }
            pos += 1;
        }
        // A term's longest multiplied factor is solved; the rest are enumerated.
        let solved: Vec<Option<usize>> = terms
            .iter()
            .map(|t| {
                t.factors.iter().filter(|f| f.0 == TIMES).map(|f| f.1).min_by_key(|&n| std::cmp::Reverse(numerals[n].len))
            })
            .collect();
        let enumerated: Vec<usize> = terms
            .iter()
            .zip(&solved)
            .flat_map(|(t, s)| t.factors.iter().map(|f| f.1).filter(move |n| Some(*n) != *s))
            .collect();
        let candidates = enumerated.iter().map(|&n| spread_values(c, numerals[n])).collect();
        Plan { layout: layout.to_vec(), numerals, terms, solved, enumerated, candidates, size: 0 }
    }

    fn exhausted(&self) -> bool {
        self.candidates.iter().all(|v| v.len() <= self.size)
    }

    // Grows the grid to about `work` combinations.
    fn advance(&mut self, c: &SearchConstraint, work: u64, budget: &mut u64) -> Option<Vec<Symbol>> {
        let k = self.candidates.len().max(1) as f64;
        let side = ((work as f64).powf(1.0 / k).floor() as usize).max(self.size + 1);
        let found = self.grid(c, self.size, side, budget);
        self.size = side;
        found
    }

    // Tries every combination of the first `hi` candidates per enumerated
    // numeral that uses at least one index `>= lo`.
    fn grid(&self, c: &SearchConstraint, lo: usize, hi: usize, budget: &mut u64) -> Option<Vec<Symbol>> {
        let dims: Vec<usize> = self.candidates.iter().map(|v| v.len().min(hi)).collect();
        if dims.iter().any(|d| *d == 0) {
            return None;
        }
        let mut values = vec![0i128; self.numerals.len()];
        let mut combo = vec![0usize; dims.len()];
        loop {
            if lo == 0 || combo.iter().any(|i| *i >= lo) {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                for (i, &n) in self.enumerated.iter().enumerate() {
                    values[n] = self.candidates[i][combo[i]];
                }
                if let Some(eq) = self.finish(c, &values) {
                    return Some(eq);
                }
            }
            let mut i = 0;
            loop {
                if i == combo.len() {
                    return None;
                }
                combo[i] += 1;
                if combo[i] < dims[i] {
                    break;
                }
                combo[i] = 0;
                i += 1;
            }
        }
    }

    fn finish(&self, c: &SearchConstraint, values: &[i128]) -> Option<Vec<Symbol>> {
        let (items, k) = linear_system(&self.terms, &self.solved, values)?;
        let digits = solve_linear(c, &self.numerals, &items, k)?;
        let mut out = self.layout.clone();
        for &n in &self.enumerated {
            let Numeral { start, len } = self.numerals[n];
            out[start..start + len].copy_from_slice(&value_digits(values[n], len));
        }
        for (cell, d) in digits {
            out[cell] = d;
        }
        Some(out)
    }
}

fn value_digits(mut v: i128, len: usize) -> Vec<Symbol> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = (v % 10) as Symbol;
        v /= 10;
    }
    d
}

// Values for a numeral spread over magnitudes: the leading digit varies
// first, then the two leading digits, and so on, lower digits at their least.
fn spread_values(c: &SearchConstraint, n: Numeral) -> Vec<i128> {
    let masks: Vec<u16> = (0..n.len)
        .map(|j| {
            let m = c.allowed[n.start + j] & DIGITS;
            if j == 0 && n.len > 1 {
                m & !1
            } else {
                m
            }
        })
        .collect();
    if masks.iter().any(|m| *m == 0) {
        return Vec::new();
    }
    let least: Vec<i128> = masks.iter().map(|m| m.trailing_zeros() as i128).collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut prefixes = vec![0i128];
    for t in 0..n.len {
        prefixes = prefixes
            .iter()
            .flat_map(|p| (0..10).filter(|d| masks[t] & (1 << d) != 0).map(move |d| p * 10 + d))
            .take(SPREAD)
            .collect();
        for p in &prefixes {
            let v = least[t + 1..].iter().fold(*p, |v, d| v * 10 + d);
            if seen.insert(v) {
                out.push(v);
            }
        }
        if out.len() >= SPREAD {
            break;
        }
    }
    out.truncate(SPREAD);
    out
}

// The equation as Σ coef·numeral + k = 0 over the solved numerals, scaled to
// integers. `None` on division by zero or overflow.
fn linear_system(terms: &[Term], solved: &[Option<usize>], values: &[i128]) -> Option<(Vec<(i128, usize)>, i128)> {
    let mut k = Q::zero();
    let mut coefs = Vec::new();
    for (t, s) in terms.iter().zip(solved) {
        let mut v = if t.negative { -Q::one() } else { Q::one() };
        for &(op, n) in &t.factors {
            if Some(n) == *s {
                continue;
            }
            let f = Q::from_integer(values[n]);
            v = if op == DIVIDE {
                if f.is_zero() {
                    return None;
                }
                v.checked_div(&f)?
            } else {
                v.checked_mul(&f)?
            };
        }
        match s {
            Some(n) => coefs.push((v, *n)),
            None => k = k.checked_add(&v)?,
        }
    }
    let scale = coefs.iter().fold(*k.denom(), |l, (c, _)| num_integer::lcm(l, *c.denom()));
    let int = |q: &Q| q.numer().checked_mul(&(scale / q.denom()));
    let items = coefs.iter().map(|(c, n)| Some((int(c)?, *n))).collect::<Option<Vec<_>>>()?;
    Some((items, int(&k)?))
}

// Digits for the solved numerals so that Σ coef·value + k = 0, found by a
// carry automaton over decimal columns. Returns (cell, digit) pairs.
fn solve_linear(
    c: &SearchConstraint,
    numerals: &[Numeral],
    items: &[(i128, usize)],
    k: i128,
) -> Option<Vec<(usize, Symbol)>> {
    let columns = items.iter().map(|&(_, n)| numerals[n].len).max().unwrap_or(0);
    // Largest |carry| after column j from which 0 is still reachable.
    let reach = |j: usize| -> Option<i128> {
        items.iter().try_fold(1i128, |acc, &(coef, n)| {
            let len = numerals[n].len;
            let rest = if len > j + 1 { 10i128.checked_pow((len - j - 1) as u32)? } else { 0 };
            acc.checked_add(coef.checked_abs()?.checked_mul(rest)?)
        })
    };
    // Per column: for each numeral step, new partial sum -> (previous, digit);
    // then carry out -> column total.
    type Steps = Vec<(usize, BTreeMap<i128, (i128, Symbol)>)>;
    let mut history: Vec<(Steps, BTreeMap<i128, i128>)> = Vec::with_capacity(columns);
    let mut carries: BTreeMap<i128, i128> = BTreeMap::from([(k, k)]);
    for j in 0..columns {
        let mut states: Vec<i128> = carries.keys().copied().collect();
        let mut steps = Steps::new();
        for &(coef, n) in items {
            let Numeral { start, len } = numerals[n];
            if j >= len {
                continue;
            }
            let cell = start + len - 1 - j;
            let mut mask = c.allowed[cell] & DIGITS;
            if j == len - 1 && len > 1 {
                mask &= !1;
            }
            let mut next = BTreeMap::new();
            for &v in &states {
                for d in 0..10 {
                    if mask & (1 << d) != 0 {
                        next.entry(v.checked_add(coef.checked_mul(d as i128)?)?).or_insert((v, d));
                    }
                }
            }
            if next.len() > STATE_CAP {
                return None;
            }
            states = next.keys().copied().collect();
            steps.push((cell, next));
        }
        let bound = reach(j)?;
        carries = states
            .into_iter()
            .filter(|v| v.rem_euclid(10) == 0 && (v / 10).abs() <= bound)
            .map(|v| (v.div_euclid(10), v))
            .collect();
        if carries.is_empty() {
            return None;
        }
        history.push((steps, carries.clone()));
    }
    if !carries.contains_key(&0) {
        return None;
    }
    let mut out = Vec::new();
    let mut carry = 0;
    for (steps, totals) in history.iter().rev() {
        let mut v = totals[&carry];
        for (cell, back) in steps.iter().rev() {
            let (prev, d) = back[&v];
            out.push((*cell, d));
            v = prev;
        }
        carry = v;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::super::eval::{is_valid, render};
    use super::*;

    #[test]
    fn unconstrained_layouts() {
        for len in [5, 8, 12, 20] {
            let eq = solve_by_layout(&SearchConstraint::unconstrained(len), 1000, 10_000, 0.05).unwrap();
            assert!(is_valid(&eq), "{}", render(&eq));
        }
    }

    #[test]
    fn carries_across_columns() {
        // 9+9+9=DD forces 27 on the right.
        let mut c = SearchConstraint::unconstrained(8);
        for (i, m) in [1u16 << 9, 1 << PLUS, 1 << 9, 1 << PLUS, 1 << 9, 1 << EQUALS, DIGITS, DIGITS].iter().enumerate() {
            c.allowed[i] = *m;
        }
        assert_eq!(render(&solve_by_layout(&c, 1000, 10_000, 0.05).unwrap()), "9+9+9=27");
    }

    #[test]
    fn forced_product() {
        let mut c = SearchConstraint::unconstrained(9);
        c.allowed[2] = 1 << TIMES;
        c.allowed[5] = 1 << EQUALS;
        c.allowed[6] &= !1;
        let eq = solve_by_layout(&c, 1000, 10_000, 0.05).unwrap();
        assert!(is_valid(&eq), "{}", render(&eq));
        assert_eq!(eq[2], TIMES);
    }
}
