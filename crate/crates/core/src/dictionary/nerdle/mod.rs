//! Valid equations of a fixed length over `0-9 + - * / =`.

mod eval;
mod layout;
mod search;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_rational::Ratio;
use rand::Rng;

pub use eval::{
    evaluate, is_digit, is_operator, is_valid, parse, render, validate, Equation, EvalError, ExactInt, Rejection,
    DIVIDE, EQUALS, LABELS, MINUS, PLUS, SYMBOL_COUNT, TIMES,
};
pub use search::{find_equation, find_least, SearchConstraint};

use crate::word::Symbol;

/// Longest length whose full equation list is materialized on demand.
pub const ENUMERATE_MAX_LEN: usize = 8;

#[derive(Clone, Debug)]
pub struct NerdleDict {
    length: usize,
    list: Arc<OnceLock<Vec<Vec<Symbol>>>>,
}

impl PartialEq for NerdleDict {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length
    }
}

impl NerdleDict {
    pub fn new(length: usize) -> Self {
        NerdleDict { length, list: Arc::new(OnceLock::new()) }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Every valid equation in increasing symbol order, or `None` when the
    /// length is beyond [`ENUMERATE_MAX_LEN`].
    pub fn all(&self) -> Option<&[Vec<Symbol>]> {
        if self.length > ENUMERATE_MAX_LEN {
            return None;
        }
        Some(self.list.get_or_init(|| all_equations(self.length)))
    }
}

// Valid sides of one length, by value.
fn sides_by_value(len: usize) -> HashMap<Ratio<i128>, Vec<Vec<Symbol>>> {
    let mut out: HashMap<Ratio<i128>, Vec<Vec<Symbol>>> = HashMap::new();
    let mut buf = Vec::with_capacity(len);
    fn walk(len: usize, buf: &mut Vec<Symbol>, out: &mut HashMap<Ratio<i128>, Vec<Vec<Symbol>>>) {
        if buf.len() == len {
            if let Ok(v) = evaluate::<i128>(buf) {
                out.entry(v).or_default().push(buf.clone());
            }
            return;
        }
        let last = buf.last().copied();
        let numeral_is_zero = last == Some(0)
            && (buf.len() == 1 || buf.get(buf.len().wrapping_sub(2)).is_some_and(|s| is_operator(*s)));
        for x in 0..EQUALS {
            let ok = if is_digit(x) {
                !numeral_is_zero
            } else {
                last.is_some_and(is_digit) && buf.len() + 1 < len
            };
            if ok {
                buf.push(x);
                walk(len, buf, out);
                buf.pop();
            }
        }
    }
    walk(len, &mut buf, &mut out);
    out
}

/// All valid equations of length `len`, sorted, by joining sides of equal value.
pub fn all_equations(len: usize) -> Vec<Vec<Symbol>> {
    if len < 3 {
        return Vec::new();
    }
    let sides: Vec<_> = (0..len - 1).map(|a| if a == 0 { HashMap::new() } else { sides_by_value(a) }).collect();
    let mut out = Vec::new();
    for a in 1..len - 1 {
        let b = len - 1 - a;
        for (v, lefts) in &sides[a] {
            let Some(rights) = sides[b].get(v) else { continue };
            for l in lefts {
                for r in rights {
                    let mut eq = l.clone();
                    eq.push(EQUALS);
                    eq.extend_from_slice(r);
                    out.push(eq);
                }
            }
        }
    }
    out.sort();
    out
}

fn random_side<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Symbol> {
    loop {
        let mut side = Vec::with_capacity(len);
        while side.len() < len {
            let left = len - side.len();
            let n = rng.gen_range(1..=left.min(4));
            side.push(if n == 1 { rng.gen_range(0..10) } else { rng.gen_range(1..10) });
            side.extend((1..n).map(|_| rng.gen_range(0..10)));
            if side.len() + 1 < len {
                side.push(rng.gen_range(PLUS..=DIVIDE));
            } else if side.len() < len {
                side.clear();
            }
        }
        if side.len() == len {
            return side;
        }
    }
}

/// A random valid equation of length `len ≥ 3`: a random expression set equal
/// to the numeral of its value, on either side. Panics for lengths with no
/// equation at all: below 3, and 4.
pub fn random_equation<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Symbol> {
    assert!(len >= 3 && len != 4, "no equation has length {len}");
    loop {
        let a = rng.gen_range(1..=len - 2);
        let side = random_side(a, rng);
        let Ok(v) = evaluate::<i128>(&side) else { continue };
        if !v.is_integer() || *v.numer() < 0 {
            continue;
        }
        let numeral: Vec<Symbol> = v.numer().to_string().bytes().map(|b| (b - b'0') as Symbol).collect();
        if a + 1 + numeral.len() != len {
            continue;
        }
        let (l, r) = if rng.gen_bool(0.5) { (side, numeral) } else { (numeral, side) };
        let mut eq = l;
        eq.push(EQUALS);
        eq.extend(r);
        debug_assert!(is_valid(&eq));
        return eq;
    }
}
