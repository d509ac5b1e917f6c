use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::AdversaryError;
use crate::word::{LazyWord, Pos, Symbol, Word};

/// Witnessing positions for one (word, guess) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertEntry {
    /// 0 for the first word of the pair, 1 for the second.
    pub word: usize,
    pub guess: usize,
    pub agree: Vec<Pos>,
    pub disagree: Vec<Pos>,
}

pub struct GenericPair {
    pub c: LazyWord,
    pub d: LazyWord,
    pub certificate: Vec<CertEntry>,
}

struct Builder<'a> {
    guesses: &'a [Word],
    out: Vec<Symbol>,
    used: BTreeSet<Symbol>,
    agree: Vec<Vec<Pos>>,
    disagree: Vec<Vec<Pos>>,
    turn: usize,
}

impl Builder<'_> {
    fn record(&mut self, p: Pos, v: Symbol, column: &[Symbol]) {
        self.out.push(v);
        self.used.insert(v);
        for (j, g) in column.iter().enumerate() {
            if *g == v {
                self.agree[j].push(p);
            } else {
                self.disagree[j].push(p);
            }
        }
    }

    // Agreement is served round-robin; a position that serves nobody's
    // agreement takes a fresh color and disagrees with every guess.
    fn step(&mut self, p: Pos, columns: &[Vec<Symbol>], bound: usize, avoid: Option<Symbol>) {
        let column = &columns[p as usize];
        let n = self.guesses.len();
        let want_disagree = self.disagree.iter().any(|d| d.len() < bound);
        if n > 0 && (!want_disagree || p % 2 == 0) {
            for k in 0..n {
                let i = (self.turn + k) % n;
                if self.agree[i].len() < bound && !self.used.contains(&column[i]) {
                    self.turn = i + 1;
                    self.record(p, column[i], column);
                    return;
                }
            }
        }
        // Keep colors that later cells still need for pending agreement.
        let pending: Vec<usize> = (0..n).filter(|&i| self.agree[i].len() < bound).collect();
        let reserved: BTreeSet<Symbol> =
            columns[p as usize + 1..].iter().flat_map(|col| pending.iter().map(|&i| col[i])).collect();
        let ok = |v: &Symbol| !self.used.contains(v) && !column.contains(v) && Some(*v) != avoid;
        let v = (0..).find(|v| ok(v) && !reserved.contains(v)).unwrap();
        self.record(p, v, column);
    }

    fn finish(self, bound: usize, cover: Option<u64>, which: usize) -> Result<(LazyWord, Vec<CertEntry>), AdversaryError> {
        for (i, (a, d)) in self.agree.iter().zip(&self.disagree).enumerate() {
            if a.len() < bound || d.len() < bound {
                return Err(AdversaryError::Infeasible(format!(
                    "word {which} vs guess {i}: {} agreements, {} disagreements within the prefix",
                    a.len(),
                    d.len()
                )));
            }
        }
        if let Some(m) = cover {
            if let Some(v) = (0..m).find(|v| !self.used.contains(v)) {
                return Err(AdversaryError::Infeasible(format!("word {which} misses color {v}")));
            }
        }
        let cert = (0..self.guesses.len())
            .map(|i| CertEntry {
                word: which,
                guess: i,
                agree: self.agree[i][..bound].to_vec(),
                disagree: self.disagree[i][..bound].to_vec(),
            })
            .collect();
        let n = self.out.len() as u64;
        let next = self.used.iter().next_back().map_or(0, |m| m + 1);
        let summary = vec![format!("injective prefix of length {n}"), format!("fresh colors from {next} beyond it")];
        let word = LazyWord::with_generator(self.out, Arc::new(move |p| next + (p - n))).with_certificate(summary);
        Ok((word, cert))
    }
}

/// Two distinct injective words, each agreeing with every guess on at least
/// `bound` positions and disagreeing on at least `bound`, all inside the first
/// `prefix_len` cells. With `cover`, both prefixes also use every color below it.
pub fn build_generic_pair(
    guesses: &[Word],
    bound: usize,
    prefix_len: u64,
    cover: Option<u64>,
) -> Result<GenericPair, AdversaryError> {
    let new = || Builder {
        guesses,
        out: Vec::new(),
        used: BTreeSet::new(),
        agree: vec![Vec::new(); guesses.len()],
        disagree: vec![Vec::new(); guesses.len()],
        turn: 0,
    };
    let (mut c, mut d) = (new(), new());
    let columns = (0..prefix_len)
        .map(|p| guesses.iter().map(|g| g.eval_at(p)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    for p in 0..prefix_len {
        c.step(p, &columns, bound, None);
        let avoid = c.out.last().copied();
        d.step(p, &columns, bound, avoid);
    }
    if prefix_len == 0 || c.out == d.out {
        return Err(AdversaryError::Infeasible("the two prefixes coincide".into()));
    }
    let (c, mut certificate) = c.finish(bound, cover, 0)?;
    let (d, cert_d) = d.finish(bound, cover, 1)?;
    certificate.extend(cert_d);
    Ok(GenericPair { c, d, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::check_injective;

    #[test]
    fn identity_guess() {
        let g = [Word::shift(0)];
        let pair = build_generic_pair(&g, 3, 24, None).unwrap();
        assert_ne!(pair.c.prefix(), pair.d.prefix());
        for e in &pair.certificate {
            let w = if e.word == 0 { &pair.c } else { &pair.d };
            assert!(e.agree.len() >= 3 && e.disagree.len() >= 3);
            assert!(e.agree.iter().all(|&p| w.at(p).unwrap() == p));
            assert!(e.disagree.iter().all(|&p| w.at(p).unwrap() != p));
        }
        let mut c = pair.c.clone();
        c.extend_to(100).unwrap();
        assert!(check_injective(&Word::Lazy(c)));
    }

    #[test]
    fn no_guesses_and_zero_bound() {
        let pair = build_generic_pair(&[], 0, 4, None).unwrap();
        assert!(pair.certificate.is_empty());
        assert_ne!(pair.c.prefix(), pair.d.prefix());
        let pair = build_generic_pair(&[Word::shift(0)], 0, 4, None).unwrap();
        assert_ne!(pair.c.prefix(), pair.d.prefix());
    }

    #[test]
    fn too_short() {
        assert!(matches!(build_generic_pair(&[Word::shift(0)], 5, 6, None), Err(AdversaryError::Infeasible(_))));
    }

    #[test]
    fn covers_small_colors() {
        let g = [Word::shift(0), Word::shift(1)];
        let pair = build_generic_pair(&g, 2, 30, Some(6)).unwrap();
        for w in [&pair.c, &pair.d] {
            assert!((0..6).all(|v| w.prefix().contains(&v)));
        }
    }
}
