use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{Move, Replay, Strategy, Turn};
use crate::cardinal::{Fin, Omega, OrdinalStage};
use crate::dictionary::{CellConstraint, Dictionary};
use crate::feedback::{Feedback, MastermindFeedback};
use crate::word::{Base, Pos, Symbol, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbeError {
    #[error("no answer recorded for probe {0:?}")]
    Missing(Word),
    #[error("answers are inconsistent: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("waiting for the answer to a probe")]
    Pending,
}

const PROBE_WORD_LIMIT: u64 = 200_000;

/// One witness per (position, letter) pair realized in the window: the first
/// dictionary word carrying that letter there. Repeated witnesses are listed once.
pub fn green_probe_set(d: &Dictionary, window: u64) -> Result<Vec<Word>, ProbeError> {
    let window = d.length().map_or(window, |l| l.min(window));
    let mut probes: Vec<Word> = Vec::new();
    let push = |w: Word, probes: &mut Vec<Word>| {
        if !probes.contains(&w) {
            probes.push(w);
        }
    };
    if let Dictionary::Complete { alphabet, length } = d {
        for p in 0..window {
            for s in 0..alphabet.size().unwrap() as Symbol {
                let mut c = CellConstraint::new(*length as usize);
                c.require(p, s);
                push(d.find_consistent(&c).unwrap(), &mut probes);
            }
        }
        return Ok(probes);
    }
    let words = d.words(PROBE_WORD_LIMIT).map_err(|e| ProbeError::Unsupported(e.to_string()))?;
    for p in 0..window {
        let mut first: BTreeMap<Symbol, usize> = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            let s = w.eval_at(p).map_err(|e| ProbeError::Unsupported(e.to_string()))?;
            first.entry(s).or_insert(i);
        }
        for i in first.into_values() {
            push(words[i].clone(), &mut probes);
        }
    }
    Ok(probes)
}

/// Plays the green probe set, then claims at stage ω the dictionary word that
/// matches every green seen inside the window.
pub struct GreenProbe {
    dict: Dictionary,
    window: u64,
    probes: Vec<Word>,
}

impl GreenProbe {
    pub fn new(dict: Dictionary, window: u64) -> Result<Self, ProbeError> {
        let probes = green_probe_set(&dict, window)?;
        let window = dict.length().map_or(window, |l| l.min(window));
        Ok(GreenProbe { dict, window, probes })
    }

    pub fn probes(&self) -> &[Word] {
        &self.probes
    }

    fn assemble(&self, history: &[Turn]) -> Option<Word> {
        let mut known: BTreeMap<Pos, Symbol> = BTreeMap::new();
        for t in history {
            let Feedback::Tricolor(f) = &t.feedback else { return None };
            for p in 0..self.window {
                if f.is_green(p) {
                    known.insert(p, t.guess.eval_at(p).ok()?);
                }
            }
        }
        let mut c = CellConstraint::new(self.dict.length().unwrap_or(self.window) as usize);
        for (p, s) in known {
            c.require(p, s);
        }
        self.dict.find_consistent(&c)
    }
}

impl Strategy for GreenProbe {
    fn name(&self) -> String {
        format!("probe:{}", self.window)
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        if let Some(word) = self.probes.get(history.len()) {
            return Move::Guess { stage: OrdinalStage::finite(history.len() as u64 + 1), word: word.clone() };
        }
        if history.len() > self.probes.len() {
            return Move::Exhausted;
        }
        match self.assemble(history) {
            Some(word) => Move::Claim { stage: OrdinalStage::OMEGA, word },
            None => Move::Exhausted,
        }
    }
}

/// `base` everywhere except `off` at position `p`.
pub fn nearly_constant(base: Symbol, off: Symbol, p: Pos) -> Word {
    Word::closed(Base::constant(base), [(p, off)]).expect("off-color differs from the base")
}

// The deduction, written against an oracle that may decline to answer.
fn deduce(
    ask: &mut dyn FnMut(&Word) -> Option<MastermindFeedback>,
    window: u64,
    colors: &[Symbol],
) -> Result<Word, ProbeError> {
    let mut counts = Vec::new();
    for &c in colors {
        let f = ask(&Word::constant(c)).ok_or(ProbeError::Pending)?;
        if f.kappa == Omega && f.rho.is_zero() && f.epsilon.is_zero() {
            return Ok(Word::constant(c));
        }
        // κ of a constant probe is exactly the number of pegs of that color.
        counts.push((c, f.kappa));
    }
    let bases: Vec<Symbol> = counts.iter().filter(|(_, k)| *k == Omega).map(|(c, _)| *c).collect();
    let [base] = bases[..] else {
        return Err(ProbeError::Unsupported(format!("{} colors occur infinitely often", bases.len())));
    };
    let exceptions: u64 = counts.iter().filter_map(|(c, k)| (*c != base).then(|| k.finite().unwrap())).sum();
    let mut found: BTreeMap<Pos, Symbol> = BTreeMap::new();
    let mut remaining: HashMap<Symbol, u64> =
        counts.iter().filter(|(c, _)| *c != base).map(|(c, k)| (*c, k.finite().unwrap())).collect();
    for p in 0..window {
        if found.len() as u64 == exceptions {
            break;
        }
        for &c in colors {
            if c == base || remaining[&c] == 0 {
                continue;
            }
            let f = ask(&nearly_constant(base, c, p)).ok_or(ProbeError::Pending)?;
            // The probe removes one incorrect peg exactly when the off-color is
            // right; otherwise position p stays (or becomes) incorrect.
            let incorrect = f.rho + f.epsilon;
            if incorrect == Fin(exceptions - 1) {
                found.insert(p, c);
                *remaining.get_mut(&c).unwrap() -= 1;
                break;
            }
        }
    }
    if found.len() as u64 != exceptions {
        return Err(ProbeError::Inconsistent(format!(
            "located {} of {} off-base pegs inside the window",
            found.len(),
            exceptions
        )));
    }
    Word::closed(Base::constant(base), found).map_err(|e| ProbeError::Inconsistent(e.to_string()))
}

/// Reconstructs a constant-base codeword from the answers to constant and
/// nearly-constant probes over `colors` inside the window.
pub fn mastermind_probe_deduce(
    answers: &[(Word, MastermindFeedback)],
    window: u64,
    colors: &[Symbol],
) -> Result<Word, ProbeError> {
    let mut missing = None;
    let mut ask = |w: &Word| {
        let a = answers.iter().find(|(q, _)| q == w).map(|(_, f)| *f);
        if a.is_none() && missing.is_none() {
            missing = Some(w.clone());
        }
        a
    };
    deduce(&mut ask, window, colors).map_err(|e| match (e, missing.clone()) {
        (ProbeError::Pending, Some(w)) => ProbeError::Missing(w),
        (e, _) => e,
    })
}

/// Plays constant probes, then nearly-constant probes on the base color, and
/// claims the deduced codeword at stage ω.
pub struct MastermindProbe {
    colors: Vec<Symbol>,
    window: u64,
}

impl MastermindProbe {
    pub fn new(colors: Vec<Symbol>, window: u64) -> Self {
        MastermindProbe { colors, window }
    }
}

impl Strategy for MastermindProbe {
    fn name(&self) -> String {
        format!("mastermind-probe:{}", self.window)
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        let mut replay = Replay::new(history);
        let result = {
            let mut ask = |w: &Word| replay.ask(w).and_then(|f| f.as_mastermind().copied());
            deduce(&mut ask, self.window, &self.colors)
        };
        replay.conclude(result.ok(), OrdinalStage::OMEGA)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feedback::mastermind_feedback;

    const RED: Symbol = 0;
    const BLUE: Symbol = 1;

    fn answers(code: &Word, window: u64, colors: &[Symbol]) -> Vec<(Word, MastermindFeedback)> {
        let mut probes: Vec<Word> = colors.iter().map(|&c| Word::constant(c)).collect();
        for &b in colors {
            for &c in colors.iter().filter(|&&c| c != b) {
                probes.extend((0..window).map(|p| nearly_constant(b, c, p)));
            }
        }
        probes.into_iter().map(|q| (q.clone(), mastermind_feedback(code, &q).unwrap())).collect()
    }

    #[test]
    fn one_blue_peg() {
        let code = nearly_constant(RED, BLUE, 3);
        let a = answers(&code, 8, &[RED, BLUE]);
        assert_eq!(a[0].1, MastermindFeedback::new(Omega, Fin(0), Fin(1)));
        assert_eq!(a[1].1, MastermindFeedback::new(Fin(1), Fin(0), Omega));
        assert_eq!(mastermind_feedback(&code, &nearly_constant(RED, BLUE, 3)).unwrap().rho, Fin(0));
        assert_eq!(mastermind_feedback(&code, &nearly_constant(RED, BLUE, 2)).unwrap().rho, Fin(2));
        assert_eq!(mastermind_probe_deduce(&a, 8, &[RED, BLUE]).unwrap(), code);
    }

    #[test]
    fn constant_code() {
        let a = answers(&Word::constant(RED), 4, &[RED, BLUE]);
        assert_eq!(mastermind_probe_deduce(&a, 4, &[RED, BLUE]).unwrap(), Word::constant(RED));
    }

    #[test]
    fn three_colors() {
        let code = Word::closed(Base::constant(2), [(0, 0), (1, 1), (5, 0)]).unwrap();
        let a = answers(&code, 6, &[0, 1, 2]);
        assert_eq!(mastermind_probe_deduce(&a, 6, &[0, 1, 2]).unwrap(), code);
    }

    #[test]
    fn missing_probe() {
        let code = nearly_constant(RED, BLUE, 3);
        let a = answers(&code, 2, &[RED, BLUE]);
        assert!(matches!(mastermind_probe_deduce(&a, 8, &[RED, BLUE]), Err(ProbeError::Missing(_))));
    }

    #[test]
    fn lying_answers() {
        let code = nearly_constant(RED, BLUE, 3);
        let mut a = answers(&code, 8, &[RED, BLUE]);
        a[1].1 = MastermindFeedback::new(Fin(2), Fin(0), Omega);
        assert!(matches!(mastermind_probe_deduce(&a, 8, &[RED, BLUE]), Err(ProbeError::Inconsistent(_))));
    }

    #[test]
    fn probe_set_of_three_words() {
        let d = Dictionary::from_strings("ABCDEFGHIJKLMNOPQRSTUVWXYZ", &["ERROR", "ORDER", "PROVE"]).unwrap();
        assert_eq!(green_probe_set(&d, 5).unwrap().len(), 3);
        let d = Dictionary::from_strings("AB", &["AB"]).unwrap();
        assert_eq!(green_probe_set(&d, 5).unwrap().len(), 1);
    }
}
