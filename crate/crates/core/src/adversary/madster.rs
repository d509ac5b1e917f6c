use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{Adversary, AdversaryError};
use crate::cardinal::{Fin, Omega};
use crate::feedback::{mastermind_feedback, Feedback, GameMode, MastermindFeedback, SimplifiedFeedback};
use crate::word::{check_injective, missing_colors, Base, ClosedWord, Pos, Symbol, Word};

pub const RED: Symbol = 0;
pub const BLUE: Symbol = 1;

/// A recurring promise: positions `≡ residue (mod period)` keep receiving `color`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Obligation {
    pub period: u64,
    pub residue: u64,
    pub color: Symbol,
}

/// Mastermind with duplicates: the codeword is red/blue and generic, so each
/// residue class of every guess's period sees both colors infinitely often.
/// Only a growing finite prefix is ever committed.
#[derive(Default)]
pub struct MadsterDup {
    prefix: Vec<Symbol>,
    queue: VecDeque<Obligation>,
    discharged: Vec<(Obligation, Pos)>,
    guesses: Vec<ClosedWord>,
}

const BATCH: usize = 2;

fn fill(p: Pos) -> Symbol {
    (p.count_ones() % 2) as Symbol
}

fn period(s: &ClosedWord) -> u64 {
    match s.base() {
        Base::Periodic { pattern } => pattern.len() as u64,
        _ => 1,
    }
}

impl MadsterDup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn queue(&self) -> impl Iterator<Item = &Obligation> {
        self.queue.iter()
    }

    /// Each discharged obligation with the position that met it.
    pub fn discharged(&self) -> &[(Obligation, Pos)] {
        &self.discharged
    }

    fn extend_to(&mut self, n: u64) {
        while (self.prefix.len() as u64) < n {
            let p = self.prefix.len() as Pos;
            self.prefix.push(fill(p));
        }
    }

    fn discharge(&mut self) {
        for _ in 0..BATCH.min(self.queue.len()) {
            let o = self.queue.pop_front().unwrap();
            let len = self.prefix.len() as u64;
            let p = len + (o.residue + o.period - len % o.period) % o.period;
            self.extend_to(p);
            self.prefix.push(o.color);
            self.discharged.push((o, p));
            self.queue.push_back(o);
        }
    }

    /// A codeword extending the committed prefix that is generic for `s`:
    /// beyond the prefix, blocks of red then blue of the guess's period.
    pub fn representative(&self, s: &ClosedWord) -> Word {
        let p = period(s) as usize;
        let pattern: Vec<Symbol> = (0..2 * p).map(|i| if i < p { RED } else { BLUE }).collect();
        let base = Base::periodic(pattern);
        let exceptions: BTreeMap<Pos, Symbol> = self.prefix.iter().enumerate().map(|(i, &c)| (i as Pos, c)).collect();
        Word::Closed(ClosedWord::normalized(base, exceptions).expect("nonempty pattern"))
    }

    /// Recomputes every recorded answer against the current prefix.
    pub fn verify(&self, answers: &[MastermindFeedback]) -> Result<(), String> {
        for (i, (s, a)) in self.guesses.iter().zip(answers).enumerate() {
            let now = mastermind_feedback(&self.representative(s), &Word::Closed(s.clone())).map_err(|e| e.to_string())?;
            if now != *a {
                return Err(format!("stage {i}: answered {a}, now {now}"));
            }
        }
        Ok(())
    }
}

impl Adversary for MadsterDup {
    fn name(&self) -> String {
        "madster-dup".into()
    }

    fn mode(&self) -> GameMode {
        GameMode::Mastermind
    }

    fn answer(&mut self, guess: &Word) -> Result<Feedback, AdversaryError> {
        let Word::Closed(s) = guess else { return Err(AdversaryError::NotClosed) };
        // Commit the finite part of the guess so the answer never depends on
        // cells chosen later.
        let cover = match s.base() {
            Base::Shift { .. } => s.exception_bound().max(2),
            _ => s.exception_bound(),
        };
        self.extend_to(cover);
        let answer = mastermind_feedback(&self.representative(s), guess)?;
        let p = period(s);
        for residue in 0..p {
            for color in [RED, BLUE] {
                self.queue.push_back(Obligation { period: p, residue, color });
            }
        }
        self.guesses.push(s.clone());
        self.discharge();
        Ok(Feedback::Mastermind(answer))
    }

    fn witness(&self, len: u64) -> Option<Word> {
        let mut w = self.prefix.clone();
        w.extend((w.len() as u64..len).map(fill));
        w.truncate(len as usize);
        Some(Word::finite(w))
    }
}

/// Palette assumption for the no-duplication madster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NoDupMode {
    /// Countably many colors: answer (ω, ω, ε) with ε = 0 iff every color is used.
    Countable,
    /// Simplified feedback: always (ω, ω).
    Simplified,
    /// Uncountably many colors: always (0, 0, ω).
    Uncountable,
}

/// Mastermind without duplicates against an injective generic codeword.
pub struct MadsterNoDup {
    mode: NoDupMode,
}

impl MadsterNoDup {
    pub fn new(mode: NoDupMode) -> Self {
        MadsterNoDup { mode }
    }
}

impl Adversary for MadsterNoDup {
    fn name(&self) -> String {
        match self.mode {
            NoDupMode::Countable => "madster-nodup".into(),
            NoDupMode::Simplified => "madster-nodup:simplified".into(),
            NoDupMode::Uncountable => "madster-nodup:uncountable".into(),
        }
    }

    fn mode(&self) -> GameMode {
        match self.mode {
            NoDupMode::Simplified => GameMode::Simplified,
            _ => GameMode::MastermindNoDup,
        }
    }

    fn answer(&mut self, guess: &Word) -> Result<Feedback, AdversaryError> {
        let Word::Closed(s) = guess else { return Err(AdversaryError::NotClosed) };
        if !check_injective(guess) {
            return Err(AdversaryError::NotInjective);
        }
        Ok(match self.mode {
            NoDupMode::Uncountable => Feedback::Mastermind(MastermindFeedback::new(Fin(0), Fin(0), Omega)),
            NoDupMode::Simplified => Feedback::Simplified(SimplifiedFeedback { correct: Omega, incorrect: Omega }),
            NoDupMode::Countable => {
                let all = missing_colors(s).is_some_and(|m| m.is_empty());
                Feedback::Mastermind(MastermindFeedback::new(Omega, Omega, if all { Fin(0) } else { Omega }))
            }
        })
    }

    fn witness(&self, _len: u64) -> Option<Word> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(f: Feedback) -> MastermindFeedback {
        *f.as_mastermind().unwrap()
    }

    #[test]
    fn dup_examples() {
        let mut m = MadsterDup::new();
        assert_eq!(mm(m.answer(&Word::constant(RED)).unwrap()), MastermindFeedback::new(Omega, Fin(0), Omega));
        let rb = Word::closed(Base::periodic(vec![RED, BLUE]), []).unwrap();
        assert_eq!(mm(m.answer(&rb).unwrap()), MastermindFeedback::new(Omega, Omega, Fin(0)));
        assert_eq!(mm(m.answer(&Word::constant(2)).unwrap()), MastermindFeedback::new(Fin(0), Fin(0), Omega));
    }

    #[test]
    fn dup_answers_survive_extension() {
        let mut m = MadsterDup::new();
        let guesses = [
            Word::closed(Base::constant(RED), [(0, BLUE), (4, BLUE), (9, 2)]).unwrap(),
            Word::closed(Base::periodic(vec![RED, 2, BLUE]), [(1, RED)]).unwrap(),
            Word::shift(0),
            Word::closed(Base::constant(BLUE), [(2, RED), (3, RED)]).unwrap(),
        ];
        let mut answers = Vec::new();
        for g in &guesses {
            let a = mm(m.answer(g).unwrap());
            assert!(!(a.kappa == Omega && a.rho.is_zero() && a.epsilon.is_zero()));
            answers.push(a);
        }
        for _ in 0..20 {
            m.answer(&Word::constant(3)).unwrap();
        }
        m.verify(&answers).unwrap();
        assert!(m.prefix().len() > 20);
    }

    #[test]
    fn nodup_examples() {
        let swap = Word::closed(Base::shift(0), [(0, 1), (1, 0)]).unwrap();
        let mut m = MadsterNoDup::new(NoDupMode::Countable);
        assert_eq!(mm(m.answer(&swap).unwrap()), MastermindFeedback::new(Omega, Omega, Fin(0)));
        assert_eq!(mm(m.answer(&Word::shift(3)).unwrap()), MastermindFeedback::new(Omega, Omega, Omega));
        let mut u = MadsterNoDup::new(NoDupMode::Uncountable);
        assert_eq!(mm(u.answer(&swap).unwrap()), MastermindFeedback::new(Fin(0), Fin(0), Omega));
        let mut s = MadsterNoDup::new(NoDupMode::Simplified);
        assert_eq!(s.answer(&swap).unwrap(), Feedback::Simplified(SimplifiedFeedback { correct: Omega, incorrect: Omega }));
        assert!(matches!(m.answer(&Word::constant(1)), Err(AdversaryError::NotInjective)));
    }
}
