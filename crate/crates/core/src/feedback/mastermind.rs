use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cardinal::{Cardinal, Fin, Omega};
use crate::census::{agreement_census, census_over, CensusTail, ColorCensus};
use crate::error::WordError;
use crate::word::{check_injective, missing_colors, FiniteWord, Symbol, Word};

/// Correct pegs `κ`, pegs fixable by rearranging the incorrect ones `ρ`, and
/// pegs still incorrect after the best rearrangement `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MastermindFeedback {
    pub kappa: Cardinal,
    pub rho: Cardinal,
    pub epsilon: Cardinal,
}

impl MastermindFeedback {
    pub fn new(kappa: Cardinal, rho: Cardinal, epsilon: Cardinal) -> Self {
        MastermindFeedback { kappa, rho, epsilon }
    }

    pub fn total(&self) -> Cardinal {
        self.kappa + self.rho + self.epsilon
    }
}

impl std::fmt::Display for MastermindFeedback {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.kappa, self.rho, self.epsilon)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplifiedFeedback {
    pub correct: Cardinal,
    pub incorrect: Cardinal,
}

pub fn simplified_feedback(code: &Word, guess: &Word) -> Result<SimplifiedFeedback, WordError> {
    let a = agreement_census(code, guess)?;
    Ok(SimplifiedFeedback { correct: a.agree(), incorrect: a.disagree() })
}

fn finite_feedback(code: &FiniteWord, guess: &FiniteWord) -> Result<MastermindFeedback, WordError> {
    if code.len() != guess.len() {
        return Err(WordError::ShapeMismatch(format!("lengths {} and {}", code.len(), guess.len())));
    }
    let mut kappa = 0;
    let mut balance: HashMap<Symbol, (u64, u64)> = HashMap::new();
    for (c, g) in code.iter().zip(guess.iter()) {
        if c == g {
            kappa += 1;
        } else {
            balance.entry(g).or_default().0 += 1;
            balance.entry(c).or_default().1 += 1;
        }
    }
    let rho: u64 = balance.values().map(|(g, w)| g.min(w)).sum();
    let off = code.len() - kappa;
    Ok(MastermindFeedback::new(Fin(kappa), Fin(rho), Fin(off - rho)))
}

// Σ min(g_c, w_c), Σ (g_c ∸ w_c), Σ (w_c ∸ g_c), and whether some color is
// infinite on both sides.
fn census_sums(g: &ColorCensus, w: &ColorCensus) -> (Cardinal, Cardinal, Cardinal, bool) {
    let keys: BTreeSet<Symbol> = g.explicit.keys().chain(w.explicit.keys()).copied().collect();
    let (mut rho, mut a, mut b, mut shared_omega) = (Fin(0), Fin(0), Fin(0), false);
    for c in &keys {
        let (gc, wc) = (g.count(*c), w.count(*c));
        rho = rho + gc.min(wc);
        a = a + gc.monus(wc);
        b = b + wc.monus(gc);
        shared_omega |= gc == Omega && wc == Omega;
    }
    // Colors outside `keys` follow the two tail rules.
    let unlisted = |lo: Symbol, hi: Symbol| Fin(hi - lo - keys.range(lo..hi).count() as u64);
    match (g.tail, w.tail) {
        (CensusTail::AbsentAll, CensusTail::AbsentAll) => {}
        (CensusTail::EachOnceFrom { .. }, CensusTail::AbsentAll) => a = Omega,
        (CensusTail::AbsentAll, CensusTail::EachOnceFrom { .. }) => b = Omega,
        (CensusTail::EachOnceFrom { k: k1 }, CensusTail::EachOnceFrom { k: k2 }) => {
            rho = Omega;
            if k1 < k2 {
                a = a + unlisted(k1, k2);
            } else {
                b = b + unlisted(k2, k1);
            }
        }
    }
    (rho, a, b, shared_omega)
}

/// Mastermind feedback, with duplicate colors allowed.
///
/// Over the incorrect positions, `ρ` is the number of guess pegs that some
/// rearrangement can make correct and `ε` the number left over. When the
/// incorrect positions are infinite, surplus guess colors (`a`) and unmet code
/// colors (`b`) decide `ε`: they pair off when `a = b`; a color that is
/// infinite on both sides absorbs any finite imbalance, giving `max(a, b)`;
/// otherwise some chain of displaced pegs never closes and `ε = ω`.
pub fn mastermind_feedback(code: &Word, guess: &Word) -> Result<MastermindFeedback, WordError> {
    if let (Word::Finite(c), Word::Finite(g)) = (code, guess) {
        return finite_feedback(c, g);
    }
    let census = agreement_census(code, guess)?;
    let off = census.disagreement();
    let g = census_over(guess, &off)?;
    let w = census_over(code, &off)?;
    let (rho, a, b, shared_omega) = census_sums(&g, &w);
    let epsilon = if off.is_finite() || a == b {
        a
    } else if !a.is_finite() || !b.is_finite() || !shared_omega {
        Omega
    } else {
        a.max(b)
    };
    Ok(MastermindFeedback::new(census.agree(), rho, epsilon))
}

/// `ε` for two injective words: `n` when exactly `n` colors of each word are
/// missing from the other, `ω` otherwise.
pub fn epsilon_no_dup(code: &Word, guess: &Word) -> Result<Cardinal, WordError> {
    if !check_injective(code) || !check_injective(guess) {
        return Err(WordError::NotInjective);
    }
    let (only_code, only_guess) = match (code, guess) {
        (Word::Finite(_), Word::Finite(_)) => {
            let c = code.finite_symbol_set().unwrap();
            let g = guess.finite_symbol_set().unwrap();
            (c.difference(&g).count(), g.difference(&c).count())
        }
        (Word::Closed(c), Word::Closed(g)) => {
            // Both are shift-based, so each misses a finite set of colors.
            let mc = missing_colors(c).ok_or(WordError::NotInjective)?;
            let mg = missing_colors(g).ok_or(WordError::NotInjective)?;
            (mg.difference(&mc).count(), mc.difference(&mg).count())
        }
        (Word::Lazy(_), _) | (_, Word::Lazy(_)) => return Err(WordError::LazyUnsupported),
        _ => return Err(WordError::ShapeMismatch("finite and infinite word".into())),
    };
    Ok(if only_code == only_guess { Fin(only_code as u64) } else { Omega })
}

/// Mastermind feedback for the no-duplication variant.
pub fn mastermind_feedback_no_dup(code: &Word, guess: &Word) -> Result<MastermindFeedback, WordError> {
    let epsilon = epsilon_no_dup(code, guess)?;
    let f = mastermind_feedback(code, guess)?;
    Ok(MastermindFeedback { epsilon, ..f })
}

pub const BRUTE_FORCE_MAX_LEN: u64 = 9;

/// Exhaustive `(ρ, ε)`: tries every permutation of the guess pegs on the
/// incorrect positions and keeps the one correcting the most pegs.
pub fn brute_force_rearrangement(code: &FiniteWord, guess: &FiniteWord) -> Result<(u64, u64), WordError> {
    if code.len() != guess.len() {
        return Err(WordError::ShapeMismatch(format!("lengths {} and {}", code.len(), guess.len())));
    }
    if code.len() > BRUTE_FORCE_MAX_LEN {
        return Err(WordError::TooLong { len: code.len(), max: BRUTE_FORCE_MAX_LEN });
    }
    let (want, mut pegs): (Vec<Symbol>, Vec<Symbol>) =
        code.iter().zip(guess.iter()).filter(|(c, g)| c != g).unzip();
    let m = pegs.len();
    let mut hits = (0..m).filter(|i| pegs[*i] == want[*i]).count();
    let mut best = hits;
    // Heap's algorithm; each step swaps two slots, so `hits` updates locally.
    let mut counters = vec![0usize; m];
    let mut i = 1;
    while i < m {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            let before = (pegs[i] == want[i]) as usize + (pegs[j] == want[j]) as usize;
            pegs.swap(i, j);
            let after = (pegs[i] == want[i]) as usize + (pegs[j] == want[j]) as usize;
            hits = hits + after - before;
            best = best.max(hits);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    // Correcting the most pegs and leaving the fewest incorrect are the same
    // permutation, since every peg is one or the other.
    Ok((best as u64, (m - best) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Base;

    const SKY: Symbol = 0;
    const ORANGE: Symbol = 1;
    const YELLOW: Symbol = 2;
    const ORCHID: Symbol = 3;
    const RED: Symbol = 4;

    fn fb(k: Cardinal, r: Cardinal, e: Cardinal) -> MastermindFeedback {
        MastermindFeedback::new(k, r, e)
    }

    #[test]
    fn figure_rows() {
        let code = Word::dense(vec![SKY, ORANGE, YELLOW, ORCHID]);
        let g1 = Word::dense(vec![ORANGE, SKY, ORCHID, YELLOW]);
        let g2 = Word::dense(vec![ORANGE, ORCHID, YELLOW, RED]);
        assert_eq!(mastermind_feedback(&code, &g1).unwrap(), fb(Fin(0), Fin(4), Fin(0)));
        assert_eq!(mastermind_feedback(&code, &g2).unwrap(), fb(Fin(1), Fin(2), Fin(1)));
        let (c, g) = (code.as_finite().unwrap(), g2.as_finite().unwrap());
        assert_eq!(brute_force_rearrangement(c, g).unwrap(), (2, 1));
    }

    #[test]
    fn brute_force_examples() {
        let w = |v: Vec<Symbol>| FiniteWord::dense(v);
        assert_eq!(brute_force_rearrangement(&w(vec![0, 1]), &w(vec![1, 0])).unwrap(), (2, 0));
        assert_eq!(brute_force_rearrangement(&w(vec![0, 1, 2]), &w(vec![2, 2, 2])).unwrap(), (0, 2));
        assert!(brute_force_rearrangement(&w(vec![0; 10]), &w(vec![0; 10])).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let red = Word::constant(0);
        let code = Word::closed(Base::constant(0), [(3, 1)]).unwrap();
        assert_eq!(mastermind_feedback(&code, &red).unwrap(), fb(Omega, Fin(0), Fin(1)));
        assert_eq!(mastermind_feedback(&code, &Word::constant(1)).unwrap(), fb(Fin(1), Fin(0), Omega));
        let near2 = Word::closed(Base::constant(0), [(2, 1)]).unwrap();
        assert_eq!(mastermind_feedback(&code, &near2).unwrap(), fb(Omega, Fin(2), Fin(0)));
        let near3 = Word::closed(Base::constant(0), [(3, 1)]).unwrap();
        assert_eq!(mastermind_feedback(&code, &near3).unwrap(), fb(Omega, Fin(0), Fin(0)));
    }

    #[test]
    fn unbalanced_surplus_over_infinite_disagreement() {
        // Over the odd positions the guess has red where the code has blue; only
        // the code's red at 0 can take one of those pegs.
        let code = Word::periodic(vec![0, 1]).unwrap();
        let guess = Word::closed(Base::constant(0), [(0, 2)]).unwrap();
        assert_eq!(mastermind_feedback(&code, &guess).unwrap(), fb(Omega, Fin(1), Omega));
        // The code asks for color 2 infinitely often and the guess never offers it.
        let code = Word::periodic(vec![1, 2, 0]).unwrap();
        let guess = Word::periodic(vec![0, 0, 1]).unwrap();
        let f = mastermind_feedback(&code, &guess).unwrap();
        assert_eq!((f.rho, f.epsilon), (Omega, Omega));
    }

    #[test]
    fn shared_infinite_color_absorbs_imbalance() {
        // Red is infinite on both sides of the disagreement; the extra blue in
        // the guess is the only peg that can never be made correct.
        let code = Word::periodic(vec![0, 2]).unwrap();
        let guess = Word::closed(Base::periodic(vec![2, 0]), [(0, 1)]).unwrap();
        let f = mastermind_feedback(&code, &guess).unwrap();
        assert_eq!(f, fb(Fin(0), Omega, Fin(1)));
    }

    #[test]
    fn shift_words() {
        let id = Word::shift(0);
        let swap = Word::closed(Base::shift(0), [(0, 1), (1, 0)]).unwrap();
        assert_eq!(mastermind_feedback(&id, &swap).unwrap(), fb(Omega, Fin(2), Fin(0)));
        assert_eq!(mastermind_feedback(&id, &Word::shift(3)).unwrap(), fb(Fin(0), Omega, Omega));
        assert_eq!(mastermind_feedback_no_dup(&id, &Word::shift(3)).unwrap().epsilon, Omega);
        assert_eq!(mastermind_feedback(&Word::shift(2), &Word::shift(2)).unwrap(), fb(Omega, Fin(0), Fin(0)));
        let one_missing = Word::closed(Base::shift(1), [(0, 0)]).unwrap();
        // values 0, 2, 3, ...: color 1 is never used
        assert_eq!(epsilon_no_dup(&one_missing, &id).unwrap(), Omega);
        assert_eq!(mastermind_feedback(&one_missing, &id).unwrap().epsilon, Omega);
        let missing_five = Word::closed(Base::shift(0), [(5, 100)]).unwrap();
        assert!(epsilon_no_dup(&missing_five, &id).is_err());
    }

    #[test]
    fn simplified_examples() {
        let c = Word::dense(vec![2, 0, 1]);
        let s = simplified_feedback(&c, &Word::dense(vec![0, 0, 0])).unwrap();
        assert_eq!((s.correct, s.incorrect), (Fin(1), Fin(2)));
        let s = simplified_feedback(&Word::constant(0), &Word::constant(1)).unwrap();
        assert_eq!((s.correct, s.incorrect), (Fin(0), Omega));
    }

    #[test]
    fn json_form() {
        let f = fb(Omega, Fin(0), Fin(1));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"kappa":"omega","rho":0,"epsilon":1}"#);
    }
}
