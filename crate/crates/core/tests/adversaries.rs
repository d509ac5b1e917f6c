use std::collections::BTreeMap;

use codebreak::adversary::{Absurdle, Adversary, AdversaryKind, Codemaker, MadsterDup, MadsterNoDup, NoDupMode, PromiseAdversary};
use codebreak::alphabet::Alphabet;
use codebreak::arena::{replay_check, Outcome, Transcript};
use codebreak::feedback::{Feedback, GameMode, Tile, TricolorFeedback};
use codebreak::strategy::Turn;
use codebreak::word::{Base, ClosedWord, Symbol};
use codebreak::{Cardinal, OrdinalStage, Word};
use proptest::prelude::*;

// Two-pass tiles, independent of the library.
fn tiles(code: &[Symbol], guess: &[Symbol]) -> Vec<Tile> {
    let mut out = vec![Tile::Gray; code.len()];
    let mut spare = Vec::new();
    for i in 0..code.len() {
        if code[i] == guess[i] {
            out[i] = Tile::Green;
        } else {
            spare.push(code[i]);
        }
    }
    for i in 0..code.len() {
        if out[i] == Tile::Gray {
            if let Some(j) = spare.iter().position(|c| *c == guess[i]) {
                spare.swap_remove(j);
                out[i] = Tile::Yellow;
            }
        }
    }
    out
}

fn word(i: u32, len: u32) -> Vec<Symbol> {
    (0..len).map(|k| ((i / 3u32.pow(k)) % 3) as Symbol).collect()
}

fn closed_word() -> impl Strategy<Value = Word> {
    let base = prop_oneof![
        (0u64..4).prop_map(Base::constant),
        (0u64..3).prop_map(Base::shift),
        prop::collection::vec(0u64..4, 1..4).prop_map(Base::periodic),
    ];
    (base, prop::collection::btree_map(0u64..24, 0u64..6, 0..4))
        .prop_map(|(b, ex)| Word::Closed(ClosedWord::normalized(b, ex).expect("well-formed closed word")))
}

fn transcript(mode: GameMode, guesses: &[Word], answers: &[Feedback]) -> Transcript {
    let turns = guesses
        .iter()
        .zip(answers)
        .enumerate()
        .map(|(i, (g, f))| Turn { stage: OrdinalStage::finite(i as u64 + 1), guess: g.clone(), feedback: f.clone() })
        .collect();
    Transcript { mode, dictionary: None, turns, outcome: Outcome::Exhausted }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    // The kept class is exactly the candidates matching every answer, and no
    // other answer would have kept more.
    #[test]
    fn absurdle_keeps_a_largest_consistent_class(
        picks in prop::collection::btree_set(0u32..27, 1..27),
        guesses in prop::collection::vec(0u32..27, 1..6),
    ) {
        let words: Vec<Vec<Symbol>> = picks.iter().map(|i| word(*i, 3)).collect();
        let mut adv = Absurdle::from_candidates(words.iter().cloned().map(Word::finite).collect()).unwrap();
        let mut alive = words.clone();
        for g in guesses {
            let g = word(g, 3);
            let mut classes: BTreeMap<Vec<Tile>, usize> = BTreeMap::new();
            for w in &alive {
                *classes.entry(tiles(w, &g)).or_default() += 1;
            }
            let f = adv.answer(&Word::finite(g.clone())).unwrap();
            let Feedback::Tricolor(TricolorFeedback::Finite(got)) = f else { panic!("tiles expected") };
            prop_assert_eq!(classes[&got], *classes.values().max().unwrap());
            alive.retain(|w| tiles(w, &g) == got);
            let mut left: Vec<Vec<Symbol>> = adv.remaining().iter().map(|w| w.as_finite().unwrap().to_vec()).collect();
            left.sort();
            let mut want = alive.clone();
            want.sort();
            prop_assert_eq!(left, want);
        }
    }

    #[test]
    fn promise_answers_stay_consistent(guesses in prop::collection::vec(closed_word(), 1..25)) {
        let mut adv = PromiseAdversary::new();
        let mut answers = Vec::new();
        for g in &guesses {
            let f = adv.answer(g).unwrap();
            prop_assert!(!f.is_win(Cardinal::Omega));
            answers.push(f);
        }
        let tri: Vec<TricolorFeedback> = answers.iter().map(|f| f.as_tricolor().unwrap().clone()).collect();
        prop_assert_eq!(adv.verify(&tri, 64), Ok(()));
        let w = adv.witness(64).unwrap();
        prop_assert!(replay_check(&transcript(GameMode::Wordle, &guesses, &answers), &w));
    }

    #[test]
    fn madster_dup_answers_stay_consistent(guesses in prop::collection::vec(closed_word(), 1..25)) {
        let mut adv = MadsterDup::new();
        let mut answers = Vec::new();
        for g in &guesses {
            let f = adv.answer(g).unwrap();
            prop_assert!(!f.is_win(Cardinal::Omega));
            answers.push(f.as_mastermind().unwrap().clone());
        }
        prop_assert_eq!(adv.verify(&answers), Ok(()));
    }

    #[test]
    fn codemaker_answers_by_the_rules(code in prop::collection::vec(0u64..5, 1..8), seed in prop::collection::vec(0u64..5, 8)) {
        let guess: Vec<Symbol> = seed[..code.len()].to_vec();
        for mode in [GameMode::Wordle, GameMode::Mastermind, GameMode::Simplified] {
            let mut maker = Codemaker::new(Word::finite(code.clone()), mode);
            let f = maker.answer(&Word::finite(guess.clone())).unwrap();
            prop_assert_eq!(&f, &mode.feedback(&Word::finite(code.clone()), &Word::finite(guess.clone())).unwrap());
            prop_assert_eq!(f.is_win(Cardinal::Fin(code.len() as u64)), code == guess);
        }
        let mut maker = Codemaker::new(Word::finite(code.clone()), GameMode::Wordle);
        let f = maker.answer(&Word::finite(guess.clone())).unwrap();
        let want = tiles(&code, &guess);
        prop_assert_eq!(f.as_tricolor().unwrap().tiles().unwrap(), want.as_slice());
    }
}

#[test]
fn promise_rejects_finite_guesses() {
    let mut adv = PromiseAdversary::new();
    assert!(adv.answer(&Word::finite(vec![0, 1])).is_err());
}

#[test]
fn nodup_never_concedes_a_permutation() {
    for mode in [NoDupMode::Countable, NoDupMode::Simplified, NoDupMode::Uncountable] {
        let mut adv = MadsterNoDup::new(mode);
        for k in 0..50 {
            let f = adv.answer(&Word::shift(k)).unwrap();
            assert!(!f.is_win(Cardinal::Omega), "{mode:?} shift {k}");
        }
        assert!(adv.witness(8).is_none());
    }
}

#[test]
fn kinds_parse_and_build() {
    let d = codebreak::dictionary::Dictionary::complete(Alphabet::from_chars("AB").unwrap(), 2).unwrap();
    for (name, mode) in [
        ("absurdle", GameMode::Wordle),
        ("promise", GameMode::Wordle),
        ("madster-dup", GameMode::Mastermind),
        ("madster-nodup", GameMode::MastermindNoDup),
    ] {
        let kind: AdversaryKind = name.parse().unwrap();
        assert_eq!(kind.build(Some(&d)).unwrap().mode(), mode, "{name}");
    }
    assert!("oracle".parse::<AdversaryKind>().is_err());
    assert!(AdversaryKind::Absurdle.build(None).is_err());
}
