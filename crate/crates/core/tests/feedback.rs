use codebreak::cardinal::{Fin, Omega};
use codebreak::feedback::{
    epsilon_no_dup, mastermind_feedback, simplified_feedback, wordle_feedback, wordle_tiles, Tile,
};
use codebreak::word::{Base, ClosedWord, FiniteWord, Symbol};
use codebreak::Word;
use proptest::prelude::*;

fn tiles_oracle(code: &[Symbol], guess: &[Symbol]) -> Vec<Tile> {
    let mut out = vec![Tile::Gray; code.len()];
    let mut left = [0usize; 8];
    for (c, g) in code.iter().zip(guess) {
        if c != g {
            left[*c as usize] += 1;
        }
    }
    for i in 0..code.len() {
        if code[i] == guess[i] {
            out[i] = Tile::Green;
        } else if left[guess[i] as usize] > 0 {
            left[guess[i] as usize] -= 1;
            out[i] = Tile::Yellow;
        }
    }
    out
}

fn pegs_oracle(code: &[Symbol], guess: &[Symbol]) -> (u64, u64) {
    let kappa = code.iter().zip(guess).filter(|(a, b)| a == b).count() as u64;
    let rho = (0..8)
        .map(|c| {
            let w = code.iter().zip(guess).filter(|(a, b)| a != b && **a == c).count();
            let o = code.iter().zip(guess).filter(|(a, b)| a != b && **b == c).count();
            w.min(o) as u64
        })
        .sum();
    (kappa, rho)
}

fn pair(max_len: usize) -> impl Strategy<Value = (Vec<Symbol>, Vec<Symbol>)> {
    (1..=max_len).prop_flat_map(|n| (prop::collection::vec(0u64..8, n), prop::collection::vec(0u64..8, n)))
}

fn runs(w: &[Symbol]) -> Vec<(Symbol, u64)> {
    let mut out: Vec<(Symbol, u64)> = Vec::new();
    for s in w {
        match out.last_mut() {
            Some((t, n)) if t == s => *n += 1,
            _ => out.push((*s, 1)),
        }
    }
    out
}

fn closed() -> impl Strategy<Value = ClosedWord> {
    let base = prop_oneof![
        (0u64..3).prop_map(Base::constant),
        (0u64..3).prop_map(Base::shift),
        prop::collection::vec(0u64..3, 1..4).prop_map(Base::periodic),
    ];
    (base, prop::collection::btree_map(0u64..40, 0u64..5, 0..5))
        .prop_map(|(b, ex)| ClosedWord::normalized(b, ex).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tiles_follow_the_two_pass_rule((code, guess) in pair(12)) {
        let want = tiles_oracle(&code, &guess);
        let got = wordle_tiles(&FiniteWord::dense(code.clone()), &FiniteWord::dense(guess.clone())).unwrap();
        prop_assert_eq!(&got, &want);
        // Run-length storage gives the same answer.
        let rle = wordle_tiles(&FiniteWord::from_runs(runs(&code)), &FiniteWord::from_runs(runs(&guess))).unwrap();
        prop_assert_eq!(rle, want);
    }

    #[test]
    fn pegs_follow_color_counting((code, guess) in pair(12)) {
        let (c, g) = (Word::finite(code.clone()), Word::finite(guess.clone()));
        let f = mastermind_feedback(&c, &g).unwrap();
        let (k, r) = pegs_oracle(&code, &guess);
        let n = code.len() as u64;
        prop_assert_eq!((f.kappa, f.rho, f.epsilon), (Fin(k), Fin(r), Fin(n - k - r)));
        prop_assert_eq!(f.total(), Fin(n));
        prop_assert_eq!(mastermind_feedback(&g, &c).unwrap(), f);
        let s = simplified_feedback(&c, &g).unwrap();
        prop_assert_eq!((s.correct, s.incorrect), (Fin(k), Fin(n - k)));
    }

    #[test]
    fn injective_epsilon_counts_missing_colors(
        (code, guess) in (1usize..=8).prop_flat_map(|n| (
            Just((0..12u64).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..n].to_vec()),
            Just((0..12u64).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..n].to_vec()),
        ))
    ) {
        let missing = code.iter().filter(|c| !guess.contains(c)).count() as u64;
        let e = epsilon_no_dup(&Word::finite(code.clone()), &Word::finite(guess.clone())).unwrap();
        prop_assert_eq!(e, Fin(missing));
        let f = mastermind_feedback(&Word::finite(code), &Word::finite(guess)).unwrap();
        prop_assert_eq!(f.epsilon, Fin(missing));
    }

    #[test]
    fn closed_greens_are_agreements(a in closed(), b in closed()) {
        let f = wordle_feedback(&Word::Closed(a.clone()), &Word::Closed(b.clone())).unwrap();
        for p in 0..120 {
            prop_assert_eq!(f.is_green(p), a.at(p) == b.at(p), "position {}", p);
        }
        let m = mastermind_feedback(&Word::Closed(a.clone()), &Word::Closed(b.clone())).unwrap();
        prop_assert_eq!(m.total(), Omega);
        let agree = (0..400).filter(|p| a.at(*p) == b.at(*p)).count() as u64;
        match m.kappa {
            Fin(k) => prop_assert_eq!(k, agree),
            Omega => prop_assert!(agree > 40),
        }
        prop_assert_eq!(f.is_win(), a == b);
    }
}
