use std::collections::BTreeSet;

use thiserror::Error;

use super::{next_finite_stage, Move, Replay, Strategy, Turn};
use crate::feedback::Feedback;
use crate::word::{Symbol, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("oracle declined to answer")]
    Aborted,
    #[error("oracle answers are inconsistent at position {0}")]
    Inconsistent(usize),
    #[error("seed or pool is not injective")]
    NotInjective,
}

/// A reconstructed word and the number of oracle queries spent on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub word: Vec<Symbol>,
    pub queries: u64,
}

type Oracle<'a> = dyn FnMut(&[Symbol]) -> Option<u64> + 'a;

struct Counter<'a, 'b> {
    oracle: &'a mut Oracle<'b>,
    queries: u64,
}

impl Counter<'_, '_> {
    fn ask(&mut self, q: &[Symbol]) -> Result<i64, DecodeError> {
        self.queries += 1;
        (self.oracle)(q).map(|c| c as i64).ok_or(DecodeError::Aborted)
    }
}

/// Recovers a word of length `len` over colors `0..colors` from correctness
/// counts alone, varying one coordinate of the all-zero seed at a time.
pub fn correctness_decoder_dup(oracle: &mut Oracle<'_>, len: usize, colors: u64) -> Result<Decoded, DecodeError> {
    correctness_decoder_dup_from(oracle, &vec![0; len], colors)
}

pub fn correctness_decoder_dup_from(
    oracle: &mut Oracle<'_>,
    seed: &[Symbol],
    colors: u64,
) -> Result<Decoded, DecodeError> {
    let mut o = Counter { oracle, queries: 0 };
    let k = o.ask(seed)?;
    let mut word = seed.to_vec();
    if k > seed.len() as i64 {
        return Err(DecodeError::Inconsistent(0));
    }
    if k == seed.len() as i64 {
        return Ok(Decoded { word, queries: o.queries });
    }
    let mut q = seed.to_vec();
    for p in 0..seed.len() {
        let others: Vec<Symbol> = (0..colors).filter(|&c| c != seed[p]).collect();
        let mut decided = false;
        for (i, &c) in others.iter().enumerate() {
            // After one unchanged count the seed is wrong here, so the last
            // untried color needs no query.
            if i > 0 && i + 1 == others.len() {
                word[p] = c;
                decided = true;
                break;
            }
            q[p] = c;
            let r = o.ask(&q)?;
            q[p] = seed[p];
            match r - k {
                1 => {
                    word[p] = c;
                    decided = true;
                    break;
                }
                -1 => {
                    decided = true;
                    break;
                }
                0 => {}
                _ => return Err(DecodeError::Inconsistent(p)),
            }
        }
        if !decided {
            return Err(DecodeError::Inconsistent(p));
        }
    }
    Ok(Decoded { word, queries: o.queries })
}

/// Recovers an injective word over colors `0..colors` from correctness counts,
/// starting at the injective `seed` and keeping every query injective.
pub fn injective_swap_decoder(oracle: &mut Oracle<'_>, seed: &[Symbol], colors: u64) -> Result<Decoded, DecodeError> {
    if seed.iter().collect::<BTreeSet<_>>().len() != seed.len() || seed.iter().any(|&c| c >= colors) {
        return Err(DecodeError::NotInjective);
    }
    let mut o = Counter { oracle, queries: 0 };
    let k = o.ask(seed)?;
    let s = seed;
    let mut word = s.to_vec();
    if k == s.len() as i64 {
        return Ok(Decoded { word, queries: o.queries });
    }
    let used: BTreeSet<Symbol> = s.iter().copied().collect();
    let fresh: Vec<Symbol> = (0..colors).filter(|c| !used.contains(c)).collect();
    let mut q = s.to_vec();
    'positions: for p in 0..s.len() {
        for &c in &fresh {
            q[p] = c;
            let r = o.ask(&q)?;
            q[p] = s[p];
            match r - k {
                1 => {
                    word[p] = c;
                    continue 'positions;
                }
                -1 => continue 'positions,
                0 => {}
                _ => return Err(DecodeError::Inconsistent(p)),
            }
        }
        // w(p) is some seed color now. Swapping p with the holder of that
        // color gains one or two.
        let mut plus_one = Vec::new();
        for j in (0..s.len()).filter(|&j| j != p) {
            q.swap(p, j);
            let r = o.ask(&q)?;
            q.swap(p, j);
            match r - k {
                2 => {
                    word[p] = s[j];
                    continue 'positions;
                }
                1 => plus_one.push(j),
                -2..=0 => {}
                _ => return Err(DecodeError::Inconsistent(p)),
            }
        }
        match plus_one[..] {
            [] if fresh.is_empty() => {}
            [] => return Err(DecodeError::Inconsistent(p)),
            [j] => word[p] = s[j],
            [a, b] => {
                // One of a, b holds w(p); the other wants s(p). Rotating
                // p <- a <- b <- p gains at least two only if a holds w(p).
                q[p] = s[a];
                q[a] = s[b];
                q[b] = s[p];
                let r = o.ask(&q)?;
                q[p] = s[p];
                q[a] = s[a];
                q[b] = s[b];
                word[p] = if r - k >= 2 { s[a] } else { s[b] };
            }
            _ => return Err(DecodeError::Inconsistent(p)),
        }
    }
    Ok(Decoded { word, queries: o.queries })
}

/// The number of correctly placed symbols reported by any feedback kind.
pub fn correctness(f: &Feedback) -> Option<u64> {
    match f {
        Feedback::Mastermind(m) => m.kappa.finite(),
        Feedback::Simplified(s) => s.correct.finite(),
        Feedback::Tricolor(t) => t.green_count().finite(),
    }
}

fn replay_decoder(
    history: &[Turn],
    run: impl FnOnce(&mut Oracle<'_>) -> Result<Decoded, DecodeError>,
) -> Move {
    let mut replay = Replay::new(history);
    let result = {
        let mut ask = |q: &[Symbol]| replay.ask(&Word::finite(q.to_vec())).and_then(correctness);
        run(&mut ask)
    };
    let stage = next_finite_stage(history);
    replay.conclude(result.ok().map(|d| Word::finite(d.word)), stage)
}

/// Plays the duplicate-allowing decoder against a finite codeword.
pub struct DupDecoder {
    len: usize,
    colors: u64,
}

impl DupDecoder {
    pub fn new(len: usize, colors: u64) -> Self {
        DupDecoder { len, colors }
    }
}

impl Strategy for DupDecoder {
    fn name(&self) -> String {
        "decoder-dup".into()
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        let (len, colors) = (self.len, self.colors);
        replay_decoder(history, |o| correctness_decoder_dup(o, len, colors))
    }
}

/// Plays the swap decoder from the identity seed against an injective codeword.
pub struct InjectiveDecoder {
    len: usize,
    colors: u64,
}

impl InjectiveDecoder {
    pub fn new(len: usize, colors: u64) -> Self {
        InjectiveDecoder { len, colors }
    }
}

impl Strategy for InjectiveDecoder {
    fn name(&self) -> String {
        "decoder-inj".into()
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        let seed: Vec<Symbol> = (0..self.len as Symbol).collect();
        let colors = self.colors;
        replay_decoder(history, |o| injective_swap_decoder(o, &seed, colors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hits(w: &[Symbol], q: &[Symbol]) -> u64 {
        w.iter().zip(q).filter(|(a, b)| a == b).count() as u64
    }

    #[test]
    fn dup_small_example() {
        let w = [2, 0, 1];
        let mut log = Vec::new();
        let mut o = |q: &[Symbol]| {
            log.push(q.to_vec());
            Some(hits(&w, q))
        };
        let d = correctness_decoder_dup(&mut o, 3, 3).unwrap();
        assert_eq!(d.word, w);
        assert_eq!(log[0], vec![0, 0, 0]);
        assert_eq!(log[1], vec![1, 0, 0]);
        assert!(d.queries <= 1 + 3 * 2);
    }

    #[test]
    fn dup_seed_correct_needs_one_query() {
        let mut o = |q: &[Symbol]| Some(hits(&[0, 0], q));
        assert_eq!(correctness_decoder_dup(&mut o, 2, 5).unwrap().queries, 1);
    }

    #[test]
    fn dup_random_within_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let len = rng.gen_range(1..=64);
            let m = rng.gen_range(2..=16);
            let w: Vec<Symbol> = (0..len).map(|_| rng.gen_range(0..m)).collect();
            let mut o = |q: &[Symbol]| Some(hits(&w, q));
            let d = correctness_decoder_dup(&mut o, len, m).unwrap();
            assert_eq!(d.word, w);
            assert!(d.queries <= 1 + len as u64 * (m - 1));
        }
    }

    #[test]
    fn dup_reports_lying_oracle() {
        let mut o = |_: &[Symbol]| Some(3);
        assert_eq!(correctness_decoder_dup(&mut o, 2, 3), Err(DecodeError::Inconsistent(0)));
    }

    #[test]
    fn injective_examples() {
        for (w, k) in [([1, 0, 2], 1), ([1, 2, 0], 0), ([0, 1, 2], 3)] {
            let mut first = None;
            let mut o = |q: &[Symbol]| {
                first.get_or_insert(hits(&w, q));
                Some(hits(&w, q))
            };
            let d = injective_swap_decoder(&mut o, &[0, 1, 2], 3).unwrap();
            assert_eq!(d.word, w);
            assert_eq!(first, Some(k));
        }
    }

    #[test]
    fn injective_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let len = rng.gen_range(1..=32);
            let extra = rng.gen_range(0..4);
            let mut pool: Vec<Symbol> = (0..(len + extra) as Symbol).collect();
            pool.shuffle(&mut rng);
            let w = pool[..len].to_vec();
            let seed: Vec<Symbol> = (0..len as Symbol).collect();
            let mut o = |q: &[Symbol]| {
                assert_eq!(q.iter().collect::<BTreeSet<_>>().len(), q.len());
                Some(hits(&w, q))
            };
            let d = injective_swap_decoder(&mut o, &seed, (len + extra) as u64)
                .unwrap_or_else(|e| panic!("{e} {w:?} {extra}"));
            assert_eq!(d.word, w);
        }
    }

    #[test]
    fn injective_rejects_repeated_seed() {
        let mut o = |_: &[Symbol]| Some(0);
        assert_eq!(injective_swap_decoder(&mut o, &[1, 1], 3), Err(DecodeError::NotInjective));
    }
}
