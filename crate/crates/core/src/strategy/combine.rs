use super::{next_finite_stage, Move, Strategy, Turn};
use crate::cardinal::OrdinalStage;

/// Stage carrying guess `k` of part `n`: `2^n (2k + 1)`.
pub fn interleave_stage(n: u32, k: u64) -> Option<u64> {
    let odd = k.checked_mul(2)?.checked_add(1)?;
    if n >= 64 {
        return None;
    }
    odd.checked_mul(1 << n)
}

/// Inverse of [`interleave_stage`] on positive stages.
pub fn interleave_unstage(stage: u64) -> (u32, u64) {
    let n = stage.trailing_zeros();
    (n, ((stage >> n) - 1) / 2)
}

/// Runs several strategies side by side: part `n` plays its `k`-th guess at
/// stage `2^n (2k + 1)` and only ever sees its own turns. A part's claim is
/// played as an ordinary guess, after which the part is retired.
pub struct Interleave {
    parts: Vec<Box<dyn Strategy>>,
    local: Vec<Vec<Turn>>,
    retired: Vec<bool>,
    processed: usize,
}

impl Interleave {
    pub fn new(parts: Vec<Box<dyn Strategy>>) -> Self {
        let n = parts.len();
        Interleave { parts, local: vec![Vec::new(); n], retired: vec![false; n], processed: 0 }
    }

    fn reset(&mut self) {
        self.local.iter_mut().for_each(Vec::clear);
        self.retired.iter_mut().for_each(|r| *r = false);
        self.processed = 0;
    }
}

impl Strategy for Interleave {
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        format!("interleave:{}", names.join(","))
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        if history.len() < self.processed {
            self.reset();
        }
        for t in &history[self.processed..] {
            let (n, k) = interleave_unstage(t.stage.finite_part);
            let turn = Turn { stage: OrdinalStage::finite(k + 1), ..t.clone() };
            self.local[n as usize].push(turn);
        }
        self.processed = history.len();
        loop {
            let pick = (0..self.parts.len())
                .filter(|n| !self.retired[*n])
                .filter_map(|n| Some((interleave_stage(n as u32, self.local[n].len() as u64)?, n)))
                .min();
            let Some((stage, n)) = pick else { return Move::Exhausted };
            let stage = OrdinalStage::finite(stage);
            match self.parts[n].next(&self.local[n]) {
                Move::Guess { word, .. } => return Move::Guess { stage, word },
                Move::Claim { word, .. } => {
                    self.retired[n] = true;
                    return Move::Guess { stage, word };
                }
                Move::Exhausted => self.retired[n] = true,
            }
        }
    }
}

/// Runs strategies one after another; each part sees only its own turns and
/// hands over when it is exhausted or has played its claim.
pub struct Sequential {
    parts: Vec<Box<dyn Strategy>>,
    current: usize,
    local: Vec<Turn>,
    claimed: bool,
    processed: usize,
}

impl Sequential {
    pub fn new(parts: Vec<Box<dyn Strategy>>) -> Self {
        Sequential { parts, current: 0, local: Vec::new(), claimed: false, processed: 0 }
    }
}

impl Strategy for Sequential {
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        format!("sequential:{}", names.join(","))
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        if history.len() < self.processed {
            self.current = 0;
            self.local.clear();
            self.claimed = false;
            self.processed = 0;
        }
        for t in &history[self.processed..] {
            let stage = OrdinalStage::finite(self.local.len() as u64 + 1);
            self.local.push(Turn { stage, ..t.clone() });
        }
        self.processed = history.len();
        let stage = next_finite_stage(history);
        while self.current < self.parts.len() {
            if !self.claimed {
                match self.parts[self.current].next(&self.local) {
                    Move::Guess { word, .. } => return Move::Guess { stage, word },
                    Move::Claim { word, .. } => {
                        self.claimed = true;
                        return Move::Guess { stage, word };
                    }
                    Move::Exhausted => {}
                }
            }
            self.current += 1;
            self.local.clear();
            self.claimed = false;
        }
        Move::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_map() {
        assert_eq!(interleave_stage(0, 0), Some(1));
        assert_eq!(interleave_stage(1, 0), Some(2));
        assert_eq!(interleave_stage(0, 1), Some(3));
        assert_eq!(interleave_stage(1, 1), Some(6));
        for s in 1..2000u64 {
            let (n, k) = interleave_unstage(s);
            assert_eq!(interleave_stage(n, k), Some(s));
        }
    }
}
