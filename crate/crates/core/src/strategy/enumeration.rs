use super::{next_finite_stage, Move, Strategy, Turn};
use crate::dictionary::Dictionary;

/// Plays the dictionary's words in enumeration order.
#[derive(Clone, Debug)]
pub struct Enumeration {
    dict: Dictionary,
}

impl Enumeration {
    pub fn new(dict: Dictionary) -> Self {
        Enumeration { dict }
    }
}

impl Strategy for Enumeration {
    fn name(&self) -> String {
        "enum".into()
    }

    fn next(&mut self, history: &[Turn]) -> Move {
        match self.dict.enumerate(history.len() as u64) {
            Ok(word) => Move::Guess { stage: next_finite_stage(history), word },
            Err(_) => Move::Exhausted,
        }
    }
}
