//! Finite and infinitary codebreaking games: words, feedback, dictionaries,
//! strategies, adversaries, and a match runner.

pub mod adversary;
pub mod alphabet;
pub mod arena;
pub mod cardinal;
pub mod census;
pub mod dictionary;
pub mod error;
pub mod feedback;
pub mod positions;
pub mod strategy;
pub mod word;

pub use cardinal::{Cardinal, OrdinalStage};
pub use error::{DictError, WordError};
pub use positions::PositionSet;
pub use word::{Base, ClosedWord, FiniteWord, LazyWord, Pos, Symbol, Word};
