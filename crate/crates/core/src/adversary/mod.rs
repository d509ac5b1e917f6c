//! Codemakers: an honest one holding a fixed code, and adversaries that only
//! commit to a code gradually.

mod absurdle;
mod generic;
mod madster;
mod promise;

pub use absurdle::Absurdle;
pub use generic::{build_generic_pair, CertEntry, GenericPair};
pub use madster::{MadsterDup, MadsterNoDup, NoDupMode, Obligation};
pub use promise::{PromiseAdversary, PromiseLedger};

use std::str::FromStr;

use thiserror::Error;

use crate::dictionary::Dictionary;
use crate::error::{DictError, WordError};
use crate::feedback::{Feedback, GameMode};
use crate::word::Word;

#[derive(Debug, Error)]
pub enum AdversaryError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Dict(#[from] DictError),
    #[error("guess must be a closed-form word")]
    NotClosed,
    #[error("guess must be injective")]
    NotInjective,
    #[error("no candidate codeword remains")]
    Empty,
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("unknown adversary `{0}`")]
    Unknown(String),
}

/// Answers guesses. Answers given so far must stay consistent with at least
/// one codeword.
pub trait Adversary: Send {
    fn name(&self) -> String;
    fn mode(&self) -> GameMode;
    fn answer(&mut self, guess: &Word) -> Result<Feedback, AdversaryError>;
    /// A codeword (or, for ω-words, a prefix of length `len`) consistent with
    /// every answer given so far.
    fn witness(&self, len: u64) -> Option<Word>;
}

/// The ordinary codemaker.
pub struct Codemaker {
    code: Word,
    mode: GameMode,
}

impl Codemaker {
    pub fn new(code: Word, mode: GameMode) -> Self {
        Codemaker { code, mode }
    }

    pub fn code(&self) -> &Word {
        &self.code
    }
}

impl Adversary for Codemaker {
    fn name(&self) -> String {
        "codemaker".into()
    }

    fn mode(&self) -> GameMode {
        self.mode
    }

    fn answer(&mut self, guess: &Word) -> Result<Feedback, AdversaryError> {
        Ok(self.mode.feedback(&self.code, guess)?)
    }

    fn witness(&self, len: u64) -> Option<Word> {
        match self.code.len() {
            Some(_) => Some(self.code.clone()),
            None => self.code.prefix(len).ok().map(Word::finite),
        }
    }
}

/// Adversary names accepted on the command line and by the service.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversaryKind {
    Absurdle,
    Promise,
    MadsterDup,
    MadsterNoDup(NoDupMode),
}

impl FromStr for AdversaryKind {
    type Err = AdversaryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "absurdle" => AdversaryKind::Absurdle,
            "promise" => AdversaryKind::Promise,
            "madster-dup" => AdversaryKind::MadsterDup,
            "madster-nodup" => AdversaryKind::MadsterNoDup(NoDupMode::Countable),
            "madster-nodup:simplified" => AdversaryKind::MadsterNoDup(NoDupMode::Simplified),
            "madster-nodup:uncountable" => AdversaryKind::MadsterNoDup(NoDupMode::Uncountable),
            _ => return Err(AdversaryError::Unknown(s.into())),
        })
    }
}

impl AdversaryKind {
    /// Builds the adversary. Only Absurdle uses the dictionary.
    pub fn build(self, dict: Option<&Dictionary>) -> Result<Box<dyn Adversary>, AdversaryError> {
        Ok(match self {
            AdversaryKind::Absurdle => {
                let d = dict.ok_or_else(|| AdversaryError::Infeasible("absurdle needs a dictionary".into()))?;
                Box::new(Absurdle::new(d)?)
            }
            AdversaryKind::Promise => Box::new(PromiseAdversary::new()),
            AdversaryKind::MadsterDup => Box::new(MadsterDup::new()),
            AdversaryKind::MadsterNoDup(m) => Box::new(MadsterNoDup::new(m)),
        })
    }
}
