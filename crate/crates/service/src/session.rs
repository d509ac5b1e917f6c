use codebreak::adversary::{Adversary, AdversaryKind, Codemaker, NoDupMode};
use codebreak::dictionary::nerdle::random_equation;
use codebreak::dictionary::{Dictionary, DictionaryConfig};
use codebreak::feedback::{Feedback, GameMode};
use codebreak::strategy::Turn;
use codebreak::{Cardinal, OrdinalStage, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ApiError;

/// Game offered by a session: a hidden codeword under one of the feedback
/// rules, or one of the adversarial codemakers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SessionMode {
    Wordle,
    Mastermind,
    MastermindNodup,
    Simplified,
    Absurdle,
    Promise,
    MadstermindDup,
    MadstermindNodup,
    #[serde(rename = "madstermind-nodup:simplified")]
    MadstermindNodupSimplified,
    #[serde(rename = "madstermind-nodup:uncountable")]
    MadstermindNodupUncountable,
}

impl SessionMode {
    fn hidden(self) -> Option<GameMode> {
        Some(match self {
            SessionMode::Wordle => GameMode::Wordle,
            SessionMode::Mastermind => GameMode::Mastermind,
            SessionMode::MastermindNodup => GameMode::MastermindNoDup,
            SessionMode::Simplified => GameMode::Simplified,
            _ => return None,
        })
    }

    fn adversary(self) -> Option<AdversaryKind> {
        Some(match self {
            SessionMode::Absurdle => AdversaryKind::Absurdle,
            SessionMode::Promise => AdversaryKind::Promise,
            SessionMode::MadstermindDup => AdversaryKind::MadsterDup,
            SessionMode::MadstermindNodup => AdversaryKind::MadsterNoDup(NoDupMode::Countable),
            SessionMode::MadstermindNodupSimplified => AdversaryKind::MadsterNoDup(NoDupMode::Simplified),
            SessionMode::MadstermindNodupUncountable => AdversaryKind::MadsterNoDup(NoDupMode::Uncountable),
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Active,
    Won,
    Lost,
    Expired,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Active => "active",
            Status::Won => "won",
            Status::Lost => "lost",
            Status::Expired => "expired",
        }
    }
}

/// A dictionary given as a descriptor string (`complete:ABC:3`, `nerdle:8`,
/// `explicit:<file>`) or as a full dictionary object.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DictInput {
    Descriptor(String),
    Config(DictionaryConfig),
}

/// A word as text over the dictionary's alphabet, or as word JSON.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum WordInput {
    Text(String),
    Word(Word),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SessionConfig {
    pub mode: SessionMode,
    #[serde(default)]
    pub dict: Option<DictInput>,
    /// Picks the hidden codeword deterministically.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Sets the hidden codeword outright.
    #[serde(default)]
    pub code: Option<WordInput>,
    #[serde(default)]
    pub max_guesses: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuessRequest {
    pub word: WordInput,
}

/// Everything stored about a session. Adversaries are rebuilt from the
/// recorded guesses, so only the transcript needs saving.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionRecord {
    pub id: String,
    pub mode: SessionMode,
    pub dictionary: Option<DictionaryConfig>,
    pub code: Option<Word>,
    pub max_guesses: Option<usize>,
    pub turns: Vec<Turn>,
    pub status: Status,
    pub created_at: u64,
    pub expires_at: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GuessReply {
    pub stage: OrdinalStage,
    pub feedback: Feedback,
    pub status: Status,
}

/// What clients see. The codeword is present only once the session is over.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub id: String,
    pub mode: SessionMode,
    pub dictionary: Option<DictionaryConfig>,
    pub status: Status,
    pub turns: Vec<Turn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<Word>,
    pub expires_at: u64,
}

/// Cells shown when revealing an ω-word.
const REVEAL_PREFIX: u64 = 64;

pub struct Session {
    pub record: SessionRecord,
    dict: Option<Dictionary>,
    opponent: Box<dyn Adversary>,
}

fn build_dict(input: &DictInput) -> Result<DictionaryConfig, ApiError> {
    let config = match input {
        DictInput::Descriptor(d) => DictionaryConfig::parse(d),
        DictInput::Config(c) => Ok(c.clone()),
    };
    config.map_err(|e| ApiError::Config(e.to_string()))
}

fn parse_word(input: &WordInput, dict: Option<&Dictionary>) -> Result<Word, String> {
    match (input, dict) {
        (WordInput::Word(w), _) => Ok(w.clone()),
        (WordInput::Text(t), Some(d)) => d.alphabet().parse_word(t).map(Word::dense).map_err(|e| e.to_string()),
        (WordInput::Text(_), None) => Err("this game takes word JSON, not text".into()),
    }
}

fn pick_code(dict: &Dictionary, seed: u64) -> Result<Word, ApiError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(n) = dict.size() {
        if n == 0 {
            return Err(ApiError::Config("the dictionary is empty".into()));
        }
        return dict.enumerate(rng.gen_range(0..n)).map_err(|e| ApiError::Config(e.to_string()));
    }
    match (dict, dict.length(), dict.alphabet().size()) {
        (Dictionary::Nerdle(n), _, _) => Ok(Word::dense(random_equation(n.length(), &mut rng))),
        (Dictionary::Complete { .. }, Some(len), Some(k)) => {
            Ok(Word::finite((0..len).map(|_| rng.gen_range(0..k as u64)).collect()))
        }
        _ => Err(ApiError::Config("cannot draw a codeword from this dictionary; give `code`".into())),
    }
}

fn opponent(mode: SessionMode, dict: Option<&Dictionary>, code: Option<&Word>) -> Result<Box<dyn Adversary>, ApiError> {
    if let Some(game) = mode.hidden() {
        let code = code.ok_or_else(|| ApiError::Config("no codeword".into()))?;
        return Ok(Box::new(Codemaker::new(code.clone(), game)));
    }
    let kind = mode.adversary().expect("every mode is hidden or adversarial");
    kind.build(dict).map_err(|e| ApiError::Config(e.to_string()))
}

impl Session {
    pub fn create(id: String, config: &SessionConfig, now: u64, ttl: u64) -> Result<Self, ApiError> {
        let dictionary = config.dict.as_ref().map(build_dict).transpose()?;
        let dict = dictionary.as_ref().map(|c| c.build()).transpose().map_err(|e| ApiError::Config(e.to_string()))?;
        let code = match (config.mode.hidden(), &dict) {
            (None, _) => {
                if config.code.is_some() || config.seed.is_some() {
                    return Err(ApiError::Config("adversarial games have no preset codeword".into()));
                }
                None
            }
            (Some(_), None) => return Err(ApiError::Config("a hidden-codeword game needs `dict`".into())),
            (Some(_), Some(d)) => Some(match &config.code {
                Some(input) => {
                    let w = parse_word(input, Some(d)).map_err(ApiError::Config)?;
                    if !d.contains(&w).unwrap_or(false) {
                        return Err(ApiError::Config("the codeword is not in the dictionary".into()));
                    }
                    w
                }
                None => pick_code(d, config.seed.unwrap_or_else(rand::random))?,
            }),
        };
        if config.mode == SessionMode::Absurdle && dict.is_none() {
            return Err(ApiError::Config("absurdle needs `dict`".into()));
        }
        let opponent = opponent(config.mode, dict.as_ref(), code.as_ref())?;
        let record = SessionRecord {
            id,
            mode: config.mode,
            dictionary,
            code,
            max_guesses: config.max_guesses,
            turns: Vec::new(),
            status: Status::Active,
            created_at: now,
            expires_at: now.saturating_add(ttl),
        };
        Ok(Session { record, dict, opponent })
    }

    /// Rebuilds a stored session, replaying its guesses through a fresh
    /// opponent; a replayed answer that differs from the record is an error.
    pub fn restore(record: SessionRecord) -> Result<Self, ApiError> {
        let broken = |m: String| ApiError::Storage(format!("session {}: {m}", record.id));
        let dict = record.dictionary.as_ref().map(|c| c.build()).transpose().map_err(|e| broken(e.to_string()))?;
        let mut opponent = opponent(record.mode, dict.as_ref(), record.code.as_ref()).map_err(|e| broken(e.to_string()))?;
        for t in &record.turns {
            let f = opponent.answer(&t.guess).map_err(|e| broken(e.to_string()))?;
            if f != t.feedback {
                return Err(broken(format!("stage {} replays differently", t.stage)));
            }
        }
        Ok(Session { record, dict, opponent })
    }

    /// Marks an active session past its expiry time as expired.
    pub fn expire_if_due(&mut self, now: u64) -> bool {
        if self.record.status == Status::Active && now >= self.record.expires_at {
            self.record.status = Status::Expired;
            return true;
        }
        false
    }

    pub fn guess(&mut self, input: &WordInput, now: u64, ttl: u64) -> Result<GuessReply, ApiError> {
        self.expire_if_due(now);
        if self.record.status != Status::Active {
            return Err(ApiError::Closed(self.record.status.name()));
        }
        let word = parse_word(input, self.dict.as_ref()).map_err(ApiError::Guess)?;
        if let Some(d) = &self.dict {
            match d.contains(&word) {
                Ok(true) => {}
                Ok(false) => return Err(ApiError::Guess("not in the dictionary".into())),
                Err(e) => return Err(ApiError::Guess(e.to_string())),
            }
        }
        let feedback = self.opponent.answer(&word).map_err(|e| ApiError::Guess(e.to_string()))?;
        let length = word.len().map_or(Cardinal::Omega, Cardinal::Fin);
        let stage = OrdinalStage::finite(self.record.turns.len() as u64 + 1);
        let won = feedback.is_win(length);
        self.record.turns.push(Turn { stage, guess: word, feedback: feedback.clone() });
        self.record.status = if won {
            Status::Won
        } else if self.record.max_guesses.is_some_and(|m| self.record.turns.len() >= m) {
            Status::Lost
        } else {
            Status::Active
        };
        self.record.expires_at = now.saturating_add(ttl);
        Ok(GuessReply { stage, feedback, status: self.record.status })
    }

    pub fn view(&self) -> SessionView {
        let r = &self.record;
        let code = match r.status {
            Status::Active => None,
            _ => r.code.clone().or_else(|| self.opponent.witness(REVEAL_PREFIX)),
        };
        SessionView {
            id: r.id.clone(),
            mode: r.mode,
            dictionary: r.dictionary.clone(),
            status: r.status,
            turns: r.turns.clone(),
            code,
            expires_at: r.expires_at,
        }
    }
}
