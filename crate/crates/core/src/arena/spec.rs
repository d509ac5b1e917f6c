use thiserror::Error;

use crate::dictionary::{Dictionary, DictionaryConfig};
use crate::error::DictError;
use crate::feedback::GameMode;
use crate::strategy::{
    DupDecoder, Enumeration, FreshSymbol, GreenProbe, InjectiveDecoder, Interleave, MastermindProbe, ProbeError,
    Sequential, Strategy,
};

#[derive(Debug, Error)]
pub enum StrategySpecError {
    #[error("unknown strategy `{0}`")]
    Unknown(String),
    #[error("strategy `{0}` needs {1}")]
    Needs(String, &'static str),
    #[error(transparent)]
    Dict(#[from] DictError),
    #[error(transparent)]
    Probe(#[from] ProbeError),
}

/// Builds a strategy from its command-line name:
/// `fresh`, `enum`, `probe:<N>`, `decoder-dup`, `decoder-inj`, or
/// `interleave:<part>,<part>,...` / `sequential:...` where each part is a
/// name optionally followed by `@<dictionary descriptor>`.
pub fn build_strategy(spec: &str, dict: &Dictionary, mode: GameMode) -> Result<Box<dyn Strategy>, StrategySpecError> {
    let needs = |what| StrategySpecError::Needs(spec.to_string(), what);
    let colors = || dict.alphabet().size().map(|n| n as u64).ok_or_else(|| needs("a finite alphabet"));
    let len = || dict.length().map(|n| n as usize).ok_or_else(|| needs("finite words"));
    if let Some(parts) = spec.strip_prefix("interleave:") {
        return Ok(Box::new(Interleave::new(build_parts(parts, dict, mode)?)));
    }
    if let Some(parts) = spec.strip_prefix("sequential:") {
        return Ok(Box::new(Sequential::new(build_parts(parts, dict, mode)?)));
    }
    if let Some(n) = spec.strip_prefix("probe:") {
        let window: u64 = n.parse().map_err(|_| needs("a numeric window"))?;
        return Ok(match mode {
            GameMode::Wordle => Box::new(GreenProbe::new(dict.clone(), window)?),
            _ => Box::new(MastermindProbe::new((0..colors()?).collect(), window)),
        });
    }
    Ok(match spec {
        "fresh" => Box::new(FreshSymbol::new(dict.clone())?),
        "enum" => Box::new(Enumeration::new(dict.clone())),
        "decoder-dup" => Box::new(DupDecoder::new(len()?, colors()?)),
        "decoder-inj" => Box::new(InjectiveDecoder::new(len()?, colors()?)),
        other => return Err(StrategySpecError::Unknown(other.to_string())),
    })
}

fn build_parts(parts: &str, dict: &Dictionary, mode: GameMode) -> Result<Vec<Box<dyn Strategy>>, StrategySpecError> {
    parts
        .split(',')
        .map(|part| match part.split_once('@') {
            Some((name, descriptor)) => {
                let d = DictionaryConfig::parse(descriptor)?.build()?;
                build_strategy(name, &d, mode)
            }
            None => build_strategy(part, dict, mode),
        })
        .collect()
}
