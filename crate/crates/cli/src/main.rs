use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use codebreak::adversary::{Adversary, AdversaryKind, Codemaker};
use codebreak::alphabet::Alphabet;
use codebreak::arena::experiments::{self, Scale, EXPERIMENTS};
use codebreak::arena::{build_strategy, is_winning_set, replay_check, run_match, WordSpace};
use codebreak::dictionary::{Dictionary, DictionaryConfig};
use codebreak::feedback::{brute_force_rearrangement, mastermind_feedback, Feedback, GameMode};
use codebreak::{Cardinal, OrdinalStage, Word};

#[derive(Parser)]
#[command(name = "codebreak", version, about = "Wordle, Nerdle, Mastermind and their infinite variants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play against a hidden codeword or an adversary, one guess per line.
    Play {
        /// Dictionary descriptor: complete:<letters>:<len>, nerdle:<len>, or a word file.
        #[arg(long)]
        dict: String,
        #[arg(long, default_value = "wordle")]
        mode: GameMode,
        /// Adversary instead of a hidden codeword (absurdle, promise, madster-dup, ...).
        #[arg(long)]
        adversary: Option<String>,
        /// Seed for drawing the hidden codeword.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a strategy against a codeword or an adversary and print the transcript.
    Simulate {
        /// fresh, enum, probe:<N>, decoder-dup, decoder-inj, interleave:<parts>, sequential:<parts>.
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        dict: String,
        #[arg(long, default_value = "wordle")]
        mode: GameMode,
        #[arg(long, conflicts_with = "code")]
        adversary: Option<String>,
        /// File holding the codeword, as text over the alphabet or word JSON.
        #[arg(long)]
        code: Option<PathBuf>,
        /// Last stage played: a number, `omega`, or `omega+<n>`.
        #[arg(long, default_value = "1000")]
        horizon: String,
        /// Write the JSON Lines transcript here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named experiment, or `all`.
    Verify {
        name: String,
        /// Smaller instance counts.
        #[arg(long)]
        quick: bool,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        oracle: Oracle,
    },
    /// Serve the HTTP session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = 3600)]
        ttl_seconds: u64,
        /// Directory for session files; sessions stay in memory only without it.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Whether the guesses tell every codeword of the space apart.
    WinningSet {
        /// complete:<colors>:<len> or injective:<colors>:<len>.
        #[arg(long)]
        space: String,
        /// Guesses as comma-separated color numbers, e.g. 0,1,2.
        #[arg(long = "guess", required = true)]
        guesses: Vec<String>,
        #[arg(long, default_value = "mastermind")]
        mode: GameMode,
    },
    /// Exhaustive (rho, epsilon) for two finite words, checked against the feedback rule.
    Rearrange {
        #[arg(long)]
        code: String,
        #[arg(long)]
        guess: String,
    },
}

type Res<T> = Result<T, String>;

fn dictionary(descriptor: &str) -> Res<Dictionary> {
    DictionaryConfig::parse(descriptor).and_then(|c| c.build()).map_err(|e| e.to_string())
}

fn parse_horizon(text: &str) -> Res<OrdinalStage> {
    let bad = || format!("bad horizon {text:?}");
    if let Some(rest) = text.strip_prefix("omega") {
        let plus = match rest.strip_prefix('+') {
            Some(n) => n.parse().map_err(|_| bad())?,
            None if rest.is_empty() => 0,
            None => return Err(bad()),
        };
        return Ok(OrdinalStage::new(1, plus));
    }
    text.parse().map(OrdinalStage::finite).map_err(|_| bad())
}

fn parse_word(text: &str, alphabet: &Alphabet) -> Res<Word> {
    let text = text.trim();
    if text.starts_with('{') || text.starts_with('[') {
        return serde_json::from_str(text).map_err(|e| e.to_string());
    }
    alphabet.parse_word(text).map(Word::dense).map_err(|e| e.to_string())
}

fn show_feedback(f: &Feedback) -> String {
    match f {
        Feedback::Tricolor(t) => match t.tiles() {
            Some(tiles) => tiles
                .iter()
                .map(|t| match t {
                    codebreak::feedback::Tile::Green => 'G',
                    codebreak::feedback::Tile::Yellow => 'Y',
                    codebreak::feedback::Tile::Gray => '.',
                })
                .collect(),
            None => serde_json::to_string(f).unwrap_or_default(),
        },
        Feedback::Mastermind(m) => m.to_string(),
        Feedback::Simplified(s) => format!("({}, {})", s.correct, s.incorrect),
    }
}

fn opponent(adversary: Option<&str>, dict: &Dictionary, mode: GameMode, code: Option<Word>) -> Res<Box<dyn Adversary>> {
    match (adversary, code) {
        (Some(a), _) => {
            let kind: AdversaryKind = a.parse().map_err(|e: codebreak::adversary::AdversaryError| e.to_string())?;
            kind.build(Some(dict)).map_err(|e| e.to_string())
        }
        (None, Some(code)) => Ok(Box::new(Codemaker::new(code, mode))),
        (None, None) => Err("give --adversary or --code".into()),
    }
}

fn play(dict: &str, mode: GameMode, adversary: Option<&str>, seed: u64) -> Res<bool> {
    let d = dictionary(dict)?;
    let code = match adversary {
        Some(_) => None,
        None => {
            let n = d.size().ok_or("the dictionary is too large to draw from")?;
            Some(d.enumerate(seed % n.max(1)).map_err(|e| e.to_string())?)
        }
    };
    let mut opp = opponent(adversary, &d, mode, code)?;
    let alphabet = d.alphabet();
    let stdin = std::io::stdin();
    let mut stage = 0;
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        let word = match parse_word(&line, &alphabet) {
            Ok(w) if d.contains(&w).unwrap_or(false) => w,
            Ok(_) => {
                println!("not in the dictionary");
                continue;
            }
            Err(e) => {
                println!("{e}");
                continue;
            }
        };
        let f = opp.answer(&word).map_err(|e| e.to_string())?;
        stage += 1;
        println!("{stage}: {}", show_feedback(&f));
        if f.is_win(word.len().map_or(Cardinal::Omega, Cardinal::Fin)) {
            println!("solved in {stage}");
            return Ok(true);
        }
    }
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    strategy: &str,
    dict: &str,
    mode: GameMode,
    adversary: Option<&str>,
    code: Option<&PathBuf>,
    horizon: &str,
    out: Option<&PathBuf>,
) -> Res<bool> {
    let d = dictionary(dict)?;
    let code = match code {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Some(parse_word(&text, &d.alphabet())?)
        }
        None => None,
    };
    let mut opp = opponent(adversary, &d, mode, code.clone())?;
    let mut s = build_strategy(strategy, &d, opp.mode()).map_err(|e| e.to_string())?;
    let t = run_match(s.as_mut(), opp.as_mut(), Some(&d), parse_horizon(horizon)?).map_err(|e| e.to_string())?;
    match out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| e.to_string())?;
            t.write_jsonl(std::io::BufWriter::new(file)).map_err(|e| e.to_string())?;
        }
        None => t.write_jsonl(std::io::stdout().lock()).map_err(|e| e.to_string())?,
    }
    let replayed = match &code {
        Some(c) => replay_check(&t, c),
        None => {
            // Prefix witnesses of ω-games replay only under Wordle feedback.
            let checkable = t.mode == GameMode::Wordle || t.turns.iter().all(|turn| turn.guess.len().is_some());
            match opp.witness(64) {
                Some(w) if checkable => replay_check(&t, &w),
                _ => true,
            }
        }
    };
    eprintln!("{} guesses, outcome {:?}, replay {}", t.guesses(), t.outcome, if replayed { "ok" } else { "FAILED" });
    Ok(replayed)
}

fn verify(name: &str, quick: bool) -> Res<bool> {
    let scale = if quick { Scale::Quick } else { Scale::Full };
    let names: Vec<&str> = match name {
        "all" => EXPERIMENTS.iter().map(|(n, _)| *n).collect(),
        n => vec![n],
    };
    let mut all = true;
    for n in names {
        let report = experiments::run(n, scale).ok_or_else(|| {
            let known: Vec<&str> = EXPERIMENTS.iter().map(|(n, _)| *n).collect();
            format!("unknown experiment {n:?}; known: {}", known.join(", "))
        })?;
        println!("{}", report.line());
        let _ = std::io::stdout().flush();
        all &= report.passed;
    }
    Ok(all)
}

fn space(text: &str) -> Res<WordSpace> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums = |a: &str, b: &str| -> Res<(u64, usize)> {
        Ok((a.parse().map_err(|_| "bad color count")?, b.parse().map_err(|_| "bad length")?))
    };
    match parts[..] {
        ["complete", c, l] => nums(c, l).map(|(colors, len)| WordSpace::Complete { colors, len }),
        ["injective", c, l] => nums(c, l).map(|(colors, len)| WordSpace::Injective { colors, len }),
        _ => Err(format!("bad space {text:?}; expected complete:<colors>:<len> or injective:<colors>:<len>")),
    }
}

fn oracle(o: &Oracle) -> Res<bool> {
    let colors = Alphabet::countable();
    match o {
        Oracle::WinningSet { space: s, guesses, mode } => {
            let set = guesses.iter().map(|g| parse_word(g, &colors)).collect::<Res<Vec<_>>>()?;
            let winning = is_winning_set(&set, &space(s)?, *mode).map_err(|e| e.to_string())?;
            println!("{}", if winning { "winning" } else { "not winning" });
            Ok(true)
        }
        Oracle::Rearrange { code, guess } => {
            let (c, g) = (parse_word(code, &colors)?, parse_word(guess, &colors)?);
            let (cf, gf) = (c.as_finite().ok_or("finite words only")?, g.as_finite().ok_or("finite words only")?);
            let (rho, eps) = brute_force_rearrangement(cf, gf).map_err(|e| e.to_string())?;
            let f = mastermind_feedback(&c, &g).map_err(|e| e.to_string())?;
            println!("brute force: rho {rho}, epsilon {eps}; feedback {f}");
            Ok(f.rho == Cardinal::Fin(rho) && f.epsilon == Cardinal::Fin(eps))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Play { dict, mode, adversary, seed } => play(dict, *mode, adversary.as_deref(), *seed),
        Command::Simulate { strategy, dict, mode, adversary, code, horizon, out } => {
            simulate(strategy, dict, *mode, adversary.as_deref(), code.as_ref(), horizon, out.as_ref())
        }
        Command::Verify { name, quick } => verify(name, *quick),
        Command::Oracle { oracle: o } => oracle(o),
        Command::Serve { port, ttl_seconds, data_dir } => tokio::runtime::Runtime::new()
            .map_err(|e| e.to_string())
            .and_then(|rt| rt.block_on(codebreak_service::serve(*port, *ttl_seconds, data_dir.clone())).map_err(|e| e.to_string()))
            .map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
