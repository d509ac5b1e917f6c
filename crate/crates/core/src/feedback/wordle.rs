use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cardinal::{Cardinal, Fin};
use crate::census::{census_over, closed_agreement, ColorCensus};
use crate::error::WordError;
use crate::positions::PositionSet;
use crate::word::{FiniteWord, Pos, Symbol, Word};

/// One cell of Wordle feedback. The order gray < yellow < green is used for
/// lexicographic tie-breaking between patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tile {
    Gray,
    Yellow,
    Green,
}

/// Green/yellow/gray feedback. Finite words get one tile per cell. For
/// closed-form words the greens are a position-set descriptor; yellow cells are
/// listed only when the disagreement set is finite, and per-letter yellow
/// counts are always given. Every other cell is gray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TricolorFeedback {
    Finite(Vec<Tile>),
    Infinite {
        green: PositionSet,
        yellow_positions: Option<BTreeSet<Pos>>,
        yellow_counts: ColorCensus,
    },
}

impl TricolorFeedback {
    pub fn is_win(&self) -> bool {
        match self {
            TricolorFeedback::Finite(tiles) => tiles.iter().all(|t| *t == Tile::Green),
            TricolorFeedback::Infinite { green, .. } => *green == PositionSet::all(),
        }
    }

    pub fn tiles(&self) -> Option<&[Tile]> {
        match self {
            TricolorFeedback::Finite(t) => Some(t),
            TricolorFeedback::Infinite { .. } => None,
        }
    }

    pub fn green(&self) -> PositionSet {
        match self {
            TricolorFeedback::Finite(tiles) => PositionSet::finite(positions_of(tiles, Tile::Green)),
            TricolorFeedback::Infinite { green, .. } => green.clone(),
        }
    }

    pub fn is_green(&self, p: Pos) -> bool {
        match self {
            TricolorFeedback::Finite(tiles) => tiles.get(p as usize) == Some(&Tile::Green),
            TricolorFeedback::Infinite { green, .. } => green.contains(p),
        }
    }

    pub fn green_count(&self) -> Cardinal {
        match self {
            TricolorFeedback::Finite(tiles) => Fin(tiles.iter().filter(|t| **t == Tile::Green).count() as u64),
            TricolorFeedback::Infinite { green, .. } => green.cardinality(),
        }
    }

    /// Yellow count of a letter, reported for closed-form feedback.
    pub fn yellow_count(&self, letter: Symbol) -> Option<Cardinal> {
        match self {
            TricolorFeedback::Infinite { yellow_counts, .. } => Some(yellow_counts.count(letter)),
            TricolorFeedback::Finite(_) => None,
        }
    }

    pub fn yellow_positions(&self) -> Option<BTreeSet<Pos>> {
        match self {
            TricolorFeedback::Finite(tiles) => Some(positions_of(tiles, Tile::Yellow).collect()),
            TricolorFeedback::Infinite { yellow_positions, .. } => yellow_positions.clone(),
        }
    }
}

fn positions_of(tiles: &[Tile], t: Tile) -> impl Iterator<Item = Pos> + '_ {
    tiles.iter().enumerate().filter(move |(_, x)| **x == t).map(|(i, _)| i as Pos)
}

/// Tiles for two finite words of equal length. Within each letter, the
/// leftmost misplaced occurrences are the ones marked yellow.
pub fn wordle_tiles(code: &FiniteWord, guess: &FiniteWord) -> Result<Vec<Tile>, WordError> {
    if code.len() != guess.len() {
        return Err(WordError::ShapeMismatch(format!("lengths {} and {}", code.len(), guess.len())));
    }
    let mut tiles = vec![Tile::Gray; code.len() as usize];
    let mut avail: HashMap<Symbol, u64> = HashMap::new();
    for (i, (c, g)) in code.iter().zip(guess.iter()).enumerate() {
        if c == g {
            tiles[i] = Tile::Green;
        } else {
            *avail.entry(c).or_default() += 1;
        }
    }
    if avail.is_empty() {
        return Ok(tiles);
    }
    for (i, g) in guess.iter().enumerate() {
        if tiles[i] == Tile::Green {
            continue;
        }
        if let Some(n) = avail.get_mut(&g) {
            if *n > 0 {
                *n -= 1;
                tiles[i] = Tile::Yellow;
            }
        }
    }
    Ok(tiles)
}

/// Wordle feedback for `guess` against `code`.
///
/// The supply of a letter for yellows is its number of occurrences in the code
/// at non-green cells.
pub fn wordle_feedback(code: &Word, guess: &Word) -> Result<TricolorFeedback, WordError> {
    match (code, guess) {
        (Word::Finite(c), Word::Finite(g)) => Ok(TricolorFeedback::Finite(wordle_tiles(c, g)?)),
        (Word::Closed(c), Word::Closed(g)) => {
            let green = closed_agreement(c, g);
            let off = green.complement();
            let gc = census_over(guess, &off)?;
            let wc = census_over(code, &off)?;
            let yellow_counts = gc.pointwise_min(&wc);
            let yellow_positions = off.as_finite().map(|ps| {
                let mut avail: BTreeMap<Symbol, u64> =
                    wc.explicit.iter().filter_map(|(s, n)| Some((*s, n.finite()?))).collect();
                ps.iter()
                    .copied()
                    .filter(|p| match avail.get_mut(&g.at(*p)) {
                        Some(n) if *n > 0 => {
                            *n -= 1;
                            true
                        }
                        _ => false,
                    })
                    .collect()
            });
            Ok(TricolorFeedback::Infinite { green, yellow_positions, yellow_counts })
        }
        (Word::Lazy(_), _) | (_, Word::Lazy(_)) => Err(WordError::LazyUnsupported),
        _ => Err(WordError::ShapeMismatch("finite and infinite word".into())),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct TricolorJson {
    green: GreenJson,
    yellow: YellowJson,
    gray_implied: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tiles: Option<Vec<Tile>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GreenJson {
    Positions(Vec<Pos>),
    Set(PositionSet),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum YellowJson {
    Positions(Vec<Pos>),
    Counts {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        positions: Option<Vec<Pos>>,
        counts: ColorCensus,
    },
}

impl Serialize for TricolorFeedback {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let json = match self {
            TricolorFeedback::Finite(tiles) => TricolorJson {
                green: GreenJson::Positions(positions_of(tiles, Tile::Green).collect()),
                yellow: YellowJson::Positions(positions_of(tiles, Tile::Yellow).collect()),
                gray_implied: true,
                tiles: Some(tiles.clone()),
            },
            TricolorFeedback::Infinite { green, yellow_positions, yellow_counts } => TricolorJson {
                green: GreenJson::Set(green.clone()),
                yellow: YellowJson::Counts {
                    positions: yellow_positions.as_ref().map(|p| p.iter().copied().collect()),
                    counts: yellow_counts.clone(),
                },
                gray_implied: true,
                tiles: None,
            },
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TricolorFeedback {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let json = TricolorJson::deserialize(d)?;
        if let Some(tiles) = json.tiles {
            return Ok(TricolorFeedback::Finite(tiles));
        }
        let green = match json.green {
            GreenJson::Set(s) => s,
            GreenJson::Positions(_) => return Err(D::Error::custom("finite feedback needs tiles")),
        };
        match json.yellow {
            YellowJson::Counts { positions, counts } => Ok(TricolorFeedback::Infinite {
                green,
                yellow_positions: positions.map(|p| p.into_iter().collect()),
                yellow_counts: counts,
            }),
            YellowJson::Positions(_) => Err(D::Error::custom("infinite feedback needs yellow counts")),
        }
    }
}
