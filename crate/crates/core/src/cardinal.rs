//! Cardinal numbers in ℕ ∪ {ω} and ordinal stages of the form ω·q + r.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A count that is either a natural number or countably infinite.
///
/// The derived order puts every `Fin(n)` below `Omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Fin(u64),
    Omega,
}

pub use Cardinal::{Fin, Omega};

impl Cardinal {
    pub const ZERO: Cardinal = Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == Fin(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Fin(n) => Some(n),
            Omega => None,
        }
    }

    /// Cardinal addition; ω absorbs everything.
    pub fn add(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a + b),
            _ => Omega,
        }
    }

    pub fn min(self, other: Cardinal) -> Cardinal {
        Ord::min(self, other)
    }

    pub fn max(self, other: Cardinal) -> Cardinal {
        Ord::max(self, other)
    }

    /// Truncated subtraction. `ω ∸ Fin(n) = ω`, while anything minus ω is zero:
    /// an infinite demand is matched exactly by an infinite supply.
    pub fn monus(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a.saturating_sub(b)),
            (Omega, Fin(_)) => Omega,
            (_, Omega) => Fin(0),
        }
    }

    pub fn succ(self) -> Cardinal {
        self.add(Fin(1))
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, rhs: Cardinal) -> Cardinal {
        Cardinal::add(self, rhs)
    }
}

impl Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Fin(0), Cardinal::add)
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Fin(n)
    }
}

impl From<usize> for Cardinal {
    fn from(n: usize) -> Self {
        Fin(n as u64)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(n) => write!(f, "{n}"),
            Omega => f.write_str("ω"),
        }
    }
}

// JSON form: a bare integer, or the string "omega".
impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Fin(n) => s.serialize_u64(*n),
            Omega => s.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Fin(n)),
            Raw::Str(s) if s == "omega" || s == "ω" => Ok(Omega),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected an integer or \"omega\", got {s:?}"
            ))),
        }
    }
}

/// The ordinal ω·q + r. Stage ω itself is `OrdinalStage::OMEGA`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrdinalStage {
    #[serde(rename = "omegaTimes")]
    pub limit_part: u64,
    #[serde(rename = "plus")]
    pub finite_part: u64,
}

impl OrdinalStage {
    pub const OMEGA: OrdinalStage = OrdinalStage { limit_part: 1, finite_part: 0 };

    pub const fn finite(r: u64) -> Self {
        OrdinalStage { limit_part: 0, finite_part: r }
    }

    pub const fn new(limit_part: u64, finite_part: u64) -> Self {
        OrdinalStage { limit_part, finite_part }
    }

    pub fn is_finite(&self) -> bool {
        self.limit_part == 0
    }

    pub fn succ(self) -> Self {
        OrdinalStage { finite_part: self.finite_part + 1, ..self }
    }
}

impl PartialOrd for OrdinalStage {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalStage {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.limit_part, self.finite_part).cmp(&(other.limit_part, other.finite_part))
    }
}

impl fmt::Display for OrdinalStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.limit_part, self.finite_part) {
            (0, r) => write!(f, "{r}"),
            (1, 0) => f.write_str("ω"),
            (1, r) => write!(f, "ω+{r}"),
            (q, 0) => write!(f, "ω·{q}"),
            (q, r) => write!(f, "ω·{q}+{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_examples() {
        assert_eq!(Fin(2).add(Omega), Omega);
        assert_eq!(Omega.monus(Omega), Fin(0));
        assert_eq!(Fin(3).min(Omega), Fin(3));
        assert_eq!(Fin(3).monus(Omega), Fin(0));
        assert_eq!(Omega.monus(Fin(7)), Omega);
        assert_eq!(Fin(2).monus(Fin(5)), Fin(0));
        assert_eq!(Fin(5).monus(Fin(2)), Fin(3));
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&Omega).unwrap(), "\"omega\"");
        assert_eq!(serde_json::to_string(&Fin(4)).unwrap(), "4");
        assert_eq!(serde_json::from_str::<Cardinal>("\"omega\"").unwrap(), Omega);
        assert_eq!(serde_json::from_str::<Cardinal>("12").unwrap(), Fin(12));
        assert!(serde_json::from_str::<Cardinal>("\"many\"").is_err());
    }

    #[test]
    fn stage_order() {
        assert!(OrdinalStage::finite(1_000_000) < OrdinalStage::OMEGA);
        assert!(OrdinalStage::OMEGA < OrdinalStage::new(1, 1));
        assert!(OrdinalStage::new(1, 9) < OrdinalStage::new(2, 0));
        assert_eq!(OrdinalStage::new(2, 3).to_string(), "ω·2+3");
    }

    fn card() -> impl Strategy<Value = Cardinal> {
        prop_oneof![4 => (0u64..50).prop_map(Fin), 1 => Just(Omega)]
    }

    proptest! {
        #[test]
        fn add_and_min_are_commutative_and_associative(a in card(), b in card(), c in card()) {
            prop_assert_eq!(a.add(b), b.add(a));
            prop_assert_eq!(a.add(b).add(c), a.add(b.add(c)));
            prop_assert_eq!(a.min(b), b.min(a));
            prop_assert_eq!(a.min(b).min(c), a.min(b.min(c)));
        }

        #[test]
        fn monus_refills_to_the_larger(a in card(), b in card()) {
            if a <= b {
                // a ⊕ (b ∸ a) = b, except that ω ∸ ω collapses to zero.
                let expect = if a == Omega { Omega } else { b };
                prop_assert_eq!(a.add(b.monus(a)), expect);
            }
        }
    }
}
