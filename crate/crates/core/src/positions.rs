//! Exact descriptors for sets of positions of ω-indexed words.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cardinal::{Cardinal, Fin, Omega};

/// A subset of ℕ that is finite, cofinite, or eventually periodic.
///
/// Periodic sets are kept normalized: `residues` is a nonempty proper subset of
/// `0..period`, `include` only holds positions outside those residue classes and
/// `exclude` only positions inside them. A periodic set is therefore infinite and
/// co-infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PositionSet {
    Finite { positions: BTreeSet<u64> },
    Cofinite { except: BTreeSet<u64> },
    Periodic {
        period: u64,
        residues: BTreeSet<u64>,
        include: BTreeSet<u64>,
        exclude: BTreeSet<u64>,
    },
}

impl PositionSet {
    pub fn empty() -> Self {
        PositionSet::Finite { positions: BTreeSet::new() }
    }

    pub fn all() -> Self {
        PositionSet::Cofinite { except: BTreeSet::new() }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(it: I) -> Self {
        PositionSet::Finite { positions: it.into_iter().collect() }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(it: I) -> Self {
        PositionSet::Cofinite { except: it.into_iter().collect() }
    }

    /// `{n : n mod period ∈ residues}`, normalized.
    pub fn residues<I: IntoIterator<Item = u64>>(period: u64, residues: I) -> Self {
        assert!(period > 0, "period must be positive");
        let residues: BTreeSet<u64> = residues.into_iter().map(|r| r % period).collect();
        Self::normalized(period, residues, BTreeSet::new(), BTreeSet::new())
    }

    fn normalized(
        period: u64,
        residues: BTreeSet<u64>,
        include: BTreeSet<u64>,
        exclude: BTreeSet<u64>,
    ) -> Self {
        if residues.is_empty() {
            return PositionSet::Finite { positions: include };
        }
        if residues.len() as u64 == period {
            return PositionSet::Cofinite { except: exclude };
        }
        // Reduce to the minimal period.
        let mut best = period;
        for d in 1..period {
            if period % d == 0 && residues.iter().all(|r| {
                let base = r % d;
                (0..period / d).all(|j| residues.contains(&(base + j * d)))
            }) {
                best = d;
                break;
            }
        }
        let residues = residues.into_iter().filter(|r| *r < best).collect();
        PositionSet::Periodic { period: best, residues, include, exclude }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            PositionSet::Finite { positions } => positions.contains(&n),
            PositionSet::Cofinite { except } => !except.contains(&n),
            PositionSet::Periodic { period, residues, include, exclude } => {
                if residues.contains(&(n % period)) {
                    !exclude.contains(&n)
                } else {
                    include.contains(&n)
                }
            }
        }
    }

    pub fn cardinality(&self) -> Cardinal {
        match self {
            PositionSet::Finite { positions } => Fin(positions.len() as u64),
            _ => Omega,
        }
    }

    /// Size of ℕ minus this set.
    pub fn complement_cardinality(&self) -> Cardinal {
        match self {
            PositionSet::Cofinite { except } => Fin(except.len() as u64),
            _ => Omega,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PositionSet::Finite { .. })
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self, PositionSet::Cofinite { .. })
    }

    /// Finite member list, if the set is finite.
    pub fn as_finite(&self) -> Option<&BTreeSet<u64>> {
        match self {
            PositionSet::Finite { positions } => Some(positions),
            _ => None,
        }
    }

    pub fn complement(&self) -> PositionSet {
        match self {
            PositionSet::Finite { positions } => PositionSet::Cofinite { except: positions.clone() },
            PositionSet::Cofinite { except } => PositionSet::Finite { positions: except.clone() },
            PositionSet::Periodic { period, residues, include, exclude } => {
                let residues = (0..*period).filter(|r| !residues.contains(r)).collect();
                PositionSet::Periodic {
                    period: *period,
                    residues,
                    include: exclude.clone(),
                    exclude: include.clone(),
                }
            }
        }
    }

    /// Returns a copy with membership of `n` forced to `member`.
    pub fn with(mut self, n: u64, member: bool) -> PositionSet {
        self.set(n, member);
        self
    }

    pub fn set(&mut self, n: u64, member: bool) {
        match self {
            PositionSet::Finite { positions } => {
                if member {
                    positions.insert(n);
                } else {
                    positions.remove(&n);
                }
            }
            PositionSet::Cofinite { except } => {
                if member {
                    except.remove(&n);
                } else {
                    except.insert(n);
                }
            }
            PositionSet::Periodic { period, residues, include, exclude } => {
                if residues.contains(&(n % *period)) {
                    if member {
                        exclude.remove(&n);
                    } else {
                        exclude.insert(n);
                    }
                } else if member {
                    include.insert(n);
                } else {
                    include.remove(&n);
                }
            }
        }
    }

    // (period, residues, corrections) view used by the set operations.
    fn parts(&self) -> (u64, BTreeSet<u64>, Vec<u64>) {
        match self {
            PositionSet::Finite { positions } => (1, BTreeSet::new(), positions.iter().copied().collect()),
            PositionSet::Cofinite { except } => (1, [0].into(), except.iter().copied().collect()),
            PositionSet::Periodic { period, residues, include, exclude } => (
                *period,
                residues.clone(),
                include.iter().chain(exclude.iter()).copied().collect(),
            ),
        }
    }

    fn combine(&self, other: &PositionSet, op: impl Fn(bool, bool) -> bool) -> PositionSet {
        let (p1, r1, c1) = self.parts();
        let (p2, r2, c2) = other.parts();
        let period = p1.lcm(&p2);
        let residues: BTreeSet<u64> = (0..period)
            .filter(|r| op(r1.contains(&(r % p1)), r2.contains(&(r % p2))))
            .collect();
        let mut include = BTreeSet::new();
        let mut exclude = BTreeSet::new();
        for n in c1.into_iter().chain(c2) {
            let member = op(self.contains(n), other.contains(n));
            let generic = residues.contains(&(n % period));
            if member && !generic {
                include.insert(n);
            } else if !member && generic {
                exclude.insert(n);
            }
        }
        Self::normalized(period, residues, include, exclude)
    }

    pub fn union(&self, other: &PositionSet) -> PositionSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &PositionSet) -> PositionSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &PositionSet) -> PositionSet {
        self.combine(other, |a, b| a && !b)
    }

    /// Least member `≥ from`, if any.
    pub fn first_from(&self, from: u64) -> Option<u64> {
        match self {
            PositionSet::Finite { positions } => positions.range(from..).next().copied(),
            _ => (from..).find(|n| self.contains(*n)),
        }
    }

    /// Members below `bound`, ascending.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        match self {
            PositionSet::Finite { positions } => positions.range(..bound).copied().collect(),
            _ => (0..bound).filter(|n| self.contains(*n)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_normalization() {
        assert_eq!(PositionSet::residues(4, [0, 2]), PositionSet::residues(2, [0]));
        assert_eq!(PositionSet::residues(3, [0, 1, 2]), PositionSet::all());
        assert_eq!(PositionSet::residues(5, []), PositionSet::empty());
    }

    #[test]
    fn algebra_matches_pointwise() {
        let a = PositionSet::residues(2, [0]).with(3, true).with(4, false);
        let b = PositionSet::residues(3, [1]).with(1, false);
        let c = PositionSet::finite([0, 7, 9]);
        for (x, y) in [(&a, &b), (&b, &c), (&a, &c), (&c, &c.complement())] {
            let u = x.union(y);
            let i = x.intersection(y);
            let d = x.difference(y);
            for n in 0..200 {
                assert_eq!(u.contains(n), x.contains(n) || y.contains(n));
                assert_eq!(i.contains(n), x.contains(n) && y.contains(n));
                assert_eq!(d.contains(n), x.contains(n) && !y.contains(n));
            }
        }
        assert!(c.union(&c.complement()).is_cofinite());
        assert_eq!(c.union(&c.complement()).complement_cardinality(), Fin(0));
    }

    #[test]
    fn complement_is_pointwise() {
        let a = PositionSet::residues(3, [0, 2]).with(4, true).with(6, false);
        let ac = a.complement();
        for n in 0..100 {
            assert_ne!(a.contains(n), ac.contains(n));
        }
        assert_eq!(a.cardinality(), Omega);
        assert_eq!(ac.cardinality(), Omega);
    }
}
