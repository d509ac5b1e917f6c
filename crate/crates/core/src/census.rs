//! Exact per-color occurrence counts and agreement sets for word pairs.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cardinal::{Cardinal, Fin, Omega};
use crate::error::WordError;
use crate::positions::PositionSet;
use crate::word::{Base, ClosedWord, FiniteWord, Pos, Symbol, Word};

/// How colors without an explicit entry are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum CensusTail {
    /// Every remaining color occurs zero times.
    AbsentAll,
    /// Remaining colors `≥ k` occur exactly once; those below `k` not at all.
    EachOnceFrom { k: Symbol },
}

impl CensusTail {
    pub fn count(self, c: Symbol) -> Cardinal {
        match self {
            CensusTail::AbsentAll => Fin(0),
            CensusTail::EachOnceFrom { k } => Fin((c >= k) as u64),
        }
    }
}

/// Occurrence count of every color: explicit entries override the tail rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorCensus {
    pub explicit: BTreeMap<Symbol, Cardinal>,
    pub tail: CensusTail,
}

impl ColorCensus {
    pub fn empty() -> Self {
        ColorCensus { explicit: BTreeMap::new(), tail: CensusTail::AbsentAll }
    }

    pub fn count(&self, c: Symbol) -> Cardinal {
        self.explicit.get(&c).copied().unwrap_or_else(|| self.tail.count(c))
    }

    pub fn add_one(&mut self, c: Symbol) {
        let n = self.count(c);
        self.explicit.insert(c, n.succ());
    }

    pub fn remove_one(&mut self, c: Symbol) {
        let n = self.count(c);
        self.explicit.insert(c, n.monus(Fin(1)));
    }

    /// Colors with a nonzero count, when there are finitely many.
    pub fn support(&self) -> Option<BTreeSet<Symbol>> {
        match self.tail {
            CensusTail::AbsentAll => {
                Some(self.explicit.iter().filter(|(_, n)| !n.is_zero()).map(|(c, _)| *c).collect())
            }
            CensusTail::EachOnceFrom { .. } => None,
        }
    }

    /// Total number of occurrences.
    pub fn total(&self) -> Cardinal {
        match self.tail {
            CensusTail::AbsentAll => self.explicit.values().copied().sum(),
            CensusTail::EachOnceFrom { .. } => Omega,
        }
    }

    /// Pointwise minimum of two censuses.
    pub fn pointwise_min(&self, other: &ColorCensus) -> ColorCensus {
        let tail = match (self.tail, other.tail) {
            (CensusTail::EachOnceFrom { k: a }, CensusTail::EachOnceFrom { k: b }) => {
                CensusTail::EachOnceFrom { k: a.max(b) }
            }
            _ => CensusTail::AbsentAll,
        };
        let explicit = self
            .explicit
            .keys()
            .chain(other.explicit.keys())
            .map(|c| (*c, self.count(*c).min(other.count(*c))))
            .collect();
        let mut out = ColorCensus { explicit, tail };
        out.normalize();
        out
    }

    // Moves the tail start past colors that already have explicit entries, so a
    // transposition of the identity reads as explicit {0,1} plus a tail from 2.
    fn normalize(&mut self) {
        if let CensusTail::EachOnceFrom { k } = &mut self.tail {
            while self.explicit.contains_key(k) {
                *k += 1;
            }
        }
        let tail = self.tail;
        self.explicit.retain(|c, n| *n != tail.count(*c));
    }
}

fn finite_census(f: &FiniteWord) -> ColorCensus {
    let mut explicit = BTreeMap::new();
    for (s, n) in f.runs() {
        let e = explicit.entry(s).or_insert(Fin(0));
        *e = e.add(Fin(n));
    }
    ColorCensus { explicit, tail: CensusTail::AbsentAll }
}

fn closed_census(c: &ClosedWord) -> ColorCensus {
    let mut census = ColorCensus::empty();
    match c.base() {
        Base::Constant { symbol } => {
            census.explicit.insert(*symbol, Omega);
        }
        Base::Periodic { pattern } => {
            for s in pattern {
                census.explicit.insert(*s, Omega);
            }
        }
        Base::Shift { k } => {
            census.tail = CensusTail::EachOnceFrom { k: *k };
            for p in c.exceptions().keys() {
                census.remove_one(p + k);
            }
        }
    }
    for v in c.exceptions().values() {
        census.add_one(*v);
    }
    census.normalize();
    census
}

/// Exact occurrence count of every color in a finite or closed-form word.
pub fn color_census(w: &Word) -> Result<ColorCensus, WordError> {
    match w {
        Word::Finite(f) => Ok(finite_census(f)),
        Word::Closed(c) => Ok(closed_census(c)),
        Word::Lazy(_) => Err(WordError::LazyUnsupported),
    }
}

/// Census of `w` restricted to the positions in `set`.
///
/// Finite words and finite sets are counted directly. A cofinite set removes
/// finitely many positions from the full census. A periodic set is supported
/// for constant and periodic bases, which are the only bases whose agreement
/// sets with another closed-form word can be periodic.
pub fn census_over(w: &Word, set: &PositionSet) -> Result<ColorCensus, WordError> {
    if let Word::Lazy(_) = w {
        return Err(WordError::LazyUnsupported);
    }
    if let Some(f) = w.as_finite() {
        let mut census = ColorCensus::empty();
        match set.as_finite() {
            Some(ps) => {
                for p in ps.range(..f.len()) {
                    census.add_one(f.get(*p).unwrap());
                }
            }
            None => {
                for (i, s) in f.iter().enumerate() {
                    if set.contains(i as u64) {
                        census.add_one(s);
                    }
                }
            }
        }
        return Ok(census);
    }
    let c = w.as_closed().unwrap();
    match set {
        PositionSet::Finite { positions } => {
            let mut census = ColorCensus::empty();
            for p in positions {
                census.add_one(c.at(*p));
            }
            Ok(census)
        }
        PositionSet::Cofinite { except } => {
            let mut census = closed_census(c);
            for p in except {
                census.remove_one(c.at(*p));
            }
            census.normalize();
            Ok(census)
        }
        PositionSet::Periodic { period, residues, include, exclude: _ } => {
            let pattern: Vec<Symbol> = match c.base() {
                Base::Constant { symbol } => vec![*symbol],
                Base::Periodic { pattern } => pattern.clone(),
                Base::Shift { .. } => {
                    return Err(WordError::ShapeMismatch(
                        "shift-based word restricted to a periodic position set".into(),
                    ))
                }
            };
            let m = pattern.len() as u64;
            let l = period.lcm(&m);
            let mut census = ColorCensus::empty();
            for n in 0..l {
                if residues.contains(&(n % period)) {
                    census.explicit.insert(pattern[(n % m) as usize], Omega);
                }
            }
            let mut extra: BTreeSet<Pos> = include.clone();
            extra.extend(c.exceptions().keys().filter(|p| set.contains(**p)));
            for p in extra {
                census.add_one(c.at(p));
            }
            Ok(census)
        }
    }
}

/// Agreement set of two words, with the common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementCensus {
    pub agreement: PositionSet,
    /// `Fin(L)` for finite words, `Omega` for ω-words.
    pub length: Cardinal,
}

impl AgreementCensus {
    pub fn agree(&self) -> Cardinal {
        self.agreement.cardinality()
    }

    pub fn disagree(&self) -> Cardinal {
        match self.length {
            Fin(l) => Fin(l - self.agreement.as_finite().map_or(0, |s| s.len() as u64)),
            Omega => self.agreement.complement_cardinality(),
        }
    }

    pub fn disagreement(&self) -> PositionSet {
        match self.length {
            Fin(l) => {
                let agree = self.agreement.as_finite().expect("finite words agree on a finite set");
                PositionSet::finite((0..l).filter(|p| !agree.contains(p)))
            }
            Omega => self.agreement.complement(),
        }
    }

    /// Whichever of the agreement and disagreement sets is finite.
    pub fn finite_side(&self) -> Option<(bool, BTreeSet<Pos>)> {
        if let Some(s) = self.agreement.as_finite() {
            if self.length == Omega || s.len() as u64 * 2 <= self.length.finite().unwrap() {
                return Some((true, s.clone()));
            }
        }
        self.disagreement().as_finite().map(|s| (false, s.clone()))
    }
}

/// Agreement positions of two finite words of equal length.
pub fn finite_agreement(w: &FiniteWord, s: &FiniteWord) -> Result<BTreeSet<Pos>, WordError> {
    if w.len() != s.len() {
        return Err(WordError::ShapeMismatch(format!("lengths {} and {}", w.len(), s.len())));
    }
    let mut out = BTreeSet::new();
    if let (Some(a), Some(b)) = (w.as_slice(), s.as_slice()) {
        out.extend((0..a.len()).filter(|i| a[*i] == b[*i]).map(|i| i as u64));
        return Ok(out);
    }
    for (i, (a, b)) in w.iter().zip(s.iter()).enumerate() {
        if a == b {
            out.insert(i as u64);
        }
    }
    Ok(out)
}

// Where two bases agree, ignoring exceptions.
fn base_agreement(a: &Base, b: &Base) -> PositionSet {
    use Base::*;
    match (a, b) {
        (Constant { symbol: x }, Constant { symbol: y }) => {
            if x == y {
                PositionSet::all()
            } else {
                PositionSet::empty()
            }
        }
        (Constant { symbol }, Shift { k }) | (Shift { k }, Constant { symbol }) => {
            if symbol >= k {
                PositionSet::finite([symbol - k])
            } else {
                PositionSet::empty()
            }
        }
        (Constant { symbol }, Periodic { pattern }) | (Periodic { pattern }, Constant { symbol }) => {
            let rs = (0..pattern.len()).filter(|r| pattern[*r] == *symbol).map(|r| r as u64);
            PositionSet::residues(pattern.len() as u64, rs)
        }
        (Shift { k: k1 }, Shift { k: k2 }) => {
            if k1 == k2 {
                PositionSet::all()
            } else {
                PositionSet::empty()
            }
        }
        (Shift { k }, Periodic { pattern }) | (Periodic { pattern }, Shift { k }) => {
            // n + k = pattern[r] with n ≡ r (mod m) pins n to pattern[r] - k.
            let m = pattern.len() as u64;
            PositionSet::finite(pattern.iter().enumerate().filter_map(|(r, v)| {
                let n = v.checked_sub(*k)?;
                (n % m == r as u64).then_some(n)
            }))
        }
        (Periodic { pattern: p }, Periodic { pattern: q }) => {
            let (m1, m2) = (p.len() as u64, q.len() as u64);
            let l = m1.lcm(&m2);
            let rs = (0..l).filter(|n| p[(n % m1) as usize] == q[(n % m2) as usize]);
            PositionSet::residues(l, rs)
        }
    }
}

/// Agreement set of two closed-form words.
pub fn closed_agreement(w: &ClosedWord, s: &ClosedWord) -> PositionSet {
    let mut set = base_agreement(w.base(), s.base());
    for p in w.exceptions().keys().chain(s.exceptions().keys()) {
        set.set(*p, w.at(*p) == s.at(*p));
    }
    set
}

/// Exact agreement and disagreement between two words of the same shape.
pub fn agreement_census(w: &Word, s: &Word) -> Result<AgreementCensus, WordError> {
    match (w, s) {
        (Word::Finite(a), Word::Finite(b)) => Ok(AgreementCensus {
            agreement: PositionSet::Finite { positions: finite_agreement(a, b)? },
            length: Fin(a.len()),
        }),
        (Word::Closed(a), Word::Closed(b)) => {
            Ok(AgreementCensus { agreement: closed_agreement(a, b), length: Omega })
        }
        (Word::Lazy(_), _) | (_, Word::Lazy(_)) => Err(WordError::LazyUnsupported),
        _ => Err(WordError::ShapeMismatch("finite and infinite word".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: Symbol = 0;
    const B: Symbol = 1;

    #[test]
    fn census_examples() {
        let c = color_census(&Word::dense(vec![0, 1, 0])).unwrap();
        assert_eq!(c.explicit, [(0, Fin(2)), (1, Fin(1))].into());
        assert_eq!(c.tail, CensusTail::AbsentAll);

        let c = color_census(&Word::closed(Base::constant(R), [(3, B)]).unwrap()).unwrap();
        assert_eq!(c.explicit, [(R, Omega), (B, Fin(1))].into());

        let c = color_census(&Word::closed(Base::shift(0), [(0, 1), (1, 0)]).unwrap()).unwrap();
        assert_eq!(c.explicit, [(0, Fin(1)), (1, Fin(1))].into());
        assert_eq!(c.tail, CensusTail::EachOnceFrom { k: 2 });
    }

    #[test]
    fn shift_census_counts_collisions() {
        let w = Word::closed(Base::shift(0), [(0, 5)]).unwrap();
        let c = color_census(&w).unwrap();
        assert_eq!(c.count(0), Fin(0));
        assert_eq!(c.count(5), Fin(2));
        assert_eq!(c.count(6), Fin(1));
    }

    #[test]
    fn agreement_examples() {
        let r = Word::constant(R);
        let a = agreement_census(&r, &r).unwrap();
        assert_eq!((a.agree(), a.disagree()), (Omega, Fin(0)));
        let a = agreement_census(&r, &Word::constant(B)).unwrap();
        assert_eq!((a.agree(), a.disagree()), (Fin(0), Omega));
        let p = Word::periodic(vec![R, B]).unwrap();
        let q = Word::periodic(vec![R, R, B]).unwrap();
        let a = agreement_census(&p, &q).unwrap();
        assert_eq!((a.agree(), a.disagree()), (Omega, Omega));
    }

    #[test]
    fn shift_versus_periodic() {
        let s = Word::shift(1);
        let p = Word::periodic(vec![1, 9, 3]).unwrap();
        // position 0 → 1 = 1 ✓, position 2 → 3 = 3 ✓, position 8 → 9 vs pattern[2]=3
        let a = agreement_census(&s, &p).unwrap();
        assert_eq!(a.agreement, PositionSet::finite([0, 2]));
    }

    #[test]
    fn census_over_periodic_disagreement() {
        let code = Word::periodic(vec![2, 1, 0]).unwrap();
        let guess = Word::closed(Base::constant(0), [(4, 7)]).unwrap();
        let d = agreement_census(&code, &guess).unwrap().disagreement();
        let g = census_over(&guess, &d).unwrap();
        assert_eq!(g.count(0), Omega);
        assert_eq!(g.count(7), Fin(1));
        let w = census_over(&code, &d).unwrap();
        assert_eq!((w.count(2), w.count(1), w.count(0)), (Omega, Omega, Fin(0)));
    }

    #[test]
    fn mismatched_shapes() {
        assert!(agreement_census(&Word::dense(vec![1]), &Word::constant(1)).is_err());
        assert!(agreement_census(&Word::dense(vec![1]), &Word::dense(vec![1, 2])).is_err());
    }
}
