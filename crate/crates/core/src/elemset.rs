//! Finite sets of element indices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of small non-negative integers stored as a bitset.
///
/// Trailing zero words are always trimmed, so two sets are equal exactly when
/// their members are. The total order is canonical: smaller sets come first,
/// and sets of equal size compare lexicographically by their ascending member
/// lists. That order is what fixes the numbering of flats and lattice
/// elements everywhere else in the crate.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: SmallVec<[u64; 2]>,
}

impl ElemSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        let mut words: SmallVec<[u64; 2]> = SmallVec::from_elem(u64::MAX, n / WORD);
        if !n.is_multiple_of(WORD) {
            words.push((1u64 << (n % WORD)) - 1);
        }
        ElemSet { words }
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / WORD, x % WORD);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let (w, b) = (x / WORD, x % WORD);
        if w >= self.words.len() || self.words[w] & (1 << b) == 0 {
            return false;
        }
        self.words[w] &= !(1 << b);
        self.trim();
        true
    }

    pub fn contains(&self, x: usize) -> bool {
        let (w, b) = (x / WORD, x % WORD);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * WORD + (WORD - w.leading_zeros() as usize),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.len() <= other.words.len() && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &ElemSet) -> bool {
        other.is_subset(self)
    }

    pub fn is_proper_subset(&self, other: &ElemSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        ElemSet { words }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut out = ElemSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out.trim();
        out
    }

    pub fn with(&self, x: usize) -> ElemSet {
        let mut out = self.clone();
        out.insert(x);
        out
    }

    pub fn without(&self, x: usize) -> ElemSet {
        let mut out = self.clone();
        out.remove(x);
        out
    }

    /// Applies `f` to every member.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> ElemSet {
        self.iter().map(f).collect()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for ElemSet {
    fn from(xs: [usize; N]) -> Self {
        xs.into_iter().collect()
    }
}

impl From<&[usize]> for ElemSet {
    fn from(xs: &[usize]) -> Self {
        xs.iter().copied().collect()
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl BitOr for &ElemSet {
    type Output = ElemSet;
    fn bitor(self, rhs: &ElemSet) -> ElemSet {
        self.union(rhs)
    }
}

impl BitAnd for &ElemSet {
    type Output = ElemSet;
    fn bitand(self, rhs: &ElemSet) -> ElemSet {
        self.intersection(rhs)
    }
}

impl Sub for &ElemSet {
    type Output = ElemSet;
    fn sub(self, rhs: &ElemSet) -> ElemSet {
        self.difference(rhs)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Ascending iterator over the members of an [`ElemSet`].
pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + b);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn basic_membership() {
        let mut s = ElemSet::new();
        assert!(s.is_empty());
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(70);
        assert_eq!(s.to_vec(), vec![3, 70]);
        assert_eq!(s.bound(), 71);
        assert!(s.remove(70));
        assert_eq!(s, ElemSet::singleton(3));
        assert_eq!(ElemSet::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(ElemSet::full(0), ElemSet::new());
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v = [
            ElemSet::from([0, 1]),
            ElemSet::from([2]),
            ElemSet::new(),
            ElemSet::from([0, 2]),
            ElemSet::from([1]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{1}", "{2}", "{0, 1}", "{0, 2}"]);
    }

    fn small_set() -> impl Strategy<Value = BTreeSet<usize>> {
        proptest::collection::btree_set(0usize..140, 0..12)
    }

    proptest! {
        #[test]
        fn agrees_with_btreeset(a in small_set(), b in small_set()) {
            let (x, y): (ElemSet, ElemSet) =
                (a.iter().copied().collect(), b.iter().copied().collect());
            let to = |s: &ElemSet| s.iter().collect::<BTreeSet<_>>();
            prop_assert_eq!(to(&(&x | &y)), a.union(&b).copied().collect::<BTreeSet<_>>());
            prop_assert_eq!(to(&(&x & &y)), a.intersection(&b).copied().collect::<BTreeSet<_>>());
            prop_assert_eq!(to(&(&x - &y)), a.difference(&b).copied().collect::<BTreeSet<_>>());
            prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
            prop_assert_eq!(x.is_disjoint(&y), a.is_disjoint(&b));
            prop_assert_eq!(x.len(), a.len());
            // equality must not depend on how the set was built
            prop_assert_eq!(&(&x & &y) | &(&x - &y), x.clone());
        }
    }
}
