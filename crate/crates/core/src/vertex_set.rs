//! Compact bit-indexed vertex sets.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const WORD: usize = 64;

/// A set of vertex indices drawn from `0..universe`.
///
/// Equality compares the members and the universe, so sets built for different
/// graphs never compare equal by accident.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { words: vec![0; universe.div_ceil(WORD)], universe }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = VertexSet::new(universe);
        for (i, w) in set.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let bits = (universe - lo).min(WORD);
            *w = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        set
    }

    /// Builds a set from indices; fails if any index is `>= universe`.
    pub fn from_indices<I>(universe: usize, indices: I) -> crate::Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = VertexSet::new(universe);
        for v in indices {
            if v >= universe {
                return Err(crate::error::invalid(format!("vertex index {v} out of range for {universe} vertices")));
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `v`, returning true if it was not already present.
    ///
    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / WORD, v % WORD);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.universe, other.universe, "vertex sets from different universes");
        VertexSet {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
            universe: self.universe,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.universe).difference(self)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe, "vertex sets from different universes");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.universe == other.universe && self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }

    /// Lexicographic order on the ascending member lists.
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

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

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[derive(Serialize, Deserialize)]
struct SetRepr {
    universe: usize,
    members: Vec<usize>,
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetRepr { universe: self.universe, members: self.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SetRepr::deserialize(d)?;
        VertexSet::from_indices(repr.universe, repr.members).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_set_respects_universe_boundary() {
        for n in [0, 1, 63, 64, 65, 130] {
            let s = VertexSet::full(n);
            assert_eq!(s.len(), n);
            assert_eq!(s.to_vec(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        assert!(VertexSet::from_indices(4, [0, 4]).is_err());
        assert!(!VertexSet::new(4).contains(17));
    }

    #[test]
    fn lexicographic_order() {
        let a = VertexSet::from_indices(10, [1, 5]).unwrap();
        let b = VertexSet::from_indices(10, [1, 6]).unwrap();
        let c = VertexSet::from_indices(10, [1]).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(c.lex_cmp(&a), Ordering::Less);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            xs in proptest::collection::btree_set(0usize..150, 0..40),
            ys in proptest::collection::btree_set(0usize..150, 0..40),
        ) {
            let a = VertexSet::from_indices(150, xs.iter().copied()).unwrap();
            let b = VertexSet::from_indices(150, ys.iter().copied()).unwrap();
            prop_assert_eq!(a.union(&b).to_vec(), xs.union(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersection(&b).to_vec(), xs.intersection(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.difference(&b).to_vec(), xs.difference(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(
                a.symmetric_difference(&b).to_vec(),
                xs.symmetric_difference(&ys).copied().collect::<Vec<_>>()
            );
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.len() + a.complement().len(), 150);
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<VertexSet>(&json).unwrap(), a);
        }
    }
}
