//! Sets of colors drawn from `1..=universe`.

use std::fmt;

/// A color. Colors are 1-based; 0 never denotes a color.
pub type Color = u32;

/// A growable bitset of colors.
///
/// Trailing zero words are trimmed after every mutation so that derived
/// equality and hashing are set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ColorSet {
    words: Vec<u64>,
}

#[inline]
fn locate(c: Color) -> (usize, u64) {
    let i = c as usize;
    (i / 64, 1u64 << (i % 64))
}

impl ColorSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{1, ..., universe}`.
    pub fn full(universe: u32) -> Self {
        let mut s = ColorSet::new();
        for c in 1..=universe {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: Color) -> bool {
        let (w, bit) = locate(c);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    pub fn remove(&mut self, c: Color) -> bool {
        let (w, bit) = locate(c);
        let Some(word) = self.words.get_mut(w) else {
            return false;
        };
        let present = *word & bit != 0;
        *word &= !bit;
        self.trim();
        present
    }

    pub fn contains(&self, c: Color) -> bool {
        let (w, bit) = locate(c);
        self.words.get(w).is_some_and(|word| word & bit != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Colors in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn min(&self) -> Option<Color> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<Color> {
        let (i, w) = self.words.iter().enumerate().rev().find(|(_, w)| **w != 0)?;
        Some((i * 64 + 63 - w.leading_zeros() as usize) as Color)
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        ColorSet { words }
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        let mut out = ColorSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out.trim();
        out
    }

    /// `{1..=universe} \ self`.
    pub fn complement(&self, universe: u32) -> ColorSet {
        ColorSet::full(universe).difference(self)
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &ColorSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Smallest color in `1..=universe` that is not in `self`.
    pub fn first_missing(&self, universe: u32) -> Option<Color> {
        (1..=universe).find(|&c| !self.contains(c))
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::new();
        s.extend(iter);
        s
    }
}

impl Extend<Color> for ColorSet {
    fn extend<I: IntoIterator<Item = Color>>(&mut self, iter: I) {
        for c in iter {
            self.insert(c);
        }
    }
}

impl<const N: usize> From<[Color; N]> for ColorSet {
    fn from(colors: [Color; N]) -> Self {
        colors.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a ColorSet {
    type Item = Color;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for ColorSet {
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
    type Item = Color;

    fn next(&mut self) -> Option<Color> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some((self.index * 64 + bit) as Color);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl serde::Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn basic_ops() {
        let a = ColorSet::from([1, 3]);
        assert_eq!(a.complement(8), ColorSet::from([2, 4, 5, 6, 7, 8]));
        assert!(ColorSet::full(8).complement(8).is_empty());
        assert_eq!(ColorSet::from([1, 3]).complement(7), ColorSet::from([2, 4, 5, 6, 7]));
        assert_eq!(a.min(), Some(1));
        assert_eq!(a.max(), Some(3));
        assert_eq!(ColorSet::new().max(), None);
        assert_eq!(a.first_missing(3), Some(2));
        assert_eq!(ColorSet::full(3).first_missing(3), None);
    }

    #[test]
    fn equality_ignores_removed_high_colors() {
        let mut a = ColorSet::from([2, 200]);
        a.remove(200);
        assert_eq!(a, ColorSet::from([2]));
        assert_eq!(ColorSet::from([70]).intersection(&ColorSet::from([1])), ColorSet::new());
    }

    fn model(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    proptest! {
        #[test]
        fn matches_btreeset(a in proptest::collection::vec(1u32..150, 0..20),
                            b in proptest::collection::vec(1u32..150, 0..20)) {
            let (sa, sb) = (ColorSet::from_iter(a.clone()), ColorSet::from_iter(b.clone()));
            let (ma, mb) = (model(&a), model(&b));
            prop_assert_eq!(sa.iter().collect::<Vec<_>>(), ma.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.union(&sb).iter().collect::<BTreeSet<_>>(), &ma | &mb);
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<BTreeSet<_>>(), &ma & &mb);
            prop_assert_eq!(sa.difference(&sb).iter().collect::<BTreeSet<_>>(), &ma - &mb);
            prop_assert_eq!(sa.is_subset(&sb), ma.is_subset(&mb));
            prop_assert_eq!(sa.is_disjoint(&sb), ma.is_disjoint(&mb));
            prop_assert_eq!(sa.len(), ma.len());
            prop_assert_eq!(sa == sb, ma == mb);
        }

        #[test]
        fn complement_partitions_universe(a in proptest::collection::vec(1u32..100, 0..20)) {
            let s = ColorSet::from_iter(a);
            let co = s.complement(100);
            prop_assert!(co.is_disjoint(&s));
            prop_assert_eq!(co.union(&s), ColorSet::full(100));
        }
    }
}
