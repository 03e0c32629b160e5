// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Finite ground set `{0, .., n-1}` with optional display labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroundSet("ground set must be nonempty".into()));
        }
        Ok(Self { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut set = Self::new(labels.len())?;
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidGroundSet(format!("duplicate label {l:?}")));
            }
        }
        set.labels = Some(labels);
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `i`; falls back to the index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&i| i < self.n),
        }
    }

    pub fn names(&self, set: &Subset) -> Vec<String> {
        set.iter().map(|i| self.label(i)).collect()
    }
}

/// Bitmask subset of a ground set of `universe_size` elements.
///
/// Bits at or above `universe_size` are always clear, so derived equality,
/// hashing and ordering are set semantics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    words: SmallVec<[u64; 2]>,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: SmallVec::from_elem(0, n.div_ceil(WORD)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Self {
        let mut s = Self::empty(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Subset whose members are the set bits of `bits`. Requires `n <= 64`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n <= WORD, "from_bits needs a universe of at most 64 elements");
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = bits;
            s.trim();
        }
        s
    }

    /// Low 64 bits of the mask. Requires `n <= 64`.
    pub fn bits(&self) -> u64 {
        assert!(self.n <= WORD, "bits needs a universe of at most 64 elements");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "element {i} outside universe of {}", self.n);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.n {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + b)
            })
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_same(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_same(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Same members over a universe of `n` elements; members `>= n` are dropped.
    pub fn resize(&self, n: usize) -> Self {
        let mut s = Self::empty(n);
        for (a, b) in s.words.iter_mut().zip(&self.words) {
            *a = *b;
        }
        s.trim();
        s
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        self.check_same(other);
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect();
        let mut s = Self { n: self.n, words };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let rem = self.n % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    fn check_same(&self, other: &Self) {
        debug_assert_eq!(self.n, other.n, "subsets over different universes");
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All `2^n` subsets of an `n`-element universe in mask order. Requires `n < 64`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n < WORD);
    (0..1u64 << n).map(move |b| Subset::from_bits(n, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn basic_membership() {
        let s = Subset::from_indices(5, [0, 3]);
        assert!(s.contains(0) && s.contains(3) && !s.contains(1));
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement(), Subset::from_indices(5, [1, 2, 4]));
        assert_eq!(Subset::full(5).len(), 5);
        assert!(Subset::empty(5).is_empty());
    }

    #[test]
    fn wide_universe() {
        let mut s = Subset::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.complement().len(), 127);
        assert_eq!(Subset::full(130).len(), 130);
        assert_eq!(s.resize(65).iter().collect::<Vec<_>>(), vec![0, 64]);
    }

    #[test]
    fn ground_set_labels() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::with_labels(vec!["a".into(), "a".into()]).is_err());
        let g = GroundSet::with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.index_of("b"), Some(1));
        assert_eq!(g.label(0), "a");
        assert_eq!(GroundSet::new(3).unwrap().index_of("2"), Some(2));
    }

    fn model(s: &Subset) -> BTreeSet<usize> {
        s.iter().collect()
    }

    proptest! {
        #[test]
        fn algebra_matches_element_lists(
            n in 1usize..140,
            a in proptest::collection::vec(any::<usize>(), 0..20),
            b in proptest::collection::vec(any::<usize>(), 0..20),
        ) {
            let a: BTreeSet<usize> = a.into_iter().map(|x| x % n).collect();
            let b: BTreeSet<usize> = b.into_iter().map(|x| x % n).collect();
            let sa = Subset::from_indices(n, a.iter().copied());
            let sb = Subset::from_indices(n, b.iter().copied());
            prop_assert_eq!(model(&sa.union(&sb)), a.union(&b).copied().collect());
            prop_assert_eq!(model(&sa.intersection(&sb)), a.intersection(&b).copied().collect());
            prop_assert_eq!(model(&sa.difference(&sb)), a.difference(&b).copied().collect());
            let comp: BTreeSet<usize> = (0..n).filter(|x| !a.contains(x)).collect();
            prop_assert_eq!(model(&sa.complement()), comp);
            prop_assert_eq!(sa.complement().complement(), sa.clone());
            prop_assert_eq!(sa.is_subset_of(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.len(), a.len());
        }
    }
}
