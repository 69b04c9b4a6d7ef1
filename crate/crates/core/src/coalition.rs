//! Ground sets, coalitions (bit-vector subsets) and orders (permutations).
//!
//! Elements are labelled `0..n` internally. Everything user facing adds one.

use std::fmt;

use crate::error::{invalid, Result};

pub const MAX_GROUND: usize = 4096;

/// The finite set `{0, .., n-1}` a measure is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_GROUND).contains(&n) {
            return invalid(format!("ground set size must be in 2..={MAX_GROUND}, got {n}"));
        }
        Ok(Self { n })
    }

    pub fn len(self) -> usize {
        self.n
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn check(self, element: usize) -> Result<()> {
        if element >= self.n {
            return invalid(format!("element {} outside ground set of size {}", element + 1, self.n));
        }
        Ok(())
    }

    /// Number of unordered pairs.
    pub fn pairs(self) -> usize {
        self.n * (self.n - 1) / 2
    }
}

/// A subset of a ground set stored as a bit-vector of `ceil(n / 64)` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coalition {
    ground: GroundSet,
    words: Vec<u64>,
}

impl Coalition {
    pub fn empty(ground: GroundSet) -> Self {
        Self { ground, words: vec![0; ground.len().div_ceil(64)] }
    }

    pub fn full(ground: GroundSet) -> Self {
        let mut c = Self::empty(ground);
        for e in ground.elements() {
            c.insert(e);
        }
        c
    }

    pub fn from_elements(ground: GroundSet, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut c = Self::empty(ground);
        for e in elements {
            ground.check(e)?;
            c.insert(e);
        }
        Ok(c)
    }

    /// Coalition whose bit `k` is bit `k` of `mask`.
    pub fn from_mask(ground: GroundSet, mask: u64) -> Result<Self> {
        if ground.len() < 64 && mask >> ground.len() != 0 {
            return invalid(format!("mask {mask:#x} has bits beyond the ground set"));
        }
        let mut c = Self::empty(ground);
        c.words[0] = mask;
        Ok(c)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Low 64 bits of the bit-vector.
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.ground.len() && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    /// Panics if `e` is outside the ground set.
    pub fn insert(&mut self, e: usize) {
        assert!(e < self.ground.len(), "element {e} outside ground set");
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        if e < self.ground.len() {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn with(&self, e: usize) -> Self {
        let mut c = self.clone();
        c.insert(e);
        c
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection_len(&self, other: &Coalition) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_disjoint(&self, other: &Coalition) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Coalition) -> Self {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Self { ground: self.ground, words }
    }

    pub fn difference(&self, other: &Coalition) -> Self {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Self { ground: self.ground, words }
    }

    pub fn union_with(&mut self, other: &Coalition) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn same_ground(&self, ground: GroundSet) -> Result<()> {
        if self.ground != ground {
            return invalid(format!(
                "coalition over a ground set of size {} used with one of size {}",
                self.ground.len(),
                ground.len()
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e + 1)).finish()
    }
}

/// A permutation of the ground set minus an excluded coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    ground: GroundSet,
    excluded: Coalition,
    sequence: Vec<usize>,
}

impl Order {
    pub fn new(ground: GroundSet, excluded: Coalition, sequence: Vec<usize>) -> Result<Self> {
        excluded.same_ground(ground)?;
        let mut seen = excluded.clone();
        for &e in &sequence {
            ground.check(e)?;
            if seen.contains(e) {
                return invalid(format!("element {} repeated or excluded in order", e + 1));
            }
            seen.insert(e);
        }
        if seen.len() != ground.len() {
            return invalid("order does not cover the ground set minus the excluded elements");
        }
        Ok(Self { ground, excluded, sequence })
    }

    /// Order over the whole ground set.
    pub fn full(ground: GroundSet, sequence: Vec<usize>) -> Result<Self> {
        Self::new(ground, Coalition::empty(ground), sequence)
    }

    pub(crate) fn from_parts_unchecked(ground: GroundSet, excluded: Coalition, sequence: Vec<usize>) -> Self {
        Self { ground, excluded, sequence }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn excluded(&self) -> &Coalition {
        &self.excluded
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn position(&self, element: usize) -> Option<usize> {
        self.sequence.iter().position(|&e| e == element)
    }

    /// Elements strictly before `element`.
    pub fn predecessors(&self, element: usize) -> Result<Coalition> {
        let Some(pos) = self.position(element) else {
            return invalid(format!("element {} does not appear in the order", element + 1));
        };
        Coalition::from_elements(self.ground, self.sequence[..pos].iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn ground_bounds() {
        assert!(GroundSet::new(1).is_err());
        assert!(GroundSet::new(4097).is_err());
        assert_eq!(GroundSet::new(4096).unwrap().len(), 4096);
    }

    #[test]
    fn predecessors_by_definition() {
        // (3,1,2) in 1-based labels
        let o = Order::full(g(3), vec![2, 0, 1]).unwrap();
        assert_eq!(o.predecessors(1).unwrap().to_vec(), vec![0, 2]);
        assert!(o.predecessors(2).unwrap().is_empty());
        let last = *o.sequence().last().unwrap();
        let mut rest = Coalition::full(g(3));
        rest.remove(last);
        assert_eq!(o.predecessors(last).unwrap(), rest);
    }

    #[test]
    fn predecessors_of_missing_element() {
        let ground = g(3);
        let excl = Coalition::from_elements(ground, [0]).unwrap();
        let o = Order::new(ground, excl, vec![2, 1]).unwrap();
        assert!(matches!(o.predecessors(0), Err(crate::Error::InvalidArgument(_))));
    }

    #[test]
    fn order_rejects_non_permutations() {
        assert!(Order::full(g(3), vec![0, 0, 1]).is_err());
        assert!(Order::full(g(3), vec![0, 1]).is_err());
        assert!(Order::full(g(3), vec![0, 1, 3]).is_err());
    }

    #[test]
    fn mask_round_trip_and_bounds() {
        let c = Coalition::from_mask(g(4), 0b1010).unwrap();
        assert_eq!(c.to_vec(), vec![1, 3]);
        assert!(Coalition::from_mask(g(4), 0b10000).is_err());
    }

    proptest! {
        #[test]
        fn popcount_matches_members(n in 2usize..300, picks in prop::collection::vec(0usize..300, 0..80)) {
            let ground = g(n);
            let elems: Vec<usize> = picks.into_iter().filter(|&e| e < n).collect();
            let c = Coalition::from_elements(ground, elems.iter().copied()).unwrap();
            let mut uniq = elems.clone();
            uniq.sort_unstable();
            uniq.dedup();
            prop_assert_eq!(c.len(), uniq.len());
            prop_assert_eq!(c.to_vec(), uniq);
            prop_assert!(c.iter().all(|e| e < n));
        }
    }
}
