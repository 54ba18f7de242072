//! Dense bitsets over a fixed element universe `0..universe`.
//!
//! Ideals, multiplicative sets and reduction images are all subsets of a
//! finite ring's element indices, so one small set type serves the whole
//! crate. Ordering compares sets as little-endian integers (bit `i` is
//! element `i`), which gives the canonical enumeration order used everywhere
//! deterministic output matters.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    pub fn singleton(universe: usize, elem: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(elem);
        s
    }

    pub fn from_elems(universe: usize, elems: &[usize]) -> Self {
        let mut s = Self::empty(universe);
        for &e in elems {
            s.insert(e);
        }
        s
    }

    /// Zero out any bits past `universe` so word-level comparisons stay exact.
    fn clear_tail(&mut self) {
        let tail = self.universe % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `elem`, returning true when it was not already present.
    pub fn insert(&mut self, elem: usize) -> bool {
        debug_assert!(elem < self.universe);
        let w = &mut self.words[elem / 64];
        let bit = 1u64 << (elem % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, elem: usize) {
        debug_assert!(elem < self.universe);
        self.words[elem / 64] &= !(1u64 << (elem % 64));
    }

    pub fn contains(&self, elem: usize) -> bool {
        debug_assert!(elem < self.universe);
        self.words[elem / 64] & (1u64 << (elem % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        out
    }

    pub fn intersect(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(w, o)| w & !o == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(w, o)| w & o == 0)
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElemSet {
    /// Numeric order of the set read as a little-endian integer: the zero
    /// ideal sorts first, the unit ideal last.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.universe, other.universe);
        for (w, o) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match w.cmp(o) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_contains() {
        let mut s = ElemSet::empty(100);
        assert!(s.insert(0));
        assert!(s.insert(99));
        assert!(!s.insert(99));
        assert!(s.contains(0));
        assert!(s.contains(99));
        assert!(!s.contains(50));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn full_has_exact_universe() {
        let s = ElemSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.to_vec().last(), Some(&69));
    }

    #[test]
    fn set_algebra() {
        let a = ElemSet::from_elems(12, &[0, 4, 8]);
        let b = ElemSet::from_elems(12, &[0, 6]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 4, 6, 8]);
        assert_eq!(a.intersect(&b).to_vec(), vec![0]);
        assert_eq!(a.minus(&b).to_vec(), vec![4, 8]);
        assert!(ElemSet::from_elems(12, &[0]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.minus(&b).is_disjoint(&b));
    }

    #[test]
    fn order_is_numeric_little_endian() {
        // {0} < {0,6} < {0,4,8} as integers 1 < 65 < 273.
        let zero = ElemSet::from_elems(12, &[0]);
        let six = ElemSet::from_elems(12, &[0, 6]);
        let four = ElemSet::from_elems(12, &[0, 4, 8]);
        assert!(zero < six);
        assert!(six < four);
    }

    #[test]
    fn iter_ascending() {
        let s = ElemSet::from_elems(130, &[129, 0, 64, 63]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 129]);
    }
}
