//! Multiplicatively closed subsets of a ring.
//!
//! A `MultSet` always contains 1 and is closed under multiplication; it may
//! or may not contain 0 (sets used for localization must not).

use crate::bitset::ElemSet;
use crate::ideal::Ideal;
use crate::ring::Ring;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MultSetError {
    #[error("element {index} is out of range for a ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("set is not multiplicatively closed: {a} * {b} = {product} is missing")]
    NotClosed { a: usize, b: usize, product: usize },
    #[error("set does not contain 1")]
    MissingOne,
    #[error("sets belong to different rings")]
    RingMismatch,
}

#[derive(Clone)]
pub struct MultSet {
    ring: Ring,
    members: ElemSet,
}

impl MultSet {
    /// The trivial multiplicative set {1}.
    pub fn trivial(ring: &Ring) -> MultSet {
        let mut members = ElemSet::empty(ring.order());
        members.insert(ring.one());
        MultSet {
            ring: ring.clone(),
            members,
        }
    }

    /// Multiplicative closure of the given elements together with 1.
    pub fn closure(ring: &Ring, elems: &[usize]) -> Result<MultSet, MultSetError> {
        for &e in elems {
            if e >= ring.order() {
                return Err(MultSetError::ElementOutOfRange {
                    index: e,
                    order: ring.order(),
                });
            }
        }
        let mut members = ElemSet::empty(ring.order());
        members.insert(ring.one());
        let mut queue: Vec<usize> = Vec::new();
        for &e in elems {
            if members.insert(e) {
                queue.push(e);
            }
        }
        while let Some(x) = queue.pop() {
            for y in members.to_vec() {
                let p = ring.mul(x, y);
                if members.insert(p) {
                    queue.push(p);
                }
            }
        }
        Ok(MultSet {
            ring: ring.clone(),
            members,
        })
    }

    /// Wrap an explicit member list, verifying closure and 1 ∈ S.
    pub fn from_members(ring: &Ring, elems: &[usize]) -> Result<MultSet, MultSetError> {
        let mut members = ElemSet::empty(ring.order());
        for &e in elems {
            if e >= ring.order() {
                return Err(MultSetError::ElementOutOfRange {
                    index: e,
                    order: ring.order(),
                });
            }
            members.insert(e);
        }
        if !members.contains(ring.one()) {
            return Err(MultSetError::MissingOne);
        }
        for a in members.iter() {
            for b in members.iter() {
                let p = ring.mul(a, b);
                if !members.contains(p) {
                    return Err(MultSetError::NotClosed { a, b, product: p });
                }
            }
        }
        Ok(MultSet {
            ring: ring.clone(),
            members,
        })
    }

    pub(crate) fn from_set_unchecked(ring: &Ring, members: ElemSet) -> MultSet {
        MultSet {
            ring: ring.clone(),
            members,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn contains_zero(&self) -> bool {
        self.members.contains(self.ring.zero())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    /// S ∩ I = ∅, the usual precondition for S-variants of primality.
    pub fn disjoint_from(&self, ideal: &Ideal) -> bool {
        self.members.is_disjoint(ideal.members())
    }

    /// Intersection with an ideal, as a raw element set.
    pub fn meet_ideal(&self, ideal: &Ideal) -> ElemSet {
        self.members.intersect(ideal.members())
    }

    /// Product set in a product ring from factor sets: S₁ × S₂.
    pub fn product(left: &MultSet, right: &MultSet, ring: &Ring) -> Option<MultSet> {
        let (rl, rr) = ring.product_parts()?;
        if !rl.same_ring(&left.ring) || !rr.same_ring(&right.ring) {
            return None;
        }
        let mut members = ElemSet::empty(ring.order());
        for a in left.iter() {
            for b in right.iter() {
                members.insert(ring.pair(a, b)?);
            }
        }
        Some(MultSet {
            ring: ring.clone(),
            members,
        })
    }
}

impl PartialEq for MultSet {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.members == other.members
    }
}
impl Eq for MultSet {}

impl std::fmt::Debug for MultSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S{:?}", self.members)
    }
}

/// Every multiplicatively closed subset of the ring that avoids 0, listed in
/// ascending bitset order. Exponential scan — small rings only; used as a
/// brute-force oracle in tests and for exhaustive sweeps on tiny rings.
pub fn all_zero_free_mult_sets(ring: &Ring) -> Vec<MultSet> {
    let n = ring.order();
    let candidates: Vec<usize> = (0..n)
        .filter(|&x| x != ring.zero() && x != ring.one())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << candidates.len()) {
        let mut members = ElemSet::empty(n);
        members.insert(ring.one());
        for (i, &c) in candidates.iter().enumerate() {
            if mask & (1 << i) != 0 {
                members.insert(c);
            }
        }
        let mut closed = true;
        'outer: for a in members.iter() {
            for b in members.iter() {
                if !members.contains(ring.mul(a, b)) {
                    closed = false;
                    break 'outer;
                }
            }
        }
        if closed {
            out.push(MultSet {
                ring: ring.clone(),
                members,
            });
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingDesc};

    fn zmod(n: usize) -> Ring {
        build_ring(&RingDesc::Zmod { n }).unwrap()
    }

    #[test]
    fn closure_of_five_mod_eighty() {
        let r = zmod(80);
        let s = MultSet::closure(&r, &[5]).unwrap();
        // oracle: 5^1=5, 5^2=25, 5^3=125=45, 5^4=225=65, 5^5=325=5 — cycle
        assert_eq!(s.members().to_vec(), vec![1, 5, 25, 45, 65]);
        assert!(!s.contains_zero());
    }

    #[test]
    fn closure_of_two_mod_twelve() {
        let r = zmod(12);
        let s = MultSet::closure(&r, &[2]).unwrap();
        // 2, 4, 8, 16=4 — cycle {2,4,8}
        assert_eq!(s.members().to_vec(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn trivial_set() {
        let r = zmod(12);
        let s = MultSet::trivial(&r);
        assert_eq!(s.members().to_vec(), vec![1]);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn from_members_validates() {
        let r = zmod(12);
        assert!(MultSet::from_members(&r, &[1, 5]).is_ok()); // 5*5=25=1
        assert_eq!(
            MultSet::from_members(&r, &[1, 2]),
            Err(MultSetError::NotClosed {
                a: 2,
                b: 2,
                product: 4
            })
        );
        assert_eq!(
            MultSet::from_members(&r, &[5]),
            Err(MultSetError::MissingOne)
        );
        assert_eq!(
            MultSet::from_members(&r, &[1, 99]),
            Err(MultSetError::ElementOutOfRange {
                index: 99,
                order: 12
            })
        );
    }

    #[test]
    fn disjointness_against_ideals() {
        let r = zmod(12);
        let s = MultSet::closure(&r, &[5]).unwrap();
        let four = Ideal::generate(&r, &[4]).unwrap();
        assert!(s.disjoint_from(&four));
        let s2 = MultSet::closure(&r, &[2]).unwrap();
        assert!(!s2.disjoint_from(&four));
        assert_eq!(s2.meet_ideal(&four).to_vec(), vec![4, 8]);
    }

    #[test]
    fn product_sets_pair_up() {
        let l = zmod(4);
        let rr = zmod(9);
        let p = build_ring(&RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: 4 }),
            right: Box::new(RingDesc::Zmod { n: 9 }),
        })
        .unwrap();
        let sl = MultSet::closure(&l, &[3]).unwrap(); // {1,3}
        let sr = MultSet::trivial(&rr);
        let s = MultSet::product(&sl, &sr, &p).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(p.pair(1, 1).unwrap()));
        assert!(s.contains(p.pair(3, 1).unwrap()));
    }

    #[test]
    fn exhaustive_small_enumeration() {
        let r = zmod(4);
        let all = all_zero_free_mult_sets(&r);
        // subsets of {1,2,3} containing 1, avoiding 0, closed:
        // {1}, {1,3}, {1,2} is not closed (2*2=0)... check: {1}, {1,3},
        // {1,2}: 2*2=0 missing -> no; {1,2,3}: 2*2=0 -> no.
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].members().to_vec(), vec![1]);
        assert_eq!(all[1].members().to_vec(), vec![1, 3]);
    }

    #[test]
    fn unit_generated_sets_avoid_zero() {
        let r = zmod(12);
        for u in r.units().to_vec() {
            let s = MultSet::closure(&r, &[u]).unwrap();
            assert!(!s.contains_zero());
        }
    }
}
