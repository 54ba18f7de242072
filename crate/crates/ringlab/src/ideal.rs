//! Ideals of a finite commutative ring, stored as member bitsets with
//! optional generator lists.
//!
//! All operations are exact set computations. Generation closes the set of
//! ring multiples of the generators under addition; since that multiple set
//! is already closed under multiplication by ring elements, the additive
//! closure is the ideal. The full ideal lattice is enumerated by closing the
//! principal ideals under pairwise sums and is reported in ascending bitset
//! order (zero ideal first, unit ideal last).

use std::collections::BTreeSet;

use crate::bitset::ElemSet;
use crate::ring::Ring;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("element index {index} out of range for ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("member set is not an ideal: {reason}")]
    NotAnIdeal { reason: String },
}

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    members: ElemSet,
    gens: Option<Vec<usize>>,
}

/// Grows `set` (an additive subgroup containing 0) by the generator `g`,
/// in place: the result is the subgroup generated by `set ∪ {g}`.
fn absorb_generator(ring: &Ring, set: &mut ElemSet, g: usize) {
    if set.contains(g) {
        return;
    }
    let base = set.to_vec();
    let mut kg = g;
    while !set.contains(kg) {
        for &x in &base {
            set.insert(ring.add(x, kg));
        }
        kg = ring.add(kg, g);
    }
}

/// Additive closure of `seed ∪ {0}`.
fn additive_closure(ring: &Ring, seed: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut set = ElemSet::singleton(ring.order(), 0);
    for g in seed {
        absorb_generator(ring, &mut set, g);
    }
    set
}

/// Member set of the ideal generated by `gens`. Used by ring construction
/// (quotients) before `Ideal` values exist for the base ring.
pub(crate) fn ideal_closure_of_gens(ring: &Ring, gens: &[usize]) -> ElemSet {
    let mut multiples = Vec::with_capacity(ring.order() * gens.len());
    for &g in gens {
        for r in ring.elements() {
            multiples.push(ring.mul(r, g));
        }
    }
    additive_closure(ring, multiples)
}

impl Ideal {
    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            members: ElemSet::singleton(ring.order(), 0),
            gens: Some(vec![]),
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            members: ElemSet::full(ring.order()),
            gens: Some(vec![ring.one()]),
        }
    }

    pub fn principal(ring: &Ring, x: usize) -> Result<Ideal, IdealError> {
        Ideal::generate(ring, &[x])
    }

    /// The ideal generated by `gens` (empty list gives the zero ideal).
    pub fn generate(ring: &Ring, gens: &[usize]) -> Result<Ideal, IdealError> {
        for &g in gens {
            if g >= ring.order() {
                return Err(IdealError::ElementOutOfRange {
                    index: g,
                    order: ring.order(),
                });
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            members: ideal_closure_of_gens(ring, gens),
            gens: Some(gens.to_vec()),
        })
    }

    /// Wraps an explicit member set, verifying it is an ideal.
    pub fn from_members(ring: &Ring, members: &[usize]) -> Result<Ideal, IdealError> {
        for &m in members {
            if m >= ring.order() {
                return Err(IdealError::ElementOutOfRange {
                    index: m,
                    order: ring.order(),
                });
            }
        }
        let set = ElemSet::from_elems(ring.order(), members);
        Self::from_member_set(ring, set)
    }

    pub(crate) fn from_member_set(ring: &Ring, set: ElemSet) -> Result<Ideal, IdealError> {
        if !set.contains(0) {
            return Err(IdealError::NotAnIdeal {
                reason: "missing the zero element".into(),
            });
        }
        for x in set.iter() {
            for y in set.iter() {
                if !set.contains(ring.add(x, y)) {
                    return Err(IdealError::NotAnIdeal {
                        reason: format!("not closed under addition: {x} + {y}"),
                    });
                }
            }
            for r in ring.elements() {
                if !set.contains(ring.mul(r, x)) {
                    return Err(IdealError::NotAnIdeal {
                        reason: format!("not closed under ring multiples: {r} * {x}"),
                    });
                }
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            members: set,
            gens: None,
        })
    }

    /// Wraps a member set known to be an ideal (set computations whose
    /// results are ideals by construction).
    pub(crate) fn from_set_unchecked(ring: &Ring, members: ElemSet) -> Ideal {
        debug_assert!(members.contains(0));
        Ideal {
            ring: ring.clone(),
            members,
            gens: None,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn gens(&self) -> Option<&[usize]> {
        self.gens.as_deref()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// Number of elements; never zero, since every ideal contains 0.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.ring.order()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    fn check_ring(&self, other: &Ideal) -> Result<(), IdealError> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(IdealError::RingMismatch)
        }
    }

    /// I + J: smallest ideal containing both.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let mut set = self.members.clone();
        for g in other.members.iter() {
            absorb_generator(&self.ring, &mut set, g);
        }
        Ok(Ideal::from_set_unchecked(&self.ring, set))
    }

    /// IJ: ideal generated by pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for x in self.members.iter() {
            for y in other.members.iter() {
                prods.push(self.ring.mul(x, y));
            }
        }
        Ok(Ideal::from_set_unchecked(
            &self.ring,
            additive_closure(&self.ring, prods),
        ))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        Ok(Ideal::from_set_unchecked(
            &self.ring,
            self.members.intersect(&other.members),
        ))
    }

    /// (I : x) = { r | rx ∈ I }.
    pub fn colon_elem(&self, x: usize) -> Ideal {
        let mut set = ElemSet::empty(self.ring.order());
        for r in self.ring.elements() {
            if self.members.contains(self.ring.mul(r, x)) {
                set.insert(r);
            }
        }
        Ideal::from_set_unchecked(&self.ring, set)
    }

    /// (I : J) = { r | rJ ⊆ I }.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let mut set = ElemSet::empty(self.ring.order());
        'outer: for r in self.ring.elements() {
            for j in other.members.iter() {
                if !self.members.contains(self.ring.mul(r, j)) {
                    continue 'outer;
                }
            }
            set.insert(r);
        }
        Ok(Ideal::from_set_unchecked(&self.ring, set))
    }

    /// √I = { x | x^k ∈ I for some k ≤ ring order }.
    pub fn radical(&self) -> Ideal {
        let mut set = ElemSet::empty(self.ring.order());
        for x in self.ring.elements() {
            let mut y = x;
            for _ in 0..self.ring.order() {
                if self.members.contains(y) {
                    set.insert(x);
                    break;
                }
                y = self.ring.mul(y, x);
            }
        }
        Ideal::from_set_unchecked(&self.ring, set)
    }

    /// I^k for k ≥ 1.
    pub fn power(&self, k: usize) -> Ideal {
        debug_assert!(k >= 1);
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// Every ideal of the ring, ascending in bitset order.
    pub fn enumerate(ring: &Ring) -> Vec<Ideal> {
        let sets = ring.ideal_sets_cache().get_or_init(|| {
            let n = ring.order();
            let mut principals: Vec<ElemSet> = Vec::new();
            for x in 0..n {
                let p = ideal_closure_of_gens(ring, &[x]);
                if !principals.contains(&p) {
                    principals.push(p);
                }
            }
            let mut all: BTreeSet<ElemSet> = principals.iter().cloned().collect();
            let mut queue: Vec<ElemSet> = principals.clone();
            while let Some(a) = queue.pop() {
                for p in &principals {
                    if p.is_subset(&a) {
                        continue;
                    }
                    let mut s = a.clone();
                    for g in p.iter() {
                        absorb_generator(ring, &mut s, g);
                    }
                    if all.insert(s.clone()) {
                        queue.push(s);
                    }
                }
            }
            all.into_iter().collect()
        });
        sets.iter()
            .map(|s| Ideal::from_set_unchecked(ring, s.clone()))
            .collect()
    }

    /// Proper ideals only, same order.
    pub fn enumerate_proper(ring: &Ring) -> Vec<Ideal> {
        Ideal::enumerate(ring)
            .into_iter()
            .filter(|i| i.is_proper())
            .collect()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} of {:?}", self.members, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingDesc};

    fn zmod(n: usize) -> Ring {
        build_ring(&RingDesc::Zmod { n }).unwrap()
    }

    fn zprod(a: usize, b: usize) -> Ring {
        build_ring(&RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: a }),
            right: Box::new(RingDesc::Zmod { n: b }),
        })
        .unwrap()
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    /// Oracle: the ideal dZ_n as a plain membership scan.
    fn multiples_of(n: usize, d: usize) -> Vec<usize> {
        (0..n).filter(|x| x % gcd(d, n).max(1) == 0).collect()
    }

    #[test]
    fn generate_in_z12() {
        let r = zmod(12);
        let i = Ideal::generate(&r, &[4]).unwrap();
        assert_eq!(i.members().to_vec(), vec![0, 4, 8]);
        assert_eq!(Ideal::generate(&r, &[]).unwrap().members().to_vec(), [0]);
    }

    #[test]
    fn generate_in_z80() {
        let r = zmod(80);
        let i = Ideal::generate(&r, &[20]).unwrap();
        assert_eq!(i.members().to_vec(), vec![0, 20, 40, 60]);
    }

    #[test]
    fn sum_uses_the_gcd() {
        let r = zmod(12);
        let a = Ideal::generate(&r, &[4]).unwrap();
        let b = Ideal::generate(&r, &[6]).unwrap();
        // oracle: 4Z + 6Z = gcd(4,6)Z = 2Z
        let expected = multiples_of(12, gcd(4, 6));
        assert_eq!(a.sum(&b).unwrap().members().to_vec(), expected);
    }

    #[test]
    fn product_and_square() {
        let r = zmod(12);
        let a = Ideal::generate(&r, &[4]).unwrap();
        // oracle: products {x*y mod 12 | x,y in {0,4,8}} generate {0,4,8}
        let sq = a.product(&a).unwrap();
        assert_eq!(sq.members().to_vec(), vec![0, 4, 8]);
    }

    #[test]
    fn intersection_uses_the_lcm() {
        let r = zmod(12);
        let a = Ideal::generate(&r, &[4]).unwrap();
        let b = Ideal::generate(&r, &[6]).unwrap();
        // oracle: 4Z ∩ 6Z = lcm(4,6)Z = 12Z = (0)
        assert_eq!(a.intersect(&b).unwrap().members().to_vec(), vec![0]);
    }

    #[test]
    fn colon_by_element() {
        let r = zmod(12);
        let a = Ideal::generate(&r, &[4]).unwrap();
        // oracle: independent membership scan
        let expected: Vec<usize> = (0..12).filter(|&x| a.contains(2 * x % 12)).collect();
        assert_eq!(expected, vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(a.colon_elem(2).members().to_vec(), expected);
        // (I : 1) = I
        assert_eq!(a.colon_elem(1), a);
    }

    #[test]
    fn colon_by_ideal() {
        let r = zmod(12);
        let zero = Ideal::zero(&r);
        let six = Ideal::generate(&r, &[6]).unwrap();
        let expected: Vec<usize> = (0..12)
            .filter(|&x| six.members().iter().all(|j| x * j % 12 == 0))
            .collect();
        assert_eq!(expected, vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(zero.colon_ideal(&six).unwrap().members().to_vec(), expected);
    }

    #[test]
    fn radicals_in_z12_and_z80() {
        let r = zmod(12);
        let four = Ideal::generate(&r, &[4]).unwrap();
        assert_eq!(four.radical().members().to_vec(), vec![0, 2, 4, 6, 8, 10]);
        let zero = Ideal::zero(&r);
        assert_eq!(zero.radical().members().to_vec(), vec![0, 6]);

        let r80 = zmod(80);
        let i = Ideal::generate(&r80, &[20]).unwrap();
        let expected: Vec<usize> = (0..80).filter(|x| x % 10 == 0).collect();
        assert_eq!(i.radical().members().to_vec(), expected);
    }

    #[test]
    fn enumeration_matches_the_divisor_lattice() {
        // oracle: ideals of Z_n are dZ_n for divisors d of n
        let r = zmod(12);
        let all = Ideal::enumerate(&r);
        let mut expected: Vec<Vec<usize>> = (1..=12)
            .filter(|d| 12 % d == 0)
            .map(|d| (0..12).filter(|x| x % d == 0).collect())
            .collect();
        expected.sort_by_key(|m| {
            m.iter().map(|&x| 1u64 << x).sum::<u64>() // bitset order
        });
        assert_eq!(all.len(), 6);
        let got: Vec<Vec<usize>> = all.iter().map(|i| i.members().to_vec()).collect();
        assert_eq!(got, expected);
        // the spec'd order: (0),(6),(4),(3),(2),(1)
        let leads: Vec<usize> = all
            .iter()
            .map(|i| i.members().iter().find(|&x| x != 0).unwrap_or(0))
            .collect();
        assert_eq!(leads, vec![0, 6, 4, 3, 2, 1]);
    }

    #[test]
    fn enumeration_of_a_product_is_componentwise() {
        let r = zprod(4, 9);
        let all = Ideal::enumerate(&r);
        assert_eq!(all.len(), 9); // 3 ideals of Z4 × 3 ideals of Z9
        let (l, rr) = r.product_parts().unwrap();
        let mut expected: Vec<Vec<usize>> = Vec::new();
        for li in Ideal::enumerate(l) {
            for ri in Ideal::enumerate(rr) {
                let mut members: Vec<usize> = Vec::new();
                for a in li.members().iter() {
                    for b in ri.members().iter() {
                        members.push(r.pair(a, b).unwrap());
                    }
                }
                members.sort();
                expected.push(members);
            }
        }
        expected.sort_by_key(|m| m.iter().map(|&x| 1u128 << x).sum::<u128>());
        let got: Vec<Vec<usize>> = all.iter().map(|i| i.members().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn fields_have_exactly_two_ideals() {
        let r = zmod(5);
        assert_eq!(Ideal::enumerate(&r).len(), 2);
    }

    #[test]
    fn from_members_validates() {
        let r = zmod(12);
        assert!(Ideal::from_members(&r, &[0, 4, 8]).is_ok());
        assert!(matches!(
            Ideal::from_members(&r, &[0, 4]),
            Err(IdealError::NotAnIdeal { .. })
        ));
        assert!(matches!(
            Ideal::from_members(&r, &[4, 8]),
            Err(IdealError::NotAnIdeal { .. })
        ));
        assert!(matches!(
            Ideal::from_members(&r, &[0, 13]),
            Err(IdealError::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn mixed_ring_operands_are_rejected() {
        let a = Ideal::zero(&zmod(12));
        let b = Ideal::zero(&zmod(16));
        assert_eq!(a.sum(&b), Err(IdealError::RingMismatch));
        assert_eq!(a.product(&b), Err(IdealError::RingMismatch));
        assert_eq!(a.intersect(&b), Err(IdealError::RingMismatch));
        assert_eq!(a.colon_ideal(&b), Err(IdealError::RingMismatch));
    }

    #[test]
    fn colon_is_monotone_and_contains_the_ideal() {
        let r = zmod(24);
        let ideals = Ideal::enumerate(&r);
        for i in &ideals {
            for x in r.elements() {
                let c = i.colon_elem(x);
                assert!(i.is_subset(&c));
            }
            for j in &ideals {
                if i.is_subset(j) {
                    for x in r.elements() {
                        assert!(i.colon_elem(x).is_subset(&j.colon_elem(x)));
                    }
                }
            }
        }
    }

    #[test]
    fn radical_laws() {
        let r = zmod(36);
        let ideals = Ideal::enumerate(&r);
        for i in &ideals {
            let rad = i.radical();
            assert!(i.is_subset(&rad));
            assert_eq!(rad.radical(), rad);
            for j in &ideals {
                let both = i.intersect(j).unwrap().radical();
                let sep = rad.intersect(&j.radical()).unwrap();
                assert_eq!(both, sep);
            }
        }
    }
}
