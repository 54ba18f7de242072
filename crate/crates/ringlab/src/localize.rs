//! Localization of a finite ring at a multiplicatively closed set.
//!
//! Fractions r/s with s ∈ S are identified when t·(r₁s₂ − r₂s₁) = 0 for some
//! t ∈ S. Classes are indexed by their least representative pair (numerator
//! first, then denominator), so the zero class — which always contains
//! (0, min S) — lands at index 0 as the ring convention requires. The result
//! is materialized as an explicit operation-table ring.

use std::collections::BTreeMap;

use crate::bitset::ElemSet;
use crate::ideal::Ideal;
use crate::maps::{ExpansionFn, ExpansionTable, ReductionFn, ReductionImage, ReductionTable};
use crate::multset::MultSet;
use crate::ring::{table_ring, Ring};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LocalizeError {
    #[error("cannot localize at a set containing 0")]
    ZeroInMultSet,
    #[error("ideal or set belongs to a different ring")]
    RingMismatch,
    #[error(
        "{map} map does not descend to the fraction ring: source ideals {first_source:?} and \
         {second_source:?} extend to the same ideal but their images extend differently"
    )]
    IllDefined {
        map: String,
        first_source: Vec<usize>,
        second_source: Vec<usize>,
    },
}

#[derive(Debug)]
pub struct LocalizedRing {
    source: Ring,
    mult_set: MultSet,
    local: Ring,
    s_list: Vec<usize>,
    /// canonical (numerator, denominator) per class, ascending
    class_reps: Vec<(usize, usize)>,
    /// raw pair index (r * s_list.len() + j) → class index
    class_of: Vec<usize>,
    /// r ↦ class of r/1
    to_local: Vec<usize>,
}

impl LocalizedRing {
    pub fn build(source: &Ring, mult_set: &MultSet) -> Result<LocalizedRing, LocalizeError> {
        if !mult_set.ring().same_ring(source) {
            return Err(LocalizeError::RingMismatch);
        }
        if mult_set.contains_zero() {
            return Err(LocalizeError::ZeroInMultSet);
        }
        let n = source.order();
        let s_list: Vec<usize> = mult_set.iter().collect();
        let s_len = s_list.len();
        let s_pos: BTreeMap<usize, usize> =
            s_list.iter().enumerate().map(|(j, &s)| (s, j)).collect();

        // x is "killed" when some t ∈ S annihilates it; two fractions agree
        // exactly when the cross difference is killed
        let mut killed = ElemSet::empty(n);
        for x in 0..n {
            if s_list.iter().any(|&t| source.mul(t, x) == source.zero()) {
                killed.insert(x);
            }
        }
        let equivalent = |r1: usize, s1: usize, r2: usize, s2: usize| -> bool {
            let cross = source.sub(source.mul(r1, s2), source.mul(r2, s1));
            killed.contains(cross)
        };

        let raw_count = n * s_len;
        let mut class_of = vec![usize::MAX; raw_count];
        let mut class_reps: Vec<(usize, usize)> = Vec::new();
        for r in 0..n {
            for (j, &s) in s_list.iter().enumerate() {
                let raw = r * s_len + j;
                if class_of[raw] != usize::MAX {
                    continue;
                }
                let mut found = None;
                for (c, &(cr, cs)) in class_reps.iter().enumerate() {
                    if equivalent(r, s, cr, cs) {
                        found = Some(c);
                        break;
                    }
                }
                class_of[raw] = match found {
                    Some(c) => c,
                    None => {
                        class_reps.push((r, s));
                        class_reps.len() - 1
                    }
                };
            }
        }

        let order = class_reps.len();
        let class_of_pair = |r: usize, s: usize| -> usize { class_of[r * s_len + s_pos[&s]] };

        let mut add = vec![0usize; order * order];
        let mut mul = vec![0usize; order * order];
        let mut neg = vec![0usize; order];
        for (c1, &(r1, s1)) in class_reps.iter().enumerate() {
            neg[c1] = class_of_pair(source.neg(r1), s1);
            for (c2, &(r2, s2)) in class_reps.iter().enumerate() {
                let num = source.add(source.mul(r1, s2), source.mul(r2, s1));
                let den = source.mul(s1, s2);
                add[c1 * order + c2] = class_of_pair(num, den);
                mul[c1 * order + c2] = class_of_pair(source.mul(r1, r2), den);
            }
        }
        let one = class_of_pair(source.one(), source.one());
        debug_assert_eq!(class_of_pair(source.zero(), s_list[0]), 0);

        let label = format!("Frac({}, S{:?})", source.label(), mult_set.members());
        let local = table_ring(label, order, add, mul, neg, one);

        let to_local = (0..n).map(|r| class_of_pair(r, source.one())).collect();

        Ok(LocalizedRing {
            source: source.clone(),
            mult_set: mult_set.clone(),
            local,
            s_list,
            class_reps,
            class_of,
            to_local,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.local
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn mult_set(&self) -> &MultSet {
        &self.mult_set
    }

    /// Image of a source element under r ↦ r/1.
    pub fn to_local(&self, r: usize) -> usize {
        self.to_local[r]
    }

    /// Canonical (numerator, denominator) representative of a class.
    pub fn class_rep(&self, class: usize) -> (usize, usize) {
        self.class_reps[class]
    }

    /// Class of an arbitrary fraction r/s (s must lie in the set).
    pub fn class_of_fraction(&self, r: usize, s: usize) -> Option<usize> {
        let j = self.s_list.iter().position(|&x| x == s)?;
        Some(self.class_of[r * self.s_list.len() + j])
    }

    /// Extension I·S⁻¹R = { i/s : i ∈ I, s ∈ S } as an ideal of the
    /// fraction ring.
    pub fn extend(&self, ideal: &Ideal) -> Result<Ideal, LocalizeError> {
        if !ideal.ring().same_ring(&self.source) {
            return Err(LocalizeError::RingMismatch);
        }
        let s_len = self.s_list.len();
        let mut members = ElemSet::empty(self.local.order());
        for i in ideal.members().iter() {
            for j in 0..s_len {
                members.insert(self.class_of[i * s_len + j]);
            }
        }
        Ok(Ideal::from_set_unchecked(&self.local, members))
    }

    /// Contraction: the preimage of a fraction-ring ideal under r ↦ r/1.
    pub fn contract(&self, ideal: &Ideal) -> Result<Ideal, LocalizeError> {
        if !ideal.ring().same_ring(&self.local) {
            return Err(LocalizeError::RingMismatch);
        }
        let mut members = ElemSet::empty(self.source.order());
        for r in 0..self.source.order() {
            if ideal.contains(self.to_local[r]) {
                members.insert(r);
            }
        }
        Ok(Ideal::from_set_unchecked(&self.source, members))
    }

    /// Saturation: every source element whose image is a unit of the
    /// fraction ring. Contains the original set.
    pub fn saturation(&self) -> MultSet {
        let mut members = ElemSet::empty(self.source.order());
        for r in 0..self.source.order() {
            if self.local.is_unit(self.to_local[r]) {
                members.insert(r);
            }
        }
        MultSet::from_set_unchecked(&self.source, members)
    }

    /// Transport an expansion to the fraction ring via extension: the image
    /// of an extended ideal is the extension of the source image. Fails when
    /// two source ideals with the same extension disagree, carrying the
    /// offending pair.
    pub fn localized_expansion(&self, delta: &ExpansionFn) -> Result<ExpansionFn, LocalizeError> {
        let mut seen: BTreeMap<ElemSet, (ElemSet, ElemSet)> = BTreeMap::new();
        for j in Ideal::enumerate(&self.source).iter() {
            let k = self.extend(j)?;
            let img = self.extend(&delta.apply(j).map_err(|_| LocalizeError::RingMismatch)?)?;
            match seen.get(k.members()) {
                Some((j0, img0)) if img0 != img.members() => {
                    return Err(LocalizeError::IllDefined {
                        map: "expansion".into(),
                        first_source: j0.to_vec(),
                        second_source: j.members().to_vec(),
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert(
                        k.members().clone(),
                        (j.members().clone(), img.members().clone()),
                    );
                }
            }
        }
        let table = ExpansionTable::from_fn(&self.local, |k| match seen.get(k.members()) {
            Some((_, img)) => Ideal::from_set_unchecked(&self.local, img.clone()),
            None => {
                // every fraction-ring ideal is the extension of its
                // contraction, so this arm is unreachable; keep it total
                let c = self.contract(k).expect("same ring");
                let d = delta.apply(&c).expect("same ring");
                self.extend(&d).expect("same ring")
            }
        });
        Ok(ExpansionFn::Table(table))
    }

    /// Transport a reduction to the fraction ring via extension; the empty
    /// image stays empty. Same ill-definedness detection as for expansions.
    pub fn localized_reduction(&self, phi: &ReductionFn) -> Result<ReductionFn, LocalizeError> {
        let mut seen: BTreeMap<ElemSet, (ElemSet, Option<ElemSet>)> = BTreeMap::new();
        for j in Ideal::enumerate(&self.source).iter() {
            let k = self.extend(j)?;
            let img = match phi.apply(j).map_err(|_| LocalizeError::RingMismatch)? {
                ReductionImage::Empty => None,
                ReductionImage::Of(i) => Some(self.extend(&i)?.members().clone()),
            };
            match seen.get(k.members()) {
                Some((j0, img0)) if *img0 != img => {
                    return Err(LocalizeError::IllDefined {
                        map: "reduction".into(),
                        first_source: j0.to_vec(),
                        second_source: j.members().to_vec(),
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert(k.members().clone(), (j.members().clone(), img));
                }
            }
        }
        let table = ReductionTable::from_fn(&self.local, |k| match seen.get(k.members()) {
            Some((_, Some(img))) => {
                ReductionImage::Of(Ideal::from_set_unchecked(&self.local, img.clone()))
            }
            Some((_, None)) => ReductionImage::Empty,
            None => {
                let c = self.contract(k).expect("same ring");
                match phi.apply(&c).expect("same ring") {
                    ReductionImage::Empty => ReductionImage::Empty,
                    ReductionImage::Of(i) => {
                        ReductionImage::Of(self.extend(&i).expect("same ring"))
                    }
                }
            }
        });
        Ok(ReductionFn::Table(table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{check_expansion_axioms, check_reduction_axioms};
    use crate::ring::{build_ring, verify_ring_axioms, RingDesc};

    fn zmod(n: usize) -> Ring {
        build_ring(&RingDesc::Zmod { n }).unwrap()
    }

    #[test]
    fn fraction_ring_order_matches_kernel_quotient() {
        // the localization map kills exactly the elements annihilated by the
        // set, and for a finite ring the fraction ring is the quotient by
        // that kernel
        let r = zmod(12);
        let s = MultSet::closure(&r, &[2]).unwrap(); // {1,2,4,8}
        let loc = LocalizedRing::build(&r, &s).unwrap();
        // kernel: x with 4x ≡ 0 mod 12 → {0,3,6,9}, so order 12/4 = 3
        assert_eq!(loc.ring().order(), 3);
        assert!(verify_ring_axioms(loc.ring(), 0, 0));
    }

    #[test]
    fn trivial_set_changes_nothing() {
        let r = zmod(12);
        let s = MultSet::trivial(&r);
        let loc = LocalizedRing::build(&r, &s).unwrap();
        assert_eq!(loc.ring().order(), 12);
        // r ↦ r/1 is a bijection here
        let mut seen = [false; 12];
        for x in 0..12 {
            seen[loc.to_local(x)] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn zero_in_set_is_rejected() {
        let r = zmod(12);
        let s = MultSet::closure(&r, &[6]).unwrap(); // 6*6 = 0
        assert_eq!(
            LocalizedRing::build(&r, &s).unwrap_err(),
            LocalizeError::ZeroInMultSet
        );
    }

    #[test]
    fn contraction_of_extended_zero_is_the_kernel() {
        let r = zmod(12);
        let s = MultSet::closure(&r, &[2]).unwrap();
        let loc = LocalizedRing::build(&r, &s).unwrap();
        let zero = Ideal::zero(&r);
        let back = loc.contract(&loc.extend(&zero).unwrap()).unwrap();
        assert_eq!(back.members().to_vec(), vec![0, 3, 6, 9]);
    }

    #[test]
    fn extension_examples_mod_twelve() {
        let r = zmod(12);
        let s = MultSet::closure(&r, &[2]).unwrap();
        let loc = LocalizedRing::build(&r, &s).unwrap();
        // 4 becomes a unit (4 ≡ 1 in the order-3 fraction ring), so the
        // extension of 4Z is everything
        let four = Ideal::generate(&r, &[4]).unwrap();
        let ext = loc.extend(&four).unwrap();
        assert!(!ext.is_proper());
        assert_eq!(loc.contract(&ext).unwrap(), Ideal::unit(&r));
        // 3 is killed, so 3Z extends to the zero ideal
        let three = Ideal::generate(&r, &[3]).unwrap();
        let ext3 = loc.extend(&three).unwrap();
        assert!(ext3.is_zero());
        assert_eq!(
            loc.contract(&ext3).unwrap().members().to_vec(),
            vec![0, 3, 6, 9]
        );
    }

    #[test]
    fn saturations_mod_twelve() {
        let r = zmod(12);
        let loc1 = LocalizedRing::build(&r, &MultSet::trivial(&r)).unwrap();
        assert_eq!(loc1.saturation().members().to_vec(), vec![1, 5, 7, 11]);
        let loc2 = LocalizedRing::build(&r, &MultSet::closure(&r, &[2]).unwrap()).unwrap();
        assert_eq!(
            loc2.saturation().members().to_vec(),
            vec![1, 2, 4, 5, 7, 8, 10, 11]
        );
        // the saturation always contains the original set
        assert!(MultSet::closure(&r, &[2])
            .unwrap()
            .members()
            .is_subset(loc2.saturation().members()));
    }

    #[test]
    fn catalog_maps_descend() {
        let r = zmod(12);
        let s = MultSet::closure(&r, &[2]).unwrap();
        let loc = LocalizedRing::build(&r, &s).unwrap();
        for d in [ExpansionFn::Identity, ExpansionFn::Radical] {
            let ds = loc.localized_expansion(&d).unwrap();
            assert!(check_expansion_axioms(&ds, loc.ring()), "{}", d.label());
        }
        for p in [
            ReductionFn::Empty,
            ReductionFn::Zero,
            ReductionFn::Power(2),
            ReductionFn::Omega,
            ReductionFn::Identity,
        ] {
            let ps = loc.localized_reduction(&p).unwrap();
            assert!(check_reduction_axioms(&ps, loc.ring()), "{}", p.label());
        }
    }

    #[test]
    fn ill_defined_maps_are_detected() {
        let r = zmod(12);
        let s = MultSet::closure(&r, &[2]).unwrap();
        let loc = LocalizedRing::build(&r, &s).unwrap();
        // (0) and (6) have the same (zero) extension; send (6) somewhere
        // whose extension is everything and keep (0) fixed
        let six = Ideal::generate(&r, &[6]).unwrap();
        let two = Ideal::generate(&r, &[2]).unwrap();
        let t = ExpansionTable::from_fn(&r, |i| if *i == six { two.clone() } else { i.clone() });
        let err = loc.localized_expansion(&ExpansionFn::Table(t)).unwrap_err();
        match err {
            LocalizeError::IllDefined { map, .. } => assert_eq!(map, "expansion"),
            other => panic!("expected ill-defined, got {other:?}"),
        }

        let zero = Ideal::zero(&r);
        let t = ReductionTable::from_fn(&r, |i| {
            if *i == six {
                ReductionImage::Of(zero.clone())
            } else {
                ReductionImage::Empty
            }
        });
        let err = loc.localized_reduction(&ReductionFn::Table(t)).unwrap_err();
        match err {
            LocalizeError::IllDefined { map, .. } => assert_eq!(map, "reduction"),
            other => panic!("expected ill-defined, got {other:?}"),
        }
    }

    #[test]
    fn fraction_ring_of_z80_at_five() {
        let r = zmod(80);
        let s = MultSet::closure(&r, &[5]).unwrap(); // {1,5,25,45,65}
        let loc = LocalizedRing::build(&r, &s).unwrap();
        // kernel: x with 5^k·x ≡ 0 mod 80; 5 is invertible mod 16, so the
        // kernel is {x : 16 | x} = {0,16,32,48,64}, and the order is 80/5=16
        assert_eq!(loc.ring().order(), 16);
        assert!(verify_ring_axioms(loc.ring(), 0, 0));
        let sixteen = Ideal::generate(&r, &[16]).unwrap();
        assert!(loc.extend(&sixteen).unwrap().is_zero());
    }
}
