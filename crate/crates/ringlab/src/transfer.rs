//! Structured ring epimorphisms and the transfer of primary data along
//! them.
//!
//! A surjective ring homomorphism f: R → T pairs an expansion/reduction
//! couple (δ, φ) on the source with a couple (γ, ψ) on the target when
//! δ(f⁻¹(L)) = f⁻¹(γ(L)) and φ(f⁻¹(L)) = f⁻¹(ψ(L)) for every ideal L of
//! the target (the preimage of the empty image is empty). Along such a
//! map, witness sets transfer exactly: s witnesses an ideal containing
//! the kernel if and only if f(s) witnesses its image, and twin zeros
//! correspond pairwise.
//!
//! Two constructions ship. The canonical quotient map R → R/J induces
//! γ(L/J) = δ(L)/J unconditionally, and ψ(L/J) = φ(L)/J provided every
//! reduction image above J either contains J or is empty. The projection
//! R₁×R₂ → R₁ (or R₂) pairs the hat maps with the axis maps provided the
//! off-axis reduction fixes its whole ring, or with the empty reduction
//! when the hat reduction vanishes on pulled-back ideals. Both verify the
//! defining identities on construction; `check_transfer_identities` makes
//! the same verification available for hand-built table pairs.

use std::collections::BTreeMap;

use crate::bitset::ElemSet;
use crate::ideal::Ideal;
use crate::maps::{
    ExpansionFn, ExpansionTable, MapError, ReductionFn, ReductionImage, ReductionTable,
};
use crate::multset::MultSet;
use crate::predicates::{is_phi_delta_s_primary, twin_zeros, PredicateError};
use crate::product::{merge_ideals, ProductError, ProductMaps};
use crate::ring::{quotient_ring, Ring};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TransferError {
    #[error("arguments belong to different rings")]
    RingMismatch,
    #[error("ideal is not proper")]
    NotProper,
    #[error("kernel is not contained in the ideal")]
    KernelNotContained,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Predicate(#[from] PredicateError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiVariant {
    Quotient,
    ProjectionLeft,
    ProjectionRight,
}

/// Which factor a product projection keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Left,
    Right,
}

/// A surjective ring homomorphism with explicit element map and kernel.
#[derive(Debug, Clone)]
pub struct StructuredEpimorphism {
    source: Ring,
    target: Ring,
    map: Vec<usize>,
    kernel: Ideal,
    variant: EpiVariant,
}

/// The target-side couple induced by a structured epimorphism.
#[derive(Debug, Clone)]
pub struct TransferredMaps {
    pub gamma: ExpansionFn,
    pub psi: ReductionFn,
}

fn image_set(map: &[usize], members: &ElemSet, target_order: usize) -> ElemSet {
    let mut out = ElemSet::empty(target_order);
    for x in members.iter() {
        out.insert(map[x]);
    }
    out
}

fn preimage_set(map: &[usize], members: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(map.len());
    for (x, &fx) in map.iter().enumerate() {
        if members.contains(fx) {
            out.insert(x);
        }
    }
    out
}

impl StructuredEpimorphism {
    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn kernel(&self) -> &Ideal {
        &self.kernel
    }

    pub fn variant(&self) -> EpiVariant {
        self.variant
    }

    /// Image of a single element.
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Image ideal f(I); defined when the kernel sits inside I, so that
    /// ideals above the kernel correspond exactly to target ideals.
    pub fn push_ideal(&self, ideal: &Ideal) -> Result<Ideal, TransferError> {
        if !self.source.same_ring(ideal.ring()) {
            return Err(TransferError::RingMismatch);
        }
        if !self.kernel.members().is_subset(ideal.members()) {
            return Err(TransferError::KernelNotContained);
        }
        let set = image_set(&self.map, ideal.members(), self.target.order());
        Ok(Ideal::from_set_unchecked(&self.target, set))
    }

    /// Preimage ideal f⁻¹(Ī); always an ideal containing the kernel.
    pub fn pull_ideal(&self, ideal: &Ideal) -> Result<Ideal, TransferError> {
        if !self.target.same_ring(ideal.ring()) {
            return Err(TransferError::RingMismatch);
        }
        let set = preimage_set(&self.map, ideal.members());
        Ok(Ideal::from_set_unchecked(&self.source, set))
    }

    /// Image multiplicative set f(S).
    pub fn push_mult_set(&self, s: &MultSet) -> Result<MultSet, TransferError> {
        if !self.source.same_ring(s.ring()) {
            return Err(TransferError::RingMismatch);
        }
        let set = image_set(&self.map, s.members(), self.target.order());
        Ok(MultSet::from_set_unchecked(&self.target, set))
    }
}

/// Check the two defining identities of a paired epimorphism over the
/// whole target lattice.
pub fn check_transfer_identities(
    epi: &StructuredEpimorphism,
    delta: &ExpansionFn,
    phi: &ReductionFn,
    gamma: &ExpansionFn,
    psi: &ReductionFn,
) -> Result<bool, TransferError> {
    for target_ideal in Ideal::enumerate(&epi.target) {
        let pulled = epi.pull_ideal(&target_ideal)?;
        if delta.apply(&pulled)? != epi.pull_ideal(&gamma.apply(&target_ideal)?)? {
            return Ok(false);
        }
        let source_img = phi.apply(&pulled)?;
        let target_img = psi.apply(&target_ideal)?;
        let matches = match (&source_img, &target_img) {
            (ReductionImage::Empty, ReductionImage::Empty) => true,
            (ReductionImage::Of(a), ReductionImage::Of(b)) => a == &epi.pull_ideal(b)?,
            _ => false,
        };
        if !matches {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Build γ and ψ as push-forward tables over the target lattice and
/// verify the defining identities; the gates checked by the constructors
/// guarantee verification succeeds.
fn transferred_tables(
    epi: &StructuredEpimorphism,
    delta: &ExpansionFn,
    phi: &ReductionFn,
) -> Result<TransferredMaps, TransferError> {
    let mut gamma_images: BTreeMap<ElemSet, Ideal> = BTreeMap::new();
    let mut psi_images: BTreeMap<ElemSet, ReductionImage> = BTreeMap::new();
    for target_ideal in Ideal::enumerate(&epi.target) {
        let pulled = epi.pull_ideal(&target_ideal)?;
        let expanded = delta.apply(&pulled)?;
        gamma_images.insert(
            target_ideal.members().clone(),
            Ideal::from_set_unchecked(
                &epi.target,
                image_set(&epi.map, expanded.members(), epi.target.order()),
            ),
        );
        let reduced = match phi.apply(&pulled)? {
            ReductionImage::Empty => ReductionImage::Empty,
            ReductionImage::Of(j) => ReductionImage::Of(Ideal::from_set_unchecked(
                &epi.target,
                image_set(&epi.map, j.members(), epi.target.order()),
            )),
        };
        psi_images.insert(target_ideal.members().clone(), reduced);
    }
    let gamma = ExpansionFn::Table(ExpansionTable::from_fn(&epi.target, |i| {
        gamma_images[i.members()].clone()
    }));
    let psi = ReductionFn::Table(ReductionTable::from_fn(&epi.target, |i| {
        psi_images[i.members()].clone()
    }));
    let maps = TransferredMaps { gamma, psi };
    assert!(
        check_transfer_identities(epi, delta, phi, &maps.gamma, &maps.psi)?,
        "induced maps must satisfy the transfer identities once gated"
    );
    Ok(maps)
}

/// The canonical map R → R/J with its induced couple: γ(L/J) = δ(L)/J and
/// ψ(L/J) = φ(L)/J.
///
/// γ always descends, because δ(L) contains L ⊇ J and is therefore a
/// union of J-cosets. ψ descends exactly when every reduction image above
/// J is empty or contains J — in particular whenever φ fixes J, and for
/// the everywhere-empty reduction.
pub fn quotient_epimorphism(
    ring: &Ring,
    j: &Ideal,
    delta: &ExpansionFn,
    phi: &ReductionFn,
) -> Result<(StructuredEpimorphism, TransferredMaps), TransferError> {
    if !ring.same_ring(j.ring()) {
        return Err(TransferError::RingMismatch);
    }
    if !j.is_proper() {
        return Err(TransferError::NotProper);
    }
    for l in Ideal::enumerate(ring) {
        if !j.members().is_subset(l.members()) {
            continue;
        }
        let descends = match phi.apply(&l)? {
            ReductionImage::Empty => true,
            ReductionImage::Of(k) => j.members().is_subset(k.members()),
        };
        if !descends {
            return Err(TransferError::HypothesisFailed(
                "reduction_images_above_kernel_contain_it_or_vanish".to_string(),
            ));
        }
    }
    let target = quotient_ring(ring, j.members(), None).expect("modulus is proper");
    let (_, _, class_of, _) = target.quotient_parts().expect("quotient ring");
    let epi = StructuredEpimorphism {
        source: ring.clone(),
        target: target.clone(),
        map: class_of.to_vec(),
        kernel: j.clone(),
        variant: EpiVariant::Quotient,
    };
    let maps = transferred_tables(&epi, delta, phi)?;
    Ok((epi, maps))
}

/// The projection of a product ring onto one factor, paired with the hat
/// maps of `maps` on the source.
///
/// The expansion always descends to the axis expansion. The reduction
/// descends when the off-axis reduction fixes its whole ring (ψ is then
/// the axis reduction), or when the hat reduction is empty on every
/// pulled-back ideal (ψ is then the empty reduction).
pub fn projection_epimorphism(
    product: &Ring,
    maps: &ProductMaps,
    axis: Axis,
) -> Result<(StructuredEpimorphism, TransferredMaps), TransferError> {
    let (left, right) = product.product_parts().ok_or(TransferError::RingMismatch)?;
    let (target, off_ring, off_phi, axis_phi) = match axis {
        Axis::Left => (left, right, maps.phi_right(), maps.phi_left()),
        Axis::Right => (right, left, maps.phi_left(), maps.phi_right()),
    };
    let off_fixed = match off_phi.apply(&Ideal::unit(off_ring))? {
        ReductionImage::Empty => false,
        ReductionImage::Of(k) => !k.is_proper(),
    };
    if !off_fixed {
        // Without a fixed off-axis ring the hat reduction must vanish on
        // every pulled-back ideal: either the off-axis reduction sends the
        // whole ring to the empty image, or the axis reduction is empty on
        // the entire axis lattice.
        let off_empty = off_phi.apply(&Ideal::unit(off_ring))? == ReductionImage::Empty;
        let axis_all_empty = Ideal::enumerate(target)
            .iter()
            .map(|l| axis_phi.apply(l))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .all(|img| *img == ReductionImage::Empty);
        if !(off_empty || axis_all_empty) {
            return Err(TransferError::HypothesisFailed(
                "off_axis_reduction_fixes_its_ring_or_hat_reduction_vanishes".to_string(),
            ));
        }
    }
    let map: Vec<usize> = product
        .elements()
        .map(|i| {
            let (a, b) = product.unpair(i).expect("product element");
            match axis {
                Axis::Left => a,
                Axis::Right => b,
            }
        })
        .collect();
    let kernel = match axis {
        Axis::Left => merge_ideals(product, &Ideal::zero(left), &Ideal::unit(right))?,
        Axis::Right => merge_ideals(product, &Ideal::unit(left), &Ideal::zero(right))?,
    };
    let epi = StructuredEpimorphism {
        source: product.clone(),
        target: target.clone(),
        map,
        kernel,
        variant: match axis {
            Axis::Left => EpiVariant::ProjectionLeft,
            Axis::Right => EpiVariant::ProjectionRight,
        },
    };
    let delta_hat = maps.as_expansion(product)?;
    let phi_hat = maps.as_reduction(product)?;
    let transferred = transferred_tables(&epi, &delta_hat, &phi_hat)?;
    Ok((epi, transferred))
}

/// Do the twin zeros of an ideal above the kernel correspond exactly to
/// the twin zeros of its image? Checks the pairwise equivalence: (a, b)
/// is a twin zero on the source iff (f(a), f(b)) is one on the target.
pub fn twin_zero_transport(
    epi: &StructuredEpimorphism,
    transferred: &TransferredMaps,
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
    s: usize,
) -> Result<bool, TransferError> {
    if !epi.source.same_ring(ideal.ring()) || !epi.source.same_ring(mult_set.ring()) {
        return Err(TransferError::RingMismatch);
    }
    let report = is_phi_delta_s_primary(ideal, phi, delta, mult_set)?;
    if !report.witnesses.contains(&s) {
        return Err(TransferError::HypothesisFailed(
            "element_must_witness_the_source_ideal".to_string(),
        ));
    }
    let image_ideal = epi.push_ideal(ideal)?;
    let image_set = epi.push_mult_set(mult_set)?;
    let s_image = epi.apply(s);

    let n = epi.source.order();
    let m = epi.target.order();
    let mut source_pairs = ElemSet::empty(n * n);
    for tz in twin_zeros(ideal, phi, delta, mult_set, s)? {
        source_pairs.insert(tz.a * n + tz.b);
    }
    let mut target_pairs = ElemSet::empty(m * m);
    for tz in twin_zeros(
        &image_ideal,
        &transferred.psi,
        &transferred.gamma,
        &image_set,
        s_image,
    )? {
        target_pairs.insert(tz.a * m + tz.b);
    }
    for a in 0..n {
        for b in 0..n {
            let down = target_pairs.contains(epi.apply(a) * m + epi.apply(b));
            if source_pairs.contains(a * n + b) != down {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multset::MultSet;
    use crate::ring::{build_ring, RingDesc};

    fn zmod(n: usize) -> Ring {
        build_ring(&RingDesc::Zmod { n }).unwrap()
    }

    fn product_of(l: usize, r: usize) -> Ring {
        build_ring(&RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: l }),
            right: Box::new(RingDesc::Zmod { n: r }),
        })
        .unwrap()
    }

    fn gens(ring: &Ring, g: &[usize]) -> Ideal {
        Ideal::generate(ring, g).unwrap()
    }

    #[test]
    fn quotient_by_six_transports_the_radical() {
        let ring = zmod(12);
        let j = gens(&ring, &[6]);
        let (epi, maps) =
            quotient_epimorphism(&ring, &j, &ExpansionFn::Radical, &ReductionFn::Identity).unwrap();
        assert_eq!(epi.target().order(), 6);
        assert_eq!(epi.variant(), EpiVariant::Quotient);
        // The induced expansion is the radical of the quotient ring.
        for ideal in Ideal::enumerate(epi.target()) {
            assert_eq!(maps.gamma.apply(&ideal).unwrap(), ideal.radical());
        }
        // The identity reduction descends to the identity.
        for ideal in Ideal::enumerate(epi.target()) {
            assert_eq!(
                maps.psi.apply(&ideal).unwrap(),
                ReductionImage::Of(ideal.clone())
            );
        }
    }

    #[test]
    fn trivial_kernel_reproduces_the_source_maps() {
        let ring = zmod(12);
        let j = Ideal::zero(&ring);
        let (epi, maps) =
            quotient_epimorphism(&ring, &j, &ExpansionFn::Radical, &ReductionFn::Zero).unwrap();
        assert_eq!(epi.target().order(), 12);
        for ideal in Ideal::enumerate(epi.target()) {
            let back = epi.pull_ideal(&ideal).unwrap();
            assert_eq!(
                maps.gamma.apply(&ideal).unwrap().members(),
                ExpansionFn::Radical.apply(&back).unwrap().members()
            );
            assert_eq!(
                maps.psi.apply(&ideal).unwrap(),
                ReductionImage::Of(Ideal::zero(epi.target()))
            );
        }
    }

    #[test]
    fn reduction_that_drops_the_kernel_is_rejected() {
        let ring = zmod(12);
        let j = gens(&ring, &[4]);
        let err =
            quotient_epimorphism(&ring, &j, &ExpansionFn::Radical, &ReductionFn::Zero).unwrap_err();
        assert_eq!(
            err,
            TransferError::HypothesisFailed(
                "reduction_images_above_kernel_contain_it_or_vanish".to_string()
            )
        );
    }

    #[test]
    fn everywhere_empty_reduction_descends_to_the_empty_reduction() {
        let ring = zmod(12);
        let j = gens(&ring, &[4]);
        let (epi, maps) =
            quotient_epimorphism(&ring, &j, &ExpansionFn::Identity, &ReductionFn::Empty).unwrap();
        for ideal in Ideal::enumerate(epi.target()) {
            assert_eq!(maps.psi.apply(&ideal).unwrap(), ReductionImage::Empty);
        }
    }

    #[test]
    fn push_and_pull_respect_the_kernel_correspondence() {
        let ring = zmod(12);
        let j = gens(&ring, &[6]);
        let (epi, _) =
            quotient_epimorphism(&ring, &j, &ExpansionFn::Identity, &ReductionFn::Identity)
                .unwrap();

        let two = gens(&ring, &[2]);
        let pushed = epi.push_ideal(&two).unwrap();
        assert_eq!(pushed.members().to_vec(), vec![0, 2, 4]);
        assert_eq!(epi.pull_ideal(&pushed).unwrap(), two);

        let three = gens(&ring, &[3]);
        let pushed = epi.push_ideal(&three).unwrap();
        assert_eq!(pushed.members().to_vec(), vec![0, 3]);
        assert_eq!(epi.pull_ideal(&pushed).unwrap(), three);

        // 4Z12 misses the kernel element 6.
        assert_eq!(
            epi.push_ideal(&gens(&ring, &[4])),
            Err(TransferError::KernelNotContained)
        );

        // Every ideal of the quotient pulls back to an ideal above the
        // kernel and pushes forward to itself.
        for ideal in Ideal::enumerate(epi.target()) {
            let up = epi.pull_ideal(&ideal).unwrap();
            assert!(j.members().is_subset(up.members()));
            assert_eq!(epi.push_ideal(&up).unwrap(), ideal);
        }
    }

    #[test]
    fn witnesses_transport_across_quotients_exactly() {
        let ring = zmod(12);
        let deltas = [
            ExpansionFn::Identity,
            ExpansionFn::Radical,
            ExpansionFn::plus(gens(&ring, &[2])).unwrap(),
        ];
        let phis = [ReductionFn::Empty, ReductionFn::Identity];
        let mult_sets = [
            MultSet::trivial(&ring),
            MultSet::from_members(&ring, &[1, 5]).unwrap(),
            MultSet::from_members(&ring, &[1, 7]).unwrap(),
        ];
        let mut checked = 0usize;
        for j in Ideal::enumerate_proper(&ring) {
            for delta in &deltas {
                for phi in &phis {
                    let (epi, maps) = quotient_epimorphism(&ring, &j, delta, phi).unwrap();
                    for ideal in Ideal::enumerate_proper(&ring) {
                        if !j.members().is_subset(ideal.members()) {
                            continue;
                        }
                        for s in &mult_sets {
                            if !s.disjoint_from(&ideal) {
                                continue;
                            }
                            let source = match is_phi_delta_s_primary(&ideal, phi, delta, s) {
                                Ok(rep) => rep,
                                Err(_) => continue,
                            };
                            let image_ideal = epi.push_ideal(&ideal).unwrap();
                            let image_set = epi.push_mult_set(s).unwrap();
                            let target = is_phi_delta_s_primary(
                                &image_ideal,
                                &maps.psi,
                                &maps.gamma,
                                &image_set,
                            )
                            .unwrap();
                            for x in s.iter() {
                                assert_eq!(
                                    source.witnesses.contains(&x),
                                    target.witnesses.contains(&epi.apply(x)),
                                    "witness transport failed at s={x}, I={:?}, J={:?}, δ={}, φ={}",
                                    ideal.members(),
                                    j.members(),
                                    delta.label(),
                                    phi.label(),
                                );
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 200, "sweep too small: {checked}");
    }

    #[test]
    fn stable_reduction_collapses_to_the_weakly_condition_on_the_quotient() {
        // For a reduction with φ(φ(I)) = φ(I), witnessing I is the same as
        // weakly witnessing the image of I in the quotient by φ(I).
        let ring = zmod(12);
        let delta = ExpansionFn::Radical;
        let phi = ReductionFn::Omega;
        let ideal = gens(&ring, &[2]);
        let phi_img = match phi.apply(&ideal).unwrap() {
            ReductionImage::Of(j) => j,
            ReductionImage::Empty => unreachable!(),
        };
        assert_eq!(phi_img.members().to_vec(), vec![0, 4, 8]);
        assert_eq!(
            phi.apply(&phi_img).unwrap(),
            ReductionImage::Of(phi_img.clone())
        );

        let (epi, maps) = quotient_epimorphism(&ring, &phi_img, &delta, &phi).unwrap();
        let image_ideal = epi.push_ideal(&ideal).unwrap();
        for s in [
            MultSet::trivial(&ring),
            MultSet::from_members(&ring, &[1, 5]).unwrap(),
            MultSet::from_members(&ring, &[1, 7, 11, 5]).unwrap(),
        ] {
            let source = is_phi_delta_s_primary(&ideal, &phi, &delta, &s).unwrap();
            let image_set = epi.push_mult_set(&s).unwrap();
            let target =
                is_phi_delta_s_primary(&image_ideal, &ReductionFn::Zero, &maps.gamma, &image_set)
                    .unwrap();
            for x in s.iter() {
                assert_eq!(
                    source.witnesses.contains(&x),
                    target.witnesses.contains(&epi.apply(x))
                );
            }
        }
    }

    #[test]
    fn projection_pairs_the_axis_maps_when_the_off_axis_ring_is_fixed() {
        let ring = product_of(6, 8);
        let maps = ProductMaps::new(
            ExpansionFn::Radical,
            ReductionFn::Zero,
            ExpansionFn::Radical,
            ReductionFn::Identity,
        );
        let (epi, transferred) = projection_epimorphism(&ring, &maps, Axis::Left).unwrap();
        assert_eq!(epi.variant(), EpiVariant::ProjectionLeft);
        assert_eq!(epi.target().order(), 6);
        let (left, right) = ring.product_parts().unwrap();
        assert_eq!(
            epi.kernel(),
            &merge_ideals(&ring, &Ideal::zero(left), &Ideal::unit(right)).unwrap()
        );
        for ideal in Ideal::enumerate(epi.target()) {
            assert_eq!(transferred.gamma.apply(&ideal).unwrap(), ideal.radical());
            assert_eq!(
                transferred.psi.apply(&ideal).unwrap(),
                ReductionFn::Zero.apply(&ideal).unwrap()
            );
        }
    }

    #[test]
    fn projection_gate_rejects_a_moving_off_axis_reduction() {
        let ring = product_of(6, 8);
        let maps = ProductMaps::new(
            ExpansionFn::Radical,
            ReductionFn::Zero,
            ExpansionFn::Radical,
            ReductionFn::Zero,
        );
        let err = projection_epimorphism(&ring, &maps, Axis::Left).unwrap_err();
        assert_eq!(
            err,
            TransferError::HypothesisFailed(
                "off_axis_reduction_fixes_its_ring_or_hat_reduction_vanishes".to_string()
            )
        );

        // An everywhere-empty axis reduction vanishes on pulled-back
        // ideals, so the same off-axis reduction is fine.
        let empty_axis = ProductMaps::new(
            ExpansionFn::Radical,
            ReductionFn::Empty,
            ExpansionFn::Radical,
            ReductionFn::Zero,
        );
        let (epi, transferred) = projection_epimorphism(&ring, &empty_axis, Axis::Left).unwrap();
        for ideal in Ideal::enumerate(epi.target()) {
            assert_eq!(
                transferred.psi.apply(&ideal).unwrap(),
                ReductionImage::Empty
            );
        }
    }

    #[test]
    fn witnesses_transport_across_projections() {
        let ring = product_of(6, 8);
        let (left, right) = ring.product_parts().unwrap();
        let maps = ProductMaps::new(
            ExpansionFn::Radical,
            ReductionFn::Zero,
            ExpansionFn::Radical,
            ReductionFn::Identity,
        );
        let (epi, transferred) = projection_epimorphism(&ring, &maps, Axis::Left).unwrap();
        let delta_hat = maps.as_expansion(&ring).unwrap();
        let phi_hat = maps.as_reduction(&ring).unwrap();

        let s = MultSet::product(
            &MultSet::trivial(left),
            &MultSet::from_members(right, &[1, 3]).unwrap(),
            &ring,
        )
        .unwrap();
        for left_ideal in Ideal::enumerate_proper(left) {
            let ideal = merge_ideals(&ring, &left_ideal, &Ideal::unit(right)).unwrap();
            let source = is_phi_delta_s_primary(&ideal, &phi_hat, &delta_hat, &s).unwrap();
            let image_ideal = epi.push_ideal(&ideal).unwrap();
            assert_eq!(image_ideal, left_ideal);
            let image_set = epi.push_mult_set(&s).unwrap();
            let target = is_phi_delta_s_primary(
                &image_ideal,
                &transferred.psi,
                &transferred.gamma,
                &image_set,
            )
            .unwrap();
            for x in s.iter() {
                assert_eq!(
                    source.witnesses.contains(&x),
                    target.witnesses.contains(&epi.apply(x))
                );
            }
        }
    }

    #[test]
    fn hand_built_tables_must_pass_the_identity_check() {
        // Kernel 4Z12 gives a target where the radical moves the zero
        // ideal, so a wrong table is actually caught.
        let ring = zmod(12);
        let j = gens(&ring, &[4]);
        let (epi, maps) =
            quotient_epimorphism(&ring, &j, &ExpansionFn::Radical, &ReductionFn::Identity).unwrap();
        assert!(check_transfer_identities(
            &epi,
            &ExpansionFn::Radical,
            &ReductionFn::Identity,
            &maps.gamma,
            &maps.psi
        )
        .unwrap());
        // Swapping in the wrong target expansion breaks the first identity.
        assert!(!check_transfer_identities(
            &epi,
            &ExpansionFn::Radical,
            &ReductionFn::Identity,
            &ExpansionFn::Identity,
            &maps.psi
        )
        .unwrap());
        // And a zero reduction on the target breaks the second.
        assert!(!check_transfer_identities(
            &epi,
            &ExpansionFn::Radical,
            &ReductionFn::Identity,
            &maps.gamma,
            &ReductionFn::Zero
        )
        .unwrap());
    }

    #[test]
    fn twin_zeros_transport_across_projections() {
        // The zero-times-full ideal of Z6×Z8 keeps its twin zeros when
        // projected onto Z6: pairs multiply to zero on the first axis
        // while both coordinates escape the ideal and its expansion.
        let ring = product_of(6, 8);
        let (left, right) = ring.product_parts().unwrap();
        let maps = ProductMaps::new(
            ExpansionFn::Radical,
            ReductionFn::Zero,
            ExpansionFn::Radical,
            ReductionFn::Identity,
        );
        let (epi, transferred) = projection_epimorphism(&ring, &maps, Axis::Left).unwrap();
        let ideal = merge_ideals(&ring, &Ideal::zero(left), &Ideal::unit(right)).unwrap();
        let delta_hat = maps.as_expansion(&ring).unwrap();
        let phi_hat = maps.as_reduction(&ring).unwrap();
        let s = MultSet::product(&MultSet::trivial(left), &MultSet::trivial(right), &ring).unwrap();
        let one = ring.one();

        // (2,·)·(3,·) lands on zero in the first coordinate, so the source
        // has twin zeros and so does the image ideal (0) of Z6.
        let source_twins = twin_zeros(&ideal, &phi_hat, &delta_hat, &s, one).unwrap();
        assert!(!source_twins.is_empty());
        assert!(
            twin_zero_transport(&epi, &transferred, &ideal, &phi_hat, &delta_hat, &s, one).unwrap()
        );
    }

    #[test]
    fn twin_zeros_transport_across_quotients() {
        let ring = zmod(12);
        let j = gens(&ring, &[6]);
        let deltas = [ExpansionFn::Identity, ExpansionFn::Radical];
        let phis = [ReductionFn::Empty, ReductionFn::Identity];
        let mult_sets = [
            MultSet::trivial(&ring),
            MultSet::from_members(&ring, &[1, 5]).unwrap(),
        ];
        let mut checked = 0usize;
        for delta in &deltas {
            for phi in &phis {
                let (epi, transferred) = quotient_epimorphism(&ring, &j, delta, phi).unwrap();
                for ideal in Ideal::enumerate_proper(&ring) {
                    if !j.members().is_subset(ideal.members()) {
                        continue;
                    }
                    for s in &mult_sets {
                        if !s.disjoint_from(&ideal) {
                            continue;
                        }
                        let report = match is_phi_delta_s_primary(&ideal, phi, delta, s) {
                            Ok(rep) => rep,
                            Err(_) => continue,
                        };
                        for &w in &report.witnesses {
                            assert!(twin_zero_transport(
                                &epi,
                                &transferred,
                                &ideal,
                                phi,
                                delta,
                                s,
                                w
                            )
                            .unwrap());
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 10, "sweep too small: {checked}");
    }

    #[test]
    fn twin_zero_transport_requires_a_witness() {
        let ring = zmod(12);
        let j = Ideal::zero(&ring);
        let delta = ExpansionFn::Radical;
        let phi = ReductionFn::Empty;
        let (epi, transferred) = quotient_epimorphism(&ring, &j, &delta, &phi).unwrap();
        // The zero ideal of Z12 is not radical-primary: 3·4 = 0 escapes.
        let err = twin_zero_transport(
            &epi,
            &transferred,
            &Ideal::zero(&ring),
            &phi,
            &delta,
            &MultSet::trivial(&ring),
            1,
        )
        .unwrap_err();
        assert_eq!(
            err,
            TransferError::HypothesisFailed("element_must_witness_the_source_ideal".to_string())
        );
    }
}
