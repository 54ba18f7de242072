//! Product-ring machinery: componentwise map pairs and the classification
//! of primary product ideals by factor-level data.
//!
//! For factor maps (δ₁, φ₁) and (δ₂, φ₂) the hat maps act componentwise:
//! δ̂(I₁×I₂) = δ₁(I₁)×δ₂(I₂) and φ̂(I₁×I₂) = φ₁(I₁)×φ₂(I₂), where the empty
//! image absorbs — if either coordinate reduction comes out empty, the
//! product reduction is empty.
//!
//! Every ideal of a finite product ring splits as a product of factor
//! ideals (multiplying by the idempotents (1,0) and (0,1) keeps both
//! projections inside the ideal), so the whole product lattice is reachable
//! through `split_ideal`/`merge_ideals` and the hat maps are total.
//!
//! `classify_product` names the factor-level description that governs the
//! witness set of I₁×I₂, evaluates the hypothesis gates of that
//! description, computes the predicted witness pairs from factor data
//! alone, and cross-checks them against the direct decision on the product
//! ring.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::ElemSet;
use crate::ideal::Ideal;
use crate::maps::{
    ExpansionFn, ExpansionTable, MapError, ReductionFn, ReductionImage, ReductionTable,
};
use crate::multset::MultSet;
use crate::predicates::{is_phi_delta_s_primary, PredicateError};
use crate::ring::Ring;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProductError {
    #[error("ring is not a product ring")]
    NotAProduct,
    #[error("arguments belong to different rings")]
    RingMismatch,
    #[error("ideal is not proper")]
    NotProper,
    #[error("ideal meets the multiplicative set")]
    MeetsS,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Predicate(#[from] PredicateError),
}

/// Project an ideal of a product ring onto its two factors.
pub fn split_ideal(ideal: &Ideal) -> Result<(Ideal, Ideal), ProductError> {
    let ring = ideal.ring();
    let (left, right) = ring.product_parts().ok_or(ProductError::NotAProduct)?;
    let mut ls = ElemSet::empty(left.order());
    let mut rs = ElemSet::empty(right.order());
    for m in ideal.members().iter() {
        let (a, b) = ring.unpair(m).expect("member of a product ring");
        ls.insert(a);
        rs.insert(b);
    }
    let split = (
        Ideal::from_set_unchecked(left, ls),
        Ideal::from_set_unchecked(right, rs),
    );
    debug_assert_eq!(
        merge_ideals(ring, &split.0, &split.1).as_ref(),
        Ok(ideal),
        "ideal of a product ring must be a product of factor ideals"
    );
    Ok(split)
}

/// Combine factor ideals into the ideal I₁×I₂ of the product ring.
pub fn merge_ideals(product: &Ring, left: &Ideal, right: &Ideal) -> Result<Ideal, ProductError> {
    let (lr, rr) = product.product_parts().ok_or(ProductError::NotAProduct)?;
    if !lr.same_ring(left.ring()) || !rr.same_ring(right.ring()) {
        return Err(ProductError::RingMismatch);
    }
    let mut set = ElemSet::empty(product.order());
    for a in left.members().iter() {
        for b in right.members().iter() {
            set.insert(product.pair(a, b).expect("factor indices in range"));
        }
    }
    Ok(Ideal::from_set_unchecked(product, set))
}

/// Componentwise expansion/reduction pair on a product ring.
#[derive(Clone)]
pub struct ProductMaps {
    delta_left: ExpansionFn,
    phi_left: ReductionFn,
    delta_right: ExpansionFn,
    phi_right: ReductionFn,
}

impl ProductMaps {
    pub fn new(
        delta_left: ExpansionFn,
        phi_left: ReductionFn,
        delta_right: ExpansionFn,
        phi_right: ReductionFn,
    ) -> ProductMaps {
        ProductMaps {
            delta_left,
            phi_left,
            delta_right,
            phi_right,
        }
    }

    pub fn delta_left(&self) -> &ExpansionFn {
        &self.delta_left
    }

    pub fn phi_left(&self) -> &ReductionFn {
        &self.phi_left
    }

    pub fn delta_right(&self) -> &ExpansionFn {
        &self.delta_right
    }

    pub fn phi_right(&self) -> &ReductionFn {
        &self.phi_right
    }

    /// δ̂(I₁×I₂) = δ₁(I₁)×δ₂(I₂).
    pub fn delta_hat(&self, ideal: &Ideal) -> Result<Ideal, ProductError> {
        let (l, r) = split_ideal(ideal)?;
        let dl = self.delta_left.apply(&l)?;
        let dr = self.delta_right.apply(&r)?;
        merge_ideals(ideal.ring(), &dl, &dr)
    }

    /// φ̂(I₁×I₂) = φ₁(I₁)×φ₂(I₂), empty if either coordinate is empty.
    pub fn phi_hat(&self, ideal: &Ideal) -> Result<ReductionImage, ProductError> {
        let (l, r) = split_ideal(ideal)?;
        match (self.phi_left.apply(&l)?, self.phi_right.apply(&r)?) {
            (ReductionImage::Of(a), ReductionImage::Of(b)) => {
                Ok(ReductionImage::Of(merge_ideals(ideal.ring(), &a, &b)?))
            }
            _ => Ok(ReductionImage::Empty),
        }
    }

    /// Realize δ̂ as a table-backed expansion on the product's lattice, so
    /// it can feed the generic decision procedures.
    pub fn as_expansion(&self, product: &Ring) -> Result<ExpansionFn, ProductError> {
        if product.product_parts().is_none() {
            return Err(ProductError::NotAProduct);
        }
        let mut images: BTreeMap<ElemSet, Ideal> = BTreeMap::new();
        for ideal in Ideal::enumerate(product) {
            images.insert(ideal.members().clone(), self.delta_hat(&ideal)?);
        }
        Ok(ExpansionFn::Table(ExpansionTable::from_fn(product, |i| {
            images[i.members()].clone()
        })))
    }

    /// Realize φ̂ as a table-backed reduction on the product's lattice.
    pub fn as_reduction(&self, product: &Ring) -> Result<ReductionFn, ProductError> {
        if product.product_parts().is_none() {
            return Err(ProductError::NotAProduct);
        }
        let mut images: BTreeMap<ElemSet, ReductionImage> = BTreeMap::new();
        for ideal in Ideal::enumerate(product) {
            images.insert(ideal.members().clone(), self.phi_hat(&ideal)?);
        }
        Ok(ReductionFn::Table(ReductionTable::from_fn(product, |i| {
            images[i.members()].clone()
        })))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorWitnesses {
    pub left: Option<Vec<usize>>,
    pub right: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GateRecord {
    pub passed: Vec<String>,
    pub failed: Vec<String>,
}

/// Outcome of classifying a product ideal: which factor-level description
/// applies, the gates it rests on, the witness pairs it predicts from
/// factor data, and the directly computed witness pairs on the product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductClassification {
    pub case: String,
    pub factor_witnesses: FactorWitnesses,
    pub gates: GateRecord,
    pub product_witnesses: Vec<[usize; 2]>,
    pub predicted_witnesses: Vec<[usize; 2]>,
    pub consistent: bool,
}

/// Witness set of one factor, or None when the side's own standing
/// preconditions fail (full ideal, or ideal meeting its multiplicative
/// set) and no factor-level witness set is defined.
fn side_witnesses(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    s: &MultSet,
) -> Result<Option<Vec<usize>>, ProductError> {
    match is_phi_delta_s_primary(ideal, phi, delta, s) {
        Ok(rep) => Ok(Some(rep.witnesses)),
        Err(PredicateError::NotProper) | Err(PredicateError::MeetsS) => Ok(None),
        Err(e) => Err(ProductError::Predicate(e)),
    }
}

fn image_is_whole_ring(img: &ReductionImage) -> bool {
    img.as_ideal().is_some_and(|j| !j.is_proper())
}

fn image_fixes(img: &ReductionImage, ideal: &Ideal) -> bool {
    img.as_ideal().is_some_and(|j| j == ideal)
}

/// Decide which factor-level description governs I₁×I₂ and cross-check its
/// predicted witness pairs against the direct decision on the product.
///
/// Cases:
/// - `left_full_reduction_proper` / `right_full_reduction_proper`: one
///   factor is the whole ring and its reduction moves it somewhere proper
///   (or empty); witnesses come from the other factor's plain expansion
///   decision.
/// - `left_full_reduction_fixed` / `right_full_reduction_fixed`: one factor
///   is the whole ring and its reduction fixes it; witnesses come from the
///   other factor's full reduction/expansion decision.
/// - `both_factors_shifted`: both factors proper and moved by their
///   reductions; a witness pair needs one coordinate inside its factor
///   ideal and the other a plain factor witness.
/// - `reduction_fixed_left` / `reduction_fixed_right`: both factors proper,
///   exactly one fixed by its reduction; the fixed side contributes
///   membership, the moved side its full witness set.
///
/// The both-proper cases rest on hypothesis gates (expansions keep the
/// factor ideals proper; each multiplicative set avoids the reduction
/// image of a moved factor and meets the expansion image only inside the
/// ideal; the product reduction moves the ideal). A failed gate is an
/// error naming it, since no description covers the configuration.
pub fn classify_product(
    product: &Ring,
    left_ideal: &Ideal,
    right_ideal: &Ideal,
    maps: &ProductMaps,
    s_left: &MultSet,
    s_right: &MultSet,
) -> Result<ProductClassification, ProductError> {
    let (lr, rr) = product.product_parts().ok_or(ProductError::NotAProduct)?;
    if !lr.same_ring(left_ideal.ring())
        || !rr.same_ring(right_ideal.ring())
        || !lr.same_ring(s_left.ring())
        || !rr.same_ring(s_right.ring())
    {
        return Err(ProductError::RingMismatch);
    }
    let left_proper = left_ideal.is_proper();
    let right_proper = right_ideal.is_proper();
    if !left_proper && !right_proper {
        return Err(ProductError::NotProper);
    }
    let left_meets = !s_left.disjoint_from(left_ideal);
    let right_meets = !s_right.disjoint_from(right_ideal);
    if left_meets && right_meets {
        return Err(ProductError::MeetsS);
    }

    let mut gates = GateRecord::default();
    let record_gate = |name: &str, ok: bool, gates: &mut GateRecord| {
        if ok {
            gates.passed.push(name.to_string());
        } else {
            gates.failed.push(name.to_string());
        }
        ok
    };

    let case: &str;
    let fw_left: Option<Vec<usize>>;
    let fw_right: Option<Vec<usize>>;
    let mut predicted: Vec<usize> = Vec::new();
    let push_pairs = |acc: &mut Vec<usize>, lefts: &[usize], rights: &[usize]| {
        for &a in lefts {
            for &b in rights {
                acc.push(product.pair(a, b).expect("factor indices in range"));
            }
        }
    };

    if !right_proper || !left_proper {
        // One factor is the whole ring: the decision collapses onto the
        // other factor. Which decision depends on whether the reduction
        // moves the whole ring.
        let (full_phi, full_ring) = if !right_proper {
            (&maps.phi_right, rr)
        } else {
            (&maps.phi_left, lr)
        };
        let full_image = full_phi.apply(&Ideal::unit(full_ring))?;
        let stays_proper = record_gate(
            "full_factor_reduction_stays_proper",
            !image_is_whole_ring(&full_image),
            &mut gates,
        );
        if !right_proper {
            let wl = if stays_proper {
                case = "right_full_reduction_proper";
                side_witnesses(left_ideal, &ReductionFn::Empty, &maps.delta_left, s_left)?
            } else {
                case = "right_full_reduction_fixed";
                side_witnesses(left_ideal, &maps.phi_left, &maps.delta_left, s_left)?
            };
            let wl = wl.expect("proper factor ideal disjoint from its mult set");
            push_pairs(&mut predicted, &wl, &s_right.members().to_vec());
            fw_left = Some(wl);
            fw_right = None;
        } else {
            let wr = if stays_proper {
                case = "left_full_reduction_proper";
                side_witnesses(right_ideal, &ReductionFn::Empty, &maps.delta_right, s_right)?
            } else {
                case = "left_full_reduction_fixed";
                side_witnesses(right_ideal, &maps.phi_right, &maps.delta_right, s_right)?
            };
            let wr = wr.expect("proper factor ideal disjoint from its mult set");
            push_pairs(&mut predicted, &s_left.members().to_vec(), &wr);
            fw_left = None;
            fw_right = Some(wr);
        }
    } else {
        // Both factors proper: the shape of the witness set is governed by
        // which factor reductions fix their ideals, under hypothesis gates.
        let phi_l = maps.phi_left.apply(left_ideal)?;
        let phi_r = maps.phi_right.apply(right_ideal)?;
        let delta_l = maps.delta_left.apply(left_ideal)?;
        let delta_r = maps.delta_right.apply(right_ideal)?;
        let left_fixed = image_fixes(&phi_l, left_ideal);
        let right_fixed = image_fixes(&phi_r, right_ideal);

        record_gate(
            "left_expansion_stays_proper",
            delta_l.is_proper(),
            &mut gates,
        );
        record_gate(
            "right_expansion_stays_proper",
            delta_r.is_proper(),
            &mut gates,
        );
        record_gate(
            "left_mult_set_avoids_reduction_image",
            left_fixed || phi_l.as_ideal().is_none_or(|j| s_left.disjoint_from(j)),
            &mut gates,
        );
        record_gate(
            "right_mult_set_avoids_reduction_image",
            right_fixed || phi_r.as_ideal().is_none_or(|j| s_right.disjoint_from(j)),
            &mut gates,
        );
        record_gate(
            "left_mult_set_meets_expansion_consistently",
            s_left.meet_ideal(&delta_l).is_empty()
                || s_left.meet_ideal(left_ideal) == s_left.meet_ideal(&delta_l),
            &mut gates,
        );
        record_gate(
            "right_mult_set_meets_expansion_consistently",
            s_right.meet_ideal(&delta_r).is_empty()
                || s_right.meet_ideal(right_ideal) == s_right.meet_ideal(&delta_r),
            &mut gates,
        );
        record_gate(
            "reduction_moves_product",
            !(left_fixed && right_fixed),
            &mut gates,
        );
        if let Some(name) = gates.failed.first() {
            return Err(ProductError::HypothesisFailed(name.clone()));
        }

        // The two membership sets S₁∩I₁, S₂∩I₂ gate the branches; at most
        // one is nonempty here, since the product set avoids the product
        // ideal.
        let left_in = s_left.meet_ideal(left_ideal).to_vec();
        let right_in = s_right.meet_ideal(right_ideal).to_vec();

        let plain = ReductionFn::Empty;
        match (left_fixed, right_fixed) {
            (false, false) => {
                case = "both_factors_shifted";
                fw_left = side_witnesses(left_ideal, &plain, &maps.delta_left, s_left)?;
                fw_right = side_witnesses(right_ideal, &plain, &maps.delta_right, s_right)?;
                if !right_in.is_empty() {
                    let wl = fw_left.as_deref().expect("side disjoint from its mult set");
                    push_pairs(&mut predicted, wl, &right_in);
                }
                if !left_in.is_empty() {
                    let wr = fw_right
                        .as_deref()
                        .expect("side disjoint from its mult set");
                    push_pairs(&mut predicted, &left_in, wr);
                }
            }
            (false, true) => {
                case = "reduction_fixed_right";
                fw_left = side_witnesses(left_ideal, &maps.phi_left, &maps.delta_left, s_left)?;
                fw_right = side_witnesses(right_ideal, &plain, &maps.delta_right, s_right)?;
                if !right_in.is_empty() {
                    let wl = fw_left.as_deref().expect("side disjoint from its mult set");
                    push_pairs(&mut predicted, wl, &right_in);
                }
                if !left_in.is_empty() {
                    let wr = fw_right
                        .as_deref()
                        .expect("side disjoint from its mult set");
                    push_pairs(&mut predicted, &left_in, wr);
                }
            }
            (true, false) => {
                case = "reduction_fixed_left";
                fw_left = side_witnesses(left_ideal, &plain, &maps.delta_left, s_left)?;
                fw_right =
                    side_witnesses(right_ideal, &maps.phi_right, &maps.delta_right, s_right)?;
                if !left_in.is_empty() {
                    let wr = fw_right
                        .as_deref()
                        .expect("side disjoint from its mult set");
                    push_pairs(&mut predicted, &left_in, wr);
                }
                if !right_in.is_empty() {
                    let wl = fw_left.as_deref().expect("side disjoint from its mult set");
                    push_pairs(&mut predicted, wl, &right_in);
                }
            }
            (true, true) => unreachable!("gated above"),
        }
    }

    predicted.sort_unstable();
    predicted.dedup();

    // Direct decision on the product ring, against the same hat maps.
    let ideal = merge_ideals(product, left_ideal, right_ideal)?;
    let s_product = MultSet::product(s_left, s_right, product).ok_or(ProductError::RingMismatch)?;
    let delta_hat = maps.as_expansion(product)?;
    let phi_hat = maps.as_reduction(product)?;
    let direct = is_phi_delta_s_primary(&ideal, &phi_hat, &delta_hat, &s_product)?;

    let consistent = direct.witnesses == predicted;
    let to_pairs = |indices: &[usize]| -> Vec<[usize; 2]> {
        indices
            .iter()
            .map(|&i| {
                let (a, b) = product.unpair(i).expect("product element");
                [a, b]
            })
            .collect()
    };

    Ok(ProductClassification {
        case: case.to_string(),
        factor_witnesses: FactorWitnesses {
            left: fw_left,
            right: fw_right,
        },
        gates,
        product_witnesses: to_pairs(&direct.witnesses),
        predicted_witnesses: to_pairs(&predicted),
        consistent,
    })
}
