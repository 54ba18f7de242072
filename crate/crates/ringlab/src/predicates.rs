//! Decision procedures for the generalized primary conditions.
//!
//! The central predicate: given a proper ideal I disjoint from a
//! multiplicatively closed set S, a reduction φ and an expansion δ, an
//! element s ∈ S is a *witness* when every product ab ∈ I − φ(I) forces
//! sa ∈ I or sb ∈ δ(I). The classical notions are instantiations:
//! prime (φ empty, δ identity, S = {1}), primary (δ radical), S-prime,
//! weakly S-prime (φ zero), almost variants (φ square), and so on.
//!
//! Reports carry the full witness subset of S rather than a single
//! distinguished element, so both "there exists s" and "associated to a
//! fixed s" readings of the condition can be checked, and monotonicity in
//! φ and δ becomes testable.

use serde::Serialize;

use crate::bitset::ElemSet;
use crate::ideal::Ideal;
use crate::maps::{ExpansionFn, MapError, ReductionFn, ReductionImage};
use crate::multset::MultSet;
use crate::ring::Ring;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PredicateError {
    #[error("ideal is not proper")]
    NotProper,
    #[error("ideal meets the multiplicative set")]
    MeetsS,
    #[error("arguments belong to different rings")]
    RingMismatch,
    #[error("element {index} is out of range for a ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Pair certifying that an element s fails the primary condition, with the
/// full condition trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub s: usize,
    pub a: usize,
    pub b: usize,
    pub ab: usize,
    pub ab_in_ideal: bool,
    pub ab_in_phi_image: bool,
    pub sa: usize,
    pub sa_in_ideal: bool,
    pub sb: usize,
    pub sb_in_delta_image: bool,
}

/// Outcome of a witness search over a multiplicative set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub holds: bool,
    pub witnesses: Vec<usize>,
    /// First failing pair, by ascending (a, b), for the least element of S —
    /// present exactly when the witness set is empty.
    pub counterexample: Option<Counterexample>,
}

/// Pair (a, b) with ab ∈ φ(I), sa ∉ I and sb ∉ δ(I) for a fixed s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwinZero {
    pub a: usize,
    pub b: usize,
}

fn check_ring(ideal: &Ideal, ring: &Ring) -> Result<(), PredicateError> {
    if ideal.ring().same_ring(ring) {
        Ok(())
    } else {
        Err(PredicateError::RingMismatch)
    }
}

fn check_elem(ring: &Ring, x: usize) -> Result<(), PredicateError> {
    if x < ring.order() {
        Ok(())
    } else {
        Err(PredicateError::ElementOutOfRange {
            index: x,
            order: ring.order(),
        })
    }
}

fn check_standing(ideal: &Ideal, mult_set: &MultSet) -> Result<(), PredicateError> {
    check_ring(ideal, mult_set.ring())?;
    if !ideal.is_proper() {
        return Err(PredicateError::NotProper);
    }
    if !mult_set.disjoint_from(ideal) {
        return Err(PredicateError::MeetsS);
    }
    Ok(())
}

/// Row table of a set: row a = { b : ab ∈ set }.
pub(crate) fn membership_rows(ring: &Ring, set: &ElemSet) -> Vec<ElemSet> {
    let n = ring.order();
    (0..n)
        .map(|a| {
            let mut row = ElemSet::empty(n);
            for b in 0..n {
                if set.contains(ring.mul(a, b)) {
                    row.insert(b);
                }
            }
            row
        })
        .collect()
}

/// Decision rows for (I, φ): row a = { b : ab ∈ I − φ(I) }.
pub(crate) fn decision_rows(
    ring: &Ring,
    ideal_set: &ElemSet,
    phi_img: &ReductionImage,
) -> Vec<ElemSet> {
    let mut rows = membership_rows(ring, ideal_set);
    if let ReductionImage::Of(p) = phi_img {
        let phi_rows = membership_rows(ring, p.members());
        for (r, pr) in rows.iter_mut().zip(&phi_rows) {
            *r = r.minus(pr);
        }
    }
    rows
}

/// { b : sb ∈ set }, the right-hand acceptance set for a fixed s.
fn scaled_preimage(ring: &Ring, set: &ElemSet, s: usize) -> ElemSet {
    let n = ring.order();
    let mut out = ElemSet::empty(n);
    for b in 0..n {
        if set.contains(ring.mul(s, b)) {
            out.insert(b);
        }
    }
    out
}

/// s fails exactly when some a has sa ∉ I and a product row not absorbed by
/// δ; the first such (a, first stray b) is the first failing pair in
/// ascending (a, b) order.
fn violation_for_s(
    ring: &Ring,
    ideal_set: &ElemSet,
    phi_img: &ReductionImage,
    delta_set: &ElemSet,
    rows: &[ElemSet],
    s: usize,
) -> Option<Counterexample> {
    let accepted = scaled_preimage(ring, delta_set, s);
    for (a, row) in rows.iter().enumerate() {
        if ideal_set.contains(ring.mul(s, a)) {
            continue;
        }
        let stray = row.minus(&accepted);
        if let Some(b) = stray.first() {
            let ab = ring.mul(a, b);
            return Some(Counterexample {
                s,
                a,
                b,
                ab,
                ab_in_ideal: ideal_set.contains(ab),
                ab_in_phi_image: phi_img.contains(ab),
                sa: ring.mul(s, a),
                sa_in_ideal: ideal_set.contains(ring.mul(s, a)),
                sb: ring.mul(s, b),
                sb_in_delta_image: delta_set.contains(ring.mul(s, b)),
            });
        }
    }
    None
}

pub(crate) fn witness_report_from_images(
    ring: &Ring,
    ideal_set: &ElemSet,
    phi_img: &ReductionImage,
    delta_set: &ElemSet,
    mult_set: &MultSet,
) -> WitnessReport {
    let rows = decision_rows(ring, ideal_set, phi_img);
    let mut witnesses = Vec::new();
    for s in mult_set.iter() {
        if violation_for_s(ring, ideal_set, phi_img, delta_set, &rows, s).is_none() {
            witnesses.push(s);
        }
    }
    let counterexample = if witnesses.is_empty() {
        let least = mult_set.iter().next().expect("multiplicative sets hold 1");
        violation_for_s(ring, ideal_set, phi_img, delta_set, &rows, least)
    } else {
        None
    };
    WitnessReport {
        holds: !witnesses.is_empty(),
        witnesses,
        counterexample,
    }
}

/// The central decision procedure: which s ∈ S witness that I is primary
/// with respect to the reduction φ and the expansion δ.
pub fn is_phi_delta_s_primary(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
) -> Result<WitnessReport, PredicateError> {
    check_standing(ideal, mult_set)?;
    let phi_img = phi.apply(ideal)?;
    let delta_img = delta.apply(ideal)?;
    Ok(witness_report_from_images(
        ideal.ring(),
        ideal.members(),
        &phi_img,
        delta_img.members(),
        mult_set,
    ))
}

/// First failing pair, in ascending (a, b) order, for a specific s — `None`
/// when s is a witness.
pub fn first_violation(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    s: usize,
) -> Result<Option<Counterexample>, PredicateError> {
    check_elem(ideal.ring(), s)?;
    if !ideal.is_proper() {
        return Err(PredicateError::NotProper);
    }
    let phi_img = phi.apply(ideal)?;
    let delta_img = delta.apply(ideal)?;
    let rows = decision_rows(ideal.ring(), ideal.members(), &phi_img);
    Ok(violation_for_s(
        ideal.ring(),
        ideal.members(),
        &phi_img,
        delta_img.members(),
        &rows,
        s,
    ))
}

pub fn is_prime(ideal: &Ideal) -> Result<WitnessReport, PredicateError> {
    is_phi_delta_s_primary(
        ideal,
        &ReductionFn::Empty,
        &ExpansionFn::Identity,
        &MultSet::trivial(ideal.ring()),
    )
}

pub fn is_primary(ideal: &Ideal) -> Result<WitnessReport, PredicateError> {
    is_phi_delta_s_primary(
        ideal,
        &ReductionFn::Empty,
        &ExpansionFn::Radical,
        &MultSet::trivial(ideal.ring()),
    )
}

pub fn is_s_prime(ideal: &Ideal, mult_set: &MultSet) -> Result<WitnessReport, PredicateError> {
    is_phi_delta_s_primary(ideal, &ReductionFn::Empty, &ExpansionFn::Identity, mult_set)
}

pub fn is_weakly_s_prime(
    ideal: &Ideal,
    mult_set: &MultSet,
) -> Result<WitnessReport, PredicateError> {
    is_phi_delta_s_primary(ideal, &ReductionFn::Zero, &ExpansionFn::Identity, mult_set)
}

/// Colon of a reduction image by an element; empty stays empty.
fn image_colon_elem(img: &ReductionImage, a: usize) -> Option<Ideal> {
    match img {
        ReductionImage::Empty => None,
        ReductionImage::Of(i) => Some(i.colon_elem(a)),
    }
}

/// Colon characterization quantified away from (δ(I) : s): for every a with
/// sa ∉ δ(I), either (I : a) ⊆ (I : s) or (I : a) = (φ(I) : a).
pub fn char_colon_delta(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
    s: usize,
) -> Result<bool, PredicateError> {
    check_standing(ideal, mult_set)?;
    check_elem(ideal.ring(), s)?;
    let ring = ideal.ring();
    let phi_img = phi.apply(ideal)?;
    let delta_img = delta.apply(ideal)?;
    let colon_s = ideal.colon_elem(s);
    for a in 0..ring.order() {
        if delta_img.contains(ring.mul(s, a)) {
            continue;
        }
        let colon_a = ideal.colon_elem(a);
        if colon_a.is_subset(&colon_s) {
            continue;
        }
        match image_colon_elem(&phi_img, a) {
            Some(pc) if pc == colon_a => continue,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Colon characterization quantified away from (I : s): for every a with
/// sa ∉ I, either (I : a) ⊆ (δ(I) : s) or (I : a) = (φ(I) : a).
pub fn char_colon_ideal(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
    s: usize,
) -> Result<bool, PredicateError> {
    check_standing(ideal, mult_set)?;
    check_elem(ideal.ring(), s)?;
    let ring = ideal.ring();
    let phi_img = phi.apply(ideal)?;
    let delta_img = delta.apply(ideal)?;
    let delta_colon_s = delta_img.colon_elem(s);
    for a in 0..ring.order() {
        if ideal.contains(ring.mul(s, a)) {
            continue;
        }
        let colon_a = ideal.colon_elem(a);
        if colon_a.is_subset(&delta_colon_s) {
            continue;
        }
        match image_colon_elem(&phi_img, a) {
            Some(pc) if pc == colon_a => continue,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Ideal-pair characterization: whenever AB ⊆ I and AB ⊈ φ(I) for ideals
/// A, B, either sA ⊆ I or sB ⊆ δ(I). Subset tests are phrased through
/// colons, so no products are materialized.
pub fn char_ideal_pairs(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
    s: usize,
) -> Result<bool, PredicateError> {
    check_standing(ideal, mult_set)?;
    check_elem(ideal.ring(), s)?;
    let ring = ideal.ring();
    let phi_img = phi.apply(ideal)?;
    let delta_img = delta.apply(ideal)?;
    let lattice = Ideal::enumerate(ring);
    // sA ⊆ I ⇔ A ⊆ (I : s), sB ⊆ δ(I) ⇔ B ⊆ (δ(I) : s)
    let colon_s = ideal.colon_elem(s);
    let delta_colon_s = delta_img.colon_elem(s);
    for a_ideal in lattice.iter() {
        // AB ⊆ X ⇔ B ⊆ (X : A)
        let i_colon_a = ideal.colon_ideal(a_ideal).expect("same ring");
        let phi_colon_a = match &phi_img {
            ReductionImage::Empty => None,
            ReductionImage::Of(p) => Some(p.colon_ideal(a_ideal).expect("same ring")),
        };
        let a_absorbed = a_ideal.is_subset(&colon_s);
        for b_ideal in lattice.iter() {
            if !b_ideal.is_subset(&i_colon_a) {
                continue; // AB ⊈ I
            }
            if let Some(pc) = &phi_colon_a {
                if b_ideal.is_subset(pc) {
                    continue; // AB ⊆ φ(I)
                }
            }
            if !a_absorbed && !b_ideal.is_subset(&delta_colon_s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All pairs (a, b) with ab ∈ φ(I), sa ∉ I and sb ∉ δ(I), ascending.
pub fn twin_zeros(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
    s: usize,
) -> Result<Vec<TwinZero>, PredicateError> {
    check_ring(ideal, mult_set.ring())?;
    check_elem(ideal.ring(), s)?;
    if !mult_set.disjoint_from(ideal) {
        return Err(PredicateError::MeetsS);
    }
    let ring = ideal.ring();
    let phi_img = phi.apply(ideal)?;
    let delta_img = delta.apply(ideal)?;
    let phi_set = match &phi_img {
        ReductionImage::Empty => return Ok(Vec::new()),
        ReductionImage::Of(p) => p.members(),
    };
    let mut out = Vec::new();
    for a in 0..ring.order() {
        if ideal.contains(ring.mul(s, a)) {
            continue;
        }
        for b in 0..ring.order() {
            if phi_set.contains(ring.mul(a, b)) && !delta_img.contains(ring.mul(s, b)) {
                out.push(TwinZero { a, b });
            }
        }
    }
    Ok(out)
}

/// Qualification for the pair form: AB ⊆ I and AB ⊈ φ(I).
fn qualify_pair(
    ideal: &Ideal,
    phi_img: &ReductionImage,
    a: &Ideal,
    b: &Ideal,
) -> Result<(), PredicateError> {
    let prod = a.product(b).map_err(|_| PredicateError::RingMismatch)?;
    if !prod.is_subset(ideal) {
        return Err(PredicateError::PreconditionFailed(
            "product of the two ideals is not inside the ideal".into(),
        ));
    }
    if ReductionImage::ideal_is_subset(&prod, phi_img) {
        return Err(PredicateError::PreconditionFailed(
            "product of the two ideals lies inside the reduction image".into(),
        ));
    }
    Ok(())
}

/// No (a, b) ∈ A × B is a twin zero; requires AB ⊆ I and AB ⊈ φ(I).
pub fn is_free_twin_zero(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
    s: usize,
    a_ideal: &Ideal,
    b_ideal: &Ideal,
) -> Result<bool, PredicateError> {
    check_ring(ideal, mult_set.ring())?;
    check_ring(a_ideal, ideal.ring())?;
    check_ring(b_ideal, ideal.ring())?;
    check_elem(ideal.ring(), s)?;
    let phi_img = phi.apply(ideal)?;
    qualify_pair(ideal, &phi_img, a_ideal, b_ideal)?;
    let pairs = twin_zeros(ideal, phi, delta, mult_set, s)?;
    Ok(pairs
        .iter()
        .all(|tz| !(a_ideal.contains(tz.a) && b_ideal.contains(tz.b))))
}

/// Every qualifying ideal pair (A, B) is twin-zero-free.
pub fn is_free_twin_zero_global(
    ideal: &Ideal,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mult_set: &MultSet,
    s: usize,
) -> Result<bool, PredicateError> {
    check_ring(ideal, mult_set.ring())?;
    check_elem(ideal.ring(), s)?;
    let ring = ideal.ring();
    let phi_img = phi.apply(ideal)?;
    let pairs = twin_zeros(ideal, phi, delta, mult_set, s)?;
    if pairs.is_empty() {
        return Ok(true);
    }
    // bad rows: for each a, the b's pairing with it as a twin zero
    let mut bad_rows: Vec<ElemSet> = vec![ElemSet::empty(ring.order()); ring.order()];
    for tz in &pairs {
        bad_rows[tz.a].insert(tz.b);
    }
    let lattice = Ideal::enumerate(ring);
    for a_ideal in lattice.iter() {
        let i_colon_a = ideal.colon_ideal(a_ideal).expect("same ring");
        let phi_colon_a = match &phi_img {
            ReductionImage::Empty => None,
            ReductionImage::Of(p) => Some(p.colon_ideal(a_ideal).expect("same ring")),
        };
        for b_ideal in lattice.iter() {
            if !b_ideal.is_subset(&i_colon_a) {
                continue;
            }
            if let Some(pc) = &phi_colon_a {
                if b_ideal.is_subset(pc) {
                    continue;
                }
            }
            for a in a_ideal.members().iter() {
                if !bad_rows[a].is_disjoint(b_ideal.members()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
