//! Checks on the colon and ideal-pair characterizations of the primary
//! predicate, the collapse bounds forced by failing plain primality, and the
//! ring-level equivalences between guarded and plain primality.

use serde_json::{json, Value};

use super::{
    config_json, contains_sorted, ideal_json, image_colon_elem, image_json, opt_ideal_json,
    proper_index, witness_table, CheckConfig, RingCtx, TheoremReport,
};
use crate::ideal::Ideal;
use crate::maps::{ExpansionFn, ReductionFn, ReductionImage};
use crate::multset::MultSet;
use crate::predicates::{char_colon_delta, char_colon_ideal, char_ideal_pairs};

/// The defining pair condition and the three derived characterizations (two
/// colon forms and the ideal-pair form) agree on every standing ideal and
/// every candidate witness.
pub(crate) fn characterization_agreement(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    for x in s.iter() {
                        let by_definition = contains_sorted(wits, x);
                        let by_colon_delta = char_colon_delta(ideal, phi, delta, s, x)
                            .expect("standing conditions hold");
                        let by_colon_ideal = char_colon_ideal(ideal, phi, delta, s, x)
                            .expect("standing conditions hold");
                        let by_ideal_pairs = char_ideal_pairs(ideal, phi, delta, s, x)
                            .expect("standing conditions hold");
                        if by_definition == by_colon_delta
                            && by_definition == by_colon_ideal
                            && by_definition == by_ideal_pairs
                        {
                            report.pass();
                        } else {
                            report.violate(
                                config_json(
                                    ctx,
                                    Some(delta),
                                    Some(phi),
                                    Some(s),
                                    &[("ideal", ideal_json(ideal)), ("candidate", json!(x))],
                                ),
                                json!({
                                    "pair_definition": by_definition,
                                    "colon_form_away_from_expansion": by_colon_delta,
                                    "colon_form_away_from_ideal": by_colon_ideal,
                                    "ideal_pair_form": by_ideal_pairs,
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// At a witness w, every colon (I : wa) with w²a outside δ(I) collapses to
/// either (I : w) or (φ(I) : wa).
pub(crate) fn witness_colon_split(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    if wits.is_empty() {
                        report.skip("not_primary");
                        continue;
                    }
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                    for &w in wits {
                        let w_sq = ctx.ring.mul(w, w);
                        let delta_colon_wsq = delta_img.colon_elem(w_sq);
                        let colon_w = ideal.colon_elem(w);
                        let mut failure: Option<Value> = None;
                        for a in ctx.ring.elements() {
                            if delta_colon_wsq.contains(a) {
                                continue;
                            }
                            let wa = ctx.ring.mul(w, a);
                            let colon_wa = ideal.colon_elem(wa);
                            let phi_colon_wa = image_colon_elem(&phi_img, wa);
                            if colon_wa != colon_w && phi_colon_wa.as_ref() != Some(&colon_wa) {
                                failure = Some(json!({
                                    "element": a,
                                    "scaled_element": wa,
                                    "colon_at_scaled": ideal_json(&colon_wa),
                                    "colon_at_witness": ideal_json(&colon_w),
                                    "reduction_colon_at_scaled": opt_ideal_json(&phi_colon_wa),
                                }));
                                break;
                            }
                        }
                        match failure {
                            None => report.pass(),
                            Some(ce) => report.violate(
                                config_json(
                                    ctx,
                                    Some(delta),
                                    Some(phi),
                                    Some(s),
                                    &[("ideal", ideal_json(ideal)), ("witness", json!(w))],
                                ),
                                ce,
                            ),
                        }
                    }
                }
            }
        }
    }
}

/// The colon split with the radical expansion: for a outside (√I : w), the
/// colon (I : wa) is either (I : w) or (φ(I) : wa).
pub(crate) fn witness_colon_split_radical(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    for phi in &ctx.phis {
        for s in &ctx.mult_sets {
            let table = witness_table(ctx, &ExpansionFn::Radical, phi, s);
            for (i, ideal) in ctx.proper.iter().enumerate() {
                let Some(wits) = &table[i] else {
                    report.skip("ideal_meets_mult_set");
                    continue;
                };
                if wits.is_empty() {
                    report.skip("not_primary");
                    continue;
                }
                let rad = ideal.radical();
                let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                for &w in wits {
                    let rad_colon_w = rad.colon_elem(w);
                    let colon_w = ideal.colon_elem(w);
                    let mut failure: Option<Value> = None;
                    for a in ctx.ring.elements() {
                        if rad_colon_w.contains(a) {
                            continue;
                        }
                        let wa = ctx.ring.mul(w, a);
                        let colon_wa = ideal.colon_elem(wa);
                        let phi_colon_wa = image_colon_elem(&phi_img, wa);
                        if colon_wa != colon_w && phi_colon_wa.as_ref() != Some(&colon_wa) {
                            failure = Some(json!({
                                "element": a,
                                "scaled_element": wa,
                                "colon_at_scaled": ideal_json(&colon_wa),
                                "colon_at_witness": ideal_json(&colon_w),
                                "reduction_colon_at_scaled": opt_ideal_json(&phi_colon_wa),
                            }));
                            break;
                        }
                    }
                    match failure {
                        None => report.pass(),
                        Some(ce) => report.violate(
                            config_json(
                                ctx,
                                Some(&ExpansionFn::Radical),
                                Some(phi),
                                Some(s),
                                &[("ideal", ideal_json(ideal)), ("witness", json!(w))],
                            ),
                            ce,
                        ),
                    }
                }
            }
        }
    }
}

/// A witness that does not survive dropping the reduction forces the square
/// of the ideal into the reduction image: I² ⊆ φ(I).
pub(crate) fn square_collapse(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                let plain = witness_table(ctx, delta, &ReductionFn::Empty, s);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    if wits.is_empty() {
                        report.skip("not_primary");
                        continue;
                    }
                    let plain_wits = plain[i]
                        .as_ref()
                        .expect("standing matches across reductions");
                    let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                    let square = ideal.power(2);
                    for &w in wits {
                        if contains_sorted(plain_wits, w) {
                            report.skip("plain_primary_at_witness");
                            continue;
                        }
                        if ReductionImage::ideal_is_subset(&square, &phi_img) {
                            report.pass();
                        } else {
                            report.violate(
                                config_json(
                                    ctx,
                                    Some(delta),
                                    Some(phi),
                                    Some(s),
                                    &[("ideal", ideal_json(ideal)), ("witness", json!(w))],
                                ),
                                json!({
                                    "ideal_square": ideal_json(&square),
                                    "reduction_image": image_json(&phi_img),
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Every witness forces a dichotomy: either I sits inside √φ(I), or the
/// witness multiplies √φ(I) into δ(I).
pub(crate) fn reduction_radical_bound(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    if wits.is_empty() {
                        report.skip("not_primary");
                        continue;
                    }
                    let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                    let phi_radical = phi_img.as_ideal().map(Ideal::radical);
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    for &w in wits {
                        let inside = phi_radical.as_ref().is_some_and(|r| ideal.is_subset(r));
                        let scaled_inside = phi_radical.as_ref().is_none_or(|r| {
                            r.members()
                                .iter()
                                .all(|y| delta_img.contains(ctx.ring.mul(w, y)))
                        });
                        if inside || scaled_inside {
                            report.pass();
                        } else {
                            report.violate(
                                config_json(
                                    ctx,
                                    Some(delta),
                                    Some(phi),
                                    Some(s),
                                    &[("ideal", ideal_json(ideal)), ("witness", json!(w))],
                                ),
                                json!({
                                    "reduction_radical": opt_ideal_json(&phi_radical),
                                    "ideal_inside_reduction_radical": inside,
                                    "witness_scales_radical_into_expansion": scaled_inside,
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// A witness that fails plain primality, and whose ideal colon matches the
/// expansion colon, multiplies I·√φ(I) into (φ(I) : w).
pub(crate) fn witness_product_collapse(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                let plain = witness_table(ctx, delta, &ReductionFn::Empty, s);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    if wits.is_empty() {
                        report.skip("not_primary");
                        continue;
                    }
                    let plain_wits = plain[i]
                        .as_ref()
                        .expect("standing matches across reductions");
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                    for &w in wits {
                        if ideal.colon_elem(w) != delta_img.colon_elem(w) {
                            report.skip("ideal_colon_differs_from_expansion_colon");
                            continue;
                        }
                        if contains_sorted(plain_wits, w) {
                            report.skip("plain_primary_at_witness");
                            continue;
                        }
                        let Some(phi_ideal) = phi_img.as_ideal() else {
                            report.skip("reduction_image_empty");
                            continue;
                        };
                        let product = ideal
                            .product(&phi_ideal.radical())
                            .expect("ideals share a ring");
                        let bound = phi_ideal.colon_elem(w);
                        if product.is_subset(&bound) {
                            report.pass();
                        } else {
                            report.violate(
                                config_json(
                                    ctx,
                                    Some(delta),
                                    Some(phi),
                                    Some(s),
                                    &[("ideal", ideal_json(ideal)), ("witness", json!(w))],
                                ),
                                json!({
                                    "ideal_times_reduction_radical": ideal_json(&product),
                                    "reduction_colon_at_witness": ideal_json(&bound),
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Two primary ideals sharing a witness that fails plain primality on both,
/// with reduction images ordered φ(J) ⊑ φ(I) and the colon gate on I,
/// multiply into (φ(I) : w).
pub(crate) fn two_ideal_product_collapse(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                let plain = witness_table(ctx, delta, &ReductionFn::Empty, s);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    if wits.is_empty() {
                        report.skip("not_primary");
                        continue;
                    }
                    let plain_wits = plain[i]
                        .as_ref()
                        .expect("standing matches across reductions");
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                    for (j, partner) in ctx.proper.iter().enumerate() {
                        let Some(partner_wits) = &table[j] else {
                            report.skip("partner_meets_mult_set");
                            continue;
                        };
                        if partner_wits.is_empty() {
                            report.skip("partner_not_primary");
                            continue;
                        }
                        let common: Vec<usize> = wits
                            .iter()
                            .copied()
                            .filter(|w| contains_sorted(partner_wits, *w))
                            .collect();
                        if common.is_empty() {
                            report.skip("no_common_witness");
                            continue;
                        }
                        let partner_plain = plain[j]
                            .as_ref()
                            .expect("standing matches across reductions");
                        let phi_partner = phi.apply(partner).expect("map applies on its own ring");
                        for &w in &common {
                            if ideal.colon_elem(w) != delta_img.colon_elem(w) {
                                report.skip("ideal_colon_differs_from_expansion_colon");
                                continue;
                            }
                            if !phi_partner.le(&phi_img) {
                                report.skip("reduction_image_not_dominated");
                                continue;
                            }
                            if contains_sorted(plain_wits, w) {
                                report.skip("plain_primary_at_witness");
                                continue;
                            }
                            if contains_sorted(partner_plain, w) {
                                report.skip("partner_plain_primary_at_witness");
                                continue;
                            }
                            let Some(phi_ideal) = phi_img.as_ideal() else {
                                report.skip("reduction_image_empty");
                                continue;
                            };
                            let product = ideal.product(partner).expect("ideals share a ring");
                            let bound = phi_ideal.colon_elem(w);
                            if product.is_subset(&bound) {
                                report.pass();
                            } else {
                                report.violate(
                                    config_json(
                                        ctx,
                                        Some(delta),
                                        Some(phi),
                                        Some(s),
                                        &[
                                            ("ideal", ideal_json(ideal)),
                                            ("partner", ideal_json(partner)),
                                            ("witness", json!(w)),
                                        ],
                                    ),
                                    json!({
                                        "product": ideal_json(&product),
                                        "reduction_colon_at_witness": ideal_json(&bound),
                                    }),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

/// For a stable reduction, guarded primality collapses ring-wide: every
/// primary ideal is plain primary exactly when the (proper, standing)
/// reduction images are plain primary and dropping the reduction changes
/// nothing.
pub(crate) fn reduction_primary_equivalence(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    report.note(
        "ring-level reading: the image side quantifies over reduction images that are proper \
         ideals avoiding the multiplicative set",
    );
    let trivial = MultSet::trivial(&ctx.ring);
    for delta in &ctx.deltas {
        let plain_trivial = witness_table(ctx, delta, &ReductionFn::Empty, &trivial);
        let plain_primary: Vec<bool> = plain_trivial
            .iter()
            .map(|w| {
                !w.as_ref()
                    .expect("trivial set misses proper ideals")
                    .is_empty()
            })
            .collect();
        for phi in &ctx.phis {
            let images: Vec<ReductionImage> = ctx
                .lattice
                .iter()
                .map(|l| phi.apply(l).expect("map applies on its own ring"))
                .collect();
            if images.iter().all(ReductionImage::is_empty_image) {
                for _ in &ctx.mult_sets {
                    report.skip("reduction_is_empty");
                }
                continue;
            }
            let stable = images.iter().all(|img| match img.as_ideal() {
                None => false,
                Some(p) => {
                    let again = phi.apply(p).expect("map applies on its own ring");
                    again.as_ideal() == Some(p)
                }
            });
            if !stable {
                for _ in &ctx.mult_sets {
                    report.skip("reduction_not_stable");
                }
                continue;
            }
            for s in &ctx.mult_sets {
                if s.contains_zero() {
                    report.skip("zero_in_mult_set");
                    continue;
                }
                let table = witness_table(ctx, delta, phi, s);
                let plain_s = witness_table(ctx, delta, &ReductionFn::Empty, s);
                let mut guarded_all_plain = true;
                let mut guarded_ce = Value::Null;
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    if let Some(wits) = &table[i] {
                        if !wits.is_empty() && !plain_primary[i] {
                            guarded_all_plain = false;
                            guarded_ce = ideal_json(ideal);
                            break;
                        }
                    }
                }
                let mut images_all_plain = true;
                let mut image_ce = Value::Null;
                for img in &images {
                    if let Some(p) = img.as_ideal() {
                        if p.is_proper()
                            && s.disjoint_from(p)
                            && !plain_primary[proper_index(ctx, p)]
                        {
                            images_all_plain = false;
                            image_ce = ideal_json(p);
                            break;
                        }
                    }
                }
                let mut unguarded_all_plain = true;
                let mut unguarded_ce = Value::Null;
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    if let Some(wits) = &plain_s[i] {
                        if !wits.is_empty() && !plain_primary[i] {
                            unguarded_all_plain = false;
                            unguarded_ce = ideal_json(ideal);
                            break;
                        }
                    }
                }
                if guarded_all_plain == (images_all_plain && unguarded_all_plain) {
                    report.pass();
                } else {
                    report.violate(
                        config_json(ctx, Some(delta), Some(phi), Some(s), &[]),
                        json!({
                            "every_guarded_primary_is_plain_primary": guarded_all_plain,
                            "guarded_side_failure": guarded_ce,
                            "reduction_images_plain_primary": images_all_plain,
                            "image_side_failure": image_ce,
                            "every_set_primary_is_plain_primary": unguarded_all_plain,
                            "set_side_failure": unguarded_ce,
                        }),
                    );
                }
            }
        }
    }
}

/// With the zero reduction and identity expansion, "every weakly prime ideal
/// is prime" holds exactly when the zero ideal is prime and every set-guarded
/// prime ideal is prime.  The zero ideal is prime exactly when the ring has
/// no zero divisors; that equivalence is asserted alongside.
pub(crate) fn weakly_prime_vs_prime(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    let trivial = MultSet::trivial(&ctx.ring);
    let prime_table = witness_table(ctx, &ExpansionFn::Identity, &ReductionFn::Empty, &trivial);
    let prime: Vec<bool> = prime_table
        .iter()
        .map(|w| {
            !w.as_ref()
                .expect("trivial set misses proper ideals")
                .is_empty()
        })
        .collect();
    let zero = Ideal::zero(&ctx.ring);
    let zero_prime = prime[proper_index(ctx, &zero)];
    let zero_elem = ctx.ring.zero();
    let no_zero_divisors = ctx.ring.elements().all(|a| {
        a == zero_elem
            || ctx
                .ring
                .elements()
                .all(|b| b == zero_elem || ctx.ring.mul(a, b) != zero_elem)
    });
    if zero_prime == no_zero_divisors {
        report.pass();
    } else {
        report.violate(
            config_json(ctx, None, None, None, &[]),
            json!({
                "zero_ideal_prime": zero_prime,
                "no_zero_divisors": no_zero_divisors,
            }),
        );
    }
    for s in &ctx.mult_sets {
        if s.contains_zero() {
            report.skip("zero_in_mult_set");
            continue;
        }
        let weak_table = witness_table(ctx, &ExpansionFn::Identity, &ReductionFn::Zero, s);
        let guarded_table = witness_table(ctx, &ExpansionFn::Identity, &ReductionFn::Empty, s);
        let mut weak_all_prime = true;
        let mut weak_ce = Value::Null;
        let mut guarded_all_prime = true;
        let mut guarded_ce = Value::Null;
        for (i, ideal) in ctx.proper.iter().enumerate() {
            if let Some(wits) = &weak_table[i] {
                if !wits.is_empty() && !prime[i] && weak_all_prime {
                    weak_all_prime = false;
                    weak_ce = ideal_json(ideal);
                }
            }
            if let Some(wits) = &guarded_table[i] {
                if !wits.is_empty() && !prime[i] && guarded_all_prime {
                    guarded_all_prime = false;
                    guarded_ce = ideal_json(ideal);
                }
            }
        }
        let left = weak_all_prime;
        let right = zero_prime && guarded_all_prime;
        if left == right {
            report.pass();
        } else {
            report.violate(
                config_json(ctx, None, None, Some(s), &[]),
                json!({
                    "every_weakly_guarded_prime_is_prime": left,
                    "weak_side_failure": weak_ce,
                    "zero_ideal_prime": zero_prime,
                    "every_set_guarded_prime_is_prime": guarded_all_prime,
                    "guarded_side_failure": guarded_ce,
                }),
            );
        }
    }
}

/// The primary analogue under the radical expansion: "every weakly primary
/// ideal is primary" holds exactly when the zero ideal is primary and every
/// set-guarded primary ideal is primary.
pub(crate) fn weakly_primary_vs_primary(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    report.note(
        "unconditional side reading: the zero ideal must be plain primary; requiring the ring to \
         have no zero divisors is strictly stronger and fails on rings with nilpotents",
    );
    let trivial = MultSet::trivial(&ctx.ring);
    let primary_table = witness_table(ctx, &ExpansionFn::Radical, &ReductionFn::Empty, &trivial);
    let primary: Vec<bool> = primary_table
        .iter()
        .map(|w| {
            !w.as_ref()
                .expect("trivial set misses proper ideals")
                .is_empty()
        })
        .collect();
    let zero = Ideal::zero(&ctx.ring);
    let zero_primary = primary[proper_index(ctx, &zero)];
    for s in &ctx.mult_sets {
        if s.contains_zero() {
            report.skip("zero_in_mult_set");
            continue;
        }
        let weak_table = witness_table(ctx, &ExpansionFn::Radical, &ReductionFn::Zero, s);
        let guarded_table = witness_table(ctx, &ExpansionFn::Radical, &ReductionFn::Empty, s);
        let mut weak_all_primary = true;
        let mut weak_ce = Value::Null;
        let mut guarded_all_primary = true;
        let mut guarded_ce = Value::Null;
        for (i, ideal) in ctx.proper.iter().enumerate() {
            if let Some(wits) = &weak_table[i] {
                if !wits.is_empty() && !primary[i] && weak_all_primary {
                    weak_all_primary = false;
                    weak_ce = ideal_json(ideal);
                }
            }
            if let Some(wits) = &guarded_table[i] {
                if !wits.is_empty() && !primary[i] && guarded_all_primary {
                    guarded_all_primary = false;
                    guarded_ce = ideal_json(ideal);
                }
            }
        }
        let left = weak_all_primary;
        let right = zero_primary && guarded_all_primary;
        if left == right {
            report.pass();
        } else {
            report.violate(
                config_json(ctx, None, None, Some(s), &[]),
                json!({
                    "every_weakly_guarded_primary_is_primary": left,
                    "weak_side_failure": weak_ce,
                    "zero_ideal_primary": zero_primary,
                    "every_set_guarded_primary_is_primary": guarded_all_primary,
                    "guarded_side_failure": guarded_ce,
                }),
            );
        }
    }
}
