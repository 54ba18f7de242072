//! Checks on how the primary property moves between multiplicative sets:
//! descent along subset pairs, saturation invariance, and the four-way
//! equivalence with primality in the fraction ring.

use serde_json::{json, Value};

use super::{
    config_json, contains_sorted, ideal_json, image_colon_elem, image_eq_opt, opt_subset_opt,
    proper_index, witness_table, CheckConfig, RingCtx, TheoremReport,
};
use crate::literal::emit_mult_set;
use crate::localize::LocalizedRing;
use crate::maps::ReductionImage;
use crate::multset::MultSet;
use crate::predicates::is_phi_delta_s_primary;

/// Witnesses move between a multiplicative set and a larger one: every
/// witness for the smaller set works for the larger, and a witness for the
/// larger set scaled back into the smaller one works there — provided every
/// member of the larger set can be multiplied back into the smaller one.
pub(crate) fn mult_set_descent(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for (si, small) in ctx.mult_sets.iter().enumerate() {
                for (bi, big) in ctx.mult_sets.iter().enumerate() {
                    if si == bi || !small.members().iter().all(|m| big.contains(m)) {
                        continue;
                    }
                    let returns = big
                        .iter()
                        .all(|x| big.iter().any(|t| small.contains(ctx.ring.mul(x, t))));
                    if !returns {
                        report.skip("no_return_multiplier");
                        continue;
                    }
                    let small_table = witness_table(ctx, delta, phi, small);
                    let big_table = witness_table(ctx, delta, phi, big);
                    for (i, ideal) in ctx.proper.iter().enumerate() {
                        let Some(big_wits) = &big_table[i] else {
                            report.skip("ideal_meets_mult_set");
                            continue;
                        };
                        if big_wits.is_empty() {
                            report.skip("not_primary");
                            continue;
                        }
                        let small_wits = small_table[i]
                            .as_ref()
                            .expect("subsets of disjoint sets stay disjoint");
                        let mut failure: Option<Value> = None;
                        for &w in small_wits {
                            if !contains_sorted(big_wits, w) {
                                failure = Some(json!({
                                    "direction": "ascent",
                                    "witness": w,
                                }));
                                break;
                            }
                        }
                        if failure.is_none() {
                            'scan: for &w in big_wits {
                                for t in big.iter() {
                                    let scaled = ctx.ring.mul(w, t);
                                    if small.contains(scaled)
                                        && !contains_sorted(small_wits, scaled)
                                    {
                                        failure = Some(json!({
                                            "direction": "descent",
                                            "witness": w,
                                            "multiplier": t,
                                            "scaled_witness": scaled,
                                        }));
                                        break 'scan;
                                    }
                                }
                            }
                        }
                        match failure {
                            None => report.pass(),
                            Some(ce) => report.violate(
                                config_json(
                                    ctx,
                                    Some(delta),
                                    Some(phi),
                                    Some(big),
                                    &[
                                        ("sub_mult_set", emit_mult_set(small)),
                                        ("ideal", ideal_json(ideal)),
                                    ],
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

/// Saturating a zero-free multiplicative set keeps it zero-free, contains
/// the original set, is idempotent, and misses exactly the ideals the
/// original set misses.
pub(crate) fn saturation_laws(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for s in &ctx.mult_sets {
        if s.contains_zero() {
            report.skip("mult_set_contains_zero");
            continue;
        }
        let loc = LocalizedRing::build(&ctx.ring, s).expect("zero-free sets localize");
        let sat = loc.saturation();
        let mut problems: Vec<Value> = Vec::new();
        if !s.members().iter().all(|m| sat.contains(m)) {
            problems.push(json!({
                "law": "set_inside_saturation",
                "saturation": emit_mult_set(&sat),
            }));
        }
        let again = LocalizedRing::build(&ctx.ring, &sat)
            .expect("saturations stay zero-free")
            .saturation();
        if again != sat {
            problems.push(json!({
                "law": "saturation_idempotent",
                "saturation": emit_mult_set(&sat),
                "saturated_twice": emit_mult_set(&again),
            }));
        }
        for ideal in &ctx.proper {
            if s.disjoint_from(ideal) && !sat.disjoint_from(ideal) {
                problems.push(json!({
                    "law": "saturation_keeps_disjointness",
                    "ideal": ideal_json(ideal),
                    "overlap": sat.meet_ideal(ideal).to_vec(),
                }));
                break;
            }
        }
        if problems.is_empty() {
            report.pass();
        } else {
            report.violate(
                config_json(ctx, None, None, Some(s), &[]),
                json!({ "failed_laws": problems }),
            );
        }
    }
}

/// Replacing a multiplicative set by its saturation keeps standing ideals
/// standing, keeps every witness, and creates no witnessed ideal that had
/// none before.
pub(crate) fn saturation_invariance(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                if s.contains_zero() {
                    report.skip("mult_set_contains_zero");
                    continue;
                }
                let sat = LocalizedRing::build(&ctx.ring, s)
                    .expect("zero-free sets localize")
                    .saturation();
                let table = witness_table(ctx, delta, phi, s);
                let sat_table = witness_table(ctx, delta, phi, &sat);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    let Some(sat_wits) = &sat_table[i] else {
                        report.violate(
                            config_json(
                                ctx,
                                Some(delta),
                                Some(phi),
                                Some(s),
                                &[("ideal", ideal_json(ideal))],
                            ),
                            json!({
                                "saturation": emit_mult_set(&sat),
                                "overlap": sat.meet_ideal(ideal).to_vec(),
                            }),
                        );
                        continue;
                    };
                    let missing: Vec<usize> = wits
                        .iter()
                        .copied()
                        .filter(|w| !contains_sorted(sat_wits, *w))
                        .collect();
                    let lost_existence = !sat_wits.is_empty() && wits.is_empty();
                    if missing.is_empty() && !lost_existence {
                        report.pass();
                    } else {
                        report.violate(
                            config_json(
                                ctx,
                                Some(delta),
                                Some(phi),
                                Some(s),
                                &[("ideal", ideal_json(ideal))],
                            ),
                            json!({
                                "saturation": emit_mult_set(&sat),
                                "witnesses_missing_on_saturation": missing,
                                "saturation_witnesses": sat_wits,
                                "original_witnesses": wits,
                                "witness_exists_only_after_saturating": lost_existence,
                            }),
                        );
                    }
                }
            }
        }
    }
}

/// Four statements agree at any dominant witness x (one whose reduction
/// colon fixes φ(I) and dominates all others): x witnesses I; the colon
/// (I : x) is primary for the trivial set; the extension of I is primary in
/// the fraction ring while (I : t) ⊆ (I : x) for all t; and that extension is
/// primary with contraction equal to (I : x).
pub(crate) fn localization_equivalence(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    let trivial = MultSet::trivial(&ctx.ring);
    for s in &ctx.mult_sets {
        if s.contains_zero() {
            report.skip("mult_set_contains_zero");
            continue;
        }
        let loc = LocalizedRing::build(&ctx.ring, s).expect("zero-free sets localize");
        let local_trivial = MultSet::trivial(loc.ring());
        for delta in &ctx.deltas {
            let Ok(delta_local) = loc.localized_expansion(delta) else {
                report.skip("delta_S_ill_defined");
                continue;
            };
            for phi in &ctx.phis {
                let Ok(phi_local) = loc.localized_reduction(phi) else {
                    report.skip("phi_S_ill_defined");
                    continue;
                };
                let table = witness_table(ctx, delta, phi, s);
                let trivial_table = witness_table(ctx, delta, phi, &trivial);
                for (i, ideal) in ctx.proper.iter().enumerate() {
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    if !s.disjoint_from(&delta_img) {
                        report.skip("expansion_image_meets_mult_set");
                        continue;
                    }
                    let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                    let expansion_colon_ok = ctx.ring.elements().all(|a| {
                        delta
                            .apply(&ideal.colon_elem(a))
                            .expect("map applies on its own ring")
                            == delta_img.colon_elem(a)
                    });
                    if !expansion_colon_ok {
                        report.skip("expansion_colon_mismatch");
                        continue;
                    }
                    let reduction_colon_ok = ctx.ring.elements().all(|a| {
                        let of_colon = phi
                            .apply(&ideal.colon_elem(a))
                            .expect("map applies on its own ring");
                        image_eq_opt(&of_colon, &image_colon_elem(&phi_img, a))
                    });
                    if !reduction_colon_ok {
                        report.skip("reduction_colon_mismatch");
                        continue;
                    }
                    let extended = loc.extend(ideal).expect("source ideals extend");
                    let contracted = loc.contract(&extended).expect("local ideals contract");
                    let delta_of_contraction = delta
                        .apply(&contracted)
                        .expect("map applies on its own ring");
                    let contraction_of_delta = loc
                        .contract(&loc.extend(&delta_img).expect("source ideals extend"))
                        .expect("local ideals contract");
                    if delta_of_contraction != contraction_of_delta {
                        report.skip("expansion_contraction_mismatch");
                        continue;
                    }
                    let dominant: Vec<usize> = s
                        .iter()
                        .filter(|&x| {
                            let colon_x = image_colon_elem(&phi_img, x);
                            let fixes = match (&phi_img, &colon_x) {
                                (ReductionImage::Empty, None) => true,
                                (ReductionImage::Of(p), Some(c)) => p == c,
                                _ => false,
                            };
                            fixes
                                && s.iter().all(|t| {
                                    opt_subset_opt(&image_colon_elem(&phi_img, t), &colon_x)
                                })
                        })
                        .collect();
                    if dominant.is_empty() {
                        report.skip("no_dominant_witness");
                        continue;
                    }
                    let local_primary = if extended.is_proper() {
                        is_phi_delta_s_primary(&extended, &phi_local, &delta_local, &local_trivial)
                            .expect("proper extensions admit the trivial set")
                            .holds
                    } else {
                        false
                    };
                    for x in dominant {
                        let witnesses_source = contains_sorted(wits, x);
                        let colon_x = ideal.colon_elem(x);
                        let colon_primary = !trivial_table[proper_index(ctx, &colon_x)]
                            .as_ref()
                            .expect("trivial set misses proper ideals")
                            .is_empty();
                        let colon_dominant =
                            s.iter().all(|t| ideal.colon_elem(t).is_subset(&colon_x));
                        let local_and_dominant = local_primary && colon_dominant;
                        let local_and_contraction = local_primary && contracted == colon_x;
                        if witnesses_source == colon_primary
                            && witnesses_source == local_and_dominant
                            && witnesses_source == local_and_contraction
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
                                    "witnesses_source_ideal": witnesses_source,
                                    "colon_plain_primary": colon_primary,
                                    "extension_primary_and_colon_dominant": local_and_dominant,
                                    "extension_primary_and_contraction_is_colon": local_and_contraction,
                                    "extension": ideal_json(&extended),
                                    "contraction": ideal_json(&contracted),
                                    "colon_at_candidate": ideal_json(&colon_x),
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}
