//! Checks on how the primary property passes to radicals, and on the colon
//! sets that radicals and expansions keep away from the multiplicative set.

use serde_json::{json, Value};

use super::{
    config_json, contains_sorted, ideal_json, image_colon_elem, image_radical, opt_subset_image,
    opt_subset_opt, proper_index, witness_table, CheckConfig, RingCtx, TheoremReport,
};
use crate::maps::{ExpansionFn, ReductionImage};
use crate::multset::MultSet;

/// The radical of a primary ideal is primary with the same witnesses, when
/// both maps commute far enough with the radical: √δ(I) ⊆ δ(√I) and
/// √φ(I) ⊆ φ(√I).
pub(crate) fn radical_stays_primary(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
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
                    let rad = ideal.radical();
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    let delta_rad = delta.apply(&rad).expect("map applies on its own ring");
                    if !delta_img.radical().is_subset(&delta_rad) {
                        report.skip("expansion_radical_containment_fails");
                        continue;
                    }
                    let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                    let phi_rad = phi.apply(&rad).expect("map applies on its own ring");
                    if !opt_subset_image(&image_radical(&phi_img), &phi_rad) {
                        report.skip("reduction_radical_containment_fails");
                        continue;
                    }
                    let rad_wits = table[proper_index(ctx, &rad)]
                        .as_ref()
                        .expect("radicals of standing ideals keep standing");
                    let missing: Vec<usize> = wits
                        .iter()
                        .copied()
                        .filter(|w| !contains_sorted(rad_wits, *w))
                        .collect();
                    if missing.is_empty() {
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
                                "radical": ideal_json(&rad),
                                "witnesses_missing_on_radical": missing,
                            }),
                        );
                    }
                }
            }
        }
    }
}

/// When the expansion is the radical map, the radical of a primary ideal is
/// outright prime (expansion = identity) with the same witnesses, under the
/// reduction/radical containment √φ(I) ⊆ φ(√I).
pub(crate) fn radical_becomes_prime(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for phi in &ctx.phis {
        for s in &ctx.mult_sets {
            let table = witness_table(ctx, &ExpansionFn::Radical, phi, s);
            let prime_table = witness_table(ctx, &ExpansionFn::Identity, phi, s);
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
                let phi_rad = phi.apply(&rad).expect("map applies on its own ring");
                if !opt_subset_image(&image_radical(&phi_img), &phi_rad) {
                    report.skip("reduction_radical_containment_fails");
                    continue;
                }
                let rad_wits = prime_table[proper_index(ctx, &rad)]
                    .as_ref()
                    .expect("radicals of standing ideals keep standing");
                let missing: Vec<usize> = wits
                    .iter()
                    .copied()
                    .filter(|w| !contains_sorted(rad_wits, *w))
                    .collect();
                if missing.is_empty() {
                    report.pass();
                } else {
                    report.violate(
                        config_json(
                            ctx,
                            Some(&ExpansionFn::Radical),
                            Some(phi),
                            Some(s),
                            &[("ideal", ideal_json(ideal))],
                        ),
                        json!({
                            "radical": ideal_json(&rad),
                            "prime_witnesses_missing_on_radical": missing,
                        }),
                    );
                }
            }
        }
    }
}

/// The witness `w` has the largest reduction colon over the multiplicative
/// set: (φ(√I):x) ⊆ (φ(√I):w) for every x in S.
fn witness_colon_dominates(phi_rad: &ReductionImage, s: &MultSet, w: usize) -> bool {
    let at_witness = image_colon_elem(phi_rad, w);
    s.iter()
        .all(|x| opt_subset_opt(&image_colon_elem(phi_rad, x), &at_witness))
}

/// For a radical-expansion primary ideal whose witness has the dominant
/// reduction colon, every colon of √I by an element outside (√I:w) avoids
/// the multiplicative set entirely.
pub(crate) fn radical_colon_avoids_s(
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
                let phi_rad = phi.apply(&rad).expect("map applies on its own ring");
                if !opt_subset_image(&image_radical(&phi_img), &phi_rad) {
                    report.skip("reduction_radical_containment_fails");
                    continue;
                }
                for &w in wits {
                    if !witness_colon_dominates(&phi_rad, s, w) {
                        report.skip("reduction_colon_not_largest_at_witness");
                        continue;
                    }
                    let rad_colon_w = rad.colon_elem(w);
                    let mut failure: Option<Value> = None;
                    'scan: for a in ctx.ring.elements() {
                        if rad_colon_w.contains(a) {
                            continue;
                        }
                        let colon_a = rad.colon_elem(a);
                        if let Some(t) = s.meet_ideal(&colon_a).iter().next() {
                            failure = Some(json!({
                                "element": a,
                                "radical_colon": ideal_json(&colon_a),
                                "mult_set_member_inside": t,
                            }));
                            break 'scan;
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

/// When the expansion image sits inside the radical and its colon at the
/// witness matches the radical's, that colon is square-stable and every colon
/// of δ(I) by an element outside it avoids the multiplicative set.
pub(crate) fn expansion_colon_avoids_s(
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
                    let rad = ideal.radical();
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    if !delta_img.is_subset(&rad) {
                        report.skip("expansion_not_inside_radical");
                        continue;
                    }
                    let phi_rad = phi.apply(&rad).expect("map applies on its own ring");
                    for &w in wits {
                        if !witness_colon_dominates(&phi_rad, s, w) {
                            report.skip("reduction_colon_not_largest_at_witness");
                            continue;
                        }
                        let delta_colon_w = delta_img.colon_elem(w);
                        if delta_colon_w != rad.colon_elem(w) {
                            report.skip("expansion_colon_differs_from_radical_colon");
                            continue;
                        }
                        let w_sq = ctx.ring.mul(w, w);
                        let mut failure: Option<Value> = None;
                        if delta_colon_w != delta_img.colon_elem(w_sq) {
                            failure = Some(json!({
                                "colon_at_witness": ideal_json(&delta_colon_w),
                                "colon_at_witness_square": ideal_json(&delta_img.colon_elem(w_sq)),
                            }));
                        } else {
                            'scan: for a in ctx.ring.elements() {
                                if delta_colon_w.contains(a) {
                                    continue;
                                }
                                let colon_a = delta_img.colon_elem(a);
                                if let Some(t) = s.meet_ideal(&colon_a).iter().next() {
                                    failure = Some(json!({
                                        "element": a,
                                        "expansion_colon": ideal_json(&colon_a),
                                        "mult_set_member_inside": t,
                                    }));
                                    break 'scan;
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
