//! Checks on directed families of primary ideals, colon stability, and the
//! intersection/product facts for partners that meet the multiplicative set.

use serde_json::{json, Value};

use super::{
    config_json, contains_sorted, ideal_json, image_colon_elem, image_colon_ideal,
    opt_subset_image, proper_index, witness_table, CheckConfig, RingCtx, TheoremReport,
};
use crate::ideal::Ideal;

/// Directed families of proper ideals, each listed with its largest member
/// last: strict two- and three-element chains, and incomparable pairs closed
/// off by their sum whenever that sum stays proper.
fn directed_families(proper: &[Ideal]) -> Vec<Vec<usize>> {
    let n = proper.len();
    let below: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && proper[i].is_subset(&proper[j]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for (j, row) in below.iter().enumerate() {
            if below[i][j] {
                out.push(vec![i, j]);
                for (k, &above) in row.iter().enumerate() {
                    if above {
                        out.push(vec![i, j, k]);
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !below[i][j] && !below[j][i] {
                let sum = proper[i].sum(&proper[j]).expect("ideals share a ring");
                if sum.is_proper() {
                    let k = proper
                        .iter()
                        .position(|p| *p == sum)
                        .expect("sums of ideals appear in the lattice");
                    out.push(vec![i, j, k]);
                }
            }
        }
    }
    out
}

fn family_json(ctx: &RingCtx, family: &[usize]) -> Value {
    Value::Array(family.iter().map(|&i| ideal_json(&ctx.proper[i])).collect())
}

/// Witnesses shared by every family member, or `None` if a member has no
/// standing against the multiplicative set.
fn shared_witnesses(table: &[Option<Vec<usize>>], family: &[usize]) -> Option<Vec<usize>> {
    let mut common: Vec<usize> = Vec::new();
    for (pos, &idx) in family.iter().enumerate() {
        let wits = table[idx].as_ref()?;
        if pos == 0 {
            common = wits.clone();
        } else {
            common.retain(|w| contains_sorted(wits, *w));
        }
    }
    Some(common)
}

/// The union of a directed family of primary ideals with a shared witness is
/// again primary with that witness.  In a finite directed family the union is
/// the largest member, so the witnesses shared by the members must reappear
/// on that member — which holds by construction; the value of the check is
/// that it fails loudly if witness sets ever lose this upward coherence.
pub(crate) fn directed_union(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    let families = directed_families(&ctx.proper);
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                for family in &families {
                    let Some(common) = shared_witnesses(&table, family) else {
                        report.skip("member_meets_mult_set");
                        continue;
                    };
                    if common.is_empty() {
                        report.skip("no_common_witness");
                        continue;
                    }
                    let top = *family.last().expect("families are nonempty");
                    let union_wits = table[top].as_ref().expect("members share standing");
                    let missing: Vec<usize> = common
                        .iter()
                        .copied()
                        .filter(|w| !contains_sorted(union_wits, *w))
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
                                &[("family", family_json(ctx, family))],
                            ),
                            json!({
                                "union": ideal_json(&ctx.proper[top]),
                                "common_witnesses": common,
                                "witnesses_missing_on_union": missing,
                            }),
                        );
                    }
                }
            }
        }
    }
}

/// The intersection of a directed family of primary ideals with a shared
/// witness is again primary with that witness, provided the maps are constant
/// across the family and the intersection reproduces the shared images.
pub(crate) fn directed_intersection(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    report.note(
        "intersection reading: every family member must carry the same reduction image and the \
         same expansion image, and the intersection must reproduce both shared images",
    );
    let families = directed_families(&ctx.proper);
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for s in &ctx.mult_sets {
                let table = witness_table(ctx, delta, phi, s);
                for family in &families {
                    let Some(common) = shared_witnesses(&table, family) else {
                        report.skip("member_meets_mult_set");
                        continue;
                    };
                    let members: Vec<&Ideal> = family.iter().map(|&i| &ctx.proper[i]).collect();
                    let phi_shared = phi.apply(members[0]).expect("map applies on its own ring");
                    if members[1..]
                        .iter()
                        .any(|m| phi.apply(m).expect("map applies on its own ring") != phi_shared)
                    {
                        report.skip("reduction_images_differ");
                        continue;
                    }
                    let delta_shared = delta
                        .apply(members[0])
                        .expect("map applies on its own ring");
                    if members[1..].iter().any(|m| {
                        delta.apply(m).expect("map applies on its own ring") != delta_shared
                    }) {
                        report.skip("expansion_images_differ");
                        continue;
                    }
                    if common.is_empty() {
                        report.skip("no_common_witness");
                        continue;
                    }
                    let meet = members[1..].iter().fold(members[0].clone(), |acc, m| {
                        acc.intersect(m).expect("ideals share a ring")
                    });
                    if phi.apply(&meet).expect("map applies on its own ring") != phi_shared {
                        report.skip("reduction_intersection_property_fails");
                        continue;
                    }
                    if delta.apply(&meet).expect("map applies on its own ring") != delta_shared {
                        report.skip("expansion_intersection_property_fails");
                        continue;
                    }
                    let meet_wits = table[proper_index(ctx, &meet)]
                        .as_ref()
                        .expect("subsets of standing ideals keep standing");
                    let missing: Vec<usize> = common
                        .iter()
                        .copied()
                        .filter(|w| !contains_sorted(meet_wits, *w))
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
                                &[("family", family_json(ctx, family))],
                            ),
                            json!({
                                "intersection": ideal_json(&meet),
                                "common_witnesses": common,
                                "witnesses_missing_on_intersection": missing,
                            }),
                        );
                    }
                }
            }
        }
    }
}

/// Primary ideals stay primary (with the same witnesses) under colon by an
/// element outside them, provided the reduction commutes far enough with the
/// colon: (φ(P):a) ⊆ φ((P:a)).
pub(crate) fn colon_element_stays_primary(
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
                    for a in ctx.ring.elements() {
                        if ideal.contains(a) {
                            continue;
                        }
                        let colon = ideal.colon_elem(a);
                        let phi_colon = phi.apply(&colon).expect("map applies on its own ring");
                        if !opt_subset_image(&image_colon_elem(&phi_img, a), &phi_colon) {
                            report.skip("reduction_colon_containment_fails");
                            continue;
                        }
                        if !s.disjoint_from(&colon) {
                            report.skip("colon_meets_mult_set");
                            continue;
                        }
                        let colon_wits = table[proper_index(ctx, &colon)]
                            .as_ref()
                            .expect("colon avoids the multiplicative set");
                        let missing: Vec<usize> = wits
                            .iter()
                            .copied()
                            .filter(|w| !contains_sorted(colon_wits, *w))
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
                                    &[("ideal", ideal_json(ideal)), ("element", json!(a))],
                                ),
                                json!({
                                    "colon": ideal_json(&colon),
                                    "witnesses_missing_on_colon": missing,
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Primary ideals stay primary under colon by an ideal not inside them, when
/// both maps commute far enough with the colon.
pub(crate) fn colon_ideal_stays_primary(
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
                    let delta_img = delta.apply(ideal).expect("map applies on its own ring");
                    for j in &ctx.lattice {
                        if j.is_subset(ideal) {
                            continue;
                        }
                        let colon = ideal.colon_ideal(j).expect("ideals share a ring");
                        let phi_colon = phi.apply(&colon).expect("map applies on its own ring");
                        if !opt_subset_image(&image_colon_ideal(&phi_img, j), &phi_colon) {
                            report.skip("reduction_colon_containment_fails");
                            continue;
                        }
                        let delta_colon = delta.apply(&colon).expect("map applies on its own ring");
                        if !delta_img
                            .colon_ideal(j)
                            .expect("ideals share a ring")
                            .is_subset(&delta_colon)
                        {
                            report.skip("expansion_colon_containment_fails");
                            continue;
                        }
                        if !s.disjoint_from(&colon) {
                            report.skip("colon_meets_mult_set");
                            continue;
                        }
                        let colon_wits = table[proper_index(ctx, &colon)]
                            .as_ref()
                            .expect("colon avoids the multiplicative set");
                        let missing: Vec<usize> = wits
                            .iter()
                            .copied()
                            .filter(|w| !contains_sorted(colon_wits, *w))
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
                                    &[("ideal", ideal_json(ideal)), ("divisor", ideal_json(j))],
                                ),
                                json!({
                                    "colon": ideal_json(&colon),
                                    "witnesses_missing_on_colon": missing,
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Intersecting or multiplying a primary ideal with a partner that meets the
/// multiplicative set keeps it primary, with witnesses scaled by any member
/// of the overlap — provided the reduction is constant below the ideal.
pub(crate) fn meets_s_intersection_product(
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
                    let constant_below = ctx.lattice.iter().all(|below| {
                        !below.is_subset(ideal)
                            || phi.apply(below).expect("map applies on its own ring") == phi_img
                    });
                    if !constant_below {
                        report.skip("reduction_not_constant_below");
                        continue;
                    }
                    for partner in &ctx.lattice {
                        let overlap = s.meet_ideal(partner);
                        if overlap.is_empty() {
                            continue;
                        }
                        let cap = ideal.intersect(partner).expect("ideals share a ring");
                        let prod = ideal.product(partner).expect("ideals share a ring");
                        let cap_wits = table[proper_index(ctx, &cap)]
                            .as_ref()
                            .expect("subsets of standing ideals keep standing");
                        let prod_wits = table[proper_index(ctx, &prod)]
                            .as_ref()
                            .expect("subsets of standing ideals keep standing");
                        let mut failure: Option<Value> = None;
                        'scan: for &w in wits {
                            for t in overlap.iter() {
                                let tw = ctx.ring.mul(t, w);
                                let fails_on = if !contains_sorted(cap_wits, tw) {
                                    Some(("intersection", ideal_json(&cap)))
                                } else if !contains_sorted(prod_wits, tw) {
                                    Some(("product", ideal_json(&prod)))
                                } else {
                                    None
                                };
                                if let Some((kind, combined)) = fails_on {
                                    failure = Some(json!({
                                        "witness": w,
                                        "overlap_multiplier": t,
                                        "scaled_witness": tw,
                                        "fails_on": kind,
                                        "combined_ideal": combined,
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
                                    &[
                                        ("ideal", ideal_json(ideal)),
                                        ("partner", ideal_json(partner)),
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
