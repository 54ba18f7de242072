//! Checks on how the primary property and its twin-zero structure move along
//! quotient and projection epimorphisms, and on product rings: the hat maps
//! acting per factor, and the classification of product ideals.

use serde_json::{json, Value};

use super::{
    config_json, contains_sorted, expansion_json, ideal_json, image_colon_ideal, image_json,
    reduction_json, unit_mult_sets, witness_table, CheckConfig, RingCtx, TheoremReport,
};
use crate::ideal::Ideal;
use crate::literal::emit_mult_set;
use crate::maps::{ExpansionFn, ReductionFn, ReductionImage};
use crate::multset::MultSet;
use crate::predicates::{is_free_twin_zero_global, is_phi_delta_s_primary, twin_zeros};
use crate::product::{classify_product, merge_ideals, split_ideal, ProductError, ProductMaps};
use crate::transfer::{
    check_transfer_identities, projection_epimorphism, quotient_epimorphism, Axis,
    StructuredEpimorphism, TransferError,
};

/// Factor-map pool kept small on purpose: these are the variants that make
/// sense on any ring without extra data.
fn factor_expansions() -> Vec<ExpansionFn> {
    vec![ExpansionFn::Identity, ExpansionFn::Radical]
}

fn factor_reductions() -> Vec<ReductionFn> {
    vec![
        ReductionFn::Empty,
        ReductionFn::Zero,
        ReductionFn::power(2).expect("exponent at least 2"),
        ReductionFn::Identity,
    ]
}

fn axis_name(axis: Axis) -> &'static str {
    match axis {
        Axis::Left => "left",
        Axis::Right => "right",
    }
}

/// First element of the multiplicative set whose witness status differs
/// between source and target.
fn transport_failure(
    epi: &StructuredEpimorphism,
    s: &MultSet,
    source_wits: &[usize],
    target_wits: &[usize],
) -> Option<Value> {
    for x in s.iter() {
        let image = epi.apply(x);
        let on_source = contains_sorted(source_wits, x);
        let on_target = contains_sorted(target_wits, image);
        if on_source != on_target {
            return Some(json!({
                "element": x,
                "image": image,
                "witness_on_source": on_source,
                "witness_on_target": on_target,
            }));
        }
    }
    None
}

/// Witness sets transport exactly along quotient epimorphisms, for every
/// ideal above the kernel, once the maps themselves descend to the quotient.
pub(crate) fn quotient_transfer(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for kernel in &ctx.proper {
                let (epi, transferred) = match quotient_epimorphism(&ctx.ring, kernel, delta, phi) {
                    Ok(pair) => pair,
                    Err(TransferError::HypothesisFailed(name)) => {
                        report.skip(&name);
                        continue;
                    }
                    Err(err) => unreachable!("quotient of a proper ideal: {err}"),
                };
                let identities = check_transfer_identities(
                    &epi,
                    delta,
                    phi,
                    &transferred.gamma,
                    &transferred.psi,
                )
                .expect("maps live on their rings");
                if !identities {
                    report.violate(
                        config_json(
                            ctx,
                            Some(delta),
                            Some(phi),
                            None,
                            &[("kernel", ideal_json(kernel))],
                        ),
                        json!({
                            "failure": "transferred maps break the epimorphism identities",
                        }),
                    );
                    continue;
                }
                for s in &ctx.mult_sets {
                    let table = witness_table(ctx, delta, phi, s);
                    let pushed_s = epi.push_mult_set(s).expect("mult sets push forward");
                    for (i, ideal) in ctx.proper.iter().enumerate() {
                        if !kernel.is_subset(ideal) {
                            continue;
                        }
                        let Some(wits) = &table[i] else {
                            report.skip("ideal_meets_mult_set");
                            continue;
                        };
                        let pushed = epi
                            .push_ideal(ideal)
                            .expect("ideals above the kernel push forward");
                        let target_report = is_phi_delta_s_primary(
                            &pushed,
                            &transferred.psi,
                            &transferred.gamma,
                            &pushed_s,
                        )
                        .expect("pushed ideals keep standing");
                        match transport_failure(&epi, s, wits, &target_report.witnesses) {
                            None => report.pass(),
                            Some(ce) => report.violate(
                                config_json(
                                    ctx,
                                    Some(delta),
                                    Some(phi),
                                    Some(s),
                                    &[("kernel", ideal_json(kernel)), ("ideal", ideal_json(ideal))],
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

/// Quotienting a nonzero primary ideal by its own (stable) reduction image
/// turns it weakly primary — zero reduction — in the quotient, with the same
/// witnesses, and conversely.
pub(crate) fn quotient_weakly_transfer(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for (i, ideal) in ctx.proper.iter().enumerate() {
                if ideal.is_zero() {
                    report.skip("ideal_is_zero");
                    continue;
                }
                let phi_img = phi.apply(ideal).expect("map applies on its own ring");
                let Some(kernel) = phi_img.as_ideal() else {
                    report.skip("reduction_image_empty");
                    continue;
                };
                let stable = {
                    let again = phi.apply(kernel).expect("map applies on its own ring");
                    again.as_ideal() == Some(kernel)
                };
                if !stable {
                    report.skip("reduction_not_stable_at_ideal");
                    continue;
                }
                let (epi, transferred) = match quotient_epimorphism(&ctx.ring, kernel, delta, phi) {
                    Ok(pair) => pair,
                    Err(TransferError::HypothesisFailed(name)) => {
                        report.skip(&name);
                        continue;
                    }
                    Err(err) => unreachable!("quotient of a proper ideal: {err}"),
                };
                for s in &ctx.mult_sets {
                    let table = witness_table(ctx, delta, phi, s);
                    let Some(wits) = &table[i] else {
                        report.skip("ideal_meets_mult_set");
                        continue;
                    };
                    let pushed = epi
                        .push_ideal(ideal)
                        .expect("the kernel sits inside the ideal");
                    let pushed_s = epi.push_mult_set(s).expect("mult sets push forward");
                    let target_report = is_phi_delta_s_primary(
                        &pushed,
                        &ReductionFn::Zero,
                        &transferred.gamma,
                        &pushed_s,
                    )
                    .expect("pushed ideals keep standing");
                    match transport_failure(&epi, s, wits, &target_report.witnesses) {
                        None => report.pass(),
                        Some(ce) => report.violate(
                            config_json(
                                ctx,
                                Some(delta),
                                Some(phi),
                                Some(s),
                                &[("ideal", ideal_json(ideal))],
                            ),
                            ce,
                        ),
                    }
                }
            }
        }
    }
}

/// Witness sets transport exactly along factor projections of a product
/// ring, for ideals spanning the full off-axis factor and multiplicative
/// sets assembled from unit closures on each factor.
pub(crate) fn projection_transfer(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    let Some((left, right)) = ctx.ring.product_parts() else {
        report.skip("ring_not_a_product");
        return;
    };
    let left_units = unit_mult_sets(left);
    let right_units = unit_mult_sets(right);
    let left_proper = Ideal::enumerate_proper(left);
    let right_proper = Ideal::enumerate_proper(right);
    let unit_left = Ideal::unit(left);
    let unit_right = Ideal::unit(right);
    let expansions = factor_expansions();
    let reductions = factor_reductions();
    for dl in &expansions {
        for pl in &reductions {
            for dr in &expansions {
                for pr in &reductions {
                    let maps = ProductMaps::new(dl.clone(), pl.clone(), dr.clone(), pr.clone());
                    let source_delta = maps.as_expansion(&ctx.ring).expect("product maps assemble");
                    let source_phi = maps.as_reduction(&ctx.ring).expect("product maps assemble");
                    for axis in [Axis::Left, Axis::Right] {
                        let (epi, transferred) =
                            match projection_epimorphism(&ctx.ring, &maps, axis) {
                                Ok(pair) => pair,
                                Err(TransferError::HypothesisFailed(name)) => {
                                    report.skip(&name);
                                    continue;
                                }
                                Err(err) => {
                                    unreachable!("projection of a product ring: {err}")
                                }
                            };
                        let axis_proper = match axis {
                            Axis::Left => &left_proper,
                            Axis::Right => &right_proper,
                        };
                        for sl in &left_units {
                            for sr in &right_units {
                                let s = MultSet::product(sl, sr, &ctx.ring)
                                    .expect("factor sets assemble");
                                let pushed_s =
                                    epi.push_mult_set(&s).expect("mult sets push forward");
                                for factor_ideal in axis_proper {
                                    let ideal = match axis {
                                        Axis::Left => {
                                            merge_ideals(&ctx.ring, factor_ideal, &unit_right)
                                        }
                                        Axis::Right => {
                                            merge_ideals(&ctx.ring, &unit_left, factor_ideal)
                                        }
                                    }
                                    .expect("factor ideals assemble");
                                    if !s.disjoint_from(&ideal) {
                                        report.skip("ideal_meets_mult_set");
                                        continue;
                                    }
                                    let source_report = is_phi_delta_s_primary(
                                        &ideal,
                                        &source_phi,
                                        &source_delta,
                                        &s,
                                    )
                                    .expect("standing conditions hold");
                                    let pushed =
                                        epi.push_ideal(&ideal).expect("axis ideals push forward");
                                    let target_report = is_phi_delta_s_primary(
                                        &pushed,
                                        &transferred.psi,
                                        &transferred.gamma,
                                        &pushed_s,
                                    )
                                    .expect("pushed ideals keep standing");
                                    match transport_failure(
                                        &epi,
                                        &s,
                                        &source_report.witnesses,
                                        &target_report.witnesses,
                                    ) {
                                        None => report.pass(),
                                        Some(ce) => report.violate(
                                            config_json(
                                                ctx,
                                                None,
                                                None,
                                                Some(&s),
                                                &[
                                                    ("delta_left", expansion_json(dl)),
                                                    ("phi_left", reduction_json(pl)),
                                                    ("delta_right", expansion_json(dr)),
                                                    ("phi_right", reduction_json(pr)),
                                                    ("axis", json!(axis_name(axis))),
                                                    ("ideal", ideal_json(&ideal)),
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
        }
    }
}

/// A twin zero forces the collapse: the ideal's radical equals the radical
/// of the reduction image, and both members of every twin multiply the whole
/// ideal into the reduction image.
pub(crate) fn twin_zero_collapse(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
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
                    for &w in wits {
                        let twins =
                            twin_zeros(ideal, phi, delta, s, w).expect("standing conditions hold");
                        if twins.is_empty() {
                            report.skip("no_twin_zero");
                            continue;
                        }
                        let phi_ideal = phi_img
                            .as_ideal()
                            .expect("twin zeros require an ideal-valued reduction");
                        let mut problems: Vec<Value> = Vec::new();
                        let ideal_radical = ideal.radical();
                        let phi_radical = phi_ideal.radical();
                        if ideal_radical != phi_radical {
                            problems.push(json!({
                                "failure": "radical_differs_from_reduction_radical",
                                "ideal_radical": ideal_json(&ideal_radical),
                                "reduction_radical": ideal_json(&phi_radical),
                            }));
                        }
                        for tz in &twins {
                            if !ideal.is_subset(&phi_ideal.colon_elem(tz.a))
                                || !ideal.is_subset(&phi_ideal.colon_elem(tz.b))
                            {
                                problems.push(json!({
                                    "failure": "twin_zero_does_not_collapse_ideal",
                                    "pair": [tz.a, tz.b],
                                }));
                                break;
                            }
                        }
                        if problems.is_empty() {
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
                                json!({ "problems": problems }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Twin zeros of an ideal above the kernel map onto twin zeros of its image
/// in the quotient, pair by pair.
pub(crate) fn twin_zero_transport(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    for delta in &ctx.deltas {
        for phi in &ctx.phis {
            for kernel in &ctx.proper {
                let (epi, transferred) = match quotient_epimorphism(&ctx.ring, kernel, delta, phi) {
                    Ok(pair) => pair,
                    Err(TransferError::HypothesisFailed(name)) => {
                        report.skip(&name);
                        continue;
                    }
                    Err(err) => unreachable!("quotient of a proper ideal: {err}"),
                };
                for s in &ctx.mult_sets {
                    let table = witness_table(ctx, delta, phi, s);
                    for (i, ideal) in ctx.proper.iter().enumerate() {
                        if !kernel.is_subset(ideal) {
                            continue;
                        }
                        let Some(wits) = &table[i] else {
                            report.skip("ideal_meets_mult_set");
                            continue;
                        };
                        if wits.is_empty() {
                            report.skip("not_primary");
                            continue;
                        }
                        for &w in wits {
                            let transported = crate::transfer::twin_zero_transport(
                                &epi,
                                &transferred,
                                ideal,
                                phi,
                                delta,
                                s,
                                w,
                            )
                            .expect("witnesses satisfy the transport precondition");
                            if transported {
                                report.pass();
                            } else {
                                report.violate(
                                    config_json(
                                        ctx,
                                        Some(delta),
                                        Some(phi),
                                        Some(s),
                                        &[
                                            ("kernel", ideal_json(kernel)),
                                            ("ideal", ideal_json(ideal)),
                                            ("witness", json!(w)),
                                        ],
                                    ),
                                    json!({
                                        "failure": "twin zero does not map to a twin zero of the image",
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

/// Having no twin zeros at a witness is the same as the ideal-pair
/// implication: every pair A·B ⊆ I not inside φ(I) satisfies wA ⊆ I or
/// wB ⊆ δ(I).
pub(crate) fn free_twin_zero_pairs(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
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
                    let colon_tables: Vec<(Ideal, Option<Ideal>)> = ctx
                        .lattice
                        .iter()
                        .map(|a| {
                            (
                                ideal.colon_ideal(a).expect("ideals share a ring"),
                                image_colon_ideal(&phi_img, a),
                            )
                        })
                        .collect();
                    for &w in wits {
                        let free = is_free_twin_zero_global(ideal, phi, delta, s, w)
                            .expect("standing conditions hold");
                        let colon_w = ideal.colon_elem(w);
                        let delta_colon_w = delta_img.colon_elem(w);
                        let mut pair_form = true;
                        let mut failing = Value::Null;
                        'pairs: for (ai, a) in ctx.lattice.iter().enumerate() {
                            if a.is_subset(&colon_w) {
                                continue;
                            }
                            let (colon_by_a, phi_colon_by_a) = &colon_tables[ai];
                            for b in &ctx.lattice {
                                if !b.is_subset(colon_by_a) {
                                    continue;
                                }
                                if phi_colon_by_a.as_ref().is_some_and(|p| b.is_subset(p)) {
                                    continue;
                                }
                                if !b.is_subset(&delta_colon_w) {
                                    pair_form = false;
                                    failing = json!({
                                        "left_ideal": ideal_json(a),
                                        "right_ideal": ideal_json(b),
                                    });
                                    break 'pairs;
                                }
                            }
                        }
                        if free == pair_form {
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
                                    "free_of_twin_zeros": free,
                                    "ideal_pair_form": pair_form,
                                    "failing_pair": failing,
                                }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// On a product ring every ideal splits into factor ideals; the hat maps act
/// factor by factor and agree with their wrapped single-ring forms.
pub(crate) fn product_ideal_lattice(_cfg: &CheckConfig, ctx: &RingCtx, report: &mut TheoremReport) {
    if ctx.ring.product_parts().is_none() {
        report.skip("ring_not_a_product");
        return;
    }
    let expansions = factor_expansions();
    let reductions = factor_reductions();
    for dl in &expansions {
        for pl in &reductions {
            for dr in &expansions {
                for pr in &reductions {
                    let maps = ProductMaps::new(dl.clone(), pl.clone(), dr.clone(), pr.clone());
                    let wrapped_delta =
                        maps.as_expansion(&ctx.ring).expect("product maps assemble");
                    let wrapped_phi = maps.as_reduction(&ctx.ring).expect("product maps assemble");
                    for l in &ctx.lattice {
                        let (a, b) = split_ideal(l).expect("product ideals split");
                        let mut problems: Vec<Value> = Vec::new();
                        if merge_ideals(&ctx.ring, &a, &b).expect("factor ideals assemble") != *l {
                            problems.push(json!({ "law": "split_merge_roundtrip" }));
                        }
                        let hat_delta = maps.delta_hat(l).expect("product maps apply");
                        let expected_delta = merge_ideals(
                            &ctx.ring,
                            &dl.apply(&a).expect("map applies on its own ring"),
                            &dr.apply(&b).expect("map applies on its own ring"),
                        )
                        .expect("factor ideals assemble");
                        if hat_delta != expected_delta {
                            problems.push(json!({
                                "law": "expansion_acts_per_factor",
                                "hat": ideal_json(&hat_delta),
                                "expected": ideal_json(&expected_delta),
                            }));
                        }
                        let hat_phi = maps.phi_hat(l).expect("product maps apply");
                        let pa = pl.apply(&a).expect("map applies on its own ring");
                        let pb = pr.apply(&b).expect("map applies on its own ring");
                        let expected_phi = match (pa.as_ideal(), pb.as_ideal()) {
                            (Some(x), Some(y)) => ReductionImage::Of(
                                merge_ideals(&ctx.ring, x, y).expect("factor ideals assemble"),
                            ),
                            _ => ReductionImage::Empty,
                        };
                        if hat_phi != expected_phi {
                            problems.push(json!({
                                "law": "reduction_acts_per_factor",
                                "hat": image_json(&hat_phi),
                                "expected": image_json(&expected_phi),
                            }));
                        }
                        if wrapped_delta.apply(l).expect("map applies on its own ring") != hat_delta
                        {
                            problems.push(json!({ "law": "wrapped_expansion_matches_hat" }));
                        }
                        if wrapped_phi.apply(l).expect("map applies on its own ring") != hat_phi {
                            problems.push(json!({ "law": "wrapped_reduction_matches_hat" }));
                        }
                        if problems.is_empty() {
                            report.pass();
                        } else {
                            report.violate(
                                config_json(
                                    ctx,
                                    None,
                                    None,
                                    None,
                                    &[
                                        ("delta_left", expansion_json(dl)),
                                        ("phi_left", reduction_json(pl)),
                                        ("delta_right", expansion_json(dr)),
                                        ("phi_right", reduction_json(pr)),
                                        ("ideal", ideal_json(l)),
                                    ],
                                ),
                                json!({ "failed_laws": problems }),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Every proper ideal of a product ring, classified through its factor
/// ideals, must report a consistent witness prediction.
pub(crate) fn product_classification(
    _cfg: &CheckConfig,
    ctx: &RingCtx,
    report: &mut TheoremReport,
) {
    let Some((left, right)) = ctx.ring.product_parts() else {
        report.skip("ring_not_a_product");
        return;
    };
    let left_units = unit_mult_sets(left);
    let right_units = unit_mult_sets(right);
    let expansions = factor_expansions();
    let reductions = factor_reductions();
    for dl in &expansions {
        for pl in &reductions {
            for dr in &expansions {
                for pr in &reductions {
                    let maps = ProductMaps::new(dl.clone(), pl.clone(), dr.clone(), pr.clone());
                    for sl in &left_units {
                        for sr in &right_units {
                            for l in &ctx.proper {
                                let (a, b) = split_ideal(l).expect("product ideals split");
                                match classify_product(&ctx.ring, &a, &b, &maps, sl, sr) {
                                    Ok(c) if c.consistent => report.pass(),
                                    Ok(c) => report.violate(
                                        config_json(
                                            ctx,
                                            None,
                                            None,
                                            None,
                                            &[
                                                ("delta_left", expansion_json(dl)),
                                                ("phi_left", reduction_json(pl)),
                                                ("delta_right", expansion_json(dr)),
                                                ("phi_right", reduction_json(pr)),
                                                ("s_left", emit_mult_set(sl)),
                                                ("s_right", emit_mult_set(sr)),
                                                ("ideal", ideal_json(l)),
                                            ],
                                        ),
                                        json!({
                                            "case": c.case,
                                            "gates_passed": c.gates.passed,
                                            "gates_failed": c.gates.failed,
                                            "left_witnesses": c.factor_witnesses.left,
                                            "right_witnesses": c.factor_witnesses.right,
                                            "product_witnesses": c.product_witnesses,
                                            "predicted_witnesses": c.predicted_witnesses,
                                        }),
                                    ),
                                    Err(ProductError::HypothesisFailed(name)) => report.skip(&name),
                                    Err(ProductError::MeetsS) => {
                                        report.skip("mult_set_meets_both_factors")
                                    }
                                    Err(err) => {
                                        unreachable!("classification preconditions: {err}")
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
