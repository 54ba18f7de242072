//! Property-based laws over randomly sampled rings: closure and saturation
//! of multiplicative sets, ideal arithmetic identities, map axioms, witness
//! report invariants, and split/merge on product rings.

use proptest::prelude::*;

use ringlab::{
    all_zero_free_mult_sets, build_ring, check_expansion_axioms, check_reduction_axioms,
    emit_ideal, emit_mult_set, emit_ring_desc, expansion_catalog, first_violation,
    is_phi_delta_s_primary, leq_expansions, leq_reductions, merge_ideals, parse_ideal,
    parse_mult_set, parse_ring_desc, reduction_catalog, split_ideal, ExpansionFn, Ideal,
    LocalizedRing, MultSet, ReductionFn, Ring, RingDesc,
};

fn ring_desc_strategy() -> impl Strategy<Value = RingDesc> {
    prop_oneof![
        4 => (2usize..=24).prop_map(|n| RingDesc::Zmod { n }),
        1 => ((2usize..=6), (2usize..=6)).prop_map(|(l, r)| RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: l }),
            right: Box::new(RingDesc::Zmod { n: r }),
        }),
    ]
}

fn ring_strategy() -> impl Strategy<Value = Ring> {
    ring_desc_strategy().prop_map(|desc| build_ring(&desc).expect("sampled descriptions build"))
}

/// A ring together with element indices usable as generators.
fn ring_and_elems() -> impl Strategy<Value = (Ring, usize, usize, usize)> {
    ring_strategy().prop_flat_map(|ring| {
        let order = ring.order();
        (Just(ring), 0..order, 0..order, 0..order)
    })
}

/// A zero-free multiplicative set: the closure of a generator, falling back
/// to the trivial set when the closure reaches 0.
fn zero_free_closure(ring: &Ring, gen: usize) -> MultSet {
    let closed = MultSet::closure(ring, &[gen]).expect("generator is in range");
    if closed.contains_zero() {
        MultSet::trivial(ring)
    } else {
        closed
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mult_set_closure_is_multiplicatively_closed((ring, x, _, _) in ring_and_elems()) {
        let s = MultSet::closure(&ring, &[x]).unwrap();
        prop_assert!(s.contains(ring.one()));
        for a in s.iter() {
            for b in s.iter() {
                prop_assert!(s.contains(ring.mul(a, b)));
            }
        }
    }

    #[test]
    fn mult_set_closure_is_idempotent((ring, x, y, _) in ring_and_elems()) {
        let s = MultSet::closure(&ring, &[x, y]).unwrap();
        let again = MultSet::closure(&ring, &s.members().to_vec()).unwrap();
        prop_assert_eq!(s, again);
    }

    #[test]
    fn radical_contains_and_is_idempotent((ring, g, h, _) in ring_and_elems()) {
        let ideal = Ideal::generate(&ring, &[g, h]).unwrap();
        let radical = ideal.radical();
        prop_assert!(ideal.is_subset(&radical));
        prop_assert_eq!(radical.radical(), radical.clone());
        prop_assert_eq!(ideal.is_proper(), radical.is_proper());
    }

    #[test]
    fn radical_distributes_over_intersection((ring, g, h, _) in ring_and_elems()) {
        let a = Ideal::principal(&ring, g).unwrap();
        let b = Ideal::principal(&ring, h).unwrap();
        let meet = a.intersect(&b).unwrap();
        let both = a.radical().intersect(&b.radical()).unwrap();
        prop_assert_eq!(meet.radical(), both);
    }

    #[test]
    fn colon_laws_hold((ring, g, a, b) in ring_and_elems()) {
        let ideal = Ideal::principal(&ring, g).unwrap();
        prop_assert!(ideal.is_subset(&ideal.colon_elem(a)));
        prop_assert_eq!(ideal.colon_elem(ring.one()), ideal.clone());
        prop_assert_eq!(
            ideal.colon_elem(a).colon_elem(b),
            ideal.colon_elem(ring.mul(a, b))
        );
        if ideal.contains(a) {
            prop_assert_eq!(ideal.colon_elem(a), Ideal::unit(&ring));
        }
    }

    #[test]
    fn square_is_self_product((ring, g, h, _) in ring_and_elems()) {
        let ideal = Ideal::generate(&ring, &[g, h]).unwrap();
        prop_assert_eq!(ideal.power(2), ideal.product(&ideal).unwrap());
    }

    #[test]
    fn catalog_maps_satisfy_their_axioms(ring in ring_strategy()) {
        for delta in expansion_catalog(&ring) {
            prop_assert!(check_expansion_axioms(&delta, &ring));
        }
        for phi in reduction_catalog() {
            prop_assert!(check_reduction_axioms(&phi, &ring));
        }
    }

    #[test]
    fn reduction_catalog_is_a_chain(ring in ring_strategy()) {
        let chain = [
            ReductionFn::Empty,
            ReductionFn::Zero,
            ReductionFn::Omega,
            ReductionFn::Power(3),
            ReductionFn::Power(2),
            ReductionFn::Identity,
        ];
        for pair in chain.windows(2) {
            prop_assert!(leq_reductions(&pair[0], &pair[1], &ring));
        }
    }

    #[test]
    fn witness_report_is_consistent((ring, g, x, _) in ring_and_elems()) {
        let ideal = Ideal::principal(&ring, g).unwrap();
        prop_assume!(ideal.is_proper());
        let s = zero_free_closure(&ring, x);
        prop_assume!(s.disjoint_from(&ideal));
        let phi = ReductionFn::Zero;
        let delta = ExpansionFn::Radical;
        let report = is_phi_delta_s_primary(&ideal, &phi, &delta, &s).unwrap();
        prop_assert_eq!(report.holds, !report.witnesses.is_empty());
        prop_assert_eq!(report.counterexample.is_some(), report.witnesses.is_empty());
        prop_assert!(report.witnesses.windows(2).all(|w| w[0] < w[1]));
        for &w in &report.witnesses {
            prop_assert!(s.contains(w));
        }
        if let Some(ce) = &report.counterexample {
            let phi_img = phi.apply(&ideal).unwrap();
            let delta_img = delta.apply(&ideal).unwrap();
            prop_assert!(s.contains(ce.s));
            prop_assert_eq!(ce.ab, ring.mul(ce.a, ce.b));
            prop_assert_eq!(ce.sa, ring.mul(ce.s, ce.a));
            prop_assert_eq!(ce.sb, ring.mul(ce.s, ce.b));
            prop_assert!(ce.ab_in_ideal);
            prop_assert!(!ce.ab_in_phi_image);
            prop_assert!(!ce.sa_in_ideal);
            prop_assert!(!ce.sb_in_delta_image);
            prop_assert_eq!(ideal.contains(ce.ab), ce.ab_in_ideal);
            prop_assert_eq!(phi_img.contains(ce.ab), ce.ab_in_phi_image);
            prop_assert_eq!(ideal.contains(ce.sa), ce.sa_in_ideal);
            prop_assert_eq!(delta_img.contains(ce.sb), ce.sb_in_delta_image);
        }
    }

    #[test]
    fn first_violation_agrees_with_witness_membership((ring, g, x, _) in ring_and_elems()) {
        let ideal = Ideal::principal(&ring, g).unwrap();
        prop_assume!(ideal.is_proper());
        let s = zero_free_closure(&ring, x);
        prop_assume!(s.disjoint_from(&ideal));
        let phi = ReductionFn::Empty;
        let delta = ExpansionFn::Radical;
        let report = is_phi_delta_s_primary(&ideal, &phi, &delta, &s).unwrap();
        for elem in s.iter() {
            let violation = first_violation(&ideal, &phi, &delta, elem).unwrap();
            prop_assert_eq!(
                violation.is_none(),
                report.witnesses.binary_search(&elem).is_ok()
            );
        }
    }

    #[test]
    fn witnesses_grow_with_the_expansion((ring, g, x, _) in ring_and_elems()) {
        let ideal = Ideal::principal(&ring, g).unwrap();
        prop_assume!(ideal.is_proper());
        let s = zero_free_closure(&ring, x);
        prop_assume!(s.disjoint_from(&ideal));
        let smaller = ExpansionFn::Identity;
        let larger = ExpansionFn::Radical;
        prop_assert!(leq_expansions(&smaller, &larger, &ring));
        for phi in [ReductionFn::Empty, ReductionFn::Zero] {
            let tight = is_phi_delta_s_primary(&ideal, &phi, &smaller, &s).unwrap();
            let loose = is_phi_delta_s_primary(&ideal, &phi, &larger, &s).unwrap();
            for w in &tight.witnesses {
                prop_assert!(loose.witnesses.contains(w));
            }
        }
    }

    #[test]
    fn witnesses_grow_with_the_reduction((ring, g, x, _) in ring_and_elems()) {
        let ideal = Ideal::principal(&ring, g).unwrap();
        prop_assume!(ideal.is_proper());
        let s = zero_free_closure(&ring, x);
        prop_assume!(s.disjoint_from(&ideal));
        let delta = ExpansionFn::Identity;
        let tight = is_phi_delta_s_primary(&ideal, &ReductionFn::Empty, &delta, &s).unwrap();
        let loose = is_phi_delta_s_primary(&ideal, &ReductionFn::Zero, &delta, &s).unwrap();
        for w in &tight.witnesses {
            prop_assert!(loose.witnesses.contains(w));
        }
    }

    #[test]
    fn identity_reduction_makes_everything_vacuous((ring, g, x, _) in ring_and_elems()) {
        let ideal = Ideal::principal(&ring, g).unwrap();
        prop_assume!(ideal.is_proper());
        let s = zero_free_closure(&ring, x);
        prop_assume!(s.disjoint_from(&ideal));
        let report =
            is_phi_delta_s_primary(&ideal, &ReductionFn::Identity, &ExpansionFn::Identity, &s)
                .unwrap();
        prop_assert_eq!(report.witnesses, s.members().to_vec());
    }

    #[test]
    fn saturation_laws_hold((ring, g, x, _) in ring_and_elems()) {
        let s = zero_free_closure(&ring, x);
        let localized = LocalizedRing::build(&ring, &s).unwrap();
        let saturated = localized.saturation();
        for member in s.iter() {
            prop_assert!(saturated.contains(member));
        }
        let twice = LocalizedRing::build(&ring, &saturated).unwrap().saturation();
        prop_assert_eq!(&twice, &saturated);
        let ideal = Ideal::principal(&ring, g).unwrap();
        if ideal.is_proper() && s.disjoint_from(&ideal) {
            prop_assert!(saturated.disjoint_from(&ideal));
        }
    }

    #[test]
    fn literals_round_trip((desc, g, x) in ring_desc_strategy().prop_flat_map(|desc| {
        let order = build_ring(&desc).expect("sampled descriptions build").order();
        (Just(desc), 0..order, 0..order)
    })) {
        prop_assert_eq!(parse_ring_desc(&emit_ring_desc(&desc)).unwrap(), desc.clone());
        let ring = build_ring(&desc).unwrap();
        let ideal = Ideal::generate(&ring, &[g]).unwrap();
        prop_assert_eq!(parse_ideal(&ring, &emit_ideal(&ideal)).unwrap(), ideal);
        let s = MultSet::closure(&ring, &[x]).unwrap();
        prop_assert_eq!(parse_mult_set(&ring, &emit_mult_set(&s)).unwrap(), s);
    }

    #[test]
    fn product_ideals_split_and_merge(
        (l, r, gl, gr) in ((2usize..=6), (2usize..=6), 0usize..36, 0usize..36)
    ) {
        let ring = build_ring(&RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: l }),
            right: Box::new(RingDesc::Zmod { n: r }),
        })
        .unwrap();
        let (left, right) = ring.product_parts().unwrap();
        let a = Ideal::principal(left, gl % left.order()).unwrap();
        let b = Ideal::principal(right, gr % right.order()).unwrap();
        let merged = merge_ideals(&ring, &a, &b).unwrap();
        let (back_a, back_b) = split_ideal(&merged).unwrap();
        prop_assert_eq!(back_a, a);
        prop_assert_eq!(back_b, b);
        for ideal in Ideal::enumerate(&ring) {
            let (x, y) = split_ideal(&ideal).unwrap();
            prop_assert_eq!(merge_ideals(&ring, &x, &y).unwrap(), ideal);
        }
    }
}

#[test]
fn zero_free_mult_set_enumeration_is_sound() {
    let ring = build_ring(&RingDesc::Zmod { n: 12 }).unwrap();
    let sets = all_zero_free_mult_sets(&ring);
    assert!(!sets.is_empty());
    for s in &sets {
        assert!(!s.contains_zero());
        assert!(s.contains(ring.one()));
        for a in s.iter() {
            for b in s.iter() {
                assert!(s.contains(ring.mul(a, b)));
            }
        }
    }
    let trivial = MultSet::trivial(&ring);
    assert!(sets.contains(&trivial));
}
