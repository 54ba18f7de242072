//! Workbench for generalized primary ideals in finite commutative rings.
//!
//! The crate builds finite commutative rings with unity (modular rings,
//! products, quotients), does ideal arithmetic on them as bitsets, and
//! decides the generalized primary conditions: given a reduction φ, an
//! expansion δ, and a multiplicatively closed set S, which s ∈ S witness
//! that a proper ideal I is φ-δ-S-primary. Around the core decision sit
//! localization, quotient and projection transfer, product-ring
//! classification, twin-zero analysis, and a check harness that sweeps
//! the accompanying fact catalog over configurable ring families.

pub mod bitset;
pub mod harness;
pub mod ideal;
pub mod literal;
pub mod localize;
pub mod maps;
pub mod multset;
pub mod predicates;
pub mod product;
pub mod ring;
pub mod transfer;

pub use bitset::ElemSet;
pub use harness::{
    check_ids, default_rings, hunt, parse_check_config, run_checks, run_core_checks,
    run_localization_checks, run_radical_checks, run_structure_checks,
    run_transfer_and_product_checks, CheckConfig, HarnessError, MapSelection, MultSetSelection,
    RunReport, TheoremReport, Violation,
};
pub use ideal::{Ideal, IdealError};
pub use literal::{
    emit_expansion, emit_ideal, emit_mult_set, emit_reduction, emit_ring_desc, parse_expansion,
    parse_ideal, parse_mult_set, parse_reduction, parse_ring_desc, token_to_value, LiteralError,
};
pub use localize::{LocalizeError, LocalizedRing};
pub use maps::{
    check_expansion_axioms, check_reduction_axioms, expansion_catalog, leq_expansions,
    leq_reductions, reduction_catalog, ExpansionFn, MapError, ReductionFn, ReductionImage,
};
pub use multset::{all_zero_free_mult_sets, MultSet, MultSetError};
pub use predicates::{
    char_colon_delta, char_colon_ideal, char_ideal_pairs, first_violation, is_free_twin_zero,
    is_free_twin_zero_global, is_phi_delta_s_primary, is_primary, is_prime, is_s_prime,
    is_weakly_s_prime, twin_zeros, Counterexample, PredicateError, TwinZero, WitnessReport,
};
pub use product::{
    classify_product, merge_ideals, split_ideal, ProductClassification, ProductError, ProductMaps,
};
pub use ring::{build_ring, verify_ring_axioms, Ring, RingDesc, RingError};
pub use transfer::{
    check_transfer_identities, projection_epimorphism, quotient_epimorphism, twin_zero_transport,
    Axis, EpiVariant, StructuredEpimorphism, TransferError, TransferredMaps,
};
