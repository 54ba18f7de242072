//! Hypothesis-gated sweeps that assert the catalog of primary-ideal facts
//! over configurable families of finite rings, plus a seeded random
//! counterexample hunter with greedy shrinking.
//!
//! Every check walks a space of configurations (ring, expansion, reduction,
//! multiplicative set, ideals). A configuration that fails one of a fact's
//! stated hypotheses is counted under `skipped` with the gate's name; a
//! configuration that passes all gates is `examined` and either satisfies
//! the conclusion or lands in `violations` together with its full serialized
//! configuration, so it can be replayed through the command-line interface.

mod core_checks;
mod localization_checks;
mod radical_checks;
mod structure_checks;
mod transfer_checks;

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::ideal::Ideal;
use crate::literal::{
    emit_expansion, emit_ideal, emit_mult_set, emit_reduction, emit_ring_desc, parse_expansion,
    parse_reduction, parse_ring_desc,
};
use crate::maps::{expansion_catalog, reduction_catalog, ExpansionFn, ReductionFn, ReductionImage};
use crate::multset::MultSet;
use crate::predicates::is_phi_delta_s_primary;
use crate::ring::{build_ring, Ring, RingDesc};

/// Configuration-level failures: malformed JSON shapes, unknown check
/// names, literals that do not fit the rings they are instantiated on.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),
}

fn cfg_err(msg: impl Into<String>) -> HarnessError {
    HarnessError::Config(msg.into())
}

/// Which expansion/reduction maps a run instantiates on each ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSelection {
    /// A small representative slice of the catalog (fast default).
    Core,
    /// The full built-in catalog for the ring.
    Catalog,
    /// Explicit map literals, parsed per ring.
    Literals(Vec<Value>),
}

/// Which multiplicative sets a run instantiates on each ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultSetSelection {
    /// Trivial set, unit closures, and a few zero-free non-unit closures.
    Families,
    /// Trivial set and the closure of each unit.
    Units,
    /// Explicit generator lists, closed per ring.
    Lists(Vec<Vec<usize>>),
}

/// A full harness run description: rings, map and mult-set selections,
/// enabled checks, and the seed/budget used by the hunter.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub rings: Vec<RingDesc>,
    pub deltas: MapSelection,
    pub phis: MapSelection,
    pub mult_sets: MultSetSelection,
    pub checks: BTreeSet<String>,
    pub seed: u64,
    pub budget: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            rings: default_rings(),
            deltas: MapSelection::Core,
            phis: MapSelection::Core,
            mult_sets: MultSetSelection::Families,
            checks: check_ids().iter().map(|s| s.to_string()).collect(),
            seed: 0,
            budget: 200,
        }
    }
}

/// The default ring family: cyclic rings with varied prime-power structure,
/// a quotient, and two products with coprime and non-coprime orders.
pub fn default_rings() -> Vec<RingDesc> {
    vec![
        RingDesc::Zmod { n: 12 },
        RingDesc::Zmod { n: 16 },
        RingDesc::Zmod { n: 24 },
        RingDesc::Zmod { n: 36 },
        RingDesc::Quotient {
            base: Box::new(RingDesc::Zmod { n: 12 }),
            gens: vec![6],
        },
        RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: 4 }),
            right: Box::new(RingDesc::Zmod { n: 9 }),
        },
        RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: 6 }),
            right: Box::new(RingDesc::Zmod { n: 8 }),
        },
    ]
}

pub const STRUCTURE_CHECKS: &[&str] = &[
    "directed-union",
    "directed-intersection",
    "colon-element-stays-primary",
    "colon-ideal-stays-primary",
    "meets-s-intersection-product",
];

pub const RADICAL_CHECKS: &[&str] = &[
    "radical-stays-primary",
    "radical-becomes-prime",
    "radical-colon-avoids-s",
    "expansion-colon-avoids-s",
];

pub const CORE_CHECKS: &[&str] = &[
    "characterization-agreement",
    "witness-colon-split",
    "witness-colon-split-radical",
    "square-collapse",
    "reduction-radical-bound",
    "witness-product-collapse",
    "two-ideal-product-collapse",
    "reduction-primary-equivalence",
    "weakly-prime-vs-prime",
    "weakly-primary-vs-primary",
];

pub const LOCALIZATION_CHECKS: &[&str] = &[
    "mult-set-descent",
    "saturation-laws",
    "saturation-invariance",
    "localization-equivalence",
];

pub const TRANSFER_CHECKS: &[&str] = &[
    "quotient-transfer",
    "quotient-weakly-transfer",
    "projection-transfer",
    "twin-zero-collapse",
    "twin-zero-transport",
    "free-twin-zero-pairs",
    "product-ideal-lattice",
    "product-classification",
];

/// All check identifiers in canonical report order.
pub fn check_ids() -> Vec<&'static str> {
    let mut ids = Vec::new();
    ids.extend_from_slice(STRUCTURE_CHECKS);
    ids.extend_from_slice(RADICAL_CHECKS);
    ids.extend_from_slice(CORE_CHECKS);
    ids.extend_from_slice(LOCALIZATION_CHECKS);
    ids.extend_from_slice(TRANSFER_CHECKS);
    ids
}

/// One violated configuration: the serialized inputs that reproduce it and
/// the data contradicting the conclusion.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub configuration: Value,
    pub counterexample: Value,
}

const MAX_VIOLATIONS: usize = 25;

/// Outcome of one check over the whole run: how many configurations were
/// examined, how many were gated out (by gate name), and any violations.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub examined: u64,
    pub skipped: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    fn new(id: &str) -> TheoremReport {
        TheoremReport {
            id: id.to_string(),
            examined: 0,
            skipped: BTreeMap::new(),
            violations: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn skip(&mut self, gate: &str) {
        *self.skipped.entry(gate.to_string()).or_insert(0) += 1;
    }

    pub(crate) fn pass(&mut self) {
        self.examined += 1;
    }

    pub(crate) fn violate(&mut self, configuration: Value, counterexample: Value) {
        self.examined += 1;
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(Violation {
                configuration,
                counterexample,
            });
        } else {
            self.note(&format!(
                "violation list truncated at {MAX_VIOLATIONS} entries"
            ));
        }
    }

    pub(crate) fn note(&mut self, text: &str) {
        if !self.notes.iter().any(|n| n == text) {
            self.notes.push(text.to_string());
        }
    }
}

/// Merged outcome of a run: per-check reports in canonical order, totals,
/// and the list of enabled checks that never examined a configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub checks: Vec<TheoremReport>,
    pub examined: u64,
    pub violations: u64,
    pub vacuous: Vec<String>,
}

impl RunReport {
    /// 0 = clean, 2 = violations found, 3 = some enabled check was vacuous.
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            2
        } else if !self.vacuous.is_empty() {
            3
        } else {
            0
        }
    }
}

// ---------------------------------------------------------------------------
// Configuration parsing
// ---------------------------------------------------------------------------

/// Parse a run configuration from its JSON document. Unknown keys, unknown
/// check names, and out-of-contract values are errors.
pub fn parse_check_config(value: &Value) -> Result<CheckConfig, HarnessError> {
    let obj = value
        .as_object()
        .ok_or_else(|| cfg_err("configuration must be a JSON object"))?;
    const KEYS: [&str; 7] = [
        "rings",
        "deltas",
        "phis",
        "mult_sets",
        "checks",
        "seed",
        "budget",
    ];
    for key in obj.keys() {
        if !KEYS.contains(&key.as_str()) {
            return Err(cfg_err(format!("unknown configuration key {key:?}")));
        }
    }
    let mut cfg = CheckConfig::default();
    if let Some(v) = obj.get("rings") {
        let arr = v
            .as_array()
            .ok_or_else(|| cfg_err("rings must be an array of ring literals"))?;
        if arr.is_empty() {
            return Err(cfg_err("rings must not be empty"));
        }
        cfg.rings = arr
            .iter()
            .map(|r| parse_ring_desc(r).map_err(|e| cfg_err(format!("rings: {e}"))))
            .collect::<Result<_, _>>()?;
    }
    if let Some(v) = obj.get("deltas") {
        cfg.deltas = parse_map_selection(v, "deltas")?;
    }
    if let Some(v) = obj.get("phis") {
        cfg.phis = parse_map_selection(v, "phis")?;
    }
    if let Some(v) = obj.get("mult_sets") {
        cfg.mult_sets = parse_mult_set_selection(v)?;
    }
    if let Some(v) = obj.get("checks") {
        cfg.checks = parse_check_selection(v)?;
    }
    if let Some(v) = obj.get("seed") {
        cfg.seed = v
            .as_u64()
            .ok_or_else(|| cfg_err("seed must be a non-negative integer"))?;
    }
    if let Some(v) = obj.get("budget") {
        cfg.budget = v
            .as_u64()
            .ok_or_else(|| cfg_err("budget must be a non-negative integer"))?;
    }
    if cfg.budget == 0 {
        return Err(cfg_err("budget must be at least 1"));
    }
    Ok(cfg)
}

fn parse_map_selection(value: &Value, field: &str) -> Result<MapSelection, HarnessError> {
    match value {
        Value::String(s) if s == "core" => Ok(MapSelection::Core),
        Value::String(s) if s == "catalog" => Ok(MapSelection::Catalog),
        Value::Array(items) => {
            if items.is_empty() {
                return Err(cfg_err(format!("{field} must not be empty")));
            }
            Ok(MapSelection::Literals(items.clone()))
        }
        _ => Err(cfg_err(format!(
            "{field} must be \"core\", \"catalog\", or an array of map literals"
        ))),
    }
}

fn parse_mult_set_selection(value: &Value) -> Result<MultSetSelection, HarnessError> {
    match value {
        Value::String(s) if s == "families" => Ok(MultSetSelection::Families),
        Value::String(s) if s == "units" => Ok(MultSetSelection::Units),
        Value::Array(items) => {
            if items.is_empty() {
                return Err(cfg_err("mult_sets must not be empty"));
            }
            let lists = items
                .iter()
                .map(|entry| {
                    entry
                        .as_array()
                        .ok_or_else(|| cfg_err("mult_sets entries must be arrays of elements"))?
                        .iter()
                        .map(|g| {
                            g.as_u64()
                                .map(|n| n as usize)
                                .ok_or_else(|| cfg_err("mult-set generators must be non-negative"))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MultSetSelection::Lists(lists))
        }
        _ => Err(cfg_err(
            "mult_sets must be \"families\", \"units\", or an array of generator lists",
        )),
    }
}

fn parse_check_selection(value: &Value) -> Result<BTreeSet<String>, HarnessError> {
    match value {
        Value::String(s) if s == "all" => Ok(check_ids().iter().map(|s| s.to_string()).collect()),
        Value::Array(items) => {
            if items.is_empty() {
                return Err(cfg_err("checks must not be empty"));
            }
            let known = check_ids();
            let mut out = BTreeSet::new();
            for item in items {
                let name = item
                    .as_str()
                    .ok_or_else(|| cfg_err("checks entries must be strings"))?;
                if !known.contains(&name) {
                    return Err(cfg_err(format!("unknown check id {name:?}")));
                }
                out.insert(name.to_string());
            }
            Ok(out)
        }
        _ => Err(cfg_err("checks must be \"all\" or an array of check ids")),
    }
}

// ---------------------------------------------------------------------------
// Ring contexts
// ---------------------------------------------------------------------------

/// Witness sets of every proper ideal of a ring under one (δ, φ, S) choice;
/// `None` marks ideals that meet the multiplicative set.
type WitnessTable = Rc<Vec<Option<Vec<usize>>>>;

/// Literal forms of (δ, φ) plus the members of S.
type WitnessKey = (String, String, Vec<usize>);

/// Everything a check needs about one ring: the built ring, its ideal
/// lattice, and the maps and multiplicative sets instantiated on it.
pub(crate) struct RingCtx {
    pub desc: RingDesc,
    pub ring: Ring,
    pub lattice: Vec<Ideal>,
    pub proper: Vec<Ideal>,
    pub deltas: Vec<ExpansionFn>,
    pub phis: Vec<ReductionFn>,
    pub mult_sets: Vec<MultSet>,
    /// Memoized witness tables keyed by the literal forms of (δ, φ) and the
    /// members of S.  Table-backed maps have no literal form and bypass it.
    cache: RefCell<BTreeMap<WitnessKey, WitnessTable>>,
}

fn core_deltas(ring: &Ring) -> Vec<ExpansionFn> {
    let mut out = vec![ExpansionFn::Identity, ExpansionFn::Radical];
    let seed = Ideal::enumerate_proper(ring)
        .into_iter()
        .find(|i| !i.is_zero());
    if let Some(seed) = seed {
        let plus = ExpansionFn::plus(seed.clone()).expect("seed ideal is proper");
        out.push(plus.clone());
        out.push(ExpansionFn::colon_by(seed).expect("seed ideal is proper"));
        out.push(ExpansionFn::Sum(
            Box::new(ExpansionFn::Radical),
            Box::new(plus),
        ));
    }
    out
}

fn core_phis() -> Vec<ReductionFn> {
    vec![
        ReductionFn::Empty,
        ReductionFn::Zero,
        ReductionFn::power(2).expect("exponent at least 2"),
        ReductionFn::Omega,
        ReductionFn::Identity,
    ]
}

fn delta_list(selection: &MapSelection, ring: &Ring) -> Result<Vec<ExpansionFn>, HarnessError> {
    match selection {
        MapSelection::Core => Ok(core_deltas(ring)),
        MapSelection::Catalog => Ok(expansion_catalog(ring)),
        MapSelection::Literals(values) => values
            .iter()
            .map(|v| parse_expansion(ring, v).map_err(|e| cfg_err(format!("deltas: {e}"))))
            .collect(),
    }
}

fn phi_list(selection: &MapSelection, _ring: &Ring) -> Result<Vec<ReductionFn>, HarnessError> {
    match selection {
        MapSelection::Core => Ok(core_phis()),
        MapSelection::Catalog => Ok(reduction_catalog()),
        MapSelection::Literals(values) => values
            .iter()
            .map(|v| parse_reduction(v).map_err(|e| cfg_err(format!("phis: {e}"))))
            .collect(),
    }
}

/// Trivial set plus the closure of each unit, deduplicated.
pub(crate) fn unit_mult_sets(ring: &Ring) -> Vec<MultSet> {
    let mut out = vec![MultSet::trivial(ring)];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(out[0].members().to_vec());
    for u in ring.units().iter() {
        let s = MultSet::closure(ring, &[u]).expect("unit index is in range");
        if seen.insert(s.members().to_vec()) {
            out.push(s);
        }
    }
    out
}

fn family_mult_sets(ring: &Ring) -> Vec<MultSet> {
    let mut out = unit_mult_sets(ring);
    let mut seen: BTreeSet<Vec<usize>> = out.iter().map(|s| s.members().to_vec()).collect();
    let mut extras = 0;
    for x in ring.elements() {
        if extras == 3 {
            break;
        }
        if x == ring.zero() || ring.is_unit(x) {
            continue;
        }
        let s = MultSet::closure(ring, &[x]).expect("element index is in range");
        if s.contains_zero() {
            continue;
        }
        if seen.insert(s.members().to_vec()) {
            out.push(s);
            extras += 1;
        }
    }
    out
}

fn mult_set_list(selection: &MultSetSelection, ring: &Ring) -> Result<Vec<MultSet>, HarnessError> {
    match selection {
        MultSetSelection::Families => Ok(family_mult_sets(ring)),
        MultSetSelection::Units => Ok(unit_mult_sets(ring)),
        MultSetSelection::Lists(lists) => lists
            .iter()
            .map(|gens| {
                MultSet::closure(ring, gens).map_err(|e| cfg_err(format!("mult_sets: {e}")))
            })
            .collect(),
    }
}

fn build_ctx(cfg: &CheckConfig, desc: &RingDesc) -> Result<RingCtx, HarnessError> {
    let ring = build_ring(desc).map_err(|e| cfg_err(format!("rings: {e}")))?;
    let lattice = Ideal::enumerate(&ring);
    let proper: Vec<Ideal> = lattice.iter().filter(|i| i.is_proper()).cloned().collect();
    let deltas = delta_list(&cfg.deltas, &ring)?;
    let phis = phi_list(&cfg.phis, &ring)?;
    let mult_sets = mult_set_list(&cfg.mult_sets, &ring)?;
    Ok(RingCtx {
        desc: desc.clone(),
        ring,
        lattice,
        proper,
        deltas,
        phis,
        mult_sets,
        cache: RefCell::new(BTreeMap::new()),
    })
}

// ---------------------------------------------------------------------------
// Shared helpers for checks
// ---------------------------------------------------------------------------

/// Witness sets of every proper ideal under one (δ, φ, S) choice; `None`
/// marks ideals that meet the multiplicative set (no standing).
pub(crate) fn witness_table(
    ctx: &RingCtx,
    delta: &ExpansionFn,
    phi: &ReductionFn,
    s: &MultSet,
) -> WitnessTable {
    let key = match (emit_expansion(delta), emit_reduction(phi)) {
        (Ok(d), Ok(p)) => Some((d.to_string(), p.to_string(), s.members().to_vec())),
        _ => None,
    };
    if let Some(key) = &key {
        if let Some(hit) = ctx.cache.borrow().get(key) {
            return Rc::clone(hit);
        }
    }
    let table: Vec<Option<Vec<usize>>> = ctx
        .proper
        .iter()
        .map(|ideal| {
            if !s.disjoint_from(ideal) {
                return None;
            }
            Some(
                is_phi_delta_s_primary(ideal, phi, delta, s)
                    .expect("standing conditions hold")
                    .witnesses,
            )
        })
        .collect();
    let table = Rc::new(table);
    if let Some(key) = key {
        ctx.cache.borrow_mut().insert(key, Rc::clone(&table));
    }
    table
}

pub(crate) fn proper_index(ctx: &RingCtx, ideal: &Ideal) -> usize {
    ctx.proper
        .iter()
        .position(|p| p == ideal)
        .expect("proper ideal appears in the lattice")
}

pub(crate) fn contains_sorted(sorted: &[usize], x: usize) -> bool {
    sorted.binary_search(&x).is_ok()
}

/// Colon of a reduction image by a ring element; the empty image stays empty.
pub(crate) fn image_colon_elem(img: &ReductionImage, a: usize) -> Option<Ideal> {
    img.as_ideal().map(|p| p.colon_elem(a))
}

/// Colon of a reduction image by an ideal; the empty image stays empty.
pub(crate) fn image_colon_ideal(img: &ReductionImage, j: &Ideal) -> Option<Ideal> {
    img.as_ideal()
        .map(|p| p.colon_ideal(j).expect("ideals share a ring"))
}

/// Radical of a reduction image; the empty image stays empty.
pub(crate) fn image_radical(img: &ReductionImage) -> Option<Ideal> {
    img.as_ideal().map(|p| p.radical())
}

/// `a ⊆ b` where the empty set is a subset of everything.
pub(crate) fn opt_subset_opt(a: &Option<Ideal>, b: &Option<Ideal>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x.is_subset(y),
    }
}

/// `a ⊆ img` where the empty image only contains the empty set.
pub(crate) fn opt_subset_image(a: &Option<Ideal>, img: &ReductionImage) -> bool {
    match (a, img.as_ideal()) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x.is_subset(y),
    }
}

pub(crate) fn expansion_json(delta: &ExpansionFn) -> Value {
    emit_expansion(delta).unwrap_or_else(|_| Value::String(delta.label()))
}

pub(crate) fn reduction_json(phi: &ReductionFn) -> Value {
    emit_reduction(phi).unwrap_or_else(|_| Value::String(phi.label()))
}

/// The serialized configuration shared by most checks; `extra` appends
/// check-specific fields.
pub(crate) fn config_json(
    ctx: &RingCtx,
    delta: Option<&ExpansionFn>,
    phi: Option<&ReductionFn>,
    s: Option<&MultSet>,
    extra: &[(&str, Value)],
) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("ring".to_string(), emit_ring_desc(&ctx.desc));
    if let Some(delta) = delta {
        obj.insert("delta".to_string(), expansion_json(delta));
    }
    if let Some(phi) = phi {
        obj.insert("phi".to_string(), reduction_json(phi));
    }
    if let Some(s) = s {
        obj.insert("s".to_string(), emit_mult_set(s));
    }
    for (key, value) in extra {
        obj.insert(key.to_string(), value.clone());
    }
    Value::Object(obj)
}

pub(crate) fn ideal_json(ideal: &Ideal) -> Value {
    emit_ideal(ideal)
}

pub(crate) fn image_json(img: &ReductionImage) -> Value {
    match img.as_ideal() {
        None => Value::String("empty".to_string()),
        Some(p) => ideal_json(p),
    }
}

pub(crate) fn opt_ideal_json(opt: &Option<Ideal>) -> Value {
    match opt {
        None => Value::String("empty".to_string()),
        Some(p) => ideal_json(p),
    }
}

/// Image equality against an optional ideal (`None` meaning the empty image).
pub(crate) fn image_eq_opt(img: &ReductionImage, opt: &Option<Ideal>) -> bool {
    match (img.as_ideal(), opt) {
        (None, None) => true,
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Running checks
// ---------------------------------------------------------------------------

type CheckFn = fn(&CheckConfig, &RingCtx, &mut TheoremReport);

fn check_fn(id: &str) -> CheckFn {
    match id {
        "directed-union" => structure_checks::directed_union,
        "directed-intersection" => structure_checks::directed_intersection,
        "colon-element-stays-primary" => structure_checks::colon_element_stays_primary,
        "colon-ideal-stays-primary" => structure_checks::colon_ideal_stays_primary,
        "meets-s-intersection-product" => structure_checks::meets_s_intersection_product,
        "radical-stays-primary" => radical_checks::radical_stays_primary,
        "radical-becomes-prime" => radical_checks::radical_becomes_prime,
        "radical-colon-avoids-s" => radical_checks::radical_colon_avoids_s,
        "expansion-colon-avoids-s" => radical_checks::expansion_colon_avoids_s,
        "characterization-agreement" => core_checks::characterization_agreement,
        "witness-colon-split" => core_checks::witness_colon_split,
        "witness-colon-split-radical" => core_checks::witness_colon_split_radical,
        "square-collapse" => core_checks::square_collapse,
        "reduction-radical-bound" => core_checks::reduction_radical_bound,
        "witness-product-collapse" => core_checks::witness_product_collapse,
        "two-ideal-product-collapse" => core_checks::two_ideal_product_collapse,
        "reduction-primary-equivalence" => core_checks::reduction_primary_equivalence,
        "weakly-prime-vs-prime" => core_checks::weakly_prime_vs_prime,
        "weakly-primary-vs-primary" => core_checks::weakly_primary_vs_primary,
        "mult-set-descent" => localization_checks::mult_set_descent,
        "saturation-laws" => localization_checks::saturation_laws,
        "saturation-invariance" => localization_checks::saturation_invariance,
        "localization-equivalence" => localization_checks::localization_equivalence,
        "quotient-transfer" => transfer_checks::quotient_transfer,
        "quotient-weakly-transfer" => transfer_checks::quotient_weakly_transfer,
        "projection-transfer" => transfer_checks::projection_transfer,
        "twin-zero-collapse" => transfer_checks::twin_zero_collapse,
        "twin-zero-transport" => transfer_checks::twin_zero_transport,
        "free-twin-zero-pairs" => transfer_checks::free_twin_zero_pairs,
        "product-ideal-lattice" => transfer_checks::product_ideal_lattice,
        "product-classification" => transfer_checks::product_classification,
        other => unreachable!("unknown check id {other}"),
    }
}

fn run_selected(cfg: &CheckConfig, ids: &[&str]) -> Result<Vec<TheoremReport>, HarnessError> {
    let ctxs: Vec<RingCtx> = cfg
        .rings
        .iter()
        .map(|desc| build_ctx(cfg, desc))
        .collect::<Result<_, _>>()?;
    let mut reports = Vec::new();
    for &id in ids {
        if !cfg.checks.contains(id) {
            continue;
        }
        let mut report = TheoremReport::new(id);
        let start = Instant::now();
        let check = check_fn(id);
        for ctx in &ctxs {
            check(cfg, ctx, &mut report);
        }
        report.elapsed = start.elapsed();
        reports.push(report);
    }
    Ok(reports)
}

/// Directed unions/intersections, colon stability, and the meets-S
/// intersection/product facts.
pub fn run_structure_checks(cfg: &CheckConfig) -> Result<Vec<TheoremReport>, HarnessError> {
    run_selected(cfg, STRUCTURE_CHECKS)
}

/// Facts about radicals of primary ideals.
pub fn run_radical_checks(cfg: &CheckConfig) -> Result<Vec<TheoremReport>, HarnessError> {
    run_selected(cfg, RADICAL_CHECKS)
}

/// Characterizations, collapse bounds, and ring-level equivalences.
pub fn run_core_checks(cfg: &CheckConfig) -> Result<Vec<TheoremReport>, HarnessError> {
    run_selected(cfg, CORE_CHECKS)
}

/// Multiplicative-set descent, saturation, and localization equivalence.
pub fn run_localization_checks(cfg: &CheckConfig) -> Result<Vec<TheoremReport>, HarnessError> {
    run_selected(cfg, LOCALIZATION_CHECKS)
}

/// Quotient/projection transfer, twin zeros, and product classification.
pub fn run_transfer_and_product_checks(
    cfg: &CheckConfig,
) -> Result<Vec<TheoremReport>, HarnessError> {
    run_selected(cfg, TRANSFER_CHECKS)
}

fn merge_run(seed: u64, reports: Vec<TheoremReport>, guard_vacuous: bool) -> RunReport {
    let examined = reports.iter().map(|r| r.examined).sum();
    let violations = reports.iter().map(|r| r.violations.len() as u64).sum();
    let vacuous = if guard_vacuous {
        reports
            .iter()
            .filter(|r| r.examined == 0)
            .map(|r| r.id.clone())
            .collect()
    } else {
        Vec::new()
    };
    RunReport {
        seed,
        checks: reports,
        examined,
        violations,
        vacuous,
    }
}

/// Run every enabled check over the configured rings. The vacuity guard
/// lists enabled checks that examined no configuration at all.
pub fn run_checks(cfg: &CheckConfig) -> Result<RunReport, HarnessError> {
    let ids = check_ids();
    let reports = run_selected(cfg, &ids)?;
    Ok(merge_run(cfg.seed, reports, true))
}

// ---------------------------------------------------------------------------
// The counterexample hunter
// ---------------------------------------------------------------------------

/// Sample random configurations, run the enabled checks on each, and report
/// any violation after greedy shrinking. Fully reproducible from the seed;
/// the vacuity guard does not apply (random samples may all be gated out).
pub fn hunt(cfg: &CheckConfig, max_order: usize) -> Result<RunReport, HarnessError> {
    if cfg.budget == 0 {
        return Err(cfg_err("budget must be at least 1"));
    }
    if max_order < 2 {
        return Err(cfg_err("max order must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ids = check_ids();
    let mut merged: Vec<TheoremReport> = ids
        .iter()
        .filter(|id| cfg.checks.contains(**id))
        .map(|id| TheoremReport::new(id))
        .collect();
    for _ in 0..cfg.budget {
        let sample = sample_config(&mut rng, max_order, &cfg.checks);
        let run = run_checks(&sample)?;
        for report in run.checks {
            let target = merged
                .iter_mut()
                .find(|r| r.id == report.id)
                .expect("sample runs the same enabled checks");
            target.examined += report.examined;
            for (gate, count) in report.skipped {
                *target.skipped.entry(gate).or_insert(0) += count;
            }
            for note in report.notes {
                target.note(&note);
            }
            if !report.violations.is_empty() {
                let violation = shrink(&report.id, &sample, report.violations[0].clone());
                target.violate(violation.configuration, violation.counterexample);
            }
        }
    }
    Ok(merge_run(cfg.seed, merged, false))
}

fn sample_config(rng: &mut ChaCha8Rng, max_order: usize, checks: &BTreeSet<String>) -> CheckConfig {
    let desc = sample_ring_desc(rng, max_order);
    let ring = build_ring(&desc).expect("sampled descriptions are valid");
    let order = ring.order();
    let delta = match rng.gen_range(0..4u32) {
        0 => json!("identity"),
        1 => json!("radical"),
        kind => {
            // plus/colon_by need a proper parameter ideal; a non-unit
            // generator always yields one.
            let mut g = rng.gen_range(0..order);
            for _ in 0..8 {
                if !ring.is_unit(g) {
                    break;
                }
                g = rng.gen_range(0..order);
            }
            if ring.is_unit(g) {
                json!("identity")
            } else if kind == 2 {
                json!({"plus": {"gens": [g]}})
            } else {
                json!({"colon_by": {"gens": [g]}})
            }
        }
    };
    let phi = match rng.gen_range(0..6u32) {
        0 => json!("empty"),
        1 => json!("zero"),
        2 => json!({"power": 2}),
        3 => json!({"power": 3}),
        4 => json!("omega"),
        _ => json!("identity"),
    };
    let mut mult_lists = vec![Vec::new()];
    let x = rng.gen_range(0..order);
    let closure = MultSet::closure(&ring, &[x]).expect("element in range");
    if !closure.contains_zero() {
        mult_lists.push(vec![x]);
    }
    CheckConfig {
        rings: vec![desc],
        deltas: MapSelection::Literals(vec![delta]),
        phis: MapSelection::Literals(vec![phi]),
        mult_sets: MultSetSelection::Lists(mult_lists),
        checks: checks.clone(),
        seed: 0,
        budget: 1,
    }
}

fn sample_ring_desc(rng: &mut ChaCha8Rng, max_order: usize) -> RingDesc {
    let roll = rng.gen_range(0..100u32);
    if roll < 60 || max_order < 4 {
        return RingDesc::Zmod {
            n: rng.gen_range(2..=max_order),
        };
    }
    if roll < 85 {
        let left = rng.gen_range(2..=max_order / 2);
        let right = rng.gen_range(2..=max_order / left);
        return RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: left }),
            right: Box::new(RingDesc::Zmod { n: right }),
        };
    }
    let n = rng.gen_range(4..=max_order);
    for _ in 0..8 {
        let g = rng.gen_range(2..n);
        if gcd(g, n) > 1 {
            return RingDesc::Quotient {
                base: Box::new(RingDesc::Zmod { n }),
                gens: vec![g],
            };
        }
    }
    RingDesc::Zmod { n }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Greedily replace the sampled configuration with smaller ones that still
/// violate the same check: smaller cyclic rings, flattened products and
/// quotients, dropped multiplicative-set generators, simpler maps.
fn shrink(check_id: &str, cfg: &CheckConfig, violation: Violation) -> Violation {
    let mut current = cfg.clone();
    let mut current_violation = violation;
    loop {
        let mut advanced = false;
        for candidate in shrink_candidates(&current) {
            if let Some(found) = first_violation_of(check_id, &candidate) {
                current = candidate;
                current_violation = found;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return current_violation;
        }
    }
}

fn first_violation_of(check_id: &str, cfg: &CheckConfig) -> Option<Violation> {
    let mut only = cfg.clone();
    only.checks = [check_id.to_string()].into_iter().collect();
    let run = run_checks(&only).ok()?;
    run.checks
        .into_iter()
        .find(|r| r.id == check_id)
        .and_then(|r| r.violations.into_iter().next())
}

fn shrink_candidates(cfg: &CheckConfig) -> Vec<CheckConfig> {
    let mut out = Vec::new();
    for desc in smaller_ring_descs(&cfg.rings[0]) {
        let mut candidate = cfg.clone();
        candidate.rings = vec![desc.clone()];
        if let Ok(ring) = build_ring(&desc) {
            remap_literals(&mut candidate, ring.order());
            out.push(candidate);
        }
    }
    if let MultSetSelection::Lists(lists) = &cfg.mult_sets {
        for (i, list) in lists.iter().enumerate() {
            if list.is_empty() {
                continue;
            }
            for j in 0..list.len() {
                let mut shrunk = lists.clone();
                let mut entry = list.clone();
                entry.remove(j);
                shrunk[i] = entry;
                let mut candidate = cfg.clone();
                candidate.mult_sets = MultSetSelection::Lists(shrunk);
                out.push(candidate);
            }
        }
    }
    if cfg.deltas != MapSelection::Literals(vec![json!("identity")]) {
        let mut candidate = cfg.clone();
        candidate.deltas = MapSelection::Literals(vec![json!("identity")]);
        out.push(candidate);
    }
    if cfg.phis != MapSelection::Literals(vec![json!("empty")]) {
        let mut candidate = cfg.clone();
        candidate.phis = MapSelection::Literals(vec![json!("empty")]);
        out.push(candidate);
    }
    out
}

fn smaller_ring_descs(desc: &RingDesc) -> Vec<RingDesc> {
    match desc {
        RingDesc::Zmod { n } => {
            let mut out = Vec::new();
            for d in 2..*n {
                if n % d == 0 {
                    out.push(RingDesc::Zmod { n: d });
                }
            }
            out
        }
        RingDesc::Product { left, right } => {
            vec![(**left).clone(), (**right).clone()]
        }
        RingDesc::Quotient { base, .. } => vec![(**base).clone()],
    }
}

fn remap_literals(cfg: &mut CheckConfig, order: usize) {
    let remap_value = |v: &mut Value| {
        for key in ["plus", "colon_by"] {
            if let Some(gens) = v
                .get_mut(key)
                .and_then(|inner| inner.get_mut("gens"))
                .and_then(|g| g.as_array_mut())
            {
                for g in gens {
                    if let Some(n) = g.as_u64() {
                        *g = json!(n as usize % order);
                    }
                }
            }
        }
    };
    if let MapSelection::Literals(values) = &mut cfg.deltas {
        values.iter_mut().for_each(remap_value);
    }
    if let MultSetSelection::Lists(lists) = &mut cfg.mult_sets {
        for list in lists {
            for g in list {
                *g %= order;
            }
        }
    }
}
