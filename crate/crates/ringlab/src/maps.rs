//! Expansion and reduction functions on the ideal lattice.
//!
//! An expansion δ sends every ideal I to an ideal δ(I) ⊇ I and is monotone.
//! A reduction φ sends every ideal to either an ideal φ(I) ⊆ I or to the
//! empty image, and is monotone with the empty image below everything.
//! Both kinds are first-class values: built-in variants cover the standard
//! catalog, and table-backed variants carry maps induced on quotients and
//! localizations.
//!
//! Empty-image conventions, used consistently across the crate:
//! membership in the empty image is false; an ideal is never a subset of the
//! empty image (it contains 0), while the empty image is below everything;
//! a colon of the empty image is empty; set difference `I − ∅` is `I`.

use crate::bitset::ElemSet;
use crate::ideal::Ideal;
use crate::ring::Ring;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MapError {
    #[error("map parameter belongs to a different ring")]
    RingMismatch,
    #[error("map parameter must be a proper ideal")]
    ParamNotProper,
    #[error("power exponent must be at least 2, got {0}")]
    PowerTooSmall(usize),
    #[error("table has no entry for the given ideal")]
    TableMiss,
}

/// Image of a reduction function: an ideal or nothing at all.
#[derive(Clone, PartialEq, Eq)]
pub enum ReductionImage {
    Empty,
    Of(Ideal),
}

impl ReductionImage {
    pub fn is_empty_image(&self) -> bool {
        matches!(self, ReductionImage::Empty)
    }

    pub fn as_ideal(&self) -> Option<&Ideal> {
        match self {
            ReductionImage::Empty => None,
            ReductionImage::Of(i) => Some(i),
        }
    }

    /// Element membership; always false in the empty image.
    pub fn contains(&self, x: usize) -> bool {
        match self {
            ReductionImage::Empty => false,
            ReductionImage::Of(i) => i.contains(x),
        }
    }

    /// The `⊑` order: empty below everything, ideals by inclusion. An ideal
    /// is never below the empty image.
    pub fn le(&self, other: &ReductionImage) -> bool {
        match (self, other) {
            (ReductionImage::Empty, _) => true,
            (ReductionImage::Of(_), ReductionImage::Empty) => false,
            (ReductionImage::Of(a), ReductionImage::Of(b)) => a.is_subset(b),
        }
    }

    /// Subset test for an ideal against this image (an ideal is nonempty as a
    /// set, so it is a subset of the empty image never).
    pub fn ideal_is_subset(ideal: &Ideal, img: &ReductionImage) -> bool {
        match img {
            ReductionImage::Empty => false,
            ReductionImage::Of(i) => ideal.is_subset(i),
        }
    }
}

impl std::fmt::Debug for ReductionImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReductionImage::Empty => write!(f, "(empty)"),
            ReductionImage::Of(i) => write!(f, "{:?}", i.members()),
        }
    }
}

/// Table-backed map over a ring's full ideal lattice, keyed by member set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTable {
    ring: Ring,
    entries: Vec<(ElemSet, ElemSet)>, // sorted by key
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTable {
    ring: Ring,
    entries: Vec<(ElemSet, Option<ElemSet>)>, // None = empty image
}

impl ExpansionTable {
    pub fn from_fn(ring: &Ring, mut f: impl FnMut(&Ideal) -> Ideal) -> ExpansionTable {
        let mut entries: Vec<(ElemSet, ElemSet)> = Ideal::enumerate(ring)
            .iter()
            .map(|i| (i.members().clone(), f(i).members().clone()))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        ExpansionTable {
            ring: ring.clone(),
            entries,
        }
    }

    fn lookup(&self, ideal: &Ideal) -> Result<Ideal, MapError> {
        if !self.ring.same_ring(ideal.ring()) {
            return Err(MapError::RingMismatch);
        }
        let idx = self
            .entries
            .binary_search_by(|e| e.0.cmp(ideal.members()))
            .map_err(|_| MapError::TableMiss)?;
        Ok(Ideal::from_set_unchecked(
            &self.ring,
            self.entries[idx].1.clone(),
        ))
    }
}

impl ReductionTable {
    pub fn from_fn(ring: &Ring, mut f: impl FnMut(&Ideal) -> ReductionImage) -> ReductionTable {
        let mut entries: Vec<(ElemSet, Option<ElemSet>)> = Ideal::enumerate(ring)
            .iter()
            .map(|i| {
                let img = match f(i) {
                    ReductionImage::Empty => None,
                    ReductionImage::Of(j) => Some(j.members().clone()),
                };
                (i.members().clone(), img)
            })
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        ReductionTable {
            ring: ring.clone(),
            entries,
        }
    }

    fn lookup(&self, ideal: &Ideal) -> Result<ReductionImage, MapError> {
        if !self.ring.same_ring(ideal.ring()) {
            return Err(MapError::RingMismatch);
        }
        let idx = self
            .entries
            .binary_search_by(|e| e.0.cmp(ideal.members()))
            .map_err(|_| MapError::TableMiss)?;
        Ok(match &self.entries[idx].1 {
            None => ReductionImage::Empty,
            Some(s) => ReductionImage::Of(Ideal::from_set_unchecked(&self.ring, s.clone())),
        })
    }
}

/// Expansion functions δ on the ideal lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionFn {
    /// δ₀: I ↦ I
    Identity,
    /// δ₁: I ↦ √I
    Radical,
    /// I ↦ I + J for a fixed proper ideal J
    Plus(Ideal),
    /// I ↦ (I : J) for a fixed proper ideal J
    ColonBy(Ideal),
    /// I ↦ δa(I) + δb(I)
    Sum(Box<ExpansionFn>, Box<ExpansionFn>),
    /// I ↦ ∩ δi(I)
    Meet(Vec<ExpansionFn>),
    /// I ↦ δa(δb(I))
    Compose(Box<ExpansionFn>, Box<ExpansionFn>),
    Table(ExpansionTable),
}

impl ExpansionFn {
    pub fn plus(j: Ideal) -> Result<ExpansionFn, MapError> {
        if !j.is_proper() {
            return Err(MapError::ParamNotProper);
        }
        Ok(ExpansionFn::Plus(j))
    }

    pub fn colon_by(j: Ideal) -> Result<ExpansionFn, MapError> {
        if !j.is_proper() {
            return Err(MapError::ParamNotProper);
        }
        Ok(ExpansionFn::ColonBy(j))
    }

    pub fn apply(&self, ideal: &Ideal) -> Result<Ideal, MapError> {
        match self {
            ExpansionFn::Identity => Ok(ideal.clone()),
            ExpansionFn::Radical => Ok(ideal.radical()),
            ExpansionFn::Plus(j) => ideal.sum(j).map_err(|_| MapError::RingMismatch),
            ExpansionFn::ColonBy(j) => ideal.colon_ideal(j).map_err(|_| MapError::RingMismatch),
            ExpansionFn::Sum(a, b) => {
                let ia = a.apply(ideal)?;
                let ib = b.apply(ideal)?;
                ia.sum(&ib).map_err(|_| MapError::RingMismatch)
            }
            ExpansionFn::Meet(parts) => {
                let mut acc: Option<Ideal> = None;
                for p in parts {
                    let img = p.apply(ideal)?;
                    acc = Some(match acc {
                        None => img,
                        Some(prev) => prev.intersect(&img).map_err(|_| MapError::RingMismatch)?,
                    });
                }
                Ok(acc.unwrap_or_else(|| Ideal::unit(ideal.ring())))
            }
            ExpansionFn::Compose(a, b) => a.apply(&b.apply(ideal)?),
            ExpansionFn::Table(t) => t.lookup(ideal),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ExpansionFn::Identity => "identity".into(),
            ExpansionFn::Radical => "radical".into(),
            ExpansionFn::Plus(j) => format!("plus{:?}", j.members()),
            ExpansionFn::ColonBy(j) => format!("colon{:?}", j.members()),
            ExpansionFn::Sum(a, b) => format!("sum({},{})", a.label(), b.label()),
            ExpansionFn::Meet(v) => format!(
                "meet({})",
                v.iter().map(|p| p.label()).collect::<Vec<_>>().join(",")
            ),
            ExpansionFn::Compose(a, b) => format!("compose({},{})", a.label(), b.label()),
            ExpansionFn::Table(_) => "table".into(),
        }
    }
}

/// Reduction functions φ on the ideal lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionFn {
    /// φ_∅: everything to the empty image
    Empty,
    /// φ₀: everything to the zero ideal
    Zero,
    /// φ_n: I ↦ I^n, n ≥ 2
    Power(usize),
    /// φ_ω: I ↦ ∩ I^k (the stable power)
    Omega,
    /// φ₁: I ↦ I
    Identity,
    Table(ReductionTable),
}

impl ReductionFn {
    pub fn power(n: usize) -> Result<ReductionFn, MapError> {
        if n < 2 {
            return Err(MapError::PowerTooSmall(n));
        }
        Ok(ReductionFn::Power(n))
    }

    pub fn apply(&self, ideal: &Ideal) -> Result<ReductionImage, MapError> {
        match self {
            ReductionFn::Empty => Ok(ReductionImage::Empty),
            ReductionFn::Zero => Ok(ReductionImage::Of(Ideal::zero(ideal.ring()))),
            ReductionFn::Power(n) => Ok(ReductionImage::Of(ideal.power(*n))),
            ReductionFn::Omega => {
                // powers of an ideal descend, so the intersection is the
                // first repeated value
                let mut cur = ideal.clone();
                loop {
                    let next = cur.product(ideal).expect("same ring");
                    if next == cur {
                        return Ok(ReductionImage::Of(cur));
                    }
                    cur = next;
                }
            }
            ReductionFn::Identity => Ok(ReductionImage::Of(ideal.clone())),
            ReductionFn::Table(t) => t.lookup(ideal),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ReductionFn::Empty => "empty".into(),
            ReductionFn::Zero => "zero".into(),
            ReductionFn::Power(n) => format!("power{n}"),
            ReductionFn::Omega => "omega".into(),
            ReductionFn::Identity => "identity".into(),
            ReductionFn::Table(_) => "table".into(),
        }
    }
}

/// δ is an expansion on `ring`: every ideal grows, monotonically.
pub fn check_expansion_axioms(delta: &ExpansionFn, ring: &Ring) -> bool {
    let ideals = Ideal::enumerate(ring);
    let images: Vec<Ideal> = match ideals.iter().map(|i| delta.apply(i)).collect() {
        Ok(v) => v,
        Err(_) => return false,
    };
    for (i, img) in ideals.iter().zip(&images) {
        if !i.is_subset(img) {
            return false;
        }
    }
    for (a, ia) in ideals.iter().zip(&images) {
        for (b, ib) in ideals.iter().zip(&images) {
            if a.is_subset(b) && !ia.is_subset(ib) {
                return false;
            }
        }
    }
    true
}

/// φ is a reduction on `ring`: every image sits below its ideal (with the
/// empty image below everything), monotonically.
pub fn check_reduction_axioms(phi: &ReductionFn, ring: &Ring) -> bool {
    let ideals = Ideal::enumerate(ring);
    let images: Vec<ReductionImage> = match ideals.iter().map(|i| phi.apply(i)).collect() {
        Ok(v) => v,
        Err(_) => return false,
    };
    for (i, img) in ideals.iter().zip(&images) {
        if !img.le(&ReductionImage::Of(i.clone())) {
            return false;
        }
    }
    for (a, ia) in ideals.iter().zip(&images) {
        for (b, ib) in ideals.iter().zip(&images) {
            if a.is_subset(b) && !ia.le(ib) {
                return false;
            }
        }
    }
    true
}

/// Pointwise order on expansions over the full lattice.
pub fn leq_expansions(a: &ExpansionFn, b: &ExpansionFn, ring: &Ring) -> bool {
    Ideal::enumerate(ring)
        .iter()
        .all(|i| match (a.apply(i), b.apply(i)) {
            (Ok(x), Ok(y)) => x.is_subset(&y),
            _ => false,
        })
}

/// Pointwise `⊑` on reductions over the full lattice.
pub fn leq_reductions(a: &ReductionFn, b: &ReductionFn, ring: &Ring) -> bool {
    Ideal::enumerate(ring)
        .iter()
        .all(|i| match (a.apply(i), b.apply(i)) {
            (Ok(x), Ok(y)) => x.le(&y),
            _ => false,
        })
}

/// The built-in expansion catalog for a ring: identity, radical, plus and
/// colon against every proper ideal, and three combinator samples seeded with
/// the smallest nonzero proper ideal (the zero ideal in a field).
pub fn expansion_catalog(ring: &Ring) -> Vec<ExpansionFn> {
    let proper = Ideal::enumerate_proper(ring);
    let mut out = vec![ExpansionFn::Identity, ExpansionFn::Radical];
    for j in &proper {
        out.push(ExpansionFn::Plus(j.clone()));
    }
    for j in &proper {
        out.push(ExpansionFn::ColonBy(j.clone()));
    }
    let seed = proper
        .iter()
        .find(|j| !j.is_zero())
        .cloned()
        .unwrap_or_else(|| Ideal::zero(ring));
    out.push(ExpansionFn::Sum(
        Box::new(ExpansionFn::Radical),
        Box::new(ExpansionFn::Plus(seed.clone())),
    ));
    out.push(ExpansionFn::Meet(vec![
        ExpansionFn::Radical,
        ExpansionFn::ColonBy(seed.clone()),
    ]));
    out.push(ExpansionFn::Compose(
        Box::new(ExpansionFn::Radical),
        Box::new(ExpansionFn::Plus(seed)),
    ));
    out
}

/// The built-in reduction catalog: φ_∅, φ₀, φ₂, φ₃, φ_ω, φ₁.
pub fn reduction_catalog() -> Vec<ReductionFn> {
    vec![
        ReductionFn::Empty,
        ReductionFn::Zero,
        ReductionFn::Power(2),
        ReductionFn::Power(3),
        ReductionFn::Omega,
        ReductionFn::Identity,
    ]
}
