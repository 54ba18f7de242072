//! Finite commutative rings with identity.
//!
//! The universe is closed under three constructors: `Z_n` (n ≥ 2), binary
//! direct products, and quotients by an ideal. Elements are canonical indices
//! `0..order`; index 0 is always the additive zero and a fixed index holds
//! the multiplicative identity. Product rings index pairs lexicographically
//! (`pair(a, b) = a * right_order + b`), quotient rings index cosets by their
//! least base representative, in ascending order.
//!
//! Localization needs a ring that is neither a zmod, a product, nor a
//! quotient-by-desc, so a fourth, crate-internal kind backed by explicit
//! operation tables exists as well; it never appears in the JSON grammar.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};

use crate::bitset::ElemSet;

/// Structural description of a ring; the JSON-facing shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDesc {
    Zmod {
        n: usize,
    },
    Product {
        left: Box<RingDesc>,
        right: Box<RingDesc>,
    },
    Quotient {
        base: Box<RingDesc>,
        gens: Vec<usize>,
    },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("zmod modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("quotient by the unit ideal would be the zero ring")]
    QuotientIsZeroRing,
    #[error("element index {index} out of range for ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
}

pub(crate) enum RingKind {
    Zmod {
        n: usize,
    },
    Product {
        left: Ring,
        right: Ring,
    },
    Quotient {
        base: Ring,
        modulus: ElemSet,
        /// base element -> quotient index
        class_of: Vec<usize>,
        /// quotient index -> least base representative
        reps: Vec<usize>,
    },
    Table {
        add: Vec<usize>,
        mul: Vec<usize>,
        neg: Vec<usize>,
    },
}

struct RingInner {
    label: String,
    desc: Option<RingDesc>,
    order: usize,
    one: usize,
    kind: RingKind,
    mul_table: OnceLock<Option<Vec<u32>>>,
    add_table: OnceLock<Option<Vec<u32>>>,
    units: OnceLock<ElemSet>,
    pub(crate) ideal_sets: OnceLock<Vec<ElemSet>>,
}

/// A finite commutative ring, cheaply clonable.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<RingInner>,
}

/// Orders up to this get memoized operation tables; bigger rings compute
/// structurally per call.
const TABLE_LIMIT: usize = 512;

pub fn build_ring(desc: &RingDesc) -> Result<Ring, RingError> {
    match desc {
        RingDesc::Zmod { n } => {
            if *n < 2 {
                return Err(RingError::ModulusTooSmall(*n));
            }
            Ok(Ring::new(RingInner {
                label: format!("Z{n}"),
                desc: Some(desc.clone()),
                order: *n,
                one: 1,
                kind: RingKind::Zmod { n: *n },
                mul_table: OnceLock::new(),
                add_table: OnceLock::new(),
                units: OnceLock::new(),
                ideal_sets: OnceLock::new(),
            }))
        }
        RingDesc::Product { left, right } => {
            let l = build_ring(left)?;
            let r = build_ring(right)?;
            Ok(product_ring(&l, &r, Some(desc.clone())))
        }
        RingDesc::Quotient { base, gens } => {
            let b = build_ring(base)?;
            for &g in gens {
                if g >= b.order() {
                    return Err(RingError::ElementOutOfRange {
                        index: g,
                        order: b.order(),
                    });
                }
            }
            let modulus = crate::ideal::ideal_closure_of_gens(&b, gens);
            quotient_ring(&b, &modulus, Some(desc.clone()))
        }
    }
}

pub(crate) fn product_ring(left: &Ring, right: &Ring, desc: Option<RingDesc>) -> Ring {
    let wrap = |label: &str| {
        if label.contains('x') || label.contains('/') {
            format!("({label})")
        } else {
            label.to_string()
        }
    };
    let order = left.order() * right.order();
    let one = left.one() * right.order() + right.one();
    Ring::new(RingInner {
        label: format!("{}x{}", wrap(left.label()), wrap(right.label())),
        desc,
        order,
        one,
        kind: RingKind::Product {
            left: left.clone(),
            right: right.clone(),
        },
        mul_table: OnceLock::new(),
        add_table: OnceLock::new(),
        units: OnceLock::new(),
        ideal_sets: OnceLock::new(),
    })
}

/// Quotient of `base` by the ideal with the given member set. The member set
/// must actually be an ideal of `base`; `build_ring` and the transfer module
/// only call this with generated ideals.
pub(crate) fn quotient_ring(
    base: &Ring,
    modulus: &ElemSet,
    desc: Option<RingDesc>,
) -> Result<Ring, RingError> {
    debug_assert!(modulus.contains(0));
    if modulus.len() == base.order() {
        return Err(RingError::QuotientIsZeroRing);
    }
    let n = base.order();
    let rep_of: Vec<usize> = (0..n)
        .map(|x| {
            modulus
                .iter()
                .map(|j| base.add(x, j))
                .min()
                .expect("residue classes are nonempty")
        })
        .collect();
    let reps: Vec<usize> = (0..n).filter(|&x| rep_of[x] == x).collect();
    let mut index_of_rep = vec![usize::MAX; n];
    for (i, &r) in reps.iter().enumerate() {
        index_of_rep[r] = i;
    }
    let class_of: Vec<usize> = (0..n).map(|x| index_of_rep[rep_of[x]]).collect();
    let one = class_of[base.one()];
    let label = format!("{}/{:?}", base.label(), modulus);
    Ok(Ring::new(RingInner {
        label,
        desc,
        order: reps.len(),
        one,
        kind: RingKind::Quotient {
            base: base.clone(),
            modulus: modulus.clone(),
            class_of,
            reps,
        },
        mul_table: OnceLock::new(),
        add_table: OnceLock::new(),
        units: OnceLock::new(),
        ideal_sets: OnceLock::new(),
    }))
}

/// Ring defined by explicit operation tables (used for localizations).
pub(crate) fn table_ring(
    label: String,
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    one: usize,
) -> Ring {
    debug_assert_eq!(add.len(), order * order);
    debug_assert_eq!(mul.len(), order * order);
    debug_assert_eq!(neg.len(), order);
    Ring::new(RingInner {
        label,
        desc: None,
        order,
        one,
        kind: RingKind::Table { add, mul, neg },
        mul_table: OnceLock::new(),
        add_table: OnceLock::new(),
        units: OnceLock::new(),
        ideal_sets: OnceLock::new(),
    })
}

impl Ring {
    fn new(inner: RingInner) -> Self {
        Ring {
            inner: Arc::new(inner),
        }
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn desc(&self) -> Option<&RingDesc> {
        self.inner.desc.as_ref()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.inner.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.inner.order
    }

    /// Two `Ring` values denote the same ring when they share structure or
    /// were built from equal descriptions.
    pub fn same_ring(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.desc.is_some() && self.inner.desc == other.inner.desc)
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        match &self.inner.kind {
            RingKind::Zmod { n } => (a + b) % n,
            RingKind::Product { left, right } => {
                let rn = right.order();
                left.add(a / rn, b / rn) * rn + right.add(a % rn, b % rn)
            }
            RingKind::Quotient {
                base,
                class_of,
                reps,
                ..
            } => class_of[base.add(reps[a], reps[b])],
            RingKind::Table { add, .. } => add[a * self.inner.order + b],
        }
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        match &self.inner.kind {
            RingKind::Zmod { n } => (a * b) % n,
            RingKind::Product { left, right } => {
                let rn = right.order();
                left.mul(a / rn, b / rn) * rn + right.mul(a % rn, b % rn)
            }
            RingKind::Quotient {
                base,
                class_of,
                reps,
                ..
            } => class_of[base.mul(reps[a], reps[b])],
            RingKind::Table { mul, .. } => mul[a * self.inner.order + b],
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let n = self.inner.order;
        if n <= TABLE_LIMIT {
            let table = self.inner.add_table.get_or_init(|| {
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        t.push(self.add_raw(a, b) as u32);
                    }
                }
                Some(t)
            });
            if let Some(t) = table {
                return t[a * n + b] as usize;
            }
        }
        self.add_raw(a, b)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.inner.order;
        if n <= TABLE_LIMIT {
            let table = self.inner.mul_table.get_or_init(|| {
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        t.push(self.mul_raw(a, b) as u32);
                    }
                }
                Some(t)
            });
            if let Some(t) = table {
                return t[a * n + b] as usize;
            }
        }
        self.mul_raw(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.inner.kind {
            RingKind::Zmod { n } => (n - a) % n,
            RingKind::Product { left, right } => {
                let rn = right.order();
                left.neg(a / rn) * rn + right.neg(a % rn)
            }
            RingKind::Quotient {
                base,
                class_of,
                reps,
                ..
            } => class_of[base.neg(reps[a])],
            RingKind::Table { neg, .. } => neg[a],
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// a^k for k ≥ 0, with a^0 = 1.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// The group of units, cached.
    pub fn units(&self) -> &ElemSet {
        self.inner.units.get_or_init(|| {
            let n = self.inner.order;
            let mut set = ElemSet::empty(n);
            for a in 0..n {
                if (0..n).any(|b| self.mul(a, b) == self.one()) {
                    set.insert(a);
                }
            }
            set
        })
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units().contains(a)
    }

    /// Lexicographic pair index for product rings.
    pub fn pair(&self, a: usize, b: usize) -> Option<usize> {
        match &self.inner.kind {
            RingKind::Product { right, .. } => Some(a * right.order() + b),
            _ => None,
        }
    }

    pub fn unpair(&self, i: usize) -> Option<(usize, usize)> {
        match &self.inner.kind {
            RingKind::Product { right, .. } => Some((i / right.order(), i % right.order())),
            _ => None,
        }
    }

    pub fn product_parts(&self) -> Option<(&Ring, &Ring)> {
        match &self.inner.kind {
            RingKind::Product { left, right } => Some((left, right)),
            _ => None,
        }
    }

    pub(crate) fn quotient_parts(&self) -> Option<(&Ring, &ElemSet, &[usize], &[usize])> {
        match &self.inner.kind {
            RingKind::Quotient {
                base,
                modulus,
                class_of,
                reps,
            } => Some((base, modulus, class_of, reps)),
            _ => None,
        }
    }

    pub(crate) fn ideal_sets_cache(&self) -> &OnceLock<Vec<ElemSet>> {
        &self.inner.ideal_sets
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.label)
    }
}

/// Exhaustively checks the commutative-ring axioms when the order allows it
/// (triples up to order 64), otherwise samples `samples` random triples with
/// a fixed seed. Pair-level laws (commutativity, identities, inverses) are
/// always exhaustive.
pub fn verify_ring_axioms(ring: &Ring, samples: usize, seed: u64) -> bool {
    let n = ring.order();
    if n < 2 || ring.one() == ring.zero() {
        return false;
    }
    for a in 0..n {
        if ring.add(a, 0) != a || ring.mul(a, ring.one()) != a {
            return false;
        }
        if ring.add(a, ring.neg(a)) != 0 {
            return false;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if ring.add(a, b) != ring.add(b, a) || ring.mul(a, b) != ring.mul(b, a) {
                return false;
            }
        }
    }
    let triple_ok = |a: usize, b: usize, c: usize| {
        ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
            && ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
            && ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    };
    if n <= 64 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !triple_ok(a, b, c) {
                        return false;
                    }
                }
            }
        }
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let c = rng.gen_range(0..n);
            if !triple_ok(a, b, c) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn zmod(n: usize) -> Ring {
        build_ring(&RingDesc::Zmod { n }).unwrap()
    }

    #[test]
    fn zmod_basics() {
        let r = zmod(12);
        assert_eq!(r.order(), 12);
        assert_eq!(r.zero(), 0);
        assert_eq!(r.one(), 1);
        assert_eq!(r.add(7, 8), 3);
        assert_eq!(r.mul(3, 5), 3);
        assert_eq!(r.neg(5), 7);
    }

    #[test]
    fn zmod_rejects_degenerate_moduli() {
        assert_eq!(
            build_ring(&RingDesc::Zmod { n: 1 }),
            Err(RingError::ModulusTooSmall(1))
        );
        assert_eq!(
            build_ring(&RingDesc::Zmod { n: 0 }),
            Err(RingError::ModulusTooSmall(0))
        );
    }

    #[test]
    fn product_order_and_indexing() {
        let desc = RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: 4 }),
            right: Box::new(RingDesc::Zmod { n: 9 }),
        };
        let r = build_ring(&desc).unwrap();
        assert_eq!(r.order(), 36);
        // pair/unpair round-trip over the whole index space
        for a in 0..4 {
            for b in 0..9 {
                let i = r.pair(a, b).unwrap();
                assert_eq!(r.unpair(i), Some((a, b)));
            }
        }
        // componentwise arithmetic: (3,7) + (2,5) = (1, 3)
        let x = r.pair(3, 7).unwrap();
        let y = r.pair(2, 5).unwrap();
        assert_eq!(r.add(x, y), r.pair(1, 3).unwrap());
        assert_eq!(r.mul(x, y), r.pair(2, 8).unwrap());
        assert_eq!(r.one(), r.pair(1, 1).unwrap());
    }

    #[test]
    fn quotient_of_z12_by_6_is_z6_in_disguise() {
        let desc = RingDesc::Quotient {
            base: Box::new(RingDesc::Zmod { n: 12 }),
            gens: vec![6],
        };
        let q = build_ring(&desc).unwrap();
        // cosets of {0,6} have least representatives 0..5
        assert_eq!(q.order(), 6);
        assert_eq!(q.one(), 1);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q.add(a, b), (a + b) % 6, "add {a} {b}");
                assert_eq!(q.mul(a, b), (a * b) % 6, "mul {a} {b}");
            }
        }
    }

    #[test]
    fn quotient_by_unit_ideal_is_rejected() {
        let desc = RingDesc::Quotient {
            base: Box::new(RingDesc::Zmod { n: 12 }),
            gens: vec![5],
        };
        assert_eq!(build_ring(&desc), Err(RingError::QuotientIsZeroRing));
    }

    #[test]
    fn units_of_z12_are_the_gcd_one_residues() {
        // independent oracle: gcd(u, 12) == 1
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let expected: Vec<usize> = (0..12).filter(|&u| gcd(u, 12) == 1).collect();
        assert_eq!(expected, vec![1, 5, 7, 11]);
        assert_eq!(zmod(12).units().to_vec(), expected);
    }

    #[test]
    fn units_of_z2() {
        assert_eq!(zmod(2).units().to_vec(), vec![1]);
    }

    #[test]
    fn units_of_product_are_componentwise() {
        let r = build_ring(&RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: 4 }),
            right: Box::new(RingDesc::Zmod { n: 9 }),
        })
        .unwrap();
        let (l, rr) = r.product_parts().unwrap();
        let mut expected: Vec<usize> = Vec::new();
        for a in l.units().iter() {
            for b in rr.units().iter() {
                expected.push(r.pair(a, b).unwrap());
            }
        }
        expected.sort();
        assert_eq!(r.units().to_vec(), expected);
        assert_eq!(r.units().len(), 12);
    }

    #[test]
    fn axioms_hold_on_the_small_universe() {
        let rings = [
            zmod(2),
            zmod(12),
            zmod(64),
            build_ring(&RingDesc::Product {
                left: Box::new(RingDesc::Zmod { n: 6 }),
                right: Box::new(RingDesc::Zmod { n: 8 }),
            })
            .unwrap(),
            build_ring(&RingDesc::Quotient {
                base: Box::new(RingDesc::Zmod { n: 16 }),
                gens: vec![4],
            })
            .unwrap(),
        ];
        for r in &rings {
            assert!(verify_ring_axioms(r, 10_000, 0), "axioms failed on {r:?}");
        }
    }

    #[test]
    fn axioms_sampled_above_exhaustive_cutoff() {
        let r = build_ring(&RingDesc::Product {
            left: Box::new(RingDesc::Zmod { n: 12 }),
            right: Box::new(RingDesc::Zmod { n: 12 }),
        })
        .unwrap();
        assert_eq!(r.order(), 144);
        assert!(verify_ring_axioms(&r, 10_000, 0));
    }

    #[test]
    fn same_ring_by_desc_and_by_pointer() {
        let a = zmod(12);
        let b = zmod(12);
        let c = zmod(16);
        assert!(a.same_ring(&b));
        assert!(!a.same_ring(&c));
        let d = a.clone();
        assert!(a.same_ring(&d));
    }
}
