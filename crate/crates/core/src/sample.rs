//! Seeded random algebras and topologies for the property suites.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{is_associative, satisfies_mixed_axiom, Algebra, Carrier, MultiOp};
use crate::bits::{ElemSet, PointSet};
use crate::closure::{check_sep0, ClosureCache};
use crate::error::{Error, Result};
use crate::topology::{generate_topology, FiniteTopology};

/// Probabilities with which each element enters a table entry.
pub const DENSITIES: [f64; 3] = [0.2, 0.7, 0.85];

/// Attempts per rejection loop before giving up.
pub const REJECTION_LIMIT: usize = 1 << 20;

pub fn random_set(rng: &mut impl Rng, n: usize, density: f64) -> ElemSet {
    (0..n).filter(|_| rng.gen_bool(density)).collect()
}

/// A table whose entries are independent random subsets.
pub fn random_op(rng: &mut impl Rng, n: usize, density: f64, commutative: bool) -> MultiOp {
    let mut op = MultiOp::empty(n);
    for a in 0..n {
        for b in 0..n {
            if commutative && b < a {
                op.set(a, b, op.get(b, a));
            } else {
                op.set(a, b, random_set(rng, n, density));
            }
        }
    }
    op
}

fn random_carrier(rng: &mut impl Rng, n: usize) -> Carrier {
    let designated = (n >= 2).then(|| {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        (idx[0], idx[1])
    });
    Carrier::new(
        (0..n).map(|i| format!("e{i}")).collect(),
        designated.map(|d| d.0),
        designated.map(|d| d.1),
    )
    .expect("generated carrier is valid")
}

/// Two unconstrained random operations on `n` elements.
pub fn random_algebra(rng: &mut impl Rng, n: usize) -> Algebra {
    let d = *DENSITIES.choose(rng).expect("non-empty");
    let carrier = random_carrier(rng, n);
    let times = random_op(rng, n, d, false);
    let plus = random_op(rng, n, d, false);
    Algebra::new(carrier, times, plus).expect("generated tables fit the carrier")
}

fn random_associative(rng: &mut impl Rng, n: usize) -> Option<MultiOp> {
    for _ in 0..REJECTION_LIMIT {
        let d = *DENSITIES.choose(rng).expect("non-empty");
        let op = random_op(rng, n, d, true);
        if is_associative(&op) {
            return Some(op);
        }
    }
    None
}

fn rejection_exhausted() -> Error {
    Error::Capacity {
        what: "rejection sampling",
        size: REJECTION_LIMIT + 1,
        cap: REJECTION_LIMIT,
    }
}

/// A random preseparative algebra on `n` elements. Each operation is drawn
/// from commutative random tables until associative, and the pair is redrawn
/// until the mixed axiom holds. Designated points are two distinct random
/// elements.
pub fn random_preseparative(rng: &mut impl Rng, n: usize) -> Result<Algebra> {
    for _ in 0..REJECTION_LIMIT {
        let carrier = random_carrier(rng, n);
        let times = random_associative(rng, n).ok_or_else(rejection_exhausted)?;
        let plus = random_associative(rng, n).ok_or_else(rejection_exhausted)?;
        let alg = Algebra::new(carrier, times, plus).expect("generated tables fit the carrier");
        if satisfies_mixed_axiom(&alg) {
            return Ok(alg);
        }
    }
    Err(rejection_exhausted())
}

/// Every commutative associative table on three elements, in enumeration
/// order.
pub fn associative_tables_3() -> &'static [MultiOp] {
    static TABLES: OnceLock<Vec<MultiOp>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let cells: Vec<(usize, usize)> = (0..3).flat_map(|a| (a..3).map(move |b| (a, b))).collect();
        (0u32..1 << (3 * cells.len()))
            .map(|code| {
                let mut op = MultiOp::empty(3);
                for (k, &(a, b)) in cells.iter().enumerate() {
                    let v = ElemSet::from_bits(u64::from((code >> (3 * k)) & 0b111));
                    op.set(a, b, v);
                    op.set(b, a, v);
                }
                op
            })
            .filter(is_associative)
            .collect()
    })
}

/// A three-element preseparative algebra whose carrier preorder is not
/// transitive. Both operations are drawn uniformly from
/// [`associative_tables_3`], where such algebras are far more frequent than
/// under [`DENSITIES`].
pub fn random_non_sep0(rng: &mut impl Rng) -> Result<Algebra> {
    let tables = associative_tables_3();
    for _ in 0..REJECTION_LIMIT {
        let carrier = random_carrier(rng, 3);
        let times = tables.choose(rng).expect("non-empty").clone();
        let plus = tables.choose(rng).expect("non-empty").clone();
        let alg = Algebra::new(carrier, times, plus).expect("generated tables fit the carrier");
        if satisfies_mixed_axiom(&alg) && !check_sep0(&ClosureCache::new(&alg)).passed() {
            return Ok(alg);
        }
    }
    Err(rejection_exhausted())
}

/// `count` preseparative algebras on 2 to 4 elements; every fourth one is
/// drawn by [`random_non_sep0`] on 3 elements so that both outcomes of the
/// transitivity check occur.
pub fn preseparative_corpus(rng: &mut impl Rng, count: usize) -> Result<Vec<Algebra>> {
    (0..count)
        .map(|i| {
            if i % 4 == 3 {
                random_non_sep0(rng)
            } else {
                let n = rng.gen_range(2..=4);
                random_preseparative(rng, n)
            }
        })
        .collect()
}

/// Random single-valued tables on `n` elements.
pub fn random_single_valued(rng: &mut impl Rng, n: usize) -> Algebra {
    let carrier = random_carrier(rng, n);
    let times = MultiOp::from_fn(n, |_, _| ElemSet::singleton(rng.gen_range(0..n)));
    let plus = MultiOp::from_fn(n, |_, _| ElemSet::singleton(rng.gen_range(0..n)));
    Algebra::new(carrier, times, plus).expect("generated tables fit the carrier")
}

/// The topology generated by up to `2n` random subsets.
pub fn random_topology(rng: &mut impl Rng, n: usize) -> FiniteTopology {
    let k = rng.gen_range(0..=2 * n);
    let full = PointSet::full(n);
    let subbase: Vec<PointSet> = (0..k).map(|_| PointSet::from_bits(rng.gen::<u32>()) & full).collect();
    generate_topology(n, &subbase).expect("point count within cap")
}

/// A random `T0` topology, by rejection from [`random_topology`].
pub fn random_t0_topology(rng: &mut impl Rng, n: usize) -> FiniteTopology {
    loop {
        let t = random_topology(rng, n);
        if t.is_t0() {
            return t;
        }
    }
}
