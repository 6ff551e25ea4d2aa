//! Law checkers for the extended operations and the closure operators.
//!
//! Small carriers are checked on every tuple of subsets, larger ones on
//! singleton tuples plus seeded random tuples. Each law becomes one
//! [`Clause`]; laws whose hypotheses fail on the given algebra are reported
//! as notes rather than checked.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_associative, Algebra, OpKind};
use crate::bits::{all_subsets, ElemSet};
use crate::closure::{check_sep0, enumerate_filters, enumerate_ideals, residuals, ClosureCache, Structure};
use crate::error::Result;
use crate::report::Clause;

/// Carriers up to this size are checked on every tuple of subsets.
pub const LAWS_EXHAUSTIVE_MAX: usize = 3;

/// Above this many enumerated filters (or ideals) the pairwise laws run on a
/// seeded sample of pairs.
pub const PAIR_CAP: usize = 200;

/// The four extended operations `·`, `+`, `/`, `−`.
const OPERATIONS: [(&str, OpKind, bool); 4] = [
    ("·", OpKind::Times, false),
    ("+", OpKind::Plus, false),
    ("/", OpKind::Times, true),
    ("−", OpKind::Plus, true),
];

fn apply(alg: &Algebra, (_, kind, residual): (&str, OpKind, bool), a: ElemSet, b: ElemSet) -> ElemSet {
    if residual {
        alg.residual(kind, a, b)
    } else {
        alg.op(kind).apply(a, b)
    }
}

type Quad = [ElemSet; 4];

fn tuples(alg: &Algebra, seed: u64, samples: usize) -> Vec<Quad> {
    let n = alg.size();
    let mut out = Vec::new();
    if n <= LAWS_EXHAUSTIVE_MAX {
        let subsets: Vec<ElemSet> = all_subsets(n).collect();
        for &a in &subsets {
            for &b in &subsets {
                for &c in &subsets {
                    for &d in &subsets {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        return out;
    }
    for a in 0..n {
        for b in 0..n {
            let (sa, sb) = (ElemSet::singleton(a), ElemSet::singleton(b));
            out.push([sa, sb, sb, sa]);
            out.push([sa, ElemSet::empty(), sb, alg.all()]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = alg.all();
    for _ in 0..samples {
        let mut draw = || ElemSet::from_bits(rng.gen::<u64>()) & full;
        out.push([draw(), draw(), draw(), draw()]);
    }
    out
}

fn first_failure(alg: &Algebra, ts: &[Quad], law: impl Fn(&Quad) -> bool) -> Option<String> {
    ts.iter().find(|t| !law(t)).map(|t| {
        let sets: Vec<String> = t.iter().map(|&s| alg.format_set(s)).collect();
        format!("at ({})", sets.join(", "))
    })
}

fn is_op_commutative(alg: &Algebra, kind: OpKind) -> bool {
    let op = alg.op(kind);
    (0..alg.size()).all(|a| (0..alg.size()).all(|b| op.get(a, b) == op.get(b, a)))
}

/// Emptiness, monotonicity, union distribution and the intersection bound
/// for all four extended operations; square expansion where the operation is
/// commutative; `AⁱAʲ = Aⁱ⁺ʲ` where it is associative.
pub fn check_set_laws(alg: &Algebra, seed: u64, samples: usize) -> Vec<Clause> {
    let ts = tuples(alg, seed, samples);
    let empty = ElemSet::empty();
    let mut out = Vec::new();

    out.push(Clause::from_witness(
        "A•∅ = ∅•A = ∅",
        OPERATIONS.iter().find_map(|&op| {
            first_failure(alg, &ts, |[a, ..]| apply(alg, op, *a, empty).is_empty() && apply(alg, op, empty, *a).is_empty())
                .map(|w| format!("{} {w}", op.0))
        }),
    ));
    out.push(Clause::from_witness(
        "A•B ⊆ (A∪C)•(B∪D)",
        OPERATIONS.iter().find_map(|&op| {
            first_failure(alg, &ts, |[a, b, c, d]| apply(alg, op, *a, *b).is_subset(apply(alg, op, *a | *c, *b | *d)))
                .map(|w| format!("{} {w}", op.0))
        }),
    ));
    out.push(Clause::from_witness(
        "(A∪C)•(B∪D) = A•B ∪ A•D ∪ C•B ∪ C•D",
        OPERATIONS.iter().find_map(|&op| {
            first_failure(alg, &ts, |[a, b, c, d]| {
                let f = |x, y| apply(alg, op, x, y);
                f(*a | *c, *b | *d) == f(*a, *b) | f(*a, *d) | f(*c, *b) | f(*c, *d)
            })
            .map(|w| format!("{} {w}", op.0))
        }),
    ));
    out.push(Clause::from_witness(
        "(A∩C)•(B∩D) ⊆ A•B ∩ A•D ∩ C•B ∩ C•D",
        OPERATIONS.iter().find_map(|&op| {
            first_failure(alg, &ts, |[a, b, c, d]| {
                let f = |x, y| apply(alg, op, x, y);
                f(*a & *c, *b & *d).is_subset(f(*a, *b) & f(*a, *d) & f(*c, *b) & f(*c, *d))
            })
            .map(|w| format!("{} {w}", op.0))
        }),
    ));

    for (name, kind) in [("(A∪B∪C)² expands", OpKind::Times), ("2(A∪B∪C) expands", OpKind::Plus)] {
        if !is_op_commutative(alg, kind) {
            out.push(Clause::note(name, "skipped: operation not commutative"));
            continue;
        }
        let op = alg.op(kind);
        let sq = |x| op.apply(x, x);
        out.push(Clause::from_witness(
            name,
            first_failure(alg, &ts, |[a, b, c, _]| {
                sq(*a | *b) == sq(*a) | op.apply(*a, *b) | sq(*b)
                    && sq(*a | *b | *c)
                        == sq(*a) | sq(*b) | sq(*c) | op.apply(*a, *b) | op.apply(*a, *c) | op.apply(*b, *c)
            }),
        ));
    }

    for (name, kind) in [("AⁱAʲ = Aⁱ⁺ʲ", OpKind::Times), ("iA + jA = (i+j)A", OpKind::Plus)] {
        let op = alg.op(kind);
        if !is_associative(op) {
            out.push(Clause::note(name, "skipped: operation not associative"));
            continue;
        }
        let power = |a: ElemSet, k: usize| (1..k).fold(a, |acc, _| op.apply(acc, a));
        out.push(Clause::from_witness(
            name,
            first_failure(alg, &ts, |[a, ..]| {
                (1..=3).all(|i| (1..=3).all(|j| op.apply(power(*a, i), power(*a, j)) == power(*a, i + j)))
            }),
        ));
    }
    out
}

fn sampled_pairs(rng: &mut ChaCha8Rng, left: &[ElemSet], right: &[ElemSet]) -> Vec<(ElemSet, ElemSet)> {
    if left.len() * right.len() <= PAIR_CAP * PAIR_CAP {
        return left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect();
    }
    (0..PAIR_CAP * PAIR_CAP)
        .map(|_| (left[rng.gen_range(0..left.len())], right[rng.gen_range(0..right.len())]))
        .collect()
}

/// Greedily removes elements of `a`, then of `b`, while `μ(a) ∩ α(b)` stays
/// non-empty.
pub fn shrink_support(cache: &ClosureCache, a: ElemSet, b: ElemSet) -> (ElemSet, ElemSet) {
    let meets = |x: ElemSet, y: ElemSet| cache.mu(x).intersects(cache.alpha(y));
    let (mut a, mut b) = (a, b);
    for x in a.iter().collect::<Vec<_>>() {
        if meets(a.without(x), b) {
            a = a.without(x);
        }
    }
    for y in b.iter().collect::<Vec<_>>() {
        if meets(a, b.without(y)) {
            b = b.without(y);
        }
    }
    (a, b)
}

/// The closure operator laws for `μ` and `α`, the intersection and residual
/// laws for enumerated filters and ideals, finite support, and (when the
/// carrier preorder is transitive) the cut law and its filter/ideal form.
pub fn check_closure_laws(alg: &Algebra, seed: u64, samples: usize) -> Result<Vec<Clause>> {
    let cache = ClosureCache::new(alg);
    let ts = tuples(alg, seed, samples);
    let n = alg.size();
    let mut out = Vec::new();

    for kind in [Structure::Filter, Structure::Ideal] {
        let cl = |a| cache.closure(a, kind);
        let op = alg.op(kind.op());
        let (extensive, idempotent, monotone, union, powers) = match kind {
            Structure::Filter => (
                "A ⊆ μ(A)",
                "μ(μ(A)) = μ(A)",
                "A ⊆ B implies μ(A) ⊆ μ(B)",
                "μ(A∪B) = μ(A) ∪ μ(A)μ(B) ∪ μ(B)",
                "μ(A) = ⋃ Aⁱ",
            ),
            Structure::Ideal => (
                "A ⊆ α(A)",
                "α(α(A)) = α(A)",
                "A ⊆ B implies α(A) ⊆ α(B)",
                "α(A∪B) = α(A) ∪ (α(A)+α(B)) ∪ α(B)",
                "α(A) = ⋃ iA",
            ),
        };
        out.push(Clause::from_witness(extensive, first_failure(alg, &ts, |[a, ..]| a.is_subset(cl(*a)))));
        out.push(Clause::from_witness(idempotent, first_failure(alg, &ts, |[a, ..]| cl(cl(*a)) == cl(*a))));
        out.push(Clause::from_witness(monotone, first_failure(alg, &ts, |[a, b, ..]| cl(*a).is_subset(cl(*a | *b)))));
        if is_associative(op) {
            out.push(Clause::from_witness(
                union,
                first_failure(alg, &ts, |[a, b, ..]| cl(*a | *b) == cl(*a) | op.apply(cl(*a), cl(*b)) | cl(*b)),
            ));
        } else {
            out.push(Clause::note(union, "skipped: operation not associative"));
        }
        out.push(Clause::from_witness(
            powers,
            first_failure(alg, &ts, |[a, ..]| {
                let mut acc = *a;
                let mut p = *a;
                for _ in 1..=n {
                    p = op.apply(p, *a);
                    acc = acc | p;
                }
                acc == cl(*a)
            }),
        ));
    }

    let filters = enumerate_filters(alg)?;
    let ideals = enumerate_ideals(alg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.push(Clause::from_witness(
        "closed sets are their own closures",
        filters
            .iter()
            .find(|&&f| cache.mu(f) != f)
            .map(|&f| format!("filter {}", alg.format_set(f)))
            .or_else(|| ideals.iter().find(|&&i| cache.alpha(i) != i).map(|&i| format!("ideal {}", alg.format_set(i)))),
    ));
    let ff = sampled_pairs(&mut rng, &filters, &filters);
    let ii = sampled_pairs(&mut rng, &ideals, &ideals);
    out.push(Clause::from_witness(
        "intersections of filters and of ideals",
        ff.iter()
            .find(|(f, g)| !crate::closure::is_filter(alg, *f & *g))
            .map(|(f, g)| format!("filters {} and {}", alg.format_set(*f), alg.format_set(*g)))
            .or_else(|| {
                ii.iter()
                    .find(|(i, j)| !crate::closure::is_ideal(alg, *i & *j))
                    .map(|(i, j)| format!("ideals {} and {}", alg.format_set(*i), alg.format_set(*j)))
            }),
    ));

    let fi = sampled_pairs(&mut rng, &filters, &ideals);
    let mut residual_failure = None;
    for &(f, i) in &fi {
        let (f_minus_i, i_over_f) = match residuals(alg, f, i) {
            Ok(r) => r,
            Err(e) => {
                residual_failure = Some(e.to_string());
                break;
            }
        };
        let disjoint = !f.intersects(i);
        if disjoint
            && (i.intersects(f_minus_i) || f.intersects(i_over_f) || f_minus_i.intersects(i_over_f))
        {
            residual_failure = Some(format!("F = {}, I = {}", alg.format_set(f), alg.format_set(i)));
            break;
        }
    }
    out.push(Clause::from_witness("residuals of disjoint F and I stay apart", residual_failure));

    out.push(Clause::from_witness(
        "finite support",
        first_failure(alg, &ts, |[a, b, ..]| {
            if !cache.mu(*a).intersects(cache.alpha(*b)) {
                return true;
            }
            let (a2, b2) = shrink_support(&cache, *a, *b);
            a2.is_subset(*a)
                && b2.is_subset(*b)
                && cache.mu(a2).intersects(cache.alpha(b2))
                && a2.iter().all(|x| !cache.mu(a2.without(x)).intersects(cache.alpha(b2)))
                && b2.iter().all(|y| !cache.mu(a2).intersects(cache.alpha(b2.without(y))))
        }),
    ));

    if check_sep0(&cache).passed() {
        out.push(Clause::from_witness(
            "cut: μ(A)∩α(B∪x) and μ(A∪x)∩α(B) non-empty imply μ(A)∩α(B) non-empty",
            first_failure(alg, &ts, |[a, b, ..]| {
                cache.mu(*a).intersects(cache.alpha(*b))
                    || (0..n).all(|x| {
                        !(cache.mu(*a).intersects(cache.alpha(b.with(x)))
                            && cache.mu(a.with(x)).intersects(cache.alpha(*b)))
                    })
            }),
        ));
        out.push(Clause::from_witness(
            "disjoint F and I: F∪x or I∪x extends disjointly",
            fi.iter()
                .filter(|(f, i)| !f.intersects(*i))
                .find_map(|&(f, i)| {
                    (0..n)
                        .find(|&x| cache.mu(f.with(x)).intersects(i) && cache.alpha(i.with(x)).intersects(f))
                        .map(|x| format!("F = {}, I = {}, x = {}", alg.format_set(f), alg.format_set(i), alg.carrier().name(x)))
                }),
        ));
    } else {
        out.push(Clause::note("cut law", "skipped: carrier preorder not transitive"));
    }
    Ok(out)
}
