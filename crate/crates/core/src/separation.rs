//! Prime filter/ideal pairs and the greedy separation procedure.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::bits::ElemSet;
use crate::closure::{check_sep0, enumerate_filters, enumerate_ideals, is_filter, is_ideal, ClosureCache, Sep0Report};
use crate::error::{capacity, Error, Result};

/// Carrier cap for [`check_sep`], which pairs every filter with every ideal.
pub const CHECK_SEP_CAP: usize = 10;

/// A prime filter together with its complement, which is a prime ideal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PrimePair {
    pub filter: ElemSet,
    pub ideal: ElemSet,
}

impl PrimePair {
    pub fn from_filter(alg: &Algebra, filter: ElemSet) -> Self {
        Self {
            filter,
            ideal: filter.complement(alg.size()),
        }
    }

    pub fn extends(&self, f0: ElemSet, i0: ElemSet) -> bool {
        f0.is_subset(self.filter) && i0.is_subset(self.ideal)
    }
}

/// Every `F` with `F·F ⊆ F`, `(X∖F) + (X∖F) ⊆ X∖F`, `must_in ⊆ F` and
/// `must_out ∩ F = ∅`, sorted by mask.
///
/// Backtracking over the carrier with propagation: members of `F·F` are
/// forced into `F` and members of `(X∖F) + (X∖F)` are forced out.
pub fn prime_filters_with(alg: &Algebra, must_in: ElemSet, must_out: ElemSet) -> Vec<ElemSet> {
    let mut out = Vec::new();
    if !must_in.intersects(must_out) {
        search(alg, must_in, must_out, &mut out);
    }
    out.sort();
    out
}

fn propagate(alg: &Algebra, mut inn: ElemSet, mut out: ElemSet) -> Option<(ElemSet, ElemSet)> {
    loop {
        let forced_in = alg.times().apply(inn, inn);
        let forced_out = alg.plus().apply(out, out);
        if forced_in.intersects(out) || forced_out.intersects(inn) {
            return None;
        }
        let (next_in, next_out) = (inn | forced_in, out | forced_out);
        if next_in.intersects(next_out) {
            return None;
        }
        if next_in == inn && next_out == out {
            return Some((inn, out));
        }
        inn = next_in;
        out = next_out;
    }
}

fn search(alg: &Algebra, inn: ElemSet, out: ElemSet, results: &mut Vec<ElemSet>) {
    let Some((inn, out)) = propagate(alg, inn, out) else {
        return;
    };
    match (inn | out).complement(alg.size()).min() {
        None => results.push(inn),
        Some(x) => {
            search(alg, inn.with(x), out, results);
            search(alg, inn, out.with(x), results);
        }
    }
}

/// All prime pairs, sorted by filter mask. `(∅, X)` and `(X, ∅)` are always
/// present.
pub fn enumerate_prime_pairs(alg: &Algebra) -> Vec<PrimePair> {
    prime_filters_with(alg, ElemSet::empty(), ElemSet::empty())
        .into_iter()
        .map(|f| PrimePair::from_filter(alg, f))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Separation {
    Separated(PrimePair),
    /// Neither `μ(F ∪ x)` nor `α(I ∪ x)` stays disjoint from the other side.
    Stuck {
        element: usize,
        filter: ElemSet,
        ideal: ElemSet,
    },
}

/// Extends a disjoint filter/ideal pair to a complementary prime pair by a
/// single ascending pass over the carrier, preferring to grow the filter.
pub fn separate(cache: &ClosureCache, f0: ElemSet, i0: ElemSet) -> Result<Separation> {
    let alg = cache.algebra();
    alg.carrier().check_set(f0)?;
    alg.carrier().check_set(i0)?;
    if !is_filter(alg, f0) {
        return Err(Error::InvalidArgument(format!("{} is not a filter", alg.format_set(f0))));
    }
    if !is_ideal(alg, i0) {
        return Err(Error::InvalidArgument(format!("{} is not an ideal", alg.format_set(i0))));
    }
    if f0.intersects(i0) {
        return Err(Error::InvalidArgument(format!(
            "{} and {} are not disjoint",
            alg.format_set(f0),
            alg.format_set(i0)
        )));
    }
    let (mut f, mut i) = (f0, i0);
    for x in 0..alg.size() {
        if f.contains(x) || i.contains(x) {
            continue;
        }
        let grown = cache.mu(f.with(x));
        if !grown.intersects(i) {
            f = grown;
            continue;
        }
        let grown = cache.alpha(i.with(x));
        if !grown.intersects(f) {
            i = grown;
            continue;
        }
        return Ok(Separation::Stuck {
            element: x,
            filter: f,
            ideal: i,
        });
    }
    debug_assert_eq!(f | i, alg.all());
    Ok(Separation::Separated(PrimePair { filter: f, ideal: i }))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SepReport {
    Pass,
    /// A disjoint filter/ideal pair that no prime pair extends.
    Fail { filter: ElemSet, ideal: ElemSet },
}

impl SepReport {
    pub fn passed(&self) -> bool {
        matches!(self, SepReport::Pass)
    }
}

/// Checks the separation principle against the enumerated prime pairs,
/// scanning filters then ideals in mask order.
pub fn check_sep(alg: &Algebra) -> Result<SepReport> {
    check_sep_with_cap(alg, CHECK_SEP_CAP)
}

/// [`check_sep`] with the carrier cap replaced by `cap`.
pub fn check_sep_with_cap(alg: &Algebra, cap: usize) -> Result<SepReport> {
    capacity("carrier for the separation check", alg.size(), cap)?;
    let primes = enumerate_prime_pairs(alg);
    let ideals = enumerate_ideals(alg)?;
    for f0 in enumerate_filters(alg)? {
        for &i0 in &ideals {
            if !f0.intersects(i0) && !primes.iter().any(|p| p.extends(f0, i0)) {
                return Ok(SepReport::Fail { filter: f0, ideal: i0 });
            }
        }
    }
    Ok(SepReport::Pass)
}

/// Turns a transitivity failure `a ≤ b ≤ c`, `a ≰ c` into the unseparable
/// pair `(μ(a), α(c))`, verifying it against the prime pairs.
pub fn sep0_failure_to_sep_failure(
    cache: &ClosureCache,
    a: usize,
    b: usize,
    c: usize,
) -> Result<(ElemSet, ElemSet)> {
    let alg = cache.algebra();
    for x in [a, b, c] {
        alg.carrier().check_elem(x)?;
    }
    if !(cache.leq(a, b) && cache.leq(b, c) && !cache.leq(a, c)) {
        return Err(Error::InvalidArgument(format!(
            "({}, {}, {}) is not a transitivity failure",
            alg.carrier().name(a),
            alg.carrier().name(b),
            alg.carrier().name(c)
        )));
    }
    let (f0, i0) = (cache.mu_of(a), cache.alpha_of(c));
    if f0.intersects(i0) {
        return Err(Error::Internal("μ(a) meets α(c) although a ≰ c".into()));
    }
    if let Some(p) = enumerate_prime_pairs(alg).into_iter().find(|p| p.extends(f0, i0)) {
        return Err(Error::Internal(format!(
            "prime filter {} separates the pair; the algebra is not preseparative",
            alg.format_set(p.filter)
        )));
    }
    Ok((f0, i0))
}

/// The pair a [`Sep0Report`] failure maps to, if any.
pub fn sep_failure_of(cache: &ClosureCache) -> Result<Option<(ElemSet, ElemSet)>> {
    match check_sep0(cache) {
        Sep0Report::Pass => Ok(None),
        Sep0Report::Fail { a, b, c } => sep0_failure_to_sep_failure(cache, a, b, c).map(Some),
    }
}

/// Given a filter `M` and a choice of `x_F ∈ F` for every prime filter
/// `F ⊇ M`, finds finitely many chosen elements whose generated ideal meets
/// `M`. The family is shrunk greedily, one element at a time in prime-filter
/// order, and the surviving elements are returned ascending and deduplicated.
/// `None` means no such family exists.
pub fn wallman(
    cache: &ClosureCache,
    m: ElemSet,
    choice: &BTreeMap<ElemSet, usize>,
) -> Result<Option<Vec<usize>>> {
    let alg = cache.algebra();
    alg.carrier().check_set(m)?;
    if !is_filter(alg, m) {
        return Err(Error::InvalidArgument(format!("{} is not a filter", alg.format_set(m))));
    }
    let over_m = prime_filters_with(alg, m, ElemSet::empty());
    let mut chosen = Vec::with_capacity(over_m.len());
    for f in over_m {
        match choice.get(&f) {
            Some(&x) if f.contains(x) => chosen.push(x),
            Some(&x) => {
                return Err(Error::InvalidArgument(format!(
                    "chosen element {} is not in prime filter {}",
                    alg.carrier().name(x),
                    alg.format_set(f)
                )))
            }
            None => {
                return Err(Error::InvalidArgument(format!(
                    "no element chosen for prime filter {}",
                    alg.format_set(f)
                )))
            }
        }
    }
    let meets = |xs: &[usize]| cache.alpha(xs.iter().copied().collect()).intersects(m);
    if !meets(&chosen) {
        return Ok(None);
    }
    let mut k = 0;
    while k < chosen.len() {
        let mut trial = chosen.clone();
        trial.remove(k);
        if meets(&trial) {
            chosen = trial;
        } else {
            k += 1;
        }
    }
    chosen.sort_unstable();
    chosen.dedup();
    Ok(Some(chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::all_subsets;
    use crate::closure::{is_prime, Structure};
    use crate::fixtures;

    fn set(alg: &Algebra, text: &str) -> ElemSet {
        alg.carrier().parse_set(text).unwrap()
    }

    fn filters(alg: &Algebra) -> Vec<ElemSet> {
        enumerate_prime_pairs(alg).into_iter().map(|p| p.filter).collect()
    }

    #[test]
    fn prime_pairs_on_fixtures() {
        let c3 = fixtures::chain_lattice(3).unwrap();
        let z6 = fixtures::ring(6).unwrap();
        let expect = |alg: &Algebra, sets: &[&str]| -> Vec<ElemSet> {
            sets.iter().map(|s| set(alg, s)).collect()
        };
        assert_eq!(filters(&c3), expect(&c3, &["", "1", "a,1", "0,a,1"]));
        let mut z6_expect = expect(&z6, &["", "1,3,5", "1,2,4,5", "0,1,2,3,4,5"]);
        z6_expect.sort();
        assert_eq!(filters(&z6), z6_expect);
        let one = crate::algebra::Algebra::new(
            crate::algebra::Carrier::numbered(1).unwrap(),
            crate::algebra::MultiOp::empty(1),
            crate::algebra::MultiOp::empty(1),
        )
        .unwrap();
        assert_eq!(filters(&one), vec![ElemSet::empty(), one.all()]);
    }

    #[test]
    fn backtracking_matches_subset_sweep() {
        for alg in [
            fixtures::chain_lattice(4).unwrap(),
            fixtures::ring(12).unwrap(),
            fixtures::divisor_lattice(30).unwrap(),
            fixtures::sep0_counterexample(),
            fixtures::mul_semigroup(6).unwrap(),
        ] {
            let brute: Vec<ElemSet> = all_subsets(alg.size())
                .filter(|&s| is_prime(&alg, s, Structure::Filter))
                .collect();
            assert_eq!(filters(&alg), brute);
        }
    }

    #[test]
    fn separate_on_fixtures() {
        let z6 = fixtures::ring(6).unwrap();
        let cache = ClosureCache::new(&z6);
        assert_eq!(
            separate(&cache, set(&z6, "1,5"), set(&z6, "0")).unwrap(),
            Separation::Separated(PrimePair {
                filter: set(&z6, "1,2,4,5"),
                ideal: set(&z6, "0,3")
            })
        );
        let c3 = fixtures::chain_lattice(3).unwrap();
        let cache = ClosureCache::new(&c3);
        assert_eq!(
            separate(&cache, ElemSet::empty(), ElemSet::empty()).unwrap(),
            Separation::Separated(PrimePair {
                filter: c3.all(),
                ideal: ElemSet::empty()
            })
        );
        assert_eq!(
            separate(&cache, set(&c3, "1"), set(&c3, "0")).unwrap(),
            Separation::Separated(PrimePair {
                filter: set(&c3, "a,1"),
                ideal: set(&c3, "0")
            })
        );
    }

    #[test]
    fn separate_rejects_bad_inputs() {
        let z6 = fixtures::ring(6).unwrap();
        let cache = ClosureCache::new(&z6);
        for (f, i) in [("2,3", "0"), ("1", "2,3"), ("1,5", "1")] {
            assert!(matches!(
                separate(&cache, set(&z6, f), set(&z6, i)),
                Err(Error::InvalidArgument(_))
            ));
        }
    }

    #[test]
    fn sep_checks_on_fixtures() {
        assert!(check_sep(&fixtures::chain_lattice(3).unwrap()).unwrap().passed());
        assert!(check_sep(&fixtures::ring(6).unwrap()).unwrap().passed());
        let bad = fixtures::sep0_counterexample();
        let cache = ClosureCache::new(&bad);
        let pair = sep0_failure_to_sep_failure(&cache, 0, 1, 2).unwrap();
        assert_eq!(pair, (ElemSet::singleton(0), ElemSet::singleton(2)));
        assert_eq!(
            check_sep(&bad).unwrap(),
            SepReport::Fail {
                filter: pair.0,
                ideal: pair.1
            }
        );
        assert!(matches!(
            check_sep(&fixtures::ring(11).unwrap()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn sep0_witness_must_be_genuine() {
        let cache = ClosureCache::new(&fixtures::chain_lattice(3).unwrap());
        for (a, b, c) in [(0, 1, 2), (2, 1, 0), (0, 0, 0)] {
            assert!(matches!(
                sep0_failure_to_sep_failure(&cache, a, b, c),
                Err(Error::InvalidArgument(_))
            ));
        }
    }

    #[test]
    fn wallman_on_fixtures() {
        let c3 = fixtures::chain_lattice(3).unwrap();
        let cache = ClosureCache::new(&c3);
        let choice: BTreeMap<_, _> = [(set(&c3, "1"), 2), (set(&c3, "a,1"), 2), (c3.all(), 2)].into();
        assert_eq!(wallman(&cache, set(&c3, "1"), &choice).unwrap(), Some(vec![2]));

        let z6 = fixtures::ring(6).unwrap();
        let cache = ClosureCache::new(&z6);
        let choice: BTreeMap<_, _> =
            [(set(&z6, "1,2,4,5"), 2), (set(&z6, "1,3,5"), 3), (z6.all(), 0)].into();
        assert_eq!(wallman(&cache, set(&z6, "1,5"), &choice).unwrap(), Some(vec![2, 3]));

        let partial: BTreeMap<_, _> = [(set(&z6, "1,2,4,5"), 2)].into();
        assert!(wallman(&cache, set(&z6, "1,5"), &partial).is_err());
        let wrong: BTreeMap<_, _> =
            [(set(&z6, "1,2,4,5"), 3), (set(&z6, "1,3,5"), 3), (z6.all(), 0)].into();
        assert!(wallman(&cache, set(&z6, "1,5"), &wrong).is_err());
    }
}
