//! Filters, ideals, their closure operators and the carrier preorder.

use crate::algebra::{divide, subtract, Algebra, OpKind};
use crate::bits::ElemSet;
use crate::error::{Error, Result};

/// Default bound on the number of closed sets an enumeration may produce.
pub const ENUMERATION_CAP: usize = 1 << 20;

/// Filters are closed under `times`, ideals under `plus`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Structure {
    Filter,
    Ideal,
}

impl Structure {
    pub fn op(self) -> OpKind {
        match self {
            Structure::Filter => OpKind::Times,
            Structure::Ideal => OpKind::Plus,
        }
    }

    pub fn dual(self) -> Self {
        match self {
            Structure::Filter => Structure::Ideal,
            Structure::Ideal => Structure::Filter,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Structure::Filter => "filter",
            Structure::Ideal => "ideal",
        }
    }
}

pub fn is_closed(alg: &Algebra, a: ElemSet, kind: Structure) -> bool {
    alg.op(kind.op()).apply(a, a).is_subset(a)
}

/// `A·A ⊆ A`.
pub fn is_filter(alg: &Algebra, a: ElemSet) -> bool {
    is_closed(alg, a, Structure::Filter)
}

/// `A + A ⊆ A`.
pub fn is_ideal(alg: &Algebra, a: ElemSet) -> bool {
    is_closed(alg, a, Structure::Ideal)
}

/// `A` has the given structure and its complement has the dual one.
pub fn is_prime(alg: &Algebra, a: ElemSet, kind: Structure) -> bool {
    is_closed(alg, a, kind) && is_closed(alg, a.complement(alg.size()), kind.dual())
}

/// Least set containing `a` and closed under `kind`, by iterating
/// `S ← S ∪ S•S`.
pub fn closure(alg: &Algebra, a: ElemSet, kind: OpKind) -> ElemSet {
    let op = alg.op(kind);
    let mut s = a;
    loop {
        let next = s | op.apply(s, s);
        if next == s {
            return s;
        }
        s = next;
    }
}

/// The filter generated by `a`.
pub fn mu(alg: &Algebra, a: ElemSet) -> ElemSet {
    closure(alg, a, OpKind::Times)
}

/// The ideal generated by `a`.
pub fn alpha(alg: &Algebra, a: ElemSet) -> ElemSet {
    closure(alg, a, OpKind::Plus)
}

/// `(F − I, I / F)` for a filter `F` and an ideal `I`. The first is a filter
/// and the second an ideal.
pub fn residuals(alg: &Algebra, f: ElemSet, i: ElemSet) -> Result<(ElemSet, ElemSet)> {
    if !is_filter(alg, f) {
        return Err(Error::InvalidArgument(format!("{} is not a filter", alg.format_set(f))));
    }
    if !is_ideal(alg, i) {
        return Err(Error::InvalidArgument(format!("{} is not an ideal", alg.format_set(i))));
    }
    let f_minus_i = subtract(alg, f, i)?;
    let i_over_f = divide(alg, i, f)?;
    if !is_filter(alg, f_minus_i) || !is_ideal(alg, i_over_f) {
        return Err(Error::Internal(format!(
            "residuals of {} and {} are not a filter and an ideal; the algebra is not preseparative",
            alg.format_set(f),
            alg.format_set(i)
        )));
    }
    Ok((f_minus_i, i_over_f))
}

/// Singleton closures and the carrier preorder of one algebra.
#[derive(Clone, Debug)]
pub struct ClosureCache {
    algebra: Algebra,
    mu1: Vec<ElemSet>,
    alpha1: Vec<ElemSet>,
    /// `up[x]` is `{y : x ≤ y}`.
    up: Vec<ElemSet>,
}

impl ClosureCache {
    pub fn new(algebra: &Algebra) -> Self {
        let n = algebra.size();
        let mu1: Vec<ElemSet> = (0..n).map(|x| mu(algebra, ElemSet::singleton(x))).collect();
        let alpha1: Vec<ElemSet> = (0..n).map(|x| alpha(algebra, ElemSet::singleton(x))).collect();
        let up = (0..n)
            .map(|x| (0..n).filter(|&y| mu1[x].intersects(alpha1[y])).collect())
            .collect();
        Self {
            algebra: algebra.clone(),
            mu1,
            alpha1,
            up,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub fn mu_of(&self, x: usize) -> ElemSet {
        self.mu1[x]
    }

    pub fn alpha_of(&self, x: usize) -> ElemSet {
        self.alpha1[x]
    }

    pub fn mu(&self, a: ElemSet) -> ElemSet {
        mu(&self.algebra, a)
    }

    pub fn alpha(&self, a: ElemSet) -> ElemSet {
        alpha(&self.algebra, a)
    }

    pub fn closure(&self, a: ElemSet, kind: Structure) -> ElemSet {
        closure(&self.algebra, a, kind.op())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{y : x ≤ y}`.
    pub fn up_set(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    /// The preorder as a row-major boolean matrix.
    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n).map(|x| (0..n).map(|y| self.leq(x, y)).collect()).collect()
    }
}

/// `x ≤ y` iff `μ(x) ∩ α(y) ≠ ∅`.
pub fn carrier_leq(cache: &ClosureCache, x: usize, y: usize) -> Result<bool> {
    cache.algebra.carrier().check_elem(x)?;
    cache.algebra.carrier().check_elem(y)?;
    Ok(cache.leq(x, y))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sep0Report {
    Pass,
    /// `a ≤ b` and `b ≤ c` but not `a ≤ c`.
    Fail { a: usize, b: usize, c: usize },
}

impl Sep0Report {
    pub fn passed(&self) -> bool {
        matches!(self, Sep0Report::Pass)
    }
}

/// Checks transitivity of the carrier preorder.
pub fn check_sep0(cache: &ClosureCache) -> Sep0Report {
    let n = cache.size();
    for a in 0..n {
        for b in cache.up[a] {
            let missing = cache.up[b] - cache.up[a];
            if let Some(c) = missing.min() {
                return Sep0Report::Fail { a, b, c };
            }
        }
    }
    Sep0Report::Pass
}

/// All fixed points of a closure operator on `{0, …, n−1}`, in lectic order
/// (Ganter's NextClosure). `cap` bounds the number of results.
pub fn next_closure(
    n: usize,
    cap: usize,
    mut close: impl FnMut(ElemSet) -> ElemSet,
) -> Result<Vec<ElemSet>> {
    let mut a = close(ElemSet::empty());
    let mut out = vec![a];
    'outer: loop {
        for i in (0..n).rev() {
            if a.contains(i) {
                a = a.without(i);
                continue;
            }
            let b = close(a.with(i));
            let below = ElemSet::full(i);
            if ((b - a) & below).is_empty() {
                a = b;
                if out.len() == cap {
                    return Err(Error::Capacity {
                        what: "closed-set enumeration",
                        size: cap + 1,
                        cap,
                    });
                }
                out.push(a);
                continue 'outer;
            }
        }
        return Ok(out);
    }
}

/// All filters (or ideals), sorted by mask.
pub fn enumerate(alg: &Algebra, kind: Structure, cap: usize) -> Result<Vec<ElemSet>> {
    let mut out = next_closure(alg.size(), cap, |s| closure(alg, s, kind.op()))?;
    out.sort();
    Ok(out)
}

pub fn enumerate_filters(alg: &Algebra) -> Result<Vec<ElemSet>> {
    enumerate(alg, Structure::Filter, ENUMERATION_CAP)
}

pub fn enumerate_ideals(alg: &Algebra) -> Result<Vec<ElemSet>> {
    enumerate(alg, Structure::Ideal, ENUMERATION_CAP)
}
